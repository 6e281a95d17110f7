use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bidisk D = M × N ⊂ C^p × C^{k-p} with nested shrunk copies
/// D'' ⋐ D' ⋐ D given by scale factors.
///
/// M and N are polydisks; for product and doubled maps the polydisk radii
/// may differ per coordinate, so radii are stored per coordinate of each
/// block. Membership is coordinate-wise modulus comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BidiskDomain {
    /// Expanding complex dimension p (block M).
    pub p: usize,
    /// Ambient complex dimension k.
    pub k: usize,
    /// Polydisk radii of M, one per expanding coordinate (length p).
    pub radius_m: Vec<f64>,
    /// Polydisk radii of N, one per contracting coordinate (length k − p).
    pub radius_n: Vec<f64>,
    /// Scale of M'' and N'' relative to M and N.
    pub shrink_inner: f64,
    /// Scale of M' and N' relative to M and N.
    pub shrink_outer: f64,
}

impl BidiskDomain {
    pub fn planar(radius_m: f64, radius_n: f64, shrink_inner: f64, shrink_outer: f64) -> Result<Self> {
        Self::new(1, 2, vec![radius_m], vec![radius_n], shrink_inner, shrink_outer)
    }

    pub fn new(
        p: usize,
        k: usize,
        radius_m: Vec<f64>,
        radius_n: Vec<f64>,
        shrink_inner: f64,
        shrink_outer: f64,
    ) -> Result<Self> {
        if p == 0 || p >= k {
            return Err(Error::InvalidMap(format!(
                "bidisk requires 1 <= p <= k-1, got p={p}, k={k}"
            )));
        }
        if radius_m.len() != p || radius_n.len() != k - p {
            return Err(Error::InvalidMap("bidisk radii length mismatch".into()));
        }
        if !radius_m.iter().chain(&radius_n).all(|r| *r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidMap("bidisk radii must be positive".into()));
        }
        if !(0.0 < shrink_inner && shrink_inner < shrink_outer && shrink_outer < 1.0) {
            return Err(Error::InvalidMap(format!(
                "shrink factors must satisfy 0 < inner < outer < 1, got {shrink_inner}, {shrink_outer}"
            )));
        }
        Ok(BidiskDomain {
            p,
            k,
            radius_m,
            radius_n,
            shrink_inner,
            shrink_outer,
        })
    }

    /// Radius of the coordinate `i` in the (M-block, N-block) order.
    pub fn coord_radius(&self, i: usize) -> f64 {
        if i < self.p {
            self.radius_m[i]
        } else {
            self.radius_n[i - self.p]
        }
    }

    /// 2·max(radius_M) + 2·max(radius_N): outside this polydisk, orbits of
    /// the implemented family provably escape in the horseshoe regime.
    pub fn default_escape_radius(&self) -> f64 {
        let rm = self.radius_m.iter().cloned().fold(0.0, f64::max);
        let rn = self.radius_n.iter().cloned().fold(0.0, f64::max);
        2.0 * rm + 2.0 * rn
    }

    /// ε₀ of the graph-localization lemma: the distance from the outer
    /// shrunk bidisk D' to ∂D, minimized over coordinates.
    pub fn epsilon_zero(&self) -> f64 {
        let margin = 1.0 - self.shrink_outer;
        self.radius_m
            .iter()
            .chain(&self.radius_n)
            .map(|r| margin * r)
            .fold(f64::INFINITY, f64::min)
    }
}
