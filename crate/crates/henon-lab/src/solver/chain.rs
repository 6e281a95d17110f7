//! Multiple-shooting formulations: systems over whole orbit chains whose
//! residual blocks each involve a single map application, so Newton stays
//! well-conditioned at any period.

use num_complex::Complex64;

use super::HoloSystem;
use crate::linalg::{CMat, CVec, ONE};
use crate::maps::{cvec_to_point, point_to_cvec, ComplexPoint, HenonMap};

/// G(z₀,…,z_{m−1}) = (f(z_j) − z_{j+1 mod m})_j on (C^k)^m; the zeros are
/// exactly the period-m orbits with a marked starting point.
pub struct CyclicOrbitSystem<'m> {
    map: &'m HenonMap,
    n: usize,
    guard: f64,
}

impl<'m> CyclicOrbitSystem<'m> {
    pub fn new(map: &'m HenonMap, n: usize) -> Self {
        assert!(n >= 1, "cyclic orbit system needs n >= 1");
        CyclicOrbitSystem {
            map,
            n,
            guard: 10.0 * map.default_escape_radius(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn node_dim(&self) -> usize {
        self.map.dim()
    }

    pub fn unstack(&self, z: &CVec) -> Vec<ComplexPoint> {
        let k = self.node_dim();
        (0..self.n)
            .map(|j| cvec_to_point(&z.rows(j * k, k).clone_owned()))
            .collect()
    }

    pub fn stack(&self, nodes: &[ComplexPoint]) -> ComplexPoint {
        let mut coords = Vec::with_capacity(self.n * self.node_dim());
        for p in nodes {
            coords.extend_from_slice(p.coords());
        }
        ComplexPoint::new(coords)
    }
}

impl HoloSystem for CyclicOrbitSystem<'_> {
    fn dim(&self) -> usize {
        self.n * self.map.dim()
    }

    fn residual(&self, z: &CVec) -> CVec {
        let k = self.map.dim();
        let mut g = CVec::zeros(self.n * k);
        for j in 0..self.n {
            let node = cvec_to_point(&z.rows(j * k, k).clone_owned());
            if node.max_modulus() > self.guard {
                return sentinel(self.n * k, z);
            }
            let img = self.map.eval(&node);
            let next = (j + 1) % self.n;
            for i in 0..k {
                g[j * k + i] = img[i] - z[next * k + i];
            }
        }
        g
    }

    fn jacobian(&self, z: &CVec) -> CMat {
        let k = self.map.dim();
        let dim = self.n * k;
        let mut jac = CMat::zeros(dim, dim);
        for j in 0..self.n {
            let node = cvec_to_point(&z.rows(j * k, k).clone_owned());
            let dj = self.map.jacobian(&node);
            let next = (j + 1) % self.n;
            for r in 0..k {
                for c in 0..k {
                    jac[(j * k + r, j * k + c)] = dj[(r, c)];
                }
                jac[(j * k + r, next * k + r)] -= ONE;
            }
        }
        jac
    }
}

/// Chain c₀,…,c_{2n} with c_{j+1} = f(c_j), plus boundary rows pinning the
/// contracting block of c₀ to b (a horizontal slice H_b) and the expanding
/// block of c_{2n} to a (a vertical slice V_a). The middle node c_n is then
/// a point of fⁿ(H_b) ∩ f⁻ⁿ(V_a); there are d^{2n} of them.
pub struct BoundaryChainSystem<'m> {
    map: &'m HenonMap,
    n: usize,
    /// Expanding-block anchor (length p).
    pub anchor_a: Vec<Complex64>,
    /// Contracting-block anchor (length k − p).
    pub anchor_b: Vec<Complex64>,
    guard: f64,
}

impl<'m> BoundaryChainSystem<'m> {
    pub fn new(
        map: &'m HenonMap,
        n: usize,
        anchor_a: Vec<Complex64>,
        anchor_b: Vec<Complex64>,
    ) -> Self {
        let p = map.expanding_dim();
        let k = map.dim();
        assert_eq!(anchor_a.len(), p, "anchor a must have length p");
        assert_eq!(anchor_b.len(), k - p, "anchor b must have length k - p");
        BoundaryChainSystem {
            map,
            n,
            anchor_a,
            anchor_b,
            guard: 10.0 * map.default_escape_radius(),
        }
    }

    pub fn nodes(&self) -> usize {
        2 * self.n + 1
    }

    pub fn node_dim(&self) -> usize {
        self.map.dim()
    }

    /// Index of the node carrying the oracle point.
    pub fn middle(&self) -> usize {
        self.n
    }

    pub fn unstack(&self, z: &CVec) -> Vec<ComplexPoint> {
        let k = self.node_dim();
        (0..self.nodes())
            .map(|j| cvec_to_point(&z.rows(j * k, k).clone_owned()))
            .collect()
    }

    /// Expanding-block coordinate indices of the map's point layout.
    fn expanding(&self) -> Vec<usize> {
        self.map.expanding_coordinates()
    }
}

impl HoloSystem for BoundaryChainSystem<'_> {
    fn dim(&self) -> usize {
        self.nodes() * self.map.dim()
    }

    fn residual(&self, z: &CVec) -> CVec {
        let k = self.map.dim();
        let m = self.nodes();
        let mut g = CVec::zeros(m * k);
        for j in 0..m - 1 {
            let node = cvec_to_point(&z.rows(j * k, k).clone_owned());
            if node.max_modulus() > self.guard {
                return sentinel(m * k, z);
            }
            let img = self.map.eval(&node);
            for i in 0..k {
                g[j * k + i] = img[i] - z[(j + 1) * k + i];
            }
        }
        // boundary rows occupy the last node's block
        let last = (m - 1) * k;
        let expanding = self.expanding();
        let contracting: Vec<usize> = (0..k).filter(|i| !expanding.contains(i)).collect();
        let mut row = last;
        for (bi, &ci) in contracting.iter().enumerate() {
            g[row] = z[ci] - self.anchor_b[bi];
            row += 1;
        }
        for (ai, &ei) in expanding.iter().enumerate() {
            g[row] = z[(m - 1) * k + ei] - self.anchor_a[ai];
            row += 1;
        }
        g
    }

    fn jacobian(&self, z: &CVec) -> CMat {
        let k = self.map.dim();
        let m = self.nodes();
        let dim = m * k;
        let mut jac = CMat::zeros(dim, dim);
        for j in 0..m - 1 {
            let node = cvec_to_point(&z.rows(j * k, k).clone_owned());
            let dj = self.map.jacobian(&node);
            for r in 0..k {
                for c in 0..k {
                    jac[(j * k + r, j * k + c)] = dj[(r, c)];
                }
                jac[(j * k + r, (j + 1) * k + r)] -= ONE;
            }
        }
        let last = (m - 1) * k;
        let expanding = self.expanding();
        let contracting: Vec<usize> = (0..k).filter(|i| !expanding.contains(i)).collect();
        let mut row = last;
        for &ci in &contracting {
            jac[(row, ci)] = ONE;
            row += 1;
        }
        for &ei in &expanding {
            jac[(row, (m - 1) * k + ei)] = ONE;
            row += 1;
        }
        jac
    }
}

fn sentinel(dim: usize, z: &CVec) -> CVec {
    let mut g = CVec::zeros(dim);
    g[0] = Complex64::new(1e30 * (1.0 + z.norm()), 0.0);
    g
}

/// Stack per-node seed points into one chain seed.
pub(crate) fn stack_seeds(seeds: &[CVec], nodes: usize) -> ComplexPoint {
    let k = seeds[0].len();
    let mut coords = Vec::with_capacity(nodes * k);
    for j in 0..nodes {
        let s = &seeds[j % seeds.len()];
        coords.extend(s.iter().cloned());
    }
    let _ = point_to_cvec;
    ComplexPoint::new(coords)
}
