//! Polynomial automorphisms of C^k restricted to bidisks.
//!
//! The concrete family realized here: generalized Hénon maps
//! f(x, y) = (p(x) + a·y, x) on C², their compositions, products of two
//! maps on the permuted bidisk (M₁×M₂)×(N₁×N₂), and the doubled map
//! F = (f, f⁻¹) on D×D whose diagonal intersections with the graph of fⁿ
//! carry the period-n points.
//!
//! Coordinate conventions: `Henon`, `Composition` and `Product` points are
//! laid out (M-block, N-block). `Doubled` points are the plain
//! concatenation (z, w) of two points of the underlying map's bidisk; the
//! expanding block of F is then {z's M-block, w's N-block}, which is *not*
//! a coordinate prefix. Geometry on points must therefore go through
//! [`HenonMap::coordinate_radii`], [`HenonMap::expanding_coordinates`] and
//! [`HenonMap::contains`], never through the raw domain record.

mod domain;
mod point;
mod validity;

pub use domain::BidiskDomain;
pub use point::ComplexPoint;
pub use validity::{check_henon_like, ValidityReport};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec, ONE, ZERO};

/// One generalized Hénon factor f(x,y) = (p(x) + a·y, x) on C².
#[derive(Debug, Clone)]
pub struct GeneralizedHenon {
    /// Coefficients of p, low degree first; degree = len − 1 ≥ 2.
    poly: Vec<Complex64>,
    /// Shear coefficient a ≠ 0.
    shear: Complex64,
}

impl GeneralizedHenon {
    pub fn new(poly: Vec<Complex64>, shear: Complex64) -> Result<Self> {
        if poly.len() < 3 {
            return Err(Error::InvalidMap(format!(
                "polynomial degree must be >= 2, got {}",
                poly.len().saturating_sub(1)
            )));
        }
        if poly.last().unwrap().norm() == 0.0 {
            return Err(Error::InvalidMap("leading coefficient is zero".into()));
        }
        if !poly.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidMap("non-finite polynomial coefficient".into()));
        }
        if shear.norm() == 0.0 || !shear.re.is_finite() || !shear.im.is_finite() {
            return Err(Error::InvalidMap("shear coefficient a must be nonzero".into()));
        }
        Ok(GeneralizedHenon { poly, shear })
    }

    /// Real quadratic family p(x) = x² + c — the workhorse of the tests.
    pub fn quadratic(c: Complex64, shear: Complex64) -> Result<Self> {
        Self::new(vec![c, ZERO, ONE], shear)
    }

    pub fn degree(&self) -> u64 {
        (self.poly.len() - 1) as u64
    }

    pub fn shear(&self) -> Complex64 {
        self.shear
    }

    pub fn poly_coeffs(&self) -> &[Complex64] {
        &self.poly
    }

    fn p(&self, x: Complex64) -> Complex64 {
        let mut v = ZERO;
        for c in self.poly.iter().rev() {
            v = v * x + c;
        }
        v
    }

    fn dp(&self, x: Complex64) -> Complex64 {
        let mut v = ZERO;
        for (i, c) in self.poly.iter().enumerate().skip(1).rev() {
            v = v * x + *c * Complex64::new(i as f64, 0.0);
        }
        v
    }

    fn fwd(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (self.p(x) + self.shear * y, x)
    }

    fn bwd(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (y, (x - self.p(y)) / self.shear)
    }
}

#[derive(Debug, Clone)]
pub enum MapKind {
    /// A single generalized Hénon map.
    Henon(GeneralizedHenon),
    /// Composition g_m ∘ … ∘ g_1 (g_1 applied first).
    Composition(Vec<GeneralizedHenon>),
    /// Product of two maps on the permuted bidisk.
    Product(Box<HenonMap>, Box<HenonMap>),
    /// Doubled map F = (f, f⁻¹) on D×D.
    Doubled(Box<HenonMap>),
}

/// Orbit segment of [`HenonMap::iterate`].
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitStatus {
    Completed,
    /// Step index at which the max-coordinate modulus exceeded the escape
    /// radius, together with that modulus.
    Escaped { step: usize, norm: f64 },
}

#[derive(Debug, Clone)]
pub struct OrbitResult {
    pub points: Vec<ComplexPoint>,
    pub status: OrbitStatus,
}

/// A polynomial automorphism of C^k restricted to a bidisk, with exact
/// inverse and Jacobian. Immutable after construction; all operations are
/// pure functions.
#[derive(Debug, Clone)]
pub struct HenonMap {
    kind: MapKind,
    domain: BidiskDomain,
    main_degree: u64,
}

impl HenonMap {
    pub fn generalized(factor: GeneralizedHenon, domain: BidiskDomain) -> Result<Self> {
        if domain.k != 2 || domain.p != 1 {
            return Err(Error::InvalidMap(
                "generalized Hénon maps live on C² with p = 1".into(),
            ));
        }
        let main_degree = factor.degree();
        Ok(HenonMap {
            kind: MapKind::Henon(factor),
            domain,
            main_degree,
        })
    }

    pub fn composition(factors: Vec<GeneralizedHenon>, domain: BidiskDomain) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidMap("empty composition".into()));
        }
        if domain.k != 2 || domain.p != 1 {
            return Err(Error::InvalidMap("compositions live on C² with p = 1".into()));
        }
        let main_degree = factors.iter().map(|f| f.degree()).product();
        Ok(HenonMap {
            kind: MapKind::Composition(factors),
            domain,
            main_degree,
        })
    }

    /// Product map on (M₁×M₂)×(N₁×N₂); main degree d₁·d₂.
    pub fn product(f1: HenonMap, f2: HenonMap) -> Result<Self> {
        let d1 = &f1.domain;
        let d2 = &f2.domain;
        let p = d1.p + d2.p;
        let k = d1.k + d2.k;
        let mut radius_m = d1.radius_m.clone();
        radius_m.extend_from_slice(&d2.radius_m);
        let mut radius_n = d1.radius_n.clone();
        radius_n.extend_from_slice(&d2.radius_n);
        let domain = BidiskDomain::new(
            p,
            k,
            radius_m,
            radius_n,
            d1.shrink_inner.min(d2.shrink_inner),
            d1.shrink_outer.min(d2.shrink_outer),
        )?;
        let main_degree = f1.main_degree * f2.main_degree;
        Ok(HenonMap {
            kind: MapKind::Product(Box::new(f1), Box::new(f2)),
            domain,
            main_degree,
        })
    }

    /// Doubled map F = (f, f⁻¹). Its main degree d² is per application of
    /// F, i.e. per two steps of f: the graph of fⁿ (n even) is F^{-n/2}(Δ).
    pub fn doubled(f: HenonMap) -> Result<Self> {
        let base = &f.domain;
        let kf = base.k;
        let pf = base.p;
        let mut radius_m = base.radius_m.clone();
        radius_m.extend_from_slice(&base.radius_n);
        let mut radius_n = base.radius_n.clone();
        radius_n.extend_from_slice(&base.radius_m);
        let domain = BidiskDomain::new(
            kf,
            2 * kf,
            radius_m,
            radius_n,
            base.shrink_inner,
            base.shrink_outer,
        )?;
        let _ = pf;
        let main_degree = f.main_degree * f.main_degree;
        Ok(HenonMap {
            kind: MapKind::Doubled(Box::new(f)),
            domain,
            main_degree,
        })
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn domain(&self) -> &BidiskDomain {
        &self.domain
    }

    /// Main dynamical degree d: the integer growth factor of slice masses,
    /// equal to the count dⁿ of period-n points with multiplicity.
    pub fn main_degree(&self) -> u64 {
        self.main_degree
    }

    /// d^n with an overflow/budget guard.
    pub fn degree_pow(&self, n: u32) -> Result<u64> {
        let mut acc: u64 = 1;
        for _ in 0..n {
            acc = acc
                .checked_mul(self.main_degree)
                .ok_or(Error::BudgetExceeded { n })?;
            if acc > 1 << 40 {
                return Err(Error::BudgetExceeded { n });
            }
        }
        Ok(acc)
    }

    /// Ambient complex dimension of points.
    pub fn dim(&self) -> usize {
        self.domain.k
    }

    /// Expanding complex dimension p.
    pub fn expanding_dim(&self) -> usize {
        self.domain.p
    }

    /// Polydisk radius per point coordinate, in the map's point layout.
    pub fn coordinate_radii(&self) -> Vec<f64> {
        match &self.kind {
            MapKind::Henon(_) | MapKind::Composition(_) | MapKind::Product(..) => (0..self.domain.k)
                .map(|i| self.domain.coord_radius(i))
                .collect(),
            MapKind::Doubled(f) => {
                let mut r = f.coordinate_radii();
                r.extend(f.coordinate_radii());
                r
            }
        }
    }

    /// Indices (point layout) of the expanding coordinates.
    pub fn expanding_coordinates(&self) -> Vec<usize> {
        match &self.kind {
            MapKind::Henon(_) | MapKind::Composition(_) | MapKind::Product(..) => {
                (0..self.domain.p).collect()
            }
            MapKind::Doubled(f) => {
                let kf = f.dim();
                let mut idx = f.expanding_coordinates();
                let mut w_side: Vec<usize> = (0..kf)
                    .filter(|i| !f.expanding_coordinates().contains(i))
                    .map(|i| i + kf)
                    .collect();
                idx.append(&mut w_side);
                idx
            }
        }
    }

    /// Coordinate-wise membership |u_i| ≤ scale·r_i (closed polydisk at
    /// scale 1; pass `shrink_outer` for D', etc.).
    pub fn contains(&self, z: &ComplexPoint, scale: f64) -> bool {
        assert_eq!(z.dim(), self.dim(), "contains: dimension mismatch");
        let radii = self.coordinate_radii();
        z.coords()
            .iter()
            .zip(&radii)
            .all(|(c, r)| c.norm() <= scale * r)
    }

    pub fn default_escape_radius(&self) -> f64 {
        self.domain.default_escape_radius()
    }

    /// f(z) by the exact kind-specific formula.
    pub fn eval(&self, z: &ComplexPoint) -> ComplexPoint {
        assert_eq!(z.dim(), self.dim(), "eval: dimension mismatch");
        match &self.kind {
            MapKind::Henon(g) => {
                let (x, y) = g.fwd(z[0], z[1]);
                ComplexPoint::new(vec![x, y])
            }
            MapKind::Composition(gs) => {
                let (mut x, mut y) = (z[0], z[1]);
                for g in gs {
                    let (nx, ny) = g.fwd(x, y);
                    x = nx;
                    y = ny;
                }
                ComplexPoint::new(vec![x, y])
            }
            MapKind::Product(f1, f2) => {
                let (z1, z2) = self.split_product(z, f1, f2);
                self.merge_product(&f1.eval(&z1), &f2.eval(&z2), f1, f2)
            }
            MapKind::Doubled(f) => {
                let kf = f.dim();
                let zz = z.block(0..kf);
                let ww = z.block(kf..2 * kf);
                f.eval(&zz).concat(&f.eval_inverse(&ww))
            }
        }
    }

    /// f⁻¹(z); exact mutual inverse of [`Self::eval`] as a rational
    /// expression.
    pub fn eval_inverse(&self, z: &ComplexPoint) -> ComplexPoint {
        assert_eq!(z.dim(), self.dim(), "eval_inverse: dimension mismatch");
        match &self.kind {
            MapKind::Henon(g) => {
                let (x, y) = g.bwd(z[0], z[1]);
                ComplexPoint::new(vec![x, y])
            }
            MapKind::Composition(gs) => {
                let (mut x, mut y) = (z[0], z[1]);
                for g in gs.iter().rev() {
                    let (nx, ny) = g.bwd(x, y);
                    x = nx;
                    y = ny;
                }
                ComplexPoint::new(vec![x, y])
            }
            MapKind::Product(f1, f2) => {
                let (z1, z2) = self.split_product(z, f1, f2);
                self.merge_product(&f1.eval_inverse(&z1), &f2.eval_inverse(&z2), f1, f2)
            }
            MapKind::Doubled(f) => {
                let kf = f.dim();
                let zz = z.block(0..kf);
                let ww = z.block(kf..2 * kf);
                f.eval_inverse(&zz).concat(&f.eval(&ww))
            }
        }
    }

    /// Holomorphic Jacobian Df_z. For a generalized Hénon factor this is
    /// [[p'(x), a], [1, 0]], so det Df ≡ −a.
    pub fn jacobian(&self, z: &ComplexPoint) -> CMat {
        assert_eq!(z.dim(), self.dim(), "jacobian: dimension mismatch");
        match &self.kind {
            MapKind::Henon(g) => henon_jac(g, z[0]),
            MapKind::Composition(gs) => {
                let (mut x, mut y) = (z[0], z[1]);
                let mut j = CMat::identity(2, 2);
                for g in gs {
                    j = henon_jac(g, x) * j;
                    let (nx, ny) = g.fwd(x, y);
                    x = nx;
                    y = ny;
                }
                j
            }
            MapKind::Product(f1, f2) => {
                let (z1, z2) = self.split_product(z, f1, f2);
                self.assemble_product_jac(&f1.jacobian(&z1), &f2.jacobian(&z2), f1, f2)
            }
            MapKind::Doubled(f) => {
                let kf = f.dim();
                let zz = z.block(0..kf);
                let ww = z.block(kf..2 * kf);
                block_diag(&f.jacobian(&zz), &f.jacobian_inverse_map(&ww))
            }
        }
    }

    /// Jacobian of the inverse map, d(f⁻¹)_z, from exact per-kind formulas.
    pub fn jacobian_inverse_map(&self, z: &ComplexPoint) -> CMat {
        assert_eq!(z.dim(), self.dim(), "jacobian_inverse_map: dimension mismatch");
        match &self.kind {
            MapKind::Henon(g) => henon_inv_jac(g, z[1]),
            MapKind::Composition(gs) => {
                let (mut x, mut y) = (z[0], z[1]);
                let mut j = CMat::identity(2, 2);
                for g in gs.iter().rev() {
                    j = henon_inv_jac(g, y) * j;
                    let (nx, ny) = g.bwd(x, y);
                    x = nx;
                    y = ny;
                }
                j
            }
            MapKind::Product(f1, f2) => {
                let (z1, z2) = self.split_product(z, f1, f2);
                self.assemble_product_jac(
                    &f1.jacobian_inverse_map(&z1),
                    &f2.jacobian_inverse_map(&z2),
                    f1,
                    f2,
                )
            }
            MapKind::Doubled(f) => {
                let kf = f.dim();
                let zz = z.block(0..kf);
                let ww = z.block(kf..2 * kf);
                block_diag(&f.jacobian_inverse_map(&zz), &f.jacobian(&ww))
            }
        }
    }

    /// Records z, f(z), …, fⁿ(z), stopping early when an iterate's
    /// max-coordinate modulus exceeds `escape_radius`.
    pub fn iterate(&self, z: &ComplexPoint, n: usize, escape_radius: f64) -> OrbitResult {
        let mut points = Vec::with_capacity(n + 1);
        let mut current = z.clone();
        let m = current.max_modulus();
        points.push(current.clone());
        if m > escape_radius {
            return OrbitResult {
                points,
                status: OrbitStatus::Escaped { step: 0, norm: m },
            };
        }
        for step in 1..=n {
            current = self.eval(&current);
            let m = current.max_modulus();
            points.push(current.clone());
            if m > escape_radius {
                return OrbitResult {
                    points,
                    status: OrbitStatus::Escaped { step, norm: m },
                };
            }
        }
        OrbitResult {
            points,
            status: OrbitStatus::Completed,
        }
    }

    /// fⁿ(z) together with the chain-rule Jacobian Dfⁿ_z, or None if the
    /// orbit leaves the escape radius before completing n steps.
    pub fn iterate_with_jacobian(
        &self,
        z: &ComplexPoint,
        n: usize,
        escape_radius: f64,
    ) -> Option<(ComplexPoint, CMat)> {
        let k = self.dim();
        let mut current = z.clone();
        let mut j = CMat::identity(k, k);
        for _ in 0..n {
            if current.max_modulus() > escape_radius {
                return None;
            }
            j = self.jacobian(&current) * j;
            current = self.eval(&current);
        }
        if current.max_modulus() > escape_radius {
            return None;
        }
        Some((current, j))
    }

    fn split_product(
        &self,
        z: &ComplexPoint,
        f1: &HenonMap,
        f2: &HenonMap,
    ) -> (ComplexPoint, ComplexPoint) {
        let (p1, p2) = (f1.expanding_dim(), f2.expanding_dim());
        let (k1, k2) = (f1.dim(), f2.dim());
        let pp = p1 + p2;
        let mut c1 = Vec::with_capacity(k1);
        let mut c2 = Vec::with_capacity(k2);
        c1.extend((0..p1).map(|i| z[i]));
        c1.extend((0..k1 - p1).map(|i| z[pp + i]));
        c2.extend((0..p2).map(|i| z[p1 + i]));
        c2.extend((0..k2 - p2).map(|i| z[pp + (k1 - p1) + i]));
        (ComplexPoint::new(c1), ComplexPoint::new(c2))
    }

    fn merge_product(
        &self,
        w1: &ComplexPoint,
        w2: &ComplexPoint,
        f1: &HenonMap,
        f2: &HenonMap,
    ) -> ComplexPoint {
        let (p1, p2) = (f1.expanding_dim(), f2.expanding_dim());
        let (k1, k2) = (f1.dim(), f2.dim());
        let mut c = Vec::with_capacity(k1 + k2);
        c.extend((0..p1).map(|i| w1[i]));
        c.extend((0..p2).map(|i| w2[i]));
        c.extend((0..k1 - p1).map(|i| w1[p1 + i]));
        c.extend((0..k2 - p2).map(|i| w2[p2 + i]));
        ComplexPoint::new(c)
    }

    /// Global coordinate index of factor-local coordinate `local` (factor 0
    /// or 1) inside the product layout.
    fn product_index(&self, factor: usize, local: usize, f1: &HenonMap, f2: &HenonMap) -> usize {
        let (p1, p2) = (f1.expanding_dim(), f2.expanding_dim());
        let k1 = f1.dim();
        let pp = p1 + p2;
        if factor == 0 {
            if local < p1 {
                local
            } else {
                pp + (local - p1)
            }
        } else if local < p2 {
            p1 + local
        } else {
            pp + (k1 - p1) + (local - p2)
        }
    }

    fn assemble_product_jac(&self, j1: &CMat, j2: &CMat, f1: &HenonMap, f2: &HenonMap) -> CMat {
        let k = self.dim();
        let mut j = CMat::zeros(k, k);
        for (factor, jf) in [(0usize, j1), (1usize, j2)] {
            let kf = jf.nrows();
            for r in 0..kf {
                for c in 0..kf {
                    let gr = self.product_index(factor, r, f1, f2);
                    let gc = self.product_index(factor, c, f1, f2);
                    j[(gr, gc)] = jf[(r, c)];
                }
            }
        }
        j
    }
}

fn henon_jac(g: &GeneralizedHenon, x: Complex64) -> CMat {
    CMat::from_row_slice(2, 2, &[g.dp(x), g.shear, ONE, ZERO])
}

fn henon_inv_jac(g: &GeneralizedHenon, y: Complex64) -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[ZERO, ONE, ONE / g.shear, -g.dp(y) / g.shear],
    )
}

fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let (ka, kb) = (a.nrows(), b.nrows());
    let mut m = CMat::zeros(ka + kb, ka + kb);
    for r in 0..ka {
        for c in 0..ka {
            m[(r, c)] = a[(r, c)];
        }
    }
    for r in 0..kb {
        for c in 0..kb {
            m[(ka + r, ka + c)] = b[(r, c)];
        }
    }
    m
}

/// Point → nalgebra vector.
pub fn point_to_cvec(z: &ComplexPoint) -> CVec {
    CVec::from_vec(z.coords().to_vec())
}

/// nalgebra vector → point (panics on non-finite entries).
pub fn cvec_to_point(v: &CVec) -> ComplexPoint {
    ComplexPoint::new(v.iter().cloned().collect())
}

#[cfg(test)]
mod tests;
