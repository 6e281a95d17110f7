//! Small dense complex linear algebra used across the crate.
//!
//! The matrices here are tiny (k ≤ 8): Jacobians of planar maps, products
//! and doubled maps. Eigenvalues are computed in closed form for 2×2 and
//! otherwise via the characteristic polynomial (Faddeev–LeVerrier) and a
//! Durand–Kerner solve polished by Newton steps. Subspace extraction goes
//! through SVD range/null computations, which are robust at these sizes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients of det(tI − A), highest degree first is NOT used;
/// returns c such that p(t) = t^k + c[0] t^{k-1} + ... + c[k-1].
fn char_poly(a: &CMat) -> Vec<Complex64> {
    let k = a.nrows();
    let mut coeffs = Vec::with_capacity(k);
    let mut m = CMat::zeros(k, k);
    let mut c_prev = ONE;
    for i in 1..=k {
        // M_i = A * M_{i-1} + c_{i-1} I
        m = a * &m;
        for d in 0..k {
            m[(d, d)] += c_prev;
        }
        let am = a * &m;
        let tr: Complex64 = (0..k).map(|d| am[(d, d)]).sum();
        let c = -tr / Complex64::new(i as f64, 0.0);
        coeffs.push(c);
        c_prev = c;
    }
    coeffs
}

fn poly_eval(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    // monic: t^k + c0 t^{k-1} + ...
    let mut v = ONE;
    for c in coeffs {
        v = v * t + c;
    }
    v
}

fn poly_deriv_eval(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    let k = coeffs.len();
    let mut v = Complex64::new(k as f64, 0.0);
    for (i, c) in coeffs.iter().take(k - 1).enumerate() {
        v = v * t + *c * Complex64::new((k - 1 - i) as f64, 0.0);
    }
    v
}

/// All roots of the monic polynomial t^k + c0 t^{k-1} + ... + c[k-1]
/// by Durand–Kerner iteration with Newton polish.
pub fn monic_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let k = coeffs.len();
    if k == 0 {
        return vec![];
    }
    if k == 1 {
        return vec![-coeffs[0]];
    }
    if k == 2 {
        return quadratic_roots(coeffs[0], coeffs[1]);
    }
    // Cauchy bound for the root radius
    let radius = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut w: Vec<Complex64> = (0..k)
        .map(|j| seed.powu(j as u32 + 1) * radius / seed.norm())
        .collect();
    let scale = radius.max(1.0);
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for j in 0..k {
            let mut denom = ONE;
            for l in 0..k {
                if l != j {
                    denom *= w[j] - w[l];
                }
            }
            if denom.norm() == 0.0 {
                w[j] += Complex64::new(1e-8 * scale, 1e-8 * scale);
                continue;
            }
            let step = poly_eval(coeffs, w[j]) / denom;
            w[j] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * scale {
            break;
        }
    }
    // Newton polish (helps simple roots reach full precision)
    for r in w.iter_mut() {
        for _ in 0..4 {
            let d = poly_deriv_eval(coeffs, *r);
            if d.norm() < 1e-300 {
                break;
            }
            *r -= poly_eval(coeffs, *r) / d;
        }
    }
    w
}

fn quadratic_roots(b: Complex64, c: Complex64) -> Vec<Complex64> {
    // t^2 + b t + c
    let disc = (b * b - 4.0 * c).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    if q.norm() == 0.0 {
        return vec![ZERO, ZERO];
    }
    vec![q, c / q]
}

/// Eigenvalues of a small complex matrix, unordered.
pub fn eigenvalues(a: &CMat) -> Vec<Complex64> {
    let k = a.nrows();
    assert_eq!(k, a.ncols(), "eigenvalues: matrix must be square");
    match k {
        0 => vec![],
        1 => vec![a[(0, 0)]],
        2 => {
            let tr = a[(0, 0)] + a[(1, 1)];
            let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
            quadratic_roots(-tr, det)
        }
        _ => monic_roots(&char_poly(a)),
    }
}

/// Smallest singular value.
pub fn sigma_min(a: &CMat) -> f64 {
    let sv = a.clone().singular_values();
    sv.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Largest singular value (spectral norm).
pub fn sigma_max(a: &CMat) -> f64 {
    let sv = a.clone().singular_values();
    sv.iter().cloned().fold(0.0, f64::max)
}

/// Orthonormalize the columns of a k×p matrix (modified Gram–Schmidt, twice).
pub fn orthonormalize(m: &CMat) -> CMat {
    let mut q = m.clone();
    let p = q.ncols();
    for _pass in 0..2 {
        for j in 0..p {
            for i in 0..j {
                let qi = q.column(i).clone_owned();
                let proj: Complex64 = qi.dotc(&q.column(j).clone_owned());
                let col = q.column(j) - &qi * proj;
                q.set_column(j, &col);
            }
            let nrm = q.column(j).norm();
            assert!(
                nrm > 1e-300,
                "orthonormalize: rank-deficient input (column {j})"
            );
            let col = q.column(j) / Complex64::new(nrm, 0.0);
            q.set_column(j, &col);
        }
    }
    q
}

/// Principal angles between the column spans of two orthonormal k×p frames,
/// ascending. The largest entry is the Grassmannian distance used here.
pub fn principal_angles(u: &CMat, v: &CMat) -> Vec<f64> {
    assert_eq!(u.ncols(), v.ncols(), "principal_angles: rank mismatch");
    let overlap = u.adjoint() * v;
    let mut sv: Vec<f64> = overlap.singular_values().iter().cloned().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv.iter().map(|s| s.clamp(0.0, 1.0).acos()).collect()
}

/// Orthonormal basis of the invariant subspace of `a` spanned by the
/// (generalized) eigenvectors of the eigenvalues selected by `keep`.
///
/// Works by annihilation: the product of (a − λI) over the *rejected*
/// eigenvalues kills their generalized eigenspace and maps the kept one onto
/// itself; the range is then extracted by SVD.
pub fn invariant_subspace(a: &CMat, eigs: &[Complex64], keep: &[bool]) -> CMat {
    let k = a.nrows();
    let kept = keep.iter().filter(|b| **b).count();
    assert!(kept > 0, "invariant_subspace: empty selection");
    let mut prod = CMat::identity(k, k);
    let mut scale = 1.0f64;
    for (lam, keep_it) in eigs.iter().zip(keep) {
        if !keep_it {
            let mut shifted = a.clone();
            for d in 0..k {
                shifted[(d, d)] -= lam;
            }
            prod = shifted * prod;
            let nrm = prod.norm();
            if nrm > 1e50 {
                prod /= Complex64::new(nrm, 0.0);
                scale *= nrm;
            }
        }
    }
    let _ = scale;
    let svd = prod.svd(true, false);
    let u = svd.u.expect("svd requested U");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let mut basis = CMat::zeros(k, kept);
    for (out_col, &idx) in order.iter().take(kept).enumerate() {
        basis.set_column(out_col, &u.column(idx));
    }
    orthonormalize(&basis)
}

/// Right eigenvector for an (approximately simple) eigenvalue: the right
/// singular vector of a − λI with minimal singular value.
pub fn eigenvector(a: &CMat, lambda: Complex64) -> CVec {
    let k = a.nrows();
    let mut shifted = a.clone();
    for d in 0..k {
        shifted[(d, d)] -= lambda;
    }
    let svd = shifted.svd(false, true);
    let vt = svd.v_t.expect("svd requested V^T");
    let mut min_i = 0;
    for i in 0..svd.singular_values.len() {
        if svd.singular_values[i] < svd.singular_values[min_i] {
            min_i = i;
        }
    }
    let mut v = CVec::zeros(k);
    for j in 0..k {
        v[j] = vt[(min_i, j)].conj();
    }
    let nrm = v.norm();
    v / Complex64::new(nrm, 0.0)
}

/// Solve a·x = b by LU with partial pivoting; falls back to an SVD
/// least-squares (pseudo-inverse) step when the factorization is singular.
pub fn solve_or_least_squares(a: &CMat, b: &CVec) -> CVec {
    if let Some(sol) = a.clone().lu().solve(b) {
        if sol.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return sol;
        }
    }
    let svd = a.clone().svd(true, true);
    svd.solve(b, 1e-14 * a.norm().max(1e-300))
        .unwrap_or_else(|_| CVec::zeros(a.ncols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eig_2x2_closed_form() {
        // [[2x, a],[1,0]] at x = 1+sqrt(7), a = -1: multipliers x ± sqrt(x^2-1)
        let x = 1.0 + 7.0f64.sqrt();
        let m = CMat::from_row_slice(2, 2, &[c(2.0 * x, 0.0), c(-1.0, 0.0), ONE, ZERO]);
        let mut eigs = eigenvalues(&m);
        eigs.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        let expect_small = x - (x * x - 1.0).sqrt();
        let expect_big = x + (x * x - 1.0).sqrt();
        assert!((eigs[0].re - expect_small).abs() < 1e-12);
        assert!((eigs[1].re - expect_big).abs() < 1e-12);
    }

    #[test]
    fn eig_4x4_matches_block_structure() {
        // block diagonal: eigenvalues are the union of block eigenvalues
        let mut m = CMat::zeros(4, 4);
        m[(0, 0)] = c(3.0, 1.0);
        m[(0, 1)] = c(-1.0, 0.0);
        m[(1, 0)] = ONE;
        m[(2, 2)] = c(0.5, -0.25);
        m[(2, 3)] = c(2.0, 0.0);
        m[(3, 2)] = ONE;
        let mut got: Vec<Complex64> = eigenvalues(&m);
        let mut want = eigenvalues(&m.view((0, 0), (2, 2)).clone_owned());
        want.extend(eigenvalues(&m.view((2, 2), (2, 2)).clone_owned()));
        got.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        want.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-9, "{g} vs {w}");
        }
    }

    #[test]
    fn principal_angle_of_rotated_line() {
        let u = CMat::from_column_slice(2, 1, &[ONE, ZERO]);
        let th = 0.3f64;
        let v = CMat::from_column_slice(2, 1, &[c(th.cos(), 0.0), c(th.sin(), 0.0)]);
        let angles = principal_angles(&u, &v);
        assert!((angles[0] - th).abs() < 1e-12);
    }

    #[test]
    fn invariant_subspace_picks_eigvector() {
        let x = 1.0 + 7.0f64.sqrt();
        let m = CMat::from_row_slice(2, 2, &[c(2.0 * x, 0.0), c(-1.0, 0.0), ONE, ZERO]);
        let eigs = eigenvalues(&m);
        let keep: Vec<bool> = eigs.iter().map(|l| l.norm() > 1.0).collect();
        let basis = invariant_subspace(&m, &eigs, &keep);
        // must be invariant: M b parallel to b
        let img = &m * basis.column(0).clone_owned();
        let lam = img.dotc(&basis.column(0).clone_owned());
        let res = (&img - basis.column(0) * lam).norm();
        assert!(res < 1e-9, "residual {res}");
    }

    #[test]
    fn least_squares_handles_singular() {
        let m = CMat::from_row_slice(2, 2, &[ONE, ONE, ONE, ONE]);
        let b = CVec::from_vec(vec![c(2.0, 0.0), c(2.0, 0.0)]);
        let x = solve_or_least_squares(&m, &b);
        let res = (&m * &x - &b).norm();
        assert!(res < 1e-10);
    }
}
