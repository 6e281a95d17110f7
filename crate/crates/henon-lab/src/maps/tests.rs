use super::*;
use crate::linalg;
use num_complex::Complex64;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The classical horseshoe: p(x) = x² − 6, a = −1 on the bidisk of radius
/// (2+√28)/2 = 1+√7 with shrinks 0.5/0.75.
pub(crate) fn horseshoe() -> HenonMap {
    let r = 1.0 + 7.0f64.sqrt();
    HenonMap::generalized(
        GeneralizedHenon::quadratic(c(-6.0, 0.0), c(-1.0, 0.0)).unwrap(),
        BidiskDomain::planar(r, r, 0.5, 0.75).unwrap(),
    )
    .unwrap()
}

/// Fixed points of the horseshoe from the quadratic formula:
/// x² + (a−1)x + c = 0 with c = −6, a = −1, i.e. x = 1 ± √7.
pub(crate) fn horseshoe_fixed_points() -> [ComplexPoint; 2] {
    let s = 7.0f64.sqrt();
    [
        ComplexPoint::from_re(&[1.0 + s, 1.0 + s]),
        ComplexPoint::from_re(&[1.0 - s, 1.0 - s]),
    ]
}

#[test]
fn eval_at_origin() {
    let f = horseshoe();
    let img = f.eval(&ComplexPoint::from_re(&[0.0, 0.0]));
    assert_eq!(img, ComplexPoint::from_re(&[-6.0, 0.0]));
}

#[test]
fn eval_fixes_quadratic_formula_roots() {
    let f = horseshoe();
    for fp in horseshoe_fixed_points() {
        let img = f.eval(&fp);
        assert!(img.distance(&fp) < 1e-12, "fixed point moved: {img}");
    }
}

#[test]
fn doubled_eval_componentwise() {
    let f = horseshoe();
    let fd = HenonMap::doubled(f).unwrap();
    let z = ComplexPoint::from_re(&[0.0, 0.0, -6.0, 0.0]);
    let img = fd.eval(&z);
    // (f(0,0), f^{-1}(-6,0)) = ((-6,0),(0,0))
    assert!(img.distance(&ComplexPoint::from_re(&[-6.0, 0.0, 0.0, 0.0])) < 1e-12);
}

#[test]
fn inverse_of_image_of_origin() {
    let f = horseshoe();
    let back = f.eval_inverse(&ComplexPoint::from_re(&[-6.0, 0.0]));
    assert!(back.distance(&ComplexPoint::from_re(&[0.0, 0.0])) < 1e-14);
}

#[test]
fn inverse_fixes_fixed_points() {
    let f = horseshoe();
    for fp in horseshoe_fixed_points() {
        assert!(f.eval_inverse(&fp).distance(&fp) < 1e-12);
    }
}

#[test]
fn product_inverse_is_componentwise() {
    let f = horseshoe();
    let g = HenonMap::generalized(
        GeneralizedHenon::quadratic(c(-5.0, 0.0), c(1.0, 0.0)).unwrap(),
        BidiskDomain::planar(4.0, 4.0, 0.5, 0.75).unwrap(),
    )
    .unwrap();
    let prod = HenonMap::product(f.clone(), g.clone()).unwrap();
    let z1 = ComplexPoint::from_re_im(&[0.3, 0.1, -0.2, 0.4]);
    let z2 = ComplexPoint::from_re_im(&[-1.0, 0.2, 0.5, -0.3]);
    // product layout (x1, x2, y1, y2)
    let zp = ComplexPoint::new(vec![z1[0], z2[0], z1[1], z2[1]]);
    let w = prod.eval_inverse(&zp);
    let w1 = f.eval_inverse(&z1);
    let w2 = g.eval_inverse(&z2);
    let expect = ComplexPoint::new(vec![w1[0], w2[0], w1[1], w2[1]]);
    assert!(w.distance(&expect) < 1e-13);
}

#[test]
fn product_eval_is_permuted_pair() {
    let f = horseshoe();
    let g = horseshoe();
    let prod = HenonMap::product(f.clone(), g.clone()).unwrap();
    assert_eq!(prod.main_degree(), 4);
    let z1 = ComplexPoint::from_re_im(&[0.7, -0.3, 0.2, 0.9]);
    let z2 = ComplexPoint::from_re_im(&[-0.4, 0.0, 1.1, 0.5]);
    let zp = ComplexPoint::new(vec![z1[0], z2[0], z1[1], z2[1]]);
    let w = prod.eval(&zp);
    let w1 = f.eval(&z1);
    let w2 = g.eval(&z2);
    let expect = ComplexPoint::new(vec![w1[0], w2[0], w1[1], w2[1]]);
    assert_eq!(w.distance(&expect), 0.0);
}

#[test]
fn jacobian_at_origin() {
    let f = horseshoe();
    let j = f.jacobian(&ComplexPoint::from_re(&[0.0, 0.0]));
    assert_eq!(j[(0, 0)], c(0.0, 0.0));
    assert_eq!(j[(0, 1)], c(-1.0, 0.0));
    assert_eq!(j[(1, 0)], c(1.0, 0.0));
    assert_eq!(j[(1, 1)], c(0.0, 0.0));
    let det = j[(0, 0)] * j[(1, 1)] - j[(0, 1)] * j[(1, 0)];
    assert!((det - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn jacobian_at_fixed_point() {
    let f = horseshoe();
    let x = 1.0 + 7.0f64.sqrt();
    let j = f.jacobian(&ComplexPoint::from_re(&[x, x]));
    assert!((j[(0, 0)] - c(2.0 * x, 0.0)).norm() < 1e-13);
    assert!((j[(0, 1)] - c(-1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn jacobian_matches_central_differences() {
    let f = horseshoe();
    let mut rng = crate::rng::from_seed(7);
    let h = 1e-6;
    for _ in 0..100 {
        let z = ComplexPoint::new(
            (0..2)
                .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
                .collect(),
        );
        let j = f.jacobian(&z);
        let scale = linalg::sigma_max(&j);
        for col in 0..2 {
            let mut ep = z.coords().to_vec();
            let mut em = z.coords().to_vec();
            ep[col] += c(h, 0.0);
            em[col] -= c(h, 0.0);
            let d = {
                let a = f.eval(&ComplexPoint::new(ep));
                let b = f.eval(&ComplexPoint::new(em));
                [(a[0] - b[0]) / (2.0 * h), (a[1] - b[1]) / (2.0 * h)]
            };
            for row in 0..2 {
                assert!(
                    (d[row] - j[(row, col)]).norm() <= 1e-6 * scale.max(1.0),
                    "fd mismatch at {z}"
                );
            }
        }
    }
}

#[test]
fn determinant_is_minus_shear_everywhere() {
    let f = horseshoe();
    let mut rng = crate::rng::from_seed(11);
    for _ in 0..200 {
        let z = ComplexPoint::new(
            (0..2)
                .map(|_| c(rng.gen_range(-3.5..3.5), rng.gen_range(-3.5..3.5)))
                .collect(),
        );
        let j = f.jacobian(&z);
        let det = j[(0, 0)] * j[(1, 1)] - j[(0, 1)] * j[(1, 0)];
        // det Df = -a = 1
        assert!((det - c(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn roundtrip_inverse_of_eval() {
    let f = horseshoe();
    let mut rng = crate::rng::from_seed(3);
    let r = f.domain().radius_m[0];
    for _ in 0..10_000 {
        let z = ComplexPoint::new(
            (0..2)
                .map(|_| c(rng.gen_range(-r..r), rng.gen_range(-r..r)))
                .collect(),
        );
        let back = f.eval_inverse(&f.eval(&z));
        assert!(back.distance(&z) <= 1e-12 * (1.0 + z.norm()));
    }
}

#[test]
fn chain_rule_jacobian_matches_finite_differences_of_iterates() {
    let f = horseshoe();
    let mut rng = crate::rng::from_seed(19);
    let x = 1.0 + 7.0f64.sqrt();
    let h = 1e-8;
    for n in [2usize, 5, 10] {
        for _ in 0..10 {
            // points near the fixed point stay bounded for 10 steps
            let z = ComplexPoint::new(vec![
                c(x + rng.gen_range(-1e-7..1e-7), rng.gen_range(-1e-7..1e-7)),
                c(x + rng.gen_range(-1e-7..1e-7), rng.gen_range(-1e-7..1e-7)),
            ]);
            let (_, j) = f.iterate_with_jacobian(&z, n, 1e6).unwrap();
            let scale = linalg::sigma_max(&j);
            for col in 0..2 {
                // real- and imaginary-step central differences; their mean
                // cancels the h² term of a holomorphic map exactly
                let fn_at = |dz: Complex64| {
                    let mut coords = z.coords().to_vec();
                    coords[col] += dz;
                    f.iterate_with_jacobian(&ComplexPoint::new(coords), n, 1e6)
                        .unwrap()
                        .0
                };
                let (a, b) = (fn_at(c(h, 0.0)), fn_at(c(-h, 0.0)));
                let (ai, bi) = (fn_at(c(0.0, h)), fn_at(c(0.0, -h)));
                for row in 0..2 {
                    let fd_re = (a[row] - b[row]) / (2.0 * h);
                    let fd_im = (ai[row] - bi[row]) / (c(0.0, 1.0) * 2.0 * h);
                    let fd = (fd_re + fd_im) / 2.0;
                    assert!(
                        (fd - j[(row, col)]).norm() <= 1e-5 * scale,
                        "n={n} rel {}",
                        (fd - j[(row, col)]).norm() / scale
                    );
                }
            }
        }
    }
}

#[test]
fn iterate_zero_steps() {
    let f = horseshoe();
    let z = ComplexPoint::from_re(&[0.5, -0.25]);
    let orbit = f.iterate(&z, 0, f.default_escape_radius());
    assert_eq!(orbit.points.len(), 1);
    assert_eq!(orbit.status, OrbitStatus::Completed);
}

#[test]
fn iterate_fixed_point_is_constant() {
    let f = horseshoe();
    let fp = &horseshoe_fixed_points()[0];
    let orbit = f.iterate(fp, 12, f.default_escape_radius());
    assert_eq!(orbit.status, OrbitStatus::Completed);
    for p in &orbit.points {
        assert!(p.distance(fp) < 1e-10);
    }
}

#[test]
fn iterate_escapes_fast_from_outside() {
    let f = horseshoe();
    let orbit = f.iterate(&ComplexPoint::from_re(&[10.0, 0.0]), 5, 5.0);
    match orbit.status {
        OrbitStatus::Escaped { step, norm } => {
            assert!(step <= 1, "escaped at {step}");
            assert!(norm > 5.0);
        }
        OrbitStatus::Completed => panic!("orbit should escape"),
    }
}

#[test]
fn henon_like_passes_at_horseshoe_radius() {
    let report = check_henon_like(&horseshoe(), 10_000, 42);
    assert!(report.pass, "{report:?}");
    assert!(report.vertical_boundary_margin >= -1e-12);
    assert!(report.horizontal_boundary_margin >= -1e-12);
    assert!(report.graph_occupancy > 0.0);
}

#[test]
fn degree_below_two_rejected_at_construction() {
    // identity-like p(x) = x, a = 1
    let err = GeneralizedHenon::new(vec![c(0.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0));
    assert!(err.is_err());
}

#[test]
fn henon_like_fails_on_tiny_bidisk() {
    let f = HenonMap::generalized(
        GeneralizedHenon::quadratic(c(-6.0, 0.0), c(-1.0, 0.0)).unwrap(),
        BidiskDomain::planar(0.1, 0.1, 0.5, 0.75).unwrap(),
    )
    .unwrap();
    let report = check_henon_like(&f, 2_000, 42);
    assert!(!report.pass);
    assert_eq!(report.graph_occupancy, 0.0, "images must escape");
    assert!(report.failing_sample.is_some());
}

#[test]
fn doubled_diagonal_correspondence_with_period_two() {
    let f = horseshoe();
    let fd = HenonMap::doubled(f.clone()).unwrap();
    assert_eq!(fd.main_degree(), 4);
    // period-2 orbit of the horseshoe: x ∈ {-1±√3} with y the other root
    let s = 3.0f64.sqrt();
    let p2 = ComplexPoint::from_re(&[-1.0 + s, -1.0 - s]);
    assert!(f.iterate(&p2, 2, 100.0).points[2].distance(&p2) < 1e-12);
    // F(z,z) with f²(z)=z: components (f(z), f^{-1}(z)) must agree
    let dz = fd.eval(&p2.concat(&p2));
    let first = dz.block(0..2);
    let second = dz.block(2..4);
    assert!(first.distance(&second) / 2.0f64.sqrt() < 1e-12);
    // a non-periodic point does not land on the diagonal
    let q = ComplexPoint::from_re(&[0.4, 0.2]);
    let dq = fd.eval(&q.concat(&q));
    assert!(dq.block(0..2).distance(&dq.block(2..4)) > 1e-3);
}

#[test]
fn doubled_membership_permutes_blocks() {
    let f = horseshoe();
    let fd = HenonMap::doubled(f.clone()).unwrap();
    let r = f.domain().radius_m[0];
    let inside = ComplexPoint::from_re(&[0.1, 0.2, -0.3, 0.4]);
    assert!(fd.contains(&inside, 1.0));
    let outside = ComplexPoint::from_re(&[0.1, 0.2, -0.3, r * 1.01]);
    assert!(!fd.contains(&outside, 1.0));
    assert_eq!(fd.expanding_coordinates(), vec![0, 3]);
}

#[test]
fn jacobian_inverse_map_matches_inverse_of_jacobian() {
    let f = horseshoe();
    let mut rng = crate::rng::from_seed(5);
    for _ in 0..50 {
        let z = ComplexPoint::new(
            (0..2)
                .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
                .collect(),
        );
        let w = f.eval(&z);
        let ji = f.jacobian_inverse_map(&w);
        let j = f.jacobian(&z);
        let prod = &ji * &j;
        let err = (&prod - CMat::identity(2, 2)).norm();
        assert!(err < 1e-10, "D(f^-1)(f(z))·Df(z) != I, err {err}");
    }
}
