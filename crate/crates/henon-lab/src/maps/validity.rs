//! Numerical verification of the Hénon-like conditions.
//!
//! The graph-avoidance conditions are checked by sampling, not proved:
//! points of the vertical boundary ∂_vD must map outside D, points of the
//! horizontal boundary ∂_hD must map outside D under f⁻¹, and the graph
//! over D must be nonempty. Margins are reported as distances from the
//! forbidden boundary regions; the inner-inclusion excesses relative to
//! M''/N'' are recorded as data without gating the verdict (the classical
//! horseshoe radius is exactly marginal: its fixed point sits on ∂D, so
//! every strict inclusion fails at isolated points while the sampled
//! margins stay nonnegative).

use rand::Rng;

use super::{ComplexPoint, HenonMap};
use crate::rng;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub pass: bool,
    pub samples: usize,
    /// min over ∂_vD samples of (relative polydisk norm of f(z)) − 1;
    /// negative means an image strictly inside D (violation).
    pub vertical_boundary_margin: f64,
    /// Same for ∂_hD samples under f⁻¹.
    pub horizontal_boundary_margin: f64,
    /// Fraction of interior samples z with f(z) ∈ D (graph occupancy);
    /// zero means the images escape and no Hénon-like graph exists.
    pub graph_occupancy: f64,
    /// Worst observed excess of π_M over M'' among graph-domain samples
    /// ((max |x_i|/r''_i) − 1; positive = the Eq-(2.1)-style inclusion
    /// fails at that sample). Reported, not gating.
    pub m_inner_excess: f64,
    /// Same for π_N of forward images over N''.
    pub n_inner_excess: f64,
    pub failing_sample: Option<(ComplexPoint, String)>,
}

const MARGIN_TOL: f64 = 1e-12;

/// Samples points on ∂_vD, ∂_hD and in D and checks the boundary-avoidance
/// conditions of the Hénon-like definition. Failures are data, never
/// errors.
pub fn check_henon_like(map: &HenonMap, samples: usize, seed: u64) -> ValidityReport {
    assert!(samples >= 1, "check_henon_like: samples >= 1");
    let mut rng = rng::from_seed(seed);
    let radii = map.coordinate_radii();
    let expanding = map.expanding_coordinates();
    let contracting: Vec<usize> = (0..map.dim()).filter(|i| !expanding.contains(i)).collect();
    let rel_norm = |z: &ComplexPoint| -> f64 {
        z.coords()
            .iter()
            .zip(&radii)
            .map(|(c, r)| c.norm() / r)
            .fold(0.0, f64::max)
    };

    let mut vertical_margin = f64::INFINITY;
    let mut horizontal_margin = f64::INFINITY;
    let mut failing: Option<(ComplexPoint, String)> = None;

    let sample_interior = |rng: &mut rand_chacha::ChaCha12Rng| -> ComplexPoint {
        let coords: Vec<Complex64> = radii
            .iter()
            .map(|r| {
                // uniform in the coordinate disk
                let u: f64 = rng.gen();
                let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                Complex64::from_polar(r * u.sqrt(), th)
            })
            .collect();
        ComplexPoint::new(coords)
    };

    // boundary samples: one coordinate pinned to its boundary circle
    for s in 0..samples {
        let mut z = sample_interior(&mut rng);
        let pin = expanding[s % expanding.len()];
        let mut coords = z.coords().to_vec();
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        coords[pin] = Complex64::from_polar(radii[pin], th);
        z = ComplexPoint::new(coords);
        let img = map.eval(&z);
        let m = rel_norm(&img) - 1.0;
        if m < vertical_margin {
            vertical_margin = m;
            if m < -MARGIN_TOL && failing.is_none() {
                failing = Some((z.clone(), "vertical boundary sample maps into D".into()));
            }
        }
    }
    for s in 0..samples {
        let mut z = sample_interior(&mut rng);
        let pin = contracting[s % contracting.len()];
        let mut coords = z.coords().to_vec();
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        coords[pin] = Complex64::from_polar(radii[pin], th);
        z = ComplexPoint::new(coords);
        let img = map.eval_inverse(&z);
        let m = rel_norm(&img) - 1.0;
        if m < horizontal_margin {
            horizontal_margin = m;
            if m < -MARGIN_TOL && failing.is_none() {
                failing = Some((z.clone(), "horizontal boundary sample pulls back into D".into()));
            }
        }
    }

    // interior samples: graph occupancy and inner-inclusion excess data
    let inner = map.domain().shrink_inner;
    let mut occupied = 0usize;
    let mut m_excess = f64::NEG_INFINITY;
    let mut n_excess = f64::NEG_INFINITY;
    for _ in 0..samples {
        let z = sample_interior(&mut rng);
        let img = map.eval(&z);
        if map.contains(&img, 1.0) {
            occupied += 1;
            let mx = expanding
                .iter()
                .map(|&i| z[i].norm() / (inner * radii[i]))
                .fold(0.0, f64::max)
                - 1.0;
            let nx = contracting
                .iter()
                .map(|&j| img[j].norm() / (inner * radii[j]))
                .fold(0.0, f64::max)
                - 1.0;
            m_excess = m_excess.max(mx);
            n_excess = n_excess.max(nx);
        }
    }
    let occupancy = occupied as f64 / samples as f64;
    if occupied == 0 && failing.is_none() {
        failing = Some((
            sample_interior(&mut rng),
            "empty graph: all sampled forward images escape D".into(),
        ));
    }

    let pass =
        vertical_margin >= -MARGIN_TOL && horizontal_margin >= -MARGIN_TOL && occupied > 0;
    ValidityReport {
        pass,
        samples,
        vertical_boundary_margin: vertical_margin,
        horizontal_boundary_margin: horizontal_margin,
        graph_occupancy: occupancy,
        m_inner_excess: m_excess,
        n_inner_excess: n_excess,
        failing_sample: if pass { None } else { failing },
    }
}
