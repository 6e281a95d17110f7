//! Multi-start Newton root census for holomorphic systems g: C^k → C^k.
//!
//! `newton_refine` is a damped Newton iteration on any [`HoloSystem`].
//! `solve_all` launches it from a lattice of seeds plus an equal number of
//! pseudo-random seeds, deduplicates converged roots by single-linkage
//! clustering, infers multiplicities from rank deficiency plus count
//! matching against the expected total, and reports completeness.
//!
//! Period-n censuses do not solve g(z) = fⁿ(z) − z directly: the Jacobian
//! Dfⁿ grows like λⁿ and the Newton basins shrink accordingly, which makes
//! the n = 8 census unreachable from any reasonable seed count. Instead
//! [`FixedPointSystem`] exposes the cyclic orbit system
//! G(z₀,…,z_{n−1}) = (f(z_j) − z_{j+1 mod n})_j, whose blocks each involve a
//! single application of f; `newton_refine` on G converges from random seed
//! tuples, and every node of a solved tuple is a period-n point. The
//! ambient contract of `fixed_point_system` (value fⁿ(z) − z, Jacobian
//! Dfⁿ − I by ordered chain products) is unchanged and is what
//! classification and tangency spectra evaluate.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::maps::{cvec_to_point, point_to_cvec, ComplexPoint, HenonMap};
use crate::rng;

/// A square holomorphic system with value and Jacobian at any point.
pub trait HoloSystem: Sync {
    fn dim(&self) -> usize;
    fn residual(&self, z: &CVec) -> CVec;
    fn jacobian(&self, z: &CVec) -> CMat;
}

/// Solver tolerances and seeding parameters.
///
/// Defaults: residual tolerance 1e−10 with dedup 1e−6 and singularity
/// threshold 1e−6 — three orders of separation between the residual and
/// dedup scales so that genuine distinct saddles (pairwise > 1e−3 for
/// horseshoe parameters at n ≤ 10) never merge.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub dedup_tol: f64,
    pub singular_threshold: f64,
    /// Lattice points per real axis of the seed box.
    pub grid_density: usize,
    /// Cap on lattice size (the lattice is strided down to this count when
    /// grid_density^{2k} exceeds it).
    pub max_grid_points: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-10,
            max_iter: 80,
            dedup_tol: 1e-6,
            singular_threshold: 1e-6,
            grid_density: 6,
            max_grid_points: 65_536,
            seed: 1,
        }
    }
}

/// A converged, deduplicated root.
#[derive(Debug, Clone)]
pub struct RootRecord {
    pub location: ComplexPoint,
    /// Residual of the solved system at the root (for censuses, the orbit
    /// system's backward error).
    pub residual: f64,
    pub multiplicity: u32,
    /// Smallest singular value of the ambient Jacobian (Dfⁿ − I for
    /// censuses) at the root.
    pub jacobian_sigma_min: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Incomplete { deficit: u64 },
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    /// Lexicographically sorted by coordinates.
    pub roots: Vec<RootRecord>,
    pub expected: u64,
    /// Sum of multiplicities.
    pub found_total: u64,
    pub completeness: Completeness,
}

#[derive(Debug, Clone)]
pub enum NewtonOutcome {
    Root(RootRecord),
    NoConvergence { residual: f64 },
}

/// Damped Newton iteration: full step, halved while the residual does not
/// decrease (up to 30 halvings); singular Jacobians fall back to an SVD
/// least-squares step. Succeeds iff ‖g‖ < tol within max_iter steps.
pub fn newton_refine<S: HoloSystem + ?Sized>(
    system: &S,
    seed: &ComplexPoint,
    tol: f64,
    max_iter: usize,
) -> NewtonOutcome {
    let mut z = point_to_cvec(seed);
    assert_eq!(z.len(), system.dim(), "newton_refine: dimension mismatch");
    let mut g = system.residual(&z);
    let mut r = g.norm();
    for _ in 0..max_iter {
        if r < tol {
            let j = system.jacobian(&z);
            return NewtonOutcome::Root(RootRecord {
                location: cvec_to_point(&z),
                residual: r,
                multiplicity: 1,
                jacobian_sigma_min: linalg::sigma_min(&j),
            });
        }
        if !r.is_finite() {
            return NewtonOutcome::NoConvergence { residual: r };
        }
        let j = system.jacobian(&z);
        let step = linalg::solve_or_least_squares(&j, &g);
        if step.norm() == 0.0 {
            return NewtonOutcome::NoConvergence { residual: r };
        }
        let mut t = 1.0;
        let mut advanced = false;
        for _ in 0..30 {
            let z2 = &z - &step * Complex64::new(t, 0.0);
            let g2 = system.residual(&z2);
            let r2 = g2.norm();
            if r2 < r {
                z = z2;
                g = g2;
                r = r2;
                advanced = true;
                break;
            }
            t *= 0.5;
        }
        if !advanced {
            return NewtonOutcome::NoConvergence { residual: r };
        }
    }
    if r < tol {
        let j = system.jacobian(&z);
        NewtonOutcome::Root(RootRecord {
            location: cvec_to_point(&z),
            residual: r,
            multiplicity: 1,
            jacobian_sigma_min: linalg::sigma_min(&j),
        })
    } else {
        NewtonOutcome::NoConvergence { residual: r }
    }
}

/// Root candidate produced by one launch.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub location: CVec,
    pub residual: f64,
}

/// What `solve_all` drives: one Newton launch from a group of seed points,
/// plus the ambient Jacobian for rank diagnostics.
pub trait SolveTarget: Sync {
    fn ambient_dim(&self) -> usize;
    /// Seed points consumed per launch (chain systems use one per node).
    fn seeds_per_launch(&self) -> usize {
        1
    }
    fn launch(&self, seeds: &[CVec], tol: f64, max_iter: usize) -> Vec<Candidate>;
    fn ambient_jacobian(&self, z: &CVec) -> CMat;
}

/// Seed box and acceptance region for `solve_all`, in the map's point
/// layout. Seeds live in the outer-shrunk bidisk D'; roots are accepted in
/// the closed bidisk with a hair of slack so that boundary periodic points
/// (the classical horseshoe has one exactly on ∂D) are kept.
#[derive(Debug, Clone)]
pub struct SeedRegion {
    pub radii: Vec<f64>,
    pub seed_scale: f64,
    pub accept_scale: f64,
}

impl SeedRegion {
    pub fn from_map(map: &HenonMap) -> Self {
        SeedRegion {
            radii: map.coordinate_radii(),
            seed_scale: map.domain().shrink_outer,
            accept_scale: 1.0 + 1e-9,
        }
    }

    fn accepts(&self, z: &CVec) -> bool {
        z.iter()
            .zip(&self.radii)
            .all(|(c, r)| c.norm() <= self.accept_scale * r)
    }
}

/// Multi-start census: lattice seeds plus an equal number of pseudo-random
/// seeds, single-linkage dedup, multiplicity by rank deficiency and count
/// matching. found_total > expected is a hard error (dedup tolerance too
/// small or wrong expected count); a deficit without a singular cluster to
/// absorb it reports Incomplete.
pub fn solve_all<T: SolveTarget>(
    target: &T,
    region: &SeedRegion,
    expected: u64,
    cfg: &SolverConfig,
) -> Result<CensusResult> {
    assert!(cfg.grid_density >= 2, "solve_all: grid_density >= 2");
    let k = target.ambient_dim();
    assert_eq!(region.radii.len(), k, "solve_all: region dimension mismatch");

    let pool = seed_pool(region, k, cfg);
    let per = target.seeds_per_launch().max(1);
    let launches = pool.len() / per;
    if launches == 0 {
        return Err(Error::Precondition(
            "seed pool smaller than one launch".into(),
        ));
    }

    // Deterministic across thread counts: launches indexed, results
    // collected in launch order. Node j of launch i strides through the
    // pool so tuples mix distant seeds.
    let found: Vec<Vec<Candidate>> = (0..launches)
        .into_par_iter()
        .map(|i| {
            let seeds: Vec<CVec> = (0..per).map(|j| pool[(i + j * launches) % pool.len()].clone()).collect();
            target.launch(&seeds, cfg.tol, cfg.max_iter)
        })
        .collect();

    let mut accepted: Vec<Candidate> = found
        .into_iter()
        .flatten()
        .filter(|c| region.accepts(&c.location))
        .collect();
    accepted.sort_by(|a, b| lex_cmp(&a.location, &b.location));

    let clusters = single_linkage(&accepted, cfg.dedup_tol);
    let mut records: Vec<RootRecord> = clusters
        .iter()
        .map(|members| {
            let best = members
                .iter()
                .min_by(|i, j| accepted[**i].residual.total_cmp(&accepted[**j].residual))
                .unwrap();
            let loc = accepted[*best].location.clone();
            let j = target.ambient_jacobian(&loc);
            let sv = j.singular_values();
            let sigma_min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            let deficiency = sv.iter().filter(|s| **s < cfg.singular_threshold).count() as u32;
            RootRecord {
                location: cvec_to_point(&loc),
                residual: accepted[*best].residual,
                multiplicity: deficiency.max(1),
                jacobian_sigma_min: sigma_min,
            }
        })
        .collect();
    records.sort_by(|a, b| lex_cmp(&point_to_cvec(&a.location), &point_to_cvec(&b.location)));

    let mut found_total: u64 = records.iter().map(|r| u64::from(r.multiplicity)).sum();
    if found_total > expected {
        return Err(Error::CensusOvercount {
            expected,
            found: found_total,
        });
    }
    let mut completeness = Completeness::Complete;
    if found_total < expected {
        let deficit = expected - found_total;
        let most_singular = records
            .iter()
            .enumerate()
            .filter(|(_, r)| r.jacobian_sigma_min < cfg.singular_threshold)
            .min_by(|a, b| a.1.jacobian_sigma_min.total_cmp(&b.1.jacobian_sigma_min))
            .map(|(i, _)| i);
        match most_singular {
            Some(i) => {
                records[i].multiplicity += u32::try_from(deficit).unwrap_or(u32::MAX);
                found_total = expected;
            }
            None => completeness = Completeness::Incomplete { deficit },
        }
    }

    Ok(CensusResult {
        roots: records,
        expected,
        found_total,
        completeness,
    })
}

fn lex_cmp(a: &CVec, b: &CVec) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

fn seed_pool(region: &SeedRegion, k: usize, cfg: &SolverConfig) -> Vec<CVec> {
    let g = cfg.grid_density;
    let axes = 2 * k;
    // lattice size g^{2k}, strided down to the cap when oversized
    let total: u128 = (g as u128).pow(axes as u32);
    let take = total.min(cfg.max_grid_points as u128) as usize;
    let stride = (total / take as u128).max(1);
    let mut pool = Vec::with_capacity(2 * take);
    let coord = |axis_val: usize, i: usize| -> f64 {
        let r = region.radii[i / 2] * region.seed_scale;
        r * (2.0 * (axis_val as f64 + 0.5) / g as f64 - 1.0)
    };
    for idx in 0..take {
        let mut rem = idx as u128 * stride;
        let mut re_im = vec![0.0f64; axes];
        for a in 0..axes {
            re_im[a] = coord((rem % g as u128) as usize, a);
            rem /= g as u128;
        }
        pool.push(CVec::from_iterator(
            k,
            (0..k).map(|i| Complex64::new(re_im[2 * i], re_im[2 * i + 1])),
        ));
    }
    let mut rng = rng::from_seed(cfg.seed);
    for _ in 0..take {
        pool.push(CVec::from_iterator(
            k,
            (0..k).map(|i| {
                let r = region.radii[i] * region.seed_scale;
                Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
            }),
        ));
    }
    pool
}

/// Single-linkage clusters over sorted candidates; indices into the input.
fn single_linkage(candidates: &[Candidate], tol: f64) -> Vec<Vec<usize>> {
    let n = candidates.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            // sorted lexicographically: once the first real coordinate gap
            // exceeds tol, no later j can link to i
            if (candidates[j].location[0].re - candidates[i].location[0].re).abs() > tol {
                break;
            }
            if (&candidates[i].location - &candidates[j].location).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

mod chain;
mod fixed_point;

pub use chain::{BoundaryChainSystem, CyclicOrbitSystem};
pub use fixed_point::{fixed_point_system, FixedPointSystem};

/// Plain multi-start target for an arbitrary square system.
pub struct GenericTarget<S: HoloSystem> {
    pub system: S,
}

impl<S: HoloSystem> SolveTarget for GenericTarget<S> {
    fn ambient_dim(&self) -> usize {
        self.system.dim()
    }

    fn launch(&self, seeds: &[CVec], tol: f64, max_iter: usize) -> Vec<Candidate> {
        match newton_refine(&self.system, &cvec_to_point(&seeds[0]), tol, max_iter) {
            NewtonOutcome::Root(rec) => vec![Candidate {
                location: point_to_cvec(&rec.location),
                residual: rec.residual,
            }],
            NewtonOutcome::NoConvergence { .. } => vec![],
        }
    }

    fn ambient_jacobian(&self, z: &CVec) -> CMat {
        self.system.jacobian(z)
    }
}

#[cfg(test)]
mod tests;
