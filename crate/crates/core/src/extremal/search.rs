//! Seeded derivative-free search over the truncated Grunsky-feasible region.
//!
//! The search works on `(w11, w13, w15, w35)` directly, with `w33` fixed by
//! the vanishing coefficient identity. A point is feasible when
//!
//! * the weighted inequality restricted to `(x1, x3)` holds for every
//!   complex `(x1, x3)` (a 2x2 Hermitian semidefiniteness test),
//! * the bilinear inequality restricted to `(x1, x3)` holds for every
//!   `(x1, x3)` (a spectral-norm test), and
//! * `|a3 - a2^2| <= 1`.
//!
//! All three are necessary for univalence, so the best value found is a
//! lower bound on the maximum over this relaxation and never a certificate
//! about the class itself.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::thm3_phi_max_closed_form;
use crate::error::{Error, Result};
use crate::grunsky::OddEntries;

/// Restarts per seed.
pub const RESTARTS: usize = 32;
pub const INITIAL_STEP: f64 = 0.1;
pub const STEP_FLOOR: f64 = 1e-7;
/// Allowed excess of a search value over a bound before it counts as unsound.
pub const SOUNDNESS_SLACK: f64 = 1e-6;

const SAMPLE_ATTEMPTS: usize = 64;
const SAMPLE_BOX: f64 = 0.6;

/// Side condition a search objective lives under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SideCondition {
    None,
    /// `a_2 = 0`, i.e. `w11 = 0`.
    A2Zero,
    /// `a_3 = 0`, i.e. `w13 = -3/2 w11^2`.
    A3Zero,
}

impl SideCondition {
    fn dims(self) -> usize {
        match self {
            SideCondition::None => 8,
            _ => 6,
        }
    }

    fn point(self, x: &[f64]) -> FeasiblePoint {
        let c = |i: usize| Complex64::new(x[2 * i], x[2 * i + 1]);
        match self {
            SideCondition::None => FeasiblePoint::new(c(0), c(1), c(2), c(3)),
            SideCondition::A2Zero => FeasiblePoint::new(Complex64::new(0.0, 0.0), c(0), c(1), c(2)),
            SideCondition::A3Zero => {
                let w11 = c(0);
                FeasiblePoint::new(w11, -1.5 * w11 * w11, c(1), c(2))
            }
        }
    }
}

/// A candidate `(w11, w13, w15, w33, w35)` with `w33` solved from the
/// vanishing identity `3 w15 - 3 w11 w13 + w11^3 - 3 w33 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FeasiblePoint(pub OddEntries<f64>);

impl FeasiblePoint {
    pub fn new(w11: Complex64, w13: Complex64, w15: Complex64, w35: Complex64) -> Self {
        FeasiblePoint(OddEntries {
            w11,
            w13,
            w15,
            w33: OddEntries::solve_w33(w11, w13, w15),
            w35,
        })
    }

    pub fn origin() -> Self {
        FeasiblePoint(OddEntries::default())
    }

    pub fn entries(&self) -> &OddEntries<f64> {
        &self.0
    }

    /// `1 - |a3 - a2^2|`.
    pub fn fekete_szego_gap(&self) -> f64 {
        let w = &self.0;
        1.0 - (2.0 * w.w13 - w.w11 * w.w11).norm()
    }

    /// Smallest of the three feasibility margins.
    pub fn margin(&self) -> f64 {
        self.0
            .weighted_min_gap()
            .min(self.0.bilinear_min_gap())
            .min(self.fekete_szego_gap())
    }

    pub fn is_feasible(&self) -> bool {
        self.margin() >= 0.0
    }

    /// Smallest gap over the fixed probe set: the weighted functional at
    /// `(1,0)` and `(0,1)`, the bilinear one at `(1,0)`, `(0,1)`,
    /// `(w11/sqrt6, 1)` and sixteen fixed unit pairs. Every feasible point
    /// has this non-negative.
    pub fn probe_gap(&self) -> f64 {
        let w = &self.0;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut g = w.weighted_gap(one, zero).min(w.weighted_gap(zero, one));
        for (x1, x3) in crate::grunsky::standard_probes(w.w11)
            .into_iter()
            .chain(fixed_unit_pairs())
        {
            g = g.min(w.bilinear_gap(x1, x3));
        }
        g
    }
}

fn fixed_unit_pairs() -> Vec<(Complex64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_ed0f_9a1b);
    (0..16)
        .map(|_| {
            let a: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
            let p1: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let p3: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            (
                Complex64::from_polar(a.cos(), p1),
                Complex64::from_polar(a.sin(), p3),
            )
        })
        .collect()
}

fn a_coeffs(p: &FeasiblePoint) -> [Complex64; 4] {
    p.0.coefficients()
}

fn h2(a: &[Complex64; 4]) -> Complex64 {
    let [a2, a3, a4, _] = *a;
    a2 * a4 - a3 * a3
}

fn h3(a: &[Complex64; 4]) -> Complex64 {
    let [a2, a3, a4, a5] = *a;
    a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2)
}

/// A named quantity to maximize, with its side condition and the
/// published upper bound it must stay below.
#[derive(Debug, Clone, Copy)]
pub struct Objective {
    pub name: &'static str,
    pub side: SideCondition,
    pub paper_bound: f64,
    eval: fn(&[Complex64; 4]) -> f64,
}

impl Objective {
    pub fn value(&self, p: &FeasiblePoint) -> f64 {
        (self.eval)(&a_coeffs(p))
    }
}

pub fn objectives() -> Vec<Objective> {
    let s37 = 37f64.sqrt();
    let o = |name, side, paper_bound, eval| Objective {
        name,
        side,
        paper_bound,
        eval,
    };
    use SideCondition::*;
    vec![
        o("a4_minus_a3", None, 2.0 * thm3_phi_max_closed_form(), |a| {
            a[2].norm() - a[1].norm()
        }),
        o("a3_a2zero", A2Zero, 1.0, |a| a[1].norm()),
        o("a4_a2zero", A2Zero, 2.0 / 3.0, |a| a[2].norm()),
        o("a5_a2zero", A2Zero, 503.0 / 300.0, |a| a[3].norm()),
        o("h2_a2zero", A2Zero, 1.0, |a| h2(a).norm()),
        o("h3_a2zero", A2Zero, 21.0 / 20.0, |a| h3(a).norm()),
        o("a2_a3zero", A3Zero, 1.0, |a| a[0].norm()),
        o("a4_a3zero", A3Zero, (s37 + 13.0) / 12.0, |a| a[2].norm()),
        o(
            "a5_a3zero",
            A3Zero,
            (757.0f64 / 15.0).sqrt() / 4.0 + 85.0 / 64.0,
            |a| a[3].norm(),
        ),
        o("h2_a3zero", A3Zero, (13.0 + s37) / 12.0, |a| h2(a).norm()),
        o("h3_a3zero", A3Zero, (24.0 + 645f64.sqrt()) / 30.0, |a| {
            h3(a).norm()
        }),
    ]
}

pub fn objective_by_name(name: &str) -> Result<Objective> {
    objectives()
        .into_iter()
        .find(|o| o.name == name)
        .ok_or_else(|| Error::UnknownObjective(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOutcome {
    pub best: FeasiblePoint,
    pub value: f64,
    /// Restart that produced `best`, `None` for the origin.
    pub restart: Option<usize>,
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64 + 1);
    rng
}

fn local_search(obj: &Objective, seed: u64, restart: usize, budget: usize) -> (FeasiblePoint, f64) {
    let side = obj.side;
    let d = side.dims();
    let mut rng = restart_rng(seed, restart);

    let mut x = vec![0.0; d];
    for _ in 0..SAMPLE_ATTEMPTS {
        let scale: f64 = rng.gen_range(0.0..1.0);
        let cand: Vec<f64> = (0..d)
            .map(|_| scale * rng.gen_range(-SAMPLE_BOX..SAMPLE_BOX))
            .collect();
        if side.point(&cand).is_feasible() {
            x = cand;
            break;
        }
    }
    let mut point = side.point(&x);
    let mut value = obj.value(&point);

    let mut step = INITIAL_STEP;
    let mut evals = 0;
    'outer: while step >= STEP_FLOOR {
        let mut improved = false;
        for i in 0..d {
            for dir in [1.0, -1.0] {
                if evals >= budget {
                    break 'outer;
                }
                evals += 1;
                let old = x[i];
                x[i] = old + dir * step;
                let cand = side.point(&x);
                if cand.is_feasible() {
                    let v = obj.value(&cand);
                    if v > value {
                        point = cand;
                        value = v;
                        improved = true;
                        break;
                    }
                }
                x[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (point, value)
}

/// Maximizes `obj` over the feasible region with [`RESTARTS`] seeded
/// restarts, each a coordinate search in the real and imaginary parts of
/// the free entries (initial step 0.1, halved after every sweep without
/// improvement, stopping below 1e-7 or after `iterations` candidate
/// evaluations). The origin is always a candidate, so `iterations = 0`
/// returns the objective there. Deterministic in `(seed, iterations)`.
pub fn search_feasible(obj: &Objective, seed: u64, iterations: usize) -> SearchOutcome {
    let origin = FeasiblePoint::origin();
    let mut outcome = SearchOutcome {
        best: origin,
        value: obj.value(&origin),
        restart: None,
    };
    if iterations == 0 {
        return outcome;
    }
    let runs: Vec<(FeasiblePoint, f64)> = (0..RESTARTS)
        .into_par_iter()
        .map(|r| local_search(obj, seed, r, iterations))
        .collect();
    for (r, (p, v)) in runs.into_iter().enumerate() {
        if v > outcome.value {
            outcome = SearchOutcome {
                best: p,
                value: v,
                restart: Some(r),
            };
        }
    }
    outcome
}

/// Serialized search result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub objective: String,
    pub seed: u64,
    pub best_value: f64,
    pub paper_bound: f64,
    /// `paper_bound - best_value`; negative beyond [`SOUNDNESS_SLACK`]
    /// means the bound was exceeded.
    pub slack: f64,
    pub point: FeasiblePoint,
}

impl SearchReport {
    pub fn new(obj: &Objective, seed: u64, outcome: &SearchOutcome) -> Self {
        SearchReport {
            objective: obj.name.to_string(),
            seed,
            best_value: outcome.value,
            paper_bound: obj.paper_bound,
            slack: obj.paper_bound - outcome.value,
            point: outcome.best,
        }
    }

    pub fn is_sound(&self) -> bool {
        self.best_value <= self.paper_bound + SOUNDNESS_SLACK
    }
}
