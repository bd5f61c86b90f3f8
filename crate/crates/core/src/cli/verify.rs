//! Cross-module self-checks behind the `verify` command.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use super::CliError;
use crate::conferencing::macce_from_maccm;
use crate::discrete::{brute_force_frontier, AuxCaps, DmcState};
use crate::gaussian::{
    cstar, macce_c_bounds, macce_nc_bounds, maccm_c_bounds, maccm_nc_bounds, oracle_optimize,
    sweep_region, sweep_region_multi, Abscissas, GaussianMacParams, PowerSplit, Scenario,
    SweepGrid,
};
use crate::geometry::{frontier_gap, linspace, make_pentagon, point_in_polygon, RatePoint2};
use crate::{Error, Result};

/// The closed-form non-causal caps the oracle is compared against.
pub type ClosedForm = fn(&GaussianMacParams, f64, f64) -> Result<crate::geometry::MaccmBounds>;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub gap: f64,
    pub tol: f64,
    pub pass: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<26} gap={:<11.3e} tol={:<9.1e} {}",
            self.name,
            self.gap,
            self.tol,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

const SMALL: SweepGrid = SweepGrid {
    beta: 11,
    alpha: 11,
    resolution: 65,
};

fn max_field_gap(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn oracle_gap(p: &GaussianMacParams, closed_form: ClosedForm) -> Result<f64> {
    let mut gap: f64 = 0.0;
    for (b1, b2) in [(0.0, 0.0), (0.2, 0.4), (0.5, 0.5), (0.9, 0.3), (1.0, 1.0)] {
        let (_, got) = oracle_optimize(p, b1, b2)?;
        let want = closed_form(p, b1, b2)?;
        gap = gap.max(max_field_gap(got.as_array(), want.as_array()));
    }
    Ok(gap)
}

fn reduction_gap(p: &GaussianMacParams, causal: bool) -> Result<f64> {
    let betas = linspace(0.0, 1.0, 21);
    let alphas1 = linspace(p.alpha_range(1).0, p.alpha_range(1).1, 5);
    let alphas2 = linspace(p.alpha_range(2).0, p.alpha_range(2).1, 5);
    let mut gap: f64 = 0.0;
    for (c12, c21) in [(p.c12, p.c21), (0.7, 0.3)] {
        let q = p.with_conference(c12, c21);
        for &b1 in &betas {
            for &b2 in &betas {
                if !causal {
                    let m = maccm_nc_bounds(&q, b1, b2)?;
                    let e = macce_nc_bounds(&q, b1, b2)?;
                    gap = gap.max(max_field_gap(macce_from_maccm(&m, c12, c21).as_array(), e.as_array()));
                    continue;
                }
                for &a1 in &alphas1 {
                    for &a2 in &alphas2 {
                        let s = PowerSplit::new(b1, b2, a1, a2);
                        let m = maccm_c_bounds(&q, &s)?;
                        let e = macce_c_bounds(&q, &s)?;
                        gap = gap.max(max_field_gap(macce_from_maccm(&m, c12, c21).as_array(), e.as_array()));
                    }
                }
            }
        }
    }
    Ok(gap)
}

/// Largest excess of a causal cap over the non-causal one at equal power
/// split.
fn containment_gap(p: &GaussianMacParams) -> Result<f64> {
    let betas = linspace(0.0, 1.0, 11);
    let alphas1 = linspace(p.alpha_range(1).0, p.alpha_range(1).1, 11);
    let alphas2 = linspace(p.alpha_range(2).0, p.alpha_range(2).1, 11);
    let mut gap = f64::NEG_INFINITY;
    for &b1 in &betas {
        for &b2 in &betas {
            let nc = maccm_nc_bounds(p, b1, b2)?.as_array();
            for &a1 in &alphas1 {
                for &a2 in &alphas2 {
                    let c = maccm_c_bounds(p, &PowerSplit::new(b1, b2, a1, a2))?.as_array();
                    for i in 0..4 {
                        gap = gap.max(c[i] - nc[i]);
                    }
                }
            }
        }
    }
    Ok(gap)
}

fn saturation_gap(p: &GaussianMacParams) -> Result<f64> {
    let c = cstar(p)?.value;
    let q = p.with_conference(c + 1.0, c + 1.0);
    let f = sweep_region(Scenario::MacceC, &q, SMALL, 0.0)?;
    Ok(f.points
        .iter()
        .map(|pt| (pt.r1 + pt.r2 - c).abs())
        .fold(0.0, f64::max))
}

fn nesting_gap(p: &GaussianMacParams, c_values: &[f64]) -> Result<f64> {
    let mut cs = c_values.to_vec();
    cs.sort_by(f64::total_cmp);
    let caps: Vec<(f64, f64)> = cs.iter().map(|&c| (c, c)).collect();
    let fs = sweep_region_multi(Scenario::MacceC, p, &caps, SMALL, 0.0, Abscissas::Shared)?;
    Ok(fs
        .windows(2)
        .map(|w| frontier_gap(&w[0], &w[1]))
        .fold(0.0, f64::max))
}

fn discrete_gap() -> Result<f64> {
    let xor = DmcState::binary_xor_state();
    let caps = AuxCaps { nu: 1, nv1: 2, nv2: 2 };
    let mut gap: f64 = 0.0;
    for causal in [false, true] {
        let f = brute_force_frontier(&xor, caps, 2, causal, 33)?;
        let best = f
            .max_sum_rate()
            .ok_or_else(|| Error::Domain("empty frontier".into()))?;
        gap = gap.max((best - 1.0).abs());
    }
    Ok(gap)
}

/// Misclassified sample points between the constraint test and the
/// polygon test on random pentagons.
fn geometry_gap() -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut wrong = 0u32;
    for _ in 0..200 {
        let b1 = rng.random_range(0.0..3.0);
        let b2 = rng.random_range(0.0..3.0);
        let bs = rng.random_range(0.0..6.0);
        let pent = make_pentagon(b1, b2, bs)?;
        for x in linspace(-0.1, 3.2, 23) {
            for y in linspace(-0.1, 3.2, 23) {
                let q = RatePoint2::new(x, y);
                if pent.caps().contains(q, 1e-9) != point_in_polygon(pent.vertices(), q, 1e-9) {
                    wrong += 1;
                }
            }
        }
    }
    Ok(wrong as f64)
}

/// Gaussian parameters for the checks: the configured ones, or the
/// `P1 = 20, P2 = 40, PS = 10, PZ = 1` reference channel.
fn verify_params(cfg: &RunConfig) -> std::result::Result<GaussianMacParams, CliError> {
    if cfg.p1.is_none() && cfg.p2.is_none() && cfg.pz.is_none() {
        let ps = if cfg.ps > 0.0 { cfg.ps } else { 10.0 };
        return Ok(GaussianMacParams::new(20.0, 40.0, ps, 1.0, cfg.c12, cfg.c21)?);
    }
    cfg.gaussian().map_err(CliError::from)
}

/// Run every registered check; tolerances are scaled by `cfg.tol_scale`.
pub fn run_checks(
    cfg: &RunConfig,
    closed_form: ClosedForm,
) -> std::result::Result<Vec<CheckResult>, CliError> {
    let p = verify_params(cfg)?;
    let checks: Vec<(&'static str, f64, f64)> = vec![
        ("oracle-vs-closed-form", oracle_gap(&p, closed_form)?, 1e-6),
        ("reduction-equality-nc", reduction_gap(&p, false)?, 1e-12),
        ("reduction-equality-c", reduction_gap(&p, true)?, 1e-12),
        ("causal-within-noncausal", containment_gap(&p)?, 1e-12),
        ("cstar-saturation", saturation_gap(&p)?, 1e-6),
        ("conference-nesting", nesting_gap(&p, &cfg.c_values)?, 1e-12),
        ("discrete-xor-sum-rate", discrete_gap()?, 1e-9),
        ("geometry-classification", geometry_gap()?, 0.0),
    ];
    Ok(checks
        .into_iter()
        .map(|(name, gap, tol)| {
            let tol = tol * cfg.tol_scale;
            CheckResult {
                name,
                gap,
                tol,
                pass: gap <= tol,
            }
        })
        .collect())
}
