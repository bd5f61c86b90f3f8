//! Parameter-grid sweeps of the Gaussian unions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{causal_caps, cstar, mac_caps, GaussianMacParams, PowerSplit};
use crate::conferencing::macce_from_maccm;
use crate::error::{check_nonneg, domain, Error, Result};
use crate::geometry::{
    frontier_abscissas, linspace, EnvelopeBuilder, Frontier2, PentagonCaps, DEFAULT_RESOLUTION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    MaccmNc,
    MaccmC,
    MacceNc,
    MacceC,
}

impl Scenario {
    pub fn is_causal(self) -> bool {
        matches!(self, Scenario::MaccmC | Scenario::MacceC)
    }

    pub fn is_conferencing(self) -> bool {
        matches!(self, Scenario::MacceNc | Scenario::MacceC)
    }

    pub fn name(self) -> &'static str {
        match self {
            Scenario::MaccmNc => "maccm-nc",
            Scenario::MaccmC => "maccm-c",
            Scenario::MacceNc => "macce-nc",
            Scenario::MacceC => "macce-c",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maccm-nc" => Ok(Scenario::MaccmNc),
            "maccm-c" => Ok(Scenario::MaccmC),
            "macce-nc" => Ok(Scenario::MacceNc),
            "macce-c" => Ok(Scenario::MacceC),
            other => domain(format!("unknown Gaussian scenario `{other}`")),
        }
    }
}

/// Grid resolutions for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepGrid {
    pub beta: usize,
    pub alpha: usize,
    pub resolution: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            beta: 101,
            alpha: 101,
            resolution: DEFAULT_RESOLUTION,
        }
    }
}

/// Parameters of the union member attaining a frontier point. `alpha` is
/// `None` for non-causal scenarios. Ordered lexicographically on
/// `(beta1, beta2, alpha1, alpha2)`.
#[derive(Debug, Clone, Copy)]
pub struct SplitTag {
    pub beta1: f64,
    pub beta2: f64,
    pub alpha: Option<(f64, f64)>,
}

impl SplitTag {
    fn key(&self) -> [f64; 4] {
        let (a1, a2) = self.alpha.unwrap_or((f64::NEG_INFINITY, f64::NEG_INFINITY));
        [self.beta1, self.beta2, a1, a2]
    }
}

impl Ord for SplitTag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .iter()
            .zip(other.key().iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for SplitTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for SplitTag {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SplitTag {}

pub fn sweep_region(
    scenario: Scenario,
    params: &GaussianMacParams,
    grid: SweepGrid,
    r0: f64,
) -> Result<Frontier2<SplitTag>> {
    let caps = [(params.c12, params.c21)];
    let mut out = sweep_region_multi(scenario, params, &caps, grid, r0, Abscissas::PerCurve)?;
    Ok(out.pop().expect("one frontier per capacity pair"))
}

/// Where the frontiers of a multi-capacity sweep are sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Abscissas<'a> {
    /// Each frontier on its own `[0, max R1]`.
    PerCurve,
    /// All frontiers on one grid spanning the widest of them, so they can be
    /// compared point by point.
    Shared,
    /// Caller-chosen, strictly increasing.
    Given(&'a [f64]),
}

/// Sweep one scenario for several conference capacity pairs at once.
///
/// Capacities are ignored for the common-message scenarios; `r0` is ignored
/// for the conferencing ones. A common rate above every total cap yields an
/// empty frontier.
pub fn sweep_region_multi(
    scenario: Scenario,
    params: &GaussianMacParams,
    capacities: &[(f64, f64)],
    grid: SweepGrid,
    r0: f64,
    abscissas: Abscissas<'_>,
) -> Result<Vec<Frontier2<SplitTag>>> {
    params.validate()?;
    check_nonneg("r0", r0)?;
    for &(c12, c21) in capacities {
        check_nonneg("c12", c12)?;
        check_nonneg("c21", c21)?;
    }
    if grid.beta < 2 || grid.alpha < 2 || grid.resolution < 2 {
        return domain("grid resolutions must be at least 2");
    }
    if let Abscissas::Given(xs) = abscissas {
        if xs.is_empty() || xs.windows(2).any(|w| w[0] >= w[1]) {
            return domain("abscissas must be nonempty and strictly increasing");
        }
    }
    let members = Members::new(scenario, params, capacities, grid, r0)?;

    let per_cap_abscissas: Vec<Option<Vec<f64>>> = match abscissas {
        Abscissas::Given(xs) => vec![Some(xs.to_vec()); capacities.len()],
        Abscissas::PerCurve => members
            .extents()
            .into_iter()
            .map(|e| e.map(|e| frontier_abscissas(e, grid.resolution)))
            .collect(),
        Abscissas::Shared => {
            let extents = members.extents();
            let widest = extents.iter().flatten().copied().reduce(f64::max);
            extents
                .iter()
                .map(|e| e.and(widest).map(|w| frontier_abscissas(w, grid.resolution)))
                .collect()
        }
    };

    let fresh = || -> Vec<Option<EnvelopeBuilder<SplitTag>>> {
        per_cap_abscissas
            .iter()
            .map(|xs| xs.clone().map(EnvelopeBuilder::new))
            .collect()
    };
    let builders = (0..members.alphas.len())
        .into_par_iter()
        .fold(fresh, |mut acc, ai| {
            members.visit(ai, |j, caps, tag| {
                if let Some(b) = acc[j].as_mut() {
                    b.insert(caps, tag);
                }
            });
            acc
        })
        .reduce(fresh, |a, b| {
            a.into_iter()
                .zip(b)
                .map(|(x, y)| match (x, y) {
                    (Some(x), Some(y)) => Some(x.merge(y)),
                    (x, _) => x,
                })
                .collect()
        });
    Ok(builders
        .into_iter()
        .map(|b| b.map_or_else(Frontier2::empty, |b| b.finish()))
        .collect())
}

/// Enumerates the union members of a sweep, grouped by cancellation pair.
struct Members<'a> {
    scenario: Scenario,
    params: &'a GaussianMacParams,
    capacities: &'a [(f64, f64)],
    betas: Vec<f64>,
    alphas: Vec<Option<(f64, f64)>>,
    r0: f64,
}

impl<'a> Members<'a> {
    fn new(
        scenario: Scenario,
        params: &'a GaussianMacParams,
        capacities: &'a [(f64, f64)],
        grid: SweepGrid,
        r0: f64,
    ) -> Result<Self> {
        let alphas = if scenario.is_causal() {
            let mut pairs = Vec::new();
            let ax1 = alpha_axis(params, 1, grid.alpha);
            let ax2 = alpha_axis(params, 2, grid.alpha);
            for &a1 in &ax1 {
                for &a2 in &ax2 {
                    pairs.push(Some((a1, a2)));
                }
            }
            // the full-cooperation optimum is the sum-rate extreme of the union
            let best = cstar(params)?;
            let extra = Some((best.alpha1, best.alpha2));
            if !pairs.contains(&extra) {
                pairs.push(extra);
            }
            pairs
        } else {
            vec![None]
        };
        Ok(Self {
            scenario,
            params,
            capacities,
            betas: linspace(0.0, 1.0, grid.beta),
            alphas,
            r0,
        })
    }

    fn visit(&self, ai: usize, mut f: impl FnMut(usize, &PentagonCaps, SplitTag)) {
        let alpha = self.alphas[ai];
        for &beta1 in &self.betas {
            for &beta2 in &self.betas {
                let m = match alpha {
                    None => mac_caps(self.params.p1, self.params.p2, self.params.pz, beta1, beta2),
                    Some((a1, a2)) => {
                        causal_caps(self.params, &PowerSplit::new(beta1, beta2, a1, a2))
                    }
                };
                let tag = SplitTag {
                    beta1,
                    beta2,
                    alpha,
                };
                if self.scenario.is_conferencing() {
                    for (j, &(c12, c21)) in self.capacities.iter().enumerate() {
                        f(j, &macce_from_maccm(&m, c12, c21).caps(), tag);
                    }
                } else if let Some(caps) = m.slice_caps(self.r0) {
                    for j in 0..self.capacities.len() {
                        f(j, &caps, tag);
                    }
                }
            }
        }
    }

    /// Largest feasible `R1` per capacity pair; `None` when no member is
    /// feasible.
    fn extents(&self) -> Vec<Option<f64>> {
        let n = self.capacities.len();
        let merge = |a: Vec<Option<f64>>, b: Vec<Option<f64>>| {
            a.into_iter()
                .zip(b)
                .map(|(x, y)| match (x, y) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                })
                .collect::<Vec<_>>()
        };
        (0..self.alphas.len())
            .into_par_iter()
            .fold(
                || vec![None; n],
                |mut acc: Vec<Option<f64>>, ai| {
                    self.visit(ai, |j, caps, _| {
                        let e = caps.extent_r1();
                        acc[j] = Some(acc[j].map_or(e, |x: f64| x.max(e)));
                    });
                    acc
                },
            )
            .reduce(|| vec![None; n], merge)
    }
}

fn alpha_axis(params: &GaussianMacParams, user: usize, n: usize) -> Vec<f64> {
    let (lo, hi) = params.alpha_range(user);
    let mut v = linspace(lo, hi, n);
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{maccm_nc_bounds, macce_c_bounds};
    use crate::geometry::{frontier_gap, frontier_union, make_pentagon};

    fn unit() -> GaussianMacParams {
        GaussianMacParams::mac(1.0, 1.0, 0.0, 1.0).unwrap()
    }

    fn small() -> SweepGrid {
        SweepGrid {
            beta: 21,
            alpha: 11,
            resolution: 64,
        }
    }

    #[test]
    fn scenario_names_round_trip() {
        for s in [Scenario::MaccmNc, Scenario::MaccmC, Scenario::MacceNc, Scenario::MacceC] {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert!("macce".parse::<Scenario>().is_err());
    }

    #[test]
    fn zero_conference_is_single_full_private_pentagon() {
        let f = sweep_region(Scenario::MacceNc, &unit(), small(), 0.0).unwrap();
        let b = maccm_nc_bounds(&unit(), 1.0, 1.0).unwrap();
        let single = frontier_union(
            &[(make_pentagon(b.a1, b.a2, b.a12.min(b.atot)).unwrap(), ())],
            64,
        )
        .unwrap();
        assert_eq!(f.points, single.points);
        // the corner is only reachable with full private power; along the
        // flat part lower beta1 ties and wins on tag order
        assert!(f.tags.last().is_some_and(|t| t.beta1 == 1.0 && t.beta2 == 1.0));
    }

    #[test]
    fn common_message_slice_at_zero_matches_conferencing_at_zero() {
        let p = GaussianMacParams::mac(2.0, 3.0, 4.0, 1.0).unwrap();
        let a = sweep_region(Scenario::MaccmNc, &p, small(), 0.0).unwrap();
        let b = sweep_region(Scenario::MacceNc, &p, small(), 0.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn infeasible_common_rate_gives_empty_region() {
        let f = sweep_region(Scenario::MaccmNc, &unit(), small(), 2.0).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn saturated_conference_is_triangle() {
        let base = GaussianMacParams::mac(20.0, 40.0, 10.0, 1.0).unwrap();
        let c = cstar(&base).unwrap().value;
        let p = base.with_conference(c + 1.0, c + 1.0);
        let f = sweep_region(Scenario::MacceC, &p, small(), 0.0).unwrap();
        for q in &f.points {
            assert!((q.r1 + q.r2 - c).abs() <= 1e-6, "{q:?}");
        }
    }

    #[test]
    fn frontier_points_lie_in_their_tagged_member() {
        let p = GaussianMacParams::new(20.0, 40.0, 10.0, 1.0, 0.5, 0.3).unwrap();
        let f = sweep_region(Scenario::MacceC, &p, small(), 0.0).unwrap();
        for (q, t) in f.points.iter().zip(&f.tags) {
            let (a1, a2) = t.alpha.unwrap();
            let b = macce_c_bounds(&p, &PowerSplit::new(t.beta1, t.beta2, a1, a2)).unwrap();
            assert!(b.caps().contains(*q, 1e-12));
        }
    }

    #[test]
    fn shared_abscissas_are_nested_in_capacity() {
        let p = GaussianMacParams::mac(20.0, 40.0, 10.0, 1.0).unwrap();
        let xs = linspace(0.0, 8.0, 101);
        let caps = [(0.0, 0.0), (0.5, 0.5), (1.0, 0.5), (2.0, 2.0)];
        let fs = sweep_region_multi(Scenario::MacceC, &p, &caps, small(), 0.0, Abscissas::Given(&xs)).unwrap();
        for w in fs.windows(2) {
            assert!(frontier_gap(&w[0], &w[1]) <= 0.0);
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let p = GaussianMacParams::new(20.0, 40.0, 10.0, 1.0, 0.5, 1.0).unwrap();
        let run = |n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| sweep_region(Scenario::MacceC, &p, small(), 0.0).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(3));
        let bits = |f: &Frontier2<SplitTag>| {
            f.points.iter().map(|q| (q.r1.to_bits(), q.r2.to_bits())).collect::<Vec<_>>()
        };
        assert_eq!(bits(&one), bits(&run(4)));
    }

    #[test]
    fn rejects_bad_grid() {
        let g = SweepGrid { beta: 1, ..small() };
        assert!(sweep_region(Scenario::MacceNc, &unit(), g, 0.0).is_err());
        assert!(sweep_region(Scenario::MaccmNc, &unit(), small(), -1.0).is_err());
    }
}
