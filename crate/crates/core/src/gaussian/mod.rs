//! Gaussian channel `Y = X1 + X2 + S + Z` with interference `S` known to
//! both encoders, either non-causally (dirty paper) or causally (dirty tape).
//!
//! All rates are in bits: `lambda_bits(x) = log2(1 + x) / 2`.

mod oracle;
mod sweep;

pub use oracle::{
    gaussian_cmi, oracle_mi_bounds, oracle_optimize, oracle_optimize_with, GaussianAuxScheme,
    OracleSearch, Var5,
};
pub use sweep::{sweep_region, sweep_region_multi, Abscissas, Scenario, SplitTag, SweepGrid};

use crate::conferencing::macce_from_maccm;
use crate::error::{check_nonneg, check_unit, domain, Result};
use crate::geometry::{MaccmBounds, MacceBounds};

/// Relative slack allowed on `alpha^2 * ps <= p` before it counts as a
/// violation; covers the rounding of `sqrt(p / ps)` at the range ends.
const ALPHA_SLACK: f64 = 1e-12;

/// One Gaussian channel instance: powers in linear units, conference link
/// capacities in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMacParams {
    pub p1: f64,
    pub p2: f64,
    pub ps: f64,
    pub pz: f64,
    pub c12: f64,
    pub c21: f64,
}

impl GaussianMacParams {
    pub fn new(p1: f64, p2: f64, ps: f64, pz: f64, c12: f64, c21: f64) -> Result<Self> {
        let p = Self {
            p1,
            p2,
            ps,
            pz,
            c12,
            c21,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters without conferencing.
    pub fn mac(p1: f64, p2: f64, ps: f64, pz: f64) -> Result<Self> {
        Self::new(p1, p2, ps, pz, 0.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        check_nonneg("p1", self.p1)?;
        check_nonneg("p2", self.p2)?;
        check_nonneg("ps", self.ps)?;
        check_nonneg("pz", self.pz)?;
        check_nonneg("c12", self.c12)?;
        check_nonneg("c21", self.c21)?;
        if self.pz <= 0.0 {
            return domain("pz must be strictly positive");
        }
        Ok(())
    }

    pub fn with_conference(mut self, c12: f64, c21: f64) -> Self {
        self.c12 = c12;
        self.c21 = c21;
        self
    }

    /// Symmetric range `[-sqrt(p/ps), sqrt(p/ps)]` of a cancellation
    /// coefficient, collapsed to `{0}` when there is no interference.
    pub fn alpha_range(&self, user: usize) -> (f64, f64) {
        let p = if user == 1 { self.p1 } else { self.p2 };
        if self.ps == 0.0 {
            (0.0, 0.0)
        } else {
            let a = (p / self.ps).sqrt();
            (-a, a)
        }
    }
}

/// Power split and interference cancellation coefficients for one member
/// of the causal union.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    pub beta1: f64,
    pub beta2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl PowerSplit {
    pub fn new(beta1: f64, beta2: f64, alpha1: f64, alpha2: f64) -> Self {
        Self {
            beta1,
            beta2,
            alpha1,
            alpha2,
        }
    }

    pub fn validate(&self, params: &GaussianMacParams) -> Result<()> {
        check_unit("beta1", self.beta1)?;
        check_unit("beta2", self.beta2)?;
        ptilde(params.p1, self.alpha1, params.ps)?;
        ptilde(params.p2, self.alpha2, params.ps)?;
        Ok(())
    }
}

pub fn lambda_bits(x: f64) -> Result<f64> {
    check_nonneg("lambda argument", x)?;
    Ok(lambda(x))
}

#[inline]
pub(crate) fn lambda(x: f64) -> f64 {
    0.5 * (1.0 + x).log2()
}

/// Power left for signalling after spending `alpha^2 * ps` on cancellation.
pub fn ptilde(p: f64, alpha: f64, ps: f64) -> Result<f64> {
    check_nonneg("power", p)?;
    check_nonneg("ps", ps)?;
    if !alpha.is_finite() {
        return domain("alpha must be finite");
    }
    let spent = alpha * alpha * ps;
    if spent > p * (1.0 + ALPHA_SLACK) {
        return domain(format!(
            "alpha = {alpha} needs {spent} > available power {p}"
        ));
    }
    Ok(ptilde_clamped(p, alpha, ps))
}

#[inline]
pub(crate) fn ptilde_clamped(p: f64, alpha: f64, ps: f64) -> f64 {
    (p - alpha * alpha * ps).max(0.0)
}

pub fn residual_interference(alpha1: f64, alpha2: f64, ps: f64) -> f64 {
    let r = 1.0 - alpha1 - alpha2;
    r * r * ps
}

/// The four caps for signal powers `q1, q2` over effective noise `d`.
#[inline]
pub(crate) fn mac_caps(q1: f64, q2: f64, d: f64, beta1: f64, beta2: f64) -> MaccmBounds {
    let coherent = 2.0 * (q1 * q2 * (1.0 - beta1) * (1.0 - beta2)).sqrt();
    MaccmBounds {
        a1: lambda(beta1 * q1 / d),
        a2: lambda(beta2 * q2 / d),
        a12: lambda((beta1 * q1 + beta2 * q2) / d),
        atot: lambda((q1 + q2 + coherent) / d),
    }
}

fn check_betas(beta1: f64, beta2: f64) -> Result<()> {
    check_unit("beta1", beta1)?;
    check_unit("beta2", beta2)
}

/// Common-message caps with non-causal interference knowledge; identical to
/// the interference-free channel.
pub fn maccm_nc_bounds(params: &GaussianMacParams, beta1: f64, beta2: f64) -> Result<MaccmBounds> {
    params.validate()?;
    check_betas(beta1, beta2)?;
    Ok(mac_caps(params.p1, params.p2, params.pz, beta1, beta2))
}

/// Common-message caps with causal interference knowledge and partial
/// cancellation.
pub fn maccm_c_bounds(params: &GaussianMacParams, split: &PowerSplit) -> Result<MaccmBounds> {
    params.validate()?;
    split.validate(params)?;
    Ok(causal_caps(params, split))
}

#[inline]
pub(crate) fn causal_caps(params: &GaussianMacParams, split: &PowerSplit) -> MaccmBounds {
    let q1 = ptilde_clamped(params.p1, split.alpha1, params.ps);
    let q2 = ptilde_clamped(params.p2, split.alpha2, params.ps);
    let d = params.pz + residual_interference(split.alpha1, split.alpha2, params.ps);
    mac_caps(q1, q2, d, split.beta1, split.beta2)
}

pub fn macce_nc_bounds(params: &GaussianMacParams, beta1: f64, beta2: f64) -> Result<MacceBounds> {
    let m = maccm_nc_bounds(params, beta1, beta2)?;
    Ok(macce_from_maccm(&m, params.c12, params.c21))
}

pub fn macce_c_bounds(params: &GaussianMacParams, split: &PowerSplit) -> Result<MacceBounds> {
    let m = maccm_c_bounds(params, split)?;
    Ok(macce_from_maccm(&m, params.c12, params.c21))
}

/// Saturation sum rate and the cancellation coefficients attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cstar {
    pub value: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl Cstar {
    /// Whether the maximizer lies in `[0, 1]^2`.
    pub fn in_unit_square(&self) -> bool {
        (0.0..=1.0).contains(&self.alpha1) && (0.0..=1.0).contains(&self.alpha2)
    }
}

/// Full-cooperation sum rate at fixed cancellation coefficients.
pub fn cooperative_sum_rate(params: &GaussianMacParams, alpha1: f64, alpha2: f64) -> f64 {
    causal_caps(params, &PowerSplit::new(0.0, 0.0, alpha1, alpha2)).atot
}

pub(crate) const CSTAR_GRID: usize = 101;
pub(crate) const ZOOM_POINTS: usize = 21;
pub(crate) const ZOOM_ROUNDS: usize = 5;

/// Largest full-cooperation sum rate over the cancellation coefficients:
/// beyond this conference capacity the causal region stops growing.
pub fn cstar(params: &GaussianMacParams) -> Result<Cstar> {
    params.validate()?;
    let r1 = params.alpha_range(1);
    let r2 = params.alpha_range(2);
    let f = |a: f64, b: f64| cooperative_sum_rate(params, a, b);

    let mut best = Cstar {
        value: f64::NEG_INFINITY,
        alpha1: 0.0,
        alpha2: 0.0,
    };
    let scan = |xs: &[f64], ys: &[f64], best: &mut Cstar| {
        for &a in xs {
            for &b in ys {
                let v = f(a, b);
                if v > best.value {
                    *best = Cstar {
                        value: v,
                        alpha1: a,
                        alpha2: b,
                    };
                }
            }
        }
    };
    let g1 = crate::geometry::linspace(r1.0, r1.1, CSTAR_GRID);
    let g2 = crate::geometry::linspace(r2.0, r2.1, CSTAR_GRID);
    scan(&g1, &g2, &mut best);

    let mut s1 = (r1.1 - r1.0) / (CSTAR_GRID - 1) as f64;
    let mut s2 = (r2.1 - r2.0) / (CSTAR_GRID - 1) as f64;
    for _ in 0..ZOOM_ROUNDS {
        let w1 = zoom_window(best.alpha1, s1, r1);
        let w2 = zoom_window(best.alpha2, s2, r2);
        scan(&w1, &w2, &mut best);
        s1 /= 10.0;
        s2 /= 10.0;
    }
    Ok(best)
}

/// `ZOOM_POINTS` samples of `center +- step`, clipped to `range`.
pub(crate) fn zoom_window(center: f64, step: f64, range: (f64, f64)) -> Vec<f64> {
    let lo = (center - step).max(range.0);
    let hi = (center + step).min(range.1);
    crate::geometry::linspace(lo, hi, ZOOM_POINTS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> GaussianMacParams {
        GaussianMacParams::mac(1.0, 1.0, 0.0, 1.0).unwrap()
    }

    fn fig3() -> GaussianMacParams {
        GaussianMacParams::mac(20.0, 40.0, 10.0, 1.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_bits(0.0).unwrap(), 0.0);
        assert_eq!(lambda_bits(1.0).unwrap(), 0.5);
        assert_eq!(lambda_bits(3.0).unwrap(), 1.0);
        assert!(lambda_bits(-1.0).is_err());
        assert!(lambda_bits(f64::NAN).is_err());
    }

    #[test]
    fn ptilde_values() {
        assert_eq!(ptilde(20.0, 0.5, 10.0).unwrap(), 17.5);
        assert_eq!(ptilde(20.0, 0.0, 10.0).unwrap(), 20.0);
        assert_eq!(ptilde(10.0, 1.0, 10.0).unwrap(), 0.0);
        assert!(ptilde(10.0, 1.1, 10.0).is_err());
        let edge = (20.0f64 / 10.0).sqrt();
        assert!(ptilde(20.0, edge, 10.0).is_ok());
    }

    #[test]
    fn residual_values() {
        assert_eq!(residual_interference(0.5, 0.5, 10.0), 0.0);
        assert_eq!(residual_interference(0.0, 0.0, 10.0), 10.0);
        assert!(close(residual_interference(0.4, 0.4, 10.0), 0.4, 1e-12));
    }

    #[test]
    fn nc_bounds_examples() {
        let b = maccm_nc_bounds(&unit(), 1.0, 1.0).unwrap();
        let l2 = 0.5 * 3f64.log2();
        assert_eq!(b.as_array(), [0.5, 0.5, l2, l2]);
        assert!(close(l2, 0.79248, 1e-5));

        let b = maccm_nc_bounds(&unit(), 0.0, 0.0).unwrap();
        assert_eq!([b.a1, b.a2, b.a12], [0.0, 0.0, 0.0]);
        assert!(close(b.atot, 0.5 * 5f64.log2(), 1e-15));
        assert!(close(b.atot, 1.16096, 1e-5));

        assert!(maccm_nc_bounds(&unit(), 1.2, 0.0).is_err());
    }

    #[test]
    fn nc_bounds_ignore_interference() {
        let base = GaussianMacParams::mac(3.0, 7.0, 0.0, 2.0).unwrap();
        let reference = maccm_nc_bounds(&base, 0.3, 0.6).unwrap();
        for ps in [1.0, 10.0, 100.0] {
            let p = GaussianMacParams { ps, ..base };
            assert_eq!(maccm_nc_bounds(&p, 0.3, 0.6).unwrap(), reference);
            assert_eq!(
                macce_nc_bounds(&p.with_conference(0.2, 0.4), 0.3, 0.6).unwrap(),
                macce_nc_bounds(&base.with_conference(0.2, 0.4), 0.3, 0.6).unwrap()
            );
        }
    }

    #[test]
    fn causal_bounds_examples() {
        let p = GaussianMacParams::mac(3.0, 7.0, 0.0, 2.0).unwrap();
        let c = maccm_c_bounds(&p, &PowerSplit::new(0.3, 0.6, 0.4, -0.2)).unwrap();
        assert_eq!(c, maccm_nc_bounds(&p, 0.3, 0.6).unwrap());

        let c = maccm_c_bounds(&fig3(), &PowerSplit::new(0.0, 0.0, 0.5, 0.5)).unwrap();
        let coherent = (17.5f64.sqrt() + 37.5f64.sqrt()).powi(2);
        assert!(close(coherent, 106.235, 1e-3));
        assert!(close(c.atot, 0.5 * (1.0 + coherent).log2(), 1e-12));
        assert!(close(c.atot, 3.3724, 1e-4));

        let p = GaussianMacParams::mac(1.0, 1.0, 1.0, 1.0).unwrap();
        let c = maccm_c_bounds(&p, &PowerSplit::new(1.0, 1.0, 0.0, 0.0)).unwrap();
        let expect = [lambda(0.5), lambda(0.5), lambda(1.0), lambda(1.0)];
        assert_eq!(c.as_array(), expect);

        assert!(maccm_c_bounds(&fig3(), &PowerSplit::new(0.5, 0.5, 2.0, 0.0)).is_err());
    }

    #[test]
    fn conferencing_bounds_examples() {
        let p = unit().with_conference(0.25, 0.25);
        let e = macce_nc_bounds(&p, 1.0, 1.0).unwrap();
        let l2 = 0.5 * 3f64.log2();
        assert_eq!(e.as_array(), [0.75, 0.75, l2 + 0.5, l2]);

        let p = fig3().with_conference(5.0, 5.0);
        let e = macce_c_bounds(&p, &PowerSplit::new(0.0, 0.0, 0.5, 0.5)).unwrap();
        assert_eq!([e.b1, e.b2, e.bsum_conf], [5.0, 5.0, 10.0]);
        assert!(close(e.bsum_tot, 3.3724, 1e-4));

        let p = unit().with_conference(50.0, 50.0);
        let e = macce_nc_bounds(&p, 0.0, 0.0).unwrap();
        assert_eq!(e.caps().sum, lambda(4.0));
    }

    #[test]
    fn cstar_fig3_anchor() {
        let c = cstar(&fig3()).unwrap();
        assert!(close(c.value, 3.38, 0.02), "{c:?}");
        assert!(c.in_unit_square());
    }

    #[test]
    fn cstar_without_interference_is_closed_form() {
        let p = GaussianMacParams::mac(20.0, 40.0, 0.0, 1.0).unwrap();
        let c = cstar(&p).unwrap();
        let expect = lambda((20f64.sqrt() + 40f64.sqrt()).powi(2));
        assert!(close(c.value, expect, 1e-12));
        assert!(close(c.value, 3.43868, 1e-5));
        assert_eq!((c.alpha1, c.alpha2), (0.0, 0.0));
    }

    #[test]
    fn cstar_without_power_is_zero() {
        let p = GaussianMacParams::mac(0.0, 0.0, 10.0, 1.0).unwrap();
        assert_eq!(cstar(&p).unwrap().value, 0.0);
    }

    // Independent check of the refined optimum: a dense 2001x2001 scan.
    #[test]
    fn cstar_matches_dense_scan() {
        let p = fig3();
        let (lo1, hi1) = p.alpha_range(1);
        let (lo2, hi2) = p.alpha_range(2);
        let mut best = f64::NEG_INFINITY;
        let n = 2001;
        for i in 0..n {
            let a = lo1 + (hi1 - lo1) * i as f64 / (n - 1) as f64;
            for j in 0..n {
                let b = lo2 + (hi2 - lo2) * j as f64 / (n - 1) as f64;
                best = best.max(cooperative_sum_rate(&p, a, b));
            }
        }
        let c = cstar(&p).unwrap();
        assert!(c.value >= best - 1e-12);
        assert!(c.value - best < 1e-4);
    }

    fn params_strategy() -> impl Strategy<Value = GaussianMacParams> {
        (0.0..50.0f64, 0.0..50.0f64, 0.0..50.0f64, 0.05..5.0f64)
            .prop_map(|(p1, p2, ps, pz)| GaussianMacParams::mac(p1, p2, ps, pz).unwrap())
    }

    proptest! {
        #[test]
        fn nc_bounds_ordering(p in params_strategy(), b1 in 0.0..=1.0f64, b2 in 0.0..=1.0f64) {
            let b = maccm_nc_bounds(&p, b1, b2).unwrap();
            prop_assert!(b.a12 >= b.a1.max(b.a2));
            prop_assert!(b.atot >= b.a12);
        }

        #[test]
        fn causal_never_beats_non_causal(
            p in params_strategy(),
            b1 in 0.0..=1.0f64,
            b2 in 0.0..=1.0f64,
            u1 in -1.0..=1.0f64,
            u2 in -1.0..=1.0f64,
        ) {
            let (a1, a2) = (u1 * p.alpha_range(1).1, u2 * p.alpha_range(2).1);
            let c = maccm_c_bounds(&p, &PowerSplit::new(b1, b2, a1, a2)).unwrap();
            let n = maccm_nc_bounds(&p, b1, b2).unwrap();
            for (x, y) in c.as_array().iter().zip(n.as_array()) {
                prop_assert!(*x <= y);
            }
        }

        #[test]
        fn cstar_monotone(p in params_strategy(), dp in 0.0..10.0f64) {
            let base = cstar(&p).unwrap().value;
            let tol = 1e-9;
            let more1 = GaussianMacParams { p1: p.p1 + dp, ..p };
            let more2 = GaussianMacParams { p2: p.p2 + dp, ..p };
            let noisier = GaussianMacParams { pz: p.pz + dp, ..p };
            let dirtier = GaussianMacParams { ps: p.ps + dp, ..p };
            prop_assert!(cstar(&more1).unwrap().value >= base - tol);
            prop_assert!(cstar(&more2).unwrap().value >= base - tol);
            prop_assert!(cstar(&noisier).unwrap().value <= base + tol);
            prop_assert!(cstar(&dirtier).unwrap().value <= base + tol);
        }
    }
}
