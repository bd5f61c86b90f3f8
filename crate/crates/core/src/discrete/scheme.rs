use super::channel::DmcState;
use crate::error::{domain, Result};

const ROW_TOL: f64 = 1e-12;

/// One choice of auxiliary distributions and deterministic input maps.
///
/// Non-causal schemes condition every table on the state:
/// `P(u|s) P(v1|u,s) P(v2|u,s)`. Causal schemes keep the auxiliaries
/// independent of the state: `P(u) P(v1|u) P(v2|u)`. In both cases the
/// encoders send `x_i = f_i(v_i, u, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxScheme {
    pub ns: usize,
    pub nu: usize,
    pub nv1: usize,
    pub nv2: usize,
    pub causal: bool,
    // non-causal: [s][u], causal: [u]
    p_u: Vec<f64>,
    // non-causal: [u][s][v], causal: [u][v]
    p_v1: Vec<f64>,
    p_v2: Vec<f64>,
    // [v][u][s]
    f1: Vec<usize>,
    f2: Vec<usize>,
}

impl AuxScheme {
    /// Tables: `p_u[s * nu + u]`, `p_v[(u * ns + s) * nv + v]`,
    /// maps `f[(v * nu + u) * ns + s]`.
    #[allow(clippy::too_many_arguments)]
    pub fn non_causal(
        ns: usize,
        nu: usize,
        nv1: usize,
        nv2: usize,
        p_u: Vec<f64>,
        p_v1: Vec<f64>,
        p_v2: Vec<f64>,
        f1: Vec<usize>,
        f2: Vec<usize>,
    ) -> Result<Self> {
        let s = Self {
            ns,
            nu,
            nv1,
            nv2,
            causal: false,
            p_u,
            p_v1,
            p_v2,
            f1,
            f2,
        };
        s.check_shapes()?;
        Ok(s)
    }

    /// Tables: `p_u[u]`, `p_v[u * nv + v]`, maps `f[(v * nu + u) * ns + s]`.
    #[allow(clippy::too_many_arguments)]
    pub fn causal(
        ns: usize,
        nu: usize,
        nv1: usize,
        nv2: usize,
        p_u: Vec<f64>,
        p_v1: Vec<f64>,
        p_v2: Vec<f64>,
        f1: Vec<usize>,
        f2: Vec<usize>,
    ) -> Result<Self> {
        let s = Self {
            ns,
            nu,
            nv1,
            nv2,
            causal: true,
            p_u,
            p_v1,
            p_v2,
            f1,
            f2,
        };
        s.check_shapes()?;
        Ok(s)
    }

    fn state_rows(&self) -> usize {
        if self.causal {
            1
        } else {
            self.ns
        }
    }

    fn check_shapes(&self) -> Result<()> {
        if self.ns == 0 || self.nu == 0 || self.nv1 == 0 || self.nv2 == 0 {
            return domain("auxiliary alphabet sizes must be at least 1");
        }
        let sr = self.state_rows();
        let checks = [
            ("P(u)", self.p_u.len(), sr * self.nu),
            ("P(v1|u)", self.p_v1.len(), self.nu * sr * self.nv1),
            ("P(v2|u)", self.p_v2.len(), self.nu * sr * self.nv2),
            ("f1", self.f1.len(), self.nv1 * self.nu * self.ns),
            ("f2", self.f2.len(), self.nv2 * self.nu * self.ns),
        ];
        for (name, got, want) in checks {
            if got != want {
                return domain(format!("{name} has {got} entries, expected {want}"));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn pu(&self, u: usize, s: usize) -> f64 {
        if self.causal {
            self.p_u[u]
        } else {
            self.p_u[s * self.nu + u]
        }
    }

    #[inline]
    fn pv(&self, table: &[f64], nv: usize, v: usize, u: usize, s: usize) -> f64 {
        if self.causal {
            table[u * nv + v]
        } else {
            table[(u * self.ns + s) * nv + v]
        }
    }

    #[inline]
    pub fn pv1(&self, v1: usize, u: usize, s: usize) -> f64 {
        self.pv(&self.p_v1, self.nv1, v1, u, s)
    }

    #[inline]
    pub fn pv2(&self, v2: usize, u: usize, s: usize) -> f64 {
        self.pv(&self.p_v2, self.nv2, v2, u, s)
    }

    #[inline]
    pub fn x1(&self, v1: usize, u: usize, s: usize) -> usize {
        self.f1[(v1 * self.nu + u) * self.ns + s]
    }

    #[inline]
    pub fn x2(&self, v2: usize, u: usize, s: usize) -> usize {
        self.f2[(v2 * self.nu + u) * self.ns + s]
    }

    /// Checks normalization of every table row and that the maps land in the
    /// channel's input alphabets.
    pub fn validate_for(&self, ch: &DmcState) -> Result<()> {
        if ch.ns != self.ns {
            return domain(format!(
                "scheme built for {} states, channel has {}",
                self.ns, ch.ns
            ));
        }
        let sr = self.state_rows();
        let mut rows: Vec<(&str, &[f64])> = Vec::new();
        for r in self.p_u.chunks(self.nu) {
            rows.push(("P(u)", r));
        }
        for r in self.p_v1.chunks(self.nv1) {
            rows.push(("P(v1|u)", r));
        }
        for r in self.p_v2.chunks(self.nv2) {
            rows.push(("P(v2|u)", r));
        }
        debug_assert_eq!(rows.len(), sr * (1 + 2 * self.nu));
        for (name, r) in rows {
            if r.iter().any(|&p| !p.is_finite() || p < 0.0) {
                return domain(format!("{name} row {r:?} has a negative or non-finite entry"));
            }
            let sum: f64 = r.iter().sum();
            if (sum - 1.0).abs() > ROW_TOL {
                return domain(format!("{name} row {r:?} sums to {sum}"));
            }
        }
        if let Some(&x) = self.f1.iter().find(|&&x| x >= ch.nx1) {
            return domain(format!("f1 maps to {x}, outside |X1| = {}", ch.nx1));
        }
        if let Some(&x) = self.f2.iter().find(|&&x| x >= ch.nx2) {
            return domain(format!("f2 maps to {x}, outside |X2| = {}", ch.nx2));
        }
        Ok(())
    }

    /// The same scheme written with state-conditioned tables that ignore the
    /// state.
    pub fn lift_to_non_causal(&self) -> AuxScheme {
        if !self.causal {
            return self.clone();
        }
        let ns = self.ns;
        let mut p_u = Vec::with_capacity(ns * self.nu);
        for _ in 0..ns {
            p_u.extend_from_slice(&self.p_u);
        }
        let lift = |t: &[f64], nv: usize| {
            let mut out = Vec::with_capacity(self.nu * ns * nv);
            for u in 0..self.nu {
                for _ in 0..ns {
                    out.extend_from_slice(&t[u * nv..(u + 1) * nv]);
                }
            }
            out
        };
        AuxScheme {
            causal: false,
            p_u,
            p_v1: lift(&self.p_v1, self.nv1),
            p_v2: lift(&self.p_v2, self.nv2),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> AuxScheme {
        AuxScheme::causal(
            2,
            2,
            2,
            2,
            vec![0.25, 0.75],
            vec![0.5, 0.5, 1.0, 0.0],
            vec![0.1, 0.9, 0.3, 0.7],
            vec![0, 1, 1, 0, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 0, 1, 0, 1],
        )
        .unwrap()
    }

    #[test]
    fn lift_preserves_every_probability() {
        let c = sample();
        let n = c.lift_to_non_causal();
        assert!(!n.causal);
        for s in 0..2 {
            for u in 0..2 {
                assert_eq!(c.pu(u, s), n.pu(u, s));
                for v in 0..2 {
                    assert_eq!(c.pv1(v, u, s), n.pv1(v, u, s));
                    assert_eq!(c.pv2(v, u, s), n.pv2(v, u, s));
                    assert_eq!(c.x1(v, u, s), n.x1(v, u, s));
                }
            }
        }
    }

    #[test]
    fn validation_catches_bad_rows_and_maps() {
        let ch = DmcState::binary_xor_state();
        assert!(sample().validate_for(&ch).is_ok());

        let mut bad = sample();
        bad.p_v1[0] = 0.6;
        assert!(bad.validate_for(&ch).is_err());

        let mut bad = sample();
        bad.f2[3] = 2;
        assert!(bad.validate_for(&ch).is_err());

        let one_state = DmcState::deterministic(1, 2, 2, 2, vec![1.0], |a, b, _| a ^ b).unwrap();
        assert!(sample().validate_for(&one_state).is_err());
    }

    #[test]
    fn shape_mismatch_rejected() {
        assert!(AuxScheme::causal(1, 1, 2, 2, vec![1.0], vec![0.5, 0.5], vec![1.0], vec![0, 1], vec![0, 1]).is_err());
    }
}
