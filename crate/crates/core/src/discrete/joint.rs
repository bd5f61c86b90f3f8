use std::fmt;
use std::sync::OnceLock;

use super::channel::{validate_channel, DmcState};
use super::scheme::AuxScheme;
use crate::error::{domain, Result};

/// Variables of the joint tensor, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    S,
    U,
    V1,
    V2,
    X1,
    X2,
    Y,
}

impl Var {
    pub const ALL: [Var; 7] = [Var::S, Var::U, Var::V1, Var::V2, Var::X1, Var::X2, Var::Y];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::S => "S",
            Var::U => "U",
            Var::V1 => "V1",
            Var::V2 => "V2",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::Y => "Y",
        };
        f.write_str(s)
    }
}

/// Dense joint distribution of `(S, U, V1, V2, X1, X2, Y)` with cached
/// subset entropies.
#[derive(Debug)]
pub struct JointDist {
    dims: [usize; 7],
    prob: Vec<f64>,
    entropies: Vec<OnceLock<f64>>,
}

impl JointDist {
    pub fn dims(&self) -> [usize; 7] {
        self.dims
    }

    pub fn total_mass(&self) -> f64 {
        self.prob.iter().sum()
    }

    /// Probability of a full tuple, in `Var::ALL` order.
    pub fn prob(&self, idx: [usize; 7]) -> f64 {
        self.prob[self.flat(idx)]
    }

    fn flat(&self, idx: [usize; 7]) -> usize {
        idx.iter()
            .zip(self.dims)
            .fold(0, |acc, (&i, d)| acc * d + i)
    }

    fn nontrivial(&self) -> u8 {
        Var::ALL
            .iter()
            .filter(|v| self.dims[**v as usize] > 1)
            .fold(0, |m, v| m | v.bit())
    }

    /// Shannon entropy in bits of the marginal on a variable subset.
    /// Variables with a single-letter alphabet are dropped first, so adding
    /// them to a subset leaves the value bit-for-bit unchanged.
    pub fn entropy(&self, vars: &[Var]) -> f64 {
        let mask = vars.iter().fold(0u8, |m, v| m | v.bit());
        self.entropy_mask(mask)
    }

    fn entropy_mask(&self, mask: u8) -> f64 {
        let mask = mask & self.nontrivial();
        if mask == 0 {
            return 0.0;
        }
        *self.entropies[mask as usize].get_or_init(|| self.compute_entropy(mask))
    }

    fn compute_entropy(&self, mask: u8) -> f64 {
        // stride of each kept variable inside the marginal array
        let mut mstride = [0usize; 7];
        let mut size = 1;
        for k in (0..7).rev() {
            if mask & (1 << k) != 0 {
                mstride[k] = size;
                size *= self.dims[k];
            }
        }
        let mut marg = vec![0.0; size];
        let mut idx = [0usize; 7];
        for &p in &self.prob {
            if p > 0.0 {
                let m: usize = (0..7).map(|k| idx[k] * mstride[k]).sum();
                marg[m] += p;
            }
            for k in (0..7).rev() {
                idx[k] += 1;
                if idx[k] < self.dims[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        let h: f64 = marg
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum();
        h.max(0.0)
    }
}

/// Multiply out the factorization selected by `scheme.causal` together with
/// the channel transition.
pub fn joint_distribution(ch: &DmcState, scheme: &AuxScheme) -> Result<JointDist> {
    validate_channel(ch).into_result()?;
    scheme.validate_for(ch)?;
    let dims = [ch.ns, scheme.nu, scheme.nv1, scheme.nv2, ch.nx1, ch.nx2, ch.ny];
    let mut prob = vec![0.0; dims.iter().product()];
    let mut jd = JointDist {
        dims,
        prob: Vec::new(),
        entropies: (0..128).map(|_| OnceLock::new()).collect(),
    };
    for s in 0..ch.ns {
        let ps = ch.pstate[s];
        for u in 0..scheme.nu {
            let pu = ps * scheme.pu(u, s);
            for v1 in 0..scheme.nv1 {
                let p1 = pu * scheme.pv1(v1, u, s);
                let x1 = scheme.x1(v1, u, s);
                for v2 in 0..scheme.nv2 {
                    let p2 = p1 * scheme.pv2(v2, u, s);
                    let x2 = scheme.x2(v2, u, s);
                    let row = ch.row(x1, x2, s);
                    for (y, &py) in row.iter().enumerate() {
                        let i = jd.flat([s, u, v1, v2, x1, x2, y]);
                        prob[i] = p2 * py;
                    }
                }
            }
        }
    }
    jd.prob = prob;
    Ok(jd)
}

/// Exact `I(A; B | C)` in bits.
pub fn mutual_information(j: &JointDist, a: &[Var], b: &[Var], c: &[Var]) -> Result<f64> {
    let mut seen = 0u8;
    for v in a.iter().chain(b).chain(c) {
        if seen & v.bit() != 0 {
            return domain(format!("variable {v} appears in more than one group"));
        }
        seen |= v.bit();
    }
    let mask = |vs: &[Var]| vs.iter().fold(0u8, |m, v| m | v.bit()) & j.nontrivial();
    let (ma, mb, mc) = (mask(a), mask(b), mask(c));
    if ma == 0 || mb == 0 {
        return Ok(0.0);
    }
    let i = (j.entropy_mask(ma | mc) - j.entropy_mask(ma | mb | mc))
        + (j.entropy_mask(mb | mc) - j.entropy_mask(mc));
    Ok(i.max(0.0))
}
