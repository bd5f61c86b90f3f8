use rayon::prelude::*;

use super::bounds::pentagon_of;
use super::channel::{validate_channel, DmcState};
use super::joint::joint_distribution;
use super::scheme::AuxScheme;
use crate::error::{domain, Error, Result};
use crate::geometry::{frontier_abscissas, EnvelopeBuilder, Frontier2, PentagonCaps};

/// Refuse enumerations larger than this.
pub const MAX_SCHEMES: u128 = 100_000_000;
pub const MAX_ALPHABET: usize = 3;
pub const MAX_QUANTIZATION: usize = 8;

// above this many schemes the caps are recomputed instead of stored
const STORE_LIMIT: u64 = 1 << 22;

/// Auxiliary alphabet sizes for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxCaps {
    pub nu: usize,
    pub nv1: usize,
    pub nv2: usize,
}

impl Default for AuxCaps {
    fn default() -> Self {
        Self { nu: 2, nv1: 2, nv2: 2 }
    }
}

/// All compositions of `k` into `parts` nonnegative parts, in lexicographic
/// order, as exact probability rows.
fn compositions(k: usize, parts: usize) -> Vec<Vec<f64>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for j in 0..=left {
            cur.push(j);
            rec(left - j, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, parts, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|c| c.into_iter().map(|j| j as f64 / k as f64).collect())
        .collect()
}

/// Index space of quantized schemes, decoded in mixed radix with the
/// `P(u)` rows most significant, then the `P(v1|u)` rows, the `P(v2|u)`
/// rows, the entries of `f1` and finally the entries of `f2`.
#[derive(Debug, Clone)]
pub struct SchemeSpace {
    ns: usize,
    caps: AuxCaps,
    causal: bool,
    rows_u: Vec<Vec<f64>>,
    rows_v1: Vec<Vec<f64>>,
    rows_v2: Vec<Vec<f64>>,
    // per digit: radix, most significant first
    radices: Vec<usize>,
    count: u128,
}

impl SchemeSpace {
    pub fn new(ch: &DmcState, caps: AuxCaps, k: usize, causal: bool) -> Result<Self> {
        for (name, n) in [("|U|", caps.nu), ("|V1|", caps.nv1), ("|V2|", caps.nv2)] {
            if n == 0 || n > MAX_ALPHABET {
                return domain(format!("{name} = {n} must lie in 1..={MAX_ALPHABET}"));
            }
        }
        if k == 0 || k > MAX_QUANTIZATION {
            return domain(format!("quantization K = {k} must lie in 1..={MAX_QUANTIZATION}"));
        }
        let rows_u = compositions(k, caps.nu);
        let rows_v1 = compositions(k, caps.nv1);
        let rows_v2 = compositions(k, caps.nv2);
        let sr = if causal { 1 } else { ch.ns };
        let mut radices = Vec::new();
        radices.extend(std::iter::repeat_n(rows_u.len(), sr));
        radices.extend(std::iter::repeat_n(rows_v1.len(), caps.nu * sr));
        radices.extend(std::iter::repeat_n(rows_v2.len(), caps.nu * sr));
        radices.extend(std::iter::repeat_n(ch.nx1, caps.nv1 * caps.nu * ch.ns));
        radices.extend(std::iter::repeat_n(ch.nx2, caps.nv2 * caps.nu * ch.ns));
        let mut count: u128 = 1;
        for &r in &radices {
            count = count.saturating_mul(r as u128);
        }
        if count > MAX_SCHEMES {
            return Err(Error::TooLarge {
                count,
                limit: MAX_SCHEMES,
            });
        }
        Ok(Self {
            ns: ch.ns,
            caps,
            causal,
            rows_u,
            rows_v1,
            rows_v2,
            radices,
            count,
        })
    }

    pub fn len(&self) -> u64 {
        self.count as u64
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Decode scheme number `index`.
    pub fn scheme(&self, index: u64) -> AuxScheme {
        assert!((index as u128) < self.count, "scheme index out of range");
        let mut digits = vec![0usize; self.radices.len()];
        let mut rest = index;
        for (d, &r) in digits.iter_mut().zip(&self.radices).rev() {
            *d = (rest % r as u64) as usize;
            rest /= r as u64;
        }
        let AuxCaps { nu, nv1, nv2 } = self.caps;
        let sr = if self.causal { 1 } else { self.ns };
        let mut it = digits.into_iter();
        let mut rows = |table: &[Vec<f64>], n: usize| -> Vec<f64> {
            (0..n).flat_map(|_| table[it.next().unwrap()].clone()).collect()
        };
        let p_u = rows(&self.rows_u, sr);
        let p_v1 = rows(&self.rows_v1, nu * sr);
        let p_v2 = rows(&self.rows_v2, nu * sr);
        let f1: Vec<usize> = it.by_ref().take(nv1 * nu * self.ns).collect();
        let f2: Vec<usize> = it.collect();
        let build = if self.causal {
            AuxScheme::causal
        } else {
            AuxScheme::non_causal
        };
        build(self.ns, nu, nv1, nv2, p_u, p_v1, p_v2, f1, f2)
            .expect("decoded tables have the declared shapes")
    }
}

fn scheme_caps(ch: &DmcState, space: &SchemeSpace, i: u64) -> PentagonCaps {
    let scheme = space.scheme(i);
    let j = joint_distribution(ch, &scheme).expect("enumerated schemes are valid");
    pentagon_of(&j, !space.causal)
        .slice_caps(0.0)
        .expect("clipped bounds are nonnegative")
}

/// Frontier of the union of pentagons over every quantized scheme, at
/// `R0 = 0`. Tags are scheme indices into [`SchemeSpace`]; ties resolve to
/// the smallest index, so the result does not depend on the worker count.
pub fn brute_force_frontier(
    ch: &DmcState,
    caps: AuxCaps,
    k: usize,
    causal: bool,
    resolution: usize,
) -> Result<Frontier2<u64>> {
    validate_channel(ch).into_result()?;
    if resolution < 2 {
        return domain(format!("resolution must be at least 2, got {resolution}"));
    }
    let space = SchemeSpace::new(ch, caps, k, causal)?;
    let n = space.len();
    let stored: Option<Vec<PentagonCaps>> = (n <= STORE_LIMIT)
        .then(|| (0..n).into_par_iter().map(|i| scheme_caps(ch, &space, i)).collect());
    let caps_of = |i: u64| match &stored {
        Some(v) => v[i as usize],
        None => scheme_caps(ch, &space, i),
    };

    let extent = (0..n)
        .into_par_iter()
        .map(|i| caps_of(i).extent_r1())
        .reduce(|| 0.0, f64::max);
    let xs = frontier_abscissas(extent, resolution);
    let env = (0..n)
        .into_par_iter()
        .fold(
            || EnvelopeBuilder::new(xs.clone()),
            |mut env, i| {
                env.insert(&caps_of(i), i);
                env
            },
        )
        .reduce(|| EnvelopeBuilder::new(xs.clone()), EnvelopeBuilder::merge);
    Ok(env.finish())
}
