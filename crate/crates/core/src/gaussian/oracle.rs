//! Jointly Gaussian auxiliary construction for the dirty-paper common-message
//! channel, evaluated with log-determinant mutual information.
//!
//! The scheme draws a unit-variance common symbol `W` and private signals
//! `X1p`, `X2p` with powers `beta_i * P_i`, all independent of `S` and `Z`:
//!
//! ```text
//! U  = W + g0 S
//! Vi = Xip + gi S
//! Xi = Xip + sqrt((1 - beta_i) P_i) W
//! Y  = X1 + X2 + S + Z
//! ```
//!
//! Searching `(g0, g1, g2)` numerically and comparing against the closed
//! form gives an independent route to the interference-free caps.

use nalgebra::{DMatrix, SymmetricEigen};

use super::{GaussianMacParams, PowerSplit};
use crate::error::{check_unit, Result};
use crate::geometry::{linspace, MaccmBounds};

/// Relative eigenvalue / pivot threshold below which a direction counts as
/// degenerate.
const RANK_TOL: f64 = 1e-12;

pub type Cov5 = [[f64; 5]; 5];

/// Variables of the jointly Gaussian vector, in covariance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var5 {
    S = 0,
    U = 1,
    V1 = 2,
    V2 = 3,
    Y = 4,
}

const S: usize = Var5::S as usize;
const U: usize = Var5::U as usize;
const V1: usize = Var5::V1 as usize;
const V2: usize = Var5::V2 as usize;
const Y: usize = Var5::Y as usize;

// Independent sources, in mixing-matrix column order: S, W, X1p, X2p, Z.
const SRC_W: usize = 1;
const SRC_X1: usize = 2;
const SRC_X2: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianAuxScheme {
    pub split: PowerSplit,
    pub gamma: [f64; 3],
    common: [f64; 2],
    source_var: [f64; 5],
    cov: Cov5,
}

impl GaussianAuxScheme {
    pub fn new(
        params: &GaussianMacParams,
        beta1: f64,
        beta2: f64,
        gamma: [f64; 3],
    ) -> Result<Self> {
        params.validate()?;
        check_unit("beta1", beta1)?;
        check_unit("beta2", beta2)?;
        Ok(Self::build(params, beta1, beta2, gamma))
    }

    fn build(params: &GaussianMacParams, beta1: f64, beta2: f64, gamma: [f64; 3]) -> Self {
        let common = [
            ((1.0 - beta1) * params.p1).sqrt(),
            ((1.0 - beta2) * params.p2).sqrt(),
        ];
        let mut m = [[0.0; 5]; 5];
        m[S] = [1.0, 0.0, 0.0, 0.0, 0.0];
        m[U] = [gamma[0], 1.0, 0.0, 0.0, 0.0];
        m[V1] = [gamma[1], 0.0, 1.0, 0.0, 0.0];
        m[V2] = [gamma[2], 0.0, 0.0, 1.0, 0.0];
        m[Y] = [1.0, common[0] + common[1], 1.0, 1.0, 1.0];
        let source_var = [params.ps, 1.0, beta1 * params.p1, beta2 * params.p2, params.pz];
        let mut cov = [[0.0; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                cov[i][j] = (0..5).map(|k| m[i][k] * source_var[k] * m[j][k]).sum();
            }
        }
        Self {
            split: PowerSplit::new(beta1, beta2, 0.0, 0.0),
            gamma,
            common,
            source_var,
            cov,
        }
    }

    /// Covariance of `(S, U, V1, V2, Y)`.
    pub fn covariance(&self) -> &Cov5 {
        &self.cov
    }

    /// Variances of the independent sources `(S, W, X1p, X2p, Z)`.
    pub fn source_variances(&self) -> [f64; 5] {
        self.source_var
    }

    /// Mixing coefficients of `X_i` over the independent sources.
    pub fn input_mixing(&self, user: usize) -> [f64; 5] {
        let mut row = [0.0; 5];
        row[SRC_W] = self.common[user - 1];
        row[if user == 1 { SRC_X1 } else { SRC_X2 }] = 1.0;
        row
    }

    /// Coefficients `(c_v, c_u, c_s)` of the affine map
    /// `X_i = c_v V_i + c_u U + c_s S`.
    pub fn input_map(&self, user: usize) -> (f64, f64, f64) {
        let a = self.common[user - 1];
        (1.0, a, -self.gamma[user] - a * self.gamma[0])
    }
}

/// Jointly Gaussian conditional mutual information `I(A; B | C)` in bits,
/// `log2(pdet Cov[A|C] / pdet Cov[A|B,C]) / 2`.
///
/// Conditioning uses the pseudo-inverse, pseudo-determinants keep only
/// eigenvalues above a relative threshold, and a rank drop caused by `B`
/// (part of `A` determined by `B`) yields `+inf`.
pub fn gaussian_cmi(cov: &Cov5, a: &[Var5], b: &[Var5], c: &[Var5]) -> f64 {
    let idx = |v: &[Var5]| v.iter().map(|&x| x as usize).collect::<Vec<_>>();
    let tol = RANK_TOL * scale(cov);
    let (a, b, c) = (idx(a), idx(b), idx(c));
    let mut bc = b.clone();
    bc.extend_from_slice(&c);
    cmi_idx(cov, &a, &c, &bc, tol)
}

fn scale(cov: &Cov5) -> f64 {
    (0..5).map(|i| cov[i][i]).fold(0.0, f64::max)
}

fn cmi_idx(cov: &Cov5, a: &[usize], c: &[usize], bc: &[usize], tol: f64) -> f64 {
    let (r0, l0) = log2_pdet(conditional(cov, a, c, tol), a.len(), tol);
    let (r1, l1) = log2_pdet(conditional(cov, a, bc, tol), a.len(), tol);
    if r1 < r0 {
        return f64::INFINITY;
    }
    0.5 * (l0 - l1)
}

/// `Cov[A | C]` as a row-major `|A| x |A|` block, via symmetric elimination
/// of the conditioning variables; degenerate pivots are skipped, matching
/// the pseudo-inverse Schur complement for PSD input.
fn conditional(cov: &Cov5, a: &[usize], c: &[usize], tol: f64) -> [f64; 25] {
    let order: Vec<usize> = c.iter().chain(a).copied().collect();
    let n = order.len();
    let mut m = [0.0; 100];
    let w = 10;
    for (i, &oi) in order.iter().enumerate() {
        for (j, &oj) in order.iter().enumerate() {
            m[i * w + j] = cov[oi][oj];
        }
    }
    for p in 0..c.len() {
        let piv = m[p * w + p];
        if piv <= tol {
            continue;
        }
        for i in p + 1..n {
            let f = m[i * w + p] / piv;
            if f == 0.0 {
                continue;
            }
            for j in p + 1..n {
                m[i * w + j] -= f * m[p * w + j];
            }
        }
    }
    let k = a.len();
    let off = c.len();
    let mut out = [0.0; 25];
    for i in 0..k {
        for j in 0..k {
            // symmetrize against elimination roundoff
            out[i * 5 + j] = 0.5 * (m[(off + i) * w + off + j] + m[(off + j) * w + off + i]);
        }
    }
    out
}

/// Rank and `log2` pseudo-determinant of a `k x k` PSD block (stride 5).
fn log2_pdet(block: [f64; 25], k: usize, tol: f64) -> (usize, f64) {
    // full-rank fast path: diagonally pivoted Cholesky
    let mut m = block;
    let mut used = [false; 5];
    let mut logdet = 0.0;
    let mut full = true;
    for _ in 0..k {
        let mut p = usize::MAX;
        let mut best = f64::NEG_INFINITY;
        for i in 0..k {
            if !used[i] && m[i * 5 + i] > best {
                best = m[i * 5 + i];
                p = i;
            }
        }
        if best <= tol {
            full = false;
            break;
        }
        used[p] = true;
        logdet += best.log2();
        for i in 0..k {
            if used[i] {
                continue;
            }
            let f = m[i * 5 + p] / best;
            for j in 0..k {
                if !used[j] {
                    m[i * 5 + j] -= f * m[p * 5 + j];
                }
            }
        }
    }
    if full {
        return (k, logdet);
    }
    let dm = DMatrix::from_fn(k, k, |i, j| block[i * 5 + j]);
    let eig = SymmetricEigen::new(dm);
    let mut rank = 0;
    let mut l = 0.0;
    for &ev in eig.eigenvalues.iter() {
        if ev > tol {
            rank += 1;
            l += ev.log2();
        }
    }
    (rank, l)
}

fn clip(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// `[I(A; Y | C) - I(A; S | C)]+`.
fn binned_cap(cov: &Cov5, a: &[usize], c: &[usize], tol: f64) -> f64 {
    let mut yc = vec![Y];
    yc.extend_from_slice(c);
    let mut sc = vec![S];
    sc.extend_from_slice(c);
    let gain = cmi_idx(cov, a, c, &yc, tol);
    let loss = cmi_idx(cov, a, c, &sc, tol);
    clip(gain - loss)
}

/// The four common-message caps of the scheme, each a difference of a
/// channel term and a state (binning) term.
pub fn oracle_mi_bounds(scheme: &GaussianAuxScheme, params: &GaussianMacParams) -> MaccmBounds {
    debug_assert_eq!(scheme.source_var[4], params.pz);
    let cov = &scheme.cov;
    let tol = RANK_TOL * scale(cov);
    MaccmBounds {
        a1: binned_cap(cov, &[V1], &[V2, U], tol),
        a2: binned_cap(cov, &[V2], &[V1, U], tol),
        a12: binned_cap(cov, &[V1, V2], &[U], tol),
        atot: binned_cap(cov, &[U, V1, V2], &[], tol),
    }
}

/// Search schedule for the inflation coefficients: a coarse grid, then a
/// compass search over all 26 neighbour directions that halves its step
/// whenever no neighbour improves. The diagonal moves let it follow the
/// ridge along which the private caps stay optimal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSearch {
    pub coarse: usize,
    /// Stop once the step falls below this fraction of each range.
    pub min_step: f64,
    pub max_iter: usize,
}

impl Default for OracleSearch {
    fn default() -> Self {
        Self {
            coarse: 21,
            min_step: 1e-10,
            max_iter: 20_000,
        }
    }
}

/// Maximize the sum of the four caps over `(g0, g1, g2)`.
///
/// `g1, g2` range over `[0, 1]` and `g0` over `[0, 1 / (2 sqrt(pz))]`,
/// which contain every MMSE-type inflation for this construction.
pub fn oracle_optimize(
    params: &GaussianMacParams,
    beta1: f64,
    beta2: f64,
) -> Result<(GaussianAuxScheme, MaccmBounds)> {
    oracle_optimize_with(params, beta1, beta2, OracleSearch::default())
}

pub fn oracle_optimize_with(
    params: &GaussianMacParams,
    beta1: f64,
    beta2: f64,
    search: OracleSearch,
) -> Result<(GaussianAuxScheme, MaccmBounds)> {
    params.validate()?;
    check_unit("beta1", beta1)?;
    check_unit("beta2", beta2)?;
    let ranges = [(0.0, 0.5 / params.pz.sqrt()), (0.0, 1.0), (0.0, 1.0)];
    let eval = |g: [f64; 3]| {
        let s = GaussianAuxScheme::build(params, beta1, beta2, g);
        let b = oracle_mi_bounds(&s, params);
        (b.a1 + b.a2 + b.a12 + b.atot, s, b)
    };
    let mut best = eval([0.0; 3]);
    let coarse = search.coarse.max(2);
    let axes = ranges.map(|(lo, hi)| linspace(lo, hi, coarse));
    for &g0 in &axes[0] {
        for &g1 in &axes[1] {
            for &g2 in &axes[2] {
                let cand = eval([g0, g1, g2]);
                if cand.0 > best.0 {
                    best = cand;
                }
            }
        }
    }

    let width = ranges.map(|(lo, hi)| hi - lo);
    let mut step = width.map(|w| w / (coarse - 1) as f64);
    for _ in 0..search.max_iter {
        if step.iter().zip(width).all(|(s, w)| *s <= search.min_step * w.max(f64::MIN_POSITIVE)) {
            break;
        }
        let g = best.1.gamma;
        let mut improved = None;
        for dir in 0..27 {
            if dir == 13 {
                continue;
            }
            let d = [dir / 9, (dir / 3) % 3, dir % 3];
            let cand_g = [0, 1, 2].map(|i| {
                let x = g[i] + (d[i] as f64 - 1.0) * step[i];
                x.clamp(ranges[i].0, ranges[i].1)
            });
            if cand_g == g {
                continue;
            }
            let cand = eval(cand_g);
            let bar = improved.as_ref().map_or(best.0, |c: &(f64, _, _)| c.0);
            if cand.0 > bar {
                improved = Some(cand);
            }
        }
        match improved {
            Some(c) => best = c,
            None => step = step.map(|s| s / 2.0),
        }
    }
    Ok((best.1, best.2))
}
