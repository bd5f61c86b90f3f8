use super::channel::DmcState;
use super::joint::{joint_distribution, mutual_information, JointDist, Var};
use super::scheme::AuxScheme;
use crate::conferencing::macce_from_maccm;
use crate::error::{check_nonneg, domain, Result};
use crate::geometry::{MaccmBounds, MacceBounds};

use Var::{S, U, V1, V2, Y};

fn mi(j: &JointDist, a: &[Var], b: &[Var], c: &[Var]) -> f64 {
    mutual_information(j, a, b, c).expect("disjoint groups")
}

fn clip(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// `[I(A; Y | C) - I(A; S | C)]+`, or just `I(A; Y | C)` without binning.
fn cap(j: &JointDist, a: &[Var], c: &[Var], binning: bool) -> f64 {
    let gain = mi(j, a, &[Y], c);
    if binning {
        clip(gain - mi(j, a, &[S], c))
    } else {
        clip(gain)
    }
}

pub(crate) fn pentagon_of(j: &JointDist, binning: bool) -> MaccmBounds {
    MaccmBounds {
        a1: cap(j, &[V1], &[V2, U], binning),
        a2: cap(j, &[V2], &[V1, U], binning),
        a12: cap(j, &[V1, V2], &[U], binning),
        atot: cap(j, &[U, V1, V2], &[], binning),
    }
}

/// Common-message caps of a scheme with non-causal state knowledge; each cap
/// pays the state information of its auxiliaries.
pub fn maccm_nc_pentagon(ch: &DmcState, scheme: &AuxScheme) -> Result<MaccmBounds> {
    if scheme.causal {
        return domain("maccm_nc_pentagon needs a non-causal scheme");
    }
    Ok(pentagon_of(&joint_distribution(ch, scheme)?, true))
}

/// Common-message caps of a causal scheme (no binning penalty).
pub fn maccm_c_pentagon(ch: &DmcState, scheme: &AuxScheme) -> Result<MaccmBounds> {
    if !scheme.causal {
        return domain("maccm_c_pentagon needs a causal scheme");
    }
    Ok(pentagon_of(&joint_distribution(ch, scheme)?, false))
}

/// Conferencing caps from the common-message pentagon of matching causality.
pub fn macce_bounds(ch: &DmcState, scheme: &AuxScheme, c12: f64, c21: f64) -> Result<MacceBounds> {
    check_nonneg("c12", c12)?;
    check_nonneg("c21", c21)?;
    let m = if scheme.causal {
        maccm_c_pentagon(ch, scheme)?
    } else {
        maccm_nc_pentagon(ch, scheme)?
    };
    Ok(macce_from_maccm(&m, c12, c21))
}
