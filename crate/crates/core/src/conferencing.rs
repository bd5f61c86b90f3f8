//! Reduction of conferencing encoders to a common-message channel.
//!
//! Each encoder forwards the cell label of its message over the conference
//! link. Those labels become a common message and the within-cell indices
//! remain private, so a common-message region with caps `(a1, a2, a12, atot)`
//! turns into the conferencing caps `(a1 + C12, a2 + C21, a12 + C12 + C21, atot)`.

use crate::error::{check_nonneg, domain, Result};
use crate::geometry::{MaccmBounds, MacceBounds};

/// How a private-rate pair splits into a conference-shared common part and
/// the residual private parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSplit {
    pub r1hat: f64,
    pub r2hat: f64,
    pub r0: f64,
    pub r1prime: f64,
    pub r2prime: f64,
}

pub fn split_rates(r1: f64, r2: f64, c12: f64, c21: f64) -> Result<RateSplit> {
    for (name, v) in [("r1", r1), ("r2", r2), ("c12", c12), ("c21", c21)] {
        check_nonneg(name, v)?;
    }
    let r1hat = r1.min(c12);
    let r2hat = r2.min(c21);
    Ok(RateSplit {
        r1hat,
        r2hat,
        r0: r1hat + r2hat,
        r1prime: r1 - r1hat,
        r2prime: r2 - r2hat,
    })
}

/// Whether a conference with the given per-round alphabet sizes (log2) fits
/// the link capacities over `n` channel uses.
pub fn admissible(log_sizes_1: &[f64], log_sizes_2: &[f64], n: u64, c12: f64, c21: f64) -> bool {
    if n == 0 {
        return false;
    }
    let n = n as f64;
    let total1: f64 = log_sizes_1.iter().sum();
    let total2: f64 = log_sizes_2.iter().sum();
    total1 <= n * c12 && total2 <= n * c21
}

/// Contiguous partition of messages `1..=total` into equal cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPartition {
    total: u64,
    cells: u64,
}

impl CellPartition {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn cells(&self) -> u64 {
        self.cells
    }

    pub fn cell_size(&self) -> u64 {
        self.total / self.cells
    }

    /// `(cell, index)` of a 1-based message, both 1-based.
    pub fn assign(&self, message: u64) -> Option<(u64, u64)> {
        if message == 0 || message > self.total {
            return None;
        }
        let size = self.cell_size();
        Some(((message - 1) / size + 1, (message - 1) % size + 1))
    }

    pub fn message(&self, cell: u64, index: u64) -> Option<u64> {
        let size = self.cell_size();
        if cell == 0 || cell > self.cells || index == 0 || index > size {
            return None;
        }
        Some((cell - 1) * size + index)
    }

    pub fn assignment(&self) -> impl Iterator<Item = (u64, (u64, u64))> + '_ {
        (1..=self.total).map(move |m| (m, self.assign(m).expect("in range")))
    }
}

pub fn partition_messages(total: u64, cells: u64) -> Result<CellPartition> {
    if cells == 0 || total == 0 {
        return domain("message and cell counts must be positive");
    }
    if !total.is_multiple_of(cells) {
        return domain(format!("{cells} cells do not divide {total} messages"));
    }
    Ok(CellPartition { total, cells })
}

pub fn macce_from_maccm(m: &MaccmBounds, c12: f64, c21: f64) -> MacceBounds {
    MacceBounds {
        b1: m.a1 + c12,
        b2: m.a2 + c21,
        bsum_conf: m.a12 + c12 + c21,
        bsum_tot: m.atot,
    }
}
