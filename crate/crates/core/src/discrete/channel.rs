use std::fmt;

use crate::error::{domain, Error, Result};

const SUM_TOL: f64 = 1e-12;

/// Discrete memoryless two-sender channel with a memoryless state.
///
/// `transition` holds `P(y | x1, x2, s)` at index
/// `((x1 * nx2 + x2) * ns + s) * ny + y`.
#[derive(Debug, Clone, PartialEq)]
pub struct DmcState {
    pub ns: usize,
    pub nx1: usize,
    pub nx2: usize,
    pub ny: usize,
    pub pstate: Vec<f64>,
    pub transition: Vec<f64>,
}

impl DmcState {
    /// Checks shapes only; use [`validate_channel`] for normalization.
    pub fn new(
        ns: usize,
        nx1: usize,
        nx2: usize,
        ny: usize,
        pstate: Vec<f64>,
        transition: Vec<f64>,
    ) -> Result<Self> {
        if ns == 0 || nx1 == 0 || nx2 == 0 || ny == 0 {
            return domain("alphabet sizes must be at least 1");
        }
        if pstate.len() != ns {
            return domain(format!("expected {ns} state probabilities, got {}", pstate.len()));
        }
        let want = nx1 * nx2 * ns * ny;
        if transition.len() != want {
            return domain(format!(
                "expected {want} transition entries, got {}",
                transition.len()
            ));
        }
        Ok(Self {
            ns,
            nx1,
            nx2,
            ny,
            pstate,
            transition,
        })
    }

    pub fn from_fn(
        ns: usize,
        nx1: usize,
        nx2: usize,
        ny: usize,
        pstate: Vec<f64>,
        f: impl Fn(usize, usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let mut t = Vec::with_capacity(nx1 * nx2 * ns * ny);
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                for s in 0..ns {
                    for y in 0..ny {
                        t.push(f(x1, x2, s, y));
                    }
                }
            }
        }
        Self::new(ns, nx1, nx2, ny, pstate, t)
    }

    /// Channel whose output is a deterministic function of `(x1, x2, s)`.
    pub fn deterministic(
        ns: usize,
        nx1: usize,
        nx2: usize,
        ny: usize,
        pstate: Vec<f64>,
        out: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        Self::from_fn(ns, nx1, nx2, ny, pstate, |x1, x2, s, y| {
            if out(x1, x2, s) == y {
                1.0
            } else {
                0.0
            }
        })
    }

    /// `Y = X1 xor X2 xor S` with a fair binary state.
    pub fn binary_xor_state() -> Self {
        Self::deterministic(2, 2, 2, 2, vec![0.5, 0.5], |a, b, s| a ^ b ^ s)
            .expect("valid shape")
    }

    #[inline]
    pub fn row_offset(&self, x1: usize, x2: usize, s: usize) -> usize {
        ((x1 * self.nx2 + x2) * self.ns + s) * self.ny
    }

    pub fn row(&self, x1: usize, x2: usize, s: usize) -> &[f64] {
        let o = self.row_offset(x1, x2, s);
        &self.transition[o..o + self.ny]
    }

    /// Parse the plain-text tensor format:
    ///
    /// ```text
    /// dmc <ns> <nx1> <nx2> <ny>
    /// <ns state probabilities>
    /// <ns*nx1*nx2 lines of ny probabilities, s outermost, then x1, then x2>
    /// ```
    ///
    /// `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: String| Error::ChannelFormat { line, msg };

        let (hl, header) = lines.next().ok_or_else(|| err(0, "empty channel file".into()))?;
        let mut tok = header.split_whitespace();
        if tok.next() != Some("dmc") {
            return Err(err(hl, "header must start with `dmc`".into()));
        }
        let dims: Vec<usize> = tok
            .map(|t| t.parse::<usize>().map_err(|_| err(hl, format!("bad alphabet size `{t}`"))))
            .collect::<Result<_>>()?;
        let [ns, nx1, nx2, ny] = dims[..] else {
            return Err(err(hl, "header needs `dmc ns nx1 nx2 ny`".into()));
        };
        if ns == 0 || nx1 == 0 || nx2 == 0 || ny == 0 {
            return Err(err(hl, "alphabet sizes must be at least 1".into()));
        }

        let mut numbers = |expect: usize, what: &str| -> Result<Vec<f64>> {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| err(0, format!("unexpected end of file, expected {what}")))?;
            let v: Vec<f64> = l
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| err(ln, format!("bad number `{t}`"))))
                .collect::<Result<_>>()?;
            if v.len() != expect {
                return Err(err(ln, format!("expected {expect} numbers for {what}, got {}", v.len())));
            }
            Ok(v)
        };
        let pstate = numbers(ns, "state probabilities")?;
        let mut transition = vec![0.0; nx1 * nx2 * ns * ny];
        for s in 0..ns {
            for x1 in 0..nx1 {
                for x2 in 0..nx2 {
                    let row = numbers(ny, &format!("row (s={s}, x1={x1}, x2={x2})"))?;
                    let o = ((x1 * nx2 + x2) * ns + s) * ny;
                    transition[o..o + ny].copy_from_slice(&row);
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, "trailing data after the last transition row".into()));
        }
        Self::new(ns, nx1, nx2, ny, pstate, transition)
    }

    /// Serialize in the format read by [`DmcState::parse`].
    pub fn to_text(&self) -> String {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" ");
        let mut out = format!("dmc {} {} {} {}\n", self.ns, self.nx1, self.nx2, self.ny);
        out.push_str(&join(&self.pstate));
        out.push('\n');
        for s in 0..self.ns {
            for x1 in 0..self.nx1 {
                for x2 in 0..self.nx2 {
                    out.push_str(&join(self.row(x1, x2, s)));
                    out.push('\n');
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Issue {
    StateNotFinite { s: usize, value: f64 },
    StateNegative { s: usize, value: f64 },
    StateSum { sum: f64 },
    RowNotFinite { x1: usize, x2: usize, s: usize, y: usize, value: f64 },
    RowNegative { x1: usize, x2: usize, s: usize, y: usize, value: f64 },
    RowSum { x1: usize, x2: usize, s: usize, sum: f64 },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::StateNotFinite { s, value } => write!(f, "pstate[{s}] = {value} is not finite"),
            Issue::StateNegative { s, value } => write!(f, "pstate[{s}] = {value} is negative"),
            Issue::StateSum { sum } => write!(f, "state probabilities sum to {sum}"),
            Issue::RowNotFinite { x1, x2, s, y, value } => {
                write!(f, "P(y={y} | x1={x1}, x2={x2}, s={s}) = {value} is not finite")
            }
            Issue::RowNegative { x1, x2, s, y, value } => {
                write!(f, "P(y={y} | x1={x1}, x2={x2}, s={s}) = {value} is negative")
            }
            Issue::RowSum { x1, x2, s, sum } => {
                write!(f, "row (x1={x1}, x2={x2}, s={s}) sums to {sum}")
            }
        }
    }
}

/// Every normalization or sign violation of a channel; empty means valid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidChannel(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.issues.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

pub fn validate_channel(ch: &DmcState) -> ValidationReport {
    let mut issues = Vec::new();
    for (s, &value) in ch.pstate.iter().enumerate() {
        if !value.is_finite() {
            issues.push(Issue::StateNotFinite { s, value });
        } else if value < 0.0 {
            issues.push(Issue::StateNegative { s, value });
        }
    }
    let sum: f64 = ch.pstate.iter().sum();
    if sum.is_nan() || (sum - 1.0).abs() > SUM_TOL {
        issues.push(Issue::StateSum { sum });
    }
    for x1 in 0..ch.nx1 {
        for x2 in 0..ch.nx2 {
            for s in 0..ch.ns {
                let row = ch.row(x1, x2, s);
                for (y, &value) in row.iter().enumerate() {
                    if !value.is_finite() {
                        issues.push(Issue::RowNotFinite { x1, x2, s, y, value });
                    } else if value < 0.0 {
                        issues.push(Issue::RowNegative { x1, x2, s, y, value });
                    }
                }
                let sum: f64 = row.iter().sum();
                if sum.is_nan() || (sum - 1.0).abs() > SUM_TOL {
                    issues.push(Issue::RowSum { x1, x2, s, sum });
                }
            }
        }
    }
    ValidationReport { issues }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_channel_is_valid() {
        assert!(validate_channel(&DmcState::binary_xor_state()).is_valid());
    }

    #[test]
    fn short_row_is_reported() {
        let mut ch = DmcState::binary_xor_state();
        let o = ch.row_offset(1, 0, 1);
        ch.transition[o] = 0.9;
        ch.transition[o + 1] = 0.0;
        let r = validate_channel(&ch);
        assert_eq!(r.issues.len(), 1);
        match &r.issues[0] {
            Issue::RowSum { x1, x2, s, sum } => {
                assert_eq!((*x1, *x2, *s), (1, 0, 1));
                assert!((sum - 0.9).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(r.to_string().contains("x1=1, x2=0, s=1"));
    }

    #[test]
    fn negative_state_is_reported() {
        let mut ch = DmcState::binary_xor_state();
        ch.pstate = vec![-0.1, 1.1];
        let r = validate_channel(&ch);
        assert_eq!(r.issues, vec![Issue::StateNegative { s: 0, value: -0.1 }]);
    }

    #[test]
    fn text_round_trip() {
        let ch = DmcState::from_fn(2, 2, 3, 2, vec![0.25, 0.75], |x1, x2, s, y| {
            let p = 0.1 * (x1 + x2 + s) as f64 / 4.0;
            if y == 0 {
                p
            } else {
                1.0 - p
            }
        })
        .unwrap();
        let back = DmcState::parse(&ch.to_text()).unwrap();
        assert_eq!(back, ch);
    }

    #[test]
    fn parse_with_comments_and_order() {
        let text = "# xor-ish\n dmc 2 1 2 2 \n0.5 0.5 # fair\n1 0\n0 1\n\n0 1\n1 0\n";
        let ch = DmcState::parse(text).unwrap();
        assert_eq!(ch.row(0, 1, 0), &[0.0, 1.0]);
        assert_eq!(ch.row(0, 0, 1), &[0.0, 1.0]);
        assert_eq!(ch.row(0, 1, 1), &[1.0, 0.0]);
    }

    #[test]
    fn parse_errors_name_lines() {
        let e = DmcState::parse("dmc 1 1 1 2\n1\n0.5 x\n").unwrap_err();
        assert_eq!(e, Error::ChannelFormat { line: 3, msg: "bad number `x`".into() });
        let e = DmcState::parse("dmc 1 1 1 2\n1\n0.5\n").unwrap_err();
        assert!(matches!(e, Error::ChannelFormat { line: 3, .. }));
        assert!(DmcState::parse("mac 1 1 1 1\n").is_err());
        assert!(matches!(
            DmcState::parse("dmc 1 1 1 1\n1\n1\n1\n"),
            Err(Error::ChannelFormat { line: 4, .. })
        ));
    }
}
