//! Text emission: fixed-precision numbers, CSV tables and SVG plots.

use std::fmt::Write as _;

use crate::gaussian::SplitTag;
use crate::geometry::{Frontier2, RatePoint2};

/// Significant digits in every CSV number.
pub const CSV_DIGITS: usize = 12;

/// `%g`-style formatting with `digits` significant digits: trailing zeros
/// dropped, scientific notation outside `1e-5 ..= 1e(digits)`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn num(x: f64) -> String {
    fmt_sig(x, CSV_DIGITS)
}

pub const GAUSSIAN_HEADER: &str = "r1,r2,beta1,beta2,alpha1,alpha2";
pub const DISCRETE_HEADER: &str = "r1,r2,scheme";

fn table(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header.split(',')).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

fn gaussian_fields(p: &RatePoint2, t: &SplitTag) -> Vec<String> {
    let (a1, a2) = match t.alpha {
        Some((a1, a2)) => (num(a1), num(a2)),
        None => (String::new(), String::new()),
    };
    vec![num(p.r1), num(p.r2), num(t.beta1), num(t.beta2), a1, a2]
}

pub fn gaussian_csv(f: &Frontier2<SplitTag>) -> String {
    table(
        GAUSSIAN_HEADER,
        f.points.iter().zip(&f.tags).map(|(p, t)| gaussian_fields(p, t)),
    )
}

/// Several frontiers in one table with a leading capacity column.
pub fn multi_csv(curves: &[(f64, Frontier2<SplitTag>)]) -> String {
    let rows = curves.iter().flat_map(|(c, f)| {
        f.points.iter().zip(&f.tags).map(move |(p, t)| {
            let mut r = vec![num(*c)];
            r.extend(gaussian_fields(p, t));
            r
        })
    });
    table(&format!("c,{GAUSSIAN_HEADER}"), rows)
}

pub fn discrete_csv(f: &Frontier2<u64>) -> String {
    table(
        DISCRETE_HEADER,
        f.points
            .iter()
            .zip(&f.tags)
            .map(|(p, t)| vec![num(p.r1), num(p.r2), t.to_string()]),
    )
}

/// Rate pairs from the `r1` and `r2` columns of a CSV emitted above.
pub fn parse_rate_rows(text: &str) -> Result<Vec<RatePoint2>, String> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| e.to_string())?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| format!("no {name} column"))
    };
    let (i1, i2) = (col("r1")?, col("r2")?);
    rdr.records()
        .enumerate()
        .map(|(n, rec)| {
            let rec = rec.map_err(|e| e.to_string())?;
            let get = |i: usize| -> Result<f64, String> {
                rec.get(i)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| format!("row {}: bad number", n + 2))
            };
            Ok(RatePoint2::new(get(i1)?, get(i2)?))
        })
        .collect()
}

pub const SVG_WIDTH: f64 = 800.0;
pub const SVG_HEIGHT: f64 = 600.0;
const MARGIN: f64 = 70.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// Round a plotting bound up to a tidy value.
fn nice_ceiling(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mag = 10f64.powf(x.log10().floor());
    for m in [1.0, 2.0, 2.5, 5.0, 10.0] {
        if m * mag >= x {
            return m * mag;
        }
    }
    10.0 * mag
}

/// Polyline plot of one or more labelled curves on a fixed 800x600 canvas.
/// The output depends only on the inputs.
pub fn svg_plot(title: &str, curves: &[(String, Vec<RatePoint2>)]) -> String {
    let mut xmax: f64 = 0.0;
    let mut ymax: f64 = 0.0;
    for (_, pts) in curves {
        for p in pts {
            xmax = xmax.max(p.r1);
            ymax = ymax.max(p.r2);
        }
    }
    let xmax = nice_ceiling(xmax);
    let ymax = nice_ceiling(ymax);
    let pw = SVG_WIDTH - 2.0 * MARGIN;
    let ph = SVG_HEIGHT - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + x / xmax * pw;
    let sy = |y: f64| SVG_HEIGHT - MARGIN - y / ymax * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = SVG_WIDTH,
        h = SVG_HEIGHT
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        SVG_WIDTH / 2.0,
        escape(title)
    );
    // axes and ticks
    let (x0, y0) = (sx(0.0), sy(0.0));
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.1},{:.1} L{x0:.1},{y0:.1} L{:.1},{y0:.1}" fill="none" stroke="black"/>"#,
        sy(ymax),
        sx(xmax)
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let (xv, yv) = (t * xmax, t * ymax);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
            y0 + 5.0,
            y0 + 20.0,
            fmt_sig(xv, 4),
            x = sx(xv)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{x0:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end" font-family="sans-serif" font-size="12">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            sy(yv) + 4.0,
            fmt_sig(yv, 4),
            y = sy(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-family="sans-serif" font-size="14">R1 (bits)</text>"#,
        MARGIN + pw / 2.0,
        SVG_HEIGHT - 20.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.1}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 20 {:.1})">R2 (bits)</text>"#,
        MARGIN + ph / 2.0,
        MARGIN + ph / 2.0
    );
    for (i, (label, pts)) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if !pts.is_empty() {
            // close the region down to the axes
            let mut d = format!("{:.2},{:.2}", sx(0.0), sy(pts[0].r2));
            for p in pts {
                let _ = write!(d, " {:.2},{:.2}", sx(p.r1), sy(p.r2));
            }
            let last = pts[pts.len() - 1];
            let _ = write!(d, " {:.2},{:.2}", sx(last.r1), sy(0.0));
            let _ = writeln!(
                s,
                r#"<polyline points="{d}" fill="none" stroke="{color}" stroke-width="2"/>"#
            );
        }
        let ly = MARGIN + 10.0 + 18.0 * i as f64;
        let lx = SVG_WIDTH - MARGIN - 150.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12">{}</text>"#,
            lx + 25.0,
            lx + 32.0,
            ly + 4.0,
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(1.0, 12), "1");
        assert_eq!(fmt_sig(0.5, 12), "0.5");
        assert_eq!(fmt_sig(0.792481250360578, 12), "0.792481250361");
        assert_eq!(fmt_sig(3.3751788123456789, 12), "3.37517881235");
        assert_eq!(fmt_sig(123456.0, 3), "1.23e5");
        assert_eq!(fmt_sig(9.9999999999999, 12), "10");
        assert_eq!(fmt_sig(1.5e-7, 12), "1.5e-7");
        assert_eq!(fmt_sig(-0.25, 12), "-0.25");
        let x = 0.123456789012345;
        let back: f64 = fmt_sig(x, 12).parse().unwrap();
        assert!((back - x).abs() < 1e-12);
    }

    #[test]
    fn rows_round_trip() {
        let f = Frontier2 {
            points: vec![RatePoint2::new(0.0, 0.5), RatePoint2::new(0.25, 0.25)],
            tags: vec![
                SplitTag { beta1: 1.0, beta2: 1.0, alpha: None },
                SplitTag { beta1: 1.0, beta2: 0.5, alpha: Some((0.1, 0.2)) },
            ],
        };
        let csv = gaussian_csv(&f);
        assert_eq!(csv, "r1,r2,beta1,beta2,alpha1,alpha2\n0,0.5,1,1,,\n0.25,0.25,1,0.5,0.1,0.2\n");
        assert_eq!(parse_rate_rows(&csv).unwrap(), f.points);
        let multi = multi_csv(&[(0.5, f.clone())]);
        assert_eq!(parse_rate_rows(&multi).unwrap(), f.points);
    }

    #[test]
    fn svg_is_fixed_size_and_deterministic() {
        let curves = vec![("C = 0".to_string(), vec![RatePoint2::new(0.0, 1.0), RatePoint2::new(1.0, 0.5)])];
        let a = svg_plot("region", &curves);
        assert_eq!(a, svg_plot("region", &curves));
        assert!(a.contains(r#"width="800" height="600""#));
        assert!(a.contains("R1 (bits)") && a.contains("R2 (bits)"));
        let empty = svg_plot("none", &[("x".into(), vec![])]);
        assert!(empty.ends_with("</svg>\n"));
    }
}
