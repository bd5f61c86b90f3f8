//! Rate pentagons and the sampled Pareto frontier of their unions.
//!
//! Every region in this crate is a union of sets of the form
//! `{0 <= R1 <= b1, 0 <= R2 <= b2, R1 + R2 <= bsum}`. A union over a
//! continuum of parameters has no finite vertex description, so frontiers are
//! sampled at fixed abscissas: at each abscissa the envelope keeps the largest
//! feasible `R2` together with the tag of the set that produced it.

use std::cmp::Ordering;

use crate::error::{check_nonneg, domain, Result};

/// Default number of frontier sample abscissas.
pub const DEFAULT_RESOLUTION: usize = 512;

/// A rate pair in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint2 {
    pub r1: f64,
    pub r2: f64,
}

impl RatePoint2 {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }
}

/// The four caps of one common-message region: `R1`, `R2`, `R1+R2` and
/// `R0+R1+R2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaccmBounds {
    pub a1: f64,
    pub a2: f64,
    pub a12: f64,
    pub atot: f64,
}

impl MaccmBounds {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a1, self.a2, self.a12, self.atot]
    }

    /// The `(R1, R2)` slice at a fixed common rate, or `None` when `r0`
    /// exceeds the total cap.
    pub fn slice_caps(&self, r0: f64) -> Option<PentagonCaps> {
        if self.atot < r0 {
            return None;
        }
        Some(PentagonCaps {
            r1: self.a1,
            r2: self.a2,
            sum: self.a12.min(self.atot - r0),
        })
    }
}

/// The four caps of one conferencing region: `R1`, `R2`, the
/// conference-augmented `R1+R2` cap and the total `R1+R2` cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacceBounds {
    pub b1: f64,
    pub b2: f64,
    pub bsum_conf: f64,
    pub bsum_tot: f64,
}

impl MacceBounds {
    pub fn as_array(&self) -> [f64; 4] {
        [self.b1, self.b2, self.bsum_conf, self.bsum_tot]
    }

    pub fn caps(&self) -> PentagonCaps {
        PentagonCaps {
            r1: self.b1,
            r2: self.b2,
            sum: self.bsum_conf.min(self.bsum_tot),
        }
    }
}

/// Constraint triple `{R1 <= r1, R2 <= r2, R1+R2 <= sum}` without vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentagonCaps {
    pub r1: f64,
    pub r2: f64,
    pub sum: f64,
}

impl PentagonCaps {
    /// Largest feasible `R1`.
    pub fn extent_r1(&self) -> f64 {
        self.r1.min(self.sum)
    }

    /// Largest feasible `R2`.
    pub fn extent_r2(&self) -> f64 {
        self.r2.min(self.sum)
    }

    /// Largest feasible `R2` at `R1 = x`, if any.
    pub fn height_at(&self, x: f64) -> Option<f64> {
        if x < 0.0 || x > self.extent_r1() {
            return None;
        }
        Some(self.extent_r2().min(self.sum - x))
    }

    pub fn contains(&self, q: RatePoint2, tol: f64) -> bool {
        q.r1 >= -tol
            && q.r2 >= -tol
            && q.r1 <= self.r1 + tol
            && q.r2 <= self.r2 + tol
            && q.r1 + q.r2 <= self.sum + tol
    }
}

/// One pentagon with its vertex realization.
///
/// Vertices start at the origin, then `(max r1, 0)`, and run counterclockwise
/// along the upper-right boundary back to the `R2` axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Pentagon {
    caps: PentagonCaps,
    vertices: Vec<RatePoint2>,
}

impl Pentagon {
    pub fn caps(&self) -> PentagonCaps {
        self.caps
    }

    pub fn vertices(&self) -> &[RatePoint2] {
        &self.vertices
    }

    pub fn contains(&self, q: RatePoint2, tol: f64) -> bool {
        self.caps.contains(q, tol)
    }
}

pub fn make_pentagon(b1: f64, b2: f64, bsum: f64) -> Result<Pentagon> {
    check_nonneg("b1", b1)?;
    check_nonneg("b2", b2)?;
    check_nonneg("bsum", bsum)?;
    let caps = PentagonCaps {
        r1: b1,
        r2: b2,
        sum: bsum,
    };
    Ok(Pentagon {
        caps,
        vertices: pentagon_vertices(&caps),
    })
}

impl TryFrom<PentagonCaps> for Pentagon {
    type Error = crate::Error;

    fn try_from(caps: PentagonCaps) -> Result<Self> {
        make_pentagon(caps.r1, caps.r2, caps.sum)
    }
}

fn pentagon_vertices(caps: &PentagonCaps) -> Vec<RatePoint2> {
    let c1 = caps.extent_r1();
    let c2 = caps.extent_r2();
    let s = caps.sum;
    let corner_x = (s - c2).clamp(0.0, c1);
    let raw = [
        RatePoint2::new(0.0, 0.0),
        RatePoint2::new(c1, 0.0),
        RatePoint2::new(c1, c2.min(s - c1)),
        RatePoint2::new(corner_x, c2),
        RatePoint2::new(0.0, c2),
    ];
    let mut out: Vec<RatePoint2> = Vec::with_capacity(5);
    for v in raw {
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    while out.len() > 1 && out.last() == out.first() {
        out.pop();
    }
    out
}

pub fn pentagon_contains(p: &Pentagon, q: RatePoint2, tol: f64) -> bool {
    p.contains(q, tol)
}

/// Point-in-polygon test against a vertex list. Points within `tol` of an
/// edge count as inside; otherwise an even-odd ray cast decides.
pub fn point_in_polygon(vertices: &[RatePoint2], q: RatePoint2, tol: f64) -> bool {
    let n = vertices.len();
    if n == 0 {
        return false;
    }
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if segment_distance(a, b, q) <= tol {
            return true;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.r2 > q.r2) != (b.r2 > q.r2) {
            let x = a.r1 + (q.r2 - a.r2) * (b.r1 - a.r1) / (b.r2 - a.r2);
            if q.r1 < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn segment_distance(a: RatePoint2, b: RatePoint2, q: RatePoint2) -> f64 {
    let (dx, dy) = (b.r1 - a.r1, b.r2 - a.r2);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((q.r1 - a.r1) * dx + (q.r2 - a.r2) * dy) / len2).clamp(0.0, 1.0)
    };
    let (px, py) = (a.r1 + t * dx, a.r2 + t * dy);
    ((q.r1 - px).powi(2) + (q.r2 - py).powi(2)).sqrt()
}

/// Sampled Pareto frontier. `tags[i]` identifies the member of the union
/// that attains `points[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frontier2<M> {
    pub points: Vec<RatePoint2>,
    pub tags: Vec<M>,
}

impl<M> Frontier2<M> {
    pub fn empty() -> Self {
        Self {
            points: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn max_sum_rate(&self) -> Option<f64> {
        self.points
            .iter()
            .map(|p| p.r1 + p.r2)
            .max_by(|a, b| a.total_cmp(b))
    }

    /// `R2` on the piecewise-linear interpolation of the samples; zero past
    /// the last abscissa.
    pub fn interpolate(&self, x: f64) -> f64 {
        let pts = &self.points;
        let Some(last) = pts.last() else {
            return 0.0;
        };
        if x > last.r1 {
            return 0.0;
        }
        let i = pts.partition_point(|p| p.r1 < x);
        if i == 0 {
            return pts[0].r2;
        }
        let b = pts[i];
        if b.r1 == x {
            return b.r2;
        }
        let a = pts[i - 1];
        a.r2 + (b.r2 - a.r2) * (x - a.r1) / (b.r1 - a.r1)
    }
}

/// `n` evenly spaced values from `lo` to `hi`, endpoints exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let den = (n - 1) as f64;
            let mut v: Vec<f64> = (0..n)
                .map(|k| lo + (hi - lo) * (k as f64) / den)
                .collect();
            v[n - 1] = hi;
            v
        }
    }
}

/// Abscissas for a frontier whose largest feasible `R1` is `extent`.
pub fn frontier_abscissas(extent: f64, resolution: usize) -> Vec<f64> {
    if extent > 0.0 {
        linspace(0.0, extent, resolution)
    } else {
        vec![0.0]
    }
}

type Best<M> = Option<(f64, M)>;

fn better<M: Ord>(a: &(f64, M), b: &(f64, M)) -> bool {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1 < b.1,
    }
}

fn offer<M: Ord>(slot: &mut Best<M>, cand: (f64, M)) {
    match slot {
        Some(cur) if !better(&cand, cur) => {}
        _ => *slot = Some(cand),
    }
}

/// Streaming max-envelope of pentagons over fixed abscissas.
///
/// Each pentagon's height profile is flat at `min(r2, sum)` and then falls
/// with slope -1, so an insert is two point/range updates instead of a pass
/// over all abscissas. Ties on height go to the smaller tag, which makes the
/// result independent of insertion and merge order.
#[derive(Debug, Clone)]
pub struct EnvelopeBuilder<M> {
    abscissas: Vec<f64>,
    // best flat height among pentagons whose flat part ends at index k
    flat: Vec<Best<M>>,
    // sparse-table range-max over the sum cap of sloped segments
    sloped: Vec<Vec<Best<M>>>,
}

impl<M: Ord + Clone> EnvelopeBuilder<M> {
    pub fn new(abscissas: Vec<f64>) -> Self {
        let n = abscissas.len();
        let levels = usize::BITS as usize - n.max(1).leading_zeros() as usize;
        Self {
            flat: vec![None; n],
            sloped: vec![vec![None; n]; levels],
            abscissas,
        }
    }

    pub fn abscissas(&self) -> &[f64] {
        &self.abscissas
    }

    pub fn insert(&mut self, caps: &PentagonCaps, tag: M) {
        let c1 = caps.extent_r1();
        let c2 = caps.extent_r2();
        let s = caps.sum;
        if !(c1 >= 0.0 && c2 >= 0.0) {
            return;
        }
        let xs = &self.abscissas;
        let feasible = xs.partition_point(|&x| x <= c1);
        if feasible == 0 {
            return;
        }
        let flat_end = xs[..feasible].partition_point(|&x| s - x >= c2);
        if flat_end > 0 {
            offer(&mut self.flat[flat_end - 1], (c2, tag.clone()));
        }
        if flat_end < feasible {
            self.range_offer(flat_end, feasible - 1, (s, tag));
        }
    }

    fn range_offer(&mut self, lo: usize, hi: usize, cand: (f64, M)) {
        let len = hi - lo + 1;
        let lvl = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let width = 1usize << lvl;
        offer(&mut self.sloped[lvl][lo], cand.clone());
        offer(&mut self.sloped[lvl][hi + 1 - width], cand);
    }

    /// Combine with a builder over the same abscissas.
    pub fn merge(mut self, other: Self) -> Self {
        debug_assert_eq!(self.abscissas, other.abscissas);
        for (a, b) in self.flat.iter_mut().zip(other.flat) {
            if let Some(c) = b {
                offer(a, c);
            }
        }
        for (la, lb) in self.sloped.iter_mut().zip(other.sloped) {
            for (a, b) in la.iter_mut().zip(lb) {
                if let Some(c) = b {
                    offer(a, c);
                }
            }
        }
        self
    }

    pub fn finish(mut self) -> Frontier2<M> {
        let n = self.abscissas.len();
        for lvl in (1..self.sloped.len()).rev() {
            let half = 1usize << (lvl - 1);
            let (lower, upper) = self.sloped.split_at_mut(lvl);
            let (row, below) = (&upper[0], &mut lower[lvl - 1]);
            for i in 0..n {
                if let Some(c) = &row[i] {
                    offer(&mut below[i], c.clone());
                    if i + half < n {
                        offer(&mut below[i + half], c.clone());
                    }
                }
            }
        }
        let mut suffix: Best<M> = None;
        let mut column: Vec<Best<M>> = vec![None; n];
        for k in (0..n).rev() {
            if let Some(c) = self.flat[k].take() {
                offer(&mut suffix, c);
            }
            let mut best = suffix.clone();
            if let Some((s, tag)) = self.sloped.first().and_then(|l| l[k].clone()) {
                offer(&mut best, (s - self.abscissas[k], tag));
            }
            column[k] = best;
        }
        let mut points = Vec::with_capacity(n);
        let mut tags = Vec::with_capacity(n);
        for (k, c) in column.into_iter().enumerate() {
            if let Some((h, tag)) = c {
                points.push(RatePoint2::new(self.abscissas[k], h));
                tags.push(tag);
            }
        }
        strip_dominated(Frontier2 { points, tags })
    }
}

fn strip_dominated<M>(f: Frontier2<M>) -> Frontier2<M> {
    let n = f.points.len();
    let mut keep = vec![true; n];
    let mut right_max = f64::NEG_INFINITY;
    for i in (0..n).rev() {
        if f.points[i].r2 < right_max {
            keep[i] = false;
        } else {
            right_max = f.points[i].r2;
        }
    }
    let mut points = Vec::with_capacity(n);
    let mut tags = Vec::with_capacity(n);
    for ((p, t), k) in f.points.into_iter().zip(f.tags).zip(keep) {
        if k {
            points.push(p);
            tags.push(t);
        }
    }
    Frontier2 { points, tags }
}

/// Frontier of a union of tagged pentagons, sampled at `resolution`
/// abscissas spanning `[0, max feasible R1]`.
pub fn frontier_union<M: Ord + Clone>(
    pentagons: &[(Pentagon, M)],
    resolution: usize,
) -> Result<Frontier2<M>> {
    if pentagons.is_empty() {
        return domain("frontier_union needs at least one pentagon");
    }
    if resolution < 2 {
        return domain(format!("resolution must be at least 2, got {resolution}"));
    }
    let extent = pentagons
        .iter()
        .map(|(p, _)| p.caps.extent_r1())
        .fold(0.0, f64::max);
    frontier_union_at(pentagons, frontier_abscissas(extent, resolution))
}

/// Frontier of a union sampled at caller-chosen abscissas; abscissas where no
/// member is feasible are omitted.
pub fn frontier_union_at<M: Ord + Clone>(
    pentagons: &[(Pentagon, M)],
    abscissas: Vec<f64>,
) -> Result<Frontier2<M>> {
    if pentagons.is_empty() {
        return domain("frontier_union needs at least one pentagon");
    }
    if abscissas.windows(2).any(|w| w[0] >= w[1]) {
        return domain("abscissas must be strictly increasing");
    }
    let mut env = EnvelopeBuilder::new(abscissas);
    for (p, tag) in pentagons {
        env.insert(&p.caps, tag.clone());
    }
    Ok(env.finish())
}

/// Largest excess of `fa` over `fb`, measured at `fa`'s abscissas against
/// the linear interpolation of `fb`.
pub fn frontier_gap<Ma, Mb>(fa: &Frontier2<Ma>, fb: &Frontier2<Mb>) -> f64 {
    fa.points
        .iter()
        .map(|p| p.r2 - fb.interpolate(p.r1))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(v: &[(f64, f64)]) -> Vec<RatePoint2> {
        v.iter().map(|&(a, b)| RatePoint2::new(a, b)).collect()
    }

    #[test]
    fn pentagon_shapes() {
        let p = make_pentagon(1.0, 1.0, 1.5).unwrap();
        assert_eq!(
            p.vertices(),
            pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 1.0)])
        );
        let rect = make_pentagon(1.0, 1.0, 3.0).unwrap();
        assert_eq!(
            rect.vertices(),
            pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
        );
        let tri = make_pentagon(2.0, 2.0, 1.0).unwrap();
        assert_eq!(tri.vertices(), pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]));
        assert_eq!(make_pentagon(0.0, 0.0, 0.0).unwrap().vertices().len(), 1);
    }

    #[test]
    fn pentagon_rejects_bad_caps() {
        assert!(make_pentagon(-1.0, 1.0, 1.0).is_err());
        assert!(make_pentagon(1.0, f64::NAN, 1.0).is_err());
        assert!(make_pentagon(1.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn containment_with_slack() {
        let p = make_pentagon(1.0, 1.0, 1.5).unwrap();
        assert!(pentagon_contains(&p, RatePoint2::new(0.9, 0.55), 0.0));
        assert!(!pentagon_contains(&p, RatePoint2::new(1.0, 0.6), 0.0));
        assert!(pentagon_contains(&p, RatePoint2::new(1.0, 0.6), 0.2));
    }

    #[test]
    fn single_pentagon_frontier() {
        let p = make_pentagon(1.0, 1.0, 1.5).unwrap();
        let f = frontier_union(&[(p, 0u32)], 3).unwrap();
        assert_eq!(f.points, pts(&[(0.0, 1.0), (0.5, 1.0), (1.0, 0.5)]));
    }

    #[test]
    fn degenerate_single_user_pentagons() {
        let a = make_pentagon(1.0, 0.0, 1.0).unwrap();
        let b = make_pentagon(0.0, 1.0, 1.0).unwrap();
        let f = frontier_union(&[(a, 0u32), (b, 1u32)], 11).unwrap();
        assert_eq!(f.points.first(), Some(&RatePoint2::new(0.0, 1.0)));
        assert_eq!(f.points.last(), Some(&RatePoint2::new(1.0, 0.0)));
        assert_eq!(f.tags[0], 1);
        assert_eq!(*f.tags.last().unwrap(), 0);
    }

    #[test]
    fn empty_and_low_resolution_rejected() {
        assert!(frontier_union::<u32>(&[], 10).is_err());
        let p = make_pentagon(1.0, 1.0, 1.0).unwrap();
        assert!(frontier_union(&[(p, 0u32)], 1).is_err());
    }

    #[test]
    fn ties_go_to_smaller_tag() {
        let p = make_pentagon(1.0, 1.0, 1.5).unwrap();
        let f = frontier_union(&[(p.clone(), 7u32), (p, 3u32)], 5).unwrap();
        assert!(f.tags.iter().all(|&t| t == 3));
    }

    #[test]
    fn gap_examples() {
        let big = frontier_union(&[(make_pentagon(1.0, 1.0, 2.0).unwrap(), 0u8)], 3).unwrap();
        let small = frontier_union(&[(make_pentagon(1.0, 1.0, 1.5).unwrap(), 0u8)], 3).unwrap();
        assert_eq!(frontier_gap(&big, &big), 0.0);
        assert_eq!(frontier_gap(&big, &small), 0.5);
        let tiny = frontier_union(&[(make_pentagon(0.5, 0.5, 0.75).unwrap(), 0u8)], 9).unwrap();
        assert!(frontier_gap(&tiny, &small) < 0.0);
    }

    #[test]
    fn interpolation_beyond_last_point_is_zero() {
        let f = frontier_union(&[(make_pentagon(1.0, 1.0, 1.5).unwrap(), 0u8)], 3).unwrap();
        assert_eq!(f.interpolate(1.5), 0.0);
        assert_eq!(f.interpolate(0.75), 0.75);
    }

    fn caps_strategy() -> impl Strategy<Value = (f64, f64, f64)> {
        (0.0..3.0f64, 0.0..3.0f64, 0.0..5.0f64)
    }

    proptest! {
        #[test]
        fn vertices_match_constraints((b1, b2, bs) in caps_strategy(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let p = make_pentagon(b1, b2, bs).unwrap();
            for v in p.vertices() {
                prop_assert!(p.contains(*v, 1e-12));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..200 {
                let q = RatePoint2::new(rng.random_range(-0.1..3.1), rng.random_range(-0.1..3.1));
                prop_assert_eq!(p.contains(q, 1e-9), point_in_polygon(p.vertices(), q, 1e-9));
            }
        }

        #[test]
        fn union_is_order_independent(
            caps in proptest::collection::vec(caps_strategy(), 1..12),
            rot in 0usize..12,
        ) {
            let list: Vec<_> = caps
                .iter()
                .enumerate()
                .map(|(i, &(a, b, c))| (make_pentagon(a, b, c).unwrap(), i))
                .collect();
            let mut shuffled = list.clone();
            let r = rot % shuffled.len();
            shuffled.rotate_left(r);
            shuffled.reverse();
            let fa = frontier_union(&list, 64).unwrap();
            let fb = frontier_union(&shuffled, 64).unwrap();
            prop_assert_eq!(fa, fb);
        }

        #[test]
        fn single_pentagon_exact_at_samples((b1, b2, bs) in caps_strategy(), res in 2usize..40) {
            let p = make_pentagon(b1, b2, bs).unwrap();
            let caps = p.caps();
            let f = frontier_union(&[(p, ())], res).unwrap();
            for q in &f.points {
                prop_assert_eq!(Some(q.r2), caps.height_at(q.r1));
            }
            prop_assert_eq!(frontier_gap(&f, &f), 0.0);
        }

        #[test]
        fn frontier_is_non_dominated(caps in proptest::collection::vec(caps_strategy(), 1..8)) {
            let list: Vec<_> = caps
                .iter()
                .map(|&(a, b, c)| (make_pentagon(a, b, c).unwrap(), 0u8))
                .collect();
            let f = frontier_union(&list, 50).unwrap();
            for w in f.points.windows(2) {
                prop_assert!(w[0].r1 < w[1].r1);
                prop_assert!(w[0].r2 >= w[1].r2);
            }
            // brute-force envelope at each abscissa
            for q in &f.points {
                let best = list
                    .iter()
                    .filter_map(|(p, _)| p.caps().height_at(q.r1))
                    .fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!(q.r2, best);
            }
        }
    }
}
