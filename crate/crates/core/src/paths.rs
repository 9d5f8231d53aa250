//! Sampled curves, the length functional, and geodesic diagnostics.
//!
//! Curves are finite polylines tagged with the distance they are measured
//! under. Length is the sum of consecutive distances, so refining a sample
//! never shrinks it and every polyline bounds its curve's true length from
//! below. On top of that sit the constructions the metric statements call
//! for: hyperbolic geodesics resampled for the charge-ratio distance, the
//! bent path witnessing non-unique geodesics, wall crossing detection, and
//! the two-sided comparison paths behind the quotient length bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{QuotientPoint, StabPoint};
use crate::error::{Error, Result};
use crate::halfplane::{self, HPoint, MoebiusMap};
use crate::metric;

/// The distance a polyline is measured under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    /// The full metric on stability points.
    D,
    /// The quotient metric on orbits.
    DBar,
    /// The charge-ratio distance on the projected closure.
    DZ,
    /// The hyperbolic metric on the open half-plane.
    DHyp,
    /// The mass half of the full metric.
    DMass,
    /// The mass half of the quotient metric.
    DBarMass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Space {
    Stab,
    Quotient,
    Half,
}

impl MetricKind {
    fn space(self) -> Space {
        match self {
            MetricKind::D | MetricKind::DMass => Space::Stab,
            MetricKind::DBar | MetricKind::DBarMass => Space::Quotient,
            MetricKind::DZ | MetricKind::DHyp => Space::Half,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::D => "d",
            MetricKind::DBar => "d_bar",
            MetricKind::DZ => "d_z",
            MetricKind::DHyp => "d_hyp",
            MetricKind::DMass => "d_mass",
            MetricKind::DBarMass => "d_bar_mass",
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(MetricKind::D),
            "d_bar" => Ok(MetricKind::DBar),
            "d_z" => Ok(MetricKind::DZ),
            "d_hyp" => Ok(MetricKind::DHyp),
            "d_mass" => Ok(MetricKind::DMass),
            "d_bar_mass" => Ok(MetricKind::DBarMass),
            other => Err(Error::BadParameter(format!("unknown metric `{other}`"))),
        }
    }
}

/// A point of one of the three spaces a polyline can live in.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathPoint {
    Stab(StabPoint),
    Quotient(QuotientPoint),
    Half(HPoint),
}

impl PathPoint {
    fn space(&self) -> Space {
        match self {
            PathPoint::Stab(_) => Space::Stab,
            PathPoint::Quotient(_) => Space::Quotient,
            PathPoint::Half(_) => Space::Half,
        }
    }
}

impl From<StabPoint> for PathPoint {
    fn from(p: StabPoint) -> Self {
        PathPoint::Stab(p)
    }
}

impl From<QuotientPoint> for PathPoint {
    fn from(p: QuotientPoint) -> Self {
        PathPoint::Quotient(p)
    }
}

impl From<HPoint> for PathPoint {
    fn from(p: HPoint) -> Self {
        PathPoint::Half(p)
    }
}

fn eval(metric: MetricKind, a: &PathPoint, b: &PathPoint) -> Result<f64> {
    match (metric, a, b) {
        (MetricKind::D, PathPoint::Stab(p), PathPoint::Stab(q)) => Ok(metric::distance(p, q).d),
        (MetricKind::DMass, PathPoint::Stab(p), PathPoint::Stab(q)) => {
            Ok(metric::distance(p, q).d_mass)
        }
        (MetricKind::DBar, PathPoint::Quotient(p), PathPoint::Quotient(q)) => {
            Ok(metric::quotient_distance(p, q).d)
        }
        (MetricKind::DBarMass, PathPoint::Quotient(p), PathPoint::Quotient(q)) => {
            Ok(metric::quotient_distance(p, q).d_mass)
        }
        (MetricKind::DZ, PathPoint::Half(p), PathPoint::Half(q)) => Ok(halfplane::d_z(*p, *q)),
        (MetricKind::DHyp, PathPoint::Half(p), PathPoint::Half(q)) => {
            halfplane::d_hyp(p.z(), q.z())
        }
        _ => Err(Error::MixedSpaces),
    }
}

fn validate(metric: MetricKind, points: &[PathPoint]) -> Result<()> {
    for p in points {
        if p.space() != metric.space() {
            return Err(Error::MixedSpaces);
        }
        if metric == MetricKind::DHyp {
            if let PathPoint::Half(h) = p {
                if h.is_boundary() {
                    return Err(Error::NonPositiveImag(0.0));
                }
            }
        }
    }
    Ok(())
}

/// A finite sample of a curve: at least two points of one space, consecutive
/// points distinct, measured under a fixed distance.
///
/// Serializes as the bare JSON array of its points; the metric tag travels
/// beside it in whatever report embeds the polyline.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(into = "Vec<PathPoint>")]
pub struct Polyline {
    metric: MetricKind,
    points: Vec<PathPoint>,
    params: Option<Vec<f64>>,
}

impl From<Polyline> for Vec<PathPoint> {
    fn from(p: Polyline) -> Self {
        p.points
    }
}

impl Polyline {
    pub fn new<I, P>(metric: MetricKind, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<PathPoint>,
    {
        let points: Vec<PathPoint> = points.into_iter().map(Into::into).collect();
        if points.len() < 2 {
            return Err(Error::DegeneratePolyline);
        }
        validate(metric, &points)?;
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegeneratePolyline);
        }
        Ok(Polyline { metric, points, params: None })
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn points(&self) -> &[PathPoint] {
        &self.points
    }

    /// Parameter table attached by [`reparametrize_arclength`], if any.
    pub fn parameters(&self) -> Option<&[f64]> {
        self.params.as_deref()
    }

    /// Running length at each sample, starting at 0.
    pub fn cumulative_lengths(&self) -> Vec<f64> {
        let mut acc = Vec::with_capacity(self.points.len());
        let mut total = 0.0;
        acc.push(0.0);
        for w in self.points.windows(2) {
            total += eval(self.metric, &w[0], &w[1]).expect("validated at construction");
            acc.push(total);
        }
        acc
    }

    pub fn length(&self) -> f64 {
        *self.cumulative_lengths().last().expect("at least two points")
    }

    /// A copy with `point` inserted at position `index`, revalidated.
    pub fn insert(&self, index: usize, point: impl Into<PathPoint>) -> Result<Polyline> {
        if index > self.points.len() {
            return Err(Error::BadParameter(format!(
                "insertion index {index} past the end of {} points",
                self.points.len()
            )));
        }
        let mut points = self.points.clone();
        points.insert(index, point.into());
        Polyline::new(self.metric, points)
    }

    /// CSV rows for plotting: parameter, the point's coordinates, cumulative
    /// length. The parameter column is the stored table when present, else
    /// the normalized cumulative length.
    pub fn to_csv(&self) -> String {
        let cums = self.cumulative_lengths();
        let total = *cums.last().expect("nonempty");
        let coord_header = match self.metric.space() {
            Space::Half => "re,im",
            Space::Stab => "form,tau_re,tau_im,k,alpha,beta,x,y",
            Space::Quotient => "form,tau_re,tau_im,k,alpha,beta",
        };
        let mut out = format!("parameter,{coord_header},cumulative_length\n");
        for (i, p) in self.points.iter().enumerate() {
            let param = match &self.params {
                Some(s) => s[i],
                None if total > 0.0 => cums[i] / total,
                None => i as f64 / (self.points.len() - 1) as f64,
            };
            out.push_str(&format!("{param},{},{}\n", csv_coords(p), cums[i]));
        }
        out
    }
}

fn csv_coords(p: &PathPoint) -> String {
    match p {
        PathPoint::Half(h) => format!("{},{}", h.z().re, h.z().im),
        PathPoint::Stab(s) => match *s {
            StabPoint::Geometric { tau, x, y } => {
                format!("geometric,{},{},,,,{x},{y}", tau.re, tau.im)
            }
            StabPoint::Boundary { tau, x, y } => format!("boundary,{tau},0,,,,{x},{y}"),
            StabPoint::Algebraic { k, alpha, beta, x, y } => {
                format!("algebraic,,,{k},{alpha},{beta},{x},{y}")
            }
        },
        PathPoint::Quotient(q) => match *q {
            QuotientPoint::Geometric { tau } => format!("geometric,{},{},,,", tau.re, tau.im),
            QuotientPoint::Boundary { tau } => format!("boundary,{tau},0,,,"),
            QuotientPoint::Algebraic { k, alpha, beta } => {
                format!("algebraic,,,{k},{alpha},{beta}")
            }
        },
    }
}

/// Sum of consecutive distances under the polyline's metric. Monotone under
/// refinement and bounded below by the endpoint distance; mixed spaces are
/// already rejected when the polyline is built.
pub fn path_length(gamma: &Polyline) -> f64 {
    gamma.length()
}

/// Outcome of a sampled additivity check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicReport {
    /// Worst `|d(a, c) - d(a, b) - d(b, c)|` over sampled triples.
    pub additivity_defect: f64,
    /// Tolerance the verdict refers to.
    pub is_geodesic_within: f64,
}

impl GeodesicReport {
    pub fn passes(&self) -> bool {
        self.additivity_defect <= self.is_geodesic_within
    }
}

/// Largest additivity defect over all ordered triples of the sample. A
/// defect within `tol` certifies (at this resolution) that the samples lie
/// on a curve admitting a geodesic reparametrization.
///
/// Distances are cached pairwise first, so the triple sweep is pure
/// arithmetic; cost is quadratic in evaluations and cubic in float ops.
pub fn additivity_check<P>(points: &[P], metric: MetricKind, tol: f64) -> Result<GeodesicReport>
where
    P: Into<PathPoint> + Copy,
{
    let pts: Vec<PathPoint> = points.iter().map(|&p| p.into()).collect();
    validate(metric, &pts)?;
    let n = pts.len();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = eval(metric, &pts[i], &pts[j])?;
            dist[i * n + j] = d;
        }
    }
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = dist[i * n + j];
            for k in (j + 1)..n {
                let gap = (dist[i * n + k] - dij - dist[j * n + k]).abs();
                defect = defect.max(gap);
            }
        }
    }
    Ok(GeodesicReport { additivity_defect: defect, is_geodesic_within: tol })
}

/// Reparametrize additive samples by normalized arclength: parameter
/// `s_i = d(p_0, p_i) / d(p_0, p_end)`. On the result,
/// `d(q_i, q_j) = |s_i - s_j| * d(ends)` holds within the additivity defect.
pub fn reparametrize_arclength<P>(
    samples: &[P],
    metric: MetricKind,
    tol: f64,
) -> Result<Polyline>
where
    P: Into<PathPoint> + Copy,
{
    let report = additivity_check(samples, metric, tol)?;
    if !report.passes() {
        return Err(Error::NotGeodesic { defect: report.additivity_defect, tol });
    }
    let pts: Vec<PathPoint> = samples.iter().map(|&p| p.into()).collect();
    let mut s = Vec::with_capacity(pts.len());
    s.push(0.0);
    for (i, p) in pts.iter().enumerate().skip(1) {
        let v = eval(metric, &pts[0], p)?;
        if v <= *s.last().expect("nonempty") {
            return Err(Error::NonIncreasingLength { segment: i });
        }
        s.push(v);
    }
    let total = *s.last().expect("nonempty");
    let params: Vec<f64> = s.iter().map(|v| v / total).collect();
    let mut line = Polyline::new(metric, pts)?;
    line.params = Some(params);
    Ok(line)
}

/// The point at charge-ratio arclength fraction `s` along the hyperbolic
/// geodesic from `p1` to `p2`, found by bisection in the hyperbolic
/// arclength parameter (the charge-ratio distance from `p1` grows
/// monotonically along the geodesic).
pub fn dz_geodesic_point(p1: HPoint, p2: HPoint, s: f64) -> Result<HPoint> {
    if p1.is_boundary() || p2.is_boundary() {
        return Err(Error::BoundaryPoint);
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::BadParameter(format!(
            "arclength fraction {s} outside [0, 1]"
        )));
    }
    // Also rejects coincident inputs.
    let rho = halfplane::normalize_to_axis(p1.z(), p2.z())?;
    if s == 0.0 {
        return Ok(p1);
    }
    if s == 1.0 {
        return Ok(p2);
    }
    let inv = rho.inverse();
    let v1 = rho.apply(p1.z()).im;
    let at = |u: f64| -> HPoint {
        // u = 0 is p1 (height v1), u = 1 is p2 (height 1).
        let v = v1.powf(1.0 - u);
        HPoint::from_complex(inv.apply(Complex64::new(0.0, v))).expect("interior image")
    };
    let target = s * halfplane::d_z(p1, p2);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if halfplane::d_z(p1, at(mid)) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(at(0.5 * (lo + hi)))
}

/// A point of the half-circle geodesic over center `c`, radius `r`, in the
/// hyperbolic arclength coordinate: `theta(s) = 2 atan(e^s)`, so `s -> -inf`
/// approaches `c + r` and `s -> +inf` approaches `c - r`.
fn circle_point(c: f64, r: f64, s: f64) -> Complex64 {
    let t = s.exp();
    let denom = 1.0 + t * t;
    Complex64::new(c + r * (1.0 - t * t) / denom, r * 2.0 * t / denom)
}

/// Arclength coordinate of an interior point on the circle `(c, r)`,
/// evaluated cancellation-free on both halves.
fn circle_param(c: f64, r: f64, z: Complex64) -> f64 {
    let dx = z.re - c;
    if dx >= 0.0 {
        z.im.ln() - (r + dx).ln()
    } else {
        (r - dx).ln() - z.im.ln()
    }
}

fn push_distinct(pts: &mut Vec<PathPoint>, p: PathPoint) {
    if pts.last() != Some(&p) {
        pts.push(p);
    }
}

fn sample_geodesic_points(a: HPoint, b: HPoint, n: usize, eps: f64) -> Result<Vec<HPoint>> {
    if n < 2 {
        return Err(Error::BadParameter(format!("need at least 2 samples, got {n}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::BadParameter(format!(
            "boundary resolution {eps} outside (0, 1)"
        )));
    }
    // Samples may approach a real endpoint only to within roughly eps of it
    // (in the circle's own scale); the exact endpoint is then appended, so
    // the one unresolved jump carries O(eps) length.
    let pad = (1.0 / eps).ln() + 2.0;
    let za = a.z();
    let zb = b.z();
    match (a.is_boundary(), b.is_boundary()) {
        (false, false) => {
            let rho = halfplane::normalize_to_axis(za, zb)?;
            let inv = rho.inverse();
            let v1 = rho.apply(za).im;
            let mut out = Vec::with_capacity(n);
            out.push(a);
            for j in 1..n - 1 {
                let u = j as f64 / (n - 1) as f64;
                let z = inv.apply(Complex64::new(0.0, v1.powf(1.0 - u)));
                out.push(HPoint::from_complex(z).expect("interior image"));
            }
            out.push(b);
            Ok(out)
        }
        (false, true) => {
            let t = zb.re;
            let scale = za.norm().max(t.abs()).max(1.0);
            let mut out = Vec::with_capacity(n + 1);
            if (za.re - t).abs() <= 1e-14 * scale {
                // Vertical ray straight down to t.
                out.push(a);
                for j in 1..n {
                    let sigma = pad * j as f64 / (n - 1) as f64;
                    let z = Complex64::new(t, za.im * (-sigma).exp());
                    out.push(HPoint::from_complex(z).expect("interior image"));
                }
            } else {
                let c = (za.norm_sqr() - t * t) / (2.0 * (za.re - t));
                let r = (za - c).norm();
                let s_a = circle_param(c, r, za);
                // Head for whichever circle end b sits on.
                let s_end = if t > c {
                    (-pad).min(s_a - 2.0)
                } else {
                    pad.max(s_a + 2.0)
                };
                out.push(a);
                for j in 1..n {
                    let s = s_a + (s_end - s_a) * j as f64 / (n - 1) as f64;
                    out.push(HPoint::from_complex(circle_point(c, r, s)).expect("interior"));
                }
            }
            out.push(b);
            Ok(out)
        }
        (true, false) => {
            let mut out = sample_geodesic_points(b, a, n, eps)?;
            out.reverse();
            Ok(out)
        }
        (true, true) => {
            if za.re == zb.re {
                return Err(Error::CoincidentPoints);
            }
            let c = 0.5 * (za.re + zb.re);
            let r = 0.5 * (zb.re - za.re).abs();
            // a occupies the s = +inf end exactly when it is the lower one.
            let (s_from, s_to) = if za.re < zb.re { (pad, -pad) } else { (-pad, pad) };
            let mut out = Vec::with_capacity(n + 2);
            out.push(a);
            for j in 0..n {
                let s = s_from + (s_to - s_from) * j as f64 / (n - 1) as f64;
                out.push(HPoint::from_complex(circle_point(c, r, s)).expect("interior"));
            }
            out.push(b);
            Ok(out)
        }
    }
}

/// Sample the hyperbolic geodesic between two closure points as a polyline
/// under the charge-ratio distance.
///
/// Interior endpoints are hit exactly; a real endpoint is appended exactly
/// after the samples have closed in on it to resolution `eps`, which keeps
/// the final unresolved segment at O(eps) length. `n_samples` counts the
/// points along the open arc.
pub fn sample_hyperbolic_geodesic(
    a: HPoint,
    b: HPoint,
    n_samples: usize,
    eps: f64,
) -> Result<Polyline> {
    let pts = sample_geodesic_points(a, b, n_samples, eps)?;
    let mut out: Vec<PathPoint> = Vec::with_capacity(pts.len());
    for p in pts {
        push_distinct(&mut out, p.into());
    }
    Polyline::new(MetricKind::DZ, out)
}

/// The bent competitor to the hyperbolic geodesic: the preimages under
/// `z -> 10 - 1/z` of the straight segments from `9i` to `eps + 10i` and on
/// to `11i`, sampled evenly leg by leg. For small `eps` this path is still
/// additive under the charge-ratio distance while leaving the hyperbolic
/// geodesic between its endpoints by a visible margin at the bend.
pub fn bent_geodesic(eps: f64) -> Result<Polyline> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::BadParameter(format!("bend offset must be positive, got {eps}")));
    }
    let rho = MoebiusMap::new(10.0, -1.0, 1.0, 0.0).expect("unit determinant");
    let inv = rho.inverse();
    let legs = [
        (Complex64::new(0.0, 9.0), Complex64::new(eps, 10.0)),
        (Complex64::new(eps, 10.0), Complex64::new(0.0, 11.0)),
    ];
    let per_leg = 128usize;
    let mut pts: Vec<PathPoint> = Vec::with_capacity(2 * per_leg + 1);
    for (li, (w0, w1)) in legs.iter().enumerate() {
        let start = if li == 0 { 0 } else { 1 };
        for j in start..=per_leg {
            let w = if j == 0 {
                *w0
            } else if j == per_leg {
                *w1
            } else {
                w0 + (w1 - w0) * (j as f64 / per_leg as f64)
            };
            let p = HPoint::from_complex(inv.apply(w)).expect("interior image");
            push_distinct(&mut pts, p.into());
        }
    }
    Polyline::new(MetricKind::DZ, pts)
}

/// Chamber and chart coordinates of a non-geometric point, with the wall
/// parametrized by `beta = 1`.
fn wall_chart(p: &StabPoint) -> Option<(i64, f64, f64)> {
    match *p {
        StabPoint::Boundary { tau, .. } => {
            let k = tau.floor();
            Some((k as i64, (k + 1.0 - tau).ln() - (tau - k).ln(), 1.0))
        }
        StabPoint::Algebraic { k, alpha, beta, .. } => Some((k, alpha, beta)),
        StabPoint::Geometric { .. } => None,
    }
}

/// Wall points met by a polyline of stability points or orbits.
///
/// A segment with one geometric and one algebraic endpoint is interpolated
/// linearly in the algebraic chamber's chart and contributes the point where
/// `beta` passes 1. A segment joining algebraic points of two different
/// chambers leaves both charts, so it contributes each endpoint's own wall
/// projection instead. Segments that stay on one side, and half-plane
/// polylines, contribute nothing.
pub fn boundary_crossings(gamma: &Polyline) -> Vec<PathPoint> {
    let mut out = Vec::new();
    for w in gamma.points().windows(2) {
        match (&w[0], &w[1]) {
            (PathPoint::Stab(p), PathPoint::Stab(q)) => {
                for c in stab_crossings(p, q) {
                    out.push(PathPoint::Stab(c));
                }
            }
            (PathPoint::Quotient(p), PathPoint::Quotient(q)) => {
                for c in stab_crossings(&p.representative(), &q.representative()) {
                    out.push(PathPoint::Quotient(c.quotient()));
                }
            }
            _ => {}
        }
    }
    out
}

fn stab_crossings(p: &StabPoint, q: &StabPoint) -> Vec<StabPoint> {
    match (p.is_geometric(), q.is_geometric()) {
        (true, true) => Vec::new(),
        (true, false) | (false, true) => {
            let (geo, alg) = if p.is_geometric() { (p, q) } else { (q, p) };
            let Some((k, a1, b1)) = wall_chart(alg) else { return Vec::new() };
            if b1 <= 1.0 {
                // The non-geometric endpoint already sits on the wall.
                return Vec::new();
            }
            let ch = geo.to_chart(k).expect("geometric points carry every chart");
            let t = (1.0 - ch.beta) / (b1 - ch.beta);
            let lerp = |u: f64, v: f64| u + (v - u) * t;
            StabPoint::algebraic(
                k,
                lerp(ch.alpha, a1),
                1.0,
                lerp(ch.x, alg.x()),
                lerp(ch.y, alg.y()),
            )
            .map(|c| vec![c])
            .unwrap_or_default()
        }
        (false, false) => {
            let (Some((kp, ..)), Some((kq, ..))) = (wall_chart(p), wall_chart(q)) else {
                return Vec::new();
            };
            if kp == kq {
                return Vec::new();
            }
            // No common chart: the segment is read as leaving through each
            // endpoint's own wall.
            [p, q]
                .iter()
                .filter(|s| s.is_algebraic())
                .map(|s| s.project_closure())
                .collect()
        }
    }
}

fn closure_hpoint(q: &QuotientPoint) -> HPoint {
    match q.project_closure() {
        QuotientPoint::Geometric { tau } => HPoint::from_complex(tau),
        QuotientPoint::Boundary { tau } => HPoint::new(tau, 0.0),
        QuotientPoint::Algebraic { .. } => unreachable!("projection has no algebraic points"),
    }
    .expect("closure projections avoid integer tau")
}

fn quotient_of_hpoint(h: &HPoint) -> QuotientPoint {
    let z = h.z();
    if h.is_boundary() {
        QuotientPoint::Boundary { tau: z.re }
    } else {
        QuotientPoint::Geometric { tau: z }
    }
}

/// The comparison path behind the two-sided length bound: project both
/// orbits to the closure, sample the hyperbolic geodesic between the
/// projections, and climb back out to each algebraic endpoint along a
/// straight `beta` segment at fixed `alpha` (each such leg has quotient
/// length `(beta - 1)/2` exactly). Returned under the quotient metric.
pub fn composite_path(
    q1: &QuotientPoint,
    q2: &QuotientPoint,
    eps: f64,
    n_samples: usize,
) -> Result<Polyline> {
    if q1.is_geometric() && q2.is_geometric() {
        return Err(Error::NoAlgebraicEndpoint);
    }
    let h1 = closure_hpoint(q1);
    let h2 = closure_hpoint(q2);
    let mut pts: Vec<PathPoint> = Vec::with_capacity(n_samples + 4);

    // Descend from the first endpoint to its wall projection.
    if let QuotientPoint::Algebraic { .. } = q1 {
        push_distinct(&mut pts, (*q1).into());
    }
    push_distinct(&mut pts, quotient_of_hpoint(&h1).into());

    let scale = h1.z().norm().max(h2.z().norm()).max(1.0);
    if (h1.z() - h2.z()).norm() > 1e-15 * scale {
        for h in sample_geodesic_points(h1, h2, n_samples, eps)? {
            push_distinct(&mut pts, quotient_of_hpoint(&h).into());
        }
    }

    push_distinct(&mut pts, quotient_of_hpoint(&h2).into());
    if let QuotientPoint::Algebraic { .. } = q2 {
        push_distinct(&mut pts, (*q2).into());
    }
    Polyline::new(MetricKind::DBar, pts)
}

/// The straight chart segment between two orbits of one algebraic chamber,
/// interpolating `(alpha, beta)` linearly. Its length telescopes to the
/// quotient distance `max(|d alpha|, |d beta|) / 2`, which is what makes the
/// closed chamber a geodesic space.
pub fn straight_chamber_path(
    q1: &QuotientPoint,
    q2: &QuotientPoint,
    n_samples: usize,
) -> Result<Polyline> {
    if n_samples < 2 {
        return Err(Error::BadParameter(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    let r1 = q1.representative();
    let r2 = q2.representative();
    let (Some((k1, a1, b1)), Some((k2, a2, b2))) = (wall_chart(&r1), wall_chart(&r2)) else {
        return Err(Error::NoAlgebraicEndpoint);
    };
    if k1 != k2 {
        return Err(Error::ChamberMismatch { have: k2, want: k1 });
    }
    let mut pts: Vec<PathPoint> = Vec::with_capacity(n_samples);
    for j in 0..n_samples {
        let p = if j == 0 {
            *q1
        } else if j == n_samples - 1 {
            *q2
        } else {
            let t = j as f64 / (n_samples - 1) as f64;
            // Interpolated beta stays at or above the wall.
            QuotientPoint::algebraic(k1, a1 + (a2 - a1) * t, b1 + (b2 - b1) * t)?
        };
        push_distinct(&mut pts, p.into());
    }
    Polyline::new(MetricKind::DBar, pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::ChartPoint;
    use crate::metric::{distance, quotient_distance};

    fn h(re: f64, im: f64) -> HPoint {
        HPoint::new(re, im).unwrap()
    }

    fn sigma1() -> StabPoint {
        StabPoint::geometric(Complex64::new(0.5, 10.0), 0.0, 0.0).unwrap()
    }

    fn sigma2() -> StabPoint {
        StabPoint::boundary(0.5, 0.5 * 401.0f64.sqrt().ln(), 0.0).unwrap()
    }

    fn sigma3() -> StabPoint {
        StabPoint::algebraic(0, 0.0, 1.1, 0.5 * 401.0f64.sqrt().ln() - 2.0f64.ln(), 0.0).unwrap()
    }

    #[test]
    fn two_point_length_is_the_distance() {
        let line = Polyline::new(MetricKind::D, [sigma1(), sigma3()]).unwrap();
        assert_eq!(path_length(&line), distance(&sigma1(), &sigma3()).d);

        let line = Polyline::new(MetricKind::DZ, [h(0.0, 1.0), h(0.0, 2.0)]).unwrap();
        assert!((path_length(&line) - 2.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn separating_chain_length() {
        let line = Polyline::new(MetricKind::D, [sigma1(), sigma2(), sigma3()]).unwrap();
        let leg2 = distance(&sigma2(), &sigma3()).d;
        assert!((leg2 - 0.1).abs() < 1e-12, "wall-to-deformed gap: {leg2}");
        let expected = 0.25 * 401.0f64.ln() + leg2;
        assert!((path_length(&line) - expected).abs() < 1e-12);
        assert!(path_length(&line) >= 0.25 * 401.0f64.ln() + 0.05);
    }

    #[test]
    fn refinement_never_shortens() {
        let line = Polyline::new(
            MetricKind::D,
            [sigma1(), sigma3(), StabPoint::algebraic(2, 0.3, 1.6, 0.0, 0.4).unwrap()],
        )
        .unwrap();
        let before = path_length(&line);
        let refined = line
            .insert(1, StabPoint::geometric(Complex64::new(0.2, 0.7), 0.5, -0.5).unwrap())
            .unwrap();
        assert!(path_length(&refined) >= before - 1e-12);
        // Endpoint distance stays a lower bound.
        let ends = distance(&sigma1(), &StabPoint::algebraic(2, 0.3, 1.6, 0.0, 0.4).unwrap()).d;
        assert!(path_length(&refined) >= ends - 1e-12);
    }

    #[test]
    fn vertical_triple_under_the_hyperbolic_metric() {
        let pts = [h(0.0, 1.0), h(0.0, 2.0), h(0.0, 4.0)];
        let line = Polyline::new(MetricKind::DHyp, pts).unwrap();
        assert!((path_length(&line) - 4.0f64.ln()).abs() < 1e-14);

        let report = additivity_check(&pts, MetricKind::DHyp, 1e-12).unwrap();
        assert!(report.passes(), "defect {}", report.additivity_defect);

        let re = reparametrize_arclength(&pts, MetricKind::DHyp, 1e-12).unwrap();
        let params = re.parameters().unwrap();
        assert!((params[0] - 0.0).abs() == 0.0);
        assert!((params[1] - 0.5).abs() < 1e-14);
        assert!((params[2] - 1.0).abs() == 0.0);
    }

    #[test]
    fn strict_triangle_has_positive_defect() {
        let pts = [h(0.0, 1.0), h(1.0, 1.0), h(0.0, 2.0)];
        let report = additivity_check(&pts, MetricKind::DHyp, 1e-9).unwrap();
        let expected = 2.0 * 1.5f64.acosh() - 2.0f64.ln();
        assert!((report.additivity_defect - expected).abs() < 1e-12);
        assert!(!report.passes());
        assert!(reparametrize_arclength(&pts, MetricKind::DHyp, 1e-9).is_err());
    }

    #[test]
    fn charge_ratio_point_splits_the_vertical_segment() {
        let q = dz_geodesic_point(h(0.0, 1.0), h(0.0, 2.0), 0.5).unwrap();
        assert!(q.z().re.abs() < 1e-12);
        assert!((q.z().im - std::f64::consts::SQRT_2).abs() < 1e-9);
        let half = 0.5 * 2.0f64.ln();
        assert!((halfplane::d_z(h(0.0, 1.0), q) - half).abs() < 1e-9);
        assert!((halfplane::d_z(q, h(0.0, 2.0)) - half).abs() < 1e-9);
    }

    #[test]
    fn charge_ratio_point_endpoints_and_ratios() {
        let a = h(0.3, 0.8);
        let b = h(2.4, 1.7);
        assert_eq!(dz_geodesic_point(a, b, 0.0).unwrap(), a);
        assert_eq!(dz_geodesic_point(a, b, 1.0).unwrap(), b);
        let third = dz_geodesic_point(a, b, 1.0 / 3.0).unwrap();
        let d1 = halfplane::d_z(a, third);
        let d2 = halfplane::d_z(third, b);
        assert!((2.0 * d1 - d2).abs() < 1e-9, "1:2 split, got {d1} vs {d2}");

        assert!(dz_geodesic_point(a, a, 0.5).is_err());
        assert!(dz_geodesic_point(a, b, 1.5).is_err());
        assert!(dz_geodesic_point(h(0.5, 0.0), b, 0.5).is_err());
    }

    #[test]
    fn sampled_hyperbolic_geodesics_stay_additive() {
        let pairs = [
            (h(0.0, 1.0), h(0.0, 2.0)),
            (h(0.3, 0.8), h(2.4, 1.7)),
            (h(0.5, 10.0), h(-1.3, 0.4)),
        ];
        for (a, b) in pairs {
            let line = sample_hyperbolic_geodesic(a, b, 33, 1e-9).unwrap();
            let report = additivity_check(line.points(), MetricKind::DZ, 1e-9).unwrap();
            assert!(report.passes(), "defect {}", report.additivity_defect);
            assert!(
                (path_length(&line) - halfplane::d_z(a, b)).abs() < 1e-9,
                "sampled length equals the endpoint distance on a geodesic"
            );
            let re = reparametrize_arclength(line.points(), MetricKind::DZ, 1e-9).unwrap();
            let params = re.parameters().unwrap();
            let total = halfplane::d_z(a, b);
            for (i, p) in re.points().iter().enumerate() {
                let (PathPoint::Half(q0), PathPoint::Half(qi)) = (&re.points()[0], p) else {
                    unreachable!()
                };
                let want = params[i] * total;
                assert!((halfplane::d_z(*q0, *qi) - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn geodesic_sampling_reaches_real_endpoints_exactly() {
        let a = h(0.5, 10.0);
        let b = h(0.5, 0.0);
        let line = sample_hyperbolic_geodesic(a, b, 64, 1e-9).unwrap();
        assert_eq!(line.points()[0], PathPoint::Half(a));
        assert_eq!(*line.points().last().unwrap(), PathPoint::Half(b));
        // The vertical drop has charge-ratio length equal to the distance.
        assert!((path_length(&line) - halfplane::d_z(a, b)).abs() < 1e-6);

        let wall = sample_hyperbolic_geodesic(h(0.5, 0.0), h(2.5, 0.0), 64, 1e-9).unwrap();
        assert!((path_length(&wall) - halfplane::d_z(h(0.5, 0.0), h(2.5, 0.0))).abs() < 1e-6);
        for p in wall.points() {
            let PathPoint::Half(q) = p else { unreachable!() };
            assert!(q.z().im >= 0.0);
        }
    }

    #[test]
    fn bent_path_endpoints_and_vertex() {
        let line = bent_geodesic(0.01).unwrap();
        let first = match line.points()[0] {
            PathPoint::Half(p) => p.z(),
            _ => unreachable!(),
        };
        let last = match *line.points().last().unwrap() {
            PathPoint::Half(p) => p.z(),
            _ => unreachable!(),
        };
        let e1 = Complex64::new(10.0 / 181.0, 9.0 / 181.0);
        let e2 = Complex64::new(10.0 / 221.0, 11.0 / 221.0);
        assert!((first - e1).norm() < 1e-15);
        assert!((last - e2).norm() < 1e-15);

        let vertex = match line.points()[128] {
            PathPoint::Half(p) => p.z(),
            _ => unreachable!(),
        };
        let expected = Complex64::new(1.0, 0.0) / Complex64::new(9.99, -10.0);
        assert!((vertex - expected).norm() < 1e-15);

        assert!(bent_geodesic(0.0).is_err());
        assert!(bent_geodesic(-1.0).is_err());
    }

    #[test]
    fn bent_path_is_additive_but_off_the_geodesic() {
        let line = bent_geodesic(0.01).unwrap();
        let report = additivity_check(line.points(), MetricKind::DZ, 1e-9).unwrap();
        assert!(report.passes(), "bent path defect {}", report.additivity_defect);

        // Separation from the competing geodesic is measured hyperbolically,
        // the only scale-free choice: send the endpoint geodesic to the
        // imaginary axis and read off the vertex offset there.
        let e1 = Complex64::new(10.0 / 181.0, 9.0 / 181.0);
        let e2 = Complex64::new(10.0 / 221.0, 11.0 / 221.0);
        let rho = halfplane::normalize_to_axis(e1, e2).unwrap();
        let vertex = Complex64::new(1.0, 0.0) / Complex64::new(9.99, -10.0);
        let w = rho.apply(vertex);
        let gap = (w.re / w.im).abs().asinh();
        // The straight-leg picture puts the vertex eps away from an axis at
        // height 10, so the gap sits near eps / 10.
        assert!((gap - 1e-3).abs() < 1e-4, "vertex sits {gap} off the geodesic");
        assert!(gap > 1e-4);
    }

    #[test]
    fn crossing_detection_on_chart_segments() {
        // A straight chart segment passing the wall exactly once.
        let geo = ChartPoint::new(0, 0.2, 0.5, 0.1, 0.3).unwrap().to_stab().unwrap();
        let alg = StabPoint::algebraic(0, 0.2, 1.1, 0.1, 0.3).unwrap();
        let line = Polyline::new(MetricKind::D, [geo, alg]).unwrap();
        let crossings = boundary_crossings(&line);
        assert_eq!(crossings.len(), 1);
        let PathPoint::Stab(c) = crossings[0] else { unreachable!() };
        assert!(c.is_boundary());
        // Fixed alpha pins the crossing to the same wall parameter.
        let wall = StabPoint::algebraic(0, 0.2, 1.0, 0.1, 0.3).unwrap();
        assert!(c.canonically_equal(&wall, 1e-12));

        let all_geo = Polyline::new(
            MetricKind::D,
            [sigma1(), StabPoint::geometric(Complex64::new(0.0, 1.0), 0.0, 0.0).unwrap()],
        )
        .unwrap();
        assert!(boundary_crossings(&all_geo).is_empty());
    }

    #[test]
    fn crossing_detection_on_the_separating_pair() {
        let line = Polyline::new(MetricKind::D, [sigma1(), sigma3()]).unwrap();
        let crossings = boundary_crossings(&line);
        assert_eq!(crossings.len(), 1);
        let PathPoint::Stab(c) = crossings[0] else { unreachable!() };
        let StabPoint::Boundary { tau, .. } = c else { panic!("wall point expected") };
        assert!((tau - 0.5).abs() < 1e-5, "crossing stays near tau = 1/2, got {tau}");

        // Different chambers: both wall projections are reported.
        let a = StabPoint::algebraic(0, 0.0, 1.2, 0.0, 0.0).unwrap();
        let b = StabPoint::algebraic(2, 0.4, 1.5, 0.0, 0.0).unwrap();
        let line = Polyline::new(MetricKind::D, [a, b]).unwrap();
        let crossings = boundary_crossings(&line);
        assert_eq!(crossings.len(), 2);
        for c in &crossings {
            let PathPoint::Stab(p) = c else { unreachable!() };
            assert!(p.is_boundary());
        }
    }

    #[test]
    fn composite_path_length_brackets() {
        let q_geo = QuotientPoint::geometric(Complex64::new(0.5, 0.5)).unwrap();
        let q_alg = QuotientPoint::algebraic(0, 0.0, 1.3).unwrap();
        let q_wall = QuotientPoint::boundary(0.5).unwrap();

        let with_leg = composite_path(&q_geo, &q_alg, 1e-9, 64).unwrap();
        let bare = composite_path(&q_geo, &q_wall, 1e-9, 64).unwrap();
        let leg = path_length(&with_leg) - path_length(&bare);
        assert!((leg - 0.15).abs() < 1e-6, "wall-to-beta leg length {leg}");
        assert!(bare.points().iter().all(|p| {
            let PathPoint::Quotient(q) = p else { return false };
            !q.is_algebraic()
        }));

        for (a, b) in [
            (q_geo, q_alg),
            (q_alg, QuotientPoint::algebraic(3, 1.0, 1.5).unwrap()),
            (q_wall, q_alg),
        ] {
            let line = composite_path(&a, &b, 1e-9, 64).unwrap();
            let d = quotient_distance(&a, &b).d;
            let len = path_length(&line);
            assert!(len >= d - 1e-9, "length below the distance: {len} < {d}");
            assert!(len <= 2.0 * d + 0.05 + 1e-6, "bound breached: {len} vs {d}");
        }

        let other_geo = QuotientPoint::geometric(Complex64::new(0.0, 1.0)).unwrap();
        assert!(matches!(
            composite_path(&q_geo, &other_geo, 1e-9, 64),
            Err(Error::NoAlgebraicEndpoint)
        ));
    }

    #[test]
    fn straight_chamber_path_attains_the_distance() {
        let a = QuotientPoint::algebraic(0, 0.0, 1.1).unwrap();
        let b = QuotientPoint::algebraic(0, 1.0, 1.3).unwrap();
        let line = straight_chamber_path(&a, &b, 17).unwrap();
        let d = quotient_distance(&a, &b).d;
        assert!((d - 0.5).abs() < 1e-12);
        assert!((path_length(&line) - d).abs() < 1e-9);

        // A wall endpoint enters through its chart parameters.
        let wall = QuotientPoint::boundary(0.5).unwrap();
        let c = QuotientPoint::algebraic(0, 1.0, 1.4).unwrap();
        let line = straight_chamber_path(&wall, &c, 9).unwrap();
        let d = quotient_distance(&wall, &c).d;
        assert!((d - 0.5).abs() < 1e-12);
        assert!((path_length(&line) - d).abs() < 1e-9);

        let elsewhere = QuotientPoint::algebraic(1, 0.0, 1.2).unwrap();
        assert!(matches!(
            straight_chamber_path(&a, &elsewhere, 9),
            Err(Error::ChamberMismatch { have: 1, want: 0 })
        ));
        let geo = QuotientPoint::geometric(Complex64::new(0.0, 1.0)).unwrap();
        assert!(matches!(
            straight_chamber_path(&a, &geo, 9),
            Err(Error::NoAlgebraicEndpoint)
        ));
    }

    #[test]
    fn polyline_validation() {
        assert!(matches!(
            Polyline::new(MetricKind::D, [sigma1()]),
            Err(Error::DegeneratePolyline)
        ));
        assert!(matches!(
            Polyline::new(MetricKind::D, [sigma1(), sigma1()]),
            Err(Error::DegeneratePolyline)
        ));
        let mixed = [PathPoint::from(sigma1()), PathPoint::from(h(0.0, 1.0))];
        assert!(matches!(
            Polyline::new(MetricKind::D, mixed),
            Err(Error::MixedSpaces)
        ));
        assert!(matches!(
            Polyline::new(MetricKind::DBar, [sigma1(), sigma3()]),
            Err(Error::MixedSpaces)
        ));
        assert!(matches!(
            Polyline::new(MetricKind::DHyp, [h(0.5, 0.0), h(0.0, 1.0)]),
            Err(Error::NonPositiveImag(_))
        ));
        // The charge-ratio metric does accept wall points.
        assert!(Polyline::new(MetricKind::DZ, [h(0.5, 0.0), h(0.0, 1.0)]).is_ok());
    }

    #[test]
    fn csv_and_json_emission() {
        let line = Polyline::new(MetricKind::DZ, [h(0.0, 1.0), h(0.0, 2.0), h(1.0, 4.0)]).unwrap();
        let csv = line.to_csv();
        let mut rows = csv.lines();
        assert_eq!(rows.next(), Some("parameter,re,im,cumulative_length"));
        assert_eq!(csv.lines().count(), 4);
        let last = csv.lines().last().unwrap();
        assert!(last.starts_with("1,1,4,"), "normalized parameter rows: {last}");

        let json = serde_json::to_string(&line).unwrap();
        assert!(json.starts_with('['), "a polyline is an array of points: {json}");
        let back: Vec<PathPoint> = serde_json::from_str(&json).unwrap();
        assert_eq!(back.as_slice(), line.points());

        let stab = Polyline::new(MetricKind::D, [sigma2(), sigma3()]).unwrap();
        let csv = stab.to_csv();
        assert!(csv.starts_with("parameter,form,tau_re,tau_im,k,alpha,beta,x,y,cumulative_length"));
        assert!(csv.contains("\n0,boundary,0.5,0,,,,"));
        assert!(csv.contains(",algebraic,,,0,0,1.1,"));
    }

    #[test]
    fn metric_names_round_trip() {
        for kind in [
            MetricKind::D,
            MetricKind::DBar,
            MetricKind::DZ,
            MetricKind::DHyp,
            MetricKind::DMass,
            MetricKind::DBarMass,
        ] {
            let name = kind.to_string();
            assert_eq!(name.parse::<MetricKind>().unwrap(), kind);
            let json = serde_json::to_string(&kind).unwrap();
            assert_eq!(json, format!("\"{name}\""));
        }
        assert!("dz".parse::<MetricKind>().is_err());
    }
}
