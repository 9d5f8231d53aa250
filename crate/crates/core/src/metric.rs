//! The canonical metric on the stability space and its quotient.
//!
//! Both distances decompose into a mass part and a phase part. The mass part
//! always factors through the closure projection and reduces to extrema of
//! `f(n) = ln|tau1 - n| - ln|tau2 - n|` over the integer lattice; the phase
//! part is an arg-spread for geometric pairs and a two-anchor formula in
//! every case involving a chamber. The extrema are found exactly from the
//! critical points of the real extension, not by truncation; truncation
//! lives only in the brute-force oracle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{QuotientPoint, StabPoint};
use crate::error::{Error, Result};
use crate::sheaf::{enumerate_test_objects, mass_phase, SheafClass};

/// Extremes of a lattice function together with the attaining integers.
/// An absent index means the extreme is the unattained tail limit 0; the
/// tail keeps `sup_value >= 0 >= inf_value` in every output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeExtrema {
    pub sup_value: f64,
    pub sup_attained_at: Option<i64>,
    pub inf_value: f64,
    pub inf_attained_at: Option<i64>,
}

/// Real roots of `A t^2 + B t + C`, degenerating gracefully to the linear
/// and constant cases.
fn real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    // Citardauq-style evaluation: q and the two roots are free of the
    // cancellation the textbook formula has for small |c| or small |a|.
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

fn push_adjacent(cands: &mut Vec<i64>, t: f64) {
    if !t.is_finite() {
        return;
    }
    let f = t.floor();
    // Clamp wild roots so the candidate list stays sane.
    let f = f.clamp(-1e15, 1e15) as i64;
    cands.extend((f - 1)..=(f + 2));
}

fn extrema_over<F: Fn(i64) -> f64>(cands: &mut Vec<i64>, f: F) -> LatticeExtrema {
    cands.sort_unstable();
    cands.dedup();
    let mut sup = f64::NEG_INFINITY;
    let mut sup_at = None;
    let mut inf = f64::INFINITY;
    let mut inf_at = None;
    for &n in cands.iter() {
        let v = f(n);
        if v > sup {
            sup = v;
            sup_at = Some(n);
        }
        if v < inf {
            inf = v;
            inf_at = Some(n);
        }
    }
    // The tail limit 0 belongs to the closure of the value set on both
    // sides; it wins whenever every candidate sits strictly inside.
    let (sup_value, sup_attained_at) = if sup >= 0.0 { (sup, sup_at) } else { (0.0, None) };
    let (inf_value, inf_attained_at) = if inf <= 0.0 { (inf, inf_at) } else { (0.0, None) };
    LatticeExtrema { sup_value, sup_attained_at, inf_value, inf_attained_at }
}

fn check_closure_point(tau: Complex64) -> Result<()> {
    if !(tau.im >= 0.0) || !tau.re.is_finite() {
        return Err(Error::NonPositiveImag(tau.im));
    }
    if tau.im == 0.0 && tau.re == tau.re.round() {
        return Err(Error::IntegerTau(tau.re));
    }
    Ok(())
}

/// Extremes over `n` in `Z` of `f(n) = ln|tau1 - n| - ln|tau2 - n|`.
///
/// The real extension has `g'(t) = (t-a1)/|tau1-t|^2 - (t-a2)/|tau2-t|^2`,
/// whose zeros solve one quadratic; `f` is monotone between consecutive
/// zeros and poles (the poles are the `a_i` with `b_i = 0`), so integer
/// extremes sit adjacent to those points, with the tail limit 0 closing the
/// value set.
pub fn lattice_log_extrema(tau1: Complex64, tau2: Complex64) -> Result<LatticeExtrema> {
    check_closure_point(tau1)?;
    check_closure_point(tau2)?;
    Ok(log_extrema_raw(tau1, tau2))
}

pub(crate) fn log_extrema_raw(tau1: Complex64, tau2: Complex64) -> LatticeExtrema {
    if tau1 == tau2 {
        let n = Some(tau1.re.round() as i64);
        return LatticeExtrema {
            sup_value: 0.0,
            sup_attained_at: n,
            inf_value: 0.0,
            inf_attained_at: n,
        };
    }
    let (a1, b1) = (tau1.re, tau1.im);
    let (a2, b2) = (tau2.re, tau2.im);
    let qa = a1 - a2;
    let qb = -(a1 - a2) * (a1 + a2) + (b2 * b2 - b1 * b1);
    let qc = (a1 - a2) * a1 * a2 - a1 * b2 * b2 + a2 * b1 * b1;
    let mut cands = Vec::with_capacity(16);
    for r in real_roots(qa, qb, qc) {
        push_adjacent(&mut cands, r);
    }
    // Poles of the extension and near-coincident fallbacks.
    push_adjacent(&mut cands, a1);
    push_adjacent(&mut cands, a2);
    extrema_over(&mut cands, |n| {
        let n = n as f64;
        ((tau1 - n).norm() / (tau2 - n).norm()).ln()
    })
}

/// Extremes over `n` in `Z` of `h(n) = arg((tau1 - n)/(tau2 - n))`, for
/// interior points only; both factors keep their arguments in `(0, pi)`, so
/// `h` needs no branch bookkeeping.
///
/// `h'(t) = b1/|tau1-t|^2 - b2/|tau2-t|^2` vanishes on one quadratic's
/// roots; candidates and the tail limit 0 as in the log case.
pub fn lattice_arg_extrema(tau1: Complex64, tau2: Complex64) -> Result<LatticeExtrema> {
    if !(tau1.im > 0.0) {
        return Err(Error::NonPositiveImag(tau1.im));
    }
    if !(tau2.im > 0.0) {
        return Err(Error::NonPositiveImag(tau2.im));
    }
    Ok(arg_extrema_raw(tau1, tau2))
}

pub(crate) fn arg_extrema_raw(tau1: Complex64, tau2: Complex64) -> LatticeExtrema {
    if tau1 == tau2 {
        let n = Some(tau1.re.round() as i64);
        return LatticeExtrema {
            sup_value: 0.0,
            sup_attained_at: n,
            inf_value: 0.0,
            inf_attained_at: n,
        };
    }
    let (a1, b1) = (tau1.re, tau1.im);
    let (a2, b2) = (tau2.re, tau2.im);
    let qa = b1 - b2;
    let qb = -2.0 * (b1 * a2 - b2 * a1);
    let qc = b1 * tau2.norm_sqr() - b2 * tau1.norm_sqr();
    let mut cands = Vec::with_capacity(12);
    for r in real_roots(qa, qb, qc) {
        push_adjacent(&mut cands, r);
    }
    push_adjacent(&mut cands, a1);
    push_adjacent(&mut cands, a2);
    extrema_over(&mut cands, |n| {
        let n = n as f64;
        ((tau1 - n) / (tau2 - n)).arg()
    })
}

/// The balanced minimum of `lambda -> max(sup |A + lambda|, |lambda|)` for a
/// value set `A` with the given extremes straddling 0: returns
/// `((sup - inf)/2, -(sup + inf)/2)`, the minimal value and the shift
/// achieving it.
pub fn supinf_center(sup: f64, inf: f64) -> Result<(f64, f64)> {
    if !(sup >= 0.0 && inf <= 0.0) {
        return Err(Error::SupInfOrder { sup, inf });
    }
    Ok(((sup - inf) / 2.0, -(sup + inf) / 2.0))
}

/// Which half of the metric a witness belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessPart {
    Mass,
    Phase,
}

/// An object class attaining an extreme difference, with the signed value it
/// attains (log-mass or phase difference of the first point minus the
/// second).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub part: WitnessPart,
    pub class: SheafClass,
    pub value: f64,
}

/// A distance with its two halves and the witnessing object classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceBreakdown {
    pub d: f64,
    pub d_mass: f64,
    pub d_phase: f64,
    pub witnesses: Vec<Witness>,
}

fn class_or_tail(at: Option<i64>) -> SheafClass {
    // The skyscraper attains the tail limit exactly, so it stands in
    // whenever the lattice extreme is unattained.
    at.map(SheafClass::line_bundle).unwrap_or(SheafClass::Skyscraper)
}

/// Signed extreme differences of one part, `hi >= lo`, with the classes
/// attaining them.
struct PartEval {
    hi: f64,
    hi_class: SheafClass,
    lo: f64,
    lo_class: SheafClass,
    /// The part's quotient value, computed by its own closed form (not from
    /// `hi - lo`, to keep the advertised exactness of the quotient
    /// formulas).
    half_spread: f64,
}

impl PartEval {
    fn value(&self) -> f64 {
        self.hi.max(-self.lo)
    }

    fn witness(&self, part: WitnessPart) -> Witness {
        if self.hi >= -self.lo {
            Witness { part, class: self.hi_class, value: self.hi }
        } else {
            Witness { part, class: self.lo_class, value: self.lo }
        }
    }

    fn midpoint(&self) -> f64 {
        0.5 * (self.hi + self.lo)
    }
}

fn mass_eval(s1: &StabPoint, s2: &StabPoint) -> PartEval {
    let (t1, x1) = s1.closure_tau_x();
    let (t2, x2) = s2.closure_tau_x();
    let dx = x1 - x2;
    let e = log_extrema_raw(t1, t2);
    PartEval {
        hi: e.sup_value + dx,
        hi_class: class_or_tail(e.sup_attained_at),
        lo: e.inf_value + dx,
        lo_class: class_or_tail(e.inf_attained_at),
        half_spread: 0.5 * (e.sup_value - e.inf_value),
    }
}

/// Chart data `(beta, y)` of a non-geometric point in its own chamber.
fn own_chart(s: &StabPoint) -> (i64, f64, f64) {
    match *s {
        StabPoint::Boundary { tau, x: _, y } => (tau.floor() as i64, 1.0, y),
        StabPoint::Algebraic { k, beta, y, .. } => (k, beta, y),
        StabPoint::Geometric { .. } => unreachable!("geometric points carry every chart"),
    }
}

fn phase_eval(s1: &StabPoint, s2: &StabPoint) -> PartEval {
    match (s1.is_geometric(), s2.is_geometric()) {
        (true, true) => {
            let (t1, y1) = match *s1 {
                StabPoint::Geometric { tau, y, .. } => (tau, y),
                _ => unreachable!(),
            };
            let (t2, y2) = match *s2 {
                StabPoint::Geometric { tau, y, .. } => (tau, y),
                _ => unreachable!(),
            };
            let e = arg_extrema_raw(t1, t2);
            let dy = y1 - y2;
            PartEval {
                hi: e.sup_value / std::f64::consts::PI + dy,
                hi_class: class_or_tail(e.sup_attained_at),
                lo: e.inf_value / std::f64::consts::PI + dy,
                lo_class: class_or_tail(e.inf_attained_at),
                half_spread: (e.sup_value - e.inf_value) / (2.0 * std::f64::consts::PI),
            }
        }
        // One geometric point: read it in the other's chamber, where both
        // reduce to the generator anchors O(k), O(k+1).
        (true, false) | (false, true) => {
            let (geo, other, geo_first) = if s1.is_geometric() {
                (s1, s2, true)
            } else {
                (s2, s1, false)
            };
            let (k, beta_o, y_o) = own_chart(other);
            let ch = geo.to_chart(k).expect("geometric points carry every chart");
            let (d0, d1) = if geo_first {
                (ch.y - y_o, (ch.y + ch.beta) - (y_o + beta_o))
            } else {
                (y_o - ch.y, (y_o + beta_o) - (ch.y + ch.beta))
            };
            anchors(d0, d1, k, (beta_o - ch.beta).abs() / 2.0)
        }
        (false, false) => {
            let (k1, b1, y1) = own_chart(s1);
            let (k2, b2, y2) = own_chart(s2);
            if k1 == k2 {
                let d0 = y1 - y2;
                let d1 = (y1 + b1) - (y2 + b2);
                anchors(d0, d1, k1, (b1 - b2).abs() / 2.0)
            } else {
                // Chambers k < l: every per-object difference lands in the
                // interval bounded by O(l) on one end and O(l+1) on the
                // other.
                let swap = k1 > k2;
                let (b_lo, y_lo, b_hi, y_hi, l) = if swap {
                    (b2, y2, b1, y1, k1)
                } else {
                    (b1, y1, b2, y2, k2)
                };
                let e0 = (y_lo + b_lo) - y_hi;
                let e1 = (y_lo + 1.0) - (y_hi + b_hi);
                let (e0, e1) = if swap { (-e0, -e1) } else { (e0, e1) };
                anchors(e0, e1, l, (b_lo + b_hi - 1.0) / 2.0)
            }
        }
    }
}

fn anchors(d0: f64, d1: f64, k: i64, half_spread: f64) -> PartEval {
    let c0 = SheafClass::line_bundle(k);
    let c1 = SheafClass::line_bundle(k + 1);
    if d0 >= d1 {
        PartEval { hi: d0, hi_class: c0, lo: d1, lo_class: c1, half_spread }
    } else {
        PartEval { hi: d1, hi_class: c1, lo: d0, lo_class: c0, half_spread }
    }
}

/// The distance between two stability points, with its mass/phase split and
/// one witness class per part.
///
/// The mass part is evaluated on the closure projections (it is invariant
/// under them); the phase part dispatches on the chamber combination. All
/// six ordered form combinations are supported and the result is symmetric.
pub fn distance(s1: &StabPoint, s2: &StabPoint) -> DistanceBreakdown {
    let (s1, s2) = (s1.canonical(), s2.canonical());
    let m = mass_eval(&s1, &s2);
    let p = phase_eval(&s1, &s2);
    let d_mass = m.value();
    let d_phase = p.value();
    DistanceBreakdown {
        d: d_mass.max(d_phase),
        d_mass,
        d_phase,
        witnesses: vec![m.witness(WitnessPart::Mass), p.witness(WitnessPart::Phase)],
    }
}

/// The quotient distance between orbits, with a +/- witness pair per part
/// (the extreme signed differences after the optimal shift).
pub fn quotient_distance(q1: &QuotientPoint, q2: &QuotientPoint) -> DistanceBreakdown {
    let s1 = q1.representative().canonical();
    let s2 = q2.representative().canonical();
    let m = mass_eval(&s1, &s2);
    let p = phase_eval(&s1, &s2);
    let d_mass = m.half_spread;
    let d_phase = p.half_spread;
    let pm = |part, class, value| Witness { part, class, value };
    DistanceBreakdown {
        d: d_mass.max(d_phase),
        d_mass,
        d_phase,
        witnesses: vec![
            pm(WitnessPart::Mass, m.hi_class, d_mass),
            pm(WitnessPart::Mass, m.lo_class, -d_mass),
            pm(WitnessPart::Phase, p.hi_class, d_phase),
            pm(WitnessPart::Phase, p.lo_class, -d_phase),
        ],
    }
}

/// The shift `v` with `d(s1, c_act(s2, v))` equal to the quotient distance
/// of the two orbits: each part's extreme differences are centered on zero.
pub fn optimal_shift(s1: &StabPoint, s2: &StabPoint) -> (f64, f64) {
    let (s1, s2) = (s1.canonical(), s2.canonical());
    (mass_eval(&s1, &s2).midpoint(), phase_eval(&s1, &s2).midpoint())
}

/// Truncated evaluation of the distance over `enumerate_test_objects(-window,
/// window)` straight from `mass_phase`. Converges to [`distance`] from below
/// as the window grows; see [`oracle_tail_bound`] for the gap.
pub fn brute_force_distance(s1: &StabPoint, s2: &StabPoint, window: i64) -> DistanceBreakdown {
    assert!(window >= 1, "window must be positive");
    let (s1, s2) = (s1.canonical(), s2.canonical());
    let mut mass = Witness { part: WitnessPart::Mass, class: SheafClass::Skyscraper, value: 0.0 };
    let mut d_mass = f64::NEG_INFINITY;
    let mut phase = Witness { part: WitnessPart::Phase, class: SheafClass::Skyscraper, value: 0.0 };
    let mut d_phase = f64::NEG_INFINITY;
    for class in enumerate_test_objects(-window, window).expect("window >= 1") {
        let a = mass_phase(&s1, class);
        let b = mass_phase(&s2, class);
        let dm = a.m.ln() - b.m.ln();
        if dm.abs() > d_mass {
            d_mass = dm.abs();
            mass = Witness { part: WitnessPart::Mass, class, value: dm };
        }
        let dplus = a.phi_plus - b.phi_plus;
        let dminus = a.phi_minus - b.phi_minus;
        let dp = if dplus.abs() >= dminus.abs() { dplus } else { dminus };
        if dp.abs() > d_phase {
            d_phase = dp.abs();
            phase = Witness { part: WitnessPart::Phase, class, value: dp };
        }
    }
    DistanceBreakdown {
        d: d_mass.max(d_phase),
        d_mass,
        d_phase,
        witnesses: vec![mass, phase],
    }
}

/// Upper bound on `distance - brute_force_distance` for the given window:
/// the lattice tail `|tau1 - tau2| / max(1, window - max|tau_i|)` for the
/// mass part (on closure parameters) plus, for geometric pairs, the
/// corresponding arg tail. Rigorous once the window clears the points by
/// twice their separation.
pub fn oracle_tail_bound(s1: &StabPoint, s2: &StabPoint, window: i64) -> f64 {
    fn tail(t1: Complex64, t2: Complex64, window: i64) -> f64 {
        (t1 - t2).norm() / (window as f64 - t1.norm().max(t2.norm())).max(1.0)
    }
    let (t1, _) = s1.closure_tau_x();
    let (t2, _) = s2.closure_tau_x();
    let mass = tail(t1, t2, window);
    let phase = match (s1, s2) {
        (StabPoint::Geometric { tau: u1, .. }, StabPoint::Geometric { tau: u2, .. }) => {
            2.0 / std::f64::consts::PI * tail(*u1, *u2, window)
        }
        // Chamber anchors are inside any reasonable window; no phase tail.
        _ => 0.0,
    };
    mass + phase
}

/// Search region for [`boundary_infimum`]: chambers `k_min..=k_max`, an
/// `alpha_steps`-point grid on `[alpha_min, alpha_max]` per chamber, then
/// `refine_iters` golden-section steps around each chamber's best cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySearch {
    pub k_min: i64,
    pub k_max: i64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub refine_iters: usize,
}

impl Default for BoundarySearch {
    fn default() -> Self {
        BoundarySearch {
            k_min: -50,
            k_max: 50,
            alpha_min: -20.0,
            alpha_max: 20.0,
            alpha_steps: 161,
            refine_iters: 80,
        }
    }
}

fn boundary_tau(k: i64, alpha: f64) -> f64 {
    k as f64 + crate::coords::inv_1p_exp(alpha)
}

/// `min over (x, y)` of `d(s, boundary point at (k, alpha, x, y))`: the mass
/// and phase minima are independent, so the inner optimization is closed
/// form.
fn boundary_value(s: &StabPoint, k: i64, alpha: f64) -> f64 {
    let (ts, _) = s.closure_tau_x();
    let tb = Complex64::new(boundary_tau(k, alpha), 0.0);
    let e = log_extrema_raw(ts, tb);
    let mass = 0.5 * (e.sup_value - e.inf_value);
    let phase = boundary_phase_floor(s, k);
    mass.max(phase)
}

/// `min over y` of the phase part against any boundary point of chamber `k`.
fn boundary_phase_floor(s: &StabPoint, k: i64) -> f64 {
    match *s {
        StabPoint::Geometric { .. } => {
            let ch = s.to_chart(k).expect("geometric points carry every chart");
            (1.0 - ch.beta) / 2.0
        }
        StabPoint::Algebraic { k: ks, beta, .. } => {
            if ks == k {
                (beta - 1.0) / 2.0
            } else {
                beta / 2.0
            }
        }
        StabPoint::Boundary { .. } => unreachable!("rejected before the search"),
    }
}

fn golden_min<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, iters: usize, f: F) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..iters {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        }
    }
    if fa <= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Certified upper bound on the infimum of `d(s, -)` over all boundary
/// points in the search region, together with the boundary point achieving
/// it.
///
/// Outer search: grid over chambers and alpha, golden-section refinement per
/// chamber. Inner optimization over `(x, y)` is exact, so every evaluation
/// is a true distance to some boundary point and the returned value is an
/// attained upper bound.
pub fn boundary_infimum(
    s: &StabPoint,
    search: &BoundarySearch,
) -> Result<(f64, StabPoint)> {
    let s = s.canonical();
    if s.is_boundary() {
        return Err(Error::BoundaryStabPoint);
    }
    let (k_best, alpha_best, value) = boundary_search_core(&s, search)?;
    let minimizer = boundary_minimizer(&s, k_best, alpha_best)?;
    Ok((value, minimizer))
}

/// Quotient counterpart of [`boundary_infimum`]. A boundary orbit is its own
/// projection, so the infimum there is 0.
pub fn quotient_boundary_infimum(
    q: &QuotientPoint,
    search: &BoundarySearch,
) -> Result<(f64, QuotientPoint)> {
    if q.is_boundary() {
        return Ok((0.0, *q));
    }
    let s = q.representative().canonical();
    let (k_best, alpha_best, value) = boundary_search_core(&s, search)?;
    let tau = boundary_tau(k_best, alpha_best);
    Ok((value, QuotientPoint::boundary(tau)?))
}

fn boundary_search_core(
    s: &StabPoint,
    search: &BoundarySearch,
) -> Result<(i64, f64, f64)> {
    if search.k_min > search.k_max {
        return Err(Error::EmptySearch(format!(
            "chamber range {}..={} is empty",
            search.k_min, search.k_max
        )));
    }
    if search.alpha_steps < 2 || !(search.alpha_min < search.alpha_max) {
        return Err(Error::EmptySearch(format!(
            "alpha grid [{}, {}] with {} steps is empty",
            search.alpha_min, search.alpha_max, search.alpha_steps
        )));
    }
    let step = (search.alpha_max - search.alpha_min) / (search.alpha_steps - 1) as f64;
    let mut best: Option<(i64, f64, f64)> = None;
    for k in search.k_min..=search.k_max {
        // Grid pass.
        let mut k_best = (search.alpha_min, boundary_value(s, k, search.alpha_min));
        for i in 1..search.alpha_steps {
            let alpha = search.alpha_min + step * i as f64;
            let v = boundary_value(s, k, alpha);
            if v < k_best.1 {
                k_best = (alpha, v);
            }
        }
        // Local refinement around the incumbent cell.
        let lo = (k_best.0 - step).max(search.alpha_min);
        let hi = (k_best.0 + step).min(search.alpha_max);
        let (alpha_r, v_r) = golden_min(lo, hi, search.refine_iters, |a| boundary_value(s, k, a));
        let (alpha_k, v_k) = if v_r < k_best.1 { (alpha_r, v_r) } else { k_best };
        if best.is_none_or(|(_, _, v)| v_k < v) {
            best = Some((k, alpha_k, v_k));
        }
    }
    let (k, alpha, value) = best.expect("non-empty chamber range");
    Ok((k, alpha, value))
}

/// The boundary point at `(k, alpha)` with the distance-minimizing `(x, y)`.
fn boundary_minimizer(s: &StabPoint, k: i64, alpha: f64) -> Result<StabPoint> {
    let (ts, xs) = s.closure_tau_x();
    let tau = boundary_tau(k, alpha);
    let e = log_extrema_raw(ts, Complex64::new(tau, 0.0));
    let x = xs + 0.5 * (e.sup_value + e.inf_value);
    let y = match *s {
        StabPoint::Geometric { .. } => {
            let ch = s.to_chart(k).expect("geometric points carry every chart");
            ch.y - (1.0 - ch.beta) / 2.0
        }
        StabPoint::Algebraic { k: ks, beta, y, .. } => {
            if ks == k {
                y + (beta - 1.0) / 2.0
            } else if k < ks {
                // Boundary point in the lower chamber.
                y + (beta - 2.0) / 2.0
            } else {
                y + beta / 2.0
            }
        }
        StabPoint::Boundary { .. } => unreachable!("rejected before the search"),
    };
    StabPoint::boundary(tau, x, y)
}
