//! Hyperbolic geometry of the projected closure.
//!
//! Projections of stability points live in the closed upper half-plane with
//! the integers removed from the real axis. This module provides the
//! hyperbolic metric on the interior, real Moebius transformations with an
//! explicit point at infinity, the normalization that puts a geodesic on the
//! imaginary axis, and the charge-ratio distance `d_z` computed either from
//! lattice extrema directly or through that normalization.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric;

/// A point of the closed upper half-plane with non-integral real boundary
/// values, the domain of the charge-ratio distance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireH", into = "WireH")]
pub struct HPoint {
    z: Complex64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireH {
    re: f64,
    im: f64,
}

impl TryFrom<WireH> for HPoint {
    type Error = Error;

    fn try_from(w: WireH) -> Result<Self> {
        HPoint::new(w.re, w.im)
    }
}

impl From<HPoint> for WireH {
    fn from(p: HPoint) -> Self {
        WireH { re: p.z.re, im: p.z.im }
    }
}

impl HPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || im < 0.0 {
            return Err(Error::NonPositiveImag(im));
        }
        if im == 0.0 && re == re.round() {
            return Err(Error::IntegerTau(re));
        }
        Ok(HPoint { z: Complex64::new(re, im) })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        HPoint::new(z.re, z.im)
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn is_boundary(&self) -> bool {
        self.z.im == 0.0
    }
}

impl std::str::FromStr for HPoint {
    type Err = Error;

    /// Parses `re,im` or a bare `re` (a boundary point).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParameter(format!("expected `re,im` or `re`, got `{s}`"));
        match s.split_once(',') {
            Some((re, im)) => HPoint::new(
                re.trim().parse().map_err(|_| bad())?,
                im.trim().parse().map_err(|_| bad())?,
            ),
            None => HPoint::new(s.trim().parse().map_err(|_| bad())?, 0.0),
        }
    }
}

/// A point of the extended real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RealOrInf {
    Finite(f64),
    Infinity,
}

/// A real Moebius transformation `z -> (az + b)/(cz + d)` with positive
/// determinant, acting on the closed half-plane and the extended real line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MoebiusMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) {
            return Err(Error::NonPositiveDet(det));
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MoebiusMap { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// The adjugate matrix; composes with `self` to `det * id`, which is the
    /// same transformation as the identity.
    pub fn inverse(&self) -> Self {
        MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self` after `rhs` (matrix product).
    pub fn compose(&self, rhs: &Self) -> Self {
        MoebiusMap {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Apply to an interior point. The denominator cannot vanish off the real
    /// axis, so the result is an ordinary complex number with `Im > 0`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        debug_assert!(z.im != 0.0 || self.c * z.re + self.d != 0.0);
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    /// Apply to a point of the extended real line, tracking infinity
    /// explicitly instead of leaking IEEE infinities.
    pub fn apply_real(&self, t: RealOrInf) -> RealOrInf {
        match t {
            RealOrInf::Finite(t) => {
                let den = self.c * t + self.d;
                if den == 0.0 {
                    RealOrInf::Infinity
                } else {
                    RealOrInf::Finite((self.a * t + self.b) / den)
                }
            }
            RealOrInf::Infinity => {
                if self.c == 0.0 {
                    RealOrInf::Infinity
                } else {
                    RealOrInf::Finite(self.a / self.c)
                }
            }
        }
    }
}

/// Where a hyperbolic geodesic meets the real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeodesicEnds {
    /// A vertical line `Re = x`, ending at `x` and at infinity.
    Vertical { x: f64 },
    /// A half-circle orthogonal to the axis.
    Circle { center: f64, radius: f64 },
}

fn check_interior(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) {
        return Err(Error::NonPositiveImag(z.im));
    }
    Ok(())
}

fn scale_of(z1: Complex64, z2: Complex64) -> f64 {
    z1.norm().max(z2.norm()).max(1.0)
}

/// The geodesic through two distinct interior points.
pub fn geodesic_ends(z1: Complex64, z2: Complex64) -> Result<GeodesicEnds> {
    check_interior(z1)?;
    check_interior(z2)?;
    let scale = scale_of(z1, z2);
    if (z1 - z2).norm() <= 1e-15 * scale {
        return Err(Error::CoincidentPoints);
    }
    if (z1.re - z2.re).abs() <= 1e-14 * scale {
        return Ok(GeodesicEnds::Vertical { x: 0.5 * (z1.re + z2.re) });
    }
    let center = (z1.norm_sqr() - z2.norm_sqr()) / (2.0 * (z1.re - z2.re));
    Ok(GeodesicEnds::Circle { center, radius: (z1 - center).norm() })
}

/// Hyperbolic distance between interior points, through the cross-ratio of
/// the geodesic's real endpoints. Vertical geodesics reduce to a log of the
/// height ratio.
pub fn d_hyp(z1: Complex64, z2: Complex64) -> Result<f64> {
    check_interior(z1)?;
    check_interior(z2)?;
    let scale = scale_of(z1, z2);
    if (z1 - z2).norm() <= 1e-15 * scale {
        return Ok(0.0);
    }
    match geodesic_ends(z1, z2)? {
        GeodesicEnds::Vertical { .. } => Ok((z1.im / z2.im).ln().abs()),
        GeodesicEnds::Circle { center, radius } => {
            let lo = center - radius;
            let hi = center + radius;
            // t1 is the endpoint on z1's side of the arc.
            let (t1, t2) = if z1.re < z2.re { (lo, hi) } else { (hi, lo) };
            let num = (z1 - t2).norm() * (z2 - t1).norm();
            let den = (z2 - t2).norm() * (z1 - t1).norm();
            Ok((num / den).ln())
        }
    }
}

/// The normalizing map of the geodesic through `z1` and `z2`: a real Moebius
/// transformation with positive determinant sending the geodesic to the
/// imaginary axis with `rho(z2) = i` and `Im rho(z1) >= 1`.
pub fn normalize_to_axis(z1: Complex64, z2: Complex64) -> Result<MoebiusMap> {
    check_interior(z1)?;
    check_interior(z2)?;
    let scale = scale_of(z1, z2);
    if (z1 - z2).norm() <= 1e-15 * scale {
        return Err(Error::CoincidentPoints);
    }
    match geodesic_ends(z1, z2)? {
        GeodesicEnds::Vertical { x } => {
            if z1.im >= z2.im {
                // z -> (z - x)/im2 keeps z1 above z2.
                MoebiusMap::new(1.0, -x, 0.0, z2.im)
            } else {
                // Invert so the image of z1 is still the higher point.
                MoebiusMap::new(0.0, -z2.im, 1.0, -x)
            }
        }
        GeodesicEnds::Circle { center, radius } => {
            let lo = center - radius;
            let hi = center + radius;
            let (t1, t2) = if z1.re < z2.re { (lo, hi) } else { (hi, lo) };
            // rho0 sends t2 -> 0 and t1 -> infinity; flip the sign of the
            // numerator row if the determinant came out negative.
            let m = if t2 > t1 {
                MoebiusMap::new(1.0, -t2, 1.0, -t1)?
            } else {
                MoebiusMap::new(-1.0, t2, 1.0, -t1)?
            };
            let v2 = m.apply(z2).im;
            debug_assert!(v2 > 0.0);
            MoebiusMap::new(m.a / v2, m.b / v2, m.c, m.d)
        }
    }
}

/// Extremes of `|rho(s)|` over integer `s`, together with where they are
/// attained.
///
/// `min_at = None` means the infimum is the tail limit `|a/c|` (only possible
/// as the limit 0 when `a = 0`). `max = None` with `max_at = Some(s)` marks a
/// pole on the lattice; with `max_at = None` the map is affine and the image
/// grows without bound along the tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeImageExtrema {
    pub min: f64,
    pub min_at: Option<i64>,
    pub max: Option<f64>,
    pub max_at: Option<i64>,
}

/// Extremes of the modulus of the image of the integer lattice under a real
/// Moebius map.
///
/// `|rho(s)|` is piecewise monotone with breaks only at the zero `-b/a` and
/// the pole `-d/c`, so integer extremes sit next to those two points or in
/// the tails; it is enough to inspect a fixed window around each break and
/// the tail limit.
pub fn lattice_image_extrema(map: &MoebiusMap) -> LatticeImageExtrema {
    let MoebiusMap { a, b, c, d } = *map;
    debug_assert!(map.det() > 0.0);

    let mut cands: Vec<i64> = Vec::with_capacity(8);
    let push_near = |t: f64, cands: &mut Vec<i64>| {
        let f = t.floor() as i64;
        cands.extend((f - 1)..=(f + 2));
    };
    if a != 0.0 {
        push_near(-b / a, &mut cands);
    }
    if c != 0.0 {
        push_near(-d / c, &mut cands);
    }
    cands.sort_unstable();
    cands.dedup();

    let mut min = f64::INFINITY;
    let mut min_at = None;
    let mut max = f64::NEG_INFINITY;
    let mut max_at = None;
    let mut pole_at = None;
    for &s in &cands {
        let den = c * s as f64 + d;
        if den == 0.0 {
            pole_at = Some(s);
            continue;
        }
        let v = ((a * s as f64 + b) / den).abs();
        if v < min {
            min = v;
            min_at = Some(s);
        }
        if v > max {
            max = v;
            max_at = Some(s);
        }
    }

    let (min, min_at) = if a == 0.0 {
        // |b / (c s + d)| drains to zero along the tail.
        (0.0, None)
    } else {
        let tail = if c == 0.0 { f64::INFINITY } else { (a / c).abs() };
        if tail < min {
            (tail, None)
        } else {
            (min, min_at)
        }
    };

    let (max, max_at) = if let Some(s) = pole_at {
        (None, Some(s))
    } else if c == 0.0 {
        (None, None)
    } else {
        let tail = (a / c).abs();
        if tail > max {
            (Some(tail), None)
        } else {
            (Some(max), max_at)
        }
    };

    LatticeImageExtrema { min, min_at, max, max_at }
}

/// The charge-ratio distance between closure points, evaluated as the spread
/// of `n -> ln|tau1 - n| - ln|tau2 - n|` over the lattice and its tail.
pub fn d_z(p1: HPoint, p2: HPoint) -> f64 {
    // HPoint construction already excludes integer boundary points.
    let e = metric::log_extrema_raw(p1.z(), p2.z());
    e.sup_value - e.inf_value
}

/// The charge-ratio distance between interior points, computed by
/// normalizing their geodesic to the imaginary axis.
///
/// With `v1 = Im rho(z1)`, `v2 = Im rho(z2)` and `[m, M]` the extremes of the
/// normalized lattice image, the spread of the charge-ratio function is
/// `psi(m) - psi(M)` for `psi(t) = ln(hypot(v1, t) / hypot(v2, t))`, which is
/// monotone in `|t|`. An unbounded image contributes `psi` at infinity, which
/// is zero.
pub fn d_z_via_normalization(z1: Complex64, z2: Complex64) -> Result<f64> {
    check_interior(z1)?;
    check_interior(z2)?;
    if (z1 - z2).norm() <= 1e-15 * scale_of(z1, z2) {
        return Ok(0.0);
    }
    let rho = normalize_to_axis(z1, z2)?;
    let v1 = rho.apply(z1).im;
    let v2 = rho.apply(z2).im;
    let ex = lattice_image_extrema(&rho);
    let at_min = (v1.hypot(ex.min) / v2.hypot(ex.min)).ln();
    Ok(match ex.max {
        Some(big) => at_min - (v1.hypot(big) / v2.hypot(big)).ln(),
        None => at_min,
    })
}
