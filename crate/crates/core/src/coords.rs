//! Coordinates on the stability space of the projective line.
//!
//! A point is either geometric (an upper half-plane parameter `tau` plus a
//! scale/rotation pair `(x, y)`), on the boundary wall (`tau` real and
//! non-integral), or algebraic (chamber `k`, chart coordinates `(alpha, beta)`
//! with `beta >= 1`, plus `(x, y)`). Chart coordinates with `0 < beta < 1`
//! describe geometric points seen from chamber `k`; `beta = 1` is the wall.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// ln(1 + e^a), stable for large |a|.
pub(crate) fn ln_1p_exp(a: f64) -> f64 {
    if a > 0.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}

/// 1 / (1 + e^a), stable for large |a|.
pub(crate) fn inv_1p_exp(a: f64) -> f64 {
    if a > 0.0 {
        let e = (-a).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + a.exp())
    }
}

fn is_integer(t: f64) -> bool {
    t == t.round()
}

/// A stability point in one of its three canonical forms.
///
/// `beta = 1` is always stored as `Boundary`; the validated constructors and
/// every operation in this crate maintain that convention.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WirePoint", into = "WirePoint")]
pub enum StabPoint {
    Geometric { tau: Complex64, x: f64, y: f64 },
    Boundary { tau: f64, x: f64, y: f64 },
    Algebraic { k: i64, alpha: f64, beta: f64, x: f64, y: f64 },
}

impl StabPoint {
    pub fn geometric(tau: Complex64, x: f64, y: f64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::NonPositiveImag(tau.im));
        }
        Ok(StabPoint::Geometric { tau, x, y })
    }

    pub fn boundary(tau: f64, x: f64, y: f64) -> Result<Self> {
        if !tau.is_finite() || is_integer(tau) {
            return Err(Error::IntegerTau(tau));
        }
        Ok(StabPoint::Boundary { tau, x, y })
    }

    /// Build an algebraic point of chamber `k`. `beta = 1` collapses to the
    /// boundary form; `beta < 1` is rejected (that range belongs to the
    /// geometric chamber, reachable through [`ChartPoint::to_stab`]).
    pub fn algebraic(k: i64, alpha: f64, beta: f64, x: f64, y: f64) -> Result<Self> {
        if beta < 1.0 {
            return Err(Error::BetaBelowWall(beta));
        }
        if beta == 1.0 {
            return StabPoint::boundary(k as f64 + inv_1p_exp(alpha), x + ln_1p_exp(alpha), y);
        }
        Ok(StabPoint::Algebraic { k, alpha, beta, x, y })
    }

    pub fn x(&self) -> f64 {
        match *self {
            StabPoint::Geometric { x, .. }
            | StabPoint::Boundary { x, .. }
            | StabPoint::Algebraic { x, .. } => x,
        }
    }

    pub fn y(&self) -> f64 {
        match *self {
            StabPoint::Geometric { y, .. }
            | StabPoint::Boundary { y, .. }
            | StabPoint::Algebraic { y, .. } => y,
        }
    }

    /// The scale/rotation action of the complex plane: shift `x` and `y`.
    pub fn act(&self, dx: f64, dy: f64) -> StabPoint {
        let mut p = *self;
        match &mut p {
            StabPoint::Geometric { x, y, .. }
            | StabPoint::Boundary { x, y, .. }
            | StabPoint::Algebraic { x, y, .. } => {
                *x += dx;
                *y += dy;
            }
        }
        p
    }

    /// Chamber index for non-geometric points; a boundary point with
    /// `tau` in `(k, k+1)` belongs to chamber `k`.
    pub fn chamber(&self) -> Option<i64> {
        match *self {
            StabPoint::Geometric { .. } => None,
            StabPoint::Boundary { tau, .. } => Some(tau.floor() as i64),
            StabPoint::Algebraic { k, .. } => Some(k),
        }
    }

    pub fn is_geometric(&self) -> bool {
        matches!(self, StabPoint::Geometric { .. })
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, StabPoint::Boundary { .. })
    }

    pub fn is_algebraic(&self) -> bool {
        matches!(self, StabPoint::Algebraic { .. })
    }

    /// Rewrite a hand-built `Algebraic` value with `beta = 1` into boundary
    /// form. Validated constructors already return canonical forms.
    pub fn canonical(&self) -> StabPoint {
        match *self {
            StabPoint::Algebraic { k, alpha, beta, x, y } if beta == 1.0 => StabPoint::Boundary {
                tau: k as f64 + inv_1p_exp(alpha),
                x: x + ln_1p_exp(alpha),
                y,
            },
            p => p,
        }
    }

    /// Componentwise comparison of canonical forms within `tol`.
    pub fn canonically_equal(&self, other: &StabPoint, tol: f64) -> bool {
        let close = |u: f64, v: f64| (u - v).abs() <= tol;
        match (self.canonical(), other.canonical()) {
            (
                StabPoint::Geometric { tau: t1, x: x1, y: y1 },
                StabPoint::Geometric { tau: t2, x: x2, y: y2 },
            ) => close(t1.re, t2.re) && close(t1.im, t2.im) && close(x1, x2) && close(y1, y2),
            (
                StabPoint::Boundary { tau: t1, x: x1, y: y1 },
                StabPoint::Boundary { tau: t2, x: x2, y: y2 },
            ) => close(t1, t2) && close(x1, x2) && close(y1, y2),
            (
                StabPoint::Algebraic { k: k1, alpha: a1, beta: b1, x: x1, y: y1 },
                StabPoint::Algebraic { k: k2, alpha: a2, beta: b2, x: x2, y: y2 },
            ) => k1 == k2 && close(a1, a2) && close(b1, b2) && close(x1, x2) && close(y1, y2),
            _ => false,
        }
    }

    /// Collapse `beta` to the wall. Geometric and boundary points are fixed;
    /// an algebraic point keeps its chamber and `alpha` and lands on the
    /// boundary parametrization.
    pub fn project_closure(&self) -> StabPoint {
        match *self {
            StabPoint::Algebraic { k, alpha, x, y, .. } => StabPoint::Boundary {
                tau: k as f64 + inv_1p_exp(alpha),
                x: x + ln_1p_exp(alpha),
                y,
            },
            p => p,
        }
    }

    /// Half-plane closure parameters `(tau, x)` of the projection; these two
    /// coordinates determine every mass in the closure.
    pub(crate) fn closure_tau_x(&self) -> (Complex64, f64) {
        match *self {
            StabPoint::Geometric { tau, x, .. } => (tau, x),
            StabPoint::Boundary { tau, x, .. } => (Complex64::new(tau, 0.0), x),
            StabPoint::Algebraic { k, alpha, x, .. } => (
                Complex64::new(k as f64 + inv_1p_exp(alpha), 0.0),
                x + ln_1p_exp(alpha),
            ),
        }
    }

    /// Express the point in the chart of chamber `k`.
    ///
    /// Geometric points admit every chart (with `0 < beta < 1`); boundary and
    /// algebraic points only their own chamber's.
    pub fn to_chart(&self, k: i64) -> Result<ChartPoint> {
        match *self {
            StabPoint::Geometric { tau, x, y } => {
                let rel = tau - k as f64;
                let w = Complex64::new(1.0, 0.0) - rel.inv();
                debug_assert!(w.im > 0.0);
                Ok(ChartPoint {
                    k,
                    alpha: w.norm().ln(),
                    beta: w.arg() / std::f64::consts::PI,
                    x: x + rel.norm().ln(),
                    y: y + rel.arg() / std::f64::consts::PI,
                })
            }
            StabPoint::Boundary { tau, x, y } => {
                let have = tau.floor() as i64;
                if have != k {
                    return Err(Error::ChamberMismatch { have, want: k });
                }
                let lo = tau - k as f64;
                let hi = k as f64 + 1.0 - tau;
                Ok(ChartPoint {
                    k,
                    alpha: hi.ln() - lo.ln(),
                    beta: 1.0,
                    x: x + lo.ln(),
                    y,
                })
            }
            StabPoint::Algebraic { k: have, alpha, beta, x, y } => {
                if have != k {
                    return Err(Error::ChamberMismatch { have, want: k });
                }
                Ok(ChartPoint { k, alpha, beta, x, y })
            }
        }
    }

    /// Forget the scale/rotation coordinates.
    pub fn quotient(&self) -> QuotientPoint {
        match *self {
            StabPoint::Geometric { tau, .. } => QuotientPoint::Geometric { tau },
            StabPoint::Boundary { tau, .. } => QuotientPoint::Boundary { tau },
            StabPoint::Algebraic { k, alpha, beta, .. } => {
                QuotientPoint::Algebraic { k, alpha, beta }
            }
        }
    }
}

/// Chart coordinates `(k, alpha, beta, x, y)` with `beta > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub k: i64,
    pub alpha: f64,
    pub beta: f64,
    pub x: f64,
    pub y: f64,
}

impl ChartPoint {
    pub fn new(k: i64, alpha: f64, beta: f64, x: f64, y: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta(beta));
        }
        Ok(ChartPoint { k, alpha, beta, x, y })
    }

    /// Resolve the chart point to its canonical form: geometric for
    /// `beta < 1`, boundary at `beta = 1`, algebraic beyond.
    pub fn to_stab(&self) -> Result<StabPoint> {
        let ChartPoint { k, alpha, beta, x, y } = *self;
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta(beta));
        }
        if beta >= 1.0 {
            return StabPoint::algebraic(k, alpha, beta, x, y);
        }
        let w = Complex64::from_polar(alpha.exp(), std::f64::consts::PI * beta);
        let one_minus = Complex64::new(1.0, 0.0) - w;
        // Im(1 - w) < 0 for 0 < beta < 1, so tau lands strictly above the axis
        // and arg(1 - w) is already on the (-pi, 0) branch.
        let tau = k as f64 + one_minus.inv();
        StabPoint::geometric(
            tau,
            x + one_minus.norm().ln(),
            y + one_minus.arg() / std::f64::consts::PI,
        )
    }
}

/// A stability point up to the scale/rotation action: the same data as
/// [`StabPoint`] with `(x, y)` dropped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireQuotient", into = "WireQuotient")]
pub enum QuotientPoint {
    Geometric { tau: Complex64 },
    Boundary { tau: f64 },
    Algebraic { k: i64, alpha: f64, beta: f64 },
}

impl QuotientPoint {
    pub fn geometric(tau: Complex64) -> Result<Self> {
        Ok(StabPoint::geometric(tau, 0.0, 0.0)?.quotient())
    }

    pub fn boundary(tau: f64) -> Result<Self> {
        Ok(StabPoint::boundary(tau, 0.0, 0.0)?.quotient())
    }

    pub fn algebraic(k: i64, alpha: f64, beta: f64) -> Result<Self> {
        Ok(StabPoint::algebraic(k, alpha, beta, 0.0, 0.0)?.quotient())
    }

    /// The orbit representative with `(x, y) = (0, 0)`.
    pub fn representative(&self) -> StabPoint {
        match *self {
            QuotientPoint::Geometric { tau } => StabPoint::Geometric { tau, x: 0.0, y: 0.0 },
            QuotientPoint::Boundary { tau } => StabPoint::Boundary { tau, x: 0.0, y: 0.0 },
            QuotientPoint::Algebraic { k, alpha, beta } => {
                StabPoint::Algebraic { k, alpha, beta, x: 0.0, y: 0.0 }
            }
        }
    }

    pub fn chamber(&self) -> Option<i64> {
        self.representative().chamber()
    }

    pub fn is_geometric(&self) -> bool {
        matches!(self, QuotientPoint::Geometric { .. })
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, QuotientPoint::Boundary { .. })
    }

    pub fn is_algebraic(&self) -> bool {
        matches!(self, QuotientPoint::Algebraic { .. })
    }

    pub fn project_closure(&self) -> QuotientPoint {
        self.representative().project_closure().quotient()
    }

    pub fn canonically_equal(&self, other: &QuotientPoint, tol: f64) -> bool {
        self.representative()
            .canonically_equal(&other.representative(), tol)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase", deny_unknown_fields)]
enum WirePoint {
    Geometric { tau: [f64; 2], x: f64, y: f64 },
    Boundary { tau: f64, x: f64, y: f64 },
    Algebraic { k: i64, alpha: f64, beta: f64, x: f64, y: f64 },
}

impl TryFrom<WirePoint> for StabPoint {
    type Error = Error;

    fn try_from(w: WirePoint) -> Result<Self> {
        match w {
            WirePoint::Geometric { tau, x, y } => {
                StabPoint::geometric(Complex64::new(tau[0], tau[1]), x, y)
            }
            WirePoint::Boundary { tau, x, y } => StabPoint::boundary(tau, x, y),
            WirePoint::Algebraic { k, alpha, beta, x, y } => {
                StabPoint::algebraic(k, alpha, beta, x, y)
            }
        }
    }
}

impl From<StabPoint> for WirePoint {
    fn from(p: StabPoint) -> Self {
        match p {
            StabPoint::Geometric { tau, x, y } => {
                WirePoint::Geometric { tau: [tau.re, tau.im], x, y }
            }
            StabPoint::Boundary { tau, x, y } => WirePoint::Boundary { tau, x, y },
            StabPoint::Algebraic { k, alpha, beta, x, y } => {
                WirePoint::Algebraic { k, alpha, beta, x, y }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase", deny_unknown_fields)]
enum WireQuotient {
    Geometric { tau: [f64; 2] },
    Boundary { tau: f64 },
    Algebraic { k: i64, alpha: f64, beta: f64 },
}

impl TryFrom<WireQuotient> for QuotientPoint {
    type Error = Error;

    fn try_from(w: WireQuotient) -> Result<Self> {
        match w {
            WireQuotient::Geometric { tau } => {
                QuotientPoint::geometric(Complex64::new(tau[0], tau[1]))
            }
            WireQuotient::Boundary { tau } => QuotientPoint::boundary(tau),
            WireQuotient::Algebraic { k, alpha, beta } => QuotientPoint::algebraic(k, alpha, beta),
        }
    }
}

impl From<QuotientPoint> for WireQuotient {
    fn from(p: QuotientPoint) -> Self {
        match p {
            QuotientPoint::Geometric { tau } => WireQuotient::Geometric { tau: [tau.re, tau.im] },
            QuotientPoint::Boundary { tau } => WireQuotient::Boundary { tau },
            QuotientPoint::Algebraic { k, alpha, beta } => {
                WireQuotient::Algebraic { k, alpha, beta }
            }
        }
    }
}
