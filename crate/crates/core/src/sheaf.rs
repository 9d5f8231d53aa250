//! Central charges, masses, and phases of the indecomposable sheaf classes.
//!
//! On the projective line every indecomposable class is a line bundle `O(n)`
//! or the skyscraper class of a point, so mass and phase data can be written
//! in closed form in each chamber.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{ChartPoint, StabPoint};
use crate::error::{Error, Result};

/// An indecomposable sheaf class: a line bundle twist or the skyscraper.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SheafClass {
    LineBundle { n: i64 },
    Skyscraper,
}

impl SheafClass {
    pub fn line_bundle(n: i64) -> SheafClass {
        SheafClass::LineBundle { n }
    }

    /// `(rank, degree)` of the class.
    pub fn class(&self) -> (i64, i64) {
        match *self {
            SheafClass::LineBundle { n } => (1, n),
            SheafClass::Skyscraper => (0, 1),
        }
    }
}

impl std::fmt::Display for SheafClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            SheafClass::LineBundle { n } => write!(f, "O({n})"),
            SheafClass::Skyscraper => write!(f, "O_pt"),
        }
    }
}

/// Mass together with the top and bottom filtration phases. Equal phases mean
/// the class is stable (or carries the wall convention's single phase).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassPhase {
    pub m: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
}

impl MassPhase {
    fn stable(m: f64, phi: f64) -> MassPhase {
        MassPhase { m, phi_plus: phi, phi_minus: phi }
    }

    /// Width of the phase interval; zero exactly for stable classes.
    pub fn gap(&self) -> f64 {
        self.phi_plus - self.phi_minus
    }
}

/// The central charge of `class` at `p`.
///
/// In the geometric and boundary forms this is `e^{x+i pi y}(tau r - d)` for a
/// class of rank `r` and degree `d`. In a chamber `k` it extends additively
/// from the two generators, whose charges are `e^{x+i pi y}` and
/// `e^{x+alpha+i pi(y+beta)}`; for `beta > 1` the charge of an unstable class
/// can vanish, which is why masses are never computed from this value there.
pub fn central_charge(p: &StabPoint, class: SheafClass) -> Complex64 {
    let (r, d) = class.class();
    match *p {
        StabPoint::Geometric { tau, x, y } => {
            Complex64::from_polar(x.exp(), std::f64::consts::PI * y) * (tau * r as f64 - d as f64)
        }
        StabPoint::Boundary { tau, x, y } => {
            Complex64::from_polar(x.exp(), std::f64::consts::PI * y) * (tau * r as f64 - d as f64)
        }
        StabPoint::Algebraic { k, alpha, beta, x, y } => {
            let b = d - r * k;
            let a = r - b;
            Complex64::from_polar(x.exp(), std::f64::consts::PI * y) * a as f64
                + Complex64::from_polar((x + alpha).exp(), std::f64::consts::PI * (y + beta))
                    * b as f64
        }
    }
}

/// Mass and extremal phases of `class` at `p`.
///
/// Geometric points: every class is stable, so the mass is the charge modulus
/// and both phases agree. Chamber `k`: the filtration of `O(n)` has factors
/// among the generators and their shifts, giving the closed forms below. Wall
/// points use the limiting convention `phi(O(n)) = y` for `n <= k` and
/// `y + 1` for `n >= k + 1`, with the skyscraper at `y + 1`.
pub fn mass_phase(p: &StabPoint, class: SheafClass) -> MassPhase {
    match *p {
        StabPoint::Geometric { tau, x, y } => match class {
            SheafClass::LineBundle { n } => {
                let rel = tau - n as f64;
                MassPhase::stable(
                    x.exp() * rel.norm(),
                    y + rel.arg() / std::f64::consts::PI,
                )
            }
            // Z(O_pt) = -e^{x+i pi y}; the phase convention picks arg = +pi.
            SheafClass::Skyscraper => MassPhase::stable(x.exp(), y + 1.0),
        },
        StabPoint::Boundary { tau, x, y } => {
            let k = tau.floor();
            match class {
                SheafClass::LineBundle { n } => {
                    let phi = if n as f64 <= k { y } else { y + 1.0 };
                    MassPhase::stable(x.exp() * (tau - n as f64).abs(), phi)
                }
                SheafClass::Skyscraper => MassPhase::stable(x.exp(), y + 1.0),
            }
        }
        StabPoint::Algebraic { k, alpha, beta, x, y } => match class {
            SheafClass::LineBundle { n } if n < k => {
                let j = (k - n) as f64;
                MassPhase {
                    m: (j * alpha.exp() + j + 1.0) * x.exp(),
                    phi_plus: beta + y - 1.0,
                    phi_minus: y,
                }
            }
            SheafClass::LineBundle { n } if n == k => MassPhase::stable(x.exp(), y),
            SheafClass::LineBundle { n } if n == k + 1 => {
                MassPhase::stable((alpha + x).exp(), beta + y)
            }
            SheafClass::LineBundle { n } => {
                let j = (n - k) as f64;
                MassPhase {
                    m: (j * alpha.exp() + j - 1.0) * x.exp(),
                    phi_plus: beta + y,
                    phi_minus: y + 1.0,
                }
            }
            SheafClass::Skyscraper => MassPhase {
                m: (alpha.exp() + 1.0) * x.exp(),
                phi_plus: beta + y,
                phi_minus: y + 1.0,
            },
        },
    }
}

/// Charge modulus of `class` written purely in chart coordinates:
/// `e^x |(k - n + 1) - (k - n) w|` with `w = e^{alpha + i pi beta}`, and
/// `e^x |1 - w|` for the skyscraper.
///
/// For `0 < beta <= 1` this equals the mass at the resolved point and serves
/// as a cross-check of the chart change; past the wall it is only a modulus.
pub fn geometric_chart_mass(ch: &ChartPoint, class: SheafClass) -> f64 {
    let w = Complex64::from_polar(ch.alpha.exp(), std::f64::consts::PI * ch.beta);
    let modulus = match class {
        SheafClass::LineBundle { n } => {
            let j = (ch.k - n) as f64;
            (Complex64::new(j + 1.0, 0.0) - w * j).norm()
        }
        SheafClass::Skyscraper => (Complex64::new(1.0, 0.0) - w).norm(),
    };
    ch.x.exp() * modulus
}

/// All line bundles `O(n)` for `n` in `[n_min, n_max]` plus the skyscraper.
pub fn enumerate_test_objects(n_min: i64, n_max: i64) -> Result<Vec<SheafClass>> {
    if n_min > n_max {
        return Err(Error::EmptyRange { n_min, n_max });
    }
    let mut v: Vec<SheafClass> = (n_min..=n_max).map(SheafClass::line_bundle).collect();
    v.push(SheafClass::Skyscraper);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const O: fn(i64) -> SheafClass = SheafClass::line_bundle;

    fn alg(k: i64, alpha: f64, beta: f64, x: f64, y: f64) -> StabPoint {
        StabPoint::algebraic(k, alpha, beta, x, y).unwrap()
    }

    #[test]
    fn skyscraper_mass_just_past_the_wall() {
        let p = alg(0, 0.0, 1.1, 0.0, 0.0);
        let mp = mass_phase(&p, SheafClass::Skyscraper);
        assert!((mp.m - 2.0).abs() < 1e-15);
        assert!((mp.phi_plus - 1.1).abs() < 1e-15);
        assert!((mp.phi_minus - 1.0).abs() < 1e-15);
    }

    #[test]
    fn destabilized_twist_in_chamber_zero() {
        let p = alg(0, 0.0, 1.1, 0.0, 0.0);
        let mp = mass_phase(&p, O(-1));
        assert!((mp.m - 3.0).abs() < 1e-15);
        assert!((mp.phi_plus - 0.1).abs() < 1e-12);
        assert!((mp.phi_minus - 0.0).abs() < 1e-15);
    }

    #[test]
    fn generators_stay_stable_in_their_chamber() {
        let p = alg(2, 0.7, 1.6, 0.3, -0.4);
        let g0 = mass_phase(&p, O(2));
        assert_eq!(g0.gap(), 0.0);
        assert!((g0.m - 0.3f64.exp()).abs() < 1e-15);
        assert!((g0.phi_plus + 0.4).abs() < 1e-15);
        let g1 = mass_phase(&p, O(3));
        assert_eq!(g1.gap(), 0.0);
        assert!((g1.m - (0.7f64 + 0.3).exp()).abs() < 1e-15);
        assert!((g1.phi_plus - (1.6 - 0.4)).abs() < 1e-15);
    }

    #[test]
    fn geometric_masses_at_the_imaginary_unit() {
        let p = StabPoint::geometric(Complex64::new(0.0, 1.0), 0.0, 0.0).unwrap();
        let m0 = mass_phase(&p, O(0));
        assert!((m0.m - 1.0).abs() < 1e-15);
        assert!((m0.phi_plus - 0.5).abs() < 1e-15);
        let m1 = mass_phase(&p, O(-1));
        assert!((m1.m - 2.0f64.sqrt()).abs() < 1e-15);
        assert!((m1.phi_plus - 0.25).abs() < 1e-15);
        let sky = mass_phase(&p, SheafClass::Skyscraper);
        assert!((sky.m - 1.0).abs() < 1e-15);
        assert!((sky.phi_plus - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wall_phases_split_at_the_chamber() {
        let p = StabPoint::boundary(0.5, 2.0f64.ln(), 0.0).unwrap();
        for n in -3..=0 {
            assert_eq!(mass_phase(&p, O(n)).phi_plus, 0.0);
        }
        for n in 1..=4 {
            assert_eq!(mass_phase(&p, O(n)).phi_plus, 1.0);
        }
        assert_eq!(mass_phase(&p, SheafClass::Skyscraper).phi_plus, 1.0);
        assert!((mass_phase(&p, O(0)).m - 1.0).abs() < 1e-15);
        assert!((mass_phase(&p, O(1)).m - 1.0).abs() < 1e-15);
        assert!((mass_phase(&p, SheafClass::Skyscraper).m - 2.0).abs() < 1e-15);
    }

    #[test]
    fn wall_rows_match_the_chamber_limit() {
        // Masses and phases of the chamber table at beta = 1 must equal the
        // wall convention applied to the canonical boundary form.
        for &k in &[-2i64, 0, 3] {
            for &alpha in &[-1.5, 0.0, 0.8] {
                let wall = StabPoint::algebraic(k, alpha, 1.0, 0.2, -0.1).unwrap();
                assert!(wall.is_boundary());
                for n in k - 3..=k + 4 {
                    let got = mass_phase(&wall, O(n));
                    let expect_m = if n <= k {
                        let j = (k - n) as f64;
                        (j * alpha.exp() + j + 1.0) * 0.2f64.exp()
                    } else {
                        let j = (n - k) as f64;
                        (j * alpha.exp() + j - 1.0) * 0.2f64.exp()
                    };
                    assert!(
                        (got.m - expect_m).abs() < 1e-12 * expect_m.max(1.0),
                        "mass mismatch at k={k} alpha={alpha} n={n}: {} vs {expect_m}",
                        got.m
                    );
                    let expect_phi = if n <= k { -0.1 } else { 0.9 };
                    assert!((got.phi_plus - expect_phi).abs() < 1e-15);
                    assert_eq!(got.gap(), 0.0);
                }
                let sky = mass_phase(&wall, SheafClass::Skyscraper);
                assert!((sky.m - (alpha.exp() + 1.0) * 0.2f64.exp()).abs() < 1e-12);
                assert!((sky.phi_plus - 0.9).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn chart_modulus_agrees_with_resolved_mass() {
        for &beta in &[0.1, 0.5, 0.93] {
            for &alpha in &[-2.0, 0.0, 1.3] {
                for &k in &[-1i64, 0, 2] {
                    let ch = ChartPoint::new(k, alpha, beta, 0.4, 0.2).unwrap();
                    let p = ch.to_stab().unwrap();
                    assert!(p.is_geometric());
                    for class in enumerate_test_objects(k - 4, k + 5).unwrap() {
                        let direct = mass_phase(&p, class).m;
                        let via_chart = geometric_chart_mass(&ch, class);
                        assert!(
                            (direct - via_chart).abs() < 1e-12 * direct.max(1.0),
                            "{class} at k={k} a={alpha} b={beta}: {direct} vs {via_chart}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn charge_is_equivariant_under_the_plane_action() {
        let pts = [
            StabPoint::geometric(Complex64::new(0.3, 1.7), 0.1, 0.6).unwrap(),
            StabPoint::boundary(-1.25, 0.0, 0.0).unwrap(),
            alg(1, 0.5, 2.3, -0.2, 0.7),
        ];
        let shift = Complex64::from_polar(0.8f64.exp(), std::f64::consts::PI * -0.3);
        for p in pts {
            let q = p.act(0.8, -0.3);
            for class in enumerate_test_objects(-2, 3).unwrap() {
                let z0 = central_charge(&p, class) * shift;
                let z1 = central_charge(&q, class);
                assert!((z0 - z1).norm() < 1e-12 * z0.norm().max(1.0));
                let a = mass_phase(&p, class);
                let b = mass_phase(&q, class);
                assert!((b.m - a.m * 0.8f64.exp()).abs() < 1e-12 * b.m);
                assert!((b.phi_plus - (a.phi_plus - 0.3)).abs() < 1e-12);
                assert!((b.phi_minus - (a.phi_minus - 0.3)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_interval_shape() {
        // m > 0 and phi_plus >= phi_minus everywhere; the gap stays below 1
        // while beta < 2.
        let pts = [
            alg(0, -0.4, 1.01, 0.0, 0.0),
            alg(0, 0.9, 1.99, -1.0, 2.0),
            alg(-3, 0.0, 1.5, 0.3, -0.3),
        ];
        for p in pts {
            for class in enumerate_test_objects(-6, 6).unwrap() {
                let mp = mass_phase(&p, class);
                assert!(mp.m > 0.0);
                assert!(mp.phi_plus >= mp.phi_minus);
                assert!(mp.gap() < 1.0, "{class} at {p:?} has gap {}", mp.gap());
            }
        }
    }

    #[test]
    fn class_json_wire_format() {
        let s = serde_json::to_string(&O(-2)).unwrap();
        assert_eq!(s, r#"{"type":"line_bundle","n":-2}"#);
        let s = serde_json::to_string(&SheafClass::Skyscraper).unwrap();
        assert_eq!(s, r#"{"type":"skyscraper"}"#);
        let back: SheafClass = serde_json::from_str(r#"{"type":"line_bundle","n":7}"#).unwrap();
        assert_eq!(back, O(7));
    }
}
