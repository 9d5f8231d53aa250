//! Acceptance gate: ten numbered criteria, one printed pass/fail line each.
//!
//! Every tolerance is pinned here, next to the criterion that uses it. Each
//! test collects its defects and panics with the full list, so a red run
//! names everything that went wrong, not just the first thing.

use num_complex::Complex64;
use rand::Rng;
use stabspace::halfplane::{self, MoebiusMap};
use stabspace::metric::{self, brute_force_distance, oracle_tail_bound};
use stabspace::{
    additivity_check, bent_geodesic, composite_path, distance, dz_geodesic_point,
    quotient_distance, reparametrize_arclength, sample_hyperbolic_geodesic,
    straight_chamber_path, ChartPoint, HPoint, MetricKind, PathPoint, QuotientPoint,
};
use stabspace_cli::report::{CheckStatus, Report};
use stabspace_cli::sample;
use stabspace_cli::verify::{
    verify_counterexample, verify_nonunique_geodesic, verify_quotient_counterexample,
    CounterexampleConfig,
};

/// Closed-form equalities.
const EQ_TOL: f64 = 1e-9;
/// Numerical searches attaining a closed-form value.
const ATTAIN_TOL: f64 = 1e-6;
/// Identities that hold to rounding error.
const EXACT_TOL: f64 = 1e-12;
/// Geometric separations.
const SEP_TOL: f64 = 1e-4;

fn collect_failures(r: &Report, fails: &mut Vec<String>) {
    for c in r.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
        fails.push(format!(
            "{}: {} observed {:e} vs bound {:e}",
            r.name, c.name, c.observed, c.bound
        ));
    }
}

fn conclude(name: &str, fails: Vec<String>) {
    if fails.is_empty() {
        println!("{name}: PASS");
    } else {
        println!("{name}: FAIL");
        for f in &fails {
            println!("  {f}");
        }
        panic!("{name} failed:\n{}", fails.join("\n"));
    }
}

#[test]
fn criterion_01_counterexample_distances_infima_and_path_bound() {
    let mut fails = Vec::new();
    let cfg = CounterexampleConfig::default();
    assert_eq!(cfg.tol, EQ_TOL);
    assert_eq!((cfg.k_min, cfg.k_max), (-50, 50));
    assert_eq!(cfg.n_paths, 100);
    assert_eq!(cfg.min_segments, 64);

    for r in [
        verify_counterexample(&cfg).expect("runnable"),
        verify_quotient_counterexample(&cfg).expect("runnable"),
    ] {
        assert_eq!(r.tolerances["equality"], EQ_TOL);
        assert_eq!(r.tolerances["wall infimum attainment"], ATTAIN_TOL);
        collect_failures(&r, &mut fails);
    }
    conclude("criterion 1", fails);
}

#[test]
fn criterion_02_quotient_mass_is_half_the_charge_ratio_distance() {
    let mut fails = Vec::new();
    let mut rng = sample::rng(2);
    let mut worst = 0.0f64;
    let mut shortcut_pairs = 0usize;
    for _ in 0..1000 {
        let z1 = sample::wide_tau(&mut rng);
        let z2 = sample::wide_tau(&mut rng);
        let dz = halfplane::d_z(
            HPoint::from_complex(z1).unwrap(),
            HPoint::from_complex(z2).unwrap(),
        );
        let b = quotient_distance(
            &QuotientPoint::geometric(z1).unwrap(),
            &QuotientPoint::geometric(z2).unwrap(),
        );
        worst = worst.max((b.d_mass - 0.5 * dz).abs());
        if dz >= 2.0 {
            shortcut_pairs += 1;
            if b.d.to_bits() != (0.5 * dz).to_bits() {
                fails.push(format!(
                    "shortcut not bit-exact at dz = {dz}: d = {:e}, half = {:e}",
                    b.d,
                    0.5 * dz
                ));
            }
        }
    }
    if worst > EXACT_TOL {
        fails.push(format!("worst mass gap {worst:e} > {EXACT_TOL:e}"));
    }
    if shortcut_pairs == 0 {
        fails.push("no pair ever crossed the distance-2 threshold".into());
    }
    conclude("criterion 2", fails);
}

#[test]
fn criterion_03_closed_forms_agree_with_windowed_brute_force() {
    let mut fails = Vec::new();
    let window = 10_000i64;
    let mut rng = sample::rng(3);

    let mut worst = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let s1 = sample::stab_point(&mut rng);
        let s2 = sample::stab_point(&mut rng);
        let closed = distance(&s1, &s2);
        let oracle = brute_force_distance(&s1, &s2, window);
        let tail = oracle_tail_bound(&s1, &s2, window);
        worst = worst.max((closed.d - oracle.d).abs() - tail);
    }
    if worst > EQ_TOL {
        fails.push(format!("distance vs oracle: excess beyond tail {worst:e} > {EQ_TOL:e}"));
    }

    // Lattice extremes against the same window, log then arg. The closed
    // form may only exceed the scan through the tail limit, which the tail
    // bound caps.
    let mut log_defect = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let z1 = sample::hpoint(&mut rng).z();
        let z2 = sample::hpoint(&mut rng).z();
        let ex = metric::lattice_log_extrema(z1, z2).unwrap();
        let tail = (z1 - z2).norm() / (window as f64 - z1.norm().max(z2.norm())).max(1.0);
        let mut bsup = f64::NEG_INFINITY;
        let mut binf = f64::INFINITY;
        for m in -window..=window {
            let f = (z1 - m as f64).norm().ln() - (z2 - m as f64).norm().ln();
            bsup = bsup.max(f);
            binf = binf.min(f);
        }
        log_defect = log_defect
            .max(bsup - ex.sup_value)
            .max(ex.sup_value - bsup.max(0.0) - tail)
            .max(ex.inf_value - binf)
            .max(binf.min(0.0) - tail - ex.inf_value);
    }
    if log_defect > EQ_TOL {
        fails.push(format!("log extrema vs scan: defect {log_defect:e} > {EQ_TOL:e}"));
    }

    let mut arg_defect = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let z1 = sample::interior_hpoint(&mut rng).z();
        let z2 = sample::interior_hpoint(&mut rng).z();
        let ex = metric::lattice_arg_extrema(z1, z2).unwrap();
        let tail = 2.0 * (z1 - z2).norm() / (window as f64 - z1.norm().max(z2.norm())).max(1.0);
        let mut bsup = f64::NEG_INFINITY;
        let mut binf = f64::INFINITY;
        for m in -window..=window {
            let h = ((z1 - m as f64) / (z2 - m as f64)).arg();
            bsup = bsup.max(h);
            binf = binf.min(h);
        }
        arg_defect = arg_defect
            .max(bsup - ex.sup_value)
            .max(ex.sup_value - bsup.max(0.0) - tail)
            .max(ex.inf_value - binf)
            .max(binf.min(0.0) - tail - ex.inf_value);
    }
    if arg_defect > EQ_TOL {
        fails.push(format!("arg extrema vs scan: defect {arg_defect:e} > {EQ_TOL:e}"));
    }
    conclude("criterion 3", fails);
}

#[test]
fn criterion_04_metric_axioms_for_all_three_distances() {
    let mut fails = Vec::new();
    let mut rng = sample::rng(4);

    let mut check = |label: &str, sym: f64, ident: f64, tri: f64| {
        if sym > EQ_TOL {
            fails.push(format!("{label}: symmetry defect {sym:e} > {EQ_TOL:e}"));
        }
        if ident > EQ_TOL {
            fails.push(format!("{label}: identity defect {ident:e} > {EQ_TOL:e}"));
        }
        if tri > EQ_TOL {
            fails.push(format!("{label}: triangle defect {tri:e} > {EQ_TOL:e}"));
        }
    };

    let (mut sym, mut ident, mut tri) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let a = sample::stab_point(&mut rng);
        let b = sample::stab_point(&mut rng);
        let c = sample::stab_point(&mut rng);
        sym = sym.max((distance(&a, &b).d - distance(&b, &a).d).abs());
        ident = ident.max(distance(&a, &a).d);
        tri = tri.max(distance(&a, &c).d - distance(&a, &b).d - distance(&b, &c).d);
    }
    check("full metric", sym, ident, tri);

    let (mut sym, mut ident, mut tri) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let a = sample::quotient_point(&mut rng);
        let b = sample::quotient_point(&mut rng);
        let c = sample::quotient_point(&mut rng);
        sym = sym.max((quotient_distance(&a, &b).d - quotient_distance(&b, &a).d).abs());
        ident = ident.max(quotient_distance(&a, &a).d);
        tri = tri.max(
            quotient_distance(&a, &c).d - quotient_distance(&a, &b).d - quotient_distance(&b, &c).d,
        );
    }
    check("quotient metric", sym, ident, tri);

    let (mut sym, mut ident, mut tri) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let a = sample::hpoint(&mut rng);
        let b = sample::hpoint(&mut rng);
        let c = sample::hpoint(&mut rng);
        sym = sym.max((halfplane::d_z(a, b) - halfplane::d_z(b, a)).abs());
        ident = ident.max(halfplane::d_z(a, a));
        tri = tri.max(halfplane::d_z(a, c) - halfplane::d_z(a, b) - halfplane::d_z(b, c));
    }
    check("charge-ratio metric", sym, ident, tri);

    conclude("criterion 4", fails);
}

#[test]
fn criterion_05_hyperbolic_geodesics_are_additive_and_affine() {
    let mut fails = Vec::new();
    let mut rng = sample::rng(5);
    let mut defect = 0.0f64;
    let mut affine = 0.0f64;
    let mut checked = 0usize;
    while checked < 200 {
        let a = sample::interior_hpoint(&mut rng);
        let b = sample::interior_hpoint(&mut rng);
        if (a.z() - b.z()).norm() < 1e-6 {
            continue;
        }
        checked += 1;
        let gamma = sample_hyperbolic_geodesic(a, b, 17, 1e-6).unwrap();
        let rep = additivity_check(gamma.points(), MetricKind::DZ, EQ_TOL).unwrap();
        defect = defect.max(rep.additivity_defect);
        if rep.additivity_defect <= EQ_TOL {
            let line = reparametrize_arclength(gamma.points(), MetricKind::DZ, EQ_TOL).unwrap();
            let params = line.parameters().expect("set by reparametrization");
            let cum = line.cumulative_lengths();
            let total = *cum.last().unwrap();
            for (p, c) in params.iter().zip(&cum) {
                affine = affine.max((p - c / total).abs());
            }
        }
    }
    if defect > EQ_TOL {
        fails.push(format!("additivity defect {defect:e} > {EQ_TOL:e}"));
    }
    if affine > EQ_TOL {
        fails.push(format!("affine reparametrization defect {affine:e} > {EQ_TOL:e}"));
    }
    conclude("criterion 5", fails);
}

#[test]
fn criterion_06_two_distinct_geodesics_between_one_endpoint_pair() {
    let mut fails = Vec::new();

    let r = verify_nonunique_geodesic(0.01).expect("runnable");
    collect_failures(&r, &mut fails);

    // Independent cross-check of the separation at the bend vertex, measured
    // hyperbolically at matched arclength fractions.
    let rho = MoebiusMap::new(10.0, -1.0, 1.0, 0.0).unwrap();
    let inv = rho.inverse();
    let a = HPoint::from_complex(inv.apply(Complex64::new(0.0, 9.0))).unwrap();
    let b = HPoint::from_complex(inv.apply(Complex64::new(0.0, 11.0))).unwrap();
    let bent = bent_geodesic(0.01).unwrap();
    let cum = bent.cumulative_lengths();
    let total = *cum.last().unwrap();
    let j = bent.points().len() / 2;
    let PathPoint::Half(vertex) = bent.points()[j] else {
        panic!("bent geodesic lives in the half-plane");
    };
    let g = dz_geodesic_point(a, b, cum[j] / total).unwrap();
    let sep = halfplane::d_hyp(vertex.z(), g.z()).unwrap();
    if sep <= SEP_TOL {
        fails.push(format!("vertex separation {sep:e} <= {SEP_TOL:e}"));
    }
    conclude("criterion 6", fails);
}

#[test]
fn criterion_07_the_mass_part_only_sees_the_wall_shadow() {
    let mut fails = Vec::new();
    let mut rng = sample::rng(7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let s1 = sample::stab_point(&mut rng);
        let s2 = sample::stab_point(&mut rng);
        let direct = distance(&s1, &s2).d_mass;
        let shadow = distance(&s1.project_closure(), &s2.project_closure()).d_mass;
        worst = worst.max((direct - shadow).abs());
    }
    if worst > EXACT_TOL {
        fails.push(format!("projection changed a mass part by {worst:e} > {EXACT_TOL:e}"));
    }
    conclude("criterion 7", fails);
}

#[test]
fn criterion_08_shift_centering_matches_a_grid_minimization() {
    const CENTER_TOL: f64 = 1e-6;
    const GRID_STEP: f64 = 1e-4;

    let mut fails = Vec::new();
    let mut rng = sample::rng(8);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let sup = rng.gen_range(0.0..10.0);
        let inf = rng.gen_range(-10.0..0.0);
        let (value, _) = metric::supinf_center(sup, inf).unwrap();

        // Grid pass over [-10, 10], then two zooms around the incumbent so
        // the grid error drops below the agreement tolerance.
        let g = |l: f64| (sup + l).max(-(inf + l)).max(l.abs());
        let mut best = f64::INFINITY;
        let mut best_l = -10.0;
        let n = (20.0 / GRID_STEP).round() as usize;
        for i in 0..=n {
            let l = -10.0 + GRID_STEP * i as f64;
            if g(l) < best {
                best = g(l);
                best_l = l;
            }
        }
        let mut span = GRID_STEP;
        for _ in 0..2 {
            let lo = best_l - span;
            let fine = span / 50.0;
            for i in 0..=100 {
                let l = lo + fine * i as f64;
                if g(l) < best {
                    best = g(l);
                    best_l = l;
                }
            }
            span = fine;
        }

        worst = worst.max((value - best).abs());
    }
    if worst > CENTER_TOL {
        fails.push(format!("closed form vs grid: {worst:e} > {CENTER_TOL:e}"));
    }
    conclude("criterion 8", fails);
}

#[test]
fn criterion_09_composite_paths_stay_within_the_detour_budget() {
    let mut fails = Vec::new();
    let mut rng = sample::rng(9);

    let bracket = |label: &str, d: f64, len: f64, fails: &mut Vec<String>| {
        if d - len > EQ_TOL {
            fails.push(format!("{label}: path undercuts the distance by {:e}", d - len));
        }
        if len - 2.0 * d - 0.05 > EQ_TOL {
            fails.push(format!(
                "{label}: path overshoots the budget by {:e}",
                len - 2.0 * d - 0.05
            ));
        }
    };

    // (a) geometric against algebraic, same chamber.
    for _ in 0..100 {
        let k = rng.gen_range(-2..=2);
        let g = ChartPoint::new(k, rng.gen_range(-2.0..2.0), rng.gen_range(0.05..0.95), 0.0, 0.0)
            .unwrap();
        let q1 = g.to_stab().unwrap().quotient();
        let q2 =
            QuotientPoint::algebraic(k, rng.gen_range(-2.0..2.0), rng.gen_range(1.0..2.5)).unwrap();
        let d = quotient_distance(&q1, &q2).d;
        let len = composite_path(&q1, &q2, 1e-6, 256).unwrap().length();
        bracket("case a", d, len, &mut fails);
    }

    // (b) both algebraic in one chamber: the straight segment is exact.
    let mut exact_gap = 0.0f64;
    for _ in 0..100 {
        let k = rng.gen_range(-2..=2);
        let q1 =
            QuotientPoint::algebraic(k, rng.gen_range(-2.0..2.0), rng.gen_range(1.0..3.0)).unwrap();
        let q2 =
            QuotientPoint::algebraic(k, rng.gen_range(-2.0..2.0), rng.gen_range(1.0..3.0)).unwrap();
        if q1.canonically_equal(&q2, 0.0) {
            continue;
        }
        let d = quotient_distance(&q1, &q2).d;
        let len = straight_chamber_path(&q1, &q2, 33).unwrap().length();
        exact_gap = exact_gap.max((len - d).abs());
        bracket("case b", d, len, &mut fails);
    }
    if exact_gap > EQ_TOL {
        fails.push(format!("case b: straight path misses the distance by {exact_gap:e}"));
    }

    // (c) algebraic endpoints in different chambers.
    for _ in 0..100 {
        let k1 = rng.gen_range(-2..=1);
        let k2 = rng.gen_range(k1 + 1..=3);
        let q1 =
            QuotientPoint::algebraic(k1, rng.gen_range(-2.0..2.0), rng.gen_range(1.0..2.5)).unwrap();
        let q2 =
            QuotientPoint::algebraic(k2, rng.gen_range(-2.0..2.0), rng.gen_range(1.0..2.5)).unwrap();
        let d = quotient_distance(&q1, &q2).d;
        let len = composite_path(&q1, &q2, 1e-6, 256).unwrap().length();
        bracket("case c", d, len, &mut fails);
    }

    conclude("criterion 9", fails);
}

#[test]
fn criterion_10_chart_round_trips_return_the_coordinates() {
    let mut fails = Vec::new();
    let mut rng = sample::rng(10);
    let mut worst = 0.0f64;
    let mut wall_points = 0usize;
    for _ in 0..1000 {
        let c = sample::chart_point(&mut rng);
        if c.beta == 1.0 {
            wall_points += 1;
        }
        let back = c.to_stab().unwrap().to_chart(c.k).unwrap();
        worst = worst
            .max((back.alpha - c.alpha).abs())
            .max((back.beta - c.beta).abs())
            .max((back.x - c.x).abs())
            .max((back.y - c.y).abs());
    }
    if worst > EXACT_TOL {
        fails.push(format!("round trip drift {worst:e} > {EXACT_TOL:e}"));
    }
    if wall_points == 0 {
        fails.push("no draw ever landed on the wall".into());
    }
    conclude("criterion 10", fails);
}
