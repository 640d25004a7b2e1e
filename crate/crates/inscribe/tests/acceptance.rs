//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Oracle-based and property-based checks covering both solvers, the
//! sequence machinery, the circumscribed tools, and the complexity claims.

use std::time::Instant;

use inscribe::circumscribed::{
    max_diameter_circumscribed, propagate_eq5, tangent_points,
};
use inscribe::gen::{jittered_ngon, random_polygon, regular_ngon};
use inscribe::geom::{line_line_intersection, Anchor, ConvexPolygon, InscribedPolygon, Line, Point};
use inscribe::min_area::min_area_inscribed;
use inscribe::min_perimeter::{
    build_pi_table, check_reflection_law, min_perimeter_inscribed, solve_all_n, FagnanoSolution,
};
use inscribe::oracles::{
    brute_min_area, global_min_perimeter, pairwise_diameter, OracleBudget,
};
use inscribe::sequences::{
    area_admissible, perimeter_admissible, realize_area_sequence, realize_perimeter_sequence,
    sequence_of, CyclicSequence, DEFAULT_AREA_EPS, DEFAULT_PERIM_DELTA, DEFAULT_PERIM_ZETA,
};

/// Serializes the criteria: the complexity-slope measurements in criterion
/// 10 are wall-clock timings and must not share cores with the other
/// (CPU-heavy) criteria.
fn lock() -> std::sync::MutexGuard<'static, ()> {
    static LOCK: std::sync::Mutex<()> = std::sync::Mutex::new(());
    LOCK.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(criterion: usize, desc: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("criterion {criterion} ({desc}): PASS"),
        Err(msg) => println!("criterion {criterion} ({desc}): FAIL - {msg}"),
    }
    if let Err(msg) = result {
        panic!("criterion {criterion} failed: {msg}");
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn criterion_01_min_area_oracle_equivalence() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let budget = OracleBudget::default();
        for seed in 0..200u64 {
            let n = 5 + (seed as usize) % 12;
            let c = random_polygon(n, seed);
            let res = min_area_inscribed(&c);
            let (value, subsets) =
                brute_min_area(&c, &budget).map_err(|e| e.to_string())?;
            check(
                (res.value - value).abs() <= 1e-9 * value.max(1.0),
                || format!("seed {seed}: value {} vs oracle {}", res.value, value),
            )?;
            let mut dp = res.all_vertex_optima.decode_all(usize::MAX);
            dp.iter_mut().for_each(|s| s.sort_unstable());
            dp.sort();
            check(dp == subsets, || {
                format!("seed {seed}: optima sets differ: {dp:?} vs {subsets:?}")
            })?;
        }
        Ok(())
    };
    report(1, "min-area oracle equivalence on 200 instances", run());
}

#[test]
fn criterion_02_min_area_closed_form() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let c = regular_ngon(5, 1.0);
        let s = 2.0 * 36f64.to_radians().sin();
        let expected =
            2.5 * 72f64.to_radians().sin() - 2.0 * (0.5 * s * s * 108f64.to_radians().sin());
        let res = min_area_inscribed(&c);
        check(
            (res.value - expected).abs() < 1e-9,
            || format!("value {} vs closed form {}", res.value, expected),
        )?;
        // Confirm through the independent oracle as well.
        let (oracle, _) = brute_min_area(&c, &OracleBudget::default()).unwrap();
        check(
            (oracle - expected).abs() < 1e-9,
            || format!("oracle {} vs closed form {}", oracle, expected),
        )
    };
    report(2, "regular-pentagon min-area closed form", run());
}

#[test]
fn criterion_03_min_perimeter_oracle_equivalence() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let budget = OracleBudget::default();
        for seed in 0..50u64 {
            let n = 5 + (seed as usize) % 6;
            let c = random_polygon(n, 1000 + seed);
            let res = min_perimeter_inscribed(&c);
            let (oracle, _) =
                global_min_perimeter(&c, &budget).map_err(|e| e.to_string())?;
            check(
                (res.value - oracle).abs() <= 1e-6 * oracle,
                || format!("seed {seed} n {n}: solver {} vs oracle {}", res.value, oracle),
            )?;
        }
        Ok(())
    };
    report(3, "min-perimeter oracle equivalence on 50 instances", run());
}

#[test]
fn criterion_04_regular_hosts_midpoint_polygon() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        for n in 5..=12usize {
            let c = regular_ngon(n, 1.0);
            let res = min_perimeter_inscribed(&c);
            check(res.witness.anchors().len() == n, || {
                format!("n {n}: witness has {} anchors", res.witness.anchors().len())
            })?;
            for a in res.witness.anchors() {
                match *a {
                    Anchor::OnSide { tau, .. } => check(
                        (tau - 0.5).abs() < 1e-7,
                        || format!("n {n}: anchor tau {tau}"),
                    )?,
                    Anchor::VertexOf(v) => {
                        return Err(format!("n {n}: unexpected vertex anchor {v}"))
                    }
                }
            }
            let midpoint = InscribedPolygon::new(
                &c,
                (0..n).map(|i| Anchor::OnSide { side: i, tau: 0.5 }).collect(),
            )
            .unwrap();
            let expected = midpoint.perimeter(&c);
            check(
                (res.value - expected).abs() < 1e-9,
                || format!("n {n}: value {} vs midpoint perimeter {}", res.value, expected),
            )?;
        }
        Ok(())
    };
    report(4, "regular hosts: witness is the midpoint polygon", run());
}

#[test]
fn criterion_05_hexagon_family() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let c = regular_ngon(6, 1.0);
        let (witnesses, perimeter) = match solve_all_n(&c) {
            FagnanoSolution::Family { witnesses, perimeter, .. } => (witnesses, perimeter),
            other => return Err(format!("expected Family, got {other:?}")),
        };
        check(witnesses.len() == 3, || "expected three sampled witnesses".into())?;
        let rings: Vec<Vec<Point>> = witnesses.iter().map(|w| w.points(&c)).collect();
        for w in &witnesses {
            let p = w.perimeter(&c);
            check(
                (p - perimeter).abs() < 1e-10 * perimeter,
                || format!("family member perimeter {} vs {}", p, perimeter),
            )?;
        }
        for a in 0..3 {
            for b in a + 1..3 {
                let (ra, rb) = (&rings[a], &rings[b]);
                let mut offsets = Vec::new();
                for k in 0..6 {
                    let da = ra[(k + 1) % 6] - ra[k];
                    let db = rb[(k + 1) % 6] - rb[k];
                    let sin = da.cross(db).abs() / (da.norm() * db.norm());
                    check(sin < 1e-9, || {
                        format!("witnesses {a},{b}: side {k} angle deviation {sin}")
                    })?;
                    let line = Line::through(ra[k], ra[(k + 1) % 6]);
                    let mid = rb[k].lerp(rb[(k + 1) % 6], 0.5);
                    offsets.push(line.signed_dist(mid));
                }
                for k in 0..6 {
                    check(offsets[k] * offsets[(k + 1) % 6] < 0.0, || {
                        format!("witnesses {a},{b}: offsets not alternating: {offsets:?}")
                    })?;
                }
            }
        }
        Ok(())
    };
    report(5, "regular-hexagon all-interior family (parallel sides)", run());
}

#[test]
fn criterion_06_reflection_law_residuals() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let mut witnesses: Vec<(ConvexPolygon, InscribedPolygon)> = Vec::new();
        for seed in 0..50u64 {
            let n = 5 + (seed as usize) % 6;
            let c = random_polygon(n, 1000 + seed);
            let res = min_perimeter_inscribed(&c);
            witnesses.push((c, res.witness));
        }
        for n in 5..=12usize {
            let c = regular_ngon(n, 1.0);
            let res = min_perimeter_inscribed(&c);
            witnesses.push((c, res.witness));
        }
        let hex = regular_ngon(6, 1.0);
        if let FagnanoSolution::Family { witnesses: fam, .. } = solve_all_n(&hex) {
            for w in fam {
                witnesses.push((hex.clone(), w));
            }
        }
        for (i, (c, w)) in witnesses.iter().enumerate() {
            let residuals = check_reflection_law(c, w).map_err(|e| e.to_string())?;
            for r in residuals.into_iter().flatten() {
                check(r < 1e-7, || format!("witness {i}: residual {r}"))?;
            }
        }
        Ok(())
    };
    report(6, "reflection law at every interior anchor", run());
}

/// All position-distinct admissible words of length n under the given
/// predicate.
fn admissible_words(n: usize, pred: fn(&CyclicSequence) -> bool) -> Vec<CyclicSequence> {
    (0u32..1 << n)
        .map(|mask| {
            let word: String =
                (0..n).map(|i| if mask & (1 << i) != 0 { 'U' } else { 'N' }).collect();
            CyclicSequence::new(word).unwrap()
        })
        .filter(pred)
        .collect()
}

#[test]
fn criterion_07_area_sequence_round_trip() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let mut total = 0;
        for n in 5..=7usize {
            for s in admissible_words(n, area_admissible) {
                total += 1;
                let c = realize_area_sequence(&s, DEFAULT_AREA_EPS)
                    .map_err(|e| format!("{s}: {e}"))?;
                let res = min_area_inscribed(&c);
                check(res.all_vertex_optima.is_unique() && res.slide_families.is_empty(), || {
                    format!("{s}: optimum not unique")
                })?;
                let got = sequence_of(&c, &res.one_witness);
                check(got == s, || format!("expected {s}, recovered {got}"))?;
            }
        }
        // The admissible words for n in {5, 6, 7} number 5 + 5 + 7.
        check(total == 17, || format!("enumerated {total} admissible words"))
    };
    report(7, "area-sequence realization round-trip (n = 5..7)", run());
}

#[test]
fn criterion_08_perimeter_sequence_round_trip() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let mut words: Vec<CyclicSequence> = Vec::new();
        for n in 5..=6usize {
            words.extend(admissible_words(n, perimeter_admissible));
        }
        for fig in ["NUUNU", "NUUNUU"] {
            check(
                words.iter().any(|s| s.as_str() == fig),
                || format!("{fig} missing from enumeration"),
            )?;
        }
        for s in words {
            let c = realize_perimeter_sequence(&s, DEFAULT_PERIM_ZETA, DEFAULT_PERIM_DELTA)
                .map_err(|e| format!("{s}: {e}"))?;
            let res = min_perimeter_inscribed(&c);
            let got = sequence_of(&c, &res.witness);
            check(got == s, || format!("expected {s}, recovered {got}"))?;
        }
        Ok(())
    };
    report(8, "perimeter-sequence realization round-trip (n = 5..6)", run());
}

#[test]
fn criterion_09_calipers_vs_pairwise() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        for seed in 0..500u64 {
            // n >= 7 keeps the jittered angular gaps small enough that the
            // consecutive-angle condition always holds.
            let n = 7 + (seed as usize) % 8;
            let c = jittered_ngon(n, 2000 + seed);
            let rep = max_diameter_circumscribed(&c).map_err(|e| e.to_string())?;
            let (value, mut pairs) = pairwise_diameter(&rep.hull);
            check(
                (rep.value - value).abs() <= 1e-12 * value,
                || format!("seed {seed}: {} vs {}", rep.value, value),
            )?;
            pairs.sort_unstable();
            check(rep.pairs == pairs, || {
                format!("seed {seed}: tie sets differ: {:?} vs {:?}", rep.pairs, pairs)
            })?;
        }
        Ok(())
    };
    report(9, "rotating calipers vs pairwise oracle on 500 instances", run());
}

fn log_log_slope(samples: &[(usize, u128)]) -> f64 {
    let pts: Vec<(f64, f64)> =
        samples.iter().map(|&(n, t)| ((n as f64).ln(), (t as f64).ln())).collect();
    let m = pts.len() as f64;
    let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

fn bench<T>(sizes: &[usize], mut f: impl FnMut(&ConvexPolygon) -> T) -> Vec<(usize, u128)> {
    sizes
        .iter()
        .map(|&n| {
            let c = jittered_ngon(n, 7);
            let best = (0..3)
                .map(|_| {
                    let start = Instant::now();
                    std::hint::black_box(f(&c));
                    start.elapsed().as_nanos()
                })
                .min()
                .unwrap();
            (n, best)
        })
        .collect()
}

#[test]
fn criterion_10_complexity_claims() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        let area = bench(&[1024, 2048, 4096, 8192], |c| min_area_inscribed(c).value);
        let slope = log_log_slope(&area);
        check(slope <= 1.3, || format!("min-area slope {slope:.2} ({area:?})"))?;

        let pi = bench(&[32, 64, 128, 256], |c| build_pi_table(c).get(0, c.len()));
        let slope = log_log_slope(&pi);
        check(slope <= 3.3, || format!("pi-table slope {slope:.2} ({pi:?})"))?;

        let diam =
            bench(&[1024, 2048, 4096, 8192], |c| max_diameter_circumscribed(c).unwrap().value);
        let slope = log_log_slope(&diam);
        check(slope <= 1.3, || format!("circum-diameter slope {slope:.2} ({diam:?})"))
    };
    report(10, "empirical complexity slopes", run());
}

#[test]
fn criterion_11_first_order_stationarity() {
    let _guard = lock();
    let run = || -> Result<(), String> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut solved = 0;
        let mut attempts = 0;
        while solved < 100 {
            attempts += 1;
            if attempts > 5000 {
                return Err(format!("only {solved} configurations solved"));
            }
            let n = 5 + rng.gen_range(0..4usize);
            let c = random_polygon(n, 5000 + attempts);
            let j = rng.gen_range(0..n);
            let p = c.vertex(j as isize);
            // Support line through p_j: direction strictly between the two
            // adjacent side directions.
            let d_prev = (p - c.vertex(j as isize - 1)).normalized();
            let d_next = (c.vertex(j as isize + 1) - p).normalized();
            let t = rng.gen_range(0.2..0.8);
            let dir = (d_prev.scale(1.0 - t) + d_next.scale(t)).normalized();
            let q_i = p - dir.scale(rng.gen_range(0.3..1.5));
            let Ok(Some(q_i1)) = propagate_eq5(&c, q_i, j) else { continue };

            // Second tangents from both endpoints and the induced angles.
            let other = |z: Point| {
                let (r, l) = tangent_points(&c, z);
                c.vertex(if r == j { l } else { r } as isize)
            };
            let (ti, ti1) = (other(q_i), other(q_i1));
            let l_prev = Line::through(ti, q_i);
            let l_next = Line::through(q_i1, ti1);
            let l_mid = Line::through(q_i, q_i1);
            let Some(x) = line_line_intersection(&l_prev, &l_next) else { continue };
            // x must be separated from the host by the middle line.
            if l_mid.signed_dist(x) * l_mid.signed_dist(c.centroid()) >= 0.0 {
                continue;
            }
            let angle = |u: Point, v: Point| u.cross(v).abs().atan2(u.dot(v));
            let gamma = angle(q_i - x, q_i1 - x);
            let beta_i = angle(p - q_i, ti - q_i);
            let (d_prev, d_next) =
                (l_prev.signed_dist(p).abs(), l_next.signed_dist(p).abs());
            let f = |beta: f64| {
                d_prev / beta.sin()
                    + d_next / (std::f64::consts::PI + gamma - beta).sin()
            };
            let h = 1e-6;
            let deriv = (f(beta_i + h) - f(beta_i - h)) / (2.0 * h);
            let scale = f(beta_i).max(1.0);
            if (deriv / scale).abs() >= 1e-6 {
                return Err(format!(
                    "attempt {attempts}: |f'| = {} at solved beta",
                    deriv.abs()
                ));
            }
            solved += 1;
        }
        Ok(())
    };
    report(11, "first-order stationarity of the propagated point", run());
}
