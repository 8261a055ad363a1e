//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use tiltwall::preset;
use tiltwall_core::{
    heart_bounds, int, parse_rational, point_on_wall, q_wall, rat, solve_e2_for_wall,
    verify_class, vertical_ray_stable, wall_between, walls_nested, ChernVector, Conclusion,
    DivisorClass, E2Solutions, HeartInterval, Lattice, Nesting, Rational, TiltPoint, Variety,
    VerifyOptions, WallLocus,
};

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn o_l() -> ChernVector {
    ChernVector::new(int(7), int(4), int(1), rat(1, 6))
}

fn random_lattice_class(rng: &mut ChaCha8Rng, lattice: &Lattice) -> ChernVector {
    let m = lattice.moduli();
    ChernVector::new(
        int(rng.gen_range(-4..=4)) * &m[0],
        int(rng.gen_range(-20..=20)) * &m[1],
        int(rng.gen_range(-30..=30)) * &m[2],
        int(rng.gen_range(-40..=40)) * &m[3],
    )
}

/// `f` is affine in `s` with coefficients of degree at most four in β, so
/// vanishing on `{0, 1} × {five β values}` makes it identically zero.
fn vanishes_identically(f: impl Fn(&TiltPoint) -> Rational) -> bool {
    [int(0), int(1)].iter().all(|s| {
        [int(-2), int(-1), int(0), rat(1, 3), int(2)]
            .iter()
            .all(|b| f(&TiltPoint::new(s.clone(), b.clone()).unwrap()).is_zero())
    })
}

fn criterion_1() -> Result<String, String> {
    let builtin = Variety::blowup_p3();
    let shipped = preset::load("blowup-p3").map_err(|e| e.to_string())?;
    for x in [&builtin, &shipped] {
        let ch = x.chern_of_line_bundle(&DivisorClass::from_ints(1, 0)).map_err(|e| e.to_string())?;
        ensure!(ch == o_l(), "ch(O(L)) = {ch:?}");
        ensure!(x.h_cubed() == int(7), "H^3 = {}", x.h_cubed());
    }
    Ok("ch(O(L)) = (7, 4, 1, 1/6), H^3 = 7".into())
}

fn criterion_2() -> Result<String, String> {
    let v = o_l();
    let mut points = 0;
    let mut signs = [0usize; 3];
    for i in 0..=40 {
        for j in -10..=40 {
            let p = TiltPoint::new(rat(i, 320), rat(j, 60)).unwrap();
            let shifted = &p.beta - rat(1, 4);
            let circle = &p.s + &shifted * &shifted - rat(1, 16);
            let (q, c) = (v.q_form(&p).cmp(&Rational::zero()), circle.cmp(&Rational::zero()));
            ensure!(q == c, "sign mismatch at {p:?}: Q {q:?}, circle {c:?}");
            signs[(q as i8 + 1) as usize] += 1;
            points += 1;
        }
    }
    ensure!(points >= 1000, "only {points} grid points");
    ensure!(signs.iter().all(|&n| n > 0), "grid does not straddle the circle: {signs:?}");
    ensure!(
        vanishes_identically(|p| v.q_form(p) - (int(2) * (&p.s + &p.beta * &p.beta) - &p.beta)),
        "Q differs from 2(s + beta^2) - beta"
    );
    Ok(format!("{points} grid points (neg/zero/pos = {signs:?}); Q = 2(s + beta^2) - beta"))
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tiltwall"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    let code = out.status.code().ok_or("killed by signal")?;
    Ok((code, String::from_utf8(out.stdout).map_err(|e| e.to_string())?))
}

fn criterion_3() -> Result<String, String> {
    let start = Instant::now();
    let (code, stdout) = run_cli(&["verify", "--variety", "blowup-p3", "--divisor", "L"])?;
    let elapsed = start.elapsed();
    ensure!(code == 0, "exit code {code}");
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    let report: Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
    ensure!(report["conclusion"] == "CounterexampleConfirmed", "conclusion {}", report["conclusion"]);
    let pairs = report["enumeration_result"].as_array().ok_or("no enumeration_result")?;
    ensure!(pairs.len() == 1, "{} surviving pairs", pairs.len());
    ensure!(pairs[0]["e0"] == "7" && pairs[0]["e1"] == "4", "pair {} {}", pairs[0]["e0"], pairs[0]["e1"]);
    ensure!(
        pairs[0]["e2_solutions"].as_array().is_some_and(Vec::is_empty),
        "e2 solutions {}",
        pairs[0]["e2_solutions"]
    );
    let field = |k: &str| {
        report["witness_point"][k]
            .as_str()
            .and_then(|s| parse_rational(s).ok())
            .ok_or_else(|| format!("witness_point.{k} missing"))
    };
    let witness = TiltPoint::new(field("s")?, field("beta")?).map_err(|e| e.to_string())?;
    let q = o_l().q_form(&witness);
    ensure!(q.is_negative(), "Q = {q} at the witness");
    Ok(format!(
        "exit 0, single pair (7, 4) with no e2, Q = {q} at (s, beta) = ({}, {}), {elapsed:.2?}",
        witness.s, witness.beta
    ))
}

fn criterion_4() -> Result<String, String> {
    let v = o_l();
    let target = WallLocus::new(int(2), int(-1), int(0));
    ensure!(q_wall(&v).same_locus(&target), "Q-wall is not (2, -1, 0)");
    let sol = solve_e2_for_wall(&v, &int(8), &int(4), &target).map_err(|e| e.to_string())?;
    ensure!(sol == E2Solutions::Finite(vec![int(1)]), "e2 solutions for (8, 4): {sol:?}");
    let induced = wall_between(&v, &ChernVector::new(int(8), int(4), int(1), int(0))).ok_or("no wall")?;
    ensure!(induced.same_locus(&target), "(8, 4, 1) induces {induced:?}");

    let x = Variety::blowup_p3();
    let hooked = VerifyOptions { enforce_lattice: false, ..VerifyOptions::default() };
    let report = verify_class(&x, &v, &hooked).map_err(|e| e.to_string())?;
    ensure!(
        report.matches().any(|c| c.e0 == int(8) && c.e1 == int(4) && c.e2_solutions == E2Solutions::Finite(vec![int(1)])),
        "lattice-free run does not find (8, 4, 1)"
    );
    ensure!(report.conclusion == Conclusion::WallCandidateFound, "lattice-free conclusion {:?}", report.conclusion);

    let strict = verify_class(&x, &v, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure!(
        !strict.enumeration_result.iter().any(|c| c.e0 == int(8)),
        "e0 = 8 survives the lattice step"
    );
    ensure!(strict.matches().next().is_none(), "lattice run still matches");
    Ok("(8, 4, e2 = 1) reproduces (2, -1, 0) without the lattice; excluded with it".into())
}

fn criterion_5() -> Result<String, String> {
    let x = Variety::blowup_p3();
    let r = vertical_ray_stable(&o_l(), &rat(1, 2), x.lattice()).map_err(|e| e.to_string())?;
    ensure!(r.stable, "not stable: {r:?}");
    ensure!(r.admissible == vec![int(0), rat(1, 2)], "admissible {:?}", r.admissible);
    Ok("stable at beta = 1/2, twisted e1 in {0, 1/2}".into())
}

fn criterion_6() -> Result<String, String> {
    let start = Instant::now();
    let x = Variety::blowup_p3();
    let v = o_l();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut compared, mut skipped) = (0, 0);
    while compared < 10_000 {
        let a = wall_between(&v, &random_lattice_class(&mut rng, x.lattice()));
        let b = wall_between(&v, &random_lattice_class(&mut rng, x.lattice()));
        let (Some(a), Some(b)) = (a, b) else {
            skipped += 1;
            continue;
        };
        if !a.is_realizable() || !b.is_realizable() {
            skipped += 1;
            continue;
        }
        let n = walls_nested(&a, &b).map_err(|e| e.to_string())?;
        ensure!(n != Nesting::Crossing, "crossing walls {a:?} and {b:?}");
        compared += 1;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{compared} wall pairs, none crossing ({skipped} degenerate draws skipped), {elapsed:.2?}"))
}

fn criterion_7() -> Result<String, String> {
    let x = Variety::blowup_p3();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut classes, mut samples, mut no_points) = (0, 0, 0);
    while classes < 1000 {
        let v = random_lattice_class(&mut rng, x.lattice());
        let w = q_wall(&v);
        let (e0, e1, e2, e3) = (&v.e0, &v.e1, &v.e2, &v.e3);
        ensure!(w.x == e1 * e1 - int(2) * e0 * e2, "x != Delta for {v:?}");
        ensure!(w.y == int(6) * e0 * e3 - int(2) * e1 * e2, "y mismatch for {v:?}");
        ensure!(w.z == int(4) * e2 * e2 - int(6) * e1 * e3, "z mismatch for {v:?}");
        ensure!(
            vanishes_identically(|p| v.q_form(p) - w.eval(p)),
            "Q(v) is not x(s + beta^2) + y beta + z for {v:?}"
        );
        match point_on_wall(&w, 8) {
            Ok(points) => {
                for p in &points {
                    ensure!(v.q_form(p).is_zero(), "Q = {} on the Q-wall of {v:?}", v.q_form(p));
                }
                samples += points.len();
            }
            Err(_) => no_points += 1,
        }
        classes += 1;
    }
    ensure!(samples > 0, "no wall points sampled");
    Ok(format!("{classes} classes, {samples} wall points with Q = 0 ({no_points} classes with no real locus)"))
}

/// Every lattice pair in the box, both heart inequalities at both ends.
fn brute_force(
    v: &ChernVector,
    lo: &Rational,
    hi: &Rational,
    e0_range: (i64, i64),
    lattice: &Lattice,
) -> Vec<(Rational, Rational)> {
    let (d0, d1) = (lattice.modulus(0), lattice.modulus(1));
    let beta_max = lo.abs().max(hi.abs());
    let e0_abs = e0_range.0.abs().max(e0_range.1.abs());
    let bound = beta_max * (int(e0_abs) + v.e0.abs()) + v.e1.abs();
    let span: i64 = (bound / d1).ceil().to_integer().try_into().unwrap_or(i64::MAX) + 1;
    let mut out = Vec::new();
    for e0 in (e0_range.0..=e0_range.1).map(int) {
        if !(&e0 / d0).is_integer() {
            continue;
        }
        for k in -span..=span {
            let e1 = int(k) * d1;
            let inside = [lo, hi].iter().all(|b| {
                let sub = &e1 - *b * &e0;
                !sub.is_negative() && sub <= &v.e1 - *b * &v.e0
            });
            if inside {
                out.push((e0.clone(), e1));
            }
        }
    }
    out
}

fn criterion_8() -> Result<String, String> {
    let start = Instant::now();
    let x = Variety::blowup_p3();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut instances, mut pairs) = (0, 0);
    while instances < 100 {
        let v = ChernVector::new(
            int(7 * rng.gen_range(1..=3)),
            int(rng.gen_range(-10..=20)),
            rat(rng.gen_range(-10..=10), 2),
            int(0),
        );
        let a = rat(rng.gen_range(-12..=12), rng.gen_range(1..=6));
        let b = &a + rat(rng.gen_range(0..=8), rng.gen_range(1..=6));
        let interval = HeartInterval::rational(a.clone(), b.clone()).map_err(|e| e.to_string())?;
        let lo = rng.gen_range(-40..=20);
        let hi = lo + rng.gen_range(0..=40);
        // intervals where v leaves the heart are rejected by design
        let Ok(fast) = heart_bounds(&v, &interval, &int(lo), &int(hi), x.lattice()) else {
            continue;
        };
        let slow = brute_force(&v, &a, &b, (lo, hi), x.lattice());
        ensure!(fast == slow, "mismatch for v = {v:?}, [{a}, {b}], e0 in [{lo}, {hi}]");
        pairs += fast.len();
        instances += 1;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{instances} instances agree ({pairs} pairs total), {elapsed:.2?}"))
}

fn criterion_9() -> Result<String, String> {
    let p3 = Variety::p3();
    let v = p3.chern_of_line_bundle(&DivisorClass::from_ints(1, 0)).map_err(|e| e.to_string())?;
    let report = verify_class(&p3, &v, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure!(
        report.conclusion != Conclusion::CounterexampleConfirmed,
        "P^3 reported a counterexample"
    );
    let (code, stdout) = run_cli(&["verify", "--variety", "p3", "--divisor", "L"])?;
    ensure!(code != 0, "CLI exit 0 on P^3");
    ensure!(!stdout.contains("CounterexampleConfirmed"), "CLI confirmed on P^3");
    Ok(format!("O(1) on P^3: {} (CLI exit {code})", report.conclusion.as_str()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("Chern data of O(L) on the blow-up", criterion_1),
        ("circle equivalence of Q for O(L)", criterion_2),
        ("counterexample pipeline via the CLI", criterion_3),
        ("integrality guard regression", criterion_4),
        ("vertical-line argument at beta = 1/2", criterion_5),
        ("nested walls for a fixed class", criterion_6),
        ("Q-wall is a wall", criterion_7),
        ("heart_bounds against brute force", criterion_8),
        ("negative control on P^3", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
