//! Acceptance criteria 1–9, one line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wreathauto::automata::audit::Searched;
use wreathauto::automata::engine::Machine;
use wreathauto::automata::{pda_run, relation_audit, Configs, RunBounds};
use wreathauto::cli;
use wreathauto::groups::{bfs_ball, DistanceMap, GroupSpec};
use wreathauto::rep_f2::bullets::bullet_gaps;
use wreathauto::rep_f2::{f2_bounds_check, f2_decode, f2_encode, f2_language_pda, f2_mult_pda, F2Rep};
use wreathauto::rep_grid::{grid_bounds_check, grid_dir_sa, grid_h_fsa, grid_relation_audit, grid_shift, grid_x_sa, spiral, spiral_inv, Dir};
use wreathauto::rep_z::constants::DEFAULT_G_RADIUS;
use wreathauto::rep_z::lamplighter::ll_bounds_check;
use wreathauto::rep_z::{gz_constants, gz_decode, gz_encode, gz_mult_fsa, gz_to_ll, ll_encode, ll_length, ll_mult_fsa, GPresentation, GzRep, LlRep};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ball(spec: &GroupSpec, r: u32) -> Result<DistanceMap, String> {
    bfs_ball(spec, r).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let ball = ball(&GroupSpec::lamplighter(), 8)?;
    for (g, d) in ball.iter() {
        let f = ll_length(g).map_err(|e| e.to_string())?;
        check(f == u64::from(d), format!("{g:?}: formula {f}, bfs {d}"))?;
    }
    Ok(format!("{} elements", ball.len()))
}

fn criterion_2() -> Outcome {
    let r = ll_bounds_check(&ball(&GroupSpec::lamplighter(), 8)?).map_err(|e| e.to_string())?;
    check(r.pass, format!("violations {:?}", r.violations.first()))?;
    check(r.lower_witness_count > 0 && r.upper_witness_count > 0, "missing equality witness")?;
    Ok(format!("{} elements, witnesses {}/{}", r.checked, r.lower_witness_count, r.upper_witness_count))
}

fn criterion_3() -> Outcome {
    let ball = ball(&GroupSpec::lamplighter(), 7)?;
    let mut words = 0;
    for gen in ["a", "a-1", "h"] {
        let m = ll_mult_fsa(gen).map_err(|e| e.to_string())?;
        let r = relation_audit(gen, &m, &LlRep::new(), gen, &ball, 8);
        check(r.pass, format!("{gen}: {:?} {:?}", r.missed.first(), r.spurious.first()))?;
        words += r.checked_words;
    }
    Ok(format!("{words} accepted words checked"))
}

fn criterion_4() -> Outcome {
    let ll_ball = ball(&GroupSpec::lamplighter(), 5)?;
    for g in ll_ball.elements() {
        let w = gz_encode(GPresentation::Z2, g).map_err(|e| e.to_string())?;
        check(gz_to_ll(&w) == ll_encode(g).map_err(|e| e.to_string())?, format!("{g:?}"))?;
    }
    let zz = ball(&GroupSpec::z_wr_z(), 5)?;
    for g in zz.elements() {
        let w = gz_encode(GPresentation::ZBinary, g).map_err(|e| e.to_string())?;
        check(gz_decode(GPresentation::ZBinary, &w).as_ref() == Ok(g), format!("round trip {g:?}"))?;
    }
    let rep = GzRep::new(GPresentation::ZBinary);
    for gen in ["a", "a-1", "g1", "g1-1"] {
        let m = gz_mult_fsa(GPresentation::ZBinary, gen).map_err(|e| e.to_string())?;
        let r = relation_audit(gen, &m, &rep, gen, &zz, 6);
        check(r.pass, format!("{gen}: {:?} {:?}", r.missed.first(), r.spurious.first()))?;
    }
    let c = gz_constants(GPresentation::ZBinary, &zz, None, DEFAULT_G_RADIUS).map_err(|e| e.to_string())?;
    check(c.k0 == 1 && c.d.first().and_then(|d| d.value) == Some(1), format!("K0 {} d {:?}", c.k0, c.d))?;
    check(c.report.as_ref().is_some_and(|r| r.pass), "lower bound violated")?;
    Ok(format!("{} + {} elements, K0 = 1, d = 1", ll_ball.len(), zz.len()))
}

fn criterion_5() -> Outcome {
    let rep = F2Rep::new();
    let b5 = ball(&GroupSpec::z2_wr_f2(), 5)?;
    let pda = f2_language_pda().map_err(|e| e.to_string())?;
    let bounds = RunBounds::default();
    for g in b5.elements() {
        let w = f2_encode(g).map_err(|e| e.to_string())?;
        check(f2_decode(&w).as_ref() == Ok(g), format!("round trip {g:?}"))?;
        check(pda_run(&pda, &w, &bounds) == Ok(true), format!("image {} rejected", String::from_utf8_lossy(&w)))?;
    }
    let accepts = |w: &[u8]| pda_run(&pda, w, &bounds).unwrap_or(false);
    let gaps = bullet_gaps(10, true, &accepts, 4);
    check(gaps.machine_mismatch == 0, format!("language mismatches {:?}", gaps.examples))?;
    let b4 = ball(&GroupSpec::z2_wr_f2(), 4)?;
    for gen in ["h", "a", "a-1", "b", "b-1"] {
        let m = f2_mult_pda(gen).map_err(|e| e.to_string())?;
        let r = relation_audit(gen, &Searched(&Configs(&m), bounds), &rep, gen, &b4, 8);
        check(r.pass, format!("{gen}: {:?} {:?}", r.missed.first(), r.spurious.first()))?;
    }
    let r = f2_bounds_check(&b5).map_err(|e| e.to_string())?;
    check(r.pass && r.lower_witness_count > 0 && r.upper_witness_count > 0, format!("bounds {:?}", r.violations.first()))?;
    for w in [&b"11(1[1E1]P[E(cd)])([1E]D[1e])1"[..], b"(D1)a([1E]D[1s])1"] {
        let g = f2_decode(w).map_err(|e| e.to_string())?;
        check(f2_encode(&g).map_err(|e| e.to_string())? == w, "Fig. 1 word")?;
    }
    Ok(format!("{} elements, {} words enumerated ({} canonical)", b5.len(), gaps.enumerated, gaps.canonical))
}

fn criterion_6() -> Outcome {
    let listed = [(0, 0), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1)];
    for (k, p) in listed.iter().enumerate() {
        check(spiral(k as u64 + 1) == *p, format!("t({})", k + 1))?;
    }
    check(spiral_inv((0, -2)) == 23, "t⁻¹(0,−2)")?;
    for k in 1..=10_000u64 {
        let k2 = grid_shift(k, Dir::X);
        let m = k.min(k2);
        let n = (m - 1).isqrt() + 1;
        check(k.abs_diff(k2) == 1 || k.abs_diff(k2) == 4 * n + 1, format!("offset at {k}"))?;
    }
    let m = grid_x_sa().map_err(|e| e.to_string())?;
    let mut c = m.initial();
    for i in 1..=400u64 {
        let next = m.read(&c, *b"00");
        check(next.len() == 1, format!("step {i}"))?;
        c = next.into_iter().next().unwrap();
        check(m.height(&c) as u64 == (i - 1).isqrt() + 1, format!("height after {i}"))?;
    }
    Ok("spiral, offsets ≤ 10⁴, heights ≤ 400".into())
}

fn criterion_7() -> Outcome {
    let b4 = ball(&GroupSpec::z2_wr_grid(), 4)?;
    let h = grid_h_fsa().map_err(|e| e.to_string())?;
    let r = grid_relation_audit("h", &h, "h", &b4, 30).map_err(|e| e.to_string())?;
    check(r.pass, format!("h: {:?} {:?}", r.missed.first(), r.spurious.first()))?;
    let mut words = r.checked_words as u128;
    for dir in Dir::ALL {
        let m = grid_dir_sa(dir).map_err(|e| e.to_string())?;
        let r = grid_relation_audit(dir.generator(), &m, dir.generator(), &b4, 30).map_err(|e| e.to_string())?;
        check(r.pass, format!("{}: {:?} {:?}", dir.generator(), r.missed.first(), r.spurious.first()))?;
        words += r.checked_words as u128;
    }
    Ok(format!("{words} accepted words up to length 30"))
}

fn criterion_8() -> Outcome {
    let r = grid_bounds_check(&ball(&GroupSpec::z2_wr_grid(), 5)?, 8).map_err(|e| e.to_string())?;
    check(r.ratios_increasing, "witness ratios not increasing")?;
    check(r.bounds.pass, format!("|g| ≤ 2|w| − 1 violated: {:?}", r.bounds.violations))?;
    Ok(format!("{} elements", r.bounds.checked))
}

fn criterion_9() -> Outcome {
    let runs = [("ll", "6"), ("gz:z2", "5"), ("gz:z", "5"), ("f2", "4"), ("grid", "4")];
    for (group, radius) in runs {
        let once = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            cli::run(["wreath", "verify", "--group", group, "--radius", radius, "--format", "json"], &mut out, &mut err);
            out
        };
        let first = once();
        check(!first.is_empty() && first == once(), format!("{group} reports differ"))?;
    }
    Ok("5 groups".into())
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome, u64);
    let criteria: [Criterion; 9] = [
        (1, "lamplighter length formula", criterion_1, 30),
        (2, "Theorem 1 bounds", criterion_2, 30),
        (3, "lamplighter multiplier machines", criterion_3, 120),
        (4, "Theorem 2 instances", criterion_4, 120),
        (5, "Theorem 3", criterion_5, 300),
        (6, "spiral pinning", criterion_6, 10),
        (7, "grid machines", criterion_7, 300),
        (8, "Remark bounds", criterion_8, 60),
        (9, "determinism", criterion_9, 300),
    ];
    let mut failed = 0;
    for (n, name, f, limit) in criteria {
        let t = Instant::now();
        let mut r = f();
        let took = t.elapsed();
        if r.is_ok() && took > Duration::from_secs(limit) {
            r = Err(format!("took {took:.1?}, limit {limit} s"));
        }
        match r {
            Ok(detail) => println!("criterion {n} PASS  {name}: {detail} ({took:.1?})"),
            Err(e) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {e} ({took:.1?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
