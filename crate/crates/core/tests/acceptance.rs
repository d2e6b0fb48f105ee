//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use adcode_core::adverify::{enumerate_error_supports, verify_t_code, Checker, ErrorModel, VerifyConfig};
use adcode_core::concat::{concatenate, dual_rail};
use adcode_core::oracle::{
    codewords, erasure_lemma_check, fidelity_experiment, matrix_element, random_inner_state, DampingParameter,
    InnerKind, DEFAULT_GAMMAS,
};
use adcode_core::stabcode::{bacon_shor_ad, css_code, distance, get_code, gf2_rank, Distance};
use adcode_core::tables::{outer_pool, table_row, RowSource};
use adcode_core::{PauliOperator, Phase, StabilizerCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ten_one() -> StabilizerCode {
    concatenate(&get_code("five_1_3").unwrap(), &dual_rail()).unwrap()
}

fn twenty_one() -> StabilizerCode {
    concatenate(&ten_one(), &dual_rail()).unwrap()
}

/// `(code, t, expected pass)` for every verification run.
fn verification_runs() -> Vec<(StabilizerCode, usize, bool)> {
    let leung = get_code("leung_4_1").unwrap();
    vec![
        (leung.clone(), 1, true),
        (leung, 2, false),
        (get_code("shor_9_1").unwrap(), 2, true),
        (ten_one(), 2, true),
        (concatenate(&get_code("c4_2_2").unwrap(), &dual_rail()).unwrap(), 1, true),
        (bacon_shor_ad(3).unwrap(), 3, true),
        (twenty_one(), 3, true),
    ]
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:.1?}, limit {limit:?}"));
    }
    Ok(took)
}

fn golden_construction() -> Outcome {
    let start = Instant::now();
    let text = include_str!("data/golden_10_1.paulis");
    let golden: Vec<PauliOperator> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.trim().parse().unwrap())
        .collect();
    let code = ten_one();
    for (i, g) in golden.iter().enumerate() {
        if !code.syndrome(g).map_err(|e| e.to_string())?.is_zero() {
            return Err(format!("golden generator {i} has a syndrome"));
        }
        let class = code.reduce_mod_stabilizer(g).map_err(|e| e.to_string())?;
        if !class.a.is_zero() || !class.b.is_zero() || class.phase != Phase::ONE {
            return Err(format!("golden generator {i} {g} reduces to {class:?}"));
        }
    }
    let (ours, theirs) = (gf2_rank(code.generators()), gf2_rank(&golden));
    if ours != theirs || ours != 9 {
        return Err(format!("ranks {ours} vs {theirs}"));
    }
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("9 golden generators in the group with phase +1, rank 9 = 9, {took:.1?}"))
}

fn distance_reproduction() -> Outcome {
    let start = Instant::now();
    let d = distance(&ten_one(), 4).map_err(|e| e.to_string())?;
    if d != Distance::Exact(4) {
        return Err(format!("distance {d}"));
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("[[10,1]] distance {d}, {took:.1?}"))
}

fn t_code_verifications() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (code, t, expected) in verification_runs() {
        let report = verify_t_code(&code, t, &VerifyConfig::default()).map_err(|e| format!("{}: {e}", code.name()))?;
        if report.passed() != expected {
            return Err(format!("{} t={t}: {}, expected pass={expected}", code.name(), report.verdict));
        }
        lines.push(format!("{}[[{},{}]] t={t} {}", code.name(), code.n(), code.k(), report.verdict));
    }
    let took = within(Duration::from_secs(600), start)?;
    Ok(format!("{}; {took:.1?}", lines.join(", ")))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for (code, t, _) in verification_runs().into_iter().filter(|(c, _, _)| c.n() <= 10) {
        let basis = codewords(&code).map_err(|e| e.to_string())?;
        let checker = Checker::new(&code);
        for e in enumerate_error_supports(code.n(), t, ErrorModel::default()) {
            let dense = matrix_element(&basis, &e.expand(code.n()).unwrap()).map_err(|e| e.to_string())?;
            let symbolic = checker.check(&e).logical_matrix(code.k());
            for (i, row) in symbolic.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let gap = (dense[(i, j)] - num_complex::Complex64::new(c.re as f64, c.im as f64)).norm();
                    worst = worst.max(gap);
                    if gap > 1e-10 {
                        return Err(format!("{} {e} entry ({i},{j}): gap {gap:e}", code.name()));
                    }
                }
            }
            checked += 1;
        }
    }
    let took = within(Duration::from_secs(300), start)?;
    Ok(format!("{checked} errors, max deviation {worst:.1e}, {took:.1?}"))
}

fn erasure_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for inner in [InnerKind::DualRail, InnerKind::Qutrit3] {
        for _ in 0..100 {
            let psi = random_inner_state(inner, &mut rng);
            let rho = &psi * psi.adjoint();
            for g in [0.1, 0.3, 0.5, 0.9] {
                let r =
                    erasure_lemma_check(DampingParameter::new(g).unwrap(), &rho, inner).map_err(|e| e.to_string())?;
                worst = worst.max(r);
                if r > 1e-12 {
                    return Err(format!("{inner} γ={g}: residual {r:e}"));
                }
            }
        }
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("800 checks, max residual {worst:.1e}, {took:.1?}"))
}

fn fidelity_scaling() -> Outcome {
    let start = Instant::now();
    let family = [
        (css_code(1, &[], &[]).unwrap(), 0, 1.0),
        (get_code("leung_4_1").unwrap(), 1, 2.0),
        (get_code("shor_9_1").unwrap(), 2, 3.0),
        (ten_one(), 2, 3.0),
    ];
    let mut measured = Vec::new();
    for (code, t, expected) in &family {
        let r = fidelity_experiment(code, *t, &DEFAULT_GAMMAS).map_err(|e| e.to_string())?;
        if (r.fitted_exponent - expected).abs() > 0.2 {
            return Err(format!("{}: exponent {:.3}, expected {expected}", code.name(), r.fitted_exponent));
        }
        measured.push(format!("{} {:.3}", code.name(), r.fitted_exponent));
    }
    let took = within(Duration::from_secs(300), start)?;
    Ok(format!("exponents {}; {took:.1?}", measured.join(", ")))
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let pool = outer_pool().map_err(|e| e.to_string())?;
    let covered = [(1, 1, 8), (1, 2, 10), (1, 3, 20), (2, 1, 8), (2, 2, 16), (3, 2, 16), (4, 1, 12)];
    let mut shown = Vec::new();
    for (k, t, n) in covered {
        let row = table_row(&pool, k, t, &VerifyConfig::default()).map_err(|e| e.to_string())?;
        if row.source != RowSource::Constructed || row.n != n {
            return Err(format!("(k={k}, t={t}): {row:?}, expected constructed n={n}"));
        }
        shown.push(format!("({k},{t}):{}", row.n));
    }
    let took = start.elapsed();
    Ok(format!("{} certified; {took:.1?}", shown.join(" ")))
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let runs = verification_runs();
    for (code, t, _) in &runs {
        let json = |jobs| {
            let config = VerifyConfig { jobs: Some(jobs), ..VerifyConfig::default() };
            verify_t_code(code, *t, &config).map(|r| r.to_json()).map_err(|e| e.to_string())
        };
        let reference = json(1)?;
        for jobs in [4, 8] {
            if json(jobs)? != reference {
                return Err(format!("{} t={t}: JSON differs between 1 and {jobs} jobs", code.name()));
            }
        }
    }
    let took = start.elapsed();
    Ok(format!("{} runs identical across 1/4/8 jobs; {took:.1?}", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden [[10,1]] construction", golden_construction),
        ("[[10,1]] distance", distance_reproduction),
        ("t-code verdicts", t_code_verifications),
        ("symbolic vs dense matrix elements", oracle_equivalence),
        ("erasure identity of inner codes", erasure_identity),
        ("infidelity exponents", fidelity_scaling),
        ("table rows", table_reproduction),
        ("verifier determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
