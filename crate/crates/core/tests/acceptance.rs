//! The acceptance suite. Every criterion is exact (no tolerance) and runs
//! under its own time budget; the harness prints one line per criterion and
//! exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncch::exprparse::{format_element, parse_element, parse_matrix, parse_source, RingDecl};
use ncch::freealg::{FreeAlgebra, NcPoly};
use ncch::grassmann::Grassmann;
use ncch::matrix::{
    adj, classical_char_poly, commutator_parts, det, is_zero_matrix, mat_add, mat_mul, mat_pow, mat_scale, sadj, sdet,
    sdet_with, trace, RingMatrix, SdetFormula,
};
use ncch::ring::{int, Rational, Rationals, Ring};
use ncch::theorems::{
    default_suite, run_check, run_suite, Check, CheckConfig, CheckRing, Fault, RingKind, Status, VerificationReport,
    GENERIC_2X2_C, GENERIC_2X2_D, GENERIC_2X2_SADJ,
};
use ncch::tpoly::{ch_left_eval, ch_right_eval, poly_commutator_parts, sym_char_poly, PolyRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn generic(n: usize) -> (FreeAlgebra, RingMatrix<NcPoly>) {
    let f = FreeAlgebra::matrix_entries(n);
    let g = f.generators();
    let a = RingMatrix::from_fn(n, |i, j| g[i * n + j].clone());
    (f, a)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn expect_pass(reports: &[VerificationReport]) -> Outcome {
    for r in reports {
        ensure(r.status == Status::Pass, || format!("{r}"))?;
    }
    Ok(())
}

fn checks(items: &[(Check, CheckConfig)]) -> Outcome {
    expect_pass(&run_suite(items))
}

fn grassmann(n: usize, trials: usize) -> CheckConfig {
    CheckConfig::grassmann(n).with_trials(trials)
}

fn free(n: usize) -> CheckConfig {
    CheckConfig::new(RingKind::Free, n)
}

fn golden_2x2() -> Outcome {
    let (f, a) = generic(2);
    let parts = commutator_parts(&f, &a).map_err(|e| e.to_string())?;
    let parse = |s: &str| parse_matrix(&f, s).map_err(|e| e.to_string());
    ensure(parts.adjoint == parse(GENERIC_2X2_SADJ)?, || {
        "sadj differs from the displayed matrix".into()
    })?;
    ensure(parts.c == parse(GENERIC_2X2_C)?, || {
        "C differs from the displayed matrix".into()
    })?;
    ensure(parts.d == parse(GENERIC_2X2_D)?, || {
        "D differs from the displayed matrix".into()
    })?;
    let lambda = parse_element(&f, "a*d + d*a - b*c - c*b").unwrap();
    ensure(parts.lambda == lambda, || {
        format!("sdet = {}", format_element(&f, &parts.lambda))
    })?;
    let pr = PolyRing::new(&f);
    let expected = pr.from_coeffs(vec![lambda, parse_element(&f, "-2*(a + d)").unwrap(), f.from_int(2)]);
    let p = sym_char_poly(&f, &a).map_err(|e| e.to_string())?;
    ensure(p == expected, || format!("p(t) = {}", format_element(&pr, &p)))
}

fn formulas_and_trace() -> Outcome {
    for n in [2, 3] {
        let (f, a) = generic(n);
        let ab = sdet_with(&f, &a, SdetFormula::AlphaBeta).unwrap();
        let tr = sdet_with(&f, &a, SdetFormula::TauRho).unwrap();
        ensure(ab == tr, || format!("formulas differ at n = {n}"))?;
        let adj = sadj(&f, &a).unwrap();
        ensure(trace(&f, &mat_mul(&f, &a, &adj)) == ab, || {
            format!("tr(AA*) != sdet at n = {n}")
        })?;
        ensure(trace(&f, &mat_mul(&f, &adj, &a)) == ab, || {
            format!("tr(A*A) != sdet at n = {n}")
        })?;
    }
    let mut items = Vec::new();
    for n in [2, 3, 4] {
        items.push((Check::SdetFormulas, grassmann(n, 20)));
        items.push((Check::TraceSdet, grassmann(n, 20)));
    }
    checks(&items)
}

fn commutative_degeneration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let q = Rationals;
    for n in [2, 3, 4] {
        let nf = int(factorial(n));
        for trial in 0..50 {
            let a = RingMatrix::from_fn(n, |_, _| int(rng.gen_range(-5..=5)));
            let at = |what: &str| format!("{what} (n = {n}, trial {trial})");
            ensure(sdet(&q, &a).unwrap() == det(&a) * &nf, || at("sdet != n! det"))?;
            let scaled_adj = mat_scale(&q, &adj(&a), &int(factorial(n - 1)));
            ensure(sadj(&q, &a).unwrap() == scaled_adj, || at("sadj != (n-1)! adj"))?;
            let data = poly_commutator_parts(&q, &a).unwrap();
            ensure(data.c.iter().chain(&data.d).all(|m| is_zero_matrix(&q, m)), || {
                at("some C(i) or D(i) is nonzero")
            })?;
            ensure(is_zero_matrix(&q, &ch_left_eval(&q, &a, &data).unwrap()), || {
                at("left evaluation nonzero")
            })?;
            ensure(is_zero_matrix(&q, &ch_right_eval(&q, &a, &data).unwrap()), || {
                at("right evaluation nonzero")
            })?;
            let classical = classical_char_poly(&a);
            let scaled: Vec<Rational> = classical.iter().map(|c| c * &nf).collect();
            ensure(data.mu == scaled, || at("mu_i != n! c_i"))?;
            let mut classical_eval = RingMatrix::from_fn(n, |_, _| int(0));
            for (i, c) in classical.iter().enumerate() {
                classical_eval = mat_add(&q, &classical_eval, &mat_scale(&q, &mat_pow(&q, &a, i), c));
            }
            ensure(is_zero_matrix(&q, &classical_eval), || {
                at("classical Cayley-Hamilton fails")
            })?;
        }
    }
    Ok(())
}

fn commutator_membership() -> Outcome {
    checks(&[(Check::CommutatorParts, free(2)), (Check::CommutatorParts, free(3))])
}

fn ac_minus_da_identities() -> Outcome {
    let mut items = vec![(Check::AcDa, free(2)), (Check::AcDa, free(3))];
    for n in [2, 3] {
        items.push((Check::AcDaGraded, grassmann(n, 20)));
        items.push((Check::AcDaSquare, grassmann(n, 20)));
    }
    checks(&items)
}

fn leibniz_identities() -> Outcome {
    let leibniz = free(1);
    if leibniz.max_word_len < 3 {
        return Err("Leibniz check must cover s, m up to 3".into());
    }
    let reports = run_suite(&[
        (Check::Leibniz, leibniz),
        (
            Check::EngelProduct,
            CheckConfig::new(RingKind::Grassmann(6), 1).with_trials(50),
        ),
    ]);
    expect_pass(&reports)?;
    ensure(reports[0].trials == 12, || {
        format!("expected 12 (s, m) cases, ran {}", reports[0].trials)
    })?;
    ensure(reports[1].trials == 50, || {
        format!("expected 50 seeds, ran {}", reports[1].trials)
    })
}

fn conjugation_invariance() -> Outcome {
    let mut items = Vec::new();
    for n in [2, 3] {
        items.push((Check::Conjugation, free(n).with_trials(20)));
        items.push((Check::Conjugation, grassmann(n, 20)));
    }
    let reports = run_suite(&items);
    expect_pass(&reports)?;
    ensure(reports.iter().all(|r| r.trials == 20), || {
        "every configuration needs 20 (P, A) pairs".into()
    })
}

fn cayley_hamilton() -> Outcome {
    let mut items = vec![(Check::ChLeft, free(2)), (Check::ChRight, free(2))];
    for n in [2, 3] {
        items.push((Check::ChLeft, grassmann(n, 20)));
        items.push((Check::ChRight, grassmann(n, 20)));
    }
    checks(&items)
}

fn coefficient_identity() -> Outcome {
    let mut items = Vec::new();
    for n in [2, 3] {
        items.push((Check::Coefficients, grassmann(n, 20)));
        items.push((Check::CoefficientSquares, grassmann(n, 20)));
    }
    checks(&items)?;
    for n in [2, 3] {
        let (f, a) = generic(n);
        let data = poly_commutator_parts(&f, &a).unwrap();
        ensure(is_zero_matrix(&f, &data.c[n]) && is_zero_matrix(&f, &data.d[n]), || {
            format!("C({n}) or D({n}) nonzero")
        })?;
    }
    Ok(())
}

fn side_facts() -> Outcome {
    checks(&[
        (Check::GrassmannChain, free(1)),
        (Check::UpperTriangular, CheckConfig::new(RingKind::U2, 2)),
    ])
}

fn round_trip<R: CheckRing>(ring: &R, label: &str) -> Outcome {
    let cfg = CheckConfig::new(RingKind::Rational, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..200 {
        let e = ring.random_elem(&cfg, &mut rng).map_err(|e| e.to_string())?;
        let text = format_element(ring, &e);
        let back = parse_element(ring, &text).map_err(|err| format!("{label} #{k}: `{text}`: {err}"))?;
        ensure(back == e, || format!("{label} #{k}: `{text}` does not round-trip"))?;
    }
    Ok(())
}

fn poly_round_trip() -> Outcome {
    let f = FreeAlgebra::new(["a", "b"]).unwrap();
    let pr = PolyRing::new(&f);
    let cfg = CheckConfig::new(RingKind::Free, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..200 {
        let coeffs = (0..rng.gen_range(0..4))
            .map(|_| f.random_elem(&cfg, &mut rng).unwrap())
            .collect();
        let p = pr.from_coeffs(coeffs);
        let text = format_element(&pr, &p);
        ensure(parse_element(&pr, &text).ok() == Some(p), || {
            format!("polynomial #{k}: `{text}`")
        })?;
    }
    Ok(())
}

fn strip_timing(reports: &[VerificationReport]) -> serde_json::Value {
    let mut v = serde_json::to_value(reports).unwrap();
    for r in v.as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("millis");
    }
    v
}

fn infrastructure() -> Outcome {
    let free4 = FreeAlgebra::new(["a", "b", "c", "d"]).unwrap();
    round_trip(&free4, "free")?;
    round_trip(&Grassmann::new(6).unwrap(), "grassmann")?;
    round_trip(&Rationals, "rational")?;
    poly_round_trip()?;

    let suite = default_suite(3);
    let first = run_suite(&suite);
    let second = run_suite(&suite);
    expect_pass(&first)?;
    ensure(strip_timing(&first) == strip_timing(&second), || {
        "reports differ between identical runs".into()
    })?;

    let mut cfg = free(2);
    cfg.fault = Fault::CorruptSdet;
    let report = run_check(Check::TraceSdet, &cfg);
    ensure(report.status == Status::Fail, || {
        format!("fault not detected: {report}")
    })?;
    let cx = report
        .counterexample
        .as_ref()
        .ok_or("failing report without counterexample")?;
    let doc = parse_source(&cx.instance).map_err(|e| e.to_string())?;
    let RingDecl::Free(names) = &doc.ring else {
        return Err(format!("unexpected ring {}", doc.ring));
    };
    let f = FreeAlgebra::new(names.clone()).unwrap();
    let replayed = doc.matrix(&f).map_err(|e| e.to_string())?;
    ensure(replayed == generic(2).1, || {
        "replayed instance differs from the generic matrix".into()
    })?;
    let lhs = trace(&f, &mat_mul(&f, &replayed, &sadj(&f, &replayed).unwrap()));
    ensure(format_element(&f, &lhs) == cx.lhs, || {
        format!("replayed lhs differs: {}", cx.lhs)
    })?;
    let corrupted = f.add(&sdet(&f, &replayed).unwrap(), &f.one());
    ensure(format_element(&f, &corrupted) == cx.rhs, || {
        format!("replayed rhs differs: {}", cx.rhs)
    })?;
    ensure(lhs != corrupted, || "replay does not reproduce the mismatch".into())
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            number: 1,
            name: "golden 2x2 symbolic suite",
            budget: secs(1),
            run: golden_2x2,
        },
        Criterion {
            number: 2,
            name: "formula equivalence and trace identity",
            budget: secs(30),
            run: formulas_and_trace,
        },
        Criterion {
            number: 3,
            name: "commutative degeneration",
            budget: secs(10),
            run: commutative_degeneration,
        },
        Criterion {
            number: 4,
            name: "commutator parts lie in [R,R]",
            budget: secs(60),
            run: commutator_membership,
        },
        Criterion {
            number: 5,
            name: "AC - DA identities",
            budget: secs(60),
            run: ac_minus_da_identities,
        },
        Criterion {
            number: 6,
            name: "Leibniz identities and Engel consequence",
            budget: secs(60),
            run: leibniz_identities,
        },
        Criterion {
            number: 7,
            name: "conjugation invariance",
            budget: secs(60),
            run: conjugation_invariance,
        },
        Criterion {
            number: 8,
            name: "left and right Cayley-Hamilton",
            budget: secs(120),
            run: cayley_hamilton,
        },
        Criterion {
            number: 9,
            name: "coefficient identity and squares",
            budget: secs(120),
            run: coefficient_identity,
        },
        Criterion {
            number: 10,
            name: "Grassmann chain and U2 Engel words",
            budget: secs(5),
            run: side_facts,
        },
        Criterion {
            number: 11,
            name: "round trip, determinism, fault injection",
            budget: secs(10),
            run: infrastructure,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= c.budget, || {
                format!("took {elapsed:.2?}, budget {:?}", c.budget)
            })
        });
        let ms = elapsed.as_millis();
        match outcome {
            Ok(()) => println!(
                "criterion {:>2} [PRIMARY] PASS  {} ({ms} ms, budget {:?})",
                c.number, c.name, c.budget
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} [PRIMARY] FAIL  {} ({ms} ms, budget {:?})",
                    c.number, c.name, c.budget
                );
                for line in why.lines() {
                    println!("    {line}");
                }
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
