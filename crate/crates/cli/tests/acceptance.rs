//! Acceptance suite: one PASS/FAIL line per criterion, each with its own
//! time budget. Runs as a plain binary so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use towerlim_core::abelian::smith_normal_form;
use towerlim_core::delta::{
    check_prime_divisibility, delta, factorial, stirling_oracle, torsion_action,
};
use towerlim_core::primes::primes_up_to;
use towerlim_core::prufer::{
    growth_witness, in_a0n, reduce_to_an, Membership, PrimeWindow, PruferElement,
};
use towerlim_core::towers::{
    is_mittag_leffler, lim1_classification, six_term_check, ArrowStatus, StageStatus,
};
use towerlim_core::{brute, random, Tower};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn delta_suite() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=30usize {
        for k in 1..=30usize {
            let d = delta(n, k);
            if d != stirling_oracle(n, k) {
                bad.push(format!("oracle ({n},{k})"));
            }
            if k < n && !d.is_zero() {
                bad.push(format!("vanishing ({n},{k})"));
            }
            if n <= 20 {
                let f = factorial(n);
                if k == n && d != f {
                    bad.push(format!("diagonal {n}"));
                }
                if !d.is_multiple_of(&f) {
                    bad.push(format!("factorial ({n},{k})"));
                }
            }
        }
    }
    for p in primes_up_to(97) {
        if !check_prime_divisibility(p, 25).expect("prime").passed() {
            bad.push(format!("p = {p}"));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "30x30 table, 25 primes".into()
        } else {
            bad.join(", ")
        },
    )
}

fn prufer_criterion() -> Outcome {
    let (mut decisions, mut bad) = (0usize, 0usize);
    for i in 0..1000u64 {
        let class = random::prufer_class(&mut random::rng(0xacc0_0000 + i), 25);
        let rep = class.representative();
        for n in 0..=class.window().len() {
            decisions += 1;
            let criterion = rep.coords()[..n]
                .iter()
                .zip(class.window().primes())
                .all(|(c, &p)| {
                    let o = c.order(p);
                    o.is_one() || o == BigInt::from(p)
                });
            let m = in_a0n(&class, n).expect("n in window");
            let r = reduce_to_an(&class, n).expect("n in window");
            let mut ok = m.is_member() == criterion && r.is_ok() == criterion;
            if let Membership::Member { k, residual } = m {
                ok &= rep.sub(&residual).expect("same window")
                    == PruferElement::diag_embed(&k, class.window());
            }
            bad += usize::from(!ok);
        }
    }
    outcome(
        bad == 0,
        format!("1000 classes, {decisions} decisions, {bad} disagreements"),
    )
}

fn growth() -> Outcome {
    let half =
        PruferElement::from_tokens(&PrimeWindow::first(1), &[(BigInt::from(2), BigInt::one())])
            .expect("1/2");
    let table = growth_witness(&half, 2..=12).expect("windows");
    let mut prev = BigInt::zero();
    let mut ok = table.len() == 11;
    for (n, k) in &table {
        let want: BigInt = primes_up_to(1000)[1..*n]
            .iter()
            .map(|&p| BigInt::from(p))
            .product();
        ok &= k.as_ref() == Some(&want) && want > prev;
        prev = want;
    }
    outcome(ok, format!("N = 2..12, last reducer {}", prev))
}

fn ml_machinery() -> Outcome {
    let mut bad = Vec::new();
    for h in 2..=50 {
        let ml = is_mittag_leffler(&Tower::primorial(h));
        let ok = ml.stages[..h - 1]
            .iter()
            .all(|r| matches!(r.status, StageStatus::Unstable { .. }) && r.strictly_decreasing())
            && !lim1_classification(&Tower::primorial(h)).is_zero_certified();
        if !ok {
            bad.push(format!("primorial horizon {h}"));
        }
    }
    for i in 0..100u64 {
        let t = random::finite_tower(&mut random::rng(0xacc1_0000 + i), 1 + (i as usize % 6), 64);
        if !lim1_classification(&t).is_zero_certified() {
            bad.push(format!("finite tower {i}"));
        }
    }
    for i in 0..100u64 {
        let ses = random::split_ses(&mut random::rng(0xacc2_0000 + i), 1 + (i as usize % 4), 16);
        let r = six_term_check(&ses).expect("exact");
        let b = brute::six_term_brute(&ses);
        let orders = [&r.lim_kernel, &r.lim_middle, &r.lim_quotient]
            .map(|l| l.group.order().and_then(|o| usize::try_from(o).ok()));
        let ok = r.passed()
            && r.arrows.iter().all(|a| a.status == ArrowStatus::Verified)
            && b.injective
            && b.exact_middle
            && b.surjective
            && orders == b.lim_orders.map(Some);
        if !ok {
            bad.push(format!("sequence {i}"));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "49 primorial horizons, 100 finite towers, 100 split sequences".into()
        } else {
            bad.join(", ")
        },
    )
}

fn snf() -> Outcome {
    let mut bad = 0;
    for i in 0..1000u64 {
        let mut rng = random::rng(0xacc3_0000 + i);
        let m = random::matrix(&mut rng, 1 + (i as usize % 6), 1 + (i as usize / 6 % 6), 50);
        let s = smith_normal_form(&m);
        let d = s.invariant_factors();
        let ok = &(&s.left * &m) * &s.right == s.diagonal
            && s.left.determinant().abs().is_one()
            && s.right.determinant().abs().is_one()
            && d.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        bad += usize::from(!ok);
    }
    outcome(bad == 0, format!("1000 matrices, {bad} failures"))
}

fn torsion() -> Outcome {
    let mut bad = Vec::new();
    for p in primes_up_to(97) {
        for n in 1..=25 {
            if torsion_action(n, p).expect("prime") != u64::from(n == 1) {
                bad.push(format!("({n},{p})"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "n <= 25, p <= 97".into()
        } else {
            bad.join(", ")
        },
    )
}

fn repro() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_towerlim");
    let clean = Command::new(bin)
        .arg("paper-repro")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&clean.stdout);
    let lines = text
        .lines()
        .filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL "))
        .count();
    let faulty = Command::new(bin)
        .args(["paper-repro", "--inject-fault", "delta"])
        .output()
        .expect("binary runs");
    let ok = clean.status.code() == Some(0) && lines > 0 && faulty.status.code() == Some(1);
    outcome(
        ok,
        format!(
            "exit {:?} with {lines} claim lines; injected fault exits {:?}",
            clean.status.code(),
            faulty.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("delta-suite", 5, delta_suite),
        ("prufer-membership", 10, prufer_criterion),
        ("growth-witness", 1, growth),
        ("ml-machinery", 30, ml_machinery),
        ("smith-normal-form", 5, snf),
        ("torsion-action", 1, torsion),
        ("paper-repro", 60, repro),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(budget);
        let pass = o.ok && in_time;
        failed += usize::from(!pass);
        println!(
            "{} {name}: {} ({:.2} s, limit {budget} s{})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over time" }
        );
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
