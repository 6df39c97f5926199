//! One line per acceptance criterion. Runs without the test harness so the
//! lines always print; exits nonzero on any unexpected failure.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{dense_apply, flat_index, operator_expansion, q, tuples};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thompson_core::gram::gram_psd_check;
use thompson_core::haagerup::{
    farley_norm, phi_alpha, phi_alpha_eval, phi_polynomial, vacuum_coefficient, vacuum_vector,
    vanishing_scan,
};
use thompson_core::kazhdan::{almost_invariance, kn_coefficient, zeta};
use thompson_core::oracles::{
    all_pairs, check_cyclic_forest_lemma, check_reduction_soundness, check_term_parity,
    check_word_injectivity,
};
use thompson_core::partition::RTensor;
use thompson_core::tree::{enumerate_forests, enumerate_trees};
use thompson_core::{families, Limits, Poly, VElement};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c1(l: &Limits) -> Outcome {
    let scan = vanishing_scan(&q(1, 2), 6, l).unwrap();
    let total: usize = scan.rows.iter().map(|r| r.count).sum();
    let bad: usize = scan.rows.iter().map(|r| r.polynomial_mismatches).sum();
    let dev_zero = scan.rows.iter().all(|r| r.max_deviation.is_zero());
    outcome(
        bad == 0 && dev_zero,
        format!("{total} reduced affine pairs with n ≤ 6, {bad} polynomial mismatches"),
    )
}

fn c2() -> Outcome {
    let g = families::swap13_element();
    let expected =
        &Poly::alpha_pow(6) + &(&Poly::alpha_pow(2) * &Poly::one_minus_alpha_sq().pow(2));
    let phi = phi_polynomial(&g).unwrap();
    let farley = Poly::alpha_pow(farley_norm(&g));
    let brute = common::brute_phi(&g);
    outcome(
        phi == expected && phi != farley && brute.as_poly() == Some(&phi),
        format!("φ = {phi}; α^norm = {farley}"),
    )
}

fn c3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let gens = families::generators();
    let mut ok = 0;
    for _ in 0..100 {
        let g = families::random_nonidentity(&mut rng, 6, &gens);
        let at0 = phi_alpha_eval(&g, &BigRational::zero()).unwrap();
        let at1 = phi_alpha_eval(&g, &BigRational::one()).unwrap();
        if at0.is_zero() && at1.is_one() {
            ok += 1;
        }
    }
    outcome(
        ok == 100,
        format!("{ok}/100 elements give 0 at α=0 and 1 at α=1"),
    )
}

fn c4() -> Outcome {
    let mut values = Vec::new();
    let mut pass = true;
    for n in 2..=6 {
        let v = phi_alpha_eval(&families::non_vanishing_element(n).unwrap(), &q(1, 2)).unwrap();
        pass &= v >= q(9, 64);
        values.push(format!("g{n}: {v}"));
    }
    outcome(pass, values.join(", "))
}

fn c5(l: &Limits) -> Outcome {
    let k = families::element_g().commutator(&families::element_h());
    let canonical = k == families::element_k();
    let z = zeta(1, l).unwrap();
    let c = q(1575, 2048);
    let mut pass = canonical;
    let mut shown = Vec::new();
    for n in 0..=2u32 {
        let xi = vec![z.clone(); 1 << n];
        let v = kn_coefficient(n, &xi, &z, l).unwrap();
        pass &= v == Pow::pow(&c, 1u32 << n);
        shown.push(format!("n={n}: {v}"));
    }
    outcome(
        pass,
        format!("[g,h] = {}; {}", k.to_literal(), shown.join(", ")),
    )
}

/// The bound must hold for both elements at m = 1, 2; the strict increase
/// from m = 1 to m = 2 is checked for each.
fn c6(l: &Limits) -> Outcome {
    let mut bound_ok = true;
    let mut increase_fails = Vec::new();
    let mut shown = Vec::new();
    for (name, g) in [("x0", families::x0()), ("rot", families::half_rotation())] {
        let r1 = almost_invariance(&g, 1, l).unwrap();
        let r2 = almost_invariance(&g, 2, l).unwrap();
        bound_ok &= r1.satisfied && r2.satisfied;
        if r2.value <= r1.value {
            increase_fails.push(name);
        }
        let note = if r1.bound_applies() {
            ""
        } else {
            " (m=1 outside the depth precondition)"
        };
        shown.push(format!("{name}: {} → {}{note}", r1.value, r2.value));
    }
    let mut detail = format!(
        "bounds {}; {}",
        if bound_ok { "hold" } else { "VIOLATED" },
        shown.join(", ")
    );
    if !increase_fails.is_empty() {
        detail.push_str(&format!(
            "; no strict increase for {} (the order-2 rotation permutes equal tensor factors of ξ_m, so its coefficient is 1 at every m)",
            increase_fails.join(", ")
        ));
    }
    outcome(bound_ok && increase_fails.is_empty(), detail)
}

fn c7(l: &Limits) -> Outcome {
    let reports = [
        check_word_injectivity(8, l).unwrap(),
        check_cyclic_forest_lemma(6, l).unwrap(),
        check_term_parity(5, l).unwrap(),
        check_reduction_soundness(500, 42),
    ];
    let detail = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} instances, {} violations",
                r.check, r.instances, r.violations
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(reports.iter().all(|r| r.passed()), detail)
}

fn c8() -> Outcome {
    let gens = families::generators();
    let mut checks = 0;
    let mut psd = 0;
    let mut pivots = 0;
    for seed in [11u64, 22, 33] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let elements: Vec<VElement> = (0..10)
            .map(|_| families::random_word(&mut rng, 6, &gens))
            .collect();
        for a in [q(1, 4), q(1, 2), q(3, 4)] {
            let r = gram_psd_check(&elements, &a).unwrap();
            checks += 1;
            pivots += r.ldl.pivots.len();
            if r.ldl.is_psd {
                psd += 1;
            }
        }
    }
    outcome(
        psd == checks,
        format!("{psd}/{checks} Gram matrices PSD, {pivots} exact pivots"),
    )
}

fn c9(l: &Limits) -> Outcome {
    let entries = vec![
        (0, 0, 0, q(3, 5)),
        (0, 1, 1, q(4, 5)),
        (1, 0, 1, q(5, 13)),
        (1, 1, 0, q(12, 13)),
    ];
    let lookup: HashMap<(usize, usize, usize), BigRational> = entries
        .iter()
        .map(|(i, j, k, c)| ((*i, *j, *k), c.clone()))
        .collect();
    let r = |i, j, k| {
        lookup
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    };
    let tensor = RTensor::isometry(2, entries).unwrap();
    let mut compared = 0usize;
    let mut mismatches = 0usize;
    for m in 1..=6 {
        for f in enumerate_forests(m, l.max_leaves).unwrap() {
            for input in tuples(2, f.root_count()) {
                let dense = dense_apply(&f, 2, &r, &input);
                for output in tuples(2, m) {
                    compared += 1;
                    if tensor.partition_function(&f, &input, &output).unwrap()
                        != dense[flat_index(2, &output)]
                    {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    let pairs = all_pairs(5, l).unwrap();
    let eq1_bad = pairs
        .iter()
        .filter(|g| vacuum_coefficient(g) != phi_alpha(g))
        .count();
    let mut expansion_bad = 0;
    for n in 1..=5 {
        for t in enumerate_trees(n, l.max_leaves).unwrap() {
            let ours: HashMap<Vec<String>, _> = vacuum_vector(&t)
                .into_iter()
                .map(|(w, c)| {
                    (
                        w.words().iter().map(|x| x.as_str().to_string()).collect(),
                        c,
                    )
                })
                .collect();
            if ours != operator_expansion(&t) {
                expansion_bad += 1;
            }
        }
    }
    outcome(
        mismatches == 0 && eq1_bad == 0 && expansion_bad == 0,
        format!(
            "{compared} partition coefficients, {mismatches} mismatches; {} pairs, {eq1_bad} vacuum-route mismatches; {expansion_bad} expansion mismatches",
            pairs.len()
        ),
    )
}

type Criterion = (u32, &'static str, Box<dyn Fn() -> Outcome>);

/// Criteria that cannot hold as stated; they still run and print FAIL.
const KNOWN_UNATTAINABLE: &[u32] = &[6];

fn main() -> ExitCode {
    let l = Limits::default();
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "affine pairs: φ_α = α^(2n−2) for n ≤ 6",
            Box::new(move || c1(&l)),
        ),
        (2, "V-element polynomial differs from α^norm", Box::new(c2)),
        (3, "regular and trivial limits", Box::new(c3)),
        (4, "non-vanishing on V at α = 1/2", Box::new(c4)),
        (5, "commutator and C^(2^n)", Box::new(move || c5(&l))),
        (6, "almost invariance", Box::new(move || c6(&l))),
        (7, "combinatorial oracles", Box::new(move || c7(&l))),
        (8, "Gram matrices are PSD", Box::new(c8)),
        (
            9,
            "partition function and vacuum route",
            Box::new(move || c9(&l)),
        ),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id} [{status}] {name} — {} ({:.1}s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass && !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
        if o.pass && KNOWN_UNATTAINABLE.contains(&id) {
            println!("criterion {id} now passes; drop it from the known list");
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
