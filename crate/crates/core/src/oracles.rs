//! Exhaustive and randomized checks of the combinatorial facts the engines
//! rely on. Every check returns a [`Report`]; a nonzero violation count is a
//! defect.

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::element::TreePair;
use crate::error::Result;
use crate::families;
use crate::haagerup::{phi_alpha, phi_terms};
use crate::perm::Perm;
use crate::tree::{enumerate_forests, enumerate_trees, Forest, Tree};
use crate::words::WordTuple;
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: &'static str,
    pub bound: u64,
    pub instances: u64,
    pub violations: u64,
    /// A few violating instances, for debugging.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

impl Report {
    fn new(check: &'static str, bound: u64) -> Report {
        Report {
            check,
            bound,
            instances: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn violation(&mut self, what: impl FnOnce() -> String) {
        self.violations += 1;
        if self.examples.len() < 5 {
            self.examples.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// No permutation carries `P(s)` to `P(t)` for distinct trees, and only the
/// identity fixes `P(t)`: the sorted word multisets are pairwise distinct and
/// each tuple has distinct entries.
pub fn check_word_injectivity(max_leaves: usize, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("word-injectivity", max_leaves as u64);
    for n in 1..=max_leaves {
        let mut seen = HashMap::new();
        for t in enumerate_trees(n, limits.max_leaves)? {
            report.instances += 1;
            let words = t.path_words();
            if !words.all_distinct() {
                report.violation(|| format!("{t}: repeated word in {words}"));
            }
            if let Some(prev) = seen.insert(words.sorted(), t.clone()) {
                report.violation(|| format!("{prev} and {t} share a word multiset"));
            }
        }
    }
    Ok(report)
}

fn is_cyclic_rotation(p: &Forest, q: &Forest) -> bool {
    let n = p.root_count();
    n == q.root_count() && (0..n).any(|a| (0..n).all(|j| p.trees()[j] == q.trees()[(j + a) % n]))
}

/// Whenever a cyclic leaf permutation carries `P(p)` to `P(q)`, the forests
/// have the same number of trees and are cyclic rotations of each other.
pub fn check_cyclic_forest_lemma(max_leaves: usize, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("cyclic-forest", max_leaves as u64);
    for m in 1..=max_leaves {
        let forests = enumerate_forests(m, limits.max_leaves)?;
        let mut by_words: HashMap<WordTuple, Vec<usize>> = HashMap::new();
        for (i, f) in forests.iter().enumerate() {
            by_words.entry(f.path_words()).or_default().push(i);
        }
        for p in &forests {
            let words = p.path_words();
            for c in 0..m {
                let sigma = Perm::rotation(m, c);
                let Some(matches) = by_words.get(&words.moved(|k| sigma.image(k))) else {
                    continue;
                };
                for &qi in matches {
                    report.instances += 1;
                    let q = &forests[qi];
                    if !is_cyclic_rotation(p, q) {
                        report.violation(|| format!("{p} vs {q} under rotation by {c}"));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Every nonzero `(z, r)` term of `φ_α(g)` has `m(t, z) = m(s, r)`, and the
/// total is `β`-free.
pub fn check_term_parity_on(sample: &[TreePair], bound: u64) -> Report {
    let per: Vec<(u64, Vec<String>)> = sample
        .par_iter()
        .map(|g| {
            let terms = phi_terms(g);
            let mut bad: Vec<String> = terms
                .iter()
                .filter(|t| t.range_m != t.domain_m)
                .map(|t| format!("{g}: m(t,z) = {} but m(s,r) = {}", t.range_m, t.domain_m))
                .collect();
            if !phi_alpha(g).is_beta_free() {
                bad.push(format!("{g}: φ_α is not β-free"));
            }
            (terms.len() as u64, bad)
        })
        .collect();
    let mut report = Report::new("parity", bound);
    for (count, bad) in per {
        report.instances += count;
        for b in bad {
            report.violation(|| b);
        }
    }
    report
}

/// Every tree pair `(s, t, ρ)` with at most `max_leaves` leaves, reduced or not.
pub fn all_pairs(max_leaves: usize, limits: &Limits) -> Result<Vec<TreePair>> {
    let mut out = Vec::new();
    for n in 1..=max_leaves {
        let trees = enumerate_trees(n, limits.max_leaves)?;
        let perms = all_perms(n);
        for s in &trees {
            for t in &trees {
                for p in &perms {
                    out.push(TreePair::new(s.clone(), t.clone(), p.clone())?);
                }
            }
        }
    }
    Ok(out)
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm::from_zero_based(prefix.clone()).expect("a permutation"));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// [`check_term_parity_on`] over every pair with at most `max_leaves` leaves.
pub fn check_term_parity(max_leaves: usize, limits: &Limits) -> Result<Report> {
    Ok(check_term_parity_on(
        &all_pairs(max_leaves, limits)?,
        max_leaves as u64,
    ))
}

/// Whether two pairs induce the same map of `[0, 1)`. Both are affine on the
/// cells of depth `D` (the deeper domain), so the left end and midpoint of
/// each such cell decide.
pub fn same_action(a: &TreePair, b: &TreePair) -> bool {
    let depth = a.domain().depth().max(b.domain().depth()) as u32 + 1;
    (0..1i64 << depth).all(|k| {
        let x = Dyadic::new(k, depth);
        a.eval(&x).expect("x in [0, 1)") == b.eval(&x).expect("x in [0, 1)")
    })
}

/// Random unreduced representatives: the canonical form must act as the
/// pair did, and collapsing any domain caret whose leaves land on a range
/// caret in swapped order must change the action (so no smaller
/// representative hides one cancellation away).
pub fn check_reduction_soundness(samples: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = families::generators();
    let mut report = Report::new("reduction", samples as u64);
    for _ in 0..samples {
        let g = families::random_word(&mut rng, 6, &gens);
        let mut pair = g.pair().clone();
        for _ in 0..rand::Rng::gen_range(&mut rng, 0..4) {
            let n = pair.leaf_count();
            let i = rand::Rng::gen_range(&mut rng, 1..=n);
            let f = Forest::elementary(i, n).expect("1 ≤ i ≤ n");
            pair = pair.expand_range(&f).expect("arity matches");
        }
        report.instances += 1;
        let reduced = pair.reduce();
        if reduced != g {
            report.violation(|| format!("{pair} reduces to {reduced}, expected {g}"));
        }
        if !same_action(&reduced, &pair) {
            report.violation(|| format!("{pair} and its reduction {reduced} act differently"));
        }
        for candidate in speculative_collapses(&reduced) {
            if same_action(&candidate, &reduced) {
                report.violation(|| format!("{reduced} has a smaller representative {candidate}"));
            }
        }
    }
    report
}

/// Pairs obtained from `g` by collapsing a domain caret `(i, i+1)` together
/// with the range caret holding `{ρ(i), ρ(i+1)}`, ignoring the order.
fn speculative_collapses(g: &TreePair) -> Vec<TreePair> {
    let range_carets: HashSet<usize> = g.range().leaf_carets().into_iter().collect();
    let rho = g.bijection();
    let mut out = Vec::new();
    for i in g.domain().leaf_carets() {
        let (x, y) = (rho.image(i), rho.image(i + 1));
        let j = x.min(y);
        if x.abs_diff(y) != 1 || !range_carets.contains(&j) {
            continue;
        }
        let images = (0..g.leaf_count())
            .filter(|&k| k != i + 1)
            .map(|k| {
                let v = if k == i { j } else { rho.image(k) };
                if v > j {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        let domain = g.domain().collapse_caret(i).expect("domain caret");
        let range = g.range().collapse_caret(j).expect("range caret");
        let perm = Perm::from_zero_based(images).expect("collapsing keeps a bijection");
        out.push(TreePair::new(domain, range, perm).expect("matching leaf counts"));
    }
    out
}

/// The trivial family `(t, t, id)`.
pub fn diagonal_reduces_to_identity(t: &Tree) -> bool {
    TreePair::diagonal(t.clone()).reduce().is_identity()
}
