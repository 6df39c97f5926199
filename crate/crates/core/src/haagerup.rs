//! The interpolating family `Φ_α` on `ℓ²(𝔽₂)` and its vacuum coefficients
//! `φ_α(g) = ⟨π_α(g) δ_e, δ_e⟩`.
//!
//! The isometry is `δ_e ↦ α δ_{e,e} + β δ_{a,b}` and `δ_g ↦ δ_{ag,bg}` for
//! `g ≠ e`, with `β = √(1 − α²)` kept symbolic. Only words that actually
//! occur are ever materialized.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::element::{TreePair, VElement};
use crate::error::{Error, Result};
use crate::partition::RTensor;
use crate::perm::Perm;
use crate::ring::{Poly, RingElem};
use crate::tree::{enumerate_trees, Tree};
use crate::words::{Letter, Word, WordTuple};
use crate::Limits;

/// One term `α^{|z|−1} β^{m(t,z)} δ_{P(t,z)}` of `Φ_α(t) δ_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub alpha_pow: usize,
    pub beta_pow: usize,
    pub words: WordTuple,
}

impl ExpansionTerm {
    pub fn coeff(&self) -> RingElem {
        RingElem::alpha_beta(self.alpha_pow, self.beta_pow)
    }
}

/// `Φ_α(t) δ_e` as a sum over the prefixes of `t`, in prefix order.
pub fn phi_expansion(t: &Tree) -> Vec<ExpansionTerm> {
    t.subrooted_trees()
        .into_iter()
        .map(|z| ExpansionTerm {
            alpha_pow: z.prefix.leaf_count() - 1,
            beta_pow: z.m,
            words: z.words,
        })
        .collect()
}

/// A nonzero `(z, r)` term of the double sum for `φ_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairTerm {
    /// Leaves of the range prefix `z`.
    pub range_prefix_leaves: usize,
    /// Leaves of the domain prefix `r`.
    pub domain_prefix_leaves: usize,
    /// `m(t, z)`.
    pub range_m: usize,
    /// `m(s, r)`.
    pub domain_m: usize,
}

/// All `(z, r)` pairs whose bracket `⟨θ(ρ) δ_{P(s,r)}, δ_{P(t,z)}⟩` is 1.
/// Works on any representative, reduced or not.
pub fn phi_terms(g: &TreePair) -> Vec<PairTerm> {
    let mut by_words: HashMap<WordTuple, Vec<(usize, usize)>> = HashMap::new();
    for z in phi_expansion(g.range()) {
        by_words
            .entry(z.words)
            .or_default()
            .push((z.alpha_pow + 1, z.beta_pow));
    }
    let rho = g.bijection();
    let mut out = Vec::new();
    for r in phi_expansion(g.domain()) {
        let key = r.words.moved(|k| rho.image(k));
        if let Some(matches) = by_words.get(&key) {
            for &(z_leaves, z_m) in matches {
                out.push(PairTerm {
                    range_prefix_leaves: z_leaves,
                    domain_prefix_leaves: r.alpha_pow + 1,
                    range_m: z_m,
                    domain_m: r.beta_pow,
                });
            }
        }
    }
    out
}

/// `φ_α(g)` as an exact element of `ℤ[α, β]`: the sum over prefix pairs
/// `(z, r)` of `α^{|z|+|r|−2} β^{m(t,z)+m(s,r)}` times the word bracket.
pub fn phi_alpha(g: &TreePair) -> RingElem {
    let mut monomials: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for term in phi_terms(g) {
        let a = term.range_prefix_leaves + term.domain_prefix_leaves - 2;
        let b = term.range_m + term.domain_m;
        *monomials.entry((a, b)).or_default() += 1;
    }
    monomials
        .into_iter()
        .fold(RingElem::zero(), |acc, ((a, b), count)| {
            let term = &RingElem::from_poly(Poly::constant(count)) * &RingElem::alpha_beta(a, b);
            &acc + &term
        })
}

/// `φ_α(g)` as a polynomial in `α`; an error if `β` survives.
pub fn phi_polynomial(g: &TreePair) -> Result<Poly> {
    let phi = phi_alpha(g);
    phi.as_poly()
        .cloned()
        .ok_or_else(|| Error::Invariant(format!("φ_α({g}) = {phi} is not β-free")))
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    if alpha.is_negative() || *alpha > BigRational::one() {
        return Err(Error::OutOfDomain {
            what: "alpha",
            value: alpha.to_string(),
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// Exact rational value of `φ_α(g)` for rational `0 ≤ α ≤ 1`.
pub fn phi_alpha_eval(g: &TreePair, alpha: &BigRational) -> Result<BigRational> {
    check_alpha(alpha)?;
    Ok(phi_polynomial(g)?.eval(alpha))
}

/// `Φ_α(t) δ_e` as a sparse vector indexed by word tuples.
pub fn vacuum_vector(t: &Tree) -> HashMap<WordTuple, RingElem> {
    let mut v: HashMap<WordTuple, RingElem> = HashMap::new();
    for term in phi_expansion(t) {
        let c = term.coeff();
        let slot = v.entry(term.words).or_default();
        *slot = &*slot + &c;
    }
    v
}

/// `⟨θ(ρ) Φ_α(s) δ_e, Φ_α(t) δ_e⟩`, the vacuum coefficient computed from
/// the two expanded vectors.
pub fn vacuum_coefficient(g: &TreePair) -> RingElem {
    let rho = g.bijection();
    let target = vacuum_vector(g.range());
    let mut acc = RingElem::zero();
    for (words, c) in vacuum_vector(g.domain()) {
        let moved = words.moved(|k| rho.image(k));
        if let Some(d) = target.get(&moved) {
            acc = &acc + &(&c * d);
        }
    }
    acc
}

/// `R_α` restricted to words of length at most `max_len`. Columns of the
/// longest words are truncated, so this is not an isometry; it is exact on
/// every tree of depth at most `max_len`.
pub fn alpha_tensor(max_len: usize) -> (RTensor<RingElem>, Vec<Word>) {
    let mut words = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            next.push(w.prepend(Letter::A));
            next.push(w.prepend(Letter::B));
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut entries = Vec::new();
    let e = index[&Word::empty()];
    entries.push((e, e, e, RingElem::alpha()));
    for (i, w) in words.iter().enumerate() {
        let (wa, wb) = if w.is_empty() {
            (
                Word::empty().prepend(Letter::A),
                Word::empty().prepend(Letter::B),
            )
        } else {
            (w.prepend(Letter::A), w.prepend(Letter::B))
        };
        let coeff = if w.is_empty() {
            RingElem::beta()
        } else {
            RingElem::one()
        };
        if let (Some(&j), Some(&k)) = (index.get(&wa), index.get(&wb)) {
            entries.push((i, j, k, coeff));
        }
    }
    let tensor = RTensor::partial(words.len(), entries).expect("indices in range");
    (tensor, words)
}

/// `‖c(g)‖² = 2n − 2` for a reduced pair with `n` leaves.
pub fn farley_norm(g: &VElement) -> usize {
    2 * g.leaf_count() - 2
}

/// `exp(−β ‖c(g)‖²)`, kept as `(e^{−β})^{exponent}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FarleyValue {
    #[serde(with = "crate::ring::ratio_str")]
    pub beta: BigRational,
    pub exponent: usize,
}

impl FarleyValue {
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        (-self.beta.to_f64().unwrap_or(f64::NAN) * self.exponent as f64).exp()
    }
}

pub fn farley_phi(g: &VElement, beta: &BigRational) -> Result<FarleyValue> {
    if beta.is_negative() {
        return Err(Error::OutOfDomain {
            what: "beta",
            value: beta.to_string(),
            range: "[0, ∞)",
        });
    }
    Ok(FarleyValue {
        beta: beta.clone(),
        exponent: farley_norm(g),
    })
}

/// `φ_α(g)` next to `α^{‖c(g)‖²}`.
#[derive(Clone, Debug, Serialize)]
pub struct FarleyComparison {
    pub norm: usize,
    pub phi: Poly,
    pub farley: Poly,
    pub agrees: bool,
}

pub fn farley_compare(g: &VElement) -> Result<FarleyComparison> {
    let norm = farley_norm(g);
    let phi = phi_polynomial(g)?;
    let farley = Poly::alpha_pow(norm);
    Ok(FarleyComparison {
        norm,
        agrees: phi == farley,
        phi,
        farley,
    })
}

/// One reduced affine pair visited by [`vanishing_scan`].
#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub element: VElement,
    pub leaves: usize,
    #[serde(with = "crate::ring::ratio_str")]
    pub phi: BigRational,
    pub polynomial_matches: bool,
}

/// Per-size summary of [`vanishing_scan`].
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub leaves: usize,
    pub count: usize,
    /// `α^{2n−2}` at the scanned `α`.
    #[serde(with = "crate::ring::ratio_str")]
    pub expected: BigRational,
    /// Largest `|φ_α(g) − α^{2n−2}|` over the reduced pairs of this size.
    #[serde(with = "crate::ring::ratio_str")]
    pub max_deviation: BigRational,
    /// Pairs whose polynomial differs from `α^{2n−2}`.
    pub polynomial_mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingScan {
    #[serde(with = "crate::ring::ratio_str")]
    pub alpha: BigRational,
    pub rows: Vec<ScanRow>,
    pub entries: Vec<ScanEntry>,
}

/// Every reduced pair `(s, t, rotation)` with at most `max_leaves` leaves,
/// with `φ_α` compared against `α^{2n−2}` both as polynomials and at `alpha`.
pub fn vanishing_scan(
    alpha: &BigRational,
    max_leaves: usize,
    limits: &Limits,
) -> Result<VanishingScan> {
    check_alpha(alpha)?;
    if max_leaves > limits.max_leaves {
        return Err(Error::BoundExceeded {
            what: "scan leaves",
            value: max_leaves,
            bound: limits.max_leaves,
        });
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for n in 1..=max_leaves {
        let trees = enumerate_trees(n, limits.max_leaves)?;
        let candidates: Vec<TreePair> = trees
            .iter()
            .flat_map(|s| {
                trees.iter().flat_map(move |t| {
                    (0..n).map(move |c| {
                        TreePair::new(s.clone(), t.clone(), Perm::rotation(n, c)).unwrap()
                    })
                })
            })
            .filter(TreePair::is_reduced)
            .collect();
        let expected_poly = Poly::alpha_pow(2 * n - 2);
        let expected = expected_poly.eval(alpha);
        let row_entries: Vec<ScanEntry> = candidates
            .into_par_iter()
            .map(|pair| {
                let poly = phi_polynomial(&pair)?;
                Ok(ScanEntry {
                    phi: poly.eval(alpha),
                    polynomial_matches: poly == expected_poly,
                    leaves: n,
                    element: pair.reduce(),
                })
            })
            .collect::<Result<_>>()?;
        let max_deviation = row_entries
            .iter()
            .map(|e| (&e.phi - &expected).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        rows.push(ScanRow {
            leaves: n,
            count: row_entries.len(),
            expected,
            max_deviation,
            polynomial_mismatches: row_entries.iter().filter(|e| !e.polynomial_matches).count(),
        });
        entries.extend(row_entries);
    }
    Ok(VanishingScan {
        alpha: alpha.clone(),
        rows,
        entries,
    })
}

/// `α ↦ φ_α(g)` at each requested `α`.
pub fn sweep(g: &TreePair, alphas: &[BigRational]) -> Result<Vec<(BigRational, BigRational)>> {
    let poly = phi_polynomial(g)?;
    alphas
        .iter()
        .map(|a| {
            check_alpha(a)?;
            Ok((a.clone(), poly.eval(a)))
        })
        .collect()
}

/// `p/q` with a nonnegative denominator, for reporting.
pub fn ratio_parts(x: &BigRational) -> (BigInt, BigInt) {
    (x.numer().clone(), x.denom().clone())
}
