//! Independent oracles. Nothing here calls the engine routines it is used to
//! check; each recomputes from the tree structure directly.

#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use rand::Rng;
use thompson_core::ring::{RingElem, Scalar};
use thompson_core::{Forest, Perm, Tree, TreePair};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// All rooted subtrees sharing the root of `t`.
pub fn prefixes(t: &Tree) -> Vec<Tree> {
    match t {
        Tree::Leaf => vec![Tree::Leaf],
        Tree::Caret(l, r) => {
            let mut out = vec![Tree::Leaf];
            for a in prefixes(l) {
                for b in prefixes(r) {
                    out.push(Tree::caret(a.clone(), b.clone()));
                }
            }
            out
        }
    }
}

/// `(leaf words of t below the leaves of z, number of z-leaves internal to t)`.
/// Words are plain strings, most recent turn first, empty for a z-leaf that
/// is also a t-leaf.
pub fn residual_words(t: &Tree, z: &Tree) -> (Vec<String>, usize) {
    fn below(t: &Tree, suffix: String, out: &mut Vec<String>) {
        match t {
            Tree::Leaf => out.push(suffix),
            Tree::Caret(l, r) => {
                below(l, format!("a{suffix}"), out);
                below(r, format!("b{suffix}"), out);
            }
        }
    }
    fn walk(t: &Tree, z: &Tree, words: &mut Vec<String>, m: &mut usize) {
        match (z, t) {
            (Tree::Leaf, Tree::Leaf) => words.push(String::new()),
            (Tree::Leaf, _) => {
                *m += 1;
                below(t, String::new(), words);
            }
            (Tree::Caret(a, b), Tree::Caret(c, d)) => {
                walk(c, a, words, m);
                walk(d, b, words, m);
            }
            _ => panic!("not a prefix"),
        }
    }
    let mut words = Vec::new();
    let mut m = 0;
    walk(t, z, &mut words, &mut m);
    (words, m)
}

/// The double sum over prefixes, term by term, with the bracket evaluated
/// as `P(s,r)_{ρ⁻¹(i)} = P(t,z)_i` for every `i`.
pub fn brute_phi(g: &TreePair) -> RingElem {
    let rho_inv = g.bijection().inverse();
    let mut acc = RingElem::zero();
    for z in prefixes(g.range()) {
        let (pz, mz) = residual_words(g.range(), &z);
        for r in prefixes(g.domain()) {
            let (pr, mr) = residual_words(g.domain(), &r);
            if pz.len() != pr.len() {
                continue;
            }
            let matches = (0..pz.len()).all(|i| pr[rho_inv.image(i)] == pz[i]);
            if matches {
                let term = RingElem::alpha_beta(z.leaf_count() + r.leaf_count() - 2, mz + mr);
                acc = &acc + &term;
            }
        }
    }
    acc
}

/// `Φ_α(t) δ_e` built by applying `R_α` one caret at a time, following the
/// splitting sequence of `t`, on a sparse vector indexed by word tuples.
pub fn operator_expansion(t: &Tree) -> HashMap<Vec<String>, RingElem> {
    let steps = t.elementary_decomposition();
    let mut rebuilt = Tree::Leaf;
    let mut v: HashMap<Vec<String>, RingElem> = HashMap::new();
    v.insert(vec![String::new()], RingElem::one());
    for i in steps {
        rebuilt = rebuilt.split_leaf(i).unwrap();
        let mut next: HashMap<Vec<String>, RingElem> = HashMap::new();
        for (words, c) in v {
            let w = &words[i - 1];
            let mut push = |l: String, r: String, coeff: RingElem| {
                let mut out = words[..i - 1].to_vec();
                out.push(l);
                out.push(r);
                out.extend_from_slice(&words[i..]);
                let slot = next.entry(out).or_insert_with(RingElem::zero);
                *slot = &*slot + &coeff;
            };
            if w.is_empty() {
                push(String::new(), String::new(), &c * &RingElem::alpha());
                push("a".into(), "b".into(), &c * &RingElem::beta());
            } else {
                push(format!("a{w}"), format!("b{w}"), c.clone());
            }
        }
        v = next;
    }
    assert_eq!(&rebuilt, t, "splitting sequence rebuilds the tree");
    v.retain(|_, c| !c.is_zero());
    v
}

/// Dense `⟨Φ(f) ξ_in, ξ_out⟩` over `{0..d}`.
pub fn dense_partition<S: Scalar>(
    f: &Forest,
    d: usize,
    r: &dyn Fn(usize, usize, usize) -> S,
    input: &[usize],
    output: &[usize],
) -> S {
    dense_apply(f, d, r, input)[flat_index(d, output)].clone()
}

pub fn flat_index(d: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0usize, |acc, &x| acc * d + x)
}

/// `Φ(f) ξ_in` as a dense vector over `{0..d}^leaves` (first leaf most
/// significant): apply `id ⊗ … ⊗ R ⊗ … ⊗ id` factor by factor.
pub fn dense_apply<S: Scalar>(
    f: &Forest,
    d: usize,
    r: &dyn Fn(usize, usize, usize) -> S,
    input: &[usize],
) -> Vec<S> {
    // Splitting sequence of the whole forest: trees left to right, each
    // offset by the leaves of the (already expanded) trees before it.
    let mut steps = Vec::new();
    let mut offset = 0;
    for t in f.trees() {
        for i in t.elementary_decomposition() {
            steps.push(offset + i - 1);
        }
        offset += t.leaf_count();
    }
    let index = |digits: &[usize]| flat_index(d, digits);
    let mut slots = input.len();
    let mut v = vec![S::zero(); d.pow(slots as u32)];
    v[index(input)] = S::one();
    for pos in steps {
        let mut next = vec![S::zero(); d.pow(slots as u32 + 1)];
        for (flat, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut digits = vec![0; slots];
            let mut x = flat;
            for k in (0..slots).rev() {
                digits[k] = x % d;
                x /= d;
            }
            let i = digits[pos];
            for j in 0..d {
                for k in 0..d {
                    let rijk = r(i, j, k);
                    if rijk.is_zero() {
                        continue;
                    }
                    let mut out = digits[..pos].to_vec();
                    out.push(j);
                    out.push(k);
                    out.extend_from_slice(&digits[pos + 1..]);
                    let at = index(&out);
                    next[at] = next[at].add(&c.mul(&rijk));
                }
            }
        }
        v = next;
        slots += 1;
    }
    v
}

/// All tuples in `{0..d}^len`.
pub fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    (0..d.pow(len as u32))
        .map(|mut x| {
            let mut t = vec![0; len];
            for k in (0..len).rev() {
                t[k] = x % d;
                x /= d;
            }
            t
        })
        .collect()
}

/// A random tree with `n` leaves by random leaf splitting.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    let mut t = Tree::Leaf;
    for k in 1..n {
        t = t.split_leaf(rng.gen_range(1..=k)).unwrap();
    }
    t
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Perm {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Perm::from_zero_based(v).unwrap()
}

pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> TreePair {
    TreePair::new(
        random_tree(rng, n),
        random_tree(rng, n),
        random_perm(rng, n),
    )
    .unwrap()
}
