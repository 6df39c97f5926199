//! Named trees, generators and element families.

use rand::Rng;

use crate::element::{TreePair, VElement};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::tree::{parse_tree, Forest, Tree};

/// Trees used in the commutator construction.
pub fn tree_a() -> Tree {
    parse_tree("f3 f3 f1 f1").unwrap()
}

pub fn tree_b() -> Tree {
    parse_tree("f4 f3 f2 f1").unwrap()
}

pub fn tree_c() -> Tree {
    parse_tree("f1 f1").unwrap()
}

pub fn tree_d() -> Tree {
    parse_tree("f2 f1").unwrap()
}

pub fn tree_q() -> Tree {
    parse_tree("f2 f3 f1 f1").unwrap()
}

/// `a / b`.
pub fn element_g() -> VElement {
    VElement::new(tree_b(), tree_a(), Perm::identity(5)).unwrap()
}

/// `c / d`.
pub fn element_h() -> VElement {
    VElement::new(tree_d(), tree_c(), Perm::identity(3)).unwrap()
}

/// `a / q`, the commutator of `g` and `h`.
pub fn element_k() -> VElement {
    VElement::new(tree_q(), tree_a(), Perm::identity(5)).unwrap()
}

/// The generator `x0 = (f1 f1) / (f2 f1)`.
pub fn x0() -> VElement {
    VElement::new(tree_d(), tree_c(), Perm::identity(3)).unwrap()
}

/// The generator `x1`, acting as `x0` on `[1/2, 1)`.
pub fn x1() -> VElement {
    let dom = Tree::caret(Tree::Leaf, tree_d());
    let ran = Tree::caret(Tree::Leaf, tree_c());
    VElement::new(dom, ran, Perm::identity(4)).unwrap()
}

/// An element of T outside F: `(f2 f1)` to `(f1 f1)` with leaves rotated by one.
pub fn t0() -> VElement {
    VElement::new(tree_d(), tree_c(), Perm::rotation(3, 1)).unwrap()
}

/// Rotation by a half turn.
pub fn half_rotation() -> VElement {
    VElement::new(
        Tree::single_caret(),
        Tree::single_caret(),
        Perm::rotation(2, 1),
    )
    .unwrap()
}

/// A transposition of two dyadic cells: swaps `[1/2, 3/4)` and `[3/4, 1)`.
pub fn pi0() -> VElement {
    VElement::new(tree_d(), tree_d(), Perm::transposition(3, 2, 3).unwrap()).unwrap()
}

/// `(t, id) / (t, (1 3))` with `t` the complete tree on four leaves.
pub fn swap13_element() -> VElement {
    VElement::new(
        Tree::complete(2),
        Tree::complete(2),
        Perm::transposition(4, 1, 3).unwrap(),
    )
    .unwrap()
}

/// Generators used for random words: F, T and V generators.
pub fn generators() -> Vec<VElement> {
    vec![x0(), x1(), t0(), half_rotation(), pi0()]
}

/// `((range)_n ∘ t_n) / ((domain)_n ∘ t_n)`: `2^level` parallel copies of the
/// pair grafted onto the complete tree, bijection acting blockwise.
pub fn inflate_pair(pair: &TreePair, level: u32) -> Result<TreePair> {
    let copies = 1usize << level;
    let base = Tree::complete(level);
    let n = pair.leaf_count();
    let domain = Forest::repeat(pair.domain(), copies).apply_to(&base)?;
    let range = Forest::repeat(pair.range(), copies).apply_to(&base)?;
    let images = (0..copies)
        .flat_map(|c| (0..n).map(move |k| c * n + pair.bijection().image(k)))
        .collect();
    TreePair::new(domain, range, Perm::from_zero_based(images)?)
}

fn check_level(level: u32, bound: u32) -> Result<()> {
    if level > bound {
        return Err(Error::BoundExceeded {
            what: "inflation level",
            value: level as usize,
            bound: bound as usize,
        });
    }
    Ok(())
}

/// `k_n = ((a)_n ∘ t_n) / ((q)_n ∘ t_n)`, canonicalized.
pub fn inflated_commutator(level: u32, bound: u32) -> Result<VElement> {
    check_level(level, bound)?;
    let pair = TreePair::new(tree_q(), tree_a(), Perm::identity(5))?;
    Ok(inflate_pair(&pair, level)?.reduce())
}

/// Inflation of an arbitrary element, canonicalized.
pub fn inflate(g: &VElement, level: u32, bound: u32) -> Result<VElement> {
    check_level(level, bound)?;
    Ok(inflate_pair(g.pair(), level)?.reduce())
}

/// `s_n = (x_n • x_n) ∘ f_1` with `x_n` the left comb on `n` leaves.
pub fn doubled_comb(n: usize) -> Tree {
    Tree::caret(Tree::left_comb(n), Tree::left_comb(n))
}

/// The involution of `{1..2n}` exchanging each odd leaf `i ≤ n` of the first
/// comb with leaf `i + n`, fixing everything else.
pub fn odd_leaf_swap(n: usize) -> Perm {
    let mut images: Vec<usize> = (0..2 * n).collect();
    for i in (0..n).step_by(2) {
        images.swap(i, i + n);
    }
    Perm::from_zero_based(images).unwrap()
}

/// `g_n = (s_n, σ_n) / (s_n, id)`, the family on which the Haagerup
/// coefficients stay bounded away from zero in V. Returned as built; it is
/// already reduced.
pub fn non_vanishing_element(n: usize) -> Result<VElement> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "the non-vanishing family starts at n = 2, got {n}"
        )));
    }
    let s = doubled_comb(n);
    let pair = TreePair::new(s.clone(), s, odd_leaf_swap(n))?;
    debug_assert!(pair.is_reduced());
    Ok(pair.reduce())
}

/// A named tree or element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Tree(Tree),
    Element(VElement),
}

/// Look up `a b c d q` (trees), `g h k x0 x1 t0 rot pi0 swap13` (elements),
/// and the indexed families `k:N`, `g:N`, `h:N` (inflations) and `gv:N`
/// (the non-vanishing family).
pub fn builtin(name: &str, inflation_bound: u32) -> Result<Builtin> {
    let name = name.trim();
    if let Some((family, idx)) = name.split_once(':') {
        let n: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::parse(family.len() + 1, format!("bad index '{idx}'")))?;
        let level = u32::try_from(n).unwrap_or(u32::MAX);
        let e = match family {
            "k" => inflated_commutator(level, inflation_bound)?,
            "g" => inflate(&element_g(), level, inflation_bound)?,
            "h" => inflate(&element_h(), level, inflation_bound)?,
            "gv" => non_vanishing_element(n)?,
            _ => return Err(Error::parse(0, format!("unknown family '{family}'"))),
        };
        return Ok(Builtin::Element(e));
    }
    Ok(match name {
        "a" => Builtin::Tree(tree_a()),
        "b" => Builtin::Tree(tree_b()),
        "c" => Builtin::Tree(tree_c()),
        "d" => Builtin::Tree(tree_d()),
        "q" => Builtin::Tree(tree_q()),
        "g" => Builtin::Element(element_g()),
        "h" => Builtin::Element(element_h()),
        "k" => Builtin::Element(element_k()),
        "x0" => Builtin::Element(x0()),
        "x1" => Builtin::Element(x1()),
        "t0" => Builtin::Element(t0()),
        "rot" => Builtin::Element(half_rotation()),
        "pi0" => Builtin::Element(pi0()),
        "swap13" => Builtin::Element(swap13_element()),
        "id" | "e" => Builtin::Element(VElement::identity()),
        _ => return Err(Error::parse(0, format!("unknown builtin '{name}'"))),
    })
}

/// A product of `1..=max_len` random generators or their inverses.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize, gens: &[VElement]) -> VElement {
    let len = rng.gen_range(1..=max_len);
    let mut g = VElement::identity();
    for _ in 0..len {
        let s = &gens[rng.gen_range(0..gens.len())];
        let s = if rng.gen_bool(0.5) {
            s.inverse()
        } else {
            s.clone()
        };
        g = g.multiply(&s);
    }
    g
}

/// Like [`random_word`] but never the identity.
pub fn random_nonidentity<R: Rng>(rng: &mut R, max_len: usize, gens: &[VElement]) -> VElement {
    loop {
        let g = random_word(rng, max_len, gens);
        if !g.is_identity() {
            return g;
        }
    }
}
