//! Elements of Thompson's group V as tree pair diagrams.
//!
//! A [`TreePair`] is any representative `(domain, range, ρ)`: leaf `k` of
//! the domain tree is sent to leaf `ρ(k)` of the range tree. In fraction
//! notation it is `(range, id) / (domain, ρ)`. A [`VElement`] is the unique
//! reduced representative, so equality of group elements is structural.
//!
//! The product `g · h` is composition of maps, `h` first.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::symmetric::{inflate, permute_trees};
use crate::tree::{Forest, Tree, TreeParser};

/// A representative triple, not necessarily reduced.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct TreePair {
    domain: Tree,
    range: Tree,
    #[serde(rename = "perm")]
    bijection: Perm,
}

#[derive(Deserialize)]
struct RawPair {
    domain: Tree,
    range: Tree,
    perm: Perm,
}

impl TryFrom<RawPair> for TreePair {
    type Error = Error;

    fn try_from(p: RawPair) -> Result<TreePair> {
        TreePair::new(p.domain, p.range, p.perm)
    }
}

/// Which of `F ⊂ T ⊂ V` an element first belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    F,
    #[serde(rename = "T_only")]
    TOnly,
    #[serde(rename = "V_only")]
    VOnly,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::F => "F",
            Class::TOnly => "T_only",
            Class::VOnly => "V_only",
        })
    }
}

impl TreePair {
    pub fn new(domain: Tree, range: Tree, bijection: Perm) -> Result<TreePair> {
        let n = domain.leaf_count();
        if range.leaf_count() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: range.leaf_count(),
            });
        }
        if bijection.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: bijection.len(),
            });
        }
        Ok(TreePair {
            domain,
            range,
            bijection,
        })
    }

    /// `(tree, tree, id)`.
    pub fn diagonal(tree: Tree) -> TreePair {
        let n = tree.leaf_count();
        TreePair {
            domain: tree.clone(),
            range: tree,
            bijection: Perm::identity(n),
        }
    }

    pub fn domain(&self) -> &Tree {
        &self.domain
    }

    pub fn range(&self) -> &Tree {
        &self.range
    }

    pub fn bijection(&self) -> &Perm {
        &self.bijection
    }

    pub fn leaf_count(&self) -> usize {
        self.domain.leaf_count()
    }

    /// Same group element with range `p ∘ range`; domain leaf `k` receives
    /// tree `ρ(k)` of `p` and the bijection becomes `S(p, ρ)`.
    pub fn expand_range(&self, p: &Forest) -> Result<TreePair> {
        if p.root_count() != self.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: self.leaf_count(),
                found: p.root_count(),
            });
        }
        Ok(TreePair {
            domain: permute_trees(p, &self.bijection).apply_to(&self.domain)?,
            range: p.apply_to(&self.range)?,
            bijection: inflate(p, &self.bijection),
        })
    }

    /// Same group element with domain `f ∘ domain`.
    pub fn expand_domain(&self, f: &Forest) -> Result<TreePair> {
        if f.root_count() != self.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: self.leaf_count(),
                found: f.root_count(),
            });
        }
        self.expand_range(&permute_trees(f, &self.bijection.inverse()))
    }

    /// Representative whose domain is `target`; `target` must refine the domain.
    pub fn with_domain(&self, target: &Tree) -> Result<TreePair> {
        let f = target.residual(&self.domain).ok_or_else(|| {
            Error::Precondition(format!("{target} does not refine {}", self.domain))
        })?;
        self.expand_domain(&f)
    }

    /// Representative whose range is `target`; `target` must refine the range.
    pub fn with_range(&self, target: &Tree) -> Result<TreePair> {
        let p = target.residual(&self.range).ok_or_else(|| {
            Error::Precondition(format!("{target} does not refine {}", self.range))
        })?;
        self.expand_range(&p)
    }

    /// `self · other` (apply `other` first) through the least common
    /// refinement of `other.range` and `self.domain`; not reduced.
    pub fn compose(&self, other: &TreePair) -> TreePair {
        let middle = other.range.common_refinement(&self.domain);
        let right = other.with_range(&middle).expect("middle refines range");
        let left = self.with_domain(&middle).expect("middle refines domain");
        TreePair {
            domain: right.domain,
            range: left.range,
            bijection: left.bijection.after(&right.bijection),
        }
    }

    pub fn inverse(&self) -> TreePair {
        TreePair {
            domain: self.range.clone(),
            range: self.domain.clone(),
            bijection: self.bijection.inverse(),
        }
    }

    /// 0-based domain leaves `i` at which a matched caret can be cancelled:
    /// leaves `i, i+1` form a caret, `ρ(i+1) = ρ(i) + 1`, and range leaves
    /// `ρ(i), ρ(i) + 1` form a caret.
    pub fn cancellable_carets(&self) -> Vec<usize> {
        let range_carets = self.range.leaf_carets();
        self.domain
            .leaf_carets()
            .into_iter()
            .filter(|&i| {
                let j = self.bijection.image(i);
                self.bijection.image(i + 1) == j + 1 && range_carets.binary_search(&j).is_ok()
            })
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.cancellable_carets().is_empty()
    }

    /// Cancel the matched caret at domain leaf `i`. `None` if `i` is not one
    /// of [`cancellable_carets`](Self::cancellable_carets).
    pub fn cancel_caret(&self, i: usize) -> Option<TreePair> {
        let j = self.bijection.image(i);
        if i + 1 >= self.leaf_count() || self.bijection.image(i + 1) != j + 1 {
            return None;
        }
        let domain = self.domain.collapse_caret(i)?;
        let range = self.range.collapse_caret(j)?;
        let images = (0..self.leaf_count())
            .filter(|&k| k != i + 1)
            .map(|k| {
                let v = self.bijection.image(k);
                if v > j {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        Some(TreePair {
            domain,
            range,
            bijection: Perm::from_zero_based(images).expect("cancellation keeps a bijection"),
        })
    }

    /// Cancel matched carets, leftmost first, until none remain.
    pub fn reduce(&self) -> VElement {
        self.reduce_by(|c| c[0])
    }

    /// Cancel matched carets in a random order.
    pub fn reduce_randomly<R: Rng>(&self, rng: &mut R) -> VElement {
        self.reduce_by(|c| c[rng.gen_range(0..c.len())])
    }

    fn reduce_by(&self, mut choose: impl FnMut(&[usize]) -> usize) -> VElement {
        let mut cur = self.clone();
        loop {
            let candidates = cur.cancellable_carets();
            if candidates.is_empty() {
                return VElement(cur);
            }
            let i = choose(&candidates);
            cur = cur.cancel_caret(i).expect("candidate is cancellable");
        }
    }

    pub fn classify(&self) -> Class {
        if self.bijection.is_identity() {
            Class::F
        } else if self.bijection.is_cyclic() {
            Class::TOnly
        } else {
            Class::VOnly
        }
    }

    /// Dyadic cell `[start, start + 2^-depth)` of every leaf.
    fn cells(tree: &Tree) -> Vec<(Dyadic, u32)> {
        let mut start = Dyadic::zero();
        tree.leaf_depths()
            .into_iter()
            .map(|d| {
                let d = d as u32;
                let cell = (start.clone(), d);
                start = start.add(&Dyadic::unit(d));
                cell
            })
            .collect()
    }

    /// The piecewise-linear action on `[0, 1)`: the domain cell containing
    /// `x` is mapped affinely onto the range cell of its image leaf.
    pub fn eval(&self, x: &Dyadic) -> Result<Dyadic> {
        if !x.is_in_unit_interval() {
            return Err(Error::OutOfDomain {
                what: "x",
                value: x.to_string(),
                range: "[0, 1)",
            });
        }
        let dom = Self::cells(&self.domain);
        let ran = Self::cells(&self.range);
        let k = dom
            .iter()
            .rposition(|(start, _)| start <= x)
            .expect("0 starts the first cell");
        let (a, d) = &dom[k];
        let (b, e) = &ran[self.bijection.image(k)];
        Ok(b.add(&x.sub(a).scale_pow2(*d as i64 - *e as i64)))
    }

    /// Literal `RANGE/DOMAIN~[images]`.
    pub fn to_literal(&self) -> String {
        format!("{}/{}~{}", self.range, self.domain, self.bijection)
    }

    /// Parse `RANGE/DOMAIN` optionally followed by `~[i1,i2,...]` (1-based
    /// leaf images; identity when omitted).
    pub fn parse_literal(text: &str) -> Result<TreePair> {
        let slash = text
            .find('/')
            .ok_or_else(|| Error::parse(text.len(), "expected '/' between range and domain"))?;
        let tilde = text[slash..].find('~').map(|i| i + slash);
        let range = TreeParser::new(&text[..slash], 0).parse_complete()?;
        let dom_end = tilde.unwrap_or(text.len());
        let domain = TreeParser::new(&text[slash + 1..dom_end], slash + 1).parse_complete()?;
        let perm = match tilde {
            None => Perm::identity(domain.leaf_count()),
            Some(t) => parse_perm(&text[t + 1..], t + 1)?,
        };
        let n = domain.leaf_count();
        if range.leaf_count() != n || perm.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: if range.leaf_count() != n {
                    range.leaf_count()
                } else {
                    perm.len()
                },
            });
        }
        TreePair::new(domain, range, perm)
    }
}

fn parse_perm(text: &str, base: usize) -> Result<Perm> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::parse(base + lead, "expected '[images]'"))?;
    let mut images = Vec::new();
    let mut offset = base + lead + 1;
    for part in inner.split(',') {
        let v = part.trim();
        if v.is_empty() && inner.trim().is_empty() {
            break;
        }
        images.push(
            v.parse::<usize>()
                .map_err(|_| Error::parse(offset, format!("bad image '{v}'")))?,
        );
        offset += part.len() + 1;
    }
    Perm::from_one_based(&images)
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

/// A group element in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreePair", into = "TreePair")]
pub struct VElement(TreePair);

impl VElement {
    pub fn identity() -> VElement {
        VElement(TreePair::diagonal(Tree::Leaf))
    }

    /// Build and reduce `(domain, range, bijection)`.
    pub fn new(domain: Tree, range: Tree, bijection: Perm) -> Result<VElement> {
        Ok(TreePair::new(domain, range, bijection)?.reduce())
    }

    pub fn pair(&self) -> &TreePair {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.domain.is_leaf()
    }

    pub fn multiply(&self, other: &VElement) -> VElement {
        self.0.compose(&other.0).reduce()
    }

    pub fn inverse(&self) -> VElement {
        VElement(self.0.inverse())
    }

    /// Product of a sequence, left to right.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a VElement>) -> VElement {
        factors
            .into_iter()
            .fold(VElement::identity(), |acc, g| acc.multiply(g))
    }

    pub fn commutator(&self, other: &VElement) -> VElement {
        VElement::product([self, other, &self.inverse(), &other.inverse()])
    }

    /// Reduced length: the number of leaves of the canonical pair.
    pub fn leaf_count(&self) -> usize {
        self.0.leaf_count()
    }
}

impl Deref for VElement {
    type Target = TreePair;

    fn deref(&self) -> &TreePair {
        &self.0
    }
}

impl TryFrom<TreePair> for VElement {
    type Error = Error;

    fn try_from(p: TreePair) -> Result<VElement> {
        Ok(p.reduce())
    }
}

impl From<VElement> for TreePair {
    fn from(g: VElement) -> TreePair {
        g.0
    }
}

impl FromStr for VElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<VElement> {
        Ok(TreePair::parse_literal(s)?.reduce())
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn t(s: &str) -> Tree {
        parse_tree(s).unwrap()
    }

    fn x0() -> VElement {
        VElement::new(t("f2 f1"), t("f1 f1"), Perm::identity(3)).unwrap()
    }

    fn rot() -> VElement {
        VElement::new(
            Tree::single_caret(),
            Tree::single_caret(),
            Perm::rotation(2, 1),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_pairs_reduce_to_identity() {
        for n in 1..=5 {
            for tree in crate::tree::enumerate_trees(n, 12).unwrap() {
                assert!(TreePair::diagonal(tree).reduce().is_identity());
            }
        }
    }

    #[test]
    fn generator_is_already_reduced() {
        let p = TreePair::new(t("f1 f1"), t("f2 f1"), Perm::identity(3)).unwrap();
        assert!(p.is_reduced());
        assert_eq!(p.reduce().pair(), &p);
    }

    #[test]
    fn inverse_and_identity_laws() {
        let g = x0();
        assert!(g.multiply(&g.inverse()).is_identity());
        assert_eq!(VElement::identity().multiply(&g), g);
        assert_eq!(g.multiply(&VElement::identity()), g);
        assert_eq!(g.inverse().inverse(), g);
        assert!(VElement::identity().inverse().is_identity());
        assert_eq!(g.inverse().domain(), g.range());
    }

    #[test]
    fn classification() {
        assert_eq!(VElement::identity().classify(), Class::F);
        assert_eq!(x0().classify(), Class::F);
        assert_eq!(rot().classify(), Class::TOnly);
        let swap13 = VElement::new(
            Tree::complete(2),
            Tree::complete(2),
            Perm::transposition(4, 1, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(swap13.classify(), Class::VOnly);
        assert_eq!(swap13.leaf_count(), 4);
    }

    #[test]
    fn pl_action_examples() {
        let half = Dyadic::new(1, 1);
        assert_eq!(x0().eval(&half).unwrap(), Dyadic::new(1, 2));
        assert_eq!(x0().eval(&Dyadic::new(3, 2)).unwrap(), half);
        assert_eq!(rot().eval(&Dyadic::zero()).unwrap(), half);
        assert_eq!(rot().eval(&Dyadic::new(3, 2)).unwrap(), Dyadic::new(1, 2));
        let x = Dyadic::new(5, 4);
        assert_eq!(VElement::identity().eval(&x).unwrap(), x);
        assert!(x0().eval(&Dyadic::one()).is_err());
        assert!(x0().eval(&Dyadic::new(-1, 1)).is_err());
    }

    #[test]
    fn product_is_composition_of_maps() {
        let g = x0();
        let h = rot();
        let gh = g.multiply(&h);
        for k in 0..64 {
            let x = Dyadic::new(k, 6);
            assert_eq!(gh.eval(&x).unwrap(), g.eval(&h.eval(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn literal_round_trip() {
        let g: VElement = "(f3 f1 f1)/(f3 f1 f1)~[3,2,1,4]".parse().unwrap();
        assert_eq!(g.bijection().images_one_based(), vec![3, 2, 1, 4]);
        assert_eq!(g.to_literal().parse::<VElement>().unwrap(), g);
        let g: VElement = "f1 f1/f2 f1".parse().unwrap();
        assert_eq!(g, x0());
    }

    #[test]
    fn literal_errors() {
        assert!(matches!(
            TreePair::parse_literal("(. .)/(. x)"),
            Err(Error::Parse { pos: 9, .. })
        ));
        assert!(matches!(
            TreePair::parse_literal("(. .)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            TreePair::parse_literal("(. .)/(. .)~[1,2"),
            Err(Error::Parse { pos: 12, .. })
        ));
        assert!(matches!(
            TreePair::parse_literal("(. .)/."),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            TreePair::parse_literal("(. .)/(. .)~[1,1]"),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn json_format() {
        let g = rot();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"domain":"(. .)","range":"(. .)","perm":[2,1]}"#);
        let back: VElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let unreduced = r#"{"domain":"((. .) .)","range":"((. .) .)","perm":[1,2,3]}"#;
        let id: VElement = serde_json::from_str(unreduced).unwrap();
        assert!(id.is_identity());
        let bad = r#"{"domain":"(. .)","range":".","perm":[1]}"#;
        assert!(serde_json::from_str::<VElement>(bad).is_err());
    }

    #[test]
    fn expansion_preserves_action() {
        let g: VElement = "(f3 f1 f1)/(f3 f1 f1)~[3,2,1,4]".parse().unwrap();
        let bigger = g.with_domain(&Tree::complete(3)).unwrap();
        assert_eq!(bigger.leaf_count(), 8);
        assert_eq!(bigger.reduce(), g);
        for k in 0..32 {
            let x = Dyadic::new(k, 5);
            assert_eq!(bigger.eval(&x).unwrap(), g.eval(&x).unwrap());
        }
    }
}
