//! Binary planar trees and forests: the morphisms of the forest category.
//!
//! Leaves and roots are numbered from 1, left to right. A forest with `n`
//! roots and `m` leaves is a morphism `n -> m`; `compose(p, q)` stacks `p`
//! on top of `q`, attaching root `i` of `p` to leaf `i` of `q`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{Letter, Word, WordTuple};

/// A rooted planar binary tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Caret(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn caret(left: Tree, right: Tree) -> Tree {
        Tree::Caret(Box::new(left), Box::new(right))
    }

    /// The tree with two leaves.
    pub fn single_caret() -> Tree {
        Tree::caret(Tree::Leaf, Tree::Leaf)
    }

    /// Complete binary tree with `2^level` leaves, all at depth `level`.
    pub fn complete(level: u32) -> Tree {
        if level == 0 {
            Tree::Leaf
        } else {
            let half = Tree::complete(level - 1);
            Tree::caret(half.clone(), half)
        }
    }

    /// Left comb with `n >= 1` leaves.
    pub fn left_comb(n: usize) -> Tree {
        assert!(n >= 1);
        (1..n).fold(Tree::Leaf, |t, _| Tree::caret(t, Tree::Leaf))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match self {
            Tree::Leaf => None,
            Tree::Caret(l, r) => Some((l, r)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Caret(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Depth of every leaf, left to right.
    pub fn leaf_depths(&self) -> Vec<usize> {
        fn walk(t: &Tree, d: usize, out: &mut Vec<usize>) {
            match t {
                Tree::Leaf => out.push(d),
                Tree::Caret(l, r) => {
                    walk(l, d + 1, out);
                    walk(r, d + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Replace leaf `index` (1-based) by a caret; this is `f_{index,n} ∘ self`.
    pub fn split_leaf(&self, index: usize) -> Result<Tree> {
        let n = self.leaf_count();
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, bound: n });
        }
        let mut forest: Vec<Tree> = vec![Tree::Leaf; n];
        forest[index - 1] = Tree::single_caret();
        Ok(self.graft(&forest))
    }

    /// Attach `trees[k]` at leaf `k + 1`. Panics unless `trees.len()` is the
    /// leaf count.
    pub fn graft(&self, trees: &[Tree]) -> Tree {
        fn walk<'a>(t: &Tree, it: &mut impl Iterator<Item = &'a Tree>) -> Tree {
            match t {
                Tree::Leaf => it.next().expect("forest has too few trees").clone(),
                Tree::Caret(l, r) => {
                    let l = walk(l, it);
                    let r = walk(r, it);
                    Tree::caret(l, r)
                }
            }
        }
        assert_eq!(trees.len(), self.leaf_count(), "graft arity");
        let mut it = trees.iter();
        walk(self, &mut it)
    }

    /// 0-based indices `i` such that leaves `i` and `i + 1` hang from one caret.
    pub(crate) fn leaf_carets(&self) -> Vec<usize> {
        fn walk(t: &Tree, offset: usize, out: &mut Vec<usize>) -> usize {
            match t {
                Tree::Leaf => 1,
                Tree::Caret(l, r) => {
                    if l.is_leaf() && r.is_leaf() {
                        out.push(offset);
                        return 2;
                    }
                    let nl = walk(l, offset, out);
                    let nr = walk(r, offset + nl, out);
                    nl + nr
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Replace the caret carrying 0-based leaves `i`, `i + 1` by a single
    /// leaf. Returns `None` if those leaves are not siblings.
    pub(crate) fn collapse_caret(&self, i: usize) -> Option<Tree> {
        fn walk(t: &Tree, offset: usize, i: usize) -> Option<Tree> {
            match t {
                Tree::Leaf => None,
                Tree::Caret(l, r) => {
                    if l.is_leaf() && r.is_leaf() {
                        return (offset == i).then_some(Tree::Leaf);
                    }
                    let nl = l.leaf_count();
                    if i < offset + nl {
                        walk(l, offset, i).map(|nl| Tree::caret(nl, (**r).clone()))
                    } else {
                        walk(r, offset + nl, i).map(|nr| Tree::caret((**l).clone(), nr))
                    }
                }
            }
        }
        walk(self, 0, i)
    }

    /// Whether `self` is a rooted subtree (prefix) of `other`.
    pub fn is_prefix_of(&self, other: &Tree) -> bool {
        match (self, other) {
            (Tree::Leaf, _) => true,
            (Tree::Caret(..), Tree::Leaf) => false,
            (Tree::Caret(a, b), Tree::Caret(c, d)) => a.is_prefix_of(c) && b.is_prefix_of(d),
        }
    }

    /// The forest `f` with `f ∘ prefix = self`, if `prefix` is a prefix.
    pub fn residual(&self, prefix: &Tree) -> Option<Forest> {
        fn walk(t: &Tree, z: &Tree, out: &mut Vec<Tree>) -> bool {
            match (z, t) {
                (Tree::Leaf, _) => {
                    out.push(t.clone());
                    true
                }
                (Tree::Caret(..), Tree::Leaf) => false,
                (Tree::Caret(a, b), Tree::Caret(c, d)) => walk(c, a, out) && walk(d, b, out),
            }
        }
        let mut out = Vec::new();
        walk(self, prefix, &mut out).then_some(Forest { trees: out })
    }

    /// Least common refinement: the union of the carets of both trees.
    pub fn common_refinement(&self, other: &Tree) -> Tree {
        match (self, other) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Caret(a, b), Tree::Caret(c, d)) => {
                Tree::caret(a.common_refinement(c), b.common_refinement(d))
            }
        }
    }

    /// Indices `i_1, i_2, …` (1-based, in application order) such that
    /// splitting leaf `i_1` of the one-leaf tree, then leaf `i_2`, … yields
    /// `self`. Carets are expanded in preorder.
    pub fn elementary_decomposition(&self) -> Vec<usize> {
        fn walk(t: &Tree, leaves_left: usize, out: &mut Vec<usize>) {
            if let Tree::Caret(l, r) = t {
                out.push(leaves_left + 1);
                walk(l, leaves_left, out);
                walk(r, leaves_left + l.leaf_count(), out);
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// The f-product form, e.g. `f3 f1 f1`; the rightmost factor acts first.
    pub fn to_product_string(&self) -> String {
        let steps = self.elementary_decomposition();
        if steps.is_empty() {
            return ".".to_string();
        }
        steps
            .iter()
            .rev()
            .map(|i| format!("f{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Path words `P(t)`: a left turn prepends `a`, a right turn prepends `b`.
    pub fn path_words(&self) -> WordTuple {
        fn walk(t: &Tree, w: &Word, out: &mut Vec<Word>) {
            match t {
                Tree::Leaf => out.push(w.clone()),
                Tree::Caret(l, r) => {
                    walk(l, &w.prepend(Letter::A), out);
                    walk(r, &w.prepend(Letter::B), out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &Word::empty(), &mut out);
        WordTuple::new(out)
    }

    /// All prefixes `z` of `self` with `m(t, z)` and the words `P(t, z)`.
    ///
    /// Ordered trivial prefix first, then by increasing leaf count; among
    /// prefixes of equal size, those expanding further on the left come first.
    pub fn subrooted_trees(&self) -> Vec<SubrootedTree> {
        let mut all = subrooted_unsorted(self);
        all.sort_by_cached_key(|z| {
            (
                z.prefix.leaf_count(),
                std::cmp::Reverse(z.prefix.preorder_shape()),
            )
        });
        all
    }

    /// Preorder sequence of node kinds, `true` for a caret.
    fn preorder_shape(&self) -> Vec<bool> {
        fn walk(t: &Tree, out: &mut Vec<bool>) {
            match t {
                Tree::Leaf => out.push(false),
                Tree::Caret(l, r) => {
                    out.push(true);
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// One prefix `z` of a tree `t` together with the data of the residual
/// forest `f` (`f ∘ z = t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubrootedTree {
    pub prefix: Tree,
    /// Leaves of `z` that are not leaves of `t` (nontrivial trees of `f`).
    pub m: usize,
    /// `P(t, z)`: path words of the residual forest.
    pub words: WordTuple,
}

fn subrooted_unsorted(t: &Tree) -> Vec<SubrootedTree> {
    match t {
        Tree::Leaf => vec![SubrootedTree {
            prefix: Tree::Leaf,
            m: 0,
            words: WordTuple::new(vec![Word::empty()]),
        }],
        Tree::Caret(l, r) => {
            let left = subrooted_unsorted(l);
            let right = subrooted_unsorted(r);
            let mut out = Vec::with_capacity(1 + left.len() * right.len());
            out.push(SubrootedTree {
                prefix: Tree::Leaf,
                m: 1,
                words: t.path_words(),
            });
            for a in &left {
                for b in &right {
                    out.push(SubrootedTree {
                        prefix: Tree::caret(a.prefix.clone(), b.prefix.clone()),
                        m: a.m + b.m,
                        words: a.words.concat(&b.words),
                    });
                }
            }
            out
        }
    }
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// All trees with `n` leaves in a fixed order (left subtree size ascending).
pub fn enumerate_trees(n: usize, bound: usize) -> Result<Vec<Tree>> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "leaf count",
            value: n,
            bound,
        });
    }
    if n == 0 {
        return Err(Error::Precondition("trees have at least one leaf".into()));
    }
    let mut table: Vec<Vec<Tree>> = vec![Vec::new(), vec![Tree::Leaf]];
    for size in 2..=n {
        let mut row = Vec::new();
        for k in 1..size {
            for l in &table[k] {
                for r in &table[size - k] {
                    row.push(Tree::caret(l.clone(), r.clone()));
                }
            }
        }
        table.push(row);
    }
    Ok(table.swap_remove(n))
}

/// All forests with exactly `m` leaves (any number of roots).
pub fn enumerate_forests(m: usize, bound: usize) -> Result<Vec<Forest>> {
    if m == 0 || m > bound {
        return Err(Error::BoundExceeded {
            what: "leaf count",
            value: m,
            bound,
        });
    }
    let trees: Vec<Vec<Tree>> = (0..=m)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                enumerate_trees(k, bound).unwrap()
            }
        })
        .collect();
    fn extend(rem: usize, trees: &[Vec<Tree>], cur: &mut Vec<Tree>, out: &mut Vec<Forest>) {
        if rem == 0 {
            out.push(Forest { trees: cur.clone() });
            return;
        }
        for k in 1..=rem {
            for t in &trees[k] {
                cur.push(t.clone());
                extend(rem - k, trees, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(m, &trees, &mut Vec::new(), &mut out);
    Ok(out)
}

/// An ordered, nonempty sequence of trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Result<Forest> {
        if trees.is_empty() {
            return Err(Error::Precondition("a forest has at least one root".into()));
        }
        Ok(Forest { trees })
    }

    /// The identity morphism on `n` roots.
    pub fn trivial(n: usize) -> Forest {
        assert!(n >= 1);
        Forest {
            trees: vec![Tree::Leaf; n],
        }
    }

    /// `f_{i,n}`: `n` roots, all trees trivial except tree `i`, a single caret.
    pub fn elementary(i: usize, n: usize) -> Result<Forest> {
        if n == 0 || i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let mut trees = vec![Tree::Leaf; n];
        trees[i - 1] = Tree::single_caret();
        Ok(Forest { trees })
    }

    /// `n` parallel copies of `tree`.
    pub fn repeat(tree: &Tree, n: usize) -> Forest {
        assert!(n >= 1);
        Forest {
            trees: vec![tree.clone(); n],
        }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn root_count(&self) -> usize {
        self.trees.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    /// Number of trees with at least one caret.
    pub fn nontrivial_count(&self) -> usize {
        self.trees.iter().filter(|t| !t.is_leaf()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(Tree::is_leaf)
    }

    /// Path words of every leaf, left to right across trees.
    pub fn path_words(&self) -> WordTuple {
        WordTuple::new(
            self.trees
                .iter()
                .flat_map(|t| t.path_words().into_words())
                .collect(),
        )
    }

    /// Stack `self` on top of `below`: root `i` of `self` goes on leaf `i`
    /// of `below`.
    pub fn compose(&self, below: &Forest) -> Result<Forest> {
        if self.root_count() != below.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: below.leaf_count(),
                found: self.root_count(),
            });
        }
        let mut offset = 0;
        let trees = below
            .trees
            .iter()
            .map(|t| {
                let n = t.leaf_count();
                let grafted = t.graft(&self.trees[offset..offset + n]);
                offset += n;
                grafted
            })
            .collect();
        Ok(Forest { trees })
    }

    /// `self ∘ tree` as a tree.
    pub fn apply_to(&self, tree: &Tree) -> Result<Tree> {
        let f = self.compose(&Forest::from(tree.clone()))?;
        Ok(f.trees.into_iter().next().unwrap())
    }

    /// Parse a `;`-separated list of trees.
    pub fn parse(text: &str) -> Result<Forest> {
        let mut trees = Vec::new();
        let mut offset = 0;
        for part in text.split(';') {
            let mut p = TreeParser::new(part, offset);
            trees.push(p.parse_complete()?);
            offset += part.len() + 1;
        }
        Forest::new(trees)
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest { trees: vec![t] }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "."),
            Tree::Caret(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest[{self}]")
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        parse_tree(s)
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_tree(&s).map_err(serde::de::Error::custom)
    }
}

/// Parse a tree in parenthesized form (`.` is a leaf, `(L R)` a caret) or
/// f-product form (`f3 f1 f1`, applied right to left to the one-leaf tree).
/// A product may also be wrapped in parentheses.
pub fn parse_tree(text: &str) -> Result<Tree> {
    TreeParser::new(text, 0).parse_complete()
}

/// Recursive-descent parser over the tree grammar. `base` shifts reported
/// positions when parsing a slice of a larger string.
pub(crate) struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> TreeParser<'a> {
    pub(crate) fn new(text: &'a str, base: usize) -> Self {
        TreeParser {
            src: text.as_bytes(),
            pos: 0,
            base,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.base + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub(crate) fn parse_complete(&mut self) -> Result<Tree> {
        let t = self.tree()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(t)
    }

    fn tree(&mut self) -> Result<Tree> {
        self.skip_ws();
        match self.peek() {
            Some(b'.') => {
                self.pos += 1;
                Ok(Tree::Leaf)
            }
            Some(b'f') => self.product(),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let t = if self.peek() == Some(b'f') {
                    self.product()?
                } else {
                    let l = self.tree()?;
                    let r = self.tree()?;
                    Tree::caret(l, r)
                };
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn product(&mut self) -> Result<Tree> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() != Some(b'f') {
                break;
            }
            let at = self.pos;
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a leaf index after 'f'"));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let index: usize = digits
                .parse()
                .map_err(|_| Error::parse(self.base + start, "leaf index too large"))?;
            factors.push((at, index));
        }
        let mut t = Tree::Leaf;
        for &(at, index) in factors.iter().rev() {
            let n = t.leaf_count();
            if index == 0 || index > n {
                return Err(Error::parse(
                    self.base + at,
                    format!("f{index} applied to a tree with {n} leaves"),
                ));
            }
            t = t.split_leaf(index)?;
        }
        Ok(t)
    }
}
