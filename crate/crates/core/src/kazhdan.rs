//! Coefficients of the shift representation on `ℓ²(ℤ)`.
//!
//! The isometry is `R(ξ) = uξ ⊗ ζ` with `u` the shift and `ζ` a fixed unit
//! vector. Applying `Φ(f)` to an elementary tensor keeps it elementary, so
//! every leaf carries a symbol `u^k · (input | ζ)` and inner products factor
//! leaf by leaf.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::element::{TreePair, VElement};
use crate::error::{Error, Result};
use crate::families;
use crate::tree::{Forest, Tree};
use crate::Limits;

/// Finitely supported `ℤ → ℚ`, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<i64, BigRational>,
}

impl SparseVec {
    pub fn new(entries: impl IntoIterator<Item = (i64, BigRational)>) -> SparseVec {
        let mut v = SparseVec::default();
        for (k, x) in entries {
            let slot = v.entries.entry(k).or_insert_with(BigRational::zero);
            *slot += x;
            if slot.is_zero() {
                v.entries.remove(&k);
            }
        }
        v
    }

    /// `δ_k`.
    pub fn point(k: i64) -> SparseVec {
        SparseVec::new([(k, BigRational::one())])
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, k: i64) -> BigRational {
        self.entries
            .get(&k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `u^a v`: `(u^a v)(x) = v(x − a)`.
    pub fn shift(&self, a: i64) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(k, x)| (k + a, x.clone()))
                .collect(),
        }
    }

    pub fn inner(&self, other: &SparseVec) -> BigRational {
        let (small, large) = if self.entries.len() <= other.entries.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .filter_map(|(k, x)| large.entries.get(k).map(|y| x * y))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// `⟨u^a v, w⟩` without materializing the shift.
    pub fn shifted_inner(&self, a: i64, other: &SparseVec) -> BigRational {
        self.entries
            .iter()
            .filter_map(|(k, x)| other.entries.get(&(k + a)).map(|y| x * y))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }
}

/// `vec / √scale`, so vectors like `ζ_m` stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVec {
    pub vec: SparseVec,
    pub scale: BigRational,
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(root(x.numer())?, root(x.denom())?))
}

impl ScaledVec {
    pub fn plain(vec: SparseVec) -> ScaledVec {
        ScaledVec {
            vec,
            scale: BigRational::one(),
        }
    }

    /// `⟨u^a self, other⟩`; an error when the normalizations do not combine
    /// to a rational.
    pub fn shifted_inner(&self, a: i64, other: &ScaledVec) -> Result<BigRational> {
        let raw = self.vec.shifted_inner(a, &other.vec);
        if raw.is_zero() {
            return Ok(raw);
        }
        let s = &self.scale * &other.scale;
        let root = rational_sqrt(&s)
            .ok_or_else(|| Error::Irrational(format!("√({s}) in an inner product")))?;
        Ok(raw / root)
    }

    pub fn inner(&self, other: &ScaledVec) -> Result<BigRational> {
        self.shifted_inner(0, other)
    }
}

/// `h(m) = 2m · 8^m`.
pub fn zeta_height(m: u32) -> u64 {
    2 * m as u64 * 8u64.pow(m)
}

/// `ζ_m`: the indicator of `{1, …, h(m)}` divided by `√h(m)`.
pub fn zeta(m: u32, limits: &Limits) -> Result<ScaledVec> {
    if m == 0 {
        return Err(Error::Precondition("ζ_m needs m ≥ 1".into()));
    }
    if m > limits.max_zeta_index {
        return Err(Error::BoundExceeded {
            what: "zeta index",
            value: m as usize,
            bound: limits.max_zeta_index as usize,
        });
    }
    let h = zeta_height(m);
    Ok(ScaledVec {
        vec: SparseVec::new((1..=h as i64).map(|k| (k, BigRational::one()))),
        scale: BigRational::from(BigInt::from(h)),
    })
}

/// `⟨u^a ζ_m, ζ_m⟩ = max(0, h − |a|) / h`.
pub fn zeta_overlap(m: u32, a: i64) -> BigRational {
    let h = zeta_height(m) as i64;
    BigRational::new((h - a.abs()).max(0).into(), h.into())
}

/// What a leaf symbol is a power of `u` applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Base {
    /// The input vector sitting at this root.
    Input(usize),
    Zeta,
}

/// `u^power · base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LeafSymbol {
    pub power: usize,
    pub base: Base,
}

impl LeafSymbol {
    pub fn input(i: usize) -> LeafSymbol {
        LeafSymbol {
            power: 0,
            base: Base::Input(i),
        }
    }

    pub fn zeta(power: usize) -> LeafSymbol {
        LeafSymbol {
            power,
            base: Base::Zeta,
        }
    }
}

impl fmt::Display for LeafSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => {}
            1 => write!(f, "u·")?,
            k => write!(f, "u^{k}·")?,
        }
        match self.base {
            Base::Input(i) => write!(f, "ξ{}", i + 1),
            Base::Zeta => write!(f, "ζ"),
        }
    }
}

fn push_symbols(t: &Tree, incoming: LeafSymbol, out: &mut Vec<LeafSymbol>) {
    match t {
        Tree::Leaf => out.push(incoming),
        Tree::Caret(l, r) => {
            let left = LeafSymbol {
                power: incoming.power + 1,
                base: incoming.base,
            };
            push_symbols(l, left, out);
            push_symbols(r, LeafSymbol::zeta(0), out);
        }
    }
}

/// Leaf symbols of `Φ(f)` applied to the given per-root symbols.
pub fn propagate(f: &Forest, inputs: &[LeafSymbol]) -> Result<Vec<LeafSymbol>> {
    if inputs.len() != f.root_count() {
        return Err(Error::ArityMismatch {
            expected: f.root_count(),
            found: inputs.len(),
        });
    }
    let mut out = Vec::with_capacity(f.leaf_count());
    for (t, &x) in f.trees().iter().zip(inputs) {
        push_symbols(t, x, &mut out);
    }
    Ok(out)
}

/// Leaf symbols of `Φ(f)` on one abstract input per root.
pub fn forest_apply_shift(f: &Forest) -> Vec<LeafSymbol> {
    let inputs: Vec<LeafSymbol> = (0..f.root_count()).map(LeafSymbol::input).collect();
    propagate(f, &inputs).expect("one input per root")
}

/// `Π_ℓ ⟨x_ℓ, y_ℓ⟩` with inputs on the left resolved in `left` and on the
/// right in `right`.
fn pair_leafwise(
    xs: &[LeafSymbol],
    ys: &[LeafSymbol],
    left: &[ScaledVec],
    right: &[ScaledVec],
    zeta: &ScaledVec,
) -> Result<BigRational> {
    debug_assert_eq!(xs.len(), ys.len());
    fn resolve<'a>(b: Base, inputs: &'a [ScaledVec], zeta: &'a ScaledVec) -> &'a ScaledVec {
        match b {
            Base::Input(i) => &inputs[i],
            Base::Zeta => zeta,
        }
    }
    let mut acc = BigRational::one();
    for (x, y) in xs.iter().zip(ys) {
        let a = x.power as i64 - y.power as i64;
        let v = resolve(x.base, left, zeta);
        let w = resolve(y.base, right, zeta);
        acc *= v.shifted_inner(a, w)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `C = ⟨uζ, ζ⟩² ⟨ζ, u²ζ⟩`. Cross-checked against the leafwise pairing of
/// `Φ(q)` with `Φ(a)`, whose input slots must pair as `⟨u²ξ, u²η⟩`.
pub fn c_constant(zeta: &ScaledVec) -> Result<BigRational> {
    let uz = zeta.shifted_inner(1, zeta)?;
    let u2z = zeta.shifted_inner(-2, zeta)?;
    let c = &uz * &uz * u2z;

    let q = forest_apply_shift(&Forest::from(families::tree_q()));
    let a = forest_apply_shift(&Forest::from(families::tree_a()));
    let mut paired = BigRational::one();
    for (x, y) in q.iter().zip(&a) {
        match (x.base, y.base) {
            (Base::Input(_), Base::Input(_)) if x.power == y.power => {}
            (Base::Zeta, Base::Zeta) => {
                paired *= zeta.shifted_inner(x.power as i64 - y.power as i64, zeta)?;
            }
            _ => {
                return Err(Error::Invariant(format!(
                    "input does not factor out of ⟨{x}, {y}⟩"
                )))
            }
        }
    }
    if paired != c {
        return Err(Error::Invariant(format!(
            "leafwise pairing gives {paired}, closed form {c}"
        )));
    }
    Ok(c)
}

/// `⟨π(k_n) ξ, ξ⟩` for `ξ = ξ_1 ⊗ … ⊗ ξ_{2^n}` at the complete tree `t_n`,
/// computed as `⟨Φ((q)_n) ξ, Φ((a)_n) ξ⟩`.
pub fn kn_coefficient(
    n: u32,
    xi: &[ScaledVec],
    zeta: &ScaledVec,
    limits: &Limits,
) -> Result<BigRational> {
    if n > limits.max_inflation_level {
        return Err(Error::BoundExceeded {
            what: "inflation level",
            value: n as usize,
            bound: limits.max_inflation_level as usize,
        });
    }
    let copies = 1usize << n;
    if xi.len() != copies {
        return Err(Error::ArityMismatch {
            expected: copies,
            found: xi.len(),
        });
    }
    let q = forest_apply_shift(&Forest::repeat(&families::tree_q(), copies));
    let a = forest_apply_shift(&Forest::repeat(&families::tree_a(), copies));
    pair_leafwise(&q, &a, xi, xi, zeta)
}

/// A vector `[w, ξ_1 ⊗ … ⊗ ξ_n]` of the limit space: an elementary tensor
/// sitting at the leaves of `w`.
#[derive(Clone, Debug)]
pub struct TreeVector {
    pub tree: Tree,
    pub components: Vec<ScaledVec>,
}

impl TreeVector {
    pub fn new(tree: Tree, components: Vec<ScaledVec>) -> Result<TreeVector> {
        if components.len() != tree.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: tree.leaf_count(),
                found: components.len(),
            });
        }
        Ok(TreeVector { tree, components })
    }

    /// `ζ^{⊗ 2^m}` at `t_m`.
    pub fn constant(tree: Tree, v: &ScaledVec) -> TreeVector {
        let n = tree.leaf_count();
        TreeVector {
            tree,
            components: vec![v.clone(); n],
        }
    }
}

/// `⟨π(g) ξ, η⟩`, paired at the least common refinement, optionally refined
/// further to include `extra`.
pub fn coefficient(
    g: &TreePair,
    xi: &TreeVector,
    eta: &TreeVector,
    zeta: &ScaledVec,
    extra: Option<&Tree>,
) -> Result<BigRational> {
    // Move ξ up to a common refinement of the domain, then across g.
    let top = g.domain().common_refinement(&xi.tree);
    let g = g.with_domain(&top)?;
    let f = top.residual(&xi.tree).expect("refinement of ξ's tree");
    let inputs: Vec<LeafSymbol> = (0..xi.components.len()).map(LeafSymbol::input).collect();
    let lifted = propagate(&f, &inputs)?;
    let mut moved = lifted.clone();
    for (k, s) in lifted.into_iter().enumerate() {
        moved[g.bijection().image(k)] = s;
    }

    let mut meet = g.range().common_refinement(&eta.tree);
    if let Some(t) = extra {
        meet = meet.common_refinement(t);
    }
    let left = propagate(&meet.residual(g.range()).expect("refines range"), &moved)?;
    let eta_inputs: Vec<LeafSymbol> = (0..eta.components.len()).map(LeafSymbol::input).collect();
    let right = propagate(
        &meet.residual(&eta.tree).expect("refines η's tree"),
        &eta_inputs,
    )?;
    pair_leafwise(&left, &right, &xi.components, &eta.components, zeta)
}

/// `(1 − 8^{−m})^{4^m}`.
pub fn almost_invariance_bound(m: u32) -> BigRational {
    let eight = BigRational::from(BigInt::from(8));
    let base = BigRational::one() - BigRational::one() / Pow::pow(&eight, m);
    Pow::pow(&base, 4u32.pow(m))
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostInvariance {
    pub m: u32,
    #[serde(with = "crate::ring::ratio_str")]
    pub value: BigRational,
    #[serde(with = "crate::ring::ratio_str")]
    pub bound: BigRational,
    /// The canonical domain tree has depth at most `m`.
    pub domain_depth_ok: bool,
    /// After refining the domain to `t_m`, the range has depth at most `2m`.
    pub range_depth_ok: bool,
    /// `value ≥ bound`.
    pub satisfied: bool,
}

impl AlmostInvariance {
    /// Both depth conditions hold, so the bound is guaranteed.
    pub fn bound_applies(&self) -> bool {
        self.domain_depth_ok && self.range_depth_ok
    }
}

/// `⟨π(g) ξ_m, ξ_m⟩` with `ξ_m = ζ_m^{⊗ 2^m}` at `t_m`. Always computed;
/// the depth conditions under which the bound is guaranteed are reported,
/// not enforced.
pub fn almost_invariance(g: &VElement, m: u32, limits: &Limits) -> Result<AlmostInvariance> {
    let z = zeta(m, limits)?;
    let tm = Tree::complete(m);
    let xi = TreeVector::constant(tm.clone(), &z);
    let value = coefficient(g, &xi, &xi, &z, None)?;
    let domain_depth_ok = g.domain().depth() <= m as usize;
    let range_depth_ok = domain_depth_ok && g.with_domain(&tm)?.range().depth() <= 2 * m as usize;
    let bound = almost_invariance_bound(m);
    Ok(AlmostInvariance {
        m,
        satisfied: value >= bound,
        value,
        bound,
        domain_depth_ok,
        range_depth_ok,
    })
}
