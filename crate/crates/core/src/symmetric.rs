//! Symmetric forests: a forest with a permutation of its leaves on top.

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::tree::Forest;

/// A morphism `(forest, perm)` of the symmetric forest category: leaf `i`
/// of `forest` is carried to position `perm(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForest {
    forest: Forest,
    perm: Perm,
}

impl SymmetricForest {
    pub fn new(forest: Forest, perm: Perm) -> Result<Self> {
        if perm.len() != forest.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: forest.leaf_count(),
                found: perm.len(),
            });
        }
        Ok(SymmetricForest { forest, perm })
    }

    pub fn plain(forest: Forest) -> Self {
        let n = forest.leaf_count();
        SymmetricForest {
            forest,
            perm: Perm::identity(n),
        }
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    /// `(p, σ) ∘ (q, τ) = (τ(p) ∘ q, σ S(p, τ))`.
    pub fn compose(&self, below: &SymmetricForest) -> Result<SymmetricForest> {
        let p = &self.forest;
        let tau = &below.perm;
        if p.root_count() != below.forest.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: below.forest.leaf_count(),
                found: p.root_count(),
            });
        }
        let permuted = permute_trees(p, tau);
        let forest = permuted.compose(&below.forest)?;
        let perm = self.perm.after(&inflate(p, tau));
        Ok(SymmetricForest { forest, perm })
    }
}

/// `τ(p)`: tree `i` of the result is tree `τ(i)` of `p`.
pub fn permute_trees(p: &Forest, tau: &Perm) -> Forest {
    assert_eq!(p.root_count(), tau.len());
    let trees = (0..tau.len())
        .map(|i| p.trees()[tau.image(i)].clone())
        .collect();
    Forest::new(trees).expect("nonempty")
}

/// `S(p, τ)`: the leaf permutation obtained from `τ` by replacing strand `i`
/// with `l_{τ(i)}` parallel strands, `l_j` the leaf count of tree `j` of `p`.
pub fn inflate(p: &Forest, tau: &Perm) -> Perm {
    assert_eq!(p.root_count(), tau.len());
    let sizes: Vec<usize> = p.trees().iter().map(|t| t.leaf_count()).collect();
    let mut starts = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in &sizes {
        starts.push(acc);
        acc += s;
    }
    let mut images = Vec::with_capacity(acc);
    for i in 0..tau.len() {
        let j = tau.image(i);
        images.extend(starts[j]..starts[j] + sizes[j]);
    }
    Perm::from_zero_based(images).expect("inflated permutation is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;

    #[test]
    fn identity_perms_give_plain_composition() {
        let p = SymmetricForest::plain(Forest::elementary(1, 2).unwrap());
        let q = SymmetricForest::plain(Forest::elementary(1, 1).unwrap());
        let r = p.compose(&q).unwrap();
        assert_eq!(
            r.forest(),
            &Forest::elementary(1, 2)
                .unwrap()
                .compose(q.forest())
                .unwrap()
        );
        assert!(r.perm().is_identity());
    }

    #[test]
    fn identity_tau_keeps_sigma() {
        let sigma = Perm::from_one_based(&[3, 1, 2]).unwrap();
        let p = SymmetricForest::new(Forest::elementary(1, 2).unwrap(), sigma.clone()).unwrap();
        let q = SymmetricForest::plain(Forest::elementary(1, 1).unwrap());
        assert_eq!(p.compose(&q).unwrap().perm(), &sigma);
    }

    #[test]
    fn block_transposition() {
        let p = SymmetricForest::plain(Forest::repeat(&Tree::single_caret(), 2));
        let q = SymmetricForest::new(
            Forest::elementary(1, 1).unwrap(),
            Perm::transposition(2, 1, 2).unwrap(),
        )
        .unwrap();
        let r = p.compose(&q).unwrap();
        assert_eq!(r.perm().images_one_based(), vec![3, 4, 1, 2]);
        assert_eq!(r.forest().trees()[0], Tree::complete(2));
    }

    #[test]
    fn uneven_blocks() {
        // trees of sizes 1 and 3, swapped
        let p = Forest::new(vec![Tree::Leaf, Tree::left_comb(3)]).unwrap();
        let s = inflate(&p, &Perm::transposition(2, 1, 2).unwrap());
        assert_eq!(s.images_one_based(), vec![2, 3, 4, 1]);
    }

    #[test]
    fn arity_checked() {
        let p = SymmetricForest::plain(Forest::trivial(3));
        let q = SymmetricForest::plain(Forest::elementary(1, 1).unwrap());
        assert!(p.compose(&q).is_err());
        assert!(SymmetricForest::new(Forest::trivial(2), Perm::identity(3)).is_err());
    }
}
