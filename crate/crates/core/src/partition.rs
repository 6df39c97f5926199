//! Forest partition functions for a three-index tensor `R_i^{j,k}`.
//!
//! `⟨Φ(f) ξ_{i_1} ⊗ … ⊗ ξ_{i_n}, ξ_{j_1} ⊗ … ⊗ ξ_{j_m}⟩` is the sum over edge
//! labellings compatible with the boundary indices of the product of
//! `R_{ω(e_-)}^{ω(e_l), ω(e_r)}` over trivalent vertices.

use crate::error::{Error, Result};
use crate::ring::Scalar;
use crate::tree::{Forest, Tree};

/// Sparse `R_i^{j,k}` over the index set `{0..size}`.
#[derive(Clone, Debug)]
pub struct RTensor<S> {
    size: usize,
    /// `columns[i]` lists the nonzero `(j, k, R_i^{j,k})`.
    columns: Vec<Vec<(usize, usize, S)>>,
}

impl<S: Scalar> RTensor<S> {
    /// A tensor that need not be an isometry (e.g. a finite truncation).
    pub fn partial(
        size: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self> {
        let mut columns = vec![Vec::new(); size];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= size {
                    return Err(Error::IndexOutOfRange {
                        index: idx + 1,
                        bound: size,
                    });
                }
            }
            if !c.is_zero() {
                columns[i].push((j, k, c));
            }
        }
        Ok(RTensor { size, columns })
    }

    /// A tensor whose columns `R ξ_i` are orthonormal in `ℓ²(I × I)`
    /// (real scalars), checked here.
    pub fn isometry(
        size: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self> {
        let r = Self::partial(size, entries)?;
        for i in 0..size {
            for i2 in i..size {
                let ip = r.column_inner(i, i2);
                let expected = if i == i2 { S::one() } else { S::zero() };
                if ip != expected {
                    return Err(Error::Precondition(format!(
                        "R is not an isometry: <Rξ_{i}, Rξ_{i2}> = {ip:?}"
                    )));
                }
            }
        }
        Ok(r)
    }

    fn column_inner(&self, i: usize, i2: usize) -> S {
        let mut acc = S::zero();
        for (j, k, c) in &self.columns[i] {
            for (j2, k2, c2) in &self.columns[i2] {
                if j == j2 && k == k2 {
                    acc = acc.add(&c.mul(c2));
                }
            }
        }
        acc
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        self.columns[i]
            .iter()
            .find(|(a, b, _)| *a == j && *b == k)
            .map(|(_, _, c)| c.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn column(&self, i: usize) -> &[(usize, usize, S)] {
        &self.columns[i]
    }

    fn tree_amplitude(&self, t: &Tree, input: usize, out: &[usize]) -> S {
        match t {
            Tree::Leaf => {
                if out[0] == input {
                    S::one()
                } else {
                    S::zero()
                }
            }
            Tree::Caret(l, r) => {
                let nl = l.leaf_count();
                let (ol, or) = out.split_at(nl);
                let mut acc = S::zero();
                for (j, k, c) in &self.columns[input] {
                    let left = self.tree_amplitude(l, *j, ol);
                    if left.is_zero() {
                        continue;
                    }
                    let right = self.tree_amplitude(r, *k, or);
                    if right.is_zero() {
                        continue;
                    }
                    acc = acc.add(&c.mul(&left).mul(&right));
                }
                acc
            }
        }
    }

    /// The matrix coefficient of `Φ(f)` between basis tensors `in_idx`
    /// (one per root) and `out_idx` (one per leaf).
    pub fn partition_function(&self, f: &Forest, in_idx: &[usize], out_idx: &[usize]) -> Result<S> {
        if in_idx.len() != f.root_count() {
            return Err(Error::ArityMismatch {
                expected: f.root_count(),
                found: in_idx.len(),
            });
        }
        if out_idx.len() != f.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: f.leaf_count(),
                found: out_idx.len(),
            });
        }
        if let Some(&bad) = in_idx.iter().chain(out_idx).find(|&&i| i >= self.size) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                bound: self.size,
            });
        }
        let mut acc = S::one();
        let mut offset = 0;
        for (tree, &input) in f.trees().iter().zip(in_idx) {
            let n = tree.leaf_count();
            let a = self.tree_amplitude(tree, input, &out_idx[offset..offset + n]);
            offset += n;
            if a.is_zero() {
                return Ok(S::zero());
            }
            acc = acc.mul(&a);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn two_symbol() -> RTensor<BigRational> {
        RTensor::isometry(
            2,
            [
                (0, 0, 0, q(3, 5)),
                (0, 1, 1, q(4, 5)),
                (1, 0, 1, q(5, 13)),
                (1, 1, 0, q(12, 13)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_forest_is_identity() {
        let r = two_symbol();
        let f = Forest::trivial(3);
        assert_eq!(
            r.partition_function(&f, &[0, 1, 1], &[0, 1, 1]).unwrap(),
            q(1, 1)
        );
        assert_eq!(
            r.partition_function(&f, &[0, 1, 1], &[0, 0, 1]).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn single_vertex() {
        let r = RTensor::isometry(1, [(0, 0, 0, q(1, 1))]).unwrap();
        let f = Forest::from(Tree::single_caret());
        assert_eq!(r.partition_function(&f, &[0], &[0, 0]).unwrap(), q(1, 1));
    }

    #[test]
    fn two_vertex_state_sum() {
        // ((. .) .): R_i^{j,k} R_j^{l,m} summed over the internal edge j
        let r = two_symbol();
        let f = Forest::from(crate::tree::parse_tree("f1 f1").unwrap());
        let v = r.partition_function(&f, &[0], &[1, 1, 1]).unwrap();
        // j = 0: R_0^{0,1} = 0; j = 1: R_0^{1,1} R_1^{1,1} = 0 -> only ...
        let mut expected = q(0, 1);
        for j in 0..2 {
            expected += r.get(0, j, 1) * r.get(j, 1, 1);
        }
        assert_eq!(v, expected);
    }

    #[test]
    fn rejects_non_isometries_and_bad_indices() {
        assert!(RTensor::isometry(1, [(0, 0, 0, q(1, 2))]).is_err());
        assert!(RTensor::isometry(2, [(0, 0, 0, q(1, 1)), (1, 0, 0, q(1, 1))]).is_err());
        let r = two_symbol();
        let f = Forest::trivial(1);
        assert!(matches!(
            r.partition_function(&f, &[2], &[0]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(r.partition_function(&f, &[0, 0], &[0]).is_err());
    }
}
