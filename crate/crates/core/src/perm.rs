//! Permutations of `{1..n}`, stored 0-based.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection of `{0..n-1}`; `image(k)` is where `k` goes. Text and JSON
/// forms use 1-based image lists such as `[3,2,1,4]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{:?} (0-based)", images)));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?} contains 0")));
        }
        Perm::from_zero_based(images.iter().map(|i| i - 1).collect())
            .map_err(|_| Error::InvalidPermutation(format!("{images:?}")))
    }

    /// `k ↦ k + shift (mod n)`.
    pub fn rotation(n: usize, shift: usize) -> Perm {
        Perm((0..n).map(|k| (k + shift) % n.max(1)).collect())
    }

    /// Swap two 1-based points.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Perm> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, bound: n });
        }
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, j - 1);
        Ok(Perm(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (k, &i) in self.0.iter().enumerate() {
            inv[i] = k;
        }
        Perm(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Perm(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// `Some(c)` if this is the cyclic rotation `k ↦ k + c (mod n)`.
    pub fn rotation_offset(&self) -> Option<usize> {
        let n = self.0.len();
        if n == 0 {
            return Some(0);
        }
        let c = self.0[0];
        self.0
            .iter()
            .enumerate()
            .all(|(k, &i)| i == (k + c) % n)
            .then_some(c)
    }

    pub fn is_cyclic(&self) -> bool {
        self.rotation_offset().is_some()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}
