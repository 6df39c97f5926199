//! Exact positive-semidefiniteness of Gram matrices `[φ_α(g_i⁻¹ g_j)]`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::element::VElement;
use crate::error::Result;
use crate::haagerup::phi_alpha_eval;

/// Why a matrix is not positive semidefinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// A negative diagonal entry of the Schur complement at this original
    /// index.
    NegativePivot {
        index: usize,
        #[serde(with = "crate::ring::ratio_str")]
        value: BigRational,
    },
    /// The remaining diagonal is zero but the off-diagonal entry `(i, j)`
    /// is not, so the `2×2` minor is negative.
    ZeroPivotCoupling {
        i: usize,
        j: usize,
        #[serde(with = "crate::ring::ratio_str")]
        value: BigRational,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct LdlReport {
    pub is_psd: bool,
    /// `(original index, D entry)` in elimination order.
    pub pivots: Vec<(usize, String)>,
    pub witness: Option<Witness>,
}

/// Symmetric pivoted `LDLᵀ` over ℚ: pivot on the largest remaining diagonal
/// entry, lowest index on ties.
pub fn ldl_psd(matrix: &[Vec<BigRational>]) -> LdlReport {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    while !remaining.is_empty() {
        if let Some(&i) = remaining.iter().find(|&&i| a[i][i].is_negative()) {
            return LdlReport {
                is_psd: false,
                witness: Some(Witness::NegativePivot {
                    index: i,
                    value: a[i][i].clone(),
                }),
                pivots,
            };
        }
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .fold(None::<(usize, &usize)>, |best, (pos, i)| match best {
                Some((_, b)) if a[*b][*b] >= a[*i][*i] => best,
                _ => Some((pos, i)),
            })
            .expect("nonempty");
        let d = a[p][p].clone();
        remaining.remove(pos);
        if d.is_zero() {
            for &i in &remaining {
                for &j in &remaining {
                    if i < j && !a[i][j].is_zero() {
                        return LdlReport {
                            is_psd: false,
                            witness: Some(Witness::ZeroPivotCoupling {
                                i,
                                j,
                                value: a[i][j].clone(),
                            }),
                            pivots,
                        };
                    }
                }
            }
            for &i in &remaining {
                if !a[p][i].is_zero() {
                    return LdlReport {
                        is_psd: false,
                        witness: Some(Witness::ZeroPivotCoupling {
                            i: p.min(i),
                            j: p.max(i),
                            value: a[p][i].clone(),
                        }),
                        pivots,
                    };
                }
            }
            pivots.push((p, d.to_string()));
            continue;
        }
        for &i in &remaining {
            let l = &a[i][p] / &d;
            for &j in &remaining {
                let update = &l * &a[p][j];
                a[i][j] -= update;
            }
        }
        pivots.push((p, d.to_string()));
    }
    LdlReport {
        is_psd: true,
        pivots,
        witness: None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    #[serde(with = "crate::ring::ratio_str")]
    pub alpha: BigRational,
    pub matrix: Vec<Vec<String>>,
    #[serde(flatten)]
    pub ldl: LdlReport,
}

/// `M_{ij} = φ_α(g_i⁻¹ g_j)`.
pub fn gram_matrix(elements: &[VElement], alpha: &BigRational) -> Result<Vec<Vec<BigRational>>> {
    let inverses: Vec<VElement> = elements.iter().map(VElement::inverse).collect();
    (0..elements.len())
        .into_par_iter()
        .map(|i| {
            elements
                .iter()
                .map(|gj| phi_alpha_eval(&inverses[i].multiply(gj), alpha))
                .collect()
        })
        .collect()
}

pub fn gram_psd_check(elements: &[VElement], alpha: &BigRational) -> Result<GramReport> {
    let m = gram_matrix(elements, alpha)?;
    Ok(GramReport {
        alpha: alpha.clone(),
        matrix: m
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect(),
        ldl: ldl_psd(&m),
    })
}
