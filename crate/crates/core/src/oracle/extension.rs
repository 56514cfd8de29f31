//! General extensions realized by block-triangular transition matrices.
//!
//! An extension of `E2` (degrees `c_j`) by `E1` (degrees `b_i`) is glued over
//! the two standard charts by
//!
//! ```text
//!   [ diag(y^{b_i})   A(y)          ]
//!   [ 0               diag(y^{c_j}) ]
//! ```
//!
//! where the entry `A_{ij}` ranges over the monomials `y^s` with
//! `b_i < s < c_j`, a basis of the extension classes: lower powers are gauged
//! away on the finite chart, higher powers on the chart at infinity. Sections
//! of a twist are polynomial vectors on the finite chart whose transform is
//! again polynomial, a bounded-degree linear condition.

use super::field::Field;
use super::linalg::{rank, Matrix};
use super::recover_split;
use crate::error::OracleError;
use crate::splitcalc::SplitType;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Rank-`r` bundle presented by an invertible transition matrix; here always
/// the extension normal form above.
#[derive(Clone, Debug)]
pub struct TransitionBundle<F: Field> {
    field: F,
    sub: SplitType,
    quot: SplitType,
    /// `class[i][j][k]` multiplies `y^(b_i + 1 + k)` in entry `(i, j)`.
    class: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> TransitionBundle<F> {
    /// A general extension with seed-random class coefficients.
    pub fn general_extension(field: &F, sub: &SplitType, quot: &SplitType, seed: u64) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let class = sub
            .degrees()
            .iter()
            .map(|&b| {
                quot.degrees()
                    .iter()
                    .map(|&c| {
                        let dim = (c - b - 1).max(0) as usize;
                        (0..dim).map(|_| field.sample(&mut rng)).collect()
                    })
                    .collect()
            })
            .collect();
        TransitionBundle {
            field: field.clone(),
            sub: sub.clone(),
            quot: quot.clone(),
            class,
        }
    }

    /// The split extension (zero class).
    pub fn split_extension(field: &F, sub: &SplitType, quot: &SplitType) -> Self {
        let class = sub
            .degrees()
            .iter()
            .map(|_| quot.degrees().iter().map(|_| Vec::new()).collect())
            .collect();
        TransitionBundle {
            field: field.clone(),
            sub: sub.clone(),
            quot: quot.clone(),
            class,
        }
    }

    pub fn rank(&self) -> usize {
        self.sub.rank() + self.quot.rank()
    }

    pub fn degree(&self) -> i64 {
        self.sub.degree() + self.quot.degree()
    }

    /// Sections of the twist by `t`: polynomial vectors `(v1, v2)` on the
    /// finite chart whose chart-at-infinity transform stays polynomial.
    pub fn h0(&self, t: i64) -> i64 {
        let f = &self.field;
        let bs = self.sub.degrees();
        let cs = self.quot.degrees();
        let max_c = *cs.iter().max().unwrap();
        // Degree bounds on the unknowns.
        let v1_dims: Vec<usize> = bs
            .iter()
            .map(|&b| ((b + t).max(t + max_c - 1) + 1).max(0) as usize)
            .collect();
        let v2_dims: Vec<usize> = cs.iter().map(|&c| (c + t + 1).max(0) as usize).collect();
        let cols: usize = v1_dims.iter().sum::<usize>() + v2_dims.iter().sum::<usize>();
        if cols == 0 {
            return 0;
        }

        // Rows: negative powers of y in each transformed first-block entry.
        // Row i sees y^(b_i + t - k) from v1_i and y^(t + s - k) from v2_j
        // through the class monomial y^s.
        let mut row_offsets = Vec::with_capacity(bs.len());
        let mut rows = 0usize;
        let mut row_min = Vec::with_capacity(bs.len());
        for (i, &b) in bs.iter().enumerate() {
            let mut min_pow = 0i64;
            if v1_dims[i] > 0 {
                min_pow = min_pow.min(b + t - (v1_dims[i] as i64 - 1));
            }
            for (j, &_c) in cs.iter().enumerate() {
                let monomials = self.class[i][j].len() as i64;
                if monomials > 0 && v2_dims[j] > 0 {
                    // Lowest power: t + (b+1) - (v2 top degree).
                    min_pow = min_pow.min(t + b + 1 - (v2_dims[j] as i64 - 1));
                }
            }
            row_offsets.push(rows);
            row_min.push(min_pow);
            rows += (-min_pow).max(0) as usize;
        }
        if rows == 0 {
            return cols as i64;
        }

        let mut m = Matrix::filled(rows, cols, f.zero());
        // Row index for power p in block i: row_offsets[i] + (-1 - p).
        let row_of = |i: usize, p: i64| -> Option<usize> {
            if p >= 0 || p < row_min[i] {
                None
            } else {
                Some(row_offsets[i] + (-1 - p) as usize)
            }
        };
        let mut col = 0;
        for (i, &b) in bs.iter().enumerate() {
            for k in 0..v1_dims[i] {
                if let Some(r) = row_of(i, b + t - k as i64) {
                    let v = f.add(m.at(r, col), &f.one());
                    m.set(r, col, v);
                }
                col += 1;
            }
        }
        for (j, _) in cs.iter().enumerate() {
            for k in 0..v2_dims[j] {
                for (i, &b) in bs.iter().enumerate() {
                    for (idx, alpha) in self.class[i][j].iter().enumerate() {
                        let s = b + 1 + idx as i64;
                        if let Some(r) = row_of(i, t + s - k as i64) {
                            let v = f.add(m.at(r, col), alpha);
                            m.set(r, col, v);
                        }
                    }
                }
                col += 1;
            }
        }
        debug_assert_eq!(col, cols);
        cols as i64 - rank(f, &m) as i64
    }

    /// Splitting type recovered from the section profile.
    pub fn splitting(&self) -> Result<SplitType, OracleError> {
        let all: Vec<i64> = self
            .sub
            .degrees()
            .iter()
            .chain(self.quot.degrees())
            .copied()
            .collect();
        let max_deg = *all.iter().max().unwrap();
        let min_deg = *all.iter().min().unwrap();
        let lo = -max_deg - 2;
        let hi = (-min_deg).max(lo + 3) + 2;
        recover_split(lo, hi, self.rank(), self.degree(), |t| self.h0(t))
    }
}

/// Splitting type of a general extension of `quot` by `sub`.
pub fn extension_splitting<F: Field>(
    field: &F,
    sub: &SplitType,
    quot: &SplitType,
    seed: u64,
) -> Result<SplitType, OracleError> {
    TransitionBundle::general_extension(field, sub, quot, seed).splitting()
}
