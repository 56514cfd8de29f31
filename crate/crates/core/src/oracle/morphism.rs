//! Explicit bundle maps on the line as polynomial matrices, with certified
//! genericity, and the kernel-splitting computation that arbitrates the
//! closed-form kernel rule.

use super::field::Field;
use super::linalg::{kernel_dim, rank, Matrix};
use super::poly::{self, Poly};
use super::{recover_split, RETRY_BUDGET};
use crate::error::OracleError;
use crate::splitcalc::SplitType;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Certificate requested from a general draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genericity {
    /// The matrix is not identically zero.
    Nonzero,
    /// The map is surjective as a sheaf map.
    Surjective,
}

/// A bundle map between split bundles: entry `(j, i)` is a polynomial of
/// degree at most `target_j - source_i` (zero when negative), standing for
/// the homogeneous form read in the finite chart.
#[derive(Clone, Debug)]
pub struct PolyMorphism<F: Field> {
    field: F,
    source: SplitType,
    target: SplitType,
    seed: u64,
    entries: Vec<Poly<F::Elem>>,
}

impl<F: Field> PolyMorphism<F> {
    pub fn source(&self) -> &SplitType {
        &self.source
    }

    pub fn target(&self) -> &SplitType {
        &self.target
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn entry(&self, j: usize, i: usize) -> &Poly<F::Elem> {
        &self.entries[j * self.source.rank() + i]
    }

    /// Matrix of the induced map on sections of the twist by `t`, acting on
    /// coefficient vectors.
    pub fn section_matrix(&self, t: i64) -> Matrix<F::Elem> {
        let src_dims: Vec<usize> = self
            .source
            .degrees()
            .iter()
            .map(|&a| (a + t + 1).max(0) as usize)
            .collect();
        let tgt_dims: Vec<usize> = self
            .target
            .degrees()
            .iter()
            .map(|&a| (a + t + 1).max(0) as usize)
            .collect();
        let cols: usize = src_dims.iter().sum();
        let rows: usize = tgt_dims.iter().sum();
        let mut m = Matrix::filled(rows, cols, self.field.zero());
        let mut col_base = 0;
        for (i, &cdim) in src_dims.iter().enumerate() {
            let mut row_base = 0;
            for (j, &rdim) in tgt_dims.iter().enumerate() {
                let p = self.entry(j, i);
                for k in 0..cdim {
                    for (l, coef) in p.coeffs.iter().enumerate() {
                        if k + l < rdim {
                            let r = row_base + k + l;
                            let c = col_base + k;
                            let v = self.field.add(m.at(r, c), coef);
                            m.set(r, c, v);
                        }
                    }
                }
                row_base += rdim;
            }
            col_base += cdim;
        }
        m
    }

    /// Certified surjectivity: the maximal minors have no common zero, on
    /// the finite chart (gcd is constant) or at infinity (the top-coefficient
    /// matrix keeps full rank).
    pub fn is_surjective(&self) -> bool {
        let r = self.source.rank();
        let m = self.target.rank();
        if r < m {
            return false;
        }
        let f = &self.field;
        let mut nonzero_minors: Vec<Poly<F::Elem>> = Vec::new();
        for cols in combinations(r, m) {
            let mut sub = Vec::with_capacity(m * m);
            for j in 0..m {
                for &i in &cols {
                    sub.push(self.entry(j, i).clone());
                }
            }
            let d = poly::det(f, m, &sub);
            if !d.is_zero() {
                nonzero_minors.push(d);
            }
        }
        if nonzero_minors.is_empty() {
            return false;
        }
        let mut g = nonzero_minors[0].clone();
        for p in &nonzero_minors[1..] {
            g = poly::gcd(f, &g, p);
            if g.degree() == 0 {
                break;
            }
        }
        if g.degree() != 0 {
            return false;
        }
        // Behaviour at infinity: coefficient of each entry in its top
        // homogeneous degree.
        let mut top = Matrix::filled(m, r, f.zero());
        for j in 0..m {
            for i in 0..r {
                let d = self.target.degrees()[j] - self.source.degrees()[i];
                if d < 0 {
                    continue;
                }
                let p = self.entry(j, i);
                if let Some(c) = p.coeffs.get(d as usize) {
                    top.set(j, i, c.clone());
                }
            }
        }
        rank(f, &top) == m
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Draws a morphism with random coefficients, resampling until the requested
/// certificate holds.
pub fn general_morphism<F: Field>(
    field: &F,
    source: &SplitType,
    target: &SplitType,
    seed: u64,
    want: Genericity,
) -> Result<PolyMorphism<F>, OracleError> {
    let all_negative = target
        .degrees()
        .iter()
        .all(|&tj| source.degrees().iter().all(|&si| tj - si < 0));
    if all_negative {
        return Err(OracleError::GenericityFailure {
            retries: 0,
            reason: "no nonzero maps exist: all entry degrees are negative".into(),
        });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let mut entries = Vec::with_capacity(source.rank() * target.rank());
        for &tj in target.degrees() {
            for &si in source.degrees() {
                let d = tj - si;
                if d < 0 {
                    entries.push(Poly::zero());
                } else {
                    let coeffs = (0..=d).map(|_| field.sample(&mut rng)).collect();
                    entries.push(poly::trim(field, coeffs));
                }
            }
        }
        let phi = PolyMorphism {
            field: field.clone(),
            source: source.clone(),
            target: target.clone(),
            seed,
            entries,
        };
        let ok = match want {
            Genericity::Nonzero => phi.entries.iter().any(|p| !p.is_zero()),
            Genericity::Surjective => phi.is_surjective(),
        };
        if ok {
            return Ok(phi);
        }
    }
    Err(OracleError::GenericityFailure {
        retries: RETRY_BUDGET,
        reason: format!("no draw {source} -> {target} satisfied {want:?}"),
    })
}

/// Splitting type of the kernel of a certified surjection, from the section
/// kernels over a twist window.
pub fn kernel_splitting<F: Field>(phi: &PolyMorphism<F>) -> Result<SplitType, OracleError> {
    if !phi.is_surjective() {
        return Err(OracleError::NotSurjective);
    }
    let src = phi.source();
    let tgt = phi.target();
    if src.rank() == tgt.rank() {
        return Err(OracleError::ZeroKernel);
    }
    let expect_rank = src.rank() - tgt.rank();
    let expect_degree = src.degree() - tgt.degree();
    let max_deg = src.max_degree();
    let lo = -max_deg - 2;
    let min_bound = expect_degree - (expect_rank as i64 - 1).max(0) * max_deg;
    let hi = (-min_bound).max(lo + 3) + 2;
    recover_split(lo, hi, expect_rank, expect_degree, |t| {
        kernel_dim(&phi.field, &phi.section_matrix(t)) as i64
    })
}
