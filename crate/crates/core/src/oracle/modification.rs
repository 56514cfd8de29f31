//! Point modifications computed from explicit section data: a down point of
//! corank `s` imposes `s` random full-rank conditions on fiber values, an up
//! point of corank `s` allows a first-order pole there with `r - s` residual
//! conditions. Sections are tracked as numerator vectors over the common
//! pole divisor, so everything stays plain polynomial coefficients.

use super::field::Field;
use super::linalg::{rank, Matrix};
use super::{recover_split, RETRY_BUDGET};
use crate::error::OracleError;
use crate::splitcalc::{Direction, SplitType};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// One modification point: chart coordinate, corank, direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPoint {
    pub coord: i64,
    pub corank: usize,
    pub direction: Direction,
}

impl ModPoint {
    pub fn down(coord: i64, corank: usize) -> Self {
        ModPoint {
            coord,
            corank,
            direction: Direction::Down,
        }
    }

    pub fn up(coord: i64, corank: usize) -> Self {
        ModPoint {
            coord,
            corank,
            direction: Direction::Up,
        }
    }
}

/// A drawn modification: the original type plus certified fiber conditions.
#[derive(Clone, Debug)]
pub struct ModificationData<F: Field> {
    field: F,
    original: SplitType,
    conditions: Vec<(i64, Matrix<F::Elem>)>,
    up_count: i64,
    down_total: i64,
    up_total: i64,
}

impl<F: Field> ModificationData<F> {
    /// Draws the fiber quotients for a general modification at the given
    /// points, certifying each as full rank.
    pub fn general(
        field: &F,
        s: &SplitType,
        points: &[ModPoint],
        seed: u64,
    ) -> Result<Self, OracleError> {
        let r = s.rank();
        for (i, p) in points.iter().enumerate() {
            if p.corank == 0 || p.corank > r {
                return Err(OracleError::CorankTooLarge {
                    corank: p.corank,
                    rank: r,
                });
            }
            if points[..i].iter().any(|q| q.coord == p.coord) {
                return Err(OracleError::CoincidentPoints);
            }
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let mut conditions = Vec::new();
        for p in points {
            let rows = match p.direction {
                // Full-corank up points impose nothing: a plain pole.
                Direction::Down => p.corank,
                Direction::Up => r - p.corank,
            };
            if rows == 0 {
                continue;
            }
            conditions.push((p.coord, draw_full_rank(field, rows, r, &mut rng)?));
        }
        let up_count = points
            .iter()
            .filter(|p| p.direction == Direction::Up)
            .count() as i64;
        let down_total = points
            .iter()
            .filter(|p| p.direction == Direction::Down)
            .map(|p| p.corank as i64)
            .sum();
        let up_total = points
            .iter()
            .filter(|p| p.direction == Direction::Up)
            .map(|p| p.corank as i64)
            .sum();
        Ok(ModificationData {
            field: field.clone(),
            original: s.clone(),
            conditions,
            up_count,
            down_total,
            up_total,
        })
    }

    pub fn expected_degree(&self) -> i64 {
        self.original.degree() - self.down_total + self.up_total
    }

    /// Sections of the twist by `t`: numerator vectors of degree at most
    /// `a_i + t + #up` killed by every fiber condition.
    pub fn h0(&self, t: i64) -> i64 {
        let f = &self.field;
        let u = self.up_count;
        let dims: Vec<usize> = self
            .original
            .degrees()
            .iter()
            .map(|&a| (a + t + u + 1).max(0) as usize)
            .collect();
        let cols: usize = dims.iter().sum();
        if cols == 0 {
            return 0;
        }
        let rows: usize = self.conditions.iter().map(|(_, q)| q.rows).sum();
        if rows == 0 {
            return cols as i64;
        }
        let mut m = Matrix::filled(rows, cols, f.zero());
        let mut row_base = 0;
        for (coord, q) in &self.conditions {
            let x = f.from_i64(*coord);
            for qr in 0..q.rows {
                let mut col = 0;
                for (i, &dim) in dims.iter().enumerate() {
                    let mut xk = f.one();
                    for _ in 0..dim {
                        m.set(row_base + qr, col, f.mul(q.at(qr, i), &xk));
                        xk = f.mul(&xk, &x);
                        col += 1;
                    }
                }
            }
            row_base += q.rows;
        }
        cols as i64 - rank(f, &m) as i64
    }

    /// Splitting type recovered from the section profile.
    pub fn splitting(&self) -> Result<SplitType, OracleError> {
        let s = &self.original;
        let lo = -(s.max_degree() + self.up_total) - 2;
        let hi = (-(s.min_degree() - self.down_total - self.up_total)).max(lo + 3) + 2;
        recover_split(lo, hi, s.rank(), self.expected_degree(), |t| self.h0(t))
    }
}

/// Splitting type of the general modification of `s` at the given points.
pub fn modification_splitting<F: Field>(
    field: &F,
    s: &SplitType,
    points: &[ModPoint],
    seed: u64,
) -> Result<SplitType, OracleError> {
    ModificationData::general(field, s, points, seed)?.splitting()
}

fn draw_full_rank<F: Field>(
    field: &F,
    rows: usize,
    cols: usize,
    rng: &mut StdRng,
) -> Result<Matrix<F::Elem>, OracleError> {
    for _ in 0..RETRY_BUDGET {
        let data = (0..rows * cols).map(|_| field.sample(rng)).collect();
        let m = Matrix::new(rows, cols, data);
        if rank(field, &m) == rows.min(cols) {
            return Ok(m);
        }
    }
    Err(OracleError::GenericityFailure {
        retries: RETRY_BUDGET,
        reason: format!("no full-rank {rows}x{cols} draw"),
    })
}

pub(super) fn random_invertible<F: Field>(
    field: &F,
    n: usize,
    rng: &mut StdRng,
) -> Result<Matrix<F::Elem>, OracleError> {
    draw_full_rank(field, n, n, rng)
}
