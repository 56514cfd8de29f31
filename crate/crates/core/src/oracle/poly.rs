//! Dense univariate polynomials over a field context, just enough for the
//! oracle: evaluation, products, determinants of small matrices, and gcds
//! for the surjectivity certificate.

use super::field::Field;

/// Coefficients in increasing degree, no trailing zeros; empty = zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<E> {
    pub coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
}

pub fn trim<F: Field>(field: &F, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
    while coeffs.last().is_some_and(|c| field.is_zero(c)) {
        coeffs.pop();
    }
    Poly { coeffs }
}

pub fn constant<F: Field>(field: &F, c: F::Elem) -> Poly<F::Elem> {
    trim(field, vec![c])
}

pub fn eval<F: Field>(field: &F, p: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
    let mut acc = field.zero();
    for c in p.coeffs.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

pub fn add<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
        let y = b.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
        coeffs.push(field.add(&x, &y));
    }
    trim(field, coeffs)
}

pub fn sub<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
        let y = b.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
        coeffs.push(field.sub(&x, &y));
    }
    trim(field, coeffs)
}

pub fn mul<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut coeffs = vec![field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(x, y));
        }
    }
    trim(field, coeffs)
}

/// Remainder of `a` divided by nonzero `b`.
pub fn rem<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let mut r = a.coeffs.clone();
    let db = b.coeffs.len() - 1;
    let lead_inv = field.inv(b.coeffs.last().unwrap()).expect("nonzero lead");
    while r.len() > db {
        let k = r.len() - 1;
        let q = field.mul(r.last().unwrap(), &lead_inv);
        if !field.is_zero(&q) {
            for (j, bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                r[idx] = field.sub(&r[idx], &field.mul(&q, bc));
            }
        }
        r.pop();
        while r.last().is_some_and(|c| field.is_zero(c)) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
    }
    trim(field, r)
}

/// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
pub fn gcd<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    if x.is_zero() {
        return x;
    }
    let lead_inv = field.inv(x.coeffs.last().unwrap()).expect("nonzero lead");
    let coeffs = x.coeffs.iter().map(|c| field.mul(c, &lead_inv)).collect();
    trim(field, coeffs)
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
/// Fine at oracle scale (ranks stay in single digits).
pub fn det<F: Field>(field: &F, n: usize, entries: &[Poly<F::Elem>]) -> Poly<F::Elem> {
    assert_eq!(entries.len(), n * n);
    if n == 0 {
        return constant(field, field.one());
    }
    if n == 1 {
        return entries[0].clone();
    }
    let mut acc = Poly::zero();
    // Expand along the first row.
    for col in 0..n {
        if entries[col].is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 1..n {
            for c in 0..n {
                if c != col {
                    minor.push(entries[r * n + c].clone());
                }
            }
        }
        let cofactor = mul(field, &entries[col], &det(field, n - 1, &minor));
        acc = if col % 2 == 0 {
            add(field, &acc, &cofactor)
        } else {
            sub(field, &acc, &cofactor)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::field::PrimeField;
    use super::*;

    fn p(field: &PrimeField, cs: &[i64]) -> Poly<u64> {
        trim(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    #[test]
    fn arithmetic_round_trip() {
        let f = PrimeField::default();
        let a = p(&f, &[1, 2, 1]); // (x+1)^2
        let b = p(&f, &[1, 1]); // x+1
        assert_eq!(mul(&f, &b, &b), a);
        assert_eq!(rem(&f, &a, &b), Poly::zero());
        assert_eq!(gcd(&f, &a, &b), b);
        assert_eq!(eval(&f, &a, &f.from_i64(2)), 9);
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let f = PrimeField::default();
        let a = p(&f, &[-1, 1]); // x - 1
        let b = p(&f, &[1, 1]); // x + 1
        let g = gcd(&f, &a, &b);
        assert_eq!(g.degree(), 0);
    }

    #[test]
    fn small_determinants() {
        let f = PrimeField::default();
        // [[x, 1], [1, x]] -> x^2 - 1
        let entries = vec![p(&f, &[0, 1]), p(&f, &[1]), p(&f, &[1]), p(&f, &[0, 1])];
        assert_eq!(det(&f, 2, &entries), p(&f, &[-1, 0, 1]));
    }
}
