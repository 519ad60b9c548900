//! Exact arithmetic helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn to_u64(n: &BigInt) -> u64 {
    n.to_u64().expect("value does not fit in u64")
}

/// Inverse of a square matrix by Gauss-Jordan elimination, `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Incremental row echelon form over the integers; rank over the rationals.
///
/// Rows are kept primitive (content divided out), so entries stay small for
/// the bounded-height matrices this crate feeds in.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    width: usize,
    pivots: Vec<(usize, Vec<i128>)>,
}

impl RowEchelon {
    pub fn new(width: usize) -> Self {
        Self { width, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.width
    }

    /// Reduces `row` against the current pivots and keeps it if independent.
    pub fn insert(&mut self, row: &[i64]) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let mut r: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        for (col, p) in &self.pivots {
            if r[*col] != 0 {
                let a = p[*col];
                let b = r[*col];
                for (x, y) in r.iter_mut().zip(p) {
                    *x = *x * a - b * *y;
                }
                normalize(&mut r);
            }
        }
        match r.iter().position(|&x| x != 0) {
            Some(col) => {
                normalize(&mut r);
                self.pivots.push((col, r));
                true
            }
            None => false,
        }
    }
}

fn normalize(r: &mut [i128]) {
    let g = r.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in r.iter_mut() {
            *x /= g;
        }
    }
}

pub fn rank_of_rows(rows: impl IntoIterator<Item = Vec<i64>>, width: usize) -> usize {
    let mut e = RowEchelon::new(width);
    for row in rows {
        e.insert(&row);
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a2_cartan() {
        let c = vec![vec![int(2), int(-1)], vec![int(-1), int(2)]];
        let inv = invert(&c).unwrap();
        assert_eq!(inv[0][0], frac(2, 3));
        assert_eq!(inv[0][1], frac(1, 3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let c = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(invert(&c).is_none());
    }

    #[test]
    fn echelon_rank() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1], vec![1, 3, 4]];
        assert_eq!(rank_of_rows(rows, 3), 2);
    }

    #[test]
    fn rational_text_round_trip() {
        for q in [frac(-3, 4), int(5), frac(0, 7)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
    }
}
