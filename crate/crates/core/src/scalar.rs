//! Scalar fields the algebra is generic over.
//!
//! Everything that touches the identities under test runs over
//! [`BigRational`] or its Gaussian extension, so equality is exact. The
//! floating implementations exist so the same polynomial and determinant
//! code can be reused for quick numeric estimates.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::Neg;

/// A commutative field with the handful of extras the elimination code needs.
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    /// `true` when `==` and `is_zero` are exact tests.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Rough size used for pivot selection in inexact fields.
    fn magnitude(&self) -> f64;

    fn determinant(rows: Vec<Vec<Self>>) -> Self {
        bareiss(rows)
    }
}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            const EXACT: bool = false;
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
        }

        impl Field for Complex<$t> {
            const EXACT: bool = false;
            fn from_i64(v: i64) -> Self {
                Complex::new(v as $t, 0.0)
            }
            fn magnitude(&self) -> f64 {
                self.norm() as f64
            }
        }
    };
}

float_field!(f32);
float_field!(f64);

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    /// Clears denominators row by row and runs integer Bareiss, which keeps
    /// every intermediate an integer minor instead of a reduced fraction.
    fn determinant(rows: Vec<Vec<Self>>) -> Self {
        let mut scale = BigInt::one();
        let mut int_rows = Vec::with_capacity(rows.len());
        for row in rows {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            int_rows.push(
                row.iter()
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect::<Vec<_>>(),
            );
            scale *= lcm;
        }
        BigRational::new(bareiss_integer(int_rows), scale)
    }
}

impl Field for Complex<BigRational> {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_i64(v), BigRational::zero())
    }

    fn magnitude(&self) -> f64 {
        self.re.magnitude().hypot(self.im.magnitude())
    }
}

/// Fraction-free Gaussian elimination. Every division is exact in a field,
/// and for exact fields the intermediates stay equal to minors of the input.
pub fn bareiss<T: Field>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let pivot = if T::EXACT {
            (k..n).find(|&r| !a[r][k].is_zero())
        } else {
            (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .max_by(|&r, &s| a[r][k].magnitude().total_cmp(&a[s][k].magnitude()))
        };
        let Some(p) = pivot else {
            return T::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                row[j] = (row[j].clone() * pivot_row[k].clone()
                    - lead.clone() * pivot_row[j].clone())
                    / prev.clone();
            }
            row[k] = T::zero();
        }
        prev = pivot_row[k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Bareiss over the integers; divisions are exact by Sylvester's identity.
pub fn bareiss_integer(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                // (row * pivot) / prev without the cross term
                for j in k + 1..n {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * &pivot_row[k] / &prev;
                    }
                }
                continue;
            }
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                row[j] = (&row[j] * &pivot_row[k] - &lead * &pivot_row[j]) / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Integer to rational shorthand used throughout the crate and its tests.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_i64(n)
}

/// `n / d` as an exact rational. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn gaussian_to_c64(z: &Complex<BigRational>) -> Complex<f64> {
    Complex::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}
