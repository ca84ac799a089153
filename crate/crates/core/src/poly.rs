//! Dense univariate polynomials over a [`Field`].

use crate::scalar::Field;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `coeffs[j]` is the coefficient of `x^j`; the highest stored coefficient
/// is nonzero, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// Builds `c * prod (x - r)` for the given roots.
    pub fn from_roots(c: T, roots: &[T]) -> Self {
        roots.iter().fold(Self::constant(c), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), T::one()])
        })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    /// Index of the lowest nonzero coefficient, `None` for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.clone() * T::from_i64(j as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces `x` by `x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); (self.coeffs.len() - 1) * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// True when every odd-power coefficient is zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Euclidean division. Returns `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree().finite()?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c.clone() / lead.clone()).collect())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = c * prod f_i^i` with the
    /// `f_i` monic, square-free and pairwise coprime. Returns `(f_i, i)`
    /// for the nonconstant factors. Requires characteristic zero.
    pub fn square_free_factors(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() <= Degree::Finite(0) {
            return out;
        }
        let d = self.derivative();
        let mut a = self.gcd(&d);
        let mut b = self.div_exact(&a).expect("gcd divides");
        let mut c = d.div_exact(&a).expect("gcd divides");
        let mut i = 1;
        loop {
            let c_minus = &c - &b.derivative();
            if b.degree() == Degree::Finite(0) {
                break;
            }
            a = b.gcd(&c_minus);
            if a.degree() > Degree::Finite(0) {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = c_minus.div_exact(&a).expect("gcd divides");
            i += 1;
        }
        out
    }

    /// Newton-form interpolation through `(nodes[i], values[i])`. Nodes must
    /// be distinct.
    pub fn interpolate(nodes: &[T], values: &[T]) -> Self {
        assert_eq!(nodes.len(), values.len(), "one value per node");
        let n = nodes.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (dd[i].clone() - dd[i - 1].clone())
                    / (nodes[i].clone() - nodes[i - level].clone());
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            let shifted = &acc * &Self::new(vec![-nodes[i].clone(), T::one()]);
            acc = &shifted + &Self::constant(dd[i].clone());
        }
        acc
    }
}

/// The interpolation nodes `0, 1, -1, 2, -2, ...`.
pub fn interpolation_nodes<T: Field>(count: usize) -> Vec<T> {
    (0..count as i64)
        .map(|k| {
            let mag = (k + 1) / 2;
            T::from_i64(if k % 2 == 1 { mag } else { -mag })
        })
        .collect()
}

impl<T: Field> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<T: Field> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<T: Field> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Field> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Field> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Field> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Field> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl<T: Field> One for Poly<T> {
    fn one() -> Self {
        Poly::one()
    }
}

impl Poly<BigRational> {
    /// Coefficients in ascending order as `p/q` strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn to_gaussian(&self) -> Poly<Complex<BigRational>> {
        self.map(|c| Complex::new(c.clone(), BigRational::zero()))
    }

    /// `max |c_j|` as a float, for residual scaling.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(crate::scalar::rational_to_f64)
            .fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl fmt::Display for Poly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = j == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match j {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::RatPoly;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        Poly::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn double_roots_of_diagonal_quartic() {
        let q = p(&[1, -6, 13, -12, 4]);
        assert_eq!(q.eval(&rat(1)), rat(0));
        assert_eq!(q.eval(&ratio(1, 2)), rat(0));
        assert_eq!(
            q,
            Poly::from_roots(rat(4), &[rat(1), rat(1), ratio(1, 2), ratio(1, 2)])
        );
    }

    #[test]
    fn zero_polynomial_degree_is_negative_infinity() {
        assert_eq!(RatPoly::zero().degree(), Degree::NegInfinity);
        assert_eq!(p(&[0, 0, 0]).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p(&[5]).degree(), Degree::Finite(0));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        assert!(a.div_rem(&RatPoly::zero()).is_none());
    }

    #[test]
    fn square_free_split_of_sextic() {
        // -2(x^2-1)^2(x^2-1/2)
        let f = &p(&[-1, 0, 1]).pow(2) * &Poly::new(vec![ratio(-1, 2), rat(0), rat(1)]);
        let f = f.scale(&rat(-2));
        let parts = f.square_free_factors();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (Poly::new(vec![ratio(-1, 2), rat(0), rat(1)]), 1));
        assert_eq!(parts[1], (p(&[-1, 0, 1]), 2));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -2, 0, 7]);
        let nodes = interpolation_nodes::<BigRational>(6);
        let vals: Vec<_> = nodes.iter().map(|x| f.eval(x)).collect();
        assert_eq!(Poly::interpolate(&nodes, &vals), f);
        assert_eq!(
            nodes,
            vec![rat(0), rat(1), rat(-1), rat(2), rat(-2), rat(3)]
        );
    }

    #[test]
    fn display_uses_lambda() {
        assert_eq!(p(&[1, -6, 13, -12, 4]).to_string(), "4λ^4 - 12λ^3 + 13λ^2 - 6λ + 1");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-9i64..=9, 1i64..=5), 0..6)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn euclidean_division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn square_free_product_reconstructs(a in arb_poly(), b in arb_poly()) {
            let f = &(&a * &a) * &b;
            prop_assume!(f.degree() > Degree::Finite(0));
            let rebuilt = f
                .square_free_factors()
                .iter()
                .fold(RatPoly::constant(f.leading()), |acc, (g, k)| &acc * &g.pow(*k as u32));
            prop_assert_eq!(rebuilt, f);
        }
    }
}
