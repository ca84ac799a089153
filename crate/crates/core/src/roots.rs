//! Numeric roots of exact polynomials.
//!
//! Multiplicities are decided exactly by a square-free decomposition over
//! the rationals; only the simple roots of each square-free factor are
//! located numerically (Aberth–Ehrlich, then Newton polishing), so repeated
//! roots keep full double precision.

use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::scalar::{gaussian_to_c64, rational_to_f64};
use num_complex::Complex;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

/// Default clustering tolerance for merging numerically coincident roots.
pub const DEFAULT_ROOT_TOL: f64 = 1e-8;

const MAX_ITERATIONS: usize = 500;

/// All complex roots of `p` with multiplicities; the multiplicities sum to
/// the degree. Roots closer than `tol` are merged.
pub fn complex_roots(p: &Poly<BigRational>, tol: f64) -> Result<Vec<(Complex64, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut found: Vec<(Complex64, usize)> = Vec::new();
    for (factor, mult) in p.square_free_factors() {
        for r in simple_roots(&factor) {
            found.push((r, mult));
        }
    }
    Ok(cluster(found, tol))
}

/// Flattens `(root, multiplicity)` pairs into a list with repetition.
pub fn expand_multiplicities(roots: &[(Complex64, usize)]) -> Vec<Complex64> {
    roots
        .iter()
        .flat_map(|(r, k)| std::iter::repeat(*r).take(*k))
        .collect()
}

fn cluster(mut roots: Vec<(Complex64, usize)>, tol: f64) -> Vec<(Complex64, usize)> {
    roots.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    'next: for (r, k) in roots {
        for (c, m) in out.iter_mut() {
            if (*c - r).norm() <= tol {
                let total = (*m + k) as f64;
                *c = (*c * *m as f64 + r * k as f64) / total;
                *m += k;
                continue 'next;
            }
        }
        out.push((r, k));
    }
    out
}

/// Roots of a square-free polynomial, each polished by Newton's method.
pub fn simple_roots(p: &Poly<BigRational>) -> Vec<Complex64> {
    let Some(deg) = p.degree().finite() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    // Monic in exact arithmetic first so large leading coefficients do not
    // lose the lower coefficients to rounding.
    let monic = p.monic();
    let coeffs: Vec<Complex64> = monic
        .coeffs()
        .iter()
        .map(|c| Complex64::new(rational_to_f64(c), 0.0))
        .collect();
    if deg == 1 {
        return vec![-coeffs[0]];
    }
    let mut roots = aberth(&coeffs);
    for r in roots.iter_mut() {
        *r = newton_polish(&coeffs, *r);
    }
    roots
}

/// Roots of a square-free polynomial given by complex double coefficients
/// (ascending powers, nonzero leading coefficient).
pub fn complex_coeff_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    aberth(&monic)
        .into_iter()
        .map(|r| newton_polish(&monic, r))
        .collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    // Fujiwara-style bound on the root moduli of a monic polynomial.
    let radius = (0..n)
        .map(|j| coeffs[j].norm().powf(1.0 / (n - j) as f64))
        .fold(0.0_f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, theta)
        })
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

fn newton_polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..5 {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

/// `|p(z)|`, evaluated exactly at the rational value of the double `z`.
pub fn residual(p: &Poly<BigRational>, z: Complex64) -> f64 {
    let (Some(re), Some(im)) = (BigRational::from_float(z.re), BigRational::from_float(z.im)) else {
        return f64::INFINITY;
    };
    let value = p.to_gaussian().eval(&Complex::new(re, im));
    gaussian_to_c64(&value).norm()
}

/// Degree of `p` as a count, treating the zero polynomial as an error.
pub fn root_count(p: &Poly<BigRational>) -> Result<usize> {
    match p.degree() {
        Degree::NegInfinity => Err(Error::ZeroPolynomial),
        Degree::Finite(d) => Ok(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&v| rat(v)).collect())
    }

    fn assert_roots(found: &[(Complex64, usize)], expected: &[(Complex64, usize)], tol: f64) {
        assert_eq!(found.len(), expected.len(), "{found:?}");
        for (e, k) in expected {
            let hit = found
                .iter()
                .find(|(r, _)| (r - e).norm() < tol)
                .unwrap_or_else(|| panic!("missing root {e} in {found:?}"));
            assert_eq!(hit.1, *k, "multiplicity of {e}");
        }
    }

    #[test]
    fn unit_roots() {
        let r = complex_roots(&p(&[-1, 0, 1]), DEFAULT_ROOT_TOL).unwrap();
        assert_roots(&r, &[(Complex64::new(1.0, 0.0), 1), (Complex64::new(-1.0, 0.0), 1)], 1e-12);
    }

    #[test]
    fn diagonal_quartic_double_roots() {
        let r = complex_roots(&p(&[1, -6, 13, -12, 4]), DEFAULT_ROOT_TOL).unwrap();
        assert_roots(&r, &[(Complex64::new(1.0, 0.0), 2), (Complex64::new(0.5, 0.0), 2)], 1e-10);
    }

    #[test]
    fn diagonal_sextic() {
        let r = complex_roots(&p(&[1, 0, -4, 0, 5, 0, -2]), DEFAULT_ROOT_TOL).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_roots(
            &r,
            &[
                (Complex64::new(1.0, 0.0), 2),
                (Complex64::new(-1.0, 0.0), 2),
                (Complex64::new(s, 0.0), 1),
                (Complex64::new(-s, 0.0), 1),
            ],
            1e-10,
        );
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            complex_roots(&Poly::zero(), DEFAULT_ROOT_TOL),
            Err(Error::ZeroPolynomial)
        ));
        assert!(complex_roots(&p(&[3]), DEFAULT_ROOT_TOL).unwrap().is_empty());
    }

    #[test]
    fn purely_imaginary_pair() {
        let r = complex_roots(&p(&[1, 0, 1]), DEFAULT_ROOT_TOL).unwrap();
        assert_roots(&r, &[(Complex64::new(0.0, 1.0), 1), (Complex64::new(0.0, -1.0), 1)], 1e-12);
    }

    /// Root near 49 of `-x^6/7 + 7x^5 + 5x^3/3 + 4x + 1`. The nearest double
    /// to the root already has `|p| ~ 1e-7`, above `tol (1 + max|coeff|)`.
    #[test]
    fn residual_bound_on_large_root() {
        let f = Poly::new(vec![rat(1), rat(4), rat(0), ratio(5, 3), rat(0), rat(7), ratio(-1, 7)]);
        let roots = complex_roots(&f, DEFAULT_ROOT_TOL).unwrap();
        for (r, _) in &roots {
            assert!(
                residual(&f, *r) <= DEFAULT_ROOT_TOL * (1.0 + f.max_abs_coeff()),
                "residual {} at {}",
                residual(&f, *r),
                r
            );
        }
    }

    /// The attainable statement: each root is within a few units in the last
    /// place of a point where `p` changes by the observed residual.
    #[test]
    fn large_root_is_accurate_to_double_precision() {
        let f = Poly::new(vec![rat(1), rat(4), rat(0), ratio(5, 3), rat(0), rat(7), ratio(-1, 7)]);
        let df = f.derivative();
        for (r, _) in complex_roots(&f, DEFAULT_ROOT_TOL).unwrap() {
            let slope = residual(&df, r);
            let ulp = f64::EPSILON * r.norm().max(1.0);
            assert!(residual(&f, r) <= 4.0 * ulp * slope + 1e-12, "root {r}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
            failure_persistence: None,
            ..ProptestConfig::default()
        })]

        #[test]
        fn multiplicities_sum_to_degree_and_residuals_are_small(
            cs in prop::collection::vec((-9i64..=9, 1i64..=9), 2..9)
        ) {
            let f = Poly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect());
            prop_assume!(f.degree() >= Degree::Finite(1));
            let roots = complex_roots(&f, DEFAULT_ROOT_TOL).unwrap();
            let total: usize = roots.iter().map(|r| r.1).sum();
            prop_assert_eq!(total, root_count(&f).unwrap());
            for (r, _) in &roots {
                prop_assert!(residual(&f, *r) <= DEFAULT_ROOT_TOL * (1.0 + f.max_abs_coeff()),
                    "residual {} at {}", residual(&f, *r), r);
            }
        }
    }
}
