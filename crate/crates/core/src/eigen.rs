//! Eigenpair classes in dimension two and regularity tests.
//!
//! Every eigenpair class `(lambda, x)` with `x` up to scaling lies on a root
//! of `x2 (Ax^{m-1})_1 - x1 (Ax^{m-1})_2`, a binary form of degree `m`.
//! Directions with `x^T x != 0` give normalized E-eigenpairs; the two
//! isotropic directions `(1, +-i)` give deficit classes.

use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::resultant::{sylvester_resultant, BinaryForm, Form, HomogeneousSystem};
use crate::roots::{complex_coeff_roots, simple_roots};
use crate::scalar::{gaussian_to_c64, rat, rational_to_f64};
use crate::{GaussianPoly, GaussianRational, Hypermatrix, RatPoly, Rational, Tensor};
use num_complex::{Complex, Complex64};
use num_traits::Zero;

/// Tolerance below which an imaginary part counts as zero for Z-eigenpairs.
pub const REAL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigenKind {
    /// `x^T x = 1`
    Normalized,
    /// `x^T x = 0`
    Deficit,
}

impl EigenKind {
    pub fn name(self) -> &'static str {
        match self {
            EigenKind::Normalized => "normalized",
            EigenKind::Deficit => "deficit",
        }
    }
}

/// Either a finite list or the signal that every direction is an
/// eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenStructure<T> {
    Finite(Vec<T>),
    InfinitelyMany,
}

impl<T> EigenStructure<T> {
    pub fn finite(&self) -> Option<&[T]> {
        match self {
            EigenStructure::Finite(v) => Some(v),
            EigenStructure::InfinitelyMany => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, EigenStructure::InfinitelyMany)
    }
}

/// Projective root of the direction form.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction {
    /// `(1, t)` or `(0, 1)`
    pub x: [Complex64; 2],
    pub multiplicity: usize,
    /// exact coordinates when the root is rational or isotropic
    pub exact: Option<[GaussianRational; 2]>,
}

impl Direction {
    pub fn is_isotropic(&self) -> bool {
        match &self.exact {
            Some([a, b]) => (a.clone() * a.clone() + b.clone() * b.clone()).is_zero(),
            None => false,
        }
    }
}

/// One eigenpair class.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    /// for odd `m` the representative with nonnegative real part; the class
    /// also contains `(-lambda, -x)`
    pub lambda: Complex64,
    pub x: [Complex64; 2],
    pub kind: EigenKind,
    /// multiplicity of the direction as a root of the direction form
    pub multiplicity: usize,
    pub exact_direction: Option<[GaussianRational; 2]>,
    /// exact eigenvalue, available for deficit classes
    pub exact_lambda: Option<GaussianRational>,
}

impl Eigenpair {
    /// `max(|Ax^{m-1} - lambda x|, |x^T x - target|)` with target 1 for
    /// normalized and 0 for deficit classes.
    pub fn residual(&self, a: &Tensor) -> f64 {
        let ac = to_c64(a);
        let y = ac.eval_map(&self.x).expect("dimension two");
        let eq = (0..2)
            .map(|i| (y[i] - self.lambda * self.x[i]).norm())
            .fold(0.0, f64::max);
        let target = match self.kind {
            EigenKind::Normalized => Complex64::new(1.0, 0.0),
            EigenKind::Deficit => Complex64::new(0.0, 0.0),
        };
        let xx = self.x[0] * self.x[0] + self.x[1] * self.x[1];
        eq.max((xx - target).norm())
    }

    pub fn is_real(&self) -> bool {
        self.lambda.im.abs() <= REAL_TOL && self.x.iter().all(|v| v.im.abs() <= REAL_TOL)
    }
}

fn to_c64(a: &Tensor) -> Hypermatrix<Complex64> {
    a.map(|v| Complex64::new(crate::scalar::rational_to_f64(v), 0.0))
}

fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

fn require_dim2(a: &Tensor) -> Result<()> {
    if a.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "eigenpair enumeration needs dimension 2, got {}",
            a.dim()
        )));
    }
    Ok(())
}

/// Coefficients of `x2 F1 - x1 F2` from `x1^m` down to `x2^m`.
pub fn direction_form(a: &Tensor) -> Result<BinaryForm<Rational>> {
    require_dim2(a)?;
    Ok(BinaryForm::from_scalars(a.binary_slices()?.direction_coeffs()))
}

/// Roots of the direction form with multiplicities; they sum to `m`.
pub fn eigen_directions_n2(a: &Tensor) -> Result<EigenStructure<Direction>> {
    let form = direction_form(a)?;
    let m = form.degree();
    // g(t) = G(1, t)
    let mut g = RatPoly::new(form.coeffs().iter().map(|c| c.coeff(0)).collect());
    if g.is_zero() {
        return Ok(EigenStructure::InfinitelyMany);
    }
    let one = || gaussian(rat(1), rat(0));
    let mut out = Vec::new();
    let deg = g.degree().finite().expect("nonzero");
    if deg < m {
        out.push(Direction {
            x: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            multiplicity: m - deg,
            exact: Some([gaussian(rat(0), rat(0)), one()]),
        });
    }
    let iso = RatPoly::new(vec![rat(1), rat(0), rat(1)]);
    let mut iso_mult = 0;
    while let Some(q) = g.div_exact(&iso) {
        g = q;
        iso_mult += 1;
    }
    if iso_mult > 0 {
        for s in [1, -1] {
            out.push(Direction {
                x: [Complex64::new(1.0, 0.0), Complex64::new(0.0, s as f64)],
                multiplicity: iso_mult,
                exact: Some([one(), gaussian(rat(0), rat(s))]),
            });
        }
    }
    for (factor, mult) in g.square_free_factors() {
        for t in simple_roots(&factor) {
            let exact = rational_root(&factor, t).map(|q| [one(), gaussian(q, rat(0))]);
            let t = exact.as_ref().map_or(t, |e| gaussian_to_c64(&e[1]));
            out.push(Direction {
                x: [Complex64::new(1.0, 0.0), t],
                multiplicity: mult,
                exact,
            });
        }
    }
    Ok(EigenStructure::Finite(out))
}

/// The rational number that `approx` rounds to, when it is an exact root of
/// `f`. A rational root `p/q` of an integer polynomial has `q` dividing the
/// leading coefficient, so rounding `approx * lead` recovers `p * lead / q`.
fn rational_root(f: &RatPoly, approx: Complex64) -> Option<Rational> {
    if approx.im.abs() > 1e-6 * approx.norm().max(1.0) {
        return None;
    }
    let lcm = f
        .coeffs()
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let lead = (f.leading() * Rational::from_integer(lcm)).to_integer();
    let lead_f = num_traits::ToPrimitive::to_f64(&lead)?;
    let scaled = (approx.re * lead_f).round();
    if !scaled.is_finite() || scaled.abs() > 2f64.powi(52) {
        return None;
    }
    let q = Rational::new(num_bigint::BigInt::from(scaled as i64), lead);
    // another rational root can sit on the same grid point
    let close = (rational_to_f64(&q) - approx.re).abs() <= 1e-8 * approx.norm().max(1.0);
    (close && f.eval(&q).is_zero()).then_some(q)
}

/// One eigenpair class per direction.
pub fn eigenpairs_n2(a: &Tensor) -> Result<EigenStructure<Eigenpair>> {
    let dirs = match eigen_directions_n2(a)? {
        EigenStructure::InfinitelyMany => return Ok(EigenStructure::InfinitelyMany),
        EigenStructure::Finite(d) => d,
    };
    let m = a.order();
    let ac = to_c64(a);
    let ag = a.to_gaussian();
    let mut out = Vec::with_capacity(dirs.len());
    for d in dirs {
        if d.is_isotropic() {
            let exact = d.exact.clone().expect("isotropic directions are exact");
            // first coordinate is 1, so lambda = F1(x)
            let lambda = ag.eval_map(&exact)?[0].clone();
            out.push(Eigenpair {
                lambda: gaussian_to_c64(&lambda),
                x: d.x,
                kind: EigenKind::Deficit,
                multiplicity: d.multiplicity,
                exact_direction: Some(exact),
                exact_lambda: Some(lambda),
            });
            continue;
        }
        let norm = (d.x[0] * d.x[0] + d.x[1] * d.x[1]).sqrt();
        let mut x = [d.x[0] / norm, d.x[1] / norm];
        let k = if x[0].norm() >= x[1].norm() { 0 } else { 1 };
        let y = ac.eval_map(&x)?;
        let mut lambda = y[k] / x[k];
        if m % 2 == 1 && (lambda.re < 0.0 || (lambda.re == 0.0 && lambda.im < 0.0)) {
            lambda = -lambda;
            x = [-x[0], -x[1]];
        }
        out.push(Eigenpair {
            lambda,
            x,
            kind: EigenKind::Normalized,
            multiplicity: d.multiplicity,
            exact_direction: d.exact,
            exact_lambda: None,
        });
    }
    Ok(EigenStructure::Finite(out))
}

/// Normalized classes with real `lambda` and real `x`.
pub fn z_eigenpairs(a: &Tensor) -> Result<EigenStructure<Eigenpair>> {
    Ok(match eigenpairs_n2(a)? {
        EigenStructure::InfinitelyMany => EigenStructure::InfinitelyMany,
        EigenStructure::Finite(v) => EigenStructure::Finite(
            v.into_iter()
                .filter(|p| p.kind == EigenKind::Normalized && p.is_real())
                .map(|mut p| {
                    p.lambda.im = 0.0;
                    p.x.iter_mut().for_each(|v| v.im = 0.0);
                    p
                })
                .collect(),
        ),
    })
}

/// Outcome of the regularity test.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub regular: bool,
    /// exact nonzero `x` with `Ax^{m-1} = 0` and `x^T x = 0`
    pub witness: Option<Vec<GaussianRational>>,
    /// approximate witness when no exact one was found
    pub numeric_witness: Option<Vec<Complex64>>,
    /// `Delta_i`: the resultant of `x^T x` with all components but the `i`-th
    pub deltas: Vec<Rational>,
}

/// `x^T x` as a form.
fn quadric(n: usize) -> Form<Rational> {
    (1..n).fold(Form::pure_power(n, 0, 2), |acc, i| acc.add(&Form::pure_power(n, i, 2)))
}

fn deltas(a: &Tensor) -> Result<Vec<Rational>> {
    let n = a.dim();
    let forms = a.forms();
    (0..n)
        .map(|i| {
            let mut sys: Vec<Form<Rational>> = forms
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, f)| f.clone())
                .collect();
            sys.push(quadric(n));
            HomogeneousSystem::new(sys)?.resultant()
        })
        .collect()
}

/// Decides whether `Ax^{m-1} = 0` and `x^T x = 0` share a nonzero root.
///
/// Dimension two checks `(1, +-i)` exactly. Dimension three computes the
/// `Delta_i` and, when all vanish, intersects the components along the
/// rational parametrization `(1 - t^2, i (1 + t^2), 2t)` of the conic.
pub fn is_regular(a: &Tensor) -> Result<RegularityReport> {
    match a.dim() {
        1 => Ok(RegularityReport {
            regular: true,
            witness: None,
            numeric_witness: None,
            deltas: vec![rat(1)],
        }),
        2 => regular_dim2(a),
        3 => regular_dim3(a),
        n => Err(Error::Unsupported(format!(
            "regularity test supports n <= 3, got {n}"
        ))),
    }
}

fn regular_dim2(a: &Tensor) -> Result<RegularityReport> {
    let ag = a.to_gaussian();
    let mut witness = None;
    for s in [1, -1] {
        let x = vec![gaussian(rat(1), rat(0)), gaussian(rat(0), rat(s))];
        if ag.eval_map(&x)?.iter().all(Zero::is_zero) {
            witness = Some(x);
            break;
        }
    }
    // with two variables each Delta_i is a binary resultant
    let s = a.binary_slices()?;
    let q = BinaryForm::from_scalars(vec![rat(1), rat(0), rat(1)]);
    let ds = [s.c, s.b]
        .into_iter()
        .map(|coeffs| Ok(sylvester_resultant(&BinaryForm::from_scalars(coeffs), &q)?.coeff(0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularityReport {
        regular: witness.is_none(),
        witness,
        numeric_witness: None,
        deltas: ds,
    })
}

fn regular_dim3(a: &Tensor) -> Result<RegularityReport> {
    let ds = deltas(a)?;
    if ds.iter().any(|d| !d.is_zero()) {
        return Ok(RegularityReport {
            regular: true,
            witness: None,
            numeric_witness: None,
            deltas: ds,
        });
    }
    let ag = a.to_gaussian();
    let i = gaussian(rat(0), rat(1));
    let at_infinity = vec![gaussian(rat(-1), rat(0)), i.clone(), gaussian(rat(0), rat(0))];
    if ag.eval_map(&at_infinity)?.iter().all(Zero::is_zero) {
        return Ok(RegularityReport {
            regular: false,
            witness: Some(at_infinity),
            numeric_witness: None,
            deltas: ds,
        });
    }
    // coordinates of the conic as polynomials in t
    let c = |v: &[(i64, i64)]| -> GaussianPoly {
        Poly::new(v.iter().map(|&(re, im)| gaussian(rat(re), rat(im))).collect())
    };
    let curve = [c(&[(1, 0), (0, 0), (-1, 0)]), c(&[(0, 1), (0, 0), (0, 1)]), c(&[(0, 0), (2, 0)])];
    let mut g = GaussianPoly::zero();
    for f in a.forms() {
        let mut acc = GaussianPoly::zero();
        for (exps, coeff) in f.terms() {
            let mut term = GaussianPoly::constant(gaussian(coeff.clone(), rat(0)));
            for (var, &k) in exps.iter().enumerate() {
                term = &term * &curve[var].pow(k);
            }
            acc = &acc + &term;
        }
        g = g.gcd(&acc);
    }
    let point = |t: &GaussianRational| -> Vec<GaussianRational> { curve.iter().map(|p| p.eval(t)).collect() };
    match g.degree() {
        Degree::NegInfinity => Ok(RegularityReport {
            regular: false,
            witness: Some(point(&gaussian(rat(0), rat(0)))),
            numeric_witness: None,
            deltas: ds,
        }),
        Degree::Finite(0) => Ok(RegularityReport {
            regular: true,
            witness: None,
            numeric_witness: None,
            deltas: ds,
        }),
        Degree::Finite(1) => {
            let t = -g.coeff(0) / g.coeff(1);
            Ok(RegularityReport {
                regular: false,
                witness: Some(point(&t)),
                numeric_witness: None,
                deltas: ds,
            })
        }
        Degree::Finite(_) => {
            let sf = g.div_exact(&g.gcd(&g.derivative())).expect("gcd divides");
            let coeffs: Vec<Complex64> = sf.coeffs().iter().map(gaussian_to_c64).collect();
            let t = complex_coeff_roots(&coeffs)[0];
            let x: Vec<Complex64> = curve
                .iter()
                .map(|p| {
                    p.coeffs()
                        .iter()
                        .rev()
                        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + gaussian_to_c64(c))
                })
                .collect();
            Ok(RegularityReport {
                regular: false,
                witness: None,
                numeric_witness: Some(x),
                deltas: ds,
            })
        }
    }
}

/// `P_m^2 + Q_m^2` and whether it vanishes, i.e. whether a deficit class
/// exists.
pub fn deficit_indicator(a: &Tensor) -> Result<(Rational, bool)> {
    require_dim2(a)?;
    let v = a.binary_slices()?.deficit_value();
    let zero = v.is_zero();
    Ok((v, zero))
}

/// Multiset of eigenvalues predicted as roots of `psi`: each normalized
/// class contributes its `lambda` (and `-lambda` for odd `m`) with its
/// direction multiplicity.
pub fn predicted_roots(a: &Tensor, pairs: &[Eigenpair]) -> Vec<Complex64> {
    let mut out = Vec::new();
    for p in pairs.iter().filter(|p| p.kind == EigenKind::Normalized) {
        for _ in 0..p.multiplicity {
            out.push(p.lambda);
            if a.order() % 2 == 1 {
                out.push(-p.lambda);
            }
        }
    }
    out
}

/// Greedy matching of two multisets of complex numbers within `tol`.
pub fn multisets_match(lhs: &[Complex64], rhs: &[Complex64], tol: f64) -> bool {
    if lhs.len() != rhs.len() {
        return false;
    }
    let mut used = vec![false; rhs.len()];
    'outer: for l in lhs {
        let mut best: Option<(usize, f64)> = None;
        for (j, r) in rhs.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (l - r).norm();
            if d <= tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, _)) => {
                used[j] = true;
                continue 'outer;
            }
            None => return false,
        }
    }
    true
}
