//! E-characteristic polynomials.
//!
//! For even `m` the eigen-system is `Ax^{m-1} = lambda (x^T x)^{(m-2)/2} x`,
//! for odd `m` it is `Ax^{m-1} = lambda x0^{m-2} x` together with
//! `x^T x = x0^2`; `psi_A` is the resultant of that system in `x` (and `x0`).
//! In dimension two there are three independent constructions: a direct
//! Sylvester determinant, the compressed matrices built from slice
//! coefficients, and the Macaulay resultant evaluated pointwise in `lambda`.

use crate::eigen;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{interpolation_nodes, Degree, Poly};
use crate::resultant::{sylvester_matrix, BinaryForm, Form, HomogeneousSystem};
use crate::scalar::rat;
use crate::tensor::SliceCoeffs;
use crate::{RatMatrix, RatPoly, Rational, Tensor};
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Largest dimension accepted by the Macaulay route; the order is limited
/// only by the Macaulay matrix size cap.
pub const MACAULAY_MAX_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    SylvesterDirect,
    M1Det,
    M2Det,
    Macaulay,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::SylvesterDirect => "sylvester-direct",
            Route::M1Det => "M1-det",
            Route::M2Det => "M2-det",
            Route::Macaulay => "macaulay",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which construction the caller asks for; `Det` means the compressed
/// slice-coefficient matrix appropriate to the parity of `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RouteRequest {
    #[default]
    Auto,
    Sylvester,
    Det,
    Macaulay,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EcharResult {
    pub psi: RatPoly,
    pub route: Route,
    pub order: usize,
    pub dim: usize,
    /// `h(m, n)`; for `m = 2` the matrix size `n`
    pub h_bound: usize,
    /// `Res(Ax^{m-1})`, squared for odd `m`
    pub a0_predicted: Rational,
    /// closed form of the top generic coefficient, dimension two only
    pub leading_predicted: Option<Rational>,
}

impl EcharResult {
    fn assemble(a: &Tensor, psi: RatPoly, route: Route) -> Result<Self> {
        let (m, n) = (a.order(), a.dim());
        if m % 2 == 1 && !psi.is_even() {
            return Err(Error::Internal("odd-order polynomial has an odd power of lambda".into()));
        }
        Ok(Self {
            psi,
            route,
            order: m,
            dim: n,
            h_bound: generic_h(m, n),
            a0_predicted: a0_predicted(a)?,
            leading_predicted: if n == 2 { Some(leading_predicted(a)?) } else { None },
        })
    }

    /// `h` for even `m`, `2h` for odd `m`.
    pub fn generic_degree(&self) -> usize {
        if self.order % 2 == 0 {
            self.h_bound
        } else {
            2 * self.h_bound
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.psi.is_zero()
    }

    pub fn constant_term(&self) -> Rational {
        self.psi.coeff(0)
    }

    /// Coefficient of `lambda^{generic_degree}`.
    pub fn leading_coefficient(&self) -> Rational {
        self.psi.coeff(self.generic_degree())
    }

    pub fn a0_matches(&self) -> bool {
        self.constant_term() == self.a0_predicted
    }

    pub fn leading_matches(&self) -> Option<bool> {
        self.leading_predicted
            .as_ref()
            .map(|l| *l == self.leading_coefficient())
    }

    pub fn within_degree_bound(&self) -> bool {
        self.psi.degree() <= Degree::Finite(self.generic_degree())
    }
}

/// `h(m, n) = ((m-1)^n - 1) / (m - 2)`.
pub fn h_bound(m: usize, n: usize) -> Result<usize> {
    if m < 3 {
        return Err(Error::Unsupported(format!("h(m, n) needs m >= 3, got m = {m}")));
    }
    if n == 0 {
        return Err(Error::InvalidShape { order: m, dim: n });
    }
    Ok(((m - 1).pow(n as u32) - 1) / (m - 2))
}

/// `h(m, n)` extended to `m = 2` by its limit `n`.
fn generic_h(m: usize, n: usize) -> usize {
    if m == 2 {
        n
    } else {
        h_bound(m, n).expect("m >= 3")
    }
}

fn require_dim2(a: &Tensor) -> Result<SliceCoeffs<Rational>> {
    if a.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "this construction needs dimension 2, got {}",
            a.dim()
        )));
    }
    a.binary_slices()
}

fn binom(n: usize, k: usize) -> Rational {
    rat(binomial(n as i64, k as i64))
}

fn constants(v: &[Rational]) -> Vec<RatPoly> {
    v.iter().cloned().map(Poly::constant).collect()
}

/// `c - t * lambda^power`.
fn shifted(c: &Rational, t: Rational, power: usize) -> RatPoly {
    &Poly::constant(c.clone()) - &Poly::monomial(t, power)
}

/// The pair `(Ax^{m-1})_i - lambda (x1^2 + x2^2)^{(m-2)/2} x_i`, even `m`.
pub fn even_pair(a: &Tensor) -> Result<(BinaryForm<Rational>, BinaryForm<Rational>)> {
    let s = require_dim2(a)?;
    let m = a.order();
    if m % 2 == 1 {
        return Err(Error::Unsupported("even_pair needs even order".into()));
    }
    let k = (m - 2) / 2;
    let mut h1 = constants(&s.b);
    let mut h2 = constants(&s.c);
    for j in 0..=k {
        h1[2 * j] = shifted(&s.b[2 * j], binom(k, j), 1);
        h2[2 * j + 1] = shifted(&s.c[2 * j + 1], binom(k, j), 1);
    }
    Ok((BinaryForm::new(h1), BinaryForm::new(h2)))
}

/// Direct Sylvester resultant of the even-order pair.
pub fn echar_even_n2(a: &Tensor) -> Result<EcharResult> {
    let (h1, h2) = even_pair(a)?;
    let psi = sylvester_matrix(&h1, &h2)?.det();
    EcharResult::assemble(a, psi, Route::SylvesterDirect)
}

/// The `(2m-2) x (2m-2)` matrix of slice coefficients whose determinant is
/// `psi_A` for regular even-order `A`.
pub fn m1_matrix(a: &Tensor) -> Result<RatMatrix> {
    let s = require_dim2(a)?;
    let m = a.order();
    if m % 2 == 1 {
        return Err(Error::Unsupported("M1 needs even order".into()));
    }
    let k = (m - 2) / 2;
    let size = 2 * m - 2;
    let mut mat = PolyMatrix::zeros(size);
    // b with lambda subtracted at odd 1-based positions
    let mut top = constants(&s.b);
    for j in 0..=k {
        top[2 * j] = shifted(&s.b[2 * j], binom(k, j), 1);
    }
    for r in 0..m - 1 {
        for (t, p) in top.iter().enumerate() {
            mat.set(r, r + t, p.clone());
        }
    }
    // c with lambda subtracted at even 1-based positions, c1 in column m-1
    for t in 0..m {
        let p = if t % 2 == 1 {
            shifted(&s.c[t], binom(k, t / 2), 1)
        } else {
            Poly::constant(s.c[t].clone())
        };
        mat.set(m - 1, m - 2 + t, p);
    }
    let dir = constants(&s.direction_coeffs());
    for r in 0..m - 2 {
        for (t, p) in dir.iter().enumerate() {
            mat.set(m + r, r + t, p.clone());
        }
    }
    Ok(mat)
}

/// `det M1`. Rejects irregular input, for which the identity is not claimed.
pub fn m1_det(a: &Tensor) -> Result<EcharResult> {
    let mat = m1_matrix(a)?;
    if !eigen::is_regular(a)?.regular {
        return Err(Error::Irregular);
    }
    EcharResult::assemble(a, mat.det(), Route::M1Det)
}

/// `det M1` without the regularity gate, for recording discrepancies.
pub fn m1_det_unchecked(a: &Tensor) -> Result<RatPoly> {
    Ok(m1_matrix(a)?.det())
}

/// The pair `G1 = F1 F2 - lambda^2 (x1^2 + x2^2)^{m-2} x1 x2` and
/// `G2 = x2 F1 - x1 F2` for odd `m`.
pub fn odd_pair(a: &Tensor) -> Result<(BinaryForm<Rational>, BinaryForm<Rational>)> {
    let s = require_dim2(a)?;
    let m = a.order();
    if m % 2 == 0 {
        return Err(Error::Unsupported("odd_pair needs odd order".into()));
    }
    let mut g1 = constants(&s.e);
    for j in 0..=m - 2 {
        g1[2 * j + 1] = shifted(&s.e[2 * j + 1], binom(m - 2, j), 2);
    }
    Ok((
        BinaryForm::new(g1),
        BinaryForm::from_scalars(s.direction_coeffs()),
    ))
}

/// Sylvester matrix of the odd pair, `(3m-2) x (3m-2)`. Its determinant is
/// `b_m c_1 psi_A`.
pub fn odd_sylvester_matrix(a: &Tensor) -> Result<RatMatrix> {
    let (g1, g2) = odd_pair(a)?;
    sylvester_matrix(&g1, &g2)
}

/// The `(3m-4) x (3m-4)` matrix left after eliminating the first and last
/// columns of the odd Sylvester matrix against its `-c_1` and `b_m`
/// entries; `det M2 = det S / (b_m c_1)`.
pub fn m2_matrix(a: &Tensor) -> Result<RatMatrix> {
    let s = require_dim2(a)?;
    let m = a.order();
    let full = odd_sylvester_matrix(a)?;
    let n = full.size();
    let mut rows: Vec<Vec<RatPoly>> = full.rows().to_vec();
    let b1 = Poly::constant(s.b[0].clone());
    let cm = Poly::constant(s.c[m - 1].clone());
    for j in 0..n {
        rows[0][j] = &rows[0][j] + &(&b1 * &rows[m][j]);
        rows[m - 1][j] = &rows[m - 1][j] - &(&cm * &rows[n - 1][j]);
    }
    let kept: Vec<Vec<RatPoly>> = rows
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i != m && *i != n - 1)
        .map(|(_, r)| r[1..n - 1].to_vec())
        .collect();
    Ok(PolyMatrix::new(kept))
}

fn bm_c1(s: &SliceCoeffs<Rational>) -> Rational {
    &s.b[s.order() - 1] * &s.c[0]
}

/// `det M2`; needs `b_m c_1 != 0`.
pub fn m2_det(a: &Tensor) -> Result<EcharResult> {
    let s = require_dim2(a)?;
    if bm_c1(&s).is_zero() {
        return Err(Error::Unsupported("M2 needs b_m c_1 != 0".into()));
    }
    EcharResult::assemble(a, m2_matrix(a)?.det(), Route::M2Det)
}

/// Odd order: Sylvester determinant divided by `b_m c_1`, checked against
/// `det M2`; the Macaulay route when `b_m c_1 = 0`.
pub fn echar_odd_n2(a: &Tensor) -> Result<EcharResult> {
    let s = require_dim2(a)?;
    if a.order() % 2 == 0 {
        return Err(Error::Unsupported("echar_odd_n2 needs odd order".into()));
    }
    let scale = bm_c1(&s);
    if scale.is_zero() {
        return echar_macaulay(a);
    }
    let full = odd_sylvester_matrix(a)?.det();
    let psi = full.scale(&(Rational::one() / scale));
    if psi != m2_matrix(a)?.det() {
        return Err(Error::Internal(
            "reduced Sylvester determinant disagrees with det M2".into(),
        ));
    }
    EcharResult::assemble(a, psi, Route::SylvesterDirect)
}

/// `sum_i x_i^2` in `n` variables.
fn quadric(n: usize) -> Form<Rational> {
    (1..n).fold(Form::pure_power(n, 0, 2), |acc, i| acc.add(&Form::pure_power(n, i, 2)))
}

/// Per-`lambda` system builder: `forms(lambda)` is the eigen-system.
struct LambdaSystem {
    base: Vec<Form<Rational>>,
    shift: Vec<Form<Rational>>,
    extra: Option<Form<Rational>>,
}

impl LambdaSystem {
    fn at(&self, lambda: &Rational) -> Result<HomogeneousSystem<Rational>> {
        let mut forms: Vec<Form<Rational>> = self
            .base
            .iter()
            .zip(&self.shift)
            .map(|(f, g)| f.add(&g.scale(&-lambda.clone())))
            .collect();
        forms.extend(self.extra.clone());
        HomogeneousSystem::new(forms)
    }
}

/// Even `m`: `F_i - lambda (x^T x)^{(m-2)/2} x_i` in `n` variables.
fn even_system(a: &Tensor) -> LambdaSystem {
    let (m, n) = (a.order(), a.dim());
    let k = (m - 2) / 2;
    let q = quadric(n);
    let qk = (0..k).fold(None::<Form<Rational>>, |acc, _| {
        Some(match acc {
            None => q.clone(),
            Some(p) => p.mul(&q),
        })
    });
    let shift = (0..n)
        .map(|i| {
            let xi = Form::pure_power(n, i, 1);
            match &qk {
                None => xi,
                Some(p) => p.mul(&xi),
            }
        })
        .collect();
    LambdaSystem {
        base: a.forms(),
        shift,
        extra: None,
    }
}

/// `F_i - lambda x0^{m-2} x_i` and `x^T x - x0^2`, variables `(x_1..x_n, x0)`.
fn homogenized_system(a: &Tensor) -> LambdaSystem {
    let (m, n) = (a.order(), a.dim());
    let shift = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n + 1];
            e[i] = 1;
            e[n] = (m - 2) as u32;
            Form::new(n + 1, (m - 1) as u32, BTreeMap::from([(e, Rational::one())]))
                .expect("degree m - 1")
        })
        .collect();
    let sphere = quadric(n)
        .extend_vars()
        .add(&Form::pure_power(n + 1, n, 2).scale(&-Rational::one()));
    LambdaSystem {
        base: a.forms().iter().map(Form::extend_vars).collect(),
        shift,
        extra: Some(sphere),
    }
}

fn check_macaulay_size(a: &Tensor) -> Result<()> {
    if a.dim() > MACAULAY_MAX_DIM {
        return Err(Error::SizeLimit(format!(
            "Macaulay route handles n <= {MACAULAY_MAX_DIM}, got n = {}",
            a.dim()
        )));
    }
    Ok(())
}

/// Resultant of the system at each interpolation node, then interpolation.
fn interpolate_resultant(sys: &LambdaSystem, bound: usize) -> Result<RatPoly> {
    let nodes = interpolation_nodes::<Rational>(bound + 1);
    let values = nodes
        .par_iter()
        .map(|l| sys.at(l)?.macaulay_resultant())
        .collect::<Result<Vec<_>>>()?;
    let p = Poly::interpolate(&nodes, &values);
    if p.degree() > Degree::Finite(bound) {
        return Err(Error::Internal("interpolated resultant exceeds its degree bound".into()));
    }
    Ok(p)
}

/// `psi_A` through Macaulay resultants evaluated at `lambda` nodes and
/// interpolated with the bound `2n(m-1)^{n-1}` (odd) or `n(m-1)^{n-1}`
/// (even). Even orders use the system without `x0`.
pub fn echar_macaulay(a: &Tensor) -> Result<EcharResult> {
    check_macaulay_size(a)?;
    let (m, n) = (a.order(), a.dim());
    let base = n * (m - 1).pow(n as u32 - 1);
    let psi = if m % 2 == 0 {
        interpolate_resultant(&even_system(a), base)?
    } else {
        interpolate_resultant(&homogenized_system(a), 2 * base)?
    };
    EcharResult::assemble(a, psi, Route::Macaulay)
}

/// Resultant of `{Ax^{m-1} - lambda x0^{m-2} x, x^T x - x0^2}` for any `m`.
/// For odd `m` this is `psi_A`; for even `m` it is
/// `(-1)^{(m-1)^n} psi_A^2`, since `x0 -> -x0` leaves the system's zero set
/// symmetric.
pub fn homogenized_resultant(a: &Tensor) -> Result<RatPoly> {
    check_macaulay_size(a)?;
    let (m, n) = (a.order(), a.dim());
    let bound = 2 * n * (m - 1).pow(n as u32 - 1);
    interpolate_resultant(&homogenized_system(a), bound)
}

/// `Res(Ax^{m-1})` for even `m`, its square for odd `m`.
pub fn a0_predicted(a: &Tensor) -> Result<Rational> {
    let sys = HomogeneousSystem::new(a.forms())?;
    let r = sys.resultant()?;
    Ok(if a.order() % 2 == 0 { r } else { &r * &r })
}

/// `(P^2 + Q^2)^{(m-2)/2}` for even `m`, `-(P^2 + Q^2)^{m-2}` for odd `m`.
pub fn leading_predicted(a: &Tensor) -> Result<Rational> {
    let s = require_dim2(a)?;
    let m = a.order();
    let v = s.deficit_value();
    let pow = |k: usize| (0..k).fold(Rational::one(), |acc, _| acc * &v);
    Ok(if m % 2 == 0 { pow((m - 2) / 2) } else { -pow(m - 2) })
}

/// Dispatches to the requested construction.
pub fn echar_with(a: &Tensor, request: RouteRequest) -> Result<EcharResult> {
    let odd = a.order() % 2 == 1;
    match (a.dim(), request) {
        (2, RouteRequest::Auto | RouteRequest::Sylvester) if odd => echar_odd_n2(a),
        (2, RouteRequest::Auto | RouteRequest::Sylvester) => echar_even_n2(a),
        (2, RouteRequest::Det) if odd => m2_det(a),
        (2, RouteRequest::Det) => m1_det(a),
        (_, RouteRequest::Auto | RouteRequest::Macaulay) => echar_macaulay(a),
        (n, r) => Err(Error::Unsupported(format!(
            "route {r:?} is only available in dimension 2, got {n}"
        ))),
    }
}

pub fn echar(a: &Tensor) -> Result<EcharResult> {
    echar_with(a, RouteRequest::Auto)
}
