//! Sylvester resultants of binary forms and Macaulay resultants of square
//! homogeneous systems, both normalized so `Res(x1^d1, ..., xk^dk) = 1`.

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::scalar::Field;
use std::collections::{BTreeMap, HashMap};

/// Largest Macaulay matrix the resultant code will build.
pub const MACAULAY_MAX_SIZE: usize = 500;
/// Largest number of variables the Macaulay construction accepts.
pub const MACAULAY_MAX_VARS: usize = 4;

/// Binary form `sum_i coeffs[i] x1^{d-i} x2^i` whose coefficients are
/// polynomials in an auxiliary parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<T> {
    coeffs: Vec<Poly<T>>,
}

impl<T: Field> BinaryForm<T> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Poly<T>>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_scalars(coeffs: Vec<T>) -> Self {
        Self::new(coeffs.into_iter().map(Poly::constant).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, t: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(t)).collect())
    }

    /// Coefficients fixed at a value of the parameter.
    pub fn at(&self, lambda: &T) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| Poly::constant(c.eval(lambda)))
                .collect(),
        )
    }

    /// Value at `(x1, x2)` as a polynomial in the parameter.
    pub fn eval(&self, x1: &T, x2: &T) -> Poly<T> {
        let d = self.degree();
        let mut acc = Poly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let w = pow(x1, d - i) * pow(x2, i);
            acc = &acc + &c.scale(&w);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Poly::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "forms of equal degree");
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `F(L x)` for the 2x2 matrix `L`, i.e. `x1 -> l00 x1 + l01 x2`,
    /// `x2 -> l10 x1 + l11 x2`.
    pub fn substitute(&self, l: &[[T; 2]; 2]) -> Self {
        let d = self.degree();
        let row = |r: usize| Self::from_scalars(vec![l[r][0].clone(), l[r][1].clone()]);
        let (u, v) = (row(0), row(1));
        let mut acc = Self::from_scalars(vec![T::zero(); d + 1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = Self::new(vec![c.clone()]);
            for _ in 0..d - i {
                term = term.mul(&u);
            }
            for _ in 0..i {
                term = term.mul(&v);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

fn pow<T: Field>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

/// The `(d+e) x (d+e)` Sylvester matrix: `e` shifted copies of `f`, then `d`
/// shifted copies of `g`.
pub fn sylvester_matrix<T: Field>(f: &BinaryForm<T>, g: &BinaryForm<T>) -> Result<PolyMatrix<T>> {
    let (d, e) = (f.degree(), g.degree());
    if d == 0 || e == 0 {
        return Err(Error::Unsupported(
            "Sylvester resultant needs forms of degree at least 1".into(),
        ));
    }
    let n = d + e;
    let mut m = PolyMatrix::zeros(n);
    for r in 0..e {
        for (j, c) in f.coeffs().iter().enumerate() {
            m.set(r, r + j, c.clone());
        }
    }
    for r in 0..d {
        for (j, c) in g.coeffs().iter().enumerate() {
            m.set(e + r, r + j, c.clone());
        }
    }
    Ok(m)
}

pub fn sylvester_resultant<T: Field>(f: &BinaryForm<T>, g: &BinaryForm<T>) -> Result<Poly<T>> {
    Ok(sylvester_matrix(f, g)?.det())
}

/// Homogeneous form in `nvars` variables with scalar coefficients, keyed by
/// exponent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<T> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Field> Form<T> {
    /// Rejects exponent vectors of the wrong length or total degree; drops
    /// zero coefficients.
    pub fn new(nvars: usize, degree: u32, terms: BTreeMap<Vec<u32>, T>) -> Result<Self> {
        for exps in terms.keys() {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            if exps.iter().sum::<u32>() != degree {
                return Err(Error::Unsupported(format!(
                    "monomial {exps:?} does not have degree {degree}"
                )));
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self {
            nvars,
            degree,
            terms,
        })
    }

    /// `x_var^degree`.
    pub fn pure_power(nvars: usize, var: usize, degree: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = degree;
        Self {
            nvars,
            degree,
            terms: BTreeMap::from([(exps, T::one())]),
        }
    }

    /// `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: Vec<T>) -> Self {
        let n = coeffs.len();
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c)
            })
            .collect();
        Self::new(n, 1, terms).expect("linear terms are well formed")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &T)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, t: &T) -> Self {
        Self {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * t.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Sum of two forms of the same degree and variable count.
    pub fn add(&self, other: &Self) -> Self {
        assert!(self.nvars == other.nvars && self.degree == other.degree);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let slot = terms.entry(k.clone()).or_insert_with(T::zero);
            *slot = slot.clone() + v.clone();
        }
        Self::new(self.nvars, self.degree, terms).expect("same shape")
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u32>, T> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let slot = terms.entry(e).or_insert_with(T::zero);
                *slot = slot.clone() + x.clone() * y.clone();
            }
        }
        Self::new(self.nvars, self.degree + other.degree, terms).expect("same shape")
    }

    /// Adds one extra variable at position `nvars` with exponent zero.
    pub fn extend_vars(&self) -> Self {
        Self {
            nvars: self.nvars + 1,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let mut k = k.clone();
                    k.push(0);
                    (k, v.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let term = e
                .iter()
                .zip(x)
                .fold(c.clone(), |t, (&k, xi)| t * pow(xi, k as usize));
            acc + term
        })
    }

    /// Variables renamed so that `x_j` becomes `x_{perm[j]}`.
    fn permute(&self, perm: &[usize]) -> Self {
        Self {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let mut e = vec![0; self.nvars];
                    for (j, &kj) in k.iter().enumerate() {
                        e[perm[j]] = kj;
                    }
                    (e, v.clone())
                })
                .collect(),
        }
    }

    /// Coefficients as a binary form; `None` unless `nvars == 2`.
    pub fn to_binary(&self) -> Option<BinaryForm<T>> {
        if self.nvars != 2 {
            return None;
        }
        let d = self.degree;
        Some(BinaryForm::from_scalars(
            (0..=d).map(|i| self.coeff(&[d - i, i])).collect(),
        ))
    }
}

/// `k` forms in `k` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousSystem<T> {
    forms: Vec<Form<T>>,
}

impl<T: Field> HomogeneousSystem<T> {
    pub fn new(forms: Vec<Form<T>>) -> Result<Self> {
        let k = forms.len();
        if k == 0 {
            return Err(Error::Unsupported("empty system".into()));
        }
        for f in &forms {
            if f.nvars() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: f.nvars(),
                });
            }
            if f.degree() == 0 {
                return Err(Error::Unsupported("forms must have positive degree".into()));
            }
        }
        Ok(Self { forms })
    }

    pub fn forms(&self) -> &[Form<T>] {
        &self.forms
    }

    pub fn nvars(&self) -> usize {
        self.forms.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.forms.iter().map(Form::degree).collect()
    }

    /// Resultant, via Sylvester for two variables and Macaulay otherwise.
    pub fn resultant(&self) -> Result<T> {
        match self.nvars() {
            1 => Ok(self.forms[0].coeff(&[self.forms[0].degree()])),
            2 => {
                let f = self.forms[0].to_binary().expect("two variables");
                let g = self.forms[1].to_binary().expect("two variables");
                Ok(sylvester_resultant(&f, &g)?.coeff(0))
            }
            _ => self.macaulay_resultant(),
        }
    }

    /// Macaulay's quotient `det M / det M'`. A vanishing denominator minor is
    /// handled by reordering variables and, failing that, by perturbing
    /// `F_i -> F_i + t x_i^{d_i}` and reading off the value at `t = 0`.
    pub fn macaulay_resultant(&self) -> Result<T> {
        self.macaulay_with(true)
    }

    pub(crate) fn macaulay_with(&self, try_orderings: bool) -> Result<T> {
        let k = self.nvars();
        if k > MACAULAY_MAX_VARS {
            return Err(Error::SizeLimit(format!(
                "Macaulay resultant supports at most {MACAULAY_MAX_VARS} variables, got {k}"
            )));
        }
        let layout = MacaulayLayout::new(&self.degrees())?;
        let prod_deg: u64 = self.degrees().iter().map(|&d| d as u64).product();
        let perms = if try_orderings {
            permutations(k)
        } else {
            vec![(0..k).collect()]
        };
        for perm in &perms {
            let sys: Vec<Form<T>> = self.forms.iter().map(|f| f.permute(perm)).collect();
            let (m, minor) = layout.matrices(&sys);
            let den = T::determinant(minor);
            if den.is_zero() {
                continue;
            }
            let value = T::determinant(m) / den;
            // Renaming variables multiplies the resultant by sign^(d1...dk).
            return Ok(if permutation_sign(perm) < 0 && prod_deg % 2 == 1 {
                -value
            } else {
                value
            });
        }
        let (m, minor) = layout.matrices(&self.forms);
        let num = shifted_det(m);
        let den = shifted_det(minor);
        let quot = num
            .div_exact(&den)
            .ok_or_else(|| Error::Internal("perturbed Macaulay quotient is not a polynomial".into()))?;
        Ok(quot.coeff(0))
    }
}

/// `det(A + t I)` as a polynomial in `t`.
fn shifted_det<T: Field>(a: Vec<Vec<T>>) -> Poly<T> {
    let n = a.len();
    let rows = a
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, v)| {
                    if i == j {
                        Poly::new(vec![v, T::one()])
                    } else {
                        Poly::constant(v)
                    }
                })
                .collect()
        })
        .collect();
    if n == 0 {
        return Poly::one();
    }
    PolyMatrix::new(rows).det()
}

struct MacaulayLayout {
    degrees: Vec<u32>,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// form assigned to each row (monomial)
    owner: Vec<usize>,
    /// monomials divisible by at least two `x_i^{d_i}`
    extraneous: Vec<usize>,
}

impl MacaulayLayout {
    fn new(degrees: &[u32]) -> Result<Self> {
        let k = degrees.len();
        let big_d: u32 = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
        let monomials = monomials_of_degree(k, big_d);
        if monomials.len() > MACAULAY_MAX_SIZE {
            return Err(Error::SizeLimit(format!(
                "Macaulay matrix would have size {} (limit {MACAULAY_MAX_SIZE})",
                monomials.len()
            )));
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut owner = Vec::with_capacity(monomials.len());
        let mut extraneous = Vec::new();
        for (r, mono) in monomials.iter().enumerate() {
            let divisible: Vec<usize> = (0..k).filter(|&i| mono[i] >= degrees[i]).collect();
            owner.push(divisible[0]);
            if divisible.len() >= 2 {
                extraneous.push(r);
            }
        }
        Ok(Self {
            degrees: degrees.to_vec(),
            monomials,
            index,
            owner,
            extraneous,
        })
    }

    /// The full Macaulay matrix and its extraneous minor.
    fn matrices<T: Field>(&self, forms: &[Form<T>]) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
        let n = self.monomials.len();
        let mut m = vec![vec![T::zero(); n]; n];
        for (r, mono) in self.monomials.iter().enumerate() {
            let i = self.owner[r];
            let mut shift = mono.clone();
            shift[i] -= self.degrees[i];
            for (exps, c) in forms[i].terms() {
                let target: Vec<u32> = exps.iter().zip(&shift).map(|(a, b)| a + b).collect();
                m[r][self.index[&target]] = c.clone();
            }
        }
        let minor = self
            .extraneous
            .iter()
            .map(|&r| self.extraneous.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        (m, minor)
    }
}

/// All exponent vectors of length `k` summing to `d`, lexicographically
/// descending.
pub fn monomials_of_degree(k: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(k - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, d, &mut Vec::new(), &mut out);
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    // identity first
    out.sort();
    out
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
