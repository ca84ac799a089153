//! Hypermatrix storage, the map `x -> A x^{m-1}`, orthonormal frame changes
//! and the dimension-two slice coefficients.

use crate::error::{Error, Result};
use crate::resultant::Form;
use crate::scalar::Field;
use crate::{GaussianRational, Rational};
use num_complex::Complex;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Order-`m`, dimension-`n` array. Indices are 0-based; zero entries are
/// not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermatrix<T> {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, T>,
}

impl<T: Field> Hypermatrix<T> {
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        if order < 2 || dim < 1 {
            return Err(Error::InvalidShape { order, dim });
        }
        Ok(Self {
            order,
            dim,
            entries: BTreeMap::new(),
        })
    }

    /// `a_{i...i} = 1` for every `i`, everything else zero.
    pub fn diagonal(order: usize, dim: usize) -> Result<Self> {
        let mut a = Self::zeros(order, dim)?;
        for i in 0..dim {
            a.set(&vec![i; order], T::one())?;
        }
        Ok(a)
    }

    /// Builds from 1-based index tuples, the convention used in documents.
    pub fn from_one_based<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, T)>,
    {
        let mut a = Self::zeros(order, dim)?;
        for (index, v) in entries {
            if index.iter().any(|&i| i == 0 || i > dim) {
                return Err(Error::IndexOutOfRange { index, dim });
            }
            let zero_based: Vec<usize> = index.iter().map(|i| i - 1).collect();
            a.set(&zero_based, v)?;
        }
        Ok(a)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_index(&self, index: &[usize]) -> Result<()> {
        if index.len() != self.order {
            return Err(Error::IndexArity {
                index: index.to_vec(),
                order: self.order,
                got: index.len(),
            });
        }
        if index.iter().any(|&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: index.to_vec(),
                dim: self.dim,
            });
        }
        Ok(())
    }

    pub fn set(&mut self, index: &[usize], v: T) -> Result<()> {
        self.check_index(index)?;
        if v.is_zero() {
            self.entries.remove(index);
        } else {
            self.entries.insert(index.to_vec(), v);
        }
        Ok(())
    }

    pub fn get(&self, index: &[usize]) -> T {
        self.entries.get(index).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero entries, 0-based, in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &T)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Hypermatrix<U> {
        Hypermatrix {
            order: self.order,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, t: &T) -> Self {
        self.map(|v| v.clone() * t.clone())
    }

    /// `(A x^{m-1})_i = sum a_{i i2 ... im} x_{i2} ... x_{im}`.
    pub fn eval_map(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut out = vec![T::zero(); self.dim];
        for (idx, a) in &self.entries {
            let term = idx[1..]
                .iter()
                .fold(a.clone(), |acc, &j| acc * x[j].clone());
            out[idx[0]] = out[idx[0]].clone() + term;
        }
        Ok(out)
    }

    /// The components `F_i = (A x^{m-1})_i` as homogeneous forms of degree
    /// `m - 1` in `n` variables.
    pub fn forms(&self) -> Vec<Form<T>> {
        let mut terms: Vec<BTreeMap<Vec<u32>, T>> = vec![BTreeMap::new(); self.dim];
        for (idx, a) in &self.entries {
            let mut exps = vec![0u32; self.dim];
            for &j in &idx[1..] {
                exps[j] += 1;
            }
            let slot = terms[idx[0]].entry(exps).or_insert_with(T::zero);
            *slot = slot.clone() + a.clone();
        }
        terms
            .into_iter()
            .map(|t| Form::new(self.dim, (self.order - 1) as u32, t).expect("degree matches"))
            .collect()
    }

    /// Entries as a dense row-major vector (last index fastest).
    fn dense(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim.pow(self.order as u32)];
        for (idx, a) in &self.entries {
            let lin = idx.iter().fold(0, |acc, &i| acc * self.dim + i);
            out[lin] = a.clone();
        }
        out
    }

    fn from_dense(order: usize, dim: usize, data: Vec<T>) -> Self {
        let mut entries = BTreeMap::new();
        for (lin, v) in data.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut idx = vec![0; order];
            let mut rest = lin;
            for slot in idx.iter_mut().rev() {
                *slot = rest % dim;
                rest /= dim;
            }
            entries.insert(idx, v);
        }
        Self {
            order,
            dim,
            entries,
        }
    }

    /// Hypermatrix of the same tensor in the frame `e~_i = sum_j C_ij e_j`:
    /// `a~_{i1..im} = sum C_{i1 j1} ... C_{im jm} a_{j1..jm}`.
    pub fn rotate(&self, c: &OrthogonalMatrix<T>) -> Result<Self> {
        if c.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: c.dim(),
            });
        }
        let n = self.dim;
        let mut data = self.dense();
        // Apply C along one mode at a time.
        for mode in 0..self.order {
            let stride = n.pow((self.order - 1 - mode) as u32);
            let block = stride * n;
            let mut next = vec![T::zero(); data.len()];
            for base in (0..data.len()).step_by(block) {
                for inner in 0..stride {
                    for i in 0..n {
                        let mut acc = T::zero();
                        for j in 0..n {
                            let v = &data[base + j * stride + inner];
                            if !v.is_zero() && !c.rows[i][j].is_zero() {
                                acc = acc + c.rows[i][j].clone() * v.clone();
                            }
                        }
                        next[base + i * stride + inner] = acc;
                    }
                }
            }
            data = next;
        }
        Ok(Self::from_dense(self.order, n, data))
    }

    /// Slice sums `b_j`, `c_j` and the derived `d`, `e` for `n = 2`.
    pub fn binary_slices(&self) -> Result<SliceCoeffs<T>> {
        if self.dim != 2 {
            return Err(Error::Unsupported(format!(
                "slice coefficients need dimension 2, got {}",
                self.dim
            )));
        }
        let m = self.order;
        let mut b = vec![T::zero(); m];
        let mut c = vec![T::zero(); m];
        for (idx, a) in &self.entries {
            // number of trailing indices equal to the second coordinate
            let j = idx[1..].iter().filter(|&&i| i == 1).count();
            let target = if idx[0] == 0 { &mut b } else { &mut c };
            target[j] = target[j].clone() + a.clone();
        }
        Ok(SliceCoeffs::from_bc(b, c))
    }
}

impl Hypermatrix<Rational> {
    pub fn to_gaussian(&self) -> Hypermatrix<GaussianRational> {
        self.map(|v| Complex::new(v.clone(), Rational::zero()))
    }
}

/// Slice coefficients of a dimension-two hypermatrix, stored 0-based:
/// `b[j]` is `b_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCoeffs<T> {
    /// sums of `a_{1 i2..im}` grouped by how many trailing indices are 2
    pub b: Vec<T>,
    /// same for `a_{2 i2..im}`
    pub c: Vec<T>,
    /// `d_j = b_j - c_{j+1}` for `j < m`, `d_m = b_m`
    pub d: Vec<T>,
    /// the convolution `e_k = sum_{i+j=k+1} b_i c_j`, `2m - 1` entries
    pub e: Vec<T>,
}

impl<T: Field> SliceCoeffs<T> {
    /// Panics unless `b` and `c` have the same nonzero length.
    pub fn from_bc(b: Vec<T>, c: Vec<T>) -> Self {
        assert!(!b.is_empty() && b.len() == c.len(), "b and c need equal length");
        let m = b.len();
        let mut d: Vec<T> = (0..m - 1).map(|j| b[j].clone() - c[j + 1].clone()).collect();
        d.push(b[m - 1].clone());
        let mut e = vec![T::zero(); 2 * m - 1];
        for (i, bi) in b.iter().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                e[i + j] = e[i + j].clone() + bi.clone() * cj.clone();
            }
        }
        Self { b, c, d, e }
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `P_m` and `Q_m`: signed partial sums of `b` and `c` whose signs cycle
    /// with period four, `P = b1 - c2 - b3 + c4 + ...`,
    /// `Q = c1 + b2 - c3 - b4 + ...`.
    pub fn pq_sums(&self) -> (T, T) {
        let mut p = T::zero();
        let mut q = T::zero();
        for t in 0..self.order() {
            let (p_term, q_term) = if t % 2 == 0 {
                (self.b[t].clone(), self.c[t].clone())
            } else {
                (self.c[t].clone(), self.b[t].clone())
            };
            p = match t % 4 {
                0 | 3 => p + p_term,
                _ => p - p_term,
            };
            q = match t % 4 {
                0 | 1 => q + q_term,
                _ => q - q_term,
            };
        }
        (p, q)
    }

    /// `P_m^2 + Q_m^2`.
    pub fn deficit_value(&self) -> T {
        let (p, q) = self.pq_sums();
        p.clone() * p + q.clone() * q
    }

    /// Coefficients of `x2 (Ax^{m-1})_1 - x1 (Ax^{m-1})_2` from `x1^m` down
    /// to `x2^m`: `(-c_1, d_1, ..., d_{m-1}, b_m)`.
    pub fn direction_coeffs(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.order() + 1);
        out.push(-self.c[0].clone());
        out.extend(self.d.iter().cloned());
        out
    }
}

/// Exactly orthogonal square matrix, `C^T C = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalMatrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Field> OrthogonalMatrix<T> {
    /// Rejects anything that is not square with `C^T C = I` exactly.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotOrthogonal);
        }
        for i in 0..n {
            for j in 0..n {
                let dot = (0..n).fold(T::zero(), |acc, k| {
                    acc + rows[k][i].clone() * rows[k][j].clone()
                });
                let want = if i == j { T::one() } else { T::zero() };
                if dot != want {
                    return Err(Error::NotOrthogonal);
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
                .collect(),
        }
    }

    /// `diag(1, ..., -1, ..., 1)` with the sign flip on `axis`.
    pub fn reflection(n: usize, axis: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows[axis][axis] = -T::one();
        m
    }

    /// Permutation matrix swapping two coordinates.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows.swap(a, b);
        m
    }

    /// Plane rotation built from the Pythagorean triple of `(p, q)`:
    /// cosine `(p^2 - q^2)/(p^2 + q^2)`, sine `2pq/(p^2 + q^2)`.
    /// `(2, 1)` gives `[[3/5, 4/5], [-4/5, 3/5]]`.
    pub fn pythagorean_rotation(p: i64, q: i64) -> Self {
        let h = T::from_i64(p * p + q * q);
        let cos = T::from_i64(p * p - q * q) / h.clone();
        let sin = T::from_i64(2 * p * q) / h;
        Self {
            rows: vec![vec![cos.clone(), sin.clone()], vec![-sin, cos]],
        }
    }

    /// Cayley transform `(I - S)(I + S)^{-1}` of a skew-symmetric `S`; rational
    /// input gives a rational orthogonal matrix. Returns `None` for
    /// non-skew input.
    pub fn cayley(skew: &[Vec<T>]) -> Option<Self> {
        let n = skew.len();
        for i in 0..n {
            if skew[i].len() != n {
                return None;
            }
            for j in 0..n {
                if skew[i][j] != -skew[j][i].clone() {
                    return None;
                }
            }
        }
        let id = Self::identity(n).rows;
        let plus: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| id[i][j].clone() + skew[i][j].clone()).collect())
            .collect();
        let minus: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| id[i][j].clone() - skew[i][j].clone()).collect())
            .collect();
        let inv = invert(plus)?;
        Some(Self {
            rows: mat_mul(&minus, &inv),
        })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn product(&self, other: &Self) -> Self {
        Self {
            rows: mat_mul(&self.rows, &other.rows),
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn determinant(&self) -> T {
        T::determinant(self.rows.clone())
    }
}

fn mat_mul<T: Field>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(T::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

/// Gauss–Jordan inverse; `None` when singular.
fn invert<T: Field>(mut a: Vec<Vec<T>>) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(p, k);
        inv.swap(p, k);
        let piv = a[k][k].clone();
        for j in 0..n {
            a[k][j] = a[k][j].clone() / piv.clone();
            inv[k][j] = inv[k][j].clone() / piv.clone();
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].clone();
            for j in 0..n {
                a[r][j] = a[r][j].clone() - f.clone() * a[k][j].clone();
                inv[r][j] = inv[r][j].clone() - f.clone() * inv[k][j].clone();
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::{RatOrthogonal, Tensor};
    use proptest::prelude::*;

    fn tensor(m: usize, n: usize, entries: &[(&[usize], i64)]) -> Tensor {
        Tensor::from_one_based(m, n, entries.iter().map(|(i, v)| (i.to_vec(), rat(*v)))).unwrap()
    }

    /// The slice example with b = (2, 2, 1), c = (1, 1, 3).
    pub(crate) fn deficit_example() -> Tensor {
        tensor(
            3,
            2,
            &[
                (&[1, 1, 1], 2),
                (&[1, 1, 2], 2),
                (&[1, 2, 2], 1),
                (&[2, 1, 1], 1),
                (&[2, 1, 2], 1),
                (&[2, 2, 2], 3),
            ],
        )
    }

    #[test]
    fn eval_identity_matrix() {
        let a = Tensor::diagonal(2, 2).unwrap();
        assert_eq!(a.eval_map(&[rat(3), rat(4)]).unwrap(), vec![rat(3), rat(4)]);
    }

    #[test]
    fn eval_diagonal_quartic() {
        let a = Tensor::diagonal(4, 2).unwrap();
        assert_eq!(a.eval_map(&[rat(1), rat(1)]).unwrap(), vec![rat(1), rat(1)]);
    }

    #[test]
    fn eval_summation_example() {
        let a = deficit_example();
        assert_eq!(a.eval_map(&[rat(1), rat(1)]).unwrap(), vec![rat(5), rat(5)]);
        assert!(matches!(
            a.eval_map(&[rat(1)]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn gaussian_evaluation() {
        // a111 = 1, a122 = 1 vanishes at (1, i)
        let a = tensor(3, 2, &[(&[1, 1, 1], 1), (&[1, 2, 2], 1)]).to_gaussian();
        let x = [Complex::new(rat(1), rat(0)), Complex::new(rat(0), rat(1))];
        let y = a.eval_map(&x).unwrap();
        assert!(y.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn invalid_construction() {
        assert!(Tensor::zeros(1, 2).is_err());
        assert!(Tensor::zeros(3, 0).is_err());
        assert!(matches!(
            Tensor::from_one_based(3, 2, [(vec![1, 3, 1], rat(1))]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            Tensor::from_one_based(3, 2, [(vec![1, 1], rat(1))]),
            Err(Error::IndexArity { .. })
        ));
    }

    #[test]
    fn rotate_identity_is_noop() {
        let a = deficit_example();
        assert_eq!(a.rotate(&RatOrthogonal::identity(2)).unwrap(), a);
    }

    #[test]
    fn reflection_flips_sign_by_count_of_second_index() {
        let a = deficit_example();
        let r = a.rotate(&RatOrthogonal::reflection(2, 1)).unwrap();
        for (idx, v) in a.entries() {
            let twos = idx.iter().filter(|&&i| i == 1).count();
            let want = if twos % 2 == 0 { v.clone() } else { -v.clone() };
            assert_eq!(r.get(idx), want);
        }
    }

    #[test]
    fn matrix_congruence_by_pythagorean_rotation() {
        let a = tensor(2, 2, &[(&[1, 1], 1), (&[2, 2], 2)]);
        let c = RatOrthogonal::pythagorean_rotation(2, 1);
        assert_eq!(c.rows()[0], vec![ratio(3, 5), ratio(4, 5)]);
        let r = a.rotate(&c).unwrap();
        assert_eq!(r.get(&[0, 0]), ratio(41, 25));
        assert_eq!(r.get(&[0, 1]), ratio(12, 25));
        assert_eq!(r.get(&[1, 0]), ratio(12, 25));
        assert_eq!(r.get(&[1, 1]), ratio(34, 25));
        // the transposed rotation gives C^T A C
        let ct = RatOrthogonal::new(vec![vec![ratio(3, 5), ratio(-4, 5)], vec![ratio(4, 5), ratio(3, 5)]]).unwrap();
        let r = a.rotate(&ct).unwrap();
        assert_eq!(r.get(&[0, 0]), ratio(41, 25));
        assert_eq!(r.get(&[0, 1]), ratio(-12, 25));
        assert_eq!(r.get(&[1, 1]), ratio(34, 25));
    }

    #[test]
    fn non_orthogonal_rejected() {
        assert_eq!(
            RatOrthogonal::new(vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]]),
            Err(Error::NotOrthogonal)
        );
        assert!(RatOrthogonal::new(vec![vec![ratio(3, 5), ratio(4, 5)], vec![ratio(-4, 5), ratio(3, 5)]]).is_ok());
        let a = Tensor::diagonal(3, 3).unwrap();
        assert!(a.rotate(&RatOrthogonal::identity(2)).is_err());
    }

    #[test]
    fn cayley_is_orthogonal() {
        let s = vec![
            vec![rat(0), ratio(1, 2), rat(-2)],
            vec![ratio(-1, 2), rat(0), ratio(1, 3)],
            vec![rat(2), ratio(-1, 3), rat(0)],
        ];
        let q = RatOrthogonal::cayley(&s).unwrap();
        assert!(RatOrthogonal::new(q.rows().to_vec()).is_ok());
        assert!(RatOrthogonal::cayley(&[vec![rat(1)]]).is_none());
    }

    #[test]
    fn slices_of_diagonal_quartic() {
        let s = Tensor::diagonal(4, 2).unwrap().binary_slices().unwrap();
        assert_eq!(s.b, vec![rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(s.c, vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(s.pq_sums(), (rat(2), rat(0)));
    }

    #[test]
    fn slices_count_second_index() {
        let s = tensor(3, 2, &[(&[1, 1, 1], 1), (&[2, 1, 2], 1)]).binary_slices().unwrap();
        assert_eq!(s.b, vec![rat(1), rat(0), rat(0)]);
        assert_eq!(s.c, vec![rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn derived_slice_sequences() {
        let s = deficit_example().binary_slices().unwrap();
        assert_eq!(s.b, vec![rat(2), rat(2), rat(1)]);
        assert_eq!(s.c, vec![rat(1), rat(1), rat(3)]);
        assert_eq!(s.d, vec![rat(1), rat(-1), rat(1)]);
        assert_eq!(s.e, vec![rat(2), rat(4), rat(9), rat(7), rat(3)]);
        assert_eq!(s.pq_sums(), (rat(0), rat(0)));
        let diag3 = Tensor::diagonal(3, 2).unwrap().binary_slices().unwrap();
        assert_eq!(diag3.pq_sums(), (rat(1), rat(-1)));
        assert!(Tensor::diagonal(3, 3).unwrap().binary_slices().is_err());
    }

    pub(crate) fn arb_tensor(m: usize, n: usize) -> impl Strategy<Value = Tensor> {
        prop::collection::vec((-9i64..=9, 1i64..=9), n.pow(m as u32)).prop_map(move |vals| {
            let mut a = Tensor::zeros(m, n).unwrap();
            for (lin, (p, q)) in vals.into_iter().enumerate() {
                let mut idx = vec![0; m];
                let mut rest = lin;
                for slot in idx.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                a.set(&idx, ratio(p, q)).unwrap();
            }
            a
        })
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-9i64..=9, 1i64..=9), n)
            .prop_map(|v| v.into_iter().map(|(p, q)| ratio(p, q)).collect())
    }

    fn arb_rotation() -> impl Strategy<Value = RatOrthogonal> {
        (1i64..6, 0i64..6, any::<bool>()).prop_map(|(p, q, flip)| {
            let r = RatOrthogonal::pythagorean_rotation(p, q);
            if flip {
                r.product(&RatOrthogonal::reflection(2, 0))
            } else {
                r
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn frame_change_commutes_with_map(
            (a, x, c) in (2usize..=5).prop_flat_map(|m| (arb_tensor(m, 2), arb_vec(2), arb_rotation()))
        ) {
            let lhs = a.rotate(&c).unwrap().eval_map(&c.apply(&x)).unwrap();
            let rhs = c.apply(&a.eval_map(&x).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rotation_preserves_quadratic_form(x in arb_vec(2), c in arb_rotation()) {
            let y = c.apply(&x);
            let q = |v: &[Rational]| v.iter().fold(rat(0), |acc, t| acc + t * t);
            prop_assert_eq!(q(&x), q(&y));
        }

        #[test]
        fn first_component_reconstructs_from_b(
            (a, x) in (2usize..=6).prop_flat_map(|m| (arb_tensor(m, 2), arb_vec(2)))
        ) {
            let m = a.order();
            let s = a.binary_slices().unwrap();
            let direct = a.eval_map(&x).unwrap();
            let pow = |v: &Rational, k: usize| (0..k).fold(rat(1), |acc, _| acc * v);
            let via_b = (0..m).fold(rat(0), |acc, i| acc + &s.b[i] * pow(&x[0], m - 1 - i) * pow(&x[1], i));
            let via_c = (0..m).fold(rat(0), |acc, i| acc + &s.c[i] * pow(&x[0], m - 1 - i) * pow(&x[1], i));
            prop_assert_eq!(&direct[0], &via_b);
            prop_assert_eq!(&direct[1], &via_c);
        }

        #[test]
        fn d_and_e_identities(a in (2usize..=6).prop_flat_map(|m| arb_tensor(m, 2))) {
            let s = a.binary_slices().unwrap();
            let m = a.order();
            for j in 0..m - 1 {
                prop_assert_eq!(&s.d[j], &(&s.b[j] - &s.c[j + 1]));
            }
            prop_assert_eq!(&s.d[m - 1], &s.b[m - 1]);
            for k in 0..2 * m - 1 {
                let conv = (0..m)
                    .filter(|&i| k >= i && k - i < m)
                    .fold(rat(0), |acc, i| acc + &s.b[i] * &s.c[k - i]);
                prop_assert_eq!(&s.e[k], &conv);
            }
        }
    }
}
