//! Square matrices with polynomial entries and their exact determinants.

use crate::poly::{interpolation_nodes, Poly};
use crate::scalar::Field;

use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<T> {
    rows: Vec<Vec<Poly<T>>>,
}

impl<T: Field> PolyMatrix<T> {
    /// Panics when `rows` is not square.
    pub fn new(rows: Vec<Vec<Poly<T>>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { rows }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            rows: vec![vec![Poly::zero(); n]; n],
        }
    }

    pub fn from_scalars(rows: Vec<Vec<T>>) -> Self {
        Self::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(Poly::constant).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<T> {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<T>) {
        self.rows[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<Poly<T>>] {
        &self.rows
    }

    /// Sum over rows of the largest entry degree; bounds the determinant's
    /// degree. `None` when some row is entirely zero.
    pub fn degree_bound(&self) -> Option<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().filter_map(|p| p.degree().finite()).max())
            .sum()
    }

    pub fn eval(&self, x: &T) -> Vec<Vec<T>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(x)).collect())
            .collect()
    }

    /// Determinant by evaluating at `bound + 1` nodes and interpolating.
    pub fn det(&self) -> Poly<T> {
        let Some(bound) = self.degree_bound() else {
            return Poly::zero();
        };
        let nodes = interpolation_nodes::<T>(bound + 1);
        let values: Vec<T> = nodes
            .par_iter()
            .map(|x| T::determinant(self.eval(x)))
            .collect();
        Poly::interpolate(&nodes, &values)
    }

    /// Bareiss elimination directly over the polynomial ring. Every division
    /// is exact, so no rational functions appear.
    pub fn det_fraction_free(&self) -> Poly<T> {
        let n = self.size();
        if n == 0 {
            return Poly::one();
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Poly::zero();
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
                let lead = std::mem::replace(&mut row[k], Poly::zero());
                for j in k + 1..n {
                    let num = &(&row[j] * &pivot_row[k]) - &(&lead * &pivot_row[j]);
                    row[j] = num
                        .div_exact(&prev)
                        .expect("Bareiss quotients are exact");
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::RatPoly;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn lam() -> RatPoly {
        Poly::x()
    }

    fn c(v: i64) -> RatPoly {
        Poly::constant(rat(v))
    }

    /// Laplace expansion along the first row.
    fn cofactor(m: &[Vec<RatPoly>]) -> RatPoly {
        let n = m.len();
        if n == 0 {
            return Poly::one();
        }
        let mut acc = RatPoly::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<RatPoly>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let term = &m[0][j] * &cofactor(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn diagonal_lambda() {
        let m = PolyMatrix::new(vec![vec![lam(), c(0)], vec![c(0), lam()]]);
        assert_eq!(m.det(), lam().pow(2));
        assert_eq!(m.det_fraction_free(), lam().pow(2));
    }

    #[test]
    fn symmetric_two_by_two() {
        let m = PolyMatrix::new(vec![vec![lam(), c(1)], vec![c(1), lam()]]);
        let expected = &lam().pow(2) - &c(1);
        assert_eq!(m.det(), expected);
        assert_eq!(m.det_fraction_free(), expected);
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = PolyMatrix::new(vec![vec![lam(), c(1)], vec![c(0), c(0)]]);
        assert_eq!(m.degree_bound(), None);
        assert!(m.det().is_zero());
        assert!(m.det_fraction_free().is_zero());
    }

    #[test]
    fn constant_matrix_matches_scalar_determinant() {
        let rows = vec![
            vec![ratio(1, 2), rat(3), rat(-1)],
            vec![rat(2), ratio(-5, 3), rat(0)],
            vec![rat(4), rat(1), ratio(7, 4)],
        ];
        let scalar = <BigRational as Field>::determinant(rows.clone());
        assert_eq!(PolyMatrix::from_scalars(rows).det(), Poly::constant(scalar));
    }

    fn arb_entry() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-4i64..=4, 1i64..=3), 0..=3)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = PolyMatrix<BigRational>> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(arb_entry(), n), n)
                .prop_map(PolyMatrix::new)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn interpolation_and_fraction_free_agree(m in arb_matrix(8)) {
            prop_assert_eq!(m.det(), m.det_fraction_free());
        }

        #[test]
        fn matches_cofactor_expansion(m in arb_matrix(6)) {
            prop_assert_eq!(m.det(), cofactor(m.rows()));
        }
    }
}
