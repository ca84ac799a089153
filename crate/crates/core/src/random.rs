//! Seeded generators for fuzzing. Every draw goes through an explicit
//! `ChaCha8Rng`, so a `(seed, index)` pair reproduces a tensor exactly.

use crate::resultant::BinaryForm;
use crate::scalar::ratio;
use crate::{RatOrthogonal, Rational, Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for iteration `index` of a campaign started from `seed`
/// (splitmix64 of the pair).
pub fn iteration_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `p / q` with `p` uniform in `-9..=9` and `q` uniform in `1..=9`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != ratio(0, 1) {
            return q;
        }
    }
}

/// Dense random tensor: every one of the `n^m` entries is drawn.
pub fn tensor(rng: &mut impl Rng, order: usize, dim: usize) -> Tensor {
    let mut a = Tensor::zeros(order, dim).expect("valid shape");
    let mut idx = vec![0; order];
    for _ in 0..dim.pow(order as u32) {
        a.set(&idx, small_rational(rng)).expect("in range");
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < dim {
                break;
            }
            *slot = 0;
        }
    }
    a
}

/// The tensor of iteration `index` in a campaign.
pub fn fuzz_tensor(seed: u64, index: u64, order: usize, dim: usize) -> Tensor {
    tensor(&mut rng(iteration_seed(seed, index)), order, dim)
}

pub fn binary_form(rng: &mut impl Rng, degree: usize) -> BinaryForm<Rational> {
    BinaryForm::from_scalars((0..=degree).map(|_| small_rational(rng)).collect())
}

/// Product of one to four factors, each a Pythagorean rotation or a
/// coordinate reflection.
pub fn orthogonal2(rng: &mut impl Rng) -> RatOrthogonal {
    let factors = rng.gen_range(1..=4);
    let mut c = RatOrthogonal::identity(2);
    for _ in 0..factors {
        let f = if rng.gen_bool(0.5) {
            RatOrthogonal::pythagorean_rotation(rng.gen_range(1..=5), rng.gen_range(1..=5))
        } else {
            RatOrthogonal::reflection(2, rng.gen_range(0..2))
        };
        c = c.product(&f);
    }
    c
}

/// Cayley transform of a random skew-symmetric matrix.
pub fn orthogonal(rng: &mut impl Rng, n: usize) -> RatOrthogonal {
    loop {
        let mut s = vec![vec![ratio(0, 1); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = small_rational(rng);
                s[j][i] = -v.clone();
                s[i][j] = v;
            }
        }
        if let Some(c) = RatOrthogonal::cayley(&s) {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        assert_eq!(fuzz_tensor(42, 3, 4, 2), fuzz_tensor(42, 3, 4, 2));
        assert_ne!(fuzz_tensor(42, 3, 4, 2), fuzz_tensor(42, 4, 4, 2));
        assert_ne!(iteration_seed(1, 0), iteration_seed(2, 0));
    }

    #[test]
    fn entries_in_range() {
        let mut r = rng(7);
        for _ in 0..500 {
            let q = small_rational(&mut r);
            assert!(q.numer().magnitude() <= &9u32.into());
            assert!(*q.denom() >= 1.into() && *q.denom() <= 9.into());
        }
    }

    #[test]
    fn generated_matrices_are_orthogonal() {
        let mut r = rng(11);
        for _ in 0..20 {
            let c = orthogonal2(&mut r);
            assert!(RatOrthogonal::new(c.rows().to_vec()).is_ok());
            let c = orthogonal(&mut r, 3);
            assert!(RatOrthogonal::new(c.rows().to_vec()).is_ok());
        }
    }
}
