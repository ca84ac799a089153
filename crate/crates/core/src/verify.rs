//! Per-tensor identity checks and a seeded fuzz driver.

use crate::echar::{self, EcharResult};
use crate::eigen::{self, EigenStructure};
use crate::error::{Error, Result};
use crate::poly::Degree;
use crate::random;
use crate::roots::{complex_roots, expand_multiplicities, DEFAULT_ROOT_TOL};
use crate::scalar::ratio;
use crate::{RatOrthogonal, RatPoly, Rational, Tensor};
use rayon::prelude::*;

/// Tolerance for matching eigenvalues against roots of `psi`.
pub const EIGEN_MATCH_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn new(check: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            check,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// random orthogonal matrices tried on top of the fixed ones
    pub random_rotations: usize,
    /// include the Macaulay route in the route comparison
    pub macaulay: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            random_rotations: 2,
            macaulay: true,
            seed: 0,
        }
    }
}

fn coeffs(p: &RatPoly) -> String {
    format!("{:?}", p.coeff_strings())
}

fn pow(q: &Rational, k: usize) -> Rational {
    (0..k).fold(ratio(1, 1), |acc, _| acc * q)
}

fn rotations(a: &Tensor, opts: &VerifyOptions) -> Vec<RatOrthogonal> {
    let mut rng = random::rng(opts.seed);
    let mut out = Vec::new();
    if a.dim() == 2 {
        let r = RatOrthogonal::pythagorean_rotation(2, 1);
        let f = RatOrthogonal::reflection(2, 1);
        out.push(r.clone());
        out.push(f.clone());
        out.push(r.product(&f));
        for _ in 0..opts.random_rotations {
            out.push(random::orthogonal2(&mut rng));
        }
    } else {
        out.push(RatOrthogonal::reflection(a.dim(), 0));
        for _ in 0..opts.random_rotations.max(1) {
            out.push(random::orthogonal(&mut rng, a.dim()));
        }
    }
    out
}

/// Runs every applicable identity on `a`.
pub fn verify_tensor(a: &Tensor, opts: &VerifyOptions) -> Result<Vec<Verdict>> {
    let base = echar::echar(a)?;
    let psi = &base.psi;
    let mut out = Vec::new();

    out.push(Verdict::new(
        "constant_term",
        base.a0_matches(),
        format!("psi(0) = {}, predicted {}", base.constant_term(), base.a0_predicted),
    ));
    if let Some(ok) = base.leading_matches() {
        out.push(Verdict::new(
            "leading_coefficient",
            ok,
            format!(
                "coefficient of lambda^{} = {}, predicted {}",
                base.generic_degree(),
                base.leading_coefficient(),
                base.leading_predicted.clone().unwrap_or_default()
            ),
        ));
    }
    out.push(Verdict::new(
        "degree_bound",
        base.within_degree_bound(),
        format!("degree {} vs bound {}", psi.degree(), base.generic_degree()),
    ));
    if a.order() % 2 == 1 {
        out.push(Verdict::new("even_powers_only", psi.is_even(), coeffs(psi)));
    }

    let mut failures = Vec::new();
    for c in rotations(a, opts) {
        let rotated = echar::echar(&a.rotate(&c)?)?.psi;
        if rotated != *psi {
            failures.push(format!("C = {:?}: {}", c.rows(), coeffs(&rotated)));
        }
    }
    out.push(Verdict::new(
        "orthonormal_invariance",
        failures.is_empty(),
        if failures.is_empty() {
            format!("unchanged: {}", coeffs(psi))
        } else {
            format!("base {}; {}", coeffs(psi), failures.join("; "))
        },
    ));

    out.push(homogeneity(a, &base)?);
    if a.dim() == 2 {
        out.push(route_equivalence(a, psi, opts.macaulay)?);
        out.extend(eigen_checks(a, &base)?);
    }
    Ok(out)
}

/// `a_k(tA) = t^{E - k} a_k(A)` with `E = n(m-1)^{n-1}`, doubled for odd `m`.
fn homogeneity(a: &Tensor, base: &EcharResult) -> Result<Verdict> {
    let (m, n) = (a.order(), a.dim());
    let t = ratio(-2, 3);
    let scaled = echar::echar(&a.scale(&t))?.psi;
    let mut e = n * (m - 1).pow(n as u32 - 1);
    if m % 2 == 1 {
        e *= 2;
    }
    let top = match (scaled.degree(), base.psi.degree()) {
        (Degree::Finite(x), Degree::Finite(y)) => x.max(y),
        (Degree::Finite(x), _) | (_, Degree::Finite(x)) => x,
        _ => 0,
    };
    let ok = top <= e
        && (0..=top).all(|k| scaled.coeff(k) == pow(&t, e - k) * base.psi.coeff(k));
    Ok(Verdict::new(
        "homogeneity",
        ok,
        format!("t = {t}: {} vs {}", coeffs(&scaled), coeffs(&base.psi)),
    ))
}

fn route_equivalence(a: &Tensor, psi: &RatPoly, macaulay: bool) -> Result<Verdict> {
    let mut routes: Vec<(&str, RatPoly)> = Vec::new();
    if a.order() % 2 == 0 {
        routes.push(("sylvester-direct", echar::echar_even_n2(a)?.psi));
        match echar::m1_det(a) {
            Ok(r) => routes.push(("M1-det", r.psi)),
            Err(Error::Irregular) => {}
            Err(e) => return Err(e),
        }
    } else {
        match echar::m2_det(a) {
            Ok(r) => routes.push(("M2-det", r.psi)),
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if macaulay {
        match echar::echar_macaulay(a) {
            Ok(r) => routes.push(("macaulay", r.psi)),
            Err(Error::SizeLimit(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let bad: Vec<String> = routes
        .iter()
        .filter(|(_, p)| p != psi)
        .map(|(name, p)| format!("{name}: {}", coeffs(p)))
        .collect();
    let names: Vec<&str> = routes.iter().map(|(n, _)| *n).collect();
    Ok(Verdict::new(
        "route_equivalence",
        bad.is_empty(),
        if bad.is_empty() {
            format!("agree: {}", names.join(", "))
        } else {
            format!("reference {}; {}", coeffs(psi), bad.join("; "))
        },
    ))
}

fn eigen_checks(a: &Tensor, base: &EcharResult) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    let pairs = match eigen::eigenpairs_n2(a)? {
        EigenStructure::InfinitelyMany => {
            out.push(Verdict::new(
                "infinitely_many_implies_zero",
                base.is_identically_zero(),
                coeffs(&base.psi),
            ));
            return Ok(out);
        }
        EigenStructure::Finite(p) => p,
    };
    let count: usize = pairs.iter().map(|p| p.multiplicity).sum();
    out.push(Verdict::new(
        "eigen_class_count",
        count == a.order(),
        format!("{count} classes with multiplicity, order {}", a.order()),
    ));
    let regular = eigen::is_regular(a)?.regular;
    if !regular || base.is_identically_zero() {
        return Ok(out);
    }
    let (value, has_deficit) = eigen::deficit_indicator(a)?;
    let dropped = base.psi.degree() < Degree::Finite(base.generic_degree());
    out.push(Verdict::new(
        "deficit_criterion",
        dropped == has_deficit,
        format!("P^2 + Q^2 = {value}, degree {}", base.psi.degree()),
    ));
    let predicted = eigen::predicted_roots(a, &pairs);
    let roots = expand_multiplicities(&complex_roots(&base.psi, DEFAULT_ROOT_TOL)?);
    out.push(Verdict::new(
        "eigen_root_correspondence",
        eigen::multisets_match(&predicted, &roots, EIGEN_MATCH_TOL),
        format!("eigenvalues {predicted:?}, roots {roots:?}"),
    ));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzCase {
    pub index: u64,
    pub tensor: Tensor,
    pub verdicts: Vec<Verdict>,
}

impl FuzzCase {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Verifies `count` random tensors in parallel; results are in index order.
pub fn fuzz(seed: u64, count: u64, order: usize, dim: usize, opts: &VerifyOptions) -> Result<Vec<FuzzCase>> {
    (0..count)
        .into_par_iter()
        .map(|index| {
            let tensor = random::fuzz_tensor(seed, index, order, dim);
            let local = VerifyOptions {
                seed: random::iteration_seed(seed ^ 0x0707, index),
                ..*opts
            };
            let verdicts = verify_tensor(&tensor, &local)?;
            Ok(FuzzCase {
                index,
                tensor,
                verdicts,
            })
        })
        .collect()
}
