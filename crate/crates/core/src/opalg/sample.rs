//! Random expression builders for property tests.
//!
//! Samplers take any [`rand::Rng`] so callers control seeding; the bundled
//! tests use a counter-based generator with fixed seeds to stay
//! reproducible.

use rand::Rng;

use super::coeff::{Coeff, Param};
use super::expr::ExprTree;
use super::radial::RadialFunction;

/// Bounds for the samplers. Depth and power caps keep expansion sizes sane:
/// canonicalization is exponential in momentum degree.
#[derive(Clone, Debug)]
pub struct SampleCfg {
    /// Tree depth bound for [`sample_expr_tree`].
    pub max_depth: u32,
    /// Max children of a sum or product node.
    pub max_branch: usize,
    /// `|n|` bound for radial power leaves `r^n`.
    pub max_r_pow: i64,
    /// Magnitude bound for rational numerators and denominators.
    pub coeff_magnitude: i64,
    /// Allow formal parameters (with negative powers) in scalar leaves.
    pub with_params: bool,
}

impl Default for SampleCfg {
    fn default() -> Self {
        SampleCfg {
            max_depth: 4,
            max_branch: 3,
            max_r_pow: 2,
            coeff_magnitude: 4,
            with_params: true,
        }
    }
}

/// Random nonzero coefficient: rational, sometimes imaginary, sometimes
/// carrying a parameter power (negative powers land in the denominator).
pub fn sample_coeff<R: Rng + ?Sized>(rng: &mut R, cfg: &SampleCfg) -> Coeff {
    let mag = cfg.coeff_magnitude.max(1);
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-mag..=mag);
    }
    let den = rng.gen_range(1..=mag);
    let mut c = Coeff::ratio(num, den);
    if rng.gen_bool(0.3) {
        c = &c * &Coeff::i();
    }
    if cfg.with_params && rng.gen_bool(0.4) {
        let param = match rng.gen_range(0..4) {
            0 => Param::MEff,
            1 => Param::Coulomb,
            2 => Param::OmegaEff,
            _ => Param::Curvature,
        };
        let pow = *[-2, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
        c = &c * &Coeff::param_pow(param, pow);
    }
    c
}

/// Random operator expression tree of bounded depth.
pub fn sample_expr_tree<R: Rng + ?Sized>(rng: &mut R, cfg: &SampleCfg) -> ExprTree {
    sample_tree_at(rng, cfg, cfg.max_depth)
}

fn sample_leaf<R: Rng + ?Sized>(rng: &mut R, cfg: &SampleCfg) -> ExprTree {
    match rng.gen_range(0..6) {
        0 => ExprTree::X1,
        1 => ExprTree::X2,
        2 => ExprTree::P1,
        3 => ExprTree::P2,
        4 => {
            let mut n = 0;
            while n == 0 {
                n = rng.gen_range(-cfg.max_r_pow..=cfg.max_r_pow);
            }
            ExprTree::R(n)
        }
        _ => ExprTree::Scalar(sample_coeff(rng, cfg)),
    }
}

fn sample_tree_at<R: Rng + ?Sized>(rng: &mut R, cfg: &SampleCfg, depth: u32) -> ExprTree {
    if depth == 0 || rng.gen_bool(0.35) {
        return sample_leaf(rng, cfg);
    }
    match rng.gen_range(0..3) {
        0 => ExprTree::Neg(Box::new(sample_tree_at(rng, cfg, depth - 1))),
        1 => {
            let n = rng.gen_range(2..=cfg.max_branch.max(2));
            ExprTree::Add(
                (0..n)
                    .map(|_| sample_tree_at(rng, cfg, depth - 1))
                    .collect(),
            )
        }
        _ => {
            let n = rng.gen_range(2..=cfg.max_branch.max(2));
            ExprTree::Mul(
                (0..n)
                    .map(|_| sample_tree_at(rng, cfg, depth - 1))
                    .collect(),
            )
        }
    }
}

/// Random radial function: a short sum of `x1^a x2^b r^n` monomials.
pub fn sample_radial_function<R: Rng + ?Sized>(rng: &mut R, cfg: &SampleCfg) -> RadialFunction {
    let n_terms = rng.gen_range(1..=cfg.max_branch.max(1));
    let mut acc = RadialFunction::zero();
    for _ in 0..n_terms {
        let mut mono = RadialFunction::one();
        for _ in 0..rng.gen_range(0..=3u32) {
            mono = mono.mul(&RadialFunction::x1());
        }
        for _ in 0..rng.gen_range(0..=3u32) {
            mono = mono.mul(&RadialFunction::x2());
        }
        let r_exp = rng.gen_range(-(2 * cfg.max_r_pow + 1)..=2 * cfg.max_r_pow + 1);
        let r_part = RadialFunction::r_pow(r_exp).expect("bounded power");
        mono = mono.mul(&r_part.scale(&sample_coeff(rng, cfg)));
        acc = &acc + &mono;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::expr::OperatorExpr;
    use rand::SeedableRng;

    fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn sampled_trees_build() {
        let cfg = SampleCfg::default();
        let mut r = rng(7);
        for _ in 0..50 {
            let t = sample_expr_tree(&mut r, &cfg);
            let e = OperatorExpr::from_tree(&t).unwrap();
            // Canonicalization must be idempotent under re-addition.
            let doubled = e.add(&e);
            assert_eq!(doubled.sub(&e), e);
        }
    }

    #[test]
    fn sampled_radial_functions_close_under_product() {
        let cfg = SampleCfg::default();
        let mut r = rng(11);
        for _ in 0..50 {
            let f = sample_radial_function(&mut r, &cfg);
            let g = sample_radial_function(&mut r, &cfg);
            let fg = f.mul(&g);
            let gf = g.mul(&f);
            assert!(fg.terms().count() == gf.terms().count());
            assert!((&fg - &gf).is_zero());
        }
    }

    #[test]
    fn coeff_sampler_never_zero() {
        let cfg = SampleCfg::default();
        let mut r = rng(13);
        for _ in 0..200 {
            assert!(!sample_coeff(&mut r, &cfg).is_zero());
        }
    }
}
