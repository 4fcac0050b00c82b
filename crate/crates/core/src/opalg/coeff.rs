//! Rational-function coefficients in the four model parameters.
//!
//! `ParamPoly` is a multivariate polynomial over [`GaussRat`] in the formal
//! symbols `mt` (effective mass), `k` (Coulomb strength), `wt` (effective
//! frequency) and `lam` (sphere curvature). `Coeff` is a quotient of two such
//! polynomials, normalized by cancelling the common monomial content and
//! scaling the denominator's lexicographically leading coefficient to 1.
//! Every coefficient the generator builders produce has a monomial
//! denominator, so this normalization already yields a canonical form there;
//! equality testing cross-multiplies and never relies on full gcd reduction.

use super::gauss::GaussRat;
use super::OpalgError;
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Formal model parameters, in display order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    /// Effective mass `mt = (eps + m) / 2`.
    MEff,
    /// Coulomb strength `k`.
    Coulomb,
    /// Effective oscillator frequency `wt = sqrt(m w^2 / mt)`.
    OmegaEff,
    /// Sphere curvature `lam`.
    Curvature,
}

pub(crate) const PARAM_NAMES: [&str; 4] = ["mt", "k", "wt", "lam"];

impl Param {
    pub fn name(self) -> &'static str {
        PARAM_NAMES[self.index()]
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Param::MEff => 0,
            Param::Coulomb => 1,
            Param::OmegaEff => 2,
            Param::Curvature => 3,
        }
    }
}

/// Numeric values for the formal parameters, used when an exact expression is
/// evaluated on a grid or in a spectrum cross-check.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ParamVals {
    pub m_eff: f64,
    pub coulomb: f64,
    pub omega_eff: f64,
    pub curvature: f64,
}

impl ParamVals {
    fn get(&self, i: usize) -> f64 {
        [self.m_eff, self.coulomb, self.omega_eff, self.curvature][i]
    }
}

type Exps = [u32; 4];

/// Multivariate polynomial in the four parameters over Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exps, GaussRat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; 4], c);
        }
        ParamPoly { terms }
    }

    pub fn var(p: Param) -> Self {
        let mut exps = [0u32; 4];
        exps[p.index()] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, GaussRat::one());
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; 4]).is_some_and(|c| c.is_one())
    }

    pub(crate) fn add_term(&mut self, exps: Exps, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn conj(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ParamPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum exponent over all monomials (the monomial
    /// content). Zero polynomial has no content.
    fn content(&self) -> Option<Exps> {
        let mut it = self.terms.keys();
        let mut min = *it.next()?;
        for e in it {
            for i in 0..4 {
                min[i] = min[i].min(e[i]);
            }
        }
        Some(min)
    }

    fn div_monomial(&self, m: Exps) -> Self {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut d = *e;
                    for i in 0..4 {
                        d[i] -= m[i];
                    }
                    (d, c.clone())
                })
                .collect(),
        }
    }

    /// Coefficient of the lexicographically last monomial.
    fn leading(&self) -> Option<&GaussRat> {
        self.terms.values().next_back()
    }

    fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn eval(&self, vals: &ParamVals) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut mag = 1.0;
            for (i, &p) in e.iter().enumerate() {
                mag *= vals.get(i).powi(p as i32);
            }
            acc += c.to_complex() * mag;
        }
        acc
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..4 {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

pub(crate) fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &GaussRat, exps: &Exps) -> fmt::Result {
    let has_vars = exps.iter().any(|&e| e > 0);
    if !has_vars {
        return write!(f, "{c}");
    }
    let mut lead = true;
    if !c.is_one() {
        write!(f, "{c}")?;
        lead = false;
    }
    for i in 0..4 {
        if exps[i] == 0 {
            continue;
        }
        if !lead {
            write!(f, "*")?;
        }
        lead = false;
        write!(f, "{}", PARAM_NAMES[i])?;
        if exps[i] > 1 {
            write!(f, "^{}", exps[i])?;
        }
    }
    Ok(())
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            fmt_monomial(f, c, e)?;
        }
        Ok(())
    }
}

/// Quotient of two parameter polynomials.
#[derive(Clone, Debug)]
pub struct Coeff {
    num: ParamPoly,
    den: ParamPoly,
}

impl Coeff {
    /// Build `num / den`, normalizing. Panics if `den` is identically zero;
    /// the fallible path is [`Coeff::checked_div`].
    pub fn new(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator polynomial");
        if num.is_zero() {
            return Coeff {
                num: ParamPoly::zero(),
                den: ParamPoly::one(),
            };
        }
        let cn = num.content().unwrap();
        let cd = den.content().unwrap();
        let mut common = [0u32; 4];
        for i in 0..4 {
            common[i] = cn[i].min(cd[i]);
        }
        let mut num = num.div_monomial(common);
        let mut den = den.div_monomial(common);
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Coeff { num, den }
    }

    pub fn zero() -> Self {
        Coeff {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        Coeff {
            num: ParamPoly::one(),
            den: ParamPoly::one(),
        }
    }

    pub fn i() -> Self {
        Coeff {
            num: ParamPoly::constant(GaussRat::i()),
            den: ParamPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Coeff {
            num: ParamPoly::constant(GaussRat::from_int(n)),
            den: ParamPoly::one(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Coeff {
            num: ParamPoly::constant(GaussRat::ratio(num, den)),
            den: ParamPoly::one(),
        }
    }

    pub fn scalar(c: GaussRat) -> Self {
        Coeff {
            num: ParamPoly::constant(c),
            den: ParamPoly::one(),
        }
    }

    pub fn param(p: Param) -> Self {
        Coeff {
            num: ParamPoly::var(p),
            den: ParamPoly::one(),
        }
    }

    /// `p^n` for any integer `n`; negative powers go to the denominator.
    pub fn param_pow(p: Param, n: i32) -> Self {
        let poly = ParamPoly::var(p).pow(n.unsigned_abs());
        if n >= 0 {
            Coeff {
                num: poly,
                den: ParamPoly::one(),
            }
        } else {
            Coeff::new(ParamPoly::one(), poly)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn numerator(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ParamPoly {
        &self.den
    }

    pub fn conj(&self) -> Self {
        Coeff::new(self.num.conj(), self.den.conj())
    }

    pub fn mul_i_pow(&self, n: i64) -> Self {
        self * &Coeff::scalar(GaussRat::one().mul_i_pow(n))
    }

    pub fn checked_div(&self, rhs: &Coeff) -> Result<Coeff, OpalgError> {
        if rhs.is_zero() {
            return Err(OpalgError::DivisionByZero);
        }
        Ok(Coeff::new(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn eval(&self, vals: &ParamVals) -> Complex64 {
        let d = self.den.eval(vals);
        self.num.eval(vals) / d
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }
}

impl Eq for Coeff {}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        if self.den == rhs.den {
            return Coeff::new(&self.num + &rhs.num, self.den.clone());
        }
        Coeff::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        Coeff::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        self.checked_div(rhs).expect("division by zero coefficient")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for Coeff {
    /// `num` when the denominator is 1 (parenthesized if it has several
    /// monomials), else `(num)/(den)` with both sides parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.terms.len() > 1 {
                return write!(f, "({})", self.num);
            }
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mt() -> Coeff {
        Coeff::param(Param::MEff)
    }
    fn k() -> Coeff {
        Coeff::param(Param::Coulomb)
    }

    #[test]
    fn quotient_normalization_cancels_monomial_content() {
        // (2 mt^2 k) / (4 mt k^2) normalizes to mt / (2 k) = (1/2 mt) / k.
        let num = &(&Coeff::from_int(2) * &(&mt() * &mt())) * &k();
        let den = &(&Coeff::from_int(4) * &mt()) * &(&k() * &k());
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q, &(&mt() / &k()) * &Coeff::ratio(1, 2));
        assert_eq!(q.to_string(), "(1/2*mt)/(k)");
    }

    #[test]
    fn cross_multiplied_equality() {
        // mt/k == mt^2/(mt k) even though contents differ before normalization.
        let a = &mt() / &k();
        let b = (&mt() * &mt()).checked_div(&(&mt() * &k())).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, &k() / &mt());
    }

    #[test]
    fn field_ops() {
        let half_i = &Coeff::i() * &Coeff::ratio(1, 2);
        let x = &(&mt() + &k()) * &half_i;
        let back = &(&x / &half_i) - &(&mt() + &k());
        assert!(back.is_zero());
        assert!(matches!(
            Coeff::one().checked_div(&Coeff::zero()),
            Err(OpalgError::DivisionByZero)
        ));
    }

    #[test]
    fn eval_matches_formula() {
        let vals = ParamVals {
            m_eff: 1.25,
            coulomb: 0.5,
            omega_eff: 1.5,
            curvature: 0.3,
        };
        // -2 i / (mt k^2)
        let c = &(&Coeff::from_int(-2) * &Coeff::i()) / &(&mt() * &(&k() * &k()));
        let z = c.eval(&vals);
        assert!((z.re).abs() < 1e-15);
        assert!((z.im + 2.0 / (1.25 * 0.25)).abs() < 1e-12);
    }

    #[test]
    fn display_round_shapes() {
        assert_eq!(Coeff::zero().to_string(), "0");
        assert_eq!((&Coeff::one() / &(&mt() * &k())).to_string(), "(1)/(mt*k)");
        let sum = &mt() + &Coeff::one();
        assert_eq!(sum.to_string(), "(1 + mt)");
    }
}
