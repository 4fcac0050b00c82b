//! Radial part of the operator basis: monomials `x1^a x2^b rho^-s r^t` with
//! `rho = x1^2 + x2^2`, `r = sqrt(rho)`, `t ∈ {0, 1}`, and the reduction
//! invariant `a ≤ 1` whenever `s ≥ 1`. [`RadialFunction`] is a finite linear
//! combination of such monomials; the set is closed under products (via
//! `r^2 = rho`) and partial derivatives (via `∂r/∂x_i = x_i r / rho`), which
//! is what lets normal ordering stay inside the basis.

use super::coeff::{Coeff, ParamVals};
use super::OpalgError;
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// One radial basis monomial `x1^a x2^b rho^-s r^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RadMono {
    pub x1: u32,
    pub x2: u32,
    pub rho_inv: u32,
    pub has_r: bool,
}

impl RadMono {
    pub const ONE: RadMono = RadMono {
        x1: 0,
        x2: 0,
        rho_inv: 0,
        has_r: false,
    };

    /// Upholds the basis invariant: with `rho_inv ≥ 1` the `x1` exponent is
    /// reduced below 2 by `x1^2 * rho^-s = rho^-(s-1) - x2^2 * rho^-s`.
    /// Returns the monomial as a sum of reduced monomials with ±1 signs.
    pub(crate) fn reduce(self) -> Vec<(RadMono, i64)> {
        if self.rho_inv == 0 || self.x1 < 2 {
            return vec![(self, 1)];
        }
        let mut out = Vec::new();
        let a = RadMono {
            x1: self.x1 - 2,
            rho_inv: self.rho_inv - 1,
            ..self
        };
        let b = RadMono {
            x1: self.x1 - 2,
            x2: self.x2 + 2,
            ..self
        };
        for (m, s) in a.reduce() {
            out.push((m, s));
        }
        for (m, s) in b.reduce() {
            out.push((m, -s));
        }
        out
    }

    /// Product of two monomials as a sum of reduced monomials with integer
    /// weights. `r * r = rho` either cancels one `rho^-1` or, for a purely
    /// polynomial term, expands to `x1^2 + x2^2`.
    pub(crate) fn mul(self, other: RadMono) -> Vec<(RadMono, i64)> {
        let x1 = self.x1 + other.x1;
        let x2 = self.x2 + other.x2;
        let mut s = self.rho_inv + other.rho_inv;
        let has_r = self.has_r ^ other.has_r;
        let mut raw = Vec::with_capacity(2);
        if self.has_r && other.has_r {
            if s > 0 {
                s -= 1;
                raw.push((
                    RadMono {
                        x1,
                        x2,
                        rho_inv: s,
                        has_r,
                    },
                    1,
                ));
            } else {
                raw.push((
                    RadMono {
                        x1: x1 + 2,
                        x2,
                        rho_inv: 0,
                        has_r,
                    },
                    1,
                ));
                raw.push((
                    RadMono {
                        x1,
                        x2: x2 + 2,
                        rho_inv: 0,
                        has_r,
                    },
                    1,
                ));
            }
        } else {
            raw.push((
                RadMono {
                    x1,
                    x2,
                    rho_inv: s,
                    has_r,
                },
                1,
            ));
        }
        let mut out = Vec::new();
        for (m, w) in raw {
            for (rm, rs) in m.reduce() {
                out.push((rm, w * rs));
            }
        }
        out
    }

    /// Partial derivative along the given axis (0 for x1, 1 for x2), as a sum
    /// of reduced monomials with integer weights.
    pub(crate) fn diff(self, axis: usize) -> Vec<(RadMono, i64)> {
        let mut raw: Vec<(RadMono, i64)> = Vec::with_capacity(3);
        let (e, bump): (u32, fn(RadMono) -> RadMono) = match axis {
            0 => (self.x1, |m| RadMono { x1: m.x1 + 1, ..m }),
            1 => (self.x2, |m| RadMono { x2: m.x2 + 1, ..m }),
            _ => panic!("axis must be 0 or 1"),
        };
        if e > 0 {
            let dropped = match axis {
                0 => RadMono {
                    x1: self.x1 - 1,
                    ..self
                },
                _ => RadMono {
                    x2: self.x2 - 1,
                    ..self
                },
            };
            raw.push((dropped, e as i64));
        }
        if self.rho_inv > 0 {
            // d(rho^-s) = -2 s x_i rho^-(s+1)
            raw.push((
                bump(RadMono {
                    rho_inv: self.rho_inv + 1,
                    ..self
                }),
                -2 * self.rho_inv as i64,
            ));
        }
        if self.has_r {
            // d r = x_i rho^-1 r
            raw.push((
                bump(RadMono {
                    rho_inv: self.rho_inv + 1,
                    ..self
                }),
                1,
            ));
        }
        let mut out = Vec::new();
        for (m, w) in raw {
            for (rm, rs) in m.reduce() {
                out.push((rm, w * rs));
            }
        }
        out
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        let rho = x1 * x1 + x2 * x2;
        let mut v = x1.powi(self.x1 as i32) * x2.powi(self.x2 as i32);
        v *= rho.powi(-(self.rho_inv as i32));
        if self.has_r {
            v *= rho.sqrt();
        }
        v
    }

    fn is_one(&self) -> bool {
        *self == RadMono::ONE
    }
}

impl fmt::Display for RadMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut lead = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !lead {
                write!(f, "*")?;
            }
            lead = false;
            Ok(())
        };
        if self.x1 > 0 {
            sep(f)?;
            write!(f, "x1")?;
            if self.x1 > 1 {
                write!(f, "^{}", self.x1)?;
            }
        }
        if self.x2 > 0 {
            sep(f)?;
            write!(f, "x2")?;
            if self.x2 > 1 {
                write!(f, "^{}", self.x2)?;
            }
        }
        if self.rho_inv > 0 {
            sep(f)?;
            write!(f, "rho^-{}", self.rho_inv)?;
        }
        if self.has_r {
            sep(f)?;
            write!(f, "r")?;
        }
        Ok(())
    }
}

/// Finite linear combination of radial monomials with rational-function
/// coefficients. Closed under product, derivative and complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RadialFunction {
    terms: BTreeMap<RadMono, Coeff>,
}

impl RadialFunction {
    pub fn zero() -> Self {
        RadialFunction::default()
    }

    pub fn one() -> Self {
        RadialFunction::from_mono(RadMono::ONE)
    }

    pub fn from_mono(m: RadMono) -> Self {
        let mut f = RadialFunction::zero();
        f.add_term(m, Coeff::one());
        f
    }

    pub fn x1() -> Self {
        RadialFunction::from_mono(RadMono {
            x1: 1,
            ..RadMono::ONE
        })
    }

    pub fn x2() -> Self {
        RadialFunction::from_mono(RadMono {
            x2: 1,
            ..RadMono::ONE
        })
    }

    /// `r^n` for any integer `n` with `|n| ≤ 64`. Even powers are rho powers;
    /// positive even powers expand into polynomials.
    pub fn r_pow(n: i64) -> Result<Self, OpalgError> {
        if n.abs() > 64 {
            return Err(OpalgError::UnsupportedPower(n));
        }
        let t = n.rem_euclid(2);
        let q = (n - t) / 2;
        let base = RadialFunction::from_mono(RadMono {
            x1: 0,
            x2: 0,
            rho_inv: if q < 0 { (-q) as u32 } else { 0 },
            has_r: t == 1,
        });
        if q <= 0 {
            return Ok(base);
        }
        let rho = &RadialFunction::x1().mul(&RadialFunction::x1())
            + &RadialFunction::x2().mul(&RadialFunction::x2());
        let mut acc = base;
        for _ in 0..q {
            acc = acc.mul(&rho);
        }
        Ok(acc)
    }

    pub fn add_term(&mut self, m: RadMono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        for (rm, w) in m.reduce() {
            let wc = &c * &Coeff::from_int(w);
            match self.terms.entry(rm) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(wc);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &wc;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = RadialFunction::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, c * v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RadialFunction::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                for (m, w) in ma.mul(*mb) {
                    out.add_term(m, &c * &Coeff::from_int(w));
                }
            }
        }
        out
    }

    pub fn diff(&self, axis: usize) -> Self {
        let mut out = RadialFunction::zero();
        for (m, c) in &self.terms {
            for (dm, w) in m.diff(axis) {
                out.add_term(dm, c * &Coeff::from_int(w));
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = RadialFunction::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.conj());
        }
        out
    }

    /// Terms without the odd factor `r`.
    pub fn even_part(&self) -> Self {
        RadialFunction {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.has_r)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Terms carrying `r`, with the `r` stripped: the `g` in `f + g r`.
    pub fn odd_cofactor(&self) -> Self {
        RadialFunction {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.has_r)
                .map(|(m, c)| (RadMono { has_r: false, ..*m }, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x1: f64, x2: f64, vals: &ParamVals) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            acc += c.eval(vals) * m.eval(x1, x2);
        }
        acc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadMono, &Coeff)> {
        self.terms.iter()
    }
}

impl std::ops::Add for &RadialFunction {
    type Output = RadialFunction;
    fn add(self, rhs: &RadialFunction) -> RadialFunction {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &RadialFunction {
    type Output = RadialFunction;
    fn sub(self, rhs: &RadialFunction) -> RadialFunction {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}
