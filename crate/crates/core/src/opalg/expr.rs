//! Normal-ordered operator expressions and the rewriting that keeps them
//! canonical under sums, products, adjoints and brackets.
//!
//! A term is `coeff * m * p1^c * p2^d` with `m` a reduced [`RadMono`]. The
//! product rule that moves momenta left past a radial factor is
//!
//! ```text
//! p1^a p2^b f = sum_{j<=a, k<=b} C(a,j) C(b,k) (-i)^(j+k)
//!               (d1^j d2^k f) p1^(a-j) p2^(b-k)
//! ```
//!
//! which follows from `p_i f = f p_i - i (d_i f)` by induction; derivatives of
//! basis monomials stay in the basis, so products land back in canonical form.

use super::coeff::{Coeff, ParamVals};
use super::gauss::GaussRat;
use super::radial::{RadMono, RadialFunction};
use super::OpalgError;
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Monomial key of one normal-ordered term: radial part times `p1^p1 p2^p2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermKey {
    pub rad: RadMono,
    pub p1: u32,
    pub p2: u32,
}

impl TermKey {
    pub const ONE: TermKey = TermKey {
        rad: RadMono::ONE,
        p1: 0,
        p2: 0,
    };

    /// Graded ordering: momentum degree, then momentum split, then the radial
    /// signature. Map iteration order equals display order.
    fn grade(&self) -> (u32, u32, bool, u32, u32, u32) {
        (
            self.p1 + self.p2,
            self.p1,
            self.rad.has_r,
            self.rad.rho_inv,
            self.rad.x1 + self.rad.x2,
            self.rad.x1,
        )
    }
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grade().cmp(&other.grade())
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An operator in canonical normal-ordered form. Constructors and all algebra
/// operations preserve canonicity, so `is_zero` on a difference is an exact
/// identity test.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<TermKey, Coeff>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn one() -> Self {
        OperatorExpr::scalar(Coeff::one())
    }

    pub fn scalar(c: Coeff) -> Self {
        let mut e = OperatorExpr::zero();
        e.add_term(TermKey::ONE, c);
        e
    }

    pub fn x1() -> Self {
        OperatorExpr::from_radial(&RadialFunction::x1())
    }

    pub fn x2() -> Self {
        OperatorExpr::from_radial(&RadialFunction::x2())
    }

    pub fn p1() -> Self {
        let mut e = OperatorExpr::zero();
        e.add_term(
            TermKey {
                rad: RadMono::ONE,
                p1: 1,
                p2: 0,
            },
            Coeff::one(),
        );
        e
    }

    pub fn p2() -> Self {
        let mut e = OperatorExpr::zero();
        e.add_term(
            TermKey {
                rad: RadMono::ONE,
                p1: 0,
                p2: 1,
            },
            Coeff::one(),
        );
        e
    }

    /// `r^n` as a multiplication operator, any integer `n` with `|n| ≤ 64`.
    pub fn r_pow(n: i64) -> Result<Self, OpalgError> {
        Ok(OperatorExpr::from_radial(&RadialFunction::r_pow(n)?))
    }

    pub fn from_radial(f: &RadialFunction) -> Self {
        let mut e = OperatorExpr::zero();
        for (m, c) in f.terms() {
            e.add_term(
                TermKey {
                    rad: *m,
                    p1: 0,
                    p2: 0,
                },
                c.clone(),
            );
        }
        e
    }

    /// Insert `c` times the key's monomial, reducing the radial part to the
    /// basis and merging. The only mutation path, so canonicity is invariant.
    pub(crate) fn add_term(&mut self, key: TermKey, c: Coeff) {
        if c.is_zero() {
            return;
        }
        for (rm, w) in key.rad.reduce() {
            let k = TermKey { rad: rm, ..key };
            let wc = if w == 1 {
                c.clone()
            } else {
                &c * &Coeff::from_int(w)
            };
            match self.terms.entry(k) {
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

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Coeff)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = OperatorExpr::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, c * v);
        }
        out
    }

    pub fn scale_i(&self) -> Self {
        self.scale(&Coeff::i())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        OperatorExpr {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// Noncommutative product, normal-ordered.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = OperatorExpr::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let c = ca * cb;
                // Move p1^a p2^b of the left term past the radial part of the
                // right term, then multiply radial parts and append momenta.
                for (pc, m, rp1, rp2) in push_momenta(ka.p1, ka.p2, kb.rad) {
                    let cc = &c * &pc;
                    for (pm, w) in ka.rad.mul(m) {
                        out.add_term(
                            TermKey {
                                rad: pm,
                                p1: rp1 + kb.p1,
                                p2: rp2 + kb.p2,
                            },
                            &cc * &Coeff::from_int(w),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = OperatorExpr::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).add(&rhs.mul(self))
    }

    /// Formal adjoint with respect to the flat L2 inner product; `x_i`, `r`
    /// and `p_i` are self-adjoint, scalars conjugate, order reverses.
    pub fn adjoint(&self) -> Self {
        let mut out = OperatorExpr::zero();
        for (k, c) in &self.terms {
            // (c m p1^a p2^b)^dag = conj(c) p1^a p2^b m; the push-through
            // formula is the normal ordering of that product.
            let cc = c.conj();
            for (pc, m, rp1, rp2) in push_momenta(k.p1, k.p2, k.rad) {
                out.add_term(
                    TermKey {
                        rad: m,
                        p1: rp1,
                        p2: rp2,
                    },
                    &cc * &pc,
                );
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    /// Collect the purely radial part (terms with no momenta) as a
    /// [`RadialFunction`]; `None` if any term carries momenta.
    pub fn as_radial(&self) -> Option<RadialFunction> {
        let mut f = RadialFunction::zero();
        for (k, c) in &self.terms {
            if k.p1 != 0 || k.p2 != 0 {
                return None;
            }
            f.add_term(k.rad, c.clone());
        }
        Some(f)
    }

    /// Evaluate coefficients at parameter values; keys stay exact. Used by
    /// the numeric layer to apply an exact operator on a grid.
    pub fn eval_coeffs(&self, vals: &ParamVals) -> Vec<(TermKey, Complex64)> {
        self.terms.iter().map(|(k, c)| (*k, c.eval(vals))).collect()
    }

    /// Build from an expression tree.
    pub fn from_tree(tree: &ExprTree) -> Result<Self, OpalgError> {
        match tree {
            ExprTree::X1 => Ok(OperatorExpr::x1()),
            ExprTree::X2 => Ok(OperatorExpr::x2()),
            ExprTree::P1 => Ok(OperatorExpr::p1()),
            ExprTree::P2 => Ok(OperatorExpr::p2()),
            ExprTree::R(n) => OperatorExpr::r_pow(*n),
            ExprTree::Scalar(c) => Ok(OperatorExpr::scalar(c.clone())),
            ExprTree::Neg(t) => Ok(OperatorExpr::from_tree(t)?.neg()),
            ExprTree::Add(ts) => {
                let mut acc = OperatorExpr::zero();
                for t in ts {
                    acc = acc.add(&OperatorExpr::from_tree(t)?);
                }
                Ok(acc)
            }
            ExprTree::Mul(ts) => {
                let mut acc = OperatorExpr::one();
                for t in ts {
                    acc = acc.mul(&OperatorExpr::from_tree(t)?);
                }
                Ok(acc)
            }
        }
    }
}

/// Unevaluated operator expression tree, the input shape for canonicalization
/// and for randomized engine tests.
#[derive(Clone, Debug)]
pub enum ExprTree {
    X1,
    X2,
    P1,
    P2,
    /// `r^n`, any integer power.
    R(i64),
    Scalar(Coeff),
    Neg(Box<ExprTree>),
    Add(Vec<ExprTree>),
    Mul(Vec<ExprTree>),
}

/// All pieces of `p1^a p2^b * m` in normal order: tuples
/// `(coeff, monomial, remaining p1, remaining p2)`.
fn push_momenta(a: u32, b: u32, m: RadMono) -> Vec<(Coeff, RadMono, u32, u32)> {
    if m == RadMono::ONE {
        return vec![(Coeff::one(), m, a, b)];
    }
    // d[j][k] = d1^j d2^k m as a radial function.
    let mut rows: Vec<Vec<RadialFunction>> = Vec::with_capacity(a as usize + 1);
    let mut first = RadialFunction::zero();
    first.add_term(m, Coeff::one());
    let mut row0 = vec![first];
    for k in 1..=b as usize {
        let d = row0[k - 1].diff(1);
        row0.push(d);
    }
    rows.push(row0);
    for j in 1..=a as usize {
        let prev = &rows[j - 1];
        let row: Vec<RadialFunction> = prev.iter().map(|f| f.diff(0)).collect();
        rows.push(row);
    }
    let mut out = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        for (k, d) in row.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let comb = binomial(a, j as u32) * binomial(b, k as u32);
            let base = Coeff::scalar(GaussRat::from_int(comb).mul_i_pow(-(j as i64 + k as i64)));
            for (dm, dc) in d.terms() {
                out.push((&base * dc, *dm, a - j as u32, b - k as u32));
            }
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

impl fmt::Display for OperatorExpr {
    /// One line per term: `coeff | radial | p1exp p2exp`, in graded order.
    /// The zero operator prints as a single `0` line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "{} | {} | {} {}", c, k.rad, k.p1, k.p2)?;
        }
        Ok(())
    }
}
