//! Sparse Laurent polynomials in `z` with polynomial dependence on `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use super::rational::{self, Rational};

/// Exponent pair of `z^z u^u`.
///
/// Field order gives the canonical term order: lexicographic on
/// `(u-exponent, z-exponent)`. On the `V` chart the same type stores
/// `(xi-exponent, v-exponent)` in the `(z, u)` slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub u: u32,
    pub z: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u: 0, z: 0 };

    pub fn new(z: i64, u: u32) -> Self {
        Monomial { u, z }
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial {
            u: self.u + other.u,
            z: self.z + other.z,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, *self, "z", "u")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Z,
    U,
}

/// Serializes as its canonical text form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn monomial(z: i64, u: u32) -> Self {
        Self::term(Rational::one(), z, u)
    }

    pub fn term(c: Rational, z: i64, u: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(z, u), c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `z` as a polynomial.
    pub fn z() -> Self {
        Self::monomial(1, 0)
    }

    /// `u` as a polynomial.
    pub fn u() -> Self {
        Self::monomial(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_at(&self, z: i64, u: u32) -> Rational {
        self.coeff(Monomial::new(z, u))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// The single `(monomial, coefficient)` pair, if there is exactly one term.
    pub fn as_single_term(&self) -> Option<(Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    /// Constant polynomial (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Monomial::ONE)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiply by `c z^dz u^du`.
    pub fn shift(&self, c: &Rational, dz: i64, du: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let step = Monomial::new(dz, du);
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.times(step), a * c))
                .collect(),
        }
    }

    pub fn mul_z_pow(&self, dz: i64) -> Self {
        self.shift(&Rational::one(), dz, 0)
    }

    pub fn derive(&self, var: Var) -> Self {
        self.derive_n(var, 1)
    }

    /// `n`-th partial derivative. Terms constant in the variable are dropped,
    /// so `u`-exponents never go negative.
    pub fn derive_n(&self, var: Var, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (factor, next) = match var {
                Var::Z => (
                    rational::falling_factorial(m.z, n),
                    Monomial::new(m.z - n as i64, m.u),
                ),
                Var::U => {
                    if m.u < n {
                        continue;
                    }
                    (
                        rational::falling_factorial(m.u as i64, n),
                        Monomial::new(m.z, m.u - n),
                    )
                }
            };
            if factor.is_zero() {
                continue;
            }
            out.add_term(next, c * Rational::from_integer(factor));
        }
        out
    }

    /// Mixed derivative `d_z^a d_u^b`.
    pub fn derive_zu(&self, a: u32, b: u32) -> Self {
        self.derive_n(Var::Z, a).derive_n(Var::U, b)
    }

    /// Drop every term with `u`-exponent above `max_u` (e.g. `u^2 = 0` for `max_u = 1`).
    pub fn truncate_u(&self, max_u: u32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.u <= max_u)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Keep only the `u^0` part.
    pub fn restrict_to_zero_section(&self) -> Self {
        self.truncate_u(0)
    }

    /// The part of the polynomial of exact `u`-degree `i`.
    pub fn u_component(&self, i: u32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.u == i)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn filter<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(Monomial) -> bool,
    {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn max_u(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.u).max()
    }

    pub fn min_z(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.z).min()
    }

    pub fn max_z(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.z).max()
    }

    /// Every `u`-exponent at least one, i.e. a multiple of `u`.
    pub fn is_multiple_of_u(&self) -> bool {
        self.terms.keys().all(|m| m.u >= 1)
    }

    pub fn map_monomials<F>(&self, mut f: F) -> Self
    where
        F: FnMut(Monomial) -> Monomial,
    {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// `true` when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Largest absolute numerator; handy for bounding random fixtures.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Render with custom variable names (`xi`/`v` on the V chart).
    pub fn display_with(&self, zname: &str, uname: &str) -> String {
        let mut s = String::new();
        write_poly(&mut s, self, zname, uname).expect("writing to a String");
        s
    }
}

pub(crate) fn write_monomial<W: fmt::Write>(
    w: &mut W,
    m: Monomial,
    zname: &str,
    uname: &str,
) -> fmt::Result {
    let mut first = true;
    if m.z != 0 {
        if m.z == 1 {
            write!(w, "{zname}")?;
        } else {
            write!(w, "{zname}^{}", m.z)?;
        }
        first = false;
    }
    if m.u != 0 {
        if !first {
            write!(w, " ")?;
        }
        if m.u == 1 {
            write!(w, "{uname}")?;
        } else {
            write!(w, "{uname}^{}", m.u)?;
        }
        first = false;
    }
    if first {
        write!(w, "1")?;
    }
    Ok(())
}

/// Writes `c m` with an explicit leading sign handled by the caller.
pub(crate) fn write_term_body<W: fmt::Write>(
    w: &mut W,
    c: &Rational,
    m: Monomial,
    zname: &str,
    uname: &str,
) -> fmt::Result {
    let a = c.abs();
    if m == Monomial::ONE {
        return write!(w, "{}", rational::format_rational(&a));
    }
    if !rational::is_one(&a) {
        write!(w, "{} ", rational::format_rational(&a))?;
    }
    write_monomial(w, m, zname, uname)
}

pub(crate) fn write_poly<W: fmt::Write>(
    w: &mut W,
    p: &LaurentPoly,
    zname: &str,
    uname: &str,
) -> fmt::Result {
    if p.is_zero() {
        return write!(w, "0");
    }
    for (idx, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => write!(w, "-")?,
            (0, false) => {}
            (_, true) => write!(w, " - ")?,
            (_, false) => write!(w, " + ")?,
        }
        write_term_body(w, c, *m, zname, uname)?;
    }
    Ok(())
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, "z", "u")
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &'a LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &'a LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
