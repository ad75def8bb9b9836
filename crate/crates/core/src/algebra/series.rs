//! Power series in `ħ` truncated at a fixed order, with `LaurentPoly` coefficients.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::laurent::{self, LaurentPoly};
use super::rational::Rational;

/// `sum_{n <= order} coeffs[n] ħ^n`; `coeffs.len() == order + 1` always.
/// Serializes as the list of per-order coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HbarSeries {
    coeffs: Vec<LaurentPoly>,
}

impl HbarSeries {
    pub fn zero(order: usize) -> Self {
        HbarSeries {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(LaurentPoly::one(), order)
    }

    /// `f` placed at `ħ^0`.
    pub fn from_poly(f: LaurentPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = f;
        s
    }

    /// Missing orders are zero; orders above `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        HbarSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    pub fn coeff_or_zero(&self, n: usize) -> LaurentPoly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn set_coeff(&mut self, n: usize, f: LaurentPoly) {
        if n <= self.order() {
            self.coeffs[n] = f;
        }
    }

    pub fn add_to_coeff(&mut self, n: usize, f: &LaurentPoly) {
        if n <= self.order() {
            self.coeffs[n] += f;
        }
    }

    /// The augmentation `ħ = 0`.
    pub fn classical_limit(&self) -> &LaurentPoly {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map<F>(&self, f: F) -> Self
    where
        F: FnMut(&LaurentPoly) -> LaurentPoly,
    {
        HbarSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Cauchy product with the ordinary (commutative) product of coefficients.
    pub fn mul_commutative(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (a, fa) in self.coeffs.iter().enumerate().take(order + 1) {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in other.coeffs.iter().enumerate().take(order + 1 - a) {
                out.coeffs[a + b] += &(fa * gb);
            }
        }
        out
    }

    pub fn display_with(&self, zname: &str, uname: &str) -> String {
        let mut s = String::new();
        write_series(&mut s, self, zname, uname).expect("writing to a String");
        s
    }
}

fn write_series<W: fmt::Write>(
    w: &mut W,
    s: &HbarSeries,
    zname: &str,
    uname: &str,
) -> fmt::Result {
    let mut first = true;
    for (n, f) in s.coeffs.iter().enumerate() {
        for (m, c) in f.terms() {
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => write!(w, "-")?,
                (true, false) => {}
                (false, true) => write!(w, " - ")?,
                (false, false) => write!(w, " + ")?,
            }
            first = false;
            if n == 0 {
                laurent::write_term_body(w, c, *m, zname, uname)?;
            } else if *m == laurent::Monomial::ONE && c.abs().is_one() {
                write!(w, "h^{n}")?;
            } else {
                laurent::write_term_body(w, c, *m, zname, uname)?;
                write!(w, " h^{n}")?;
            }
        }
    }
    if first {
        write!(w, "0")?;
    }
    Ok(())
}

impl Serialize for HbarSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, self, "z", "u")
    }
}

fn zip_with<F>(a: &HbarSeries, b: &HbarSeries, op: F) -> HbarSeries
where
    F: Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly,
{
    let order = a.order().min(b.order());
    HbarSeries {
        coeffs: (0..=order).map(|n| op(&a.coeffs[n], &b.coeffs[n])).collect(),
    }
}

impl<'a> Add<&'a HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn add(self, rhs: &'a HbarSeries) -> HbarSeries {
        zip_with(self, rhs, |f, g| f + g)
    }
}

impl<'a> Sub<&'a HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn sub(self, rhs: &'a HbarSeries) -> HbarSeries {
        zip_with(self, rhs, |f, g| f - g)
    }
}

impl Neg for &HbarSeries {
    type Output = HbarSeries;
    fn neg(self) -> HbarSeries {
        self.map(|f| -f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(cs: Vec<LaurentPoly>, order: usize) -> HbarSeries {
        HbarSeries::from_coeffs(cs, order)
    }

    #[test]
    fn classical_limit_drops_hbar() {
        let s = series(vec![LaurentPoly::u(), LaurentPoly::z()], 1);
        assert_eq!(s.classical_limit(), &LaurentPoly::u());
    }

    #[test]
    fn cauchy_product_truncates() {
        let one = LaurentPoly::one();
        let a = series(vec![one.clone(), one.clone()], 2);
        let b = series(vec![one.clone(), -&one], 2);
        let prod = a.mul_commutative(&b);
        assert_eq!(prod, series(vec![one.clone(), LaurentPoly::zero(), -&one], 2));
    }

    #[test]
    fn truncation() {
        let z = LaurentPoly::z();
        let s = series(vec![LaurentPoly::u(), z.clone(), &z * &z], 2);
        assert_eq!(s.truncate(1), series(vec![LaurentPoly::u(), z], 1));
    }

    #[test]
    fn mixed_orders_use_minimum() {
        let a = HbarSeries::one(3);
        let b = HbarSeries::one(1);
        assert_eq!((&a + &b).order(), 1);
    }

    #[test]
    fn display() {
        let s = series(
            vec![LaurentPoly::monomial(1, 1), LaurentPoly::u(), LaurentPoly::one()],
            2,
        );
        assert_eq!(s.to_string(), "z u + u h^1 + h^2");
    }
}
