use num_traits::{One, Zero};

use crate::algebra::rational::{binomial, factorial, falling_factorial};
use crate::algebra::{HbarSeries, LaurentPoly, Rational};

/// `B_n(f, g) = (cⁿ/n!) Σ_r (−1)^r C(n,r) ∂z^{n−r}∂u^r f · ∂z^r∂u^{n−r} g`.
pub fn moyal_bidifferential(n: u32, f: &LaurentPoly, g: &LaurentPoly, c: &Rational) -> LaurentPoly {
    if n == 0 {
        return f * g;
    }
    if c.is_zero() {
        return LaurentPoly::zero();
    }
    let mut acc = LaurentPoly::zero();
    for r in 0..=n {
        let df = f.derive_zu(n - r, r);
        if df.is_zero() {
            continue;
        }
        let dg = g.derive_zu(r, n - r);
        if dg.is_zero() {
            continue;
        }
        let mut w = Rational::from_integer(binomial(n, r));
        if r % 2 == 1 {
            w = -w;
        }
        acc += &(&df * &dg).scale(&w);
    }
    let weight = num_traits::pow(c.clone(), n as usize) / Rational::from_integer(factorial(n));
    acc.scale(&weight)
}

/// Moyal product with constant `σ_U = c`, truncated at `ħ^order`.
pub fn moyal_star(f: &HbarSeries, g: &HbarSeries, c: &Rational, order: usize) -> HbarSeries {
    let order = order.min(f.order()).min(g.order());
    let mut out = HbarSeries::zero(order);
    for (a, fa) in f.coeffs().iter().enumerate().take(order + 1) {
        for (b, gb) in g.coeffs().iter().enumerate().take(order + 1 - a) {
            if fa.is_zero() || gb.is_zero() {
                continue;
            }
            for n in 0..=(order - a - b) {
                out.add_to_coeff(a + b + n, &moyal_bidifferential(n as u32, fa, gb, c));
            }
        }
    }
    out
}

/// `a_n` in `z^{l1}u^{i1} ⋆ z^{l2}u^{i2} = Σ a_n z^{l1+l2−n} u^{i1+i2−n} ħⁿ`.
pub fn monomial_star_coefficient(
    l1: i64,
    i1: u32,
    l2: i64,
    i2: u32,
    n: u32,
    c: &Rational,
) -> Rational {
    let mut sum = num_bigint::BigInt::zero();
    for r in 0..=n {
        let t = binomial(n, r)
            * falling_factorial(l1, n - r)
            * falling_factorial(i1 as i64, r)
            * falling_factorial(l2, r)
            * falling_factorial(i2 as i64, n - r);
        if r % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
    }
    let cn = if n == 0 {
        Rational::one()
    } else {
        num_traits::pow(c.clone(), n as usize)
    };
    Rational::from_integer(sum) * cn / Rational::from_integer(factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::expr::parse_series;

    #[test]
    fn canonical_commutator() {
        let one = int(1);
        let z = parse_series("z", 2).unwrap();
        let u = parse_series("u", 2).unwrap();
        assert_eq!(moyal_star(&z, &u, &one, 2), parse_series("z u + h", 2).unwrap());
        assert_eq!(moyal_star(&u, &z, &one, 2), parse_series("z u - h", 2).unwrap());
    }

    #[test]
    fn non_closure_pair() {
        let one = int(1);
        let f = parse_series("z^2 u", 2).unwrap();
        let g = parse_series("z u", 2).unwrap();
        let expected = parse_series("z^3 u^2 + z^2 u h - 2 z h^2", 2).unwrap();
        assert_eq!(moyal_star(&f, &g, &one, 2), expected);
    }

    #[test]
    fn closed_form_coefficients() {
        let one = int(1);
        assert_eq!(monomial_star_coefficient(3, 2, -1, 4, 0, &one), int(1));
        assert_eq!(monomial_star_coefficient(3, 2, -1, 4, 1, &one), int(3 * 4 + 2));
        assert_eq!(monomial_star_coefficient(2, 1, 1, 1, 2, &one), int(-2));
        assert_eq!(monomial_star_coefficient(1, 0, 0, 1, 1, &int(3)), int(3));
    }
}
