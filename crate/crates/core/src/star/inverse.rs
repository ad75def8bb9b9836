use num_traits::One;

use super::StarContext;
use crate::algebra::{HbarSeries, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// `c z^l` with `c ≠ 0`: the units of `O(U ∩ V)`.
pub(crate) fn unit_inverse(f0: &LaurentPoly) -> Option<LaurentPoly> {
    let (m, c) = f0.as_single_term()?;
    if m.u != 0 {
        return None;
    }
    Some(LaurentPoly::term(Rational::one() / c, -m.z, 0))
}

/// Two-sided `⋆`-inverse up to the context's order.
///
/// The classical limit must be a unit `c z^l` of `O(U ∩ V)`.
pub fn hs_star_inverse(f: &HbarSeries, ctx: &StarContext) -> Result<HbarSeries> {
    let f0_inv = unit_inverse(f.classical_limit())
        .ok_or_else(|| Error::NonUnitClassicalLimit(f.classical_limit().to_string()))?;
    let order = ctx.order().min(f.order());
    let mut g = HbarSeries::from_poly(f0_inv.clone(), order);
    for n in 1..=order {
        let partial = ctx.star(f, &g);
        let rest = partial.coeff(n);
        g.set_coeff(n, -(&f0_inv * rest));
    }
    Ok(g)
}
