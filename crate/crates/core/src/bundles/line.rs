use num_traits::One;
use serde::Serialize;

use super::split::split_h1;
use super::witness::GaugeWitness;
use crate::algebra::{HbarSeries, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::star::StarContext;

/// A line bundle given by its transition function over `U ∩ V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineBundleRep {
    pub f: HbarSeries,
    #[serde(skip)]
    pub ctx: StarContext,
}

impl LineBundleRep {
    pub fn new(f: HbarSeries, ctx: &StarContext) -> Self {
        LineBundleRep {
            f,
            ctx: ctx.clone(),
        }
    }
}

/// `(c, m)` when `f₀ = c z^m`.
pub(crate) fn classical_unit(f0: &LaurentPoly) -> Result<(Rational, i64)> {
    match f0.as_single_term() {
        Some((m, c)) if m.u == 0 => Ok((c.clone(), m.z)),
        _ => Err(Error::NonUnitClassicalLimit(f0.to_string())),
    }
}

/// Finds `j` and gauges `alpha` (on `V`), `a` (on `U`) with `alpha ⋆ f ⋆ a = z^{-j}`.
///
/// Order by order, `S_n` is the `ħⁿ` coefficient of the product with the
/// new corrections set to zero; `−z^j S_n` is split into its `U` part
/// (non-negative powers of `z`, giving `a_n`) and its `V` part (giving `α_n`).
pub fn line_bundle_normalize(l: &LineBundleRep) -> Result<(i64, GaugeWitness)> {
    let ctx = &l.ctx;
    let order = ctx.order().min(l.f.order());
    let (c, m) = classical_unit(l.f.classical_limit())?;
    let j = -m;
    let c_inv = Rational::one() / &c;
    let mut alpha = HbarSeries::one(order);
    let mut a = HbarSeries::from_poly(LaurentPoly::constant(c_inv.clone()), order);
    let f = l.f.truncate(order);
    for n in 1..=order {
        let s_n = ctx.star(&ctx.star(&alpha, &f), &a).coeff(n).clone();
        if s_n.is_zero() {
            continue;
        }
        let target = -s_n.mul_z_pow(j);
        let split = split_h1(&target, 0, 0, ctx.k());
        debug_assert!(split.is_exact(), "H^1(O) vanishes");
        a.set_coeff(n, split.x_u.scale(&c_inv));
        alpha.set_coeff(n, split.x_v);
    }
    Ok((j, GaugeWitness::Line { alpha, a }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_series;
    use crate::poisson::PoissonStructure;

    fn sigma0(order: usize) -> StarContext {
        StarContext::new(PoissonStructure::new(1, LaurentPoly::one()).unwrap(), order).unwrap()
    }

    fn check(f: &str, ctx: &StarContext) -> (i64, HbarSeries, HbarSeries) {
        let f = parse_series(f, ctx.order()).unwrap();
        let rep = LineBundleRep::new(f.clone(), ctx);
        let (j, w) = line_bundle_normalize(&rep).unwrap();
        let replay = w.replay_line(&f, ctx).unwrap();
        assert_eq!(replay, HbarSeries::from_poly(LaurentPoly::monomial(-j, 0), ctx.order()));
        match w {
            GaugeWitness::Line { alpha, a } => (j, alpha, a),
            _ => unreachable!(),
        }
    }

    #[test]
    fn u_side_correction() {
        let (j, alpha, a) = check("z^-2 + u h", &sigma0(1));
        assert_eq!(j, 2);
        assert_eq!(a.coeff(1), &-LaurentPoly::monomial(2, 1));
        assert!(alpha.coeff(1).is_zero());
    }

    #[test]
    fn v_side_correction() {
        let (j, alpha, a) = check("z^-1 + z^-3 h", &sigma0(1));
        assert_eq!(j, 1);
        assert!(a.coeff(1).is_zero());
        assert_eq!(alpha.coeff(1), &-LaurentPoly::monomial(-2, 0));
    }

    #[test]
    fn exact_powers_need_nothing() {
        for j in -3..=3 {
            let ctx = sigma0(3);
            let f = HbarSeries::from_poly(LaurentPoly::monomial(-j, 0), 3);
            let (jj, w) = line_bundle_normalize(&LineBundleRep::new(f, &ctx)).unwrap();
            assert_eq!(jj, j);
            assert_eq!(
                w,
                GaugeWitness::Line {
                    alpha: HbarSeries::one(3),
                    a: HbarSeries::one(3)
                }
            );
        }
    }

    #[test]
    fn higher_orders_and_scalars() {
        check("-3 z^2 + z u h + z^-4 u^2 h^2 + z^3 h^3", &sigma0(3));
        let ctx = StarContext::new(PoissonStructure::new(1, LaurentPoly::u()).unwrap(), 2).unwrap();
        check("1/2 z^-1 + z^2 u h - z^-2 h^2", &ctx);
    }

    #[test]
    fn rejects_non_units() {
        let ctx = sigma0(1);
        let f = parse_series("z + u", 1).unwrap();
        assert!(line_bundle_normalize(&LineBundleRep::new(f, &ctx)).is_err());
    }
}
