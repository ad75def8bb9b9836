//! Star products on `Z_k`.
//!
//! Products are computed on a quantizable chart, `U` by default. Constant
//! `σ` uses the Moyal product at any truncation order; polynomial `σ` uses
//! the Kontsevich product through `ħ²`. Products in the other chart's
//! coordinates are obtained by conjugating with the change of coordinates.
//!
//! `Z_k` is symmetric under exchanging the charts. A structure that is not
//! tangent to `{ξ = 0}` but is tangent to `{z = 0}` (`σ_U` divisible by `z`)
//! is quantized on `V` instead, with `σ_V` in `(ξ, v)` coordinates.

mod closure;
mod inverse;
mod kontsevich;
mod matrix;
mod moyal;

use serde::Serialize;

use crate::algebra::{to_u_chart, to_v_chart, ChartId, HbarSeries, LaurentPoly};
use crate::error::{Error, Result};
use crate::poisson::PoissonStructure;

pub use closure::{closure_check, global_monomials, monomial_pairs, ClosureResult};
pub use inverse::hs_star_inverse;
pub use kontsevich::{kontsevich2_bidifferential, kontsevich2_star};
pub use matrix::StarMatrix;
pub use moyal::{monomial_star_coefficient, moyal_bidifferential, moyal_star};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Engine {
    MoyalConstant,
    KontsevichOrder2,
}

/// Chart whose coordinates carry the Moyal or Kontsevich formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuantChart {
    U,
    V,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarContext {
    sigma: PoissonStructure,
    order: usize,
    engine: Engine,
    chart: QuantChart,
}

/// `U` unless `σ` is tangent to `{z = 0}` but not to `{ξ = 0}`.
pub fn default_chart(sigma: &PoissonStructure) -> QuantChart {
    let tangent_v_side = !sigma.sigma_u().is_zero() && sigma.sigma_u().monomials().all(|m| m.z >= 1);
    if !crate::poisson::is_tangent_to_fiber(sigma) && tangent_v_side {
        QuantChart::V
    } else {
        QuantChart::U
    }
}

fn chart_coefficient(sigma: &PoissonStructure, chart: QuantChart) -> LaurentPoly {
    match chart {
        QuantChart::U => sigma.sigma_u().clone(),
        QuantChart::V => sigma.sigma_v(),
    }
}

impl StarContext {
    /// Default chart; Moyal for constant `σ`, otherwise Kontsevich (which caps `order` at 2).
    pub fn new(sigma: PoissonStructure, order: usize) -> Result<Self> {
        let chart = default_chart(&sigma);
        Self::on_chart(sigma, order, chart)
    }

    /// Engine chosen from the coefficient of `σ` on `chart`.
    pub fn on_chart(sigma: PoissonStructure, order: usize, chart: QuantChart) -> Result<Self> {
        let engine = if chart_coefficient(&sigma, chart).is_constant() {
            Engine::MoyalConstant
        } else {
            Engine::KontsevichOrder2
        };
        Self::build(sigma, order, engine, chart)
    }

    /// Explicit engine on the `U` chart.
    pub fn with_engine(sigma: PoissonStructure, order: usize, engine: Engine) -> Result<Self> {
        Self::build(sigma, order, engine, QuantChart::U)
    }

    fn build(sigma: PoissonStructure, order: usize, engine: Engine, chart: QuantChart) -> Result<Self> {
        let coeff = chart_coefficient(&sigma, chart);
        match engine {
            Engine::MoyalConstant if !coeff.is_constant() => Err(Error::UnsupportedEngine(
                format!("Moyal needs a constant coefficient, got {coeff}"),
            )),
            Engine::KontsevichOrder2 if order > 2 => Err(Error::UnsupportedEngine(format!(
                "Kontsevich weights are only implemented through order 2, asked for {order}"
            ))),
            _ => Ok(StarContext {
                sigma,
                order,
                engine,
                chart,
            }),
        }
    }

    pub fn sigma(&self) -> &PoissonStructure {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn k(&self) -> u32 {
        self.sigma.k()
    }

    pub fn quant_chart(&self) -> QuantChart {
        self.chart
    }

    /// Same structure, different cutoff.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::build(self.sigma.clone(), order, self.engine, self.chart)
    }

    /// `B_n(f, g)` with inputs and output in `U` coordinates.
    pub fn bidifferential(&self, n: usize, f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
        match self.chart {
            QuantChart::U => self.local_bidifferential(n, f, g),
            QuantChart::V => {
                let k = self.k();
                let out = self.local_bidifferential(n, &to_v_chart(f, k), &to_v_chart(g, k));
                to_u_chart(&out, k)
            }
        }
    }

    /// `B_n` in the coordinates of the quantizable chart.
    fn local_bidifferential(&self, n: usize, f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
        let coeff = chart_coefficient(&self.sigma, self.chart);
        match self.engine {
            Engine::MoyalConstant => moyal_bidifferential(n as u32, f, g, &coeff.constant_term()),
            Engine::KontsevichOrder2 => {
                kontsevich2_bidifferential(n, f, g, &coeff).expect("context caps the order at 2")
            }
        }
    }

    /// `f ⋆ g` in `U` coordinates, truncated at the smallest of the three orders.
    pub fn star(&self, f: &HbarSeries, g: &HbarSeries) -> HbarSeries {
        let order = self.order.min(f.order()).min(g.order());
        let mut out = HbarSeries::zero(order);
        for (a, fa) in f.coeffs().iter().enumerate().take(order + 1) {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.coeffs().iter().enumerate().take(order + 1 - a) {
                if gb.is_zero() {
                    continue;
                }
                for n in 0..=order - a - b {
                    let term = self.bidifferential(n, fa, gb);
                    out.add_to_coeff(a + b + n, &term);
                }
            }
        }
        out
    }

    pub fn star_poly(&self, f: &LaurentPoly, g: &LaurentPoly) -> HbarSeries {
        self.star(
            &HbarSeries::from_poly(f.clone(), self.order),
            &HbarSeries::from_poly(g.clone(), self.order),
        )
    }

    /// Series lifted to this context's order.
    pub fn lift(&self, f: &LaurentPoly) -> HbarSeries {
        HbarSeries::from_poly(f.clone(), self.order)
    }

    /// `f ⋆ g` with inputs and output in the coordinates of `chart`.
    pub fn star_on_chart(&self, f: &HbarSeries, g: &HbarSeries, chart: ChartId) -> HbarSeries {
        match chart {
            ChartId::V => {
                let k = self.k();
                let fu = f.map(|p| to_u_chart(p, k));
                let gu = g.map(|p| to_u_chart(p, k));
                self.star(&fu, &gu).map(|p| to_v_chart(p, k))
            }
            _ => self.star(f, g),
        }
    }
}

/// `f ⋆ g` on a chart, as a free function.
pub fn star_on_chart(
    f: &HbarSeries,
    g: &HbarSeries,
    ctx: &StarContext,
    chart: ChartId,
) -> HbarSeries {
    ctx.star_on_chart(f, g, chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::expr::parse_series;

    fn ctx(k: u32, sigma: LaurentPoly, order: usize) -> StarContext {
        StarContext::new(PoissonStructure::new(k, sigma).unwrap(), order).unwrap()
    }

    fn s(text: &str, order: usize) -> HbarSeries {
        parse_series(text, order).unwrap()
    }

    #[test]
    fn engine_selection() {
        assert_eq!(ctx(1, LaurentPoly::one(), 4).engine(), Engine::MoyalConstant);
        assert_eq!(ctx(1, LaurentPoly::u(), 2).engine(), Engine::KontsevichOrder2);
        let sigma = PoissonStructure::new(1, LaurentPoly::u()).unwrap();
        assert!(StarContext::new(sigma.clone(), 3).is_err());
        assert!(StarContext::with_engine(sigma, 1, Engine::MoyalConstant).is_err());
    }

    #[test]
    fn chart_selection() {
        assert_eq!(ctx(1, LaurentPoly::one(), 2).quant_chart(), QuantChart::U);
        let c = ctx(1, LaurentPoly::z(), 2);
        assert_eq!((c.quant_chart(), c.engine()), (QuantChart::V, Engine::MoyalConstant));
        let c = ctx(3, LaurentPoly::monomial(2, 1), 2);
        assert_eq!((c.quant_chart(), c.engine()), (QuantChart::V, Engine::KontsevichOrder2));
        assert_eq!(ctx(3, LaurentPoly::monomial(1, 1), 2).quant_chart(), QuantChart::U);
        assert_eq!(ctx(2, LaurentPoly::one(), 2).quant_chart(), QuantChart::U);
    }

    #[test]
    fn v_quantized_product_has_first_order_bracket() {
        // σ = z on Z_1: {z, u} = z
        let c = ctx(1, LaurentPoly::z(), 1);
        assert_eq!(c.star_poly(&LaurentPoly::z(), &LaurentPoly::u()), s("z u + z h", 1));
    }

    #[test]
    fn v_chart_products() {
        let c = ctx(1, LaurentPoly::one(), 1);
        let xi = s("xi", 1);
        let v = s("v", 1);
        assert_eq!(c.star_on_chart(&xi, &v, ChartId::V), s("xi v - xi h", 1));
        let c = ctx(1, LaurentPoly::one(), 2);
        let v = s("v", 2);
        let xi = s("xi", 2);
        assert_eq!(c.star_on_chart(&v, &v, ChartId::V), s("v^2 - h^2", 2));
        assert_eq!(c.star_on_chart(&xi, &xi, ChartId::V), s("xi^2", 2));
    }

    #[test]
    fn series_inputs_shift_orders() {
        let c = ctx(1, LaurentPoly::one(), 2);
        // (z + h) * u = z u + h + h u
        let out = c.star(&s("z + h", 2), &s("u", 2));
        assert_eq!(out, s("z u + h + u h", 2));
        let scaled = c.star(&s("2 z", 2), &s("u", 2));
        assert_eq!(scaled.coeff(1), &LaurentPoly::constant(int(2)));
    }
}
