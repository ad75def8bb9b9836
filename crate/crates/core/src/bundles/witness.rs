use serde::Serialize;

use crate::algebra::{HbarSeries, LaurentPoly};
use crate::error::Result;
use crate::star::{StarContext, StarMatrix};

/// Gauge transformations produced by a reduction, replayable against its input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GaugeWitness {
    /// `alpha ⋆ f ⋆ a` with `alpha` on `V`, `a` on `U`.
    Line { alpha: HbarSeries, a: HbarSeries },
    /// `A_V ⋆ T ⋆ A_U`.
    Matrix { a_v: StarMatrix, a_u: StarMatrix },
    /// `p + beta ⋆ z^{-j} − z^j ⋆ b` with `beta` on `V`, `b` on `U`.
    Ext { j: i64, beta: HbarSeries, b: HbarSeries },
}

impl GaugeWitness {
    pub fn replay_line(&self, f: &HbarSeries, ctx: &StarContext) -> Option<HbarSeries> {
        match self {
            GaugeWitness::Line { alpha, a } => Some(ctx.star(&ctx.star(alpha, f), a)),
            _ => None,
        }
    }

    pub fn replay_matrix(&self, t: &StarMatrix) -> Option<Result<StarMatrix>> {
        match self {
            GaugeWitness::Matrix { a_v, a_u } => Some(a_v.mul(t).and_then(|m| m.mul(a_u))),
            _ => None,
        }
    }

    pub fn replay_ext(&self, p: &HbarSeries, ctx: &StarContext) -> Option<HbarSeries> {
        match self {
            GaugeWitness::Ext { j, beta, b } => {
                let order = ctx.order().min(p.order());
                let zj = HbarSeries::from_poly(LaurentPoly::monomial(*j, 0), order);
                let zmj = HbarSeries::from_poly(LaurentPoly::monomial(-*j, 0), order);
                let left = ctx.star(beta, &zmj);
                let right = ctx.star(&zj, b);
                Some(&(p + &left) - &right)
            }
            _ => None,
        }
    }
}
