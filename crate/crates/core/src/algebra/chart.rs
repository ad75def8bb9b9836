//! The two-chart cover of `Z_k` and the coordinate change `(xi, v) = (z^-1, z^k u)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::{LaurentPoly, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartId {
    U,
    V,
    UV,
    /// All of `Z_k`.
    Global(u32),
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartId::U => write!(f, "U"),
            ChartId::V => write!(f, "V"),
            ChartId::UV => write!(f, "UV"),
            ChartId::Global(k) => write!(f, "Z_{k}"),
        }
    }
}

/// `z^l u^i` in `(z, u)` coordinates becomes `xi^{k i - l} v^i`.
pub fn monomial_to_v(m: Monomial, k: u32) -> Monomial {
    Monomial::new(k as i64 * m.u as i64 - m.z, m.u)
}

/// Inverse of [`monomial_to_v`]: `xi^a v^b` becomes `z^{k b - a} u^b`.
pub fn monomial_to_u(m: Monomial, k: u32) -> Monomial {
    Monomial::new(k as i64 * m.u as i64 - m.z, m.u)
}

/// Rewrite a function on `U ∩ V` from `(z, u)` to `(xi, v)` coordinates.
pub fn to_v_chart(f: &LaurentPoly, k: u32) -> LaurentPoly {
    f.map_monomials(|m| monomial_to_v(m, k))
}

/// Rewrite a function on `U ∩ V` from `(xi, v)` to `(z, u)` coordinates.
pub fn to_u_chart(f: &LaurentPoly, k: u32) -> LaurentPoly {
    f.map_monomials(|m| monomial_to_u(m, k))
}

/// Whether `z^l u^i` (in `U` coordinates) is holomorphic on `chart`.
pub fn monomial_in_chart(m: Monomial, chart: ChartId, k: u32) -> bool {
    let bound = k as i64 * m.u as i64;
    match chart {
        ChartId::UV => true,
        ChartId::U => m.z >= 0,
        ChartId::V => m.z <= bound,
        ChartId::Global(kk) => m.z >= 0 && m.z <= kk as i64 * m.u as i64,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub offenders: Vec<Monomial>,
}

/// Checks the monomial bounds of each chart for `f` given in `(z, u)` coordinates.
///
/// `k` is used for the `V` bound; `Global` carries its own `k`.
pub fn chart_member(f: &LaurentPoly, chart: ChartId, k: u32) -> Membership {
    let offenders: Vec<Monomial> = f
        .monomials()
        .filter(|m| !monomial_in_chart(*m, chart, k))
        .collect();
    Membership {
        member: offenders.is_empty(),
        offenders,
    }
}

pub fn is_member(f: &LaurentPoly, chart: ChartId, k: u32) -> bool {
    f.monomials().all(|m| monomial_in_chart(m, chart, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_chart_rule() {
        let f = LaurentPoly::monomial(2, 1);
        assert_eq!(to_v_chart(&f, 1), LaurentPoly::monomial(-1, 1));
        assert_eq!(to_v_chart(&f, 2), LaurentPoly::monomial(0, 1));
        assert_eq!(to_v_chart(&LaurentPoly::u(), 1), LaurentPoly::monomial(1, 1));
    }

    #[test]
    fn round_trip() {
        let f = LaurentPoly::monomial(-3, 4) + LaurentPoly::monomial(5, 0);
        for k in 1..5 {
            assert_eq!(to_u_chart(&to_v_chart(&f, k), k), f);
        }
    }

    #[test]
    fn membership() {
        let f = LaurentPoly::monomial(2, 1);
        assert!(chart_member(&f, ChartId::Global(2), 2).member);
        let m = chart_member(&f, ChartId::Global(1), 1);
        assert!(!m.member);
        assert_eq!(m.offenders, vec![Monomial::new(2, 1)]);
        assert!(chart_member(&LaurentPoly::monomial(-1, 1), ChartId::V, 1).member);
        assert!(!chart_member(&LaurentPoly::monomial(-1, 1), ChartId::U, 1).member);
        assert!(chart_member(&LaurentPoly::monomial(-7, 0), ChartId::UV, 1).member);
    }
}
