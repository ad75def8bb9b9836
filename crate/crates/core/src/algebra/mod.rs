//! Exact scalars, Laurent polynomials on the charts of `Z_k`, and `ħ`-truncated series.

pub mod chart;
pub mod laurent;
pub mod rational;
pub mod series;

pub use chart::{chart_member, is_member, monomial_in_chart, to_u_chart, to_v_chart, ChartId, Membership};
pub use laurent::{LaurentPoly, Monomial, Var};
pub use rational::{int, rat, Rational};
pub use series::HbarSeries;
