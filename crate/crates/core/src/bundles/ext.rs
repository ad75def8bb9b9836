use serde::Serialize;

use super::witness::GaugeWitness;
use crate::algebra::{HbarSeries, LaurentPoly, Monomial};
use crate::error::{Error, Result};
use crate::star::StarContext;

/// Exponents `(i, l)` of the canonical window
/// `W(k, j) = {0 ≤ i ≤ ⌊(2j−2)/k⌋, k i − j + 1 ≤ l ≤ j − 1}`.
pub fn ext_window(k: u32, j: i64) -> Vec<(u32, i64)> {
    let mut out = Vec::new();
    if j < 1 || k == 0 {
        return out;
    }
    let top = (2 * j - 2) / k as i64;
    for i in 0..=top {
        let lo = k as i64 * i - j + 1;
        for l in lo..=j - 1 {
            out.push((i as u32, l));
        }
    }
    out
}

pub fn in_window(k: u32, j: i64, m: Monomial) -> bool {
    let lo = k as i64 * m.u as i64 - j + 1;
    m.z >= lo && m.z < j
}

/// Extension class `𝐩 = Σ p_n ħⁿ` with every `p_n` supported in `W(k, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtClass {
    pub k: u32,
    pub j: i64,
    pub p: HbarSeries,
}

impl ExtClass {
    pub fn new(k: u32, j: i64, p: HbarSeries) -> Result<Self> {
        for (n, pn) in p.coeffs().iter().enumerate() {
            if let Some(m) = pn.monomials().find(|m| !in_window(k, j, *m)) {
                return Err(Error::InvalidArgument(format!(
                    "order {n} term {m} lies outside W(k={k}, j={j})"
                )));
            }
        }
        Ok(ExtClass { k, j, p })
    }

    pub fn coefficient(&self, n: usize, i: u32, l: i64) -> crate::algebra::Rational {
        self.p.coeff_or_zero(n).coeff_at(l, i)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
}

/// Brings `𝐩` into the canonical window using `𝐩′ = 𝐩 + β ⋆ z^{-j} − z^j ⋆ b`.
///
/// Terms with `l ≥ j` are absorbed by `b` on `U`; terms with `l ≤ k i − j` by
/// `β` on `V`. The `⋆`-corrections of a new `b_n`, `β_n` only reach orders
/// above `n`, so each order is settled in one pass.
pub fn ext_reduce(
    k: u32,
    j: i64,
    p: &HbarSeries,
    ctx: &StarContext,
) -> Result<(ExtClass, GaugeWitness)> {
    if j < 1 {
        return Err(Error::InvalidArgument(format!("j = {j} must be at least 1")));
    }
    let order = ctx.order().min(p.order());
    let p = p.truncate(order);
    let mut b = HbarSeries::zero(order);
    let mut beta = HbarSeries::zero(order);
    for n in 0..=order {
        let witness = GaugeWitness::Ext {
            j,
            beta: beta.clone(),
            b: b.clone(),
        };
        let current = witness.replay_ext(&p, ctx).expect("ext witness");
        let mut b_n = LaurentPoly::zero();
        let mut beta_n = LaurentPoly::zero();
        for (m, c) in current.coeff(n).terms() {
            if m.z >= j {
                b_n.add_term(Monomial::new(m.z - j, m.u), c.clone());
            } else if m.z <= k as i64 * m.u as i64 - j {
                beta_n.add_term(Monomial::new(m.z + j, m.u), -c.clone());
            }
        }
        b.set_coeff(n, b_n);
        beta.set_coeff(n, beta_n);
    }
    let witness = GaugeWitness::Ext { j, beta, b };
    let reduced = witness.replay_ext(&p, ctx).expect("ext witness");
    let class = ExtClass::new(k, j, reduced)
        .unwrap_or_else(|e| panic!("window absorption must be total: {e}"));
    Ok((class, witness))
}
