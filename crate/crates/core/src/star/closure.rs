use rayon::prelude::*;
use serde::Serialize;

use super::StarContext;
use crate::algebra::{monomial_in_chart, ChartId, LaurentPoly, Monomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ClosureResult {
    Pass {
        pairs_checked: usize,
    },
    /// First pair (in sample order) whose product leaves `O(Z_k)`.
    Witness {
        f: LaurentPoly,
        g: LaurentPoly,
        n: usize,
        monomial: Monomial,
        #[serde(serialize_with = "crate::algebra::rational::serialize")]
        coeff: Rational,
    },
}

impl ClosureResult {
    pub fn is_pass(&self) -> bool {
        matches!(self, ClosureResult::Pass { .. })
    }
}

/// Monomials `z^l u^i` with `0 ≤ l ≤ k i ≤ max_ki`.
pub fn global_monomials(k: u32, max_ki: u32) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    let mut i = 0u32;
    while k * i <= max_ki {
        for l in 0..=(k * i) as i64 {
            out.push(LaurentPoly::monomial(l, i));
        }
        i += 1;
    }
    out
}

/// All ordered pairs from `items`.
pub fn monomial_pairs(items: &[LaurentPoly]) -> Vec<(LaurentPoly, LaurentPoly)> {
    items
        .iter()
        .flat_map(|f| items.iter().map(move |g| (f.clone(), g.clone())))
        .collect()
}

/// Checks `f ⋆ g ∈ O(Z_k)⟦ħ⟧` for every sample pair.
pub fn closure_check(
    ctx: &StarContext,
    k: u32,
    samples: &[(LaurentPoly, LaurentPoly)],
) -> ClosureResult {
    let chart = ChartId::Global(k);
    let witness = samples.par_iter().find_map_first(|(f, g)| {
        let prod = ctx.star_poly(f, g);
        prod.coeffs().iter().enumerate().find_map(|(n, p)| {
            p.terms()
                .find(|(m, _)| !monomial_in_chart(**m, chart, k))
                .map(|(m, c)| ClosureResult::Witness {
                    f: f.clone(),
                    g: g.clone(),
                    n,
                    monomial: *m,
                    coeff: c.clone(),
                })
        })
    });
    witness.unwrap_or(ClosureResult::Pass {
        pairs_checked: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::poisson::PoissonStructure;

    #[test]
    fn z1_moyal_closes() {
        let ctx = StarContext::new(PoissonStructure::new(1, LaurentPoly::one()).unwrap(), 4).unwrap();
        let pairs = monomial_pairs(&global_monomials(1, 4));
        assert!(closure_check(&ctx, 1, &pairs).is_pass());
    }

    #[test]
    fn z2_naive_moyal_fails() {
        let ctx = StarContext::new(PoissonStructure::new(2, LaurentPoly::one()).unwrap(), 2).unwrap();
        let pairs = vec![(LaurentPoly::monomial(2, 1), LaurentPoly::monomial(1, 1))];
        match closure_check(&ctx, 2, &pairs) {
            ClosureResult::Witness { n, monomial, coeff, .. } => {
                assert_eq!(n, 2);
                assert_eq!(monomial, Monomial::new(1, 0));
                assert_eq!(coeff, int(-2));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(global_monomials(1, 2).len(), 1 + 2 + 3);
        assert_eq!(global_monomials(3, 6).len(), 1 + 4 + 7);
    }
}
