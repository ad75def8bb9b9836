//! Brute-force first-order equivalence on `ℓ⁽¹⁾`.
//!
//! The `ħ`-part of the `(1,2)` entry of the gauge relation, with `u² = 0`, is
//!
//! ```text
//! −{a,p} z^j − {z^j,a} p + {z^j,p} a + {pd, z^j} + {p,d} + 2{z^j,p} p c
//!     + z^{2j} b′ − (p a′ + q′ a) z^j + (p d′ + p′ d) z^j
//! ```
//!
//! with `a = 1 + a₁(z)u`, `d = 1 + d₁(z)u`, `c = c₀(z) + c₁(z)u`,
//! `a′ = a′₀(z) + a′₁(z)u`, `d′ = d′₀(z) + d′₁(z)u`. Monomials with `z`-degree
//! at least `2j` are absorbed by `b′` and those holomorphic on `V` by the
//! other side, so only `z, …, z^{2j−1}` and `z^{k+1}u, …, z^{2j−1}u` matter.
//! The expression is affine in the unknown coefficients; solvability is
//! decided by exact elimination.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{coeffs_to_poly, ModuliPoint};
use crate::algebra::{ChartId, LaurentPoly, Monomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::poisson::{poisson_bracket, PoissonStructure};

/// Default `z`-degree bound `2j + k + 2` for `a₁, d₁, a′, d′`.
pub fn default_deg_bound(k: u32, j: i64) -> usize {
    (2 * j + k as i64 + 2).max(0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    A1,
    D1,
    APrime0,
    APrime1,
    DPrime0,
    DPrime1,
    C0,
    C1,
}

impl Slot {
    fn name(self) -> &'static str {
        match self {
            Slot::A1 => "a1",
            Slot::D1 => "d1",
            Slot::APrime0 => "a'0",
            Slot::APrime1 => "a'1",
            Slot::DPrime0 => "d'0",
            Slot::DPrime1 => "d'1",
            Slot::C0 => "c0",
            Slot::C1 => "c1",
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Gauge {
    a1: LaurentPoly,
    d1: LaurentPoly,
    a_prime: LaurentPoly,
    d_prime: LaurentPoly,
    c: LaurentPoly,
}

impl Gauge {
    fn unit(slot: Slot, l: i64) -> Gauge {
        let mut g = Gauge::default();
        match slot {
            Slot::A1 => g.a1 = LaurentPoly::monomial(l, 0),
            Slot::D1 => g.d1 = LaurentPoly::monomial(l, 0),
            Slot::APrime0 => g.a_prime = LaurentPoly::monomial(l, 0),
            Slot::APrime1 => g.a_prime = LaurentPoly::monomial(l, 1),
            Slot::DPrime0 => g.d_prime = LaurentPoly::monomial(l, 0),
            Slot::DPrime1 => g.d_prime = LaurentPoly::monomial(l, 1),
            Slot::C0 => g.c = LaurentPoly::monomial(l, 0),
            Slot::C1 => g.c = LaurentPoly::monomial(l, 1),
        }
        g
    }
}

struct Problem<'a> {
    k: u32,
    j: i64,
    sigma: &'a PoissonStructure,
    p: LaurentPoly,
}

impl Problem<'_> {
    fn bracket(&self, f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
        poisson_bracket(self.sigma, f, g, ChartId::UV)
    }

    /// The `(1,2)` expression without `b′`, truncated at `u¹`.
    fn evaluate(&self, g: &Gauge, p_prime: &LaurentPoly, q_prime: &LaurentPoly) -> LaurentPoly {
        let p = &self.p;
        let zj = LaurentPoly::monomial(self.j, 0);
        let a = LaurentPoly::one() + g.a1.shift(&Rational::from_integer(1.into()), 0, 1);
        let d = LaurentPoly::one() + g.d1.shift(&Rational::from_integer(1.into()), 0, 1);
        let zj_p = self.bracket(&zj, p);
        let mut e = -(&self.bracket(&a, p) * &zj);
        e -= &(&self.bracket(&zj, &a) * p);
        e += &(&zj_p * &a);
        e += &self.bracket(&(p * &d), &zj);
        e += &self.bracket(p, &d);
        e += &(&(&zj_p * p) * &g.c).scale(&Rational::from_integer(2.into()));
        e -= &(&(&(p * &g.a_prime) + &(q_prime * &a)) * &zj);
        e += &(&(&(p * &g.d_prime) + &(p_prime * &d)) * &zj);
        e.truncate_u(1)
    }

    fn relevant_rows(&self) -> BTreeMap<Monomial, usize> {
        let mut rows = BTreeMap::new();
        for l in 1..2 * self.j {
            let n = rows.len();
            rows.insert(Monomial::new(l, 0), n);
        }
        for l in self.k as i64 + 1..2 * self.j {
            let n = rows.len();
            rows.insert(Monomial::new(l, 1), n);
        }
        rows
    }

    fn unknowns(&self, deg_bound: usize) -> Vec<(Slot, i64)> {
        let mut out = Vec::new();
        for slot in [
            Slot::A1,
            Slot::D1,
            Slot::APrime0,
            Slot::APrime1,
            Slot::DPrime0,
            Slot::DPrime1,
        ] {
            out.extend((0..=deg_bound as i64).map(|l| (slot, l)));
        }
        // c is a section of O(2j)
        out.extend((0..=2 * self.j).map(|l| (Slot::C0, l)));
        out.extend((0..=self.k as i64 + 2 * self.j).map(|l| (Slot::C1, l)));
        out
    }
}

fn project(f: &LaurentPoly, rows: &BTreeMap<Monomial, usize>) -> SparseVec {
    f.terms()
        .filter_map(|(m, c)| rows.get(m).map(|r| (*r, c.clone())))
        .collect()
}

struct System {
    names: Vec<(Slot, i64)>,
    columns: Vec<SparseVec>,
    constant: SparseVec,
    u0_rows: usize,
}

fn build_system(
    point: &ModuliPoint,
    p_prime: &LaurentPoly,
    q_prime: &LaurentPoly,
    sigma: &PoissonStructure,
    deg_bound: usize,
) -> System {
    let problem = Problem {
        k: point.k,
        j: point.j,
        sigma,
        p: point.p_poly(),
    };
    let rows = problem.relevant_rows();
    let base_expr = problem.evaluate(&Gauge::default(), p_prime, q_prime);
    let names = problem.unknowns(deg_bound);
    let columns = names
        .iter()
        .map(|(slot, l)| {
            let e = problem.evaluate(&Gauge::unit(*slot, *l), p_prime, q_prime);
            project(&(&e - &base_expr), &rows)
        })
        .collect();
    System {
        names,
        columns,
        constant: project(&base_expr, &rows),
        u0_rows: (2 * point.j - 1).max(0) as usize,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleAnswer {
    pub equivalent: bool,
    /// Nonzero unknown coefficients of one solving gauge, as `(name, value)`.
    pub witness: Vec<(String, String)>,
    pub deg_bound: usize,
}

fn decide(system: &System) -> (bool, Vec<(String, String)>) {
    let mut basis = EchelonBasis::new();
    for col in &system.columns {
        basis.insert(col.clone());
    }
    let target: SparseVec = system.constant.iter().map(|(r, c)| (*r, -c.clone())).collect();
    match basis.solve(&target) {
        None => (false, Vec::new()),
        Some(x) => {
            let witness = x
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(idx, v)| {
                    let (slot, l) = system.names[*idx];
                    (
                        format!("{}[z^{l}]", slot.name()),
                        crate::algebra::rational::format_rational(v),
                    )
                })
                .collect();
            (true, witness)
        }
    }
}

fn check_lengths(point: &ModuliPoint, coeffs: &[Rational], what: &str) -> Result<()> {
    if coeffs.len() != point.m() {
        return Err(Error::Shape(format!(
            "{what} needs {} coefficients, got {}",
            point.m(),
            coeffs.len()
        )));
    }
    Ok(())
}

/// Whether `p + p′ħ` and `p + q′ħ` define isomorphic bundles on `ℓ⁽¹⁾`.
///
/// The answer is recomputed at `deg_bound + 2`; a change is reported as
/// [`Error::DegenerateBoundWarning`].
pub fn equivalence_oracle(
    point: &ModuliPoint,
    p_prime: &[Rational],
    q_prime: &[Rational],
    sigma: &PoissonStructure,
    deg_bound: usize,
) -> Result<OracleAnswer> {
    check_lengths(point, p_prime, "p'")?;
    check_lengths(point, q_prime, "q'")?;
    let first = point.first_exponent();
    let pp = coeffs_to_poly(first, p_prime);
    let qp = coeffs_to_poly(first, q_prime);
    let (equivalent, witness) = decide(&build_system(point, &pp, &qp, sigma, deg_bound));
    let (again, _) = decide(&build_system(point, &pp, &qp, sigma, deg_bound + 2));
    if again != equivalent {
        return Err(Error::DegenerateBoundWarning {
            bound: deg_bound,
            bound_plus: deg_bound + 2,
        });
    }
    Ok(OracleAnswer {
        equivalent,
        witness,
        deg_bound,
    })
}

fn fiber_dim_at(point: &ModuliPoint, sigma: &PoissonStructure, deg_bound: usize) -> usize {
    let zero = LaurentPoly::zero();
    let system = build_system(point, &zero, &zero, sigma, deg_bound);
    let mut full = EchelonBasis::new();
    let mut u0 = EchelonBasis::new();
    for col in &system.columns {
        full.insert(col.clone());
        u0.insert(col.range(..system.u0_rows).map(|(r, c)| (*r, c.clone())).collect());
    }
    point.m() - (full.rank() - u0.rank())
}

/// Dimension of the space of first-order data over `point` modulo gauge.
pub fn fiber_dimension_oracle(
    point: &ModuliPoint,
    sigma: &PoissonStructure,
    deg_bound: usize,
) -> Result<usize> {
    let dim = fiber_dim_at(point, sigma, deg_bound);
    if fiber_dim_at(point, sigma, deg_bound + 2) != dim {
        return Err(Error::DegenerateBoundWarning {
            bound: deg_bound,
            bound_plus: deg_bound + 2,
        });
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn pt(k: u32, j: i64, c: &[i64]) -> ModuliPoint {
        ModuliPoint::new(k, j, c.iter().map(|x| int(*x)).collect()).unwrap()
    }

    fn ints(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|x| int(*x)).collect()
    }

    fn sigma(k: u32, s: LaurentPoly) -> PoissonStructure {
        PoissonStructure::new(k, s).unwrap()
    }

    #[test]
    fn sigma0_identifies_everything() {
        let s0 = sigma(1, LaurentPoly::one());
        for p in [[1, 0], [0, 1], [2, -3]] {
            let point = pt(1, 2, &p);
            let ans = equivalence_oracle(&point, &ints(&[4, -1]), &ints(&[0, 7]), &s0, 6).unwrap();
            assert!(ans.equivalent, "{p:?}");
            assert_eq!(fiber_dimension_oracle(&point, &s0, 6).unwrap(), 0);
        }
    }

    #[test]
    fn sigma_u_over_the_special_point() {
        let su = sigma(1, LaurentPoly::u());
        let point = pt(1, 2, &[0, 1]);
        let ans = equivalence_oracle(&point, &ints(&[1, 0]), &ints(&[2, 0]), &su, 6).unwrap();
        assert!(!ans.equivalent);
        let ans = equivalence_oracle(&point, &ints(&[1, 0]), &ints(&[1, 9]), &su, 6).unwrap();
        assert!(ans.equivalent);
        assert_eq!(fiber_dimension_oracle(&point, &su, 6).unwrap(), 1);
        assert_eq!(fiber_dimension_oracle(&pt(1, 2, &[1, 0]), &su, 6).unwrap(), 0);
    }

    #[test]
    fn sigma_u_j3() {
        let su = sigma(1, LaurentPoly::u());
        let point = pt(1, 3, &[0, 0, 1, 0]);
        let ans =
            equivalence_oracle(&point, &ints(&[1, 2, 3, 4]), &ints(&[1, 2, -5, 4]), &su, 7).unwrap();
        assert!(ans.equivalent);
        assert_eq!(fiber_dimension_oracle(&pt(1, 3, &[0, 1, 0, 0]), &su, 7).unwrap(), 1);
    }
}
