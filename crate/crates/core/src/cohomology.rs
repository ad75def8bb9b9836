//! Global sections of `O(j)` on `Z_k` as modules over the ring of global functions.
//!
//! The ring `R = O(Z_k)` is generated by `x_i = z^i u` for `0 ≤ i ≤ k`.

use serde::Serialize;

use crate::algebra::LaurentPoly;

/// Formal relation `g_a x_{b−1} − g_{a−1} x_b`, stored by index pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    /// `(generator index, ring variable index)` of the positive term.
    pub plus: (usize, usize),
    /// `(generator index, ring variable index)` of the negative term.
    pub minus: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionModulePresentation {
    pub k: u32,
    pub twist: i64,
    pub generators: Vec<LaurentPoly>,
    pub relations: Vec<Relation>,
}

/// The ring variable `x_i = z^i u`.
pub fn ring_variable(i: usize) -> LaurentPoly {
    LaurentPoly::monomial(i as i64, 1)
}

/// `(q, ν)` with `−j = −q k + ν` and `0 ≤ ν < k`, for `j > 0`.
pub fn negative_twist_split(k: u32, j: i64) -> (u32, u32) {
    let k = k as i64;
    let q = (j + k - 1).div_euclid(k);
    let nu = q * k - j;
    (q as u32, nu as u32)
}

pub fn h0_generators(k: u32, twist: i64) -> SectionModulePresentation {
    let (generators, top) = if twist >= 0 {
        let gens = (0..=twist).map(|i| LaurentPoly::monomial(i, 0)).collect();
        (gens, twist as usize)
    } else {
        let (q, nu) = negative_twist_split(k, -twist);
        let gens = (0..=nu as i64).map(|i| LaurentPoly::monomial(i, q)).collect();
        (gens, nu as usize)
    };
    let mut relations = Vec::new();
    for a in 1..=top {
        for b in 1..=k as usize {
            relations.push(Relation {
                plus: (a, b - 1),
                minus: (a - 1, b),
            });
        }
    }
    SectionModulePresentation {
        k,
        twist,
        generators,
        relations,
    }
}

impl Relation {
    pub fn evaluate(&self, generators: &[LaurentPoly]) -> Option<LaurentPoly> {
        let plus = generators.get(self.plus.0)? * &ring_variable(self.plus.1);
        let minus = generators.get(self.minus.0)? * &ring_variable(self.minus.1);
        Some(&plus - &minus)
    }
}

/// Substitutes `x_i ↦ z^i u` into every relation; `true` iff each is zero.
pub fn relations_check(pres: &SectionModulePresentation, k: u32) -> bool {
    pres.relations.iter().all(|r| {
        r.plus.1 <= k as usize
            && r.minus.1 <= k as usize
            && r.evaluate(&pres.generators).is_some_and(|p| p.is_zero())
    })
}

/// Exponents `(l, i)` of the monomial basis of `H⁰(Z_k, O(twist))` with `i ≤ u_cutoff`.
///
/// Sorted by `(i, l)`.
pub fn h0_monomial_basis(k: u32, twist: i64, u_cutoff: u32) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    for i in 0..=u_cutoff {
        let top = k as i64 * i as i64 + twist;
        for l in 0..=top {
            out.push((l, i));
        }
    }
    out
}

/// Whether `z^l u^i` is `R`-multiple of some generator, by exponent arithmetic.
pub fn generated_by(pres: &SectionModulePresentation, l: i64, i: u32) -> bool {
    pres.generators.iter().any(|g| {
        let (gm, _) = g.as_single_term().expect("generators are monomials");
        if i < gm.u {
            return false;
        }
        let b = (i - gm.u) as i64;
        let a = l - gm.z;
        // z^a u^b is a product of b ring variables iff 0 ≤ a ≤ k b
        a >= 0 && a <= pres.k as i64 * b
    })
}
