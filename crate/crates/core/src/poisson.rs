//! Holomorphic Poisson structures on `Z_k`.
//!
//! A Poisson structure on the surface is a section of the anticanonical
//! bundle. It is stored by its `U`-chart coefficient `σ_U` of `∂z ∧ ∂u`; the
//! `V`-chart coefficient is always derived as `−z^{k−2} σ_U` rewritten in
//! `(ξ, v)` coordinates.

use std::fmt;

use serde::Serialize;

use crate::algebra::{to_v_chart, ChartId, LaurentPoly, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PoissonStructure {
    k: u32,
    sigma_u: LaurentPoly,
}

impl PoissonStructure {
    /// Validates that `σ_U` is holomorphic on `U` and the derived `σ_V` on `V`.
    pub fn new(k: u32, sigma_u: LaurentPoly) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        if let Some(l) = sigma_u.min_z() {
            if l < 0 {
                return Err(Error::InvalidPoissonStructure(format!(
                    "sigma_U = {sigma_u} has a negative power of z"
                )));
            }
        }
        let sigma_v = compute_sigma_v(k, &sigma_u);
        if let Some(m) = sigma_v.monomials().find(|m| m.z < 0) {
            return Err(Error::InvalidPoissonStructure(format!(
                "sigma_V = {} is not holomorphic on V (term {})",
                sigma_v.display_with("xi", "v"),
                m
            )));
        }
        Ok(PoissonStructure { k, sigma_u })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn sigma_u(&self) -> &LaurentPoly {
        &self.sigma_u
    }

    pub fn sigma_v(&self) -> LaurentPoly {
        compute_sigma_v(self.k, &self.sigma_u)
    }

    pub fn is_constant(&self) -> bool {
        self.sigma_u.is_constant()
    }
}

impl fmt::Display for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) on Z_{}",
            self.sigma_u,
            self.sigma_v().display_with("xi", "v"),
            self.k
        )
    }
}

fn compute_sigma_v(k: u32, sigma_u: &LaurentPoly) -> LaurentPoly {
    let twisted = sigma_u.shift(&-crate::algebra::int(1), k as i64 - 2, 0);
    to_v_chart(&twisted, k)
}

/// Module generators of Poisson structures over global functions.
pub fn poisson_generators(k: u32) -> Vec<PoissonStructure> {
    let sigmas: Vec<LaurentPoly> = match k {
        0 => Vec::new(),
        1 => vec![LaurentPoly::one(), LaurentPoly::z()],
        2 => vec![LaurentPoly::one()],
        _ => (0..3).map(|l| LaurentPoly::monomial(l, 1)).collect(),
    };
    sigmas
        .into_iter()
        .map(|s| PoissonStructure::new(k, s).expect("generators are holomorphic"))
        .collect()
}

/// `σ_V` in `(ξ, v)` coordinates.
pub fn sigma_v_of(sigma: &PoissonStructure) -> LaurentPoly {
    sigma.sigma_v()
}

/// `σ_chart (∂₁f ∂₂g − ∂₂f ∂₁g)`.
///
/// On `V`, `f` and `g` are in `(ξ, v)` coordinates and the result is too. `UV`
/// and `Global` use `U` coordinates; `Global` additionally asserts the result
/// is a global function.
pub fn poisson_bracket(
    sigma: &PoissonStructure,
    f: &LaurentPoly,
    g: &LaurentPoly,
    chart: ChartId,
) -> LaurentPoly {
    let coeff = match chart {
        ChartId::V => sigma.sigma_v(),
        _ => sigma.sigma_u.clone(),
    };
    let out = &coeff * &jacobian(f, g);
    if let ChartId::Global(k) = chart {
        debug_assert!(
            crate::algebra::is_member(&out, ChartId::Global(k), k),
            "bracket of global functions left O(Z_k)"
        );
    }
    out
}

/// `∂z f ∂u g − ∂u f ∂z g`, the canonical bracket.
pub fn jacobian(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let a = &f.derive(Var::Z) * &g.derive(Var::U);
    let b = &f.derive(Var::U) * &g.derive(Var::Z);
    &a - &b
}

/// `ξ` divides `σ_V`: the fibre `{ξ = 0}` is a Poisson divisor.
pub fn is_tangent_to_fiber(sigma: &PoissonStructure) -> bool {
    sigma.sigma_v().monomials().all(|m| m.z >= 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegeneracyClass {
    pub contains_zero_section: bool,
    pub contains_fiber: bool,
}

pub fn degeneracy_class(sigma: &PoissonStructure) -> DegeneracyClass {
    DegeneracyClass {
        contains_zero_section: sigma.sigma_u.is_multiple_of_u(),
        contains_fiber: is_tangent_to_fiber(sigma),
    }
}

/// Which `u`-degrees count as "supported on the n-th neighbourhood".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DegreeConvention {
    /// `i ≤ n`
    AtMost,
    /// `i ≤ n − 1`
    Below,
}

impl DegreeConvention {
    fn max_u(self, n: u32) -> Option<u32> {
        match self {
            DegreeConvention::AtMost => Some(n),
            DegreeConvention::Below => n.checked_sub(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoissonDim {
    pub k: u32,
    pub n: u32,
    pub convention: DegreeConvention,
    /// Exact count of monomials.
    pub count: u64,
    /// The printed closed form evaluated at `(k, n)`.
    pub closed_form: u64,
    pub warning: Option<String>,
}

/// Printed closed forms: `(n+1)(n+4)/2`, `n²`, `n((n−1)k+4)/2` for `k = 1, 2, ≥3`.
pub fn poisson_dim_closed_form(k: u32, n: u32) -> u64 {
    let (k, n) = (k as u64, n as u64);
    match k {
        1 => (n + 1) * (n + 4) / 2,
        2 => n * n,
        _ => n * ((n.saturating_sub(1)) * k + 4) / 2,
    }
}

/// Counts monomials of `H⁰(Z_k, O(2−k))` with bounded `u`-degree.
pub fn poisson_dim_on_neighborhood(k: u32, n: u32, convention: DegreeConvention) -> PoissonDim {
    let twist = 2 - k as i64;
    let count = match convention.max_u(n) {
        None => 0,
        Some(max_u) => crate::cohomology::h0_monomial_basis(k, twist, max_u).len() as u64,
    };
    let closed_form = poisson_dim_closed_form(k, n);
    let expected_convention = match k {
        1 => Some(DegreeConvention::AtMost),
        2 => Some(DegreeConvention::Below),
        _ => None,
    };
    let warning = if count != closed_form {
        Some(format!(
            "enumeration gives {count} but the closed form gives {closed_form} for k={k}, n={n} under {convention:?}"
        ))
    } else if k >= 3 {
        None
    } else if expected_convention != Some(convention) {
        Some(format!(
            "closed form for k={k} is stated for the {:?} convention",
            expected_convention.expect("k <= 2")
        ))
    } else {
        None
    };
    PoissonDim {
        k,
        n,
        convention,
        count,
        closed_form,
        warning,
    }
}
