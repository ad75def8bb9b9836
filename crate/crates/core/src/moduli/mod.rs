//! First-order moduli of rank-2 bundles on the first formal neighbourhood of
//! the zero section.
//!
//! A classical point is the window part `p = Σ p_{1,l} z^l u` of an extension
//! class with `k − j + 1 ≤ l ≤ j − 1`. Over a point, the first-order data
//! `p′` is taken modulo the gauge freedom; the dimension of what survives is
//! the fibre dimension. [`toeplitz_matrix`] gives the closed-form answer for
//! `σ_U` divisible by `u`; [`oracle`] solves the full `(1,2)`-entry system.

pub mod oracle;
mod strata;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{LaurentPoly, Rational};
use crate::error::{Error, Result};

pub use oracle::{
    default_deg_bound, equivalence_oracle, fiber_dimension_oracle, OracleAnswer,
};
pub use strata::{
    endpoint_status, fiber_dimension, rebel_level, stratify, EndpointStatus, ExclusionRule,
    Stratum,
};

/// Number of window coefficients `m = 2j − k − 1`.
pub fn window_len(k: u32, j: i64) -> i64 {
    2 * j - k as i64 - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliPoint {
    pub k: u32,
    pub j: i64,
    /// `(p_{1,k−j+1}, …, p_{1,j−1})`.
    #[serde(serialize_with = "crate::algebra::rational::serialize_vec")]
    pub p1: Vec<Rational>,
}

impl ModuliPoint {
    pub fn new(k: u32, j: i64, p1: Vec<Rational>) -> Result<Self> {
        let m = window_len(k, j);
        if k == 0 || m < 1 {
            return Err(Error::WindowEmpty { k: k as i64, j });
        }
        if p1.len() as i64 != m {
            return Err(Error::Shape(format!(
                "a point of M_{j}(Z_{k}) has {m} coordinates, got {}",
                p1.len()
            )));
        }
        if p1.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("all coordinates are zero".into()));
        }
        Ok(ModuliPoint { k, j, p1 })
    }

    pub fn m(&self) -> usize {
        self.p1.len()
    }

    /// Lowest `z`-exponent of the window, `k − j + 1`.
    pub fn first_exponent(&self) -> i64 {
        self.k as i64 - self.j + 1
    }

    /// `p = Σ p_{1,l} z^l u`.
    pub fn p_poly(&self) -> LaurentPoly {
        coeffs_to_poly(self.first_exponent(), &self.p1)
    }

    /// Number of leading zero coordinates.
    pub fn leading_zeros(&self) -> usize {
        self.p1.iter().take_while(|c| c.is_zero()).count()
    }

    /// `(0, …, 0, c)`.
    pub fn is_endpoint(&self) -> bool {
        self.leading_zeros() + 1 == self.m()
    }

    pub fn scaled(&self, lambda: &Rational) -> Result<Self> {
        ModuliPoint::new(self.k, self.j, self.p1.iter().map(|c| c * lambda).collect())
    }

    /// Same projective point.
    pub fn projectively_equal(&self, other: &ModuliPoint) -> bool {
        if (self.k, self.j, self.m()) != (other.k, other.j, other.m()) {
            return false;
        }
        let lead = self.leading_zeros();
        if lead != other.leading_zeros() {
            return false;
        }
        let ratio = &other.p1[lead] / &self.p1[lead];
        self.p1.iter().zip(&other.p1).all(|(a, b)| &(a * &ratio) == b)
    }
}

/// First-order extension data `p + p′ħ` over a classical point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstOrderClass {
    pub base: ModuliPoint,
    #[serde(serialize_with = "crate::algebra::rational::serialize_vec")]
    pub prime: Vec<Rational>,
}

impl FirstOrderClass {
    pub fn new(base: ModuliPoint, prime: Vec<Rational>) -> Result<Self> {
        if prime.len() != base.m() {
            return Err(Error::Shape(format!(
                "p' needs {} coefficients, got {}",
                base.m(),
                prime.len()
            )));
        }
        Ok(FirstOrderClass { base, prime })
    }

    pub fn prime_poly(&self) -> LaurentPoly {
        coeffs_to_poly(self.base.first_exponent(), &self.prime)
    }
}

pub(crate) fn coeffs_to_poly(first: i64, coeffs: &[Rational]) -> LaurentPoly {
    LaurentPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(t, c)| (crate::algebra::Monomial::new(first + t as i64, 1), c.clone())),
    )
}

/// Upper-triangular Toeplitz matrix with first row `(p_{1,k−j+1}, …, p_{1,j−1})`.
pub fn toeplitz_matrix(p: &ModuliPoint) -> Vec<Vec<Rational>> {
    let m = p.m();
    (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    if c >= r {
                        p.p1[c - r].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}
