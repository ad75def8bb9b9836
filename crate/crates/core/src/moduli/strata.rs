use serde::Serialize;

use super::{toeplitz_matrix, window_len, ModuliPoint};
use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::invariants::{charge, BundleSpec};
use crate::poisson::{is_tangent_to_fiber, PoissonStructure};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub index: usize,
    /// Leading-zero pattern, e.g. `p_{1,-1} = 0, p_{1,0} != 0`.
    pub description: String,
    pub fiber_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionRule {
    /// The endpoint bundle has charge above `j`.
    Charge,
    /// Charge unavailable; the last index is dropped.
    Index,
}

/// Status of the point `[0 : ⋯ : 0 : 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndpointStatus {
    pub index: usize,
    pub excluded: bool,
    pub charge: Option<usize>,
    pub rule: ExclusionRule,
}

/// Decides whether `[0 : ⋯ : 0 : 1]` belongs to the moduli space by computing
/// the charge of `z^{j−1}u`; the minimal instanton charge is `j`.
pub fn endpoint_status(k: u32, j: i64) -> Result<EndpointStatus> {
    let m = window_len(k, j);
    if k == 0 || m < 1 {
        return Err(Error::WindowEmpty { k: k as i64, j });
    }
    let index = m as usize - 1;
    let spec = BundleSpec::new(k, j, LaurentPoly::monomial(j - 1, 1))?;
    Ok(match charge(&spec) {
        Ok(t) => EndpointStatus {
            index,
            excluded: t.charge as i64 > j,
            charge: Some(t.charge),
            rule: ExclusionRule::Charge,
        },
        Err(Error::NonStabilized { .. }) => EndpointStatus {
            index,
            excluded: true,
            charge: None,
            rule: ExclusionRule::Index,
        },
        Err(e) => return Err(e),
    })
}

fn coordinate(k: u32, j: i64, t: usize) -> String {
    format!("p_{{1,{}}}", k as i64 - j + 1 + t as i64)
}

/// Strata `S_i` of points with exactly `i` leading zero coordinates. The last
/// candidate `S_{m−1}` is kept only when [`endpoint_status`] admits it.
pub fn stratify(k: u32, j: i64) -> Result<Vec<Stratum>> {
    let endpoint = endpoint_status(k, j)?;
    let m = endpoint.index + 1;
    let last = if endpoint.excluded { m - 1 } else { m };
    Ok((0..last)
        .map(|i| {
            let mut parts: Vec<String> = (0..i).map(|t| format!("{} = 0", coordinate(k, j, t))).collect();
            parts.push(format!("{} != 0", coordinate(k, j, i)));
            Stratum {
                index: i,
                description: parts.join(", "),
                fiber_dim: i,
            }
        })
        .collect())
}

/// Number of leading zeros of `P`, checked against the corank of its
/// Toeplitz matrix.
pub fn fiber_dimension(p: &ModuliPoint) -> usize {
    let lead = p.leading_zeros();
    let corank = p.m() - crate::linalg::rank(&toeplitz_matrix(p));
    assert_eq!(lead, corank, "Toeplitz corank disagrees with the leading-zero count");
    lead
}

/// Dimension of the noncommutative fibre over `P` for the structure `σ`.
pub fn rebel_level(p: &ModuliPoint, sigma: &PoissonStructure) -> Result<usize> {
    if sigma.k() != p.k {
        return Err(Error::InvalidArgument(format!(
            "point lives on Z_{} but sigma on Z_{}",
            p.k,
            sigma.k()
        )));
    }
    if !is_tangent_to_fiber(sigma) {
        return Err(Error::NotQuantizable(sigma.to_string()));
    }
    if !sigma.sigma_u().is_multiple_of_u() {
        return Ok(0);
    }
    Ok(fiber_dimension(p))
}
