use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};

/// `h⁰(ℓ, E(m))` for the bundle on `ℓ ≅ P¹` with classical transition `t0`
/// (row-major 2×2, `u` already set to zero).
///
/// Sections are pairs of polynomials in `z` of degree at most `deg`, subject
/// to `T s` having no power of `z` above `m`.
pub fn h0_restricted(t0: &[LaurentPoly], m: i64, deg: i64) -> usize {
    let unknowns = 2 * (deg as usize + 1);
    // constraint rows indexed by (component, exponent > m); columns by unknowns
    let mut rows: std::collections::BTreeMap<(usize, i64), SparseVec> = Default::default();
    for comp in 0..2 {
        for l in 0..=deg {
            let col = comp * (deg as usize + 1) + l as usize;
            for out in 0..2 {
                for (mono, c) in t0[2 * out + comp].terms() {
                    let e = mono.z + l;
                    if e > m {
                        rows.entry((out, e)).or_default().insert(col, c.clone());
                    }
                }
            }
        }
    }
    let mut basis = EchelonBasis::new();
    for (_, row) in rows {
        basis.insert(row);
    }
    unknowns - basis.rank()
}

/// Splitting type `(a, −a)` of the restriction to the zero section.
pub fn restriction_splitting_type(t0: &[LaurentPoly]) -> Result<(i64, i64)> {
    if t0.len() != 4 {
        return Err(Error::Shape("expected a 2x2 matrix".into()));
    }
    let r: Vec<LaurentPoly> = t0.iter().map(LaurentPoly::restrict_to_zero_section).collect();
    let det = &(&r[0] * &r[3]) - &(&r[1] * &r[2]);
    if det.is_zero() || !det.is_constant() {
        return Err(Error::NonUnitDeterminant(det.to_string()));
    }
    let bound = r
        .iter()
        .flat_map(|p| [p.min_z().unwrap_or(0).abs(), p.max_z().unwrap_or(0).abs()])
        .sum::<i64>()
        + 1;
    let deg = 2 * bound + 2;
    for m in -bound..=bound {
        if h0_restricted(&r, m, deg) > 0 {
            return Ok((-m, m));
        }
    }
    unreachable!("a rank-2 bundle with trivial determinant has sections after twisting by its bound")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn m(entries: [&str; 4]) -> Vec<LaurentPoly> {
        entries.iter().map(|s| parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn diagonal() {
        assert_eq!(restriction_splitting_type(&m(["z^3", "0", "0", "z^-3"])).unwrap(), (3, -3));
        assert_eq!(restriction_splitting_type(&m(["z^-2", "0", "0", "z^2"])).unwrap(), (2, -2));
        assert_eq!(restriction_splitting_type(&m(["1", "0", "0", "1"])).unwrap(), (0, 0));
    }

    #[test]
    fn non_split_extension_on_the_line() {
        assert_eq!(restriction_splitting_type(&m(["z", "z", "0", "z^-1"])).unwrap(), (1, -1));
        // z^{-1} in the corner makes the restriction trivial
        assert_eq!(restriction_splitting_type(&m(["z", "1", "0", "z^-1"])).unwrap(), (0, 0));
    }

    #[test]
    fn u_terms_do_not_matter() {
        assert_eq!(
            restriction_splitting_type(&m(["z^3", "u + z^2 u", "0", "z^-3"])).unwrap(),
            (3, -3)
        );
    }

    #[test]
    fn determinant_must_be_constant() {
        assert!(matches!(
            restriction_splitting_type(&m(["z", "0", "0", "z"])).unwrap_err(),
            Error::NonUnitDeterminant(_)
        ));
    }
}
