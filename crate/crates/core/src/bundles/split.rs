use serde::Serialize;

use crate::algebra::{LaurentPoly, Monomial};

/// `h = z^{j2} x_U + z^{j1} x_V + obstruction`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Split {
    pub x_u: LaurentPoly,
    pub x_v: LaurentPoly,
    /// Monomials of `h` that neither chart can absorb.
    pub obstruction: LaurentPoly,
}

impl Split {
    pub fn is_exact(&self) -> bool {
        self.obstruction.is_zero()
    }
}

/// Splits a cochain on `U ∩ V` into a `U`-part and a `V`-part.
///
/// `z^l u^i` goes to `x_U` when `l − j2 ≥ 0`, otherwise to `x_V` when
/// `l − j1 ≤ k i`, otherwise to the obstruction.
pub fn split_h1(h: &LaurentPoly, j1: i64, j2: i64, k: u32) -> Split {
    let mut x_u = LaurentPoly::zero();
    let mut x_v = LaurentPoly::zero();
    let mut obstruction = LaurentPoly::zero();
    for (m, c) in h.terms() {
        if m.z - j2 >= 0 {
            x_u.add_term(Monomial::new(m.z - j2, m.u), c.clone());
        } else if m.z - j1 <= k as i64 * m.u as i64 {
            x_v.add_term(Monomial::new(m.z - j1, m.u), c.clone());
        } else {
            obstruction.add_term(*m, c.clone());
        }
    }
    Split {
        x_u,
        x_v,
        obstruction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_member, ChartId};

    #[test]
    fn examples() {
        let s = split_h1(&LaurentPoly::monomial(1, 1), 2, -2, 1);
        assert_eq!(s.x_u, LaurentPoly::monomial(3, 1));
        assert!(s.x_v.is_zero() && s.is_exact());

        let s = split_h1(&LaurentPoly::monomial(-1, 0), 0, 0, 1);
        assert_eq!(s.x_v, LaurentPoly::monomial(-1, 0));
        assert!(s.x_u.is_zero());

        let s = split_h1(&LaurentPoly::monomial(-1, 1), -1, 1, 1);
        assert_eq!(s.x_v, LaurentPoly::u());

        let s = split_h1(&LaurentPoly::monomial(-1, 0), -2, 2, 1);
        assert_eq!(s.obstruction, LaurentPoly::monomial(-1, 0));
    }

    #[test]
    fn recombines_when_twist_is_nonnegative() {
        let h = LaurentPoly::from_terms((-6..=6).flat_map(|l| {
            (0..3).map(move |i| (Monomial::new(l, i), crate::algebra::int(l * 7 + i as i64 + 1)))
        }));
        for (j1, j2) in [(0, 0), (3, -3), (2, 2), (1, -4)] {
            let s = split_h1(&h, j1, j2, 2);
            assert!(s.is_exact());
            assert!(is_member(&s.x_u, ChartId::U, 2));
            assert!(is_member(&s.x_v, ChartId::V, 2));
            assert_eq!(&s.x_u.mul_z_pow(j2) + &s.x_v.mul_z_pow(j1), h);
        }
    }
}
