use std::fmt;

use serde::Serialize;

use super::inverse::unit_inverse;
use super::StarContext;
use crate::algebra::{HbarSeries, LaurentPoly};
use crate::error::{Error, Result};

/// Matrix of `ħ`-series multiplied entry-wise with `⋆`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<HbarSeries>,
    #[serde(skip)]
    ctx: StarContext,
}

impl StarMatrix {
    /// Row-major entries, re-truncated to the context's order.
    pub fn new(rows: usize, cols: usize, entries: Vec<HbarSeries>, ctx: &StarContext) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let order = ctx.order();
        let entries = entries
            .into_iter()
            .map(|e| HbarSeries::from_coeffs(e.coeffs().to_vec(), order))
            .collect();
        Ok(StarMatrix {
            rows,
            cols,
            entries,
            ctx: ctx.clone(),
        })
    }

    pub fn from_polys(rows: usize, cols: usize, entries: Vec<LaurentPoly>, ctx: &StarContext) -> Result<Self> {
        let order = ctx.order();
        Self::new(
            rows,
            cols,
            entries
                .into_iter()
                .map(|p| HbarSeries::from_poly(p, order))
                .collect(),
            ctx,
        )
    }

    pub fn identity(n: usize, ctx: &StarContext) -> Self {
        let order = ctx.order();
        let entries = (0..n * n)
            .map(|idx| {
                if idx / n == idx % n {
                    HbarSeries::one(order)
                } else {
                    HbarSeries::zero(order)
                }
            })
            .collect();
        StarMatrix {
            rows: n,
            cols: n,
            entries,
            ctx: ctx.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> &StarContext {
        &self.ctx
    }

    pub fn entry(&self, i: usize, j: usize) -> &HbarSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: HbarSeries) {
        let order = self.ctx.order();
        self.entries[i * self.cols + j] = HbarSeries::from_coeffs(value.coeffs().to_vec(), order);
    }

    pub fn entries(&self) -> &[HbarSeries] {
        &self.entries
    }

    pub fn classical_limit(&self) -> Vec<LaurentPoly> {
        self.entries.iter().map(|e| e.classical_limit().clone()).collect()
    }

    /// `self ⋆ other`.
    pub fn mul(&self, other: &StarMatrix) -> Result<StarMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let order = self.ctx.order();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = HbarSeries::zero(order);
                for t in 0..self.cols {
                    let p = self.ctx.star(self.entry(i, t), other.entry(t, j));
                    acc = &acc + &p;
                }
                entries.push(acc);
            }
        }
        Ok(StarMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
            ctx: self.ctx.clone(),
        })
    }

    /// `X` with `self ⋆ X = Id` up to the context's order, for 2×2 matrices
    /// whose classical determinant is a unit of `O(U ∩ V)`.
    pub fn right_inverse(&self) -> Result<StarMatrix> {
        if self.rows != 2 || self.cols != 2 {
            return Err(Error::Shape("right_inverse needs a 2x2 matrix".into()));
        }
        let c = self.classical_limit();
        let det = &(&c[0] * &c[3]) - &(&c[1] * &c[2]);
        let det_inv = unit_inverse(&det)
            .ok_or_else(|| Error::NonInvertibleClassicalLimit(format!("det = {det}")))?;
        let inv0 = [
            &c[3] * &det_inv,
            -(&c[1] * &det_inv),
            -(&c[2] * &det_inv),
            &c[0] * &det_inv,
        ];
        let order = self.ctx.order();
        let mut x = StarMatrix::new(
            2,
            2,
            inv0.iter().map(|p| HbarSeries::from_poly(p.clone(), order)).collect(),
            &self.ctx,
        )?;
        for n in 1..=order {
            let prod = self.mul(&x)?;
            // Id has no ħ^n part, so the residual is prod's ħ^n coefficient
            let r: Vec<&LaurentPoly> = prod.entries.iter().map(|e| e.coeff(n)).collect();
            for i in 0..2 {
                for j in 0..2 {
                    let v = &(&inv0[2 * i] * r[j]) + &(&inv0[2 * i + 1] * r[2 + j]);
                    let mut e = x.entry(i, j).clone();
                    e.set_coeff(n, -v);
                    x.set(i, j, e);
                }
            }
        }
        Ok(x)
    }
}

impl fmt::Display for StarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ChartId};
    use crate::expr::parse_poly;
    use crate::poisson::{poisson_bracket, PoissonStructure};

    fn ctx(sigma: &str, order: usize) -> StarContext {
        StarContext::new(PoissonStructure::new(1, parse_poly(sigma).unwrap()).unwrap(), order).unwrap()
    }

    fn polys(items: &[&str]) -> Vec<LaurentPoly> {
        items.iter().map(|s| parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn identity_squared() {
        let c = ctx("1", 2);
        let id = StarMatrix::identity(2, &c);
        assert_eq!(id.mul(&id).unwrap(), id);
    }

    #[test]
    fn diagonal_inverse() {
        let c = ctx("1", 2);
        let a = StarMatrix::from_polys(2, 2, polys(&["z", "0", "0", "z^-1"]), &c).unwrap();
        let b = StarMatrix::from_polys(2, 2, polys(&["z^-1", "0", "0", "z"]), &c).unwrap();
        assert_eq!(a.mul(&b).unwrap(), StarMatrix::identity(2, &c));
    }

    #[test]
    fn upper_triangular_inverse_places_the_bracket_at_first_order() {
        let c = ctx("u", 1);
        let j = 2;
        let q = parse_poly("z u").unwrap();
        let zj = LaurentPoly::monomial(j, 0);
        let zmj = LaurentPoly::monomial(-j, 0);
        let t = StarMatrix::from_polys(2, 2, vec![zj.clone(), q.clone(), LaurentPoly::zero(), zmj.clone()], &c)
            .unwrap();
        let inv = t.right_inverse().unwrap();
        assert_eq!(t.mul(&inv).unwrap(), StarMatrix::identity(2, &c));
        let bracket = poisson_bracket(c.sigma(), &zj, &q, ChartId::UV);
        let expected = HbarSeries::from_coeffs(vec![-&q, (&zmj * &bracket).scale(&int(2))], 1);
        assert_eq!(inv.entry(0, 1), &expected);
    }

    #[test]
    fn singular_classical_limit_is_rejected() {
        let c = ctx("1", 1);
        let t = StarMatrix::from_polys(2, 2, polys(&["u", "0", "0", "1"]), &c).unwrap();
        assert!(matches!(
            t.right_inverse().unwrap_err(),
            Error::NonInvertibleClassicalLimit(_)
        ));
    }
}
