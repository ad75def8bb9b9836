use super::line::{classical_unit, line_bundle_normalize, LineBundleRep};
use super::split::split_h1;
use super::witness::GaugeWitness;
use crate::algebra::{HbarSeries, LaurentPoly};
use crate::error::{Error, Result};
use crate::star::{StarContext, StarMatrix};

fn not_filtered(msg: impl Into<String>) -> Error {
    Error::NotClassicallyFiltered(msg.into())
}

/// Diagonal gauges making both diagonal entries exact powers of `z`.
fn normalize_diagonal(t: &StarMatrix, ctx: &StarContext) -> Result<(StarMatrix, StarMatrix)> {
    let order = ctx.order();
    let mut left = vec![HbarSeries::zero(order); 4];
    let mut right = vec![HbarSeries::zero(order); 4];
    for d in 0..2 {
        let rep = LineBundleRep::new(t.entry(d, d).clone(), ctx);
        let (_, w) = line_bundle_normalize(&rep)?;
        let GaugeWitness::Line { alpha, a } = w else {
            unreachable!("line normalization returns a line witness")
        };
        left[3 * d] = alpha;
        right[3 * d] = a;
    }
    Ok((
        StarMatrix::new(2, 2, left, ctx)?,
        StarMatrix::new(2, 2, right, ctx)?,
    ))
}

fn lowest_nonzero_order(s: &HbarSeries) -> Option<usize> {
    s.coeffs().iter().position(|c| !c.is_zero())
}

/// Reduces a classically upper-triangular 2×2 transition matrix to
/// `(z^{j1}, b; 0, z^{j2})` up to the context's order.
///
/// Each step clears the lowest-order lower-left coefficient `c_N` with the
/// gauges `(1, 0; γħ^N, 1)` on `V` and `(1, 0; c'ħ^N, 1)` on `U`, where
/// `z^{j2} c' + z^{j1} γ = −c_N`, then re-normalizes the diagonal.
pub fn filtration_reduce(t: &StarMatrix, ctx: &StarContext) -> Result<(StarMatrix, GaugeWitness)> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(Error::Shape("filtration_reduce needs a 2x2 matrix".into()));
    }
    if !t.entry(1, 0).classical_limit().is_zero() {
        return Err(not_filtered(format!(
            "lower-left classical entry is {}",
            t.entry(1, 0).classical_limit()
        )));
    }
    let (_, m1) = classical_unit(t.entry(0, 0).classical_limit())
        .map_err(|_| not_filtered(format!("diagonal entry {} is not a unit", t.entry(0, 0))))?;
    let (_, m2) = classical_unit(t.entry(1, 1).classical_limit())
        .map_err(|_| not_filtered(format!("diagonal entry {} is not a unit", t.entry(1, 1))))?;
    let (j1, j2) = (m1, m2);
    if j1 < j2 {
        return Err(not_filtered(format!(
            "diagonal degrees ({j1}, {j2}) need j1 >= j2 for the filtration to split"
        )));
    }
    let order = ctx.order();
    let t_in = StarMatrix::new(2, 2, t.entries().to_vec(), ctx)?;
    let mut a_v = StarMatrix::identity(2, ctx);
    let mut a_u = StarMatrix::identity(2, ctx);
    let mut cur = t_in.clone();
    for _ in 0..=order + 1 {
        let (dl, dr) = normalize_diagonal(&cur, ctx)?;
        cur = dl.mul(&cur)?.mul(&dr)?;
        a_v = dl.mul(&a_v)?;
        a_u = a_u.mul(&dr)?;
        let Some(n) = lowest_nonzero_order(cur.entry(1, 0)) else {
            break;
        };
        let c_n = cur.entry(1, 0).coeff(n).clone();
        let split = split_h1(&-c_n, j1, j2, ctx.k());
        if !split.is_exact() {
            return Err(not_filtered(format!("obstruction {}", split.obstruction)));
        }
        let mut gamma = HbarSeries::zero(order);
        gamma.set_coeff(n, split.x_v);
        let mut c_prime = HbarSeries::zero(order);
        c_prime.set_coeff(n, split.x_u);
        let one = HbarSeries::one(order);
        let zero = HbarSeries::zero(order);
        let left = StarMatrix::new(2, 2, vec![one.clone(), zero.clone(), gamma, one.clone()], ctx)?;
        let right = StarMatrix::new(2, 2, vec![one.clone(), zero, c_prime, one], ctx)?;
        cur = left.mul(&cur)?.mul(&right)?;
        a_v = left.mul(&a_v)?;
        a_u = a_u.mul(&right)?;
    }
    let witness = GaugeWitness::Matrix { a_v, a_u };
    let out = witness
        .replay_matrix(&t_in)
        .expect("matrix witness")?;
    let canonical = out.entry(1, 0).is_zero()
        && out.entry(0, 0) == &HbarSeries::from_poly(LaurentPoly::monomial(j1, 0), order)
        && out.entry(1, 1) == &HbarSeries::from_poly(LaurentPoly::monomial(j2, 0), order);
    if !canonical {
        return Err(not_filtered(format!("reduction did not converge: {out}")));
    }
    Ok((out, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_series;
    use crate::poisson::PoissonStructure;

    fn sigma0(order: usize) -> StarContext {
        StarContext::new(PoissonStructure::new(1, LaurentPoly::one()).unwrap(), order).unwrap()
    }

    fn mat(entries: [&str; 4], ctx: &StarContext) -> StarMatrix {
        let e = entries
            .iter()
            .map(|s| parse_series(s, ctx.order()).unwrap())
            .collect();
        StarMatrix::new(2, 2, e, ctx).unwrap()
    }

    #[test]
    fn clears_first_order_lower_left() {
        let ctx = sigma0(1);
        let t = mat(["z^2", "z u", "u h", "z^-2"], &ctx);
        let (out, w) = filtration_reduce(&t, &ctx).unwrap();
        assert!(out.entry(1, 0).is_zero());
        assert_eq!(out.entry(0, 0), &parse_series("z^2", 1).unwrap());
        assert_eq!(out.entry(1, 1), &parse_series("z^-2", 1).unwrap());
        assert_eq!(w.replay_matrix(&t).unwrap().unwrap(), out);
    }

    #[test]
    fn canonical_input_gets_identity_witness() {
        let ctx = sigma0(2);
        let t = mat(["z^3", "u + z u h", "0", "z^-3"], &ctx);
        let (out, w) = filtration_reduce(&t, &ctx).unwrap();
        assert_eq!(out, t);
        assert_eq!(
            w,
            GaugeWitness::Matrix {
                a_v: StarMatrix::identity(2, &ctx),
                a_u: StarMatrix::identity(2, &ctx)
            }
        );
    }

    #[test]
    fn undoes_a_conjugation() {
        let ctx = sigma0(2);
        let t = mat(["z^2", "0", "0", "z^-2"], &ctx);
        let left = mat(["1 + z^-1 h", "z^-2 u h", "z^-1 u h", "1 - u h^2"], &ctx);
        let right = mat(["1 + z u h", "z^2 h", "u h^2", "1 + h"], &ctx);
        let mixed = left.mul(&t).unwrap().mul(&right).unwrap();
        let (out, w) = filtration_reduce(&mixed, &ctx).unwrap();
        assert!(out.entry(1, 0).is_zero());
        assert_eq!(out.entry(0, 0), t.entry(0, 0));
        assert_eq!(out.entry(1, 1), t.entry(1, 1));
        assert_eq!(w.replay_matrix(&mixed).unwrap().unwrap(), out);
    }

    #[test]
    fn rejects_unfiltered_input() {
        let ctx = sigma0(1);
        let t = mat(["z^2", "0", "u", "z^-2"], &ctx);
        assert!(matches!(
            filtration_reduce(&t, &ctx).unwrap_err(),
            Error::NotClassicallyFiltered(_)
        ));
    }
}
