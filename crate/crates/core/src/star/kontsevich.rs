use crate::algebra::{rat, HbarSeries, LaurentPoly, Var};
use crate::error::{Error, Result};
use crate::poisson::PoissonStructure;

const VARS: [Var; 2] = [Var::Z, Var::U];

/// Entries of the bivector `σ^{ij}` with index 0 = z, 1 = u.
fn sigma_entry(sigma_u: &LaurentPoly, i: usize, j: usize) -> LaurentPoly {
    match (i, j) {
        (0, 1) => sigma_u.clone(),
        (1, 0) => -sigma_u,
        _ => LaurentPoly::zero(),
    }
}

/// `B_n` of the Kontsevich product for `n ≤ 2`, written as the index sums over `{z, u}`.
pub fn kontsevich2_bidifferential(
    n: usize,
    f: &LaurentPoly,
    g: &LaurentPoly,
    sigma_u: &LaurentPoly,
) -> Result<LaurentPoly> {
    let sig: Vec<Vec<LaurentPoly>> = (0..2)
        .map(|i| (0..2).map(|j| sigma_entry(sigma_u, i, j)).collect())
        .collect();
    let d1 = |h: &LaurentPoly| -> Vec<LaurentPoly> { VARS.iter().map(|v| h.derive(*v)).collect() };
    match n {
        0 => Ok(f * g),
        1 => {
            let (df, dg) = (d1(f), d1(g));
            let mut acc = LaurentPoly::zero();
            for i in 0..2 {
                for j in 0..2 {
                    if !sig[i][j].is_zero() {
                        acc += &(&sig[i][j] * &(&df[i] * &dg[j]));
                    }
                }
            }
            Ok(acc)
        }
        2 => {
            let (df, dg) = (d1(f), d1(g));
            let ddf: Vec<Vec<LaurentPoly>> = df.iter().map(&d1).collect();
            let ddg: Vec<Vec<LaurentPoly>> = dg.iter().map(&d1).collect();
            // dsig[m][i][j] = ∂_m σ^{ij}
            let dsig: Vec<Vec<Vec<LaurentPoly>>> = VARS
                .iter()
                .map(|v| {
                    sig.iter()
                        .map(|row| row.iter().map(|s| s.derive(*v)).collect())
                        .collect()
                })
                .collect();
            let mut t1 = LaurentPoly::zero();
            let mut t2 = LaurentPoly::zero();
            let mut t3 = LaurentPoly::zero();
            let mut t4 = LaurentPoly::zero();
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            if !sig[i][j].is_zero() && !sig[k][l].is_zero() {
                                t1 += &(&(&sig[i][j] * &sig[k][l]) * &(&ddf[i][k] * &ddg[j][l]));
                            }
                            if !sig[i][j].is_zero() && !dsig[i][k][l].is_zero() {
                                t2 += &(&(&sig[i][j] * &dsig[i][k][l]) * &(&ddf[j][l] * &dg[k]));
                            }
                            if !sig[k][l].is_zero() && !dsig[k][i][j].is_zero() {
                                t3 += &(&(&sig[k][l] * &dsig[k][i][j]) * &(&df[i] * &ddg[j][l]));
                            }
                            if !dsig[l][i][j].is_zero() && !dsig[j][k][l].is_zero() {
                                t4 += &(&(&dsig[l][i][j] * &dsig[j][k][l]) * &(&df[i] * &dg[k]));
                            }
                        }
                    }
                }
            }
            let mut acc = t1.scale(&rat(1, 2));
            acc += &t2.scale(&rat(1, 3));
            acc += &t3.scale(&rat(1, 3));
            acc -= &t4.scale(&rat(1, 6));
            Ok(acc)
        }
        _ => Err(Error::UnsupportedEngine(format!(
            "Kontsevich B_{n} is not implemented for non-constant sigma"
        ))),
    }
}

/// Kontsevich product through `ħ^order`, `order ≤ 2` unless `σ_U` is constant.
pub fn kontsevich2_star(
    f: &HbarSeries,
    g: &HbarSeries,
    sigma: &PoissonStructure,
    order: usize,
) -> Result<HbarSeries> {
    if order > 2 && !sigma.is_constant() {
        return Err(Error::UnsupportedEngine(format!(
            "order {order} exceeds the second-order Kontsevich weights"
        )));
    }
    if order > 2 {
        let c = sigma.sigma_u().constant_term();
        return Ok(super::moyal_star(f, g, &c, order));
    }
    let order = order.min(f.order()).min(g.order());
    let mut out = HbarSeries::zero(order);
    for (a, fa) in f.coeffs().iter().enumerate().take(order + 1) {
        for (b, gb) in g.coeffs().iter().enumerate().take(order + 1 - a) {
            if fa.is_zero() || gb.is_zero() {
                continue;
            }
            for n in 0..=(order - a - b) {
                let term = kontsevich2_bidifferential(n, fa, gb, sigma.sigma_u())?;
                out.add_to_coeff(a + b + n, &term);
            }
        }
    }
    Ok(out)
}
