//! Width, height and normalized charge of rank-2 bundles on `Z_k`.
//!
//! A bundle is given by the transition `T = (z^j, p; 0, z^{-j})` taking
//! `U`-frames to `V`-frames: a section is a pair with `s_V = T s_U`. All
//! computations are exact Čech linear algebra on monomial windows.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{LaurentPoly, Rational};
use crate::bundles::{in_window, restriction_splitting_type};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleSpec {
    pub k: u32,
    pub j: i64,
    pub p: LaurentPoly,
}

impl BundleSpec {
    pub fn new(k: u32, j: i64, p: LaurentPoly) -> Result<Self> {
        if k == 0 || j < 0 {
            return Err(Error::InvalidArgument(format!("need k >= 1 and j >= 0, got k={k}, j={j}")));
        }
        if let Some(m) = p.monomials().find(|m| !in_window(k, j, *m)) {
            return Err(Error::InvalidArgument(format!(
                "{m} lies outside W(k={k}, j={j})"
            )));
        }
        Ok(BundleSpec { k, j, p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantTriple {
    pub width: usize,
    pub height: usize,
    pub charge: usize,
}

/// `ε = 1` for `k ≥ 2`.
pub fn epsilon(k: u32) -> usize {
    usize::from(k >= 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruncationWindow {
    pub z_lo: i64,
    pub z_hi: i64,
    pub u_lo: i64,
    pub u_hi: i64,
}

impl TruncationWindow {
    pub fn new(z_lo: i64, z_hi: i64, u_lo: i64, u_hi: i64) -> Result<Self> {
        if z_lo > z_hi || u_lo > u_hi {
            return Err(Error::InvalidArgument(format!(
                "empty window z[{z_lo},{z_hi}] u[{u_lo},{u_hi}]"
            )));
        }
        Ok(TruncationWindow { z_lo, z_hi, u_lo, u_hi })
    }

    pub fn default_width(k: u32, j: i64) -> Self {
        let z = 2 * j + k as i64 + 2;
        TruncationWindow { z_lo: -z, z_hi: z, u_lo: -(j + 2), u_hi: j + 2 }
    }

    pub fn default_height(k: u32, j: i64) -> Self {
        let z = 2 * j + k as i64 + 2;
        TruncationWindow { z_lo: -z, z_hi: z, u_lo: 0, u_hi: j + 2 }
    }

    pub fn scaled(&self, factor: i64) -> Self {
        TruncationWindow {
            z_lo: self.z_lo * factor,
            z_hi: self.z_hi * factor,
            u_lo: self.u_lo * factor,
            u_hi: self.u_hi * factor,
        }
    }

    pub fn widened(&self, margin: i64) -> Self {
        TruncationWindow {
            z_lo: self.z_lo - margin,
            z_hi: self.z_hi + margin,
            u_lo: if self.u_lo < 0 { self.u_lo - margin } else { self.u_lo },
            u_hi: self.u_hi + margin,
        }
    }
}

/// `T·(e_comp · z^l u^i)` as `(component, monomial) → coefficient`.
fn apply_t(b: &BundleSpec, comp: usize, l: i64, i: i64) -> Vec<(usize, i64, i64, Rational)> {
    let one = Rational::from_integer(1.into());
    if comp == 0 {
        return vec![(0, l + b.j, i, one)];
    }
    let mut out: Vec<_> = b
        .p
        .terms()
        .map(|(m, c)| (0, m.z + l, m.u as i64 + i, c.clone()))
        .collect();
    out.push((1, l - b.j, i, one));
    out
}

/// `dim H¹(Z_k, E)` with cochains truncated to `w` (`u ≥ 0`).
pub fn height_at(b: &BundleSpec, w: &TruncationWindow) -> usize {
    let k = b.k as i64;
    // V-coboundaries kill every monomial with l ≤ k i, so only the rest is indexed
    let mut index: BTreeMap<(usize, i64, i64), usize> = BTreeMap::new();
    for comp in 0..2 {
        for i in 0.max(w.u_lo)..=w.u_hi {
            for l in w.z_lo.max(k * i + 1)..=w.z_hi {
                let n = index.len();
                index.insert((comp, l, i), n);
            }
        }
    }
    let reach = w.z_hi + b.j + b.p.max_z().unwrap_or(0).abs() + 1;
    let mut basis = EchelonBasis::new();
    for comp in 0..2 {
        for i in 0..=w.u_hi {
            for l in 0..=reach {
                let v: SparseVec = apply_t(b, comp, l, i)
                    .into_iter()
                    .filter_map(|(c, z, u, x)| index.get(&(c, z, u)).map(|r| (*r, x)))
                    .collect();
                if !v.is_empty() {
                    basis.insert(v);
                }
            }
        }
    }
    index.len() - basis.rank()
}

/// `dim H⁰(Z_k∖ℓ, E) / H⁰(Z_k, E)` with sections truncated to `w`.
pub fn width_at(b: &BundleSpec, w: &TruncationWindow) -> usize {
    let k = b.k as i64;
    let mut unknowns: BTreeMap<(usize, i64, i64), usize> = BTreeMap::new();
    for comp in 0..2 {
        for i in w.u_lo..=w.u_hi {
            for l in 0.max(w.z_lo)..=w.z_hi {
                let n = unknowns.len();
                unknowns.insert((comp, l, i), n);
            }
        }
    }
    // one constraint row per output monomial that is not holomorphic on V∖ℓ
    let mut rows: BTreeMap<(usize, i64, i64), SparseVec> = BTreeMap::new();
    for (&(comp, l, i), &col) in &unknowns {
        for (c, z, u, x) in apply_t(b, comp, l, i) {
            if z > k * u {
                let entry = rows.entry((c, z, u)).or_default().entry(col).or_default();
                *entry += x;
            }
        }
    }
    let negative: std::collections::BTreeSet<usize> = unknowns
        .iter()
        .filter(|((_, _, i), _)| *i < 0)
        .map(|(_, c)| *c)
        .collect();
    let mut full = EchelonBasis::new();
    let mut nonneg = EchelonBasis::new();
    for row in rows.into_values() {
        let row: SparseVec = row.into_iter().filter(|(_, x)| *x != Rational::from_integer(0.into())).collect();
        let kept: SparseVec = row
            .iter()
            .filter(|(c, _)| !negative.contains(c))
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        full.insert(row);
        nonneg.insert(kept);
    }
    negative.len() + nonneg.rank() - full.rank()
}

/// Runs `f` on `w`, `2w`, `4w` until two consecutive windows agree.
fn stabilized(
    quantity: &'static str,
    w: &TruncationWindow,
    f: impl Fn(&TruncationWindow) -> usize,
) -> Result<usize> {
    let cap = max_scale();
    let mut history = vec![f(w)];
    let mut scale = 2;
    while scale <= cap {
        let next = f(&w.scaled(scale));
        let prev = *history.last().expect("nonempty");
        history.push(next);
        if next == prev {
            return Ok(next);
        }
        scale *= 2;
    }
    Err(Error::NonStabilized {
        quantity,
        history,
    })
}

/// Largest window multiple tried before giving up (default 4).
fn max_scale() -> i64 {
    std::env::var("ZKQ_MAX_WINDOW")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|s: &i64| *s >= 2)
        .unwrap_or(4)
}

pub fn height(b: &BundleSpec, w: &TruncationWindow) -> Result<usize> {
    stabilized("height", w, |w| height_at(b, w))
}

pub fn width(b: &BundleSpec, w: &TruncationWindow) -> Result<usize> {
    stabilized("width", w, |w| width_at(b, w))
}

pub fn charge(b: &BundleSpec) -> Result<InvariantTriple> {
    let width = width(b, &TruncationWindow::default_width(b.k, b.j))?;
    let height = height(b, &TruncationWindow::default_height(b.k, b.j))?;
    Ok(InvariantTriple {
        width,
        height,
        charge: width + height + epsilon(b.k),
    })
}

/// Lemma-style instanton test: the splitting type is a multiple of `k`.
pub fn is_instanton(k: u32, t0: &[LaurentPoly]) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let (a, _) = restriction_splitting_type(t0)?;
    Ok(a.rem_euclid(k as i64) == 0)
}

/// `h¹(Z_k, L)` for the line bundle with transition `z^t` (`s_V = z^t s_U`),
/// counted on a window of monomials.
pub fn line_bundle_h1(k: u32, t: i64, w: &TruncationWindow) -> usize {
    let k = k as i64;
    let mut count = 0;
    for i in 0.max(w.u_lo)..=w.u_hi {
        for l in w.z_lo..=w.z_hi {
            // U-coboundaries reach l ≥ t, V-coboundaries l ≤ k i
            if l > k * i && l < t {
                count += 1;
            }
        }
    }
    count
}

/// The eleven rows for `k = 1`, `j = 3`, in display order.
pub const TABLE1_ROWS: [&str; 11] = [
    "z^-1 u", "u", "z u", "z^2 u", "u^2", "z u^2", "z^2 u^2", "z u^3", "z^2 u^3", "z^2 u^4", "0",
];

pub fn table1() -> Result<Vec<(String, InvariantTriple)>> {
    TABLE1_ROWS
        .par_iter()
        .map(|row| {
            let p = crate::expr::parse_poly(row)?;
            let triple = charge(&BundleSpec::new(1, 3, p)?)?;
            let label = if *row == "0" { "zero".to_string() } else { row.to_string() };
            Ok((label, triple))
        })
        .collect()
}
