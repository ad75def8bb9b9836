use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use zkq_core::algebra::{int, Rational};
use zkq_core::moduli::{
    default_deg_bound, endpoint_status, fiber_dimension_oracle, rebel_level, ModuliPoint,
};

use crate::commands::{sigma, CliError, CliResult, Output};
use crate::envelope::table;
use crate::SweepArgs;

#[derive(Debug, Serialize)]
struct Cell {
    k: u32,
    j: i64,
    sigma: String,
    point: String,
    rebel_level: Option<usize>,
    oracle: Option<usize>,
    agree: Option<bool>,
    error: Option<String>,
}

fn list<T: std::str::FromStr>(text: &str, sep: char, what: &str) -> CliResult<Vec<T>> {
    text.split(sep)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("bad {what} value '{s}'"))))
        .collect()
}

/// Points with entries in {0, t+1} at position t, all nonzero patterns.
fn patterns(m: usize) -> impl Iterator<Item = Vec<Rational>> {
    (1u64..(1 << m)).map(move |mask| {
        (0..m)
            .map(|t| if mask >> t & 1 == 1 { int(t as i64 + 1) } else { int(0) })
            .collect()
    })
}

fn point_label(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(":"))
}

fn cell(k: u32, j: i64, s: &str, p1: Vec<Rational>, deg_bound: Option<usize>) -> Cell {
    let mut c = Cell {
        k,
        j,
        sigma: s.to_string(),
        point: point_label(&p1),
        rebel_level: None,
        oracle: None,
        agree: None,
        error: None,
    };
    let result = (|| -> CliResult<(usize, usize)> {
        let p = ModuliPoint::new(k, j, p1)?;
        let s = sigma(k, s)?;
        let level = rebel_level(&p, &s)?;
        let bound = deg_bound.unwrap_or_else(|| default_deg_bound(k, j));
        Ok((level, fiber_dimension_oracle(&p, &s, bound)?))
    })();
    match result {
        Ok((level, oracle)) => {
            c.rebel_level = Some(level);
            c.oracle = Some(oracle);
            c.agree = Some(level == oracle);
        }
        Err(e) => c.error = Some(format!("{}: {e}", e.kind())),
    }
    c
}

pub fn run(args: &SweepArgs) -> CliResult<Output> {
    let ks: Vec<u32> = list(&args.k, ',', "k")?;
    let js: Vec<i64> = list(&args.j, ',', "j")?;
    let sigmas: Vec<String> = list(&args.sigma, ';', "sigma")?;

    let mut jobs = Vec::new();
    for &k in &ks {
        for &j in &js {
            let m = 2 * j - k as i64 - 1;
            if m < 1 {
                continue;
            }
            let skip_endpoint = endpoint_status(k, j).map(|e| e.excluded).unwrap_or(false);
            for s in &sigmas {
                for p in patterns(m as usize) {
                    let is_endpoint = p[..p.len() - 1].iter().all(|c| *c == int(0));
                    if skip_endpoint && is_endpoint {
                        continue;
                    }
                    jobs.push((k, j, s.clone(), p));
                }
            }
        }
    }
    let cells: Vec<Cell> = jobs
        .into_par_iter()
        .map(|(k, j, s, p)| cell(k, j, &s, p, args.deg_bound))
        .collect();

    let compared = cells.iter().filter(|c| c.agree.is_some()).count();
    let agreed = cells.iter().filter(|c| c.agree == Some(true)).count();
    let errors = cells.len() - compared;
    let rate = if compared == 0 { None } else { Some(agreed as f64 / compared as f64) };

    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            vec![
                c.k.to_string(),
                c.j.to_string(),
                c.sigma.clone(),
                c.point.clone(),
                show(c.rebel_level),
                show(c.oracle),
                c.error.clone().unwrap_or_else(|| if c.agree == Some(true) { "agree" } else { "DISAGREE" }.into()),
            ]
        })
        .collect();
    let mut text = table(&["k", "j", "sigma", "point", "rebel", "oracle", "status"], &rows);
    text.push_str(&format!(
        "agreement: {agreed}/{compared}{}; errors: {errors}\n",
        rate.map_or(String::new(), |r| format!(" ({:.1}%)", 100.0 * r))
    ));
    let payload = json!({
        "cells": cells,
        "summary": { "cells": cells.len(), "compared": compared, "agreed": agreed, "errors": errors, "agreement": rate },
    });
    Ok(Output { payload, text, warnings: Vec::new() })
}
