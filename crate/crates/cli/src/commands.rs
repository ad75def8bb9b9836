use serde_json::{json, Value};
use thiserror::Error;

use zkq_core::algebra::rational::format_rational;
use zkq_core::algebra::{ChartId, HbarSeries, LaurentPoly, Rational};
use zkq_core::bundles::{ext_reduce, filtration_reduce, line_bundle_normalize, LineBundleRep};
use zkq_core::cohomology::{h0_generators, h0_monomial_basis, relations_check};
use zkq_core::expr::{parse_poly, parse_series};
use zkq_core::invariants::{
    charge, epsilon, height, table1, width, BundleSpec, InvariantTriple, TruncationWindow,
};
use zkq_core::moduli::{
    default_deg_bound, endpoint_status, equivalence_oracle, fiber_dimension,
    fiber_dimension_oracle, rebel_level, stratify, ModuliPoint,
};
use zkq_core::poisson::{
    degeneracy_class, is_tangent_to_fiber, poisson_dim_on_neighborhood, poisson_generators,
    DegreeConvention, PoissonStructure,
};
use zkq_core::star::{closure_check, global_monomials, monomial_pairs, StarContext, StarMatrix};

use crate::envelope::table;
use crate::{
    BundleCmd, ChartArg, CohCmd, Command, ConventionArg, InvariantsCmd, ModuliCmd, PoissonCmd,
    QuantArgs, StarCmd,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] zkq_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_usage() => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
            }
            CliError::Usage(_) => "Usage".to_string(),
        }
    }
}

impl From<zkq_core::expr::ParseError> for CliError {
    fn from(e: zkq_core::expr::ParseError) -> Self {
        CliError::Core(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub struct Output {
    pub payload: Value,
    pub text: String,
    pub warnings: Vec<String>,
}

impl Output {
    fn new(payload: Value, text: String) -> Self {
        Output { payload, text, warnings: Vec::new() }
    }

    fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

pub(crate) fn sigma(k: u32, expr: &str) -> CliResult<PoissonStructure> {
    Ok(PoissonStructure::new(k, parse_poly(expr)?)?)
}

fn context(q: &QuantArgs) -> CliResult<StarContext> {
    Ok(StarContext::new(sigma(q.k, &q.sigma)?, q.order)?)
}

pub(crate) fn parse_point(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("'{}' is not a rational number", c.trim())))
        })
        .collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

/// The ħ² coefficient of `z²u ⋆ zu` for constant `σ` on `Z_2`.
const CONSTANT_SIGMA_K2_WARNING: &str = "constant sigma on Z_2 is not tangent to the fibre at infinity; the h^2 coefficient of z^2 u * z u is -2 z (a printed value of +2 for this coefficient is a known discrepancy)";

pub fn run(cmd: &Command) -> CliResult<Output> {
    match cmd {
        Command::Poisson(c) => poisson(c),
        Command::Star(c) => star(c),
        Command::Bundle(c) => bundle(c),
        Command::Moduli(c) => moduli(c),
        Command::Sweep(a) => crate::sweep::run(a),
        Command::Invariants(c) => invariants(c),
        Command::Coh(c) => coh(c),
    }
}

fn poisson(cmd: &PoissonCmd) -> CliResult<Output> {
    match cmd {
        PoissonCmd::Gens(a) => {
            let gens = poisson_generators(a.k);
            let rows: Vec<Vec<String>> = gens
                .iter()
                .map(|s| {
                    vec![
                        s.sigma_u().to_string(),
                        s.sigma_v().display_with("xi", "v"),
                        is_tangent_to_fiber(s).to_string(),
                    ]
                })
                .collect();
            let payload = json!(gens
                .iter()
                .map(|s| json!({
                    "sigma_u": s.sigma_u().to_string(),
                    "sigma_v": s.sigma_v().display_with("xi", "v"),
                    "degeneracy": to_json(&degeneracy_class(s)),
                }))
                .collect::<Vec<_>>());
            Ok(Output::new(payload, table(&["sigma_U", "sigma_V", "tangent to fibre"], &rows)))
        }
        PoissonCmd::Classify { k, sigma: s } => {
            let s = sigma(*k, s)?;
            let d = degeneracy_class(&s);
            let text = format!(
                "sigma_U = {}\nsigma_V = {}\ncontains zero section: {}\ncontains fibre: {}\n",
                s.sigma_u(),
                s.sigma_v().display_with("xi", "v"),
                d.contains_zero_section,
                d.contains_fiber
            );
            let payload = json!({
                "sigma_u": s.sigma_u().to_string(),
                "sigma_v": s.sigma_v().display_with("xi", "v"),
                "degeneracy": to_json(&d),
            });
            Ok(Output::new(payload, text))
        }
        PoissonCmd::Dim { k, n, convention } => {
            let conv = match convention {
                ConventionArg::AtMost => DegreeConvention::AtMost,
                ConventionArg::Below => DegreeConvention::Below,
            };
            let d = poisson_dim_on_neighborhood(*k, *n, conv);
            let text = format!("count: {}\nclosed form: {}\n", d.count, d.closed_form);
            let mut out = Output::new(to_json(&d), text);
            if let Some(w) = &d.warning {
                out = out.warn(w.clone());
            }
            Ok(out)
        }
    }
}

fn series_json(s: &HbarSeries) -> Value {
    json!({ "text": s.to_string(), "coefficients": to_json(s) })
}

fn star(cmd: &StarCmd) -> CliResult<Output> {
    match cmd {
        StarCmd::Mul { quant, f, g, chart } => {
            let ctx = context(quant)?;
            let f = parse_series(f, ctx.order())?;
            let g = parse_series(g, ctx.order())?;
            let (prod, text) = match chart {
                ChartArg::V => {
                    let p = ctx.star_on_chart(&f, &g, ChartId::V);
                    let t = p.display_with("xi", "v");
                    (p, t)
                }
                ChartArg::U | ChartArg::Uv => {
                    let id = if matches!(chart, ChartArg::U) { ChartId::U } else { ChartId::UV };
                    let p = ctx.star_on_chart(&f, &g, id);
                    let t = p.to_string();
                    (p, t)
                }
            };
            let payload = json!({
                "product": series_json(&prod),
                "engine": to_json(&ctx.engine()),
                "quantization_chart": to_json(&ctx.quant_chart()),
            });
            let mut out = Output::new(payload, text + "\n");
            if quant.k == 2 && ctx.sigma().is_constant() {
                out = out.warn(CONSTANT_SIGMA_K2_WARNING);
            }
            Ok(out)
        }
        StarCmd::CheckClosure { k, sigma: s, order, max_ki } => {
            let ctx = StarContext::new(sigma(*k, s)?, *order)?;
            let pairs = monomial_pairs(&global_monomials(*k, *max_ki));
            let res = closure_check(&ctx, *k, &pairs);
            let text = match &res {
                zkq_core::star::ClosureResult::Pass { pairs_checked } => {
                    format!("closed: {pairs_checked} pairs of global monomials\n")
                }
                zkq_core::star::ClosureResult::Witness { f, g, n, monomial, coeff } => format!(
                    "not closed: ({f}) * ({g}) has {} {} at h^{n}\n",
                    format_rational(coeff),
                    LaurentPoly::monomial(monomial.z, monomial.u)
                ),
            };
            let mut out = Output::new(to_json(&res), text);
            if *k == 2 && ctx.sigma().is_constant() {
                out = out.warn(CONSTANT_SIGMA_K2_WARNING);
            }
            Ok(out)
        }
    }
}

fn bundle(cmd: &BundleCmd) -> CliResult<Output> {
    match cmd {
        BundleCmd::Normalize { quant, f } => {
            let ctx = context(quant)?;
            let f = parse_series(f, ctx.order())?;
            let (j, w) = line_bundle_normalize(&LineBundleRep::new(f, &ctx))?;
            let text = format!("j = {j}\nnormal form: {}\n", LaurentPoly::monomial(-j, 0));
            let payload = json!({ "j": j, "witness": to_json(&w) });
            Ok(Output::new(payload, text))
        }
        BundleCmd::ExtReduce { quant, j, p } => {
            let ctx = context(quant)?;
            let p = parse_series(p, ctx.order())?;
            let (class, w) = ext_reduce(quant.k, *j, &p, &ctx)?;
            let text = format!("canonical class: {}\n", class.p);
            let payload = json!({ "class": series_json(&class.p), "witness": to_json(&w) });
            Ok(Output::new(payload, text))
        }
        BundleCmd::Filter { quant, matrix } => {
            let ctx = context(quant)?;
            let entries = matrix
                .split(';')
                .map(|e| parse_series(e.trim(), ctx.order()))
                .collect::<Result<Vec<_>, _>>()?;
            if entries.len() != 4 {
                return Err(CliError::Usage(format!(
                    "--matrix needs 4 entries separated by ';', got {}",
                    entries.len()
                )));
            }
            let t = StarMatrix::new(2, 2, entries, &ctx)?;
            let (out, w) = filtration_reduce(&t, &ctx)?;
            let text = format!("normal form: {out}\n");
            let payload = json!({ "matrix": to_json(&out), "text": out.to_string(), "witness": to_json(&w) });
            Ok(Output::new(payload, text))
        }
    }
}

fn moduli(cmd: &ModuliCmd) -> CliResult<Output> {
    match cmd {
        ModuliCmd::Stratify { k, j } => {
            let strata = stratify(*k, *j)?;
            let endpoint = endpoint_status(*k, *j)?;
            let rows: Vec<Vec<String>> = strata
                .iter()
                .map(|s| vec![format!("S_{}", s.index), s.fiber_dim.to_string(), s.description.clone()])
                .collect();
            let mut text = table(&["stratum", "fibre dim", "pattern"], &rows);
            if endpoint.excluded {
                text.push_str(&format!(
                    "endpoint [0:...:0:1] excluded (charge {})\n",
                    endpoint.charge.map_or("unknown".to_string(), |c| c.to_string())
                ));
            }
            let payload = json!({ "strata": to_json(&strata), "endpoint": to_json(&endpoint) });
            Ok(Output::new(payload, text))
        }
        ModuliCmd::Rebel { k, j, sigma: s, point } => {
            let p = ModuliPoint::new(*k, *j, parse_point(point)?)?;
            let level = rebel_level(&p, &sigma(*k, s)?)?;
            let text = format!(
                "rebel level: {level}\nstratum: S_{}\n",
                fiber_dimension(&p)
            );
            let payload = json!({
                "point": to_json(&p),
                "rebel_level": level,
                "stratum": fiber_dimension(&p),
            });
            Ok(Output::new(payload, text))
        }
        ModuliCmd::Oracle { k, j, sigma: s, point, p_prime, q_prime, deg_bound } => {
            let p = ModuliPoint::new(*k, *j, parse_point(point)?)?;
            let s = sigma(*k, s)?;
            let bound = deg_bound.unwrap_or_else(|| default_deg_bound(*k, *j));
            let dim = fiber_dimension_oracle(&p, &s, bound)?;
            let mut text = format!("fibre dimension (oracle): {dim}\n");
            let mut payload = json!({ "point": to_json(&p), "fiber_dim": dim, "deg_bound": bound });
            if let (Some(pp), Some(qp)) = (p_prime, q_prime) {
                let ans = equivalence_oracle(&p, &parse_point(pp)?, &parse_point(qp)?, &s, bound)?;
                text.push_str(&format!("equivalent: {}\n", ans.equivalent));
                for (name, value) in &ans.witness {
                    text.push_str(&format!("  {name} = {value}\n"));
                }
                payload["equivalence"] = to_json(&ans);
            }
            Ok(Output::new(payload, text))
        }
    }
}

pub(crate) fn parse_window(text: &str) -> CliResult<TruncationWindow> {
    let parts: Vec<i64> = text
        .split(':')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("window '{text}' is not z_lo:z_hi:u_lo:u_hi")))?;
    let [z_lo, z_hi, u_lo, u_hi] = parts[..] else {
        return Err(CliError::Usage(format!("window '{text}' needs four integers")));
    };
    Ok(TruncationWindow::new(z_lo, z_hi, u_lo, u_hi)?)
}

fn triple_row(label: &str, t: &InvariantTriple) -> Vec<String> {
    vec![label.to_string(), t.width.to_string(), t.height.to_string(), t.charge.to_string()]
}

fn invariants(cmd: &InvariantsCmd) -> CliResult<Output> {
    match cmd {
        InvariantsCmd::Charge { k, j, p, window } => {
            let b = BundleSpec::new(*k, *j, parse_poly(p)?)?;
            let t = match window {
                None => charge(&b)?,
                Some(w) => {
                    let w = parse_window(w)?;
                    let hw = TruncationWindow { u_lo: w.u_lo.max(0), ..w };
                    let (width, height) = (width(&b, &w)?, height(&b, &hw)?);
                    InvariantTriple { width, height, charge: width + height + epsilon(*k) }
                }
            };
            let text = table(&["p", "width", "height", "charge"], &[triple_row(&b.p.to_string(), &t)]);
            Ok(Output::new(json!({ "p": b.p.to_string(), "invariants": to_json(&t) }), text))
        }
        InvariantsCmd::Table1 => {
            let rows = table1()?;
            let text = table(
                &["monomial", "width", "height", "charge"],
                &rows.iter().map(|(l, t)| triple_row(l, t)).collect::<Vec<_>>(),
            );
            let payload = json!(rows
                .iter()
                .map(|(l, t)| json!({ "monomial": l, "width": t.width, "height": t.height, "charge": t.charge }))
                .collect::<Vec<_>>());
            Ok(Output::new(payload, text))
        }
    }
}

fn coh(cmd: &CohCmd) -> CliResult<Output> {
    match cmd {
        CohCmd::Gens { k, twist } => {
            if *k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let pres = h0_generators(*k, *twist);
            let ok = relations_check(&pres, *k);
            let gens: Vec<String> = pres.generators.iter().map(|g| g.to_string()).collect();
            let text = format!(
                "generators ({}): {}\nrelations: {}\nrelations hold: {ok}\n",
                gens.len(),
                gens.join(", "),
                pres.relations.len()
            );
            let payload = json!({ "presentation": to_json(&pres), "relations_hold": ok });
            Ok(Output::new(payload, text))
        }
        CohCmd::Basis { k, twist, u_cutoff } => {
            if *k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let basis = h0_monomial_basis(*k, *twist, *u_cutoff);
            let monos: Vec<String> = basis
                .iter()
                .map(|(l, i)| LaurentPoly::monomial(*l, *i).to_string())
                .collect();
            let text = format!("{} monomials: {}\n", monos.len(), monos.join(", "));
            Ok(Output::new(json!({ "monomials": monos }), text))
        }
    }
}
