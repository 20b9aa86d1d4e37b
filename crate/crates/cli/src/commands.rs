use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use freefermion::chains::{dispersion, gap_scan, ChainSpec};
use freefermion::indpoly::{free_spectrum, single_particle_energies, weighted_independence_polynomial, MAX_EXPANDED_MODES};
use freefermion::model::write_graph;
use freefermion::recognition::classify;
use freefermion::solver::{check_modes, incognito_modes};
use freefermion::verify::{verify_all, verify_free, Verdict, VerifyOptions};
use freefermion::{Error, Rational, Result, Scalar};

use crate::input::{Input, ModelArgs, ResolvedModel};
use crate::{ChainArgs, Command, Common, EXIT_NOT_FREE, EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED};

pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
    pub code: u8,
}

/// Everything needed to rerun a command.
#[derive(Serialize)]
struct RunConfig<'a> {
    version: &'static str,
    command: &'a Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<&'a ResolvedModel>,
}

fn config<'a>(command: &'a Command, model: Option<&'a ResolvedModel>) -> RunConfig<'a> {
    RunConfig { version: env!("CARGO_PKG_VERSION"), command, model }
}

fn json_output(mut body: Value, cfg: RunConfig, common: &Common, code: u8) -> Result<Output> {
    body["config"] = serde_json::to_value(&cfg).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&body).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    text.push('\n');
    Ok(Output { text, path: common.output.clone(), code })
}

pub fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Analyze { model, common } => analyze(command, model, common),
        Command::Solve { model, common, modes } => solve(command, model, common, *modes),
        Command::Verify { model, common, force, spectrum_only } => verify(command, model, common, *force, *spectrum_only),
        Command::Dispersion { chain, cells, output } => {
            let spec = ChainSpec::new(*cells, chain_b2(chain)?)?;
            let mut text = csv_header(command)?;
            text.push_str("p,epsilon\n");
            for pt in dispersion(&spec)? {
                text.push_str(&format!("{},{}\n", pt.momentum, pt.energy));
            }
            Ok(Output { text, path: output.clone(), code: EXIT_OK })
        }
        Command::Scan { chain, cells, larger, steps, last, output } => {
            let grid = if last.is_empty() { simplex(chain.k, *steps)? } else { line(chain.k, last)? };
            let points = gap_scan(&grid, *cells, *larger)?;
            let mut text = csv_header(command)?;
            let names: Vec<String> = (1..=chain.k).map(|i| format!("b{i}sq")).collect();
            text.push_str(&format!("{},gapN,gapNprime,flag\n", names.join(",")));
            for p in points {
                let b: Vec<String> = p.b2.iter().map(|x| x.to_f64().to_string()).collect();
                let flag = if p.gapless { "gapless" } else { "gapped" };
                text.push_str(&format!("{},{},{},{}\n", b.join(","), p.gap, p.gap_larger, flag));
            }
            Ok(Output { text, path: output.clone(), code: EXIT_OK })
        }
        Command::Generate { model, graph, output } => {
            let (input, _) = model.load()?;
            let text = if *graph { write_graph(&input.graph()) } else { input.hamiltonian()?.to_text() };
            Ok(Output { text, path: output.clone(), code: EXIT_OK })
        }
    }
}

fn csv_header(command: &Command) -> Result<String> {
    let cfg = serde_json::to_string(&config(command, None)).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(format!("# {cfg}\n"))
}

fn analyze(command: &Command, model: &ModelArgs, common: &Common) -> Result<Output> {
    let (input, resolved) = model.load()?;
    let g = input.graph();
    let cfg = config(command, Some(&resolved));
    let structure = match classify(&g, common.budget) {
        Ok(s) => s,
        Err(Error::Undecided { budget }) => {
            return json_output(json!({ "undecided": true, "budget": budget }), cfg, common, EXIT_UNDECIDED)
        }
        Err(e) => return Err(e),
    };
    let p = weighted_independence_polynomial(&g);
    let body = json!({
        "qubits": matches!(input, Input::Hamiltonian(_)).then(|| input.qubits()),
        "vertices": g.order(),
        "edges": g.edges(),
        "alpha": p.degree(),
        "ecf": structure.free,
        "obstruction": structure.obstruction(),
        "structure": structure,
        "polynomial": p.coefficients(),
    });
    json_output(body, cfg, common, EXIT_OK)
}

fn solve(command: &Command, model: &ModelArgs, common: &Common, with_modes: bool) -> Result<Output> {
    let (input, resolved) = model.load()?;
    let g = input.graph();
    let cfg = config(command, Some(&resolved));
    let structure = classify(&g, common.budget)?;
    if !structure.free {
        let body = json!({ "refused": true, "obstruction": structure.obstruction(), "structure": structure });
        return json_output(body, cfg, common, EXIT_NOT_FREE);
    }
    let p = weighted_independence_polynomial(&g);
    let e = single_particle_energies(&p)?;
    let n = input.qubits();
    let spectrum = if e.count() <= MAX_EXPANDED_MODES { Some(free_spectrum(&e, n)?) } else { None };
    let mut body = json!({
        "qubits": n,
        "alpha": e.count(),
        "energies": e.levels,
        "root_residual": e.residual,
        "ground_energy": -e.levels.iter().map(|l| l.energy * l.multiplicity as f64).sum::<f64>(),
        "degeneracy": format!("2^{}", n - e.count()),
        "spectrum": spectrum,
    });
    if with_modes {
        let h = input.hamiltonian()?;
        let set = incognito_modes(&h, None, common.budget)?;
        let modes: Vec<Value> = set
            .modes
            .iter()
            .enumerate()
            .map(|(j, m)| {
                json!({
                    "index": j,
                    "energy": m.energy,
                    "u": m.u,
                    "normalization": m.normalization,
                    "terms": m.operator.iter().count(),
                })
            })
            .collect();
        body["simplicial_clique"] = json!(set.extension.clique);
        body["modes"] = json!(modes);
        let checks = check_modes(&set)?;
        let ok = checks.max() <= common.tol;
        body["mode_checks"] = json!(checks);
        if !ok {
            return json_output(body, cfg, common, EXIT_ERROR);
        }
    }
    json_output(body, cfg, common, EXIT_OK)
}

fn verify(command: &Command, model: &ModelArgs, common: &Common, force: bool, spectrum_only: bool) -> Result<Output> {
    let (input, resolved) = model.load()?;
    let h = input.hamiltonian()?;
    let options = VerifyOptions { tolerance: common.tol, budget: common.budget, force_spectrum: force, ..VerifyOptions::default() };
    let report = if spectrum_only || force { verify_free(&h, &options)? } else { verify_all(&h, &options)? };
    let code = match (&report.verdict, report.passed) {
        (_, true) => EXIT_OK,
        (Verdict::Undecided { .. }, _) => EXIT_UNDECIDED,
        (Verdict::NotFree { .. }, _) if !force => EXIT_NOT_FREE,
        _ => EXIT_ERROR,
    };
    let body = serde_json::to_value(&report).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    json_output(body, config(command, Some(&resolved)), common, code)
}

fn rational(s: &str) -> Result<Rational> {
    Rational::parse_decimal(s).ok_or_else(|| Error::InvalidArgument(format!("cannot read {s:?}")))
}

fn chain_b2(args: &ChainArgs) -> Result<Vec<Rational>> {
    let k = args.k;
    if !(2..=8).contains(&k) {
        return Err(Error::InvalidArgument("--k must be between 2 and 8".into()));
    }
    let given = args.given();
    if given[k..].iter().any(|g| g.is_some()) {
        return Err(Error::InvalidArgument(format!("only b1sq..b{k}sq apply for k = {k}")));
    }
    let parsed: Vec<Option<Rational>> = given[..k].iter().map(|g| g.as_deref().map(rational).transpose()).collect::<Result<_>>()?;
    let missing = parsed.iter().filter(|p| p.is_none()).count();
    let one = Rational::from_integer(1.into());
    let total = parsed.iter().flatten().fold(Rational::from_integer(0.into()), |a, b| a + b);
    let rest = if missing == 0 { Rational::from_integer(0.into()) } else { (one - total) / Rational::from_integer(missing.into()) };
    if rest < Rational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("given squared couplings exceed a unit total".into()));
    }
    Ok(parsed.into_iter().map(|p| p.unwrap_or_else(|| rest.clone())).collect())
}

/// All points `m / steps` of the simplex with nonnegative integer `m`.
fn simplex(k: usize, steps: usize) -> Result<Vec<Vec<Rational>>> {
    if !(2..=8).contains(&k) || steps == 0 {
        return Err(Error::InvalidArgument("scan needs 2 <= k <= 8 and steps >= 1".into()));
    }
    let mut out = Vec::new();
    let mut m = vec![0usize; k];
    fn fill(i: usize, left: usize, m: &mut Vec<usize>, steps: usize, out: &mut Vec<Vec<Rational>>) {
        if i + 1 == m.len() {
            m[i] = left;
            out.push(m.iter().map(|&x| Rational::new(x.into(), steps.into())).collect());
            return;
        }
        for x in 0..=left {
            m[i] = x;
            fill(i + 1, left - x, m, steps, out);
        }
    }
    fill(0, steps, &mut m, steps, &mut out);
    Ok(out)
}

fn line(k: usize, last: &[String]) -> Result<Vec<Vec<Rational>>> {
    if !(2..=8).contains(&k) {
        return Err(Error::InvalidArgument("--k must be between 2 and 8".into()));
    }
    last.iter().map(|t| Ok(freefermion::chains::others_equal(k, rational(t)?))).collect()
}
