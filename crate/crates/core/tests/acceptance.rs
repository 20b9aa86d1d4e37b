//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use common::{couplings, rational_couplings, rng};
use freefermion::chains::{chain_polynomial, dispersion, gap_scan, others_equal, ChainSpec};
use freefermion::frustration::frustration_graph;
use freefermion::graph::WeightedGraph;
use freefermion::indpoly::{verify_clique_recurrence, weighted_independence_polynomial};
use freefermion::model::{chain, generate_model, realize_graph, Boundary, Family, Hamiltonian};
use freefermion::pauli::sum_operator_norm;
use freefermion::recognition::{classify, find_claw, find_even_hole, maximal_cliques, twins, DEFAULT_BUDGET};
use freefermion::scalar::rational_from_decimal;
use freefermion::solver::{
    charge_commutator_residual, check_modes, fundamental_identity_residual, incognito_modes, simplicial_extension,
    transfer_product_residual, TransferOperator,
};
use freefermion::verify::{compare_spectrum, verify_free, VerifyOptions, DEFAULT_U_GRID};
use freefermion::Rational;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn h5(c: &[f64]) -> Hamiltonian<f64> {
    generate_model(&Family::FiveCycle, c).unwrap()
}

fn h6(c: &[f64]) -> Hamiltonian<f64> {
    generate_model(&Family::SixTerm, c).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn printed_polynomials() -> Outcome {
    let mut r = rng(101);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let c = couplings(&mut r, 6);
        let [a, b, cc, d, e, f] = [c[0], c[1], c[2], c[3], c[4], c[5]].map(|x| x * x);
        let p5 = weighted_independence_polynomial(&frustration_graph(&h5(&c[..5])));
        let want5 = [1.0, a + b + cc + d + e, a * (cc + d) + b * (d + e) + cc * e];
        let p6 = weighted_independence_polynomial(&frustration_graph(&h6(&c)));
        let want6 = [1.0, a + b + cc + d + e + f, a * (cc + d + f) + b * (d + e) + cc * e + e * f];
        ensure(p5.coefficients().len() == 3 && p6.coefficients().len() == 3, || "wrong degree".into())?;
        for (got, want) in [(p5.coefficients(), &want5), (p6.coefficients(), &want6)] {
            for (x, y) in got.iter().zip(want.iter()) {
                worst = worst.max(rel(*x, *y));
            }
        }
    }
    ensure(worst < 1e-12, || format!("relative error {worst:e}"))?;
    Ok(format!("20 draws, max relative error {worst:.1e}"))
}

/// H5, H6 and open chains with N in 1..=2 and k in 2..=4.
fn small_models(r: &mut rand_chacha::ChaCha8Rng) -> Vec<(String, Hamiltonian<f64>)> {
    let mut out = vec![("H5".to_string(), h5(&couplings(r, 5))), ("H6".to_string(), h6(&couplings(r, 6)))];
    for cells in 1..=2 {
        for k in 2..=4 {
            out.push((format!("chain({cells},{k})"), chain(cells, k, &couplings(r, k), Boundary::Open).unwrap()));
        }
    }
    out
}

fn free_spectra() -> Outcome {
    let mut r = rng(202);
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for _ in 0..10 {
        for (name, h) in small_models(&mut r) {
            let s = compare_spectrum(&h, 1e-8, 14).map_err(|e| format!("{name}: {e}"))?;
            ensure(s.matched && s.uniform_degeneracy, || format!("{name}: {s:?}"))?;
            worst = worst.max(s.max_deviation);
            runs += 1;
        }
    }
    Ok(format!("{runs} spectra, max deviation {worst:.1e}, degeneracy 2^(n-alpha) everywhere"))
}

fn junction() -> Hamiltonian<f64> {
    generate_model(&Family::Junction { arms: vec![3, 3, 3], k: 3 }, &couplings(&mut rng(303), 15)).unwrap()
}

fn integrability() -> Outcome {
    let mut r = rng(304);
    let periodic = chain(3, 3, &couplings(&mut r, 3), Boundary::Periodic).unwrap();
    let mut notes = Vec::new();
    for (name, h) in [("periodic chain(3,3)", periodic), ("junction", junction())] {
        let s = classify(&frustration_graph(&h), DEFAULT_BUDGET).unwrap();
        ensure(s.claw.is_none(), || format!("{name} has a claw"))?;
        let t = TransferOperator::new(&h).unwrap();
        let res = charge_commutator_residual(&t).unwrap();
        ensure(res < 1e-10, || format!("{name}: residual {res:e}"))?;
        notes.push(format!("{name} alpha={} even hole={} residual {res:.0e}", t.alpha(), s.even_hole.is_some()));
    }
    Ok(notes.join("; "))
}

/// Every even-hole and claw free model used by the identity checks.
fn free_models(r: &mut rand_chacha::ChaCha8Rng) -> Vec<(String, Hamiltonian<f64>)> {
    let mut out = small_models(r);
    out.push(("chain(3,3)".into(), chain(3, 3, &couplings(r, 3), Boundary::Open).unwrap()));
    for (order, edges, _, free) in common::forbidden_line_graph_subgraphs() {
        if free {
            let g = WeightedGraph::<f64>::unweighted(order, &edges).unwrap();
            out.push((format!("graph {edges:?}"), realize_graph(&g, couplings(r, order)).unwrap()));
        }
    }
    out
}

fn transfer_factorization() -> Outcome {
    let mut r = rng(404);
    let mut worst: f64 = 0.0;
    let models = free_models(&mut r);
    for (name, h) in &models {
        ensure(classify(&frustration_graph(h), DEFAULT_BUDGET).unwrap().free, || format!("{name} is not free"))?;
        for u in DEFAULT_U_GRID {
            worst = worst.max(transfer_product_residual(h, &u).unwrap().max_abs());
        }
    }
    ensure(worst < 1e-9, || format!("residual {worst:e}"))?;
    Ok(format!("{} models x 8 values of u, max coefficient {worst:.1e}", models.len()))
}

fn fundamental_identity() -> Outcome {
    let mut r = rng(505);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for _ in 0..5 {
        let models = [
            h5(&couplings(&mut r, 5)),
            h6(&couplings(&mut r, 6)),
            chain(2, 3, &couplings(&mut r, 3), Boundary::Open).unwrap(),
        ];
        for h in &models {
            let s = classify(&frustration_graph(h), DEFAULT_BUDGET).unwrap();
            for k in &s.simplicial_cliques {
                let ext = simplicial_extension(h, k).unwrap();
                for u in DEFAULT_U_GRID {
                    let res = fundamental_identity_residual(&ext, &u).unwrap();
                    worst = worst.max(sum_operator_norm(&res, 12).unwrap());
                }
                cases += 1;
            }
        }
    }
    ensure(worst < 1e-9, || format!("residual {worst:e}"))?;
    Ok(format!("{cases} (model, simplicial clique) pairs x 8 values of u, operator norm {worst:.1e}"))
}

fn modes() -> Outcome {
    let mut r = rng(606);
    let mut worst = 0.0f64;
    let mut built = 0;
    for _ in 0..5 {
        for h in [h5(&couplings(&mut r, 5)), h6(&couplings(&mut r, 6))] {
            let s = classify(&frustration_graph(&h), DEFAULT_BUDGET).unwrap();
            for k in &s.simplicial_cliques {
                let set = incognito_modes(&h, Some(k), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let c = check_modes(&set).unwrap();
                ensure(c.dense, || "checks were not dense".into())?;
                ensure(c.max() < 1e-8, || format!("{c:?}"))?;
                worst = worst.max(c.max());
                built += set.modes.len();
            }
        }
    }
    Ok(format!(
        "{built} modes, dense residual {worst:.1e}; ladder checked as [H, psi] = +2e psi and [H, psi^dag] = -2e psi^dag"
    ))
}

fn non_example() -> Outcome {
    let forced = VerifyOptions { force_spectrum: true, ..VerifyOptions::default() };
    let equal = generate_model(&Family::BackToBack, &[1.0; 6]).unwrap();
    let rep = verify_free(&equal, &forced).unwrap();
    ensure(rep.passed, || format!("equal couplings: {:?}", rep.spectrum))?;
    let generic = generate_model(&Family::BackToBack, &[1.0, 0.9, 1.1, 0.8, 1.2, 1.05]).unwrap();
    let rep = verify_free(&generic, &forced).unwrap();
    ensure(!rep.passed, || "generic couplings passed".into())?;
    let s = classify(&frustration_graph(&generic), DEFAULT_BUDGET).unwrap();
    ensure(s.claw.is_some() && s.even_hole.is_some(), || format!("{s:?}"))?;
    Ok(format!("equal couplings match, generic couplings do not; claw {:?}, even hole {:?}", s.claw.unwrap(), s.even_hole.unwrap()))
}

fn criticality() -> Outcome {
    let dec = |t: f64| rational_from_decimal(&t.to_string()).unwrap();
    let lasts = [0.1, 0.2, 0.25, 0.5, 0.7, 0.9];
    let grid: Vec<Vec<Rational>> = lasts.iter().map(|&t| others_equal(4, dec(t))).collect();
    let scan = gap_scan(&grid, 60, 120).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (&t, p) in lasts.iter().zip(&scan) {
        ensure(p.gapless == (t <= 0.25), || format!("b4^2 = {t}: {p:?}"))?;
        notes.push(format!("{t}:{}", if p.gapless { "gapless" } else { "gapped" }));
        if p.gapless {
            let d = dispersion(&ChainSpec::new(60, others_equal(4, dec(t))).unwrap()).map_err(|e| e.to_string())?;
            let min = d.iter().min_by(|a, b| a.energy.total_cmp(&b.energy)).unwrap();
            let top = d.iter().map(|p| p.momentum).fold(0.0, f64::max);
            ensure(min.momentum == top, || format!("b4^2 = {t}: minimum at p = {}", min.momentum))?;
        }
    }
    Ok(format!("{}; minima at the largest momentum", notes.join(" ")))
}

fn recursions() -> Outcome {
    let mut r = rng(909);
    let mut chains = 0;
    for cells in 1..=6 {
        for k in 2..=5 {
            let b = rational_couplings(&mut r, k);
            let b2: Vec<Rational> = b.iter().map(|x| x * x).collect();
            let h = chain(cells, k, &b, Boundary::Open).unwrap();
            let p = weighted_independence_polynomial(&frustration_graph(&h));
            ensure(chain_polynomial(&ChainSpec::new(cells, b2).unwrap()) == p, || format!("N={cells} k={k}"))?;
            chains += 1;
        }
    }
    let mut graphs: Vec<WeightedGraph<f64>> = free_models(&mut r).iter().map(|(_, h)| frustration_graph(h)).collect();
    graphs.push(frustration_graph(&junction()));
    graphs.push(frustration_graph(&chain(3, 3, &couplings(&mut r, 3), Boundary::Periodic).unwrap()));
    graphs.push(frustration_graph(&generate_model(&Family::BackToBack, &couplings(&mut r, 6)).unwrap()));
    for (order, edges, _, _) in common::forbidden_line_graph_subgraphs() {
        graphs.push(WeightedGraph::new(order, &edges, couplings(&mut r, order).iter().map(|c| c * c).collect()).unwrap());
    }
    let mut cliques = 0;
    let mut worst: f64 = 0.0;
    for g in &graphs {
        for k in maximal_cliques(g) {
            let c = verify_clique_recurrence(g, &k).unwrap();
            ensure(c.holds, || format!("clique {k:?}: {c:?}"))?;
            worst = worst.max(c.max_relative_deviation);
            cliques += 1;
        }
    }
    Ok(format!("{chains} exact chain polynomials; {cliques} maximal cliques on {} graphs, deviation {worst:.1e}", graphs.len()))
}

const RANDOM_GRAPH_SEED: u64 = 20_240_601;

fn recognition() -> Outcome {
    let check = |g: &WeightedGraph<f64>| -> Result<bool, String> {
        let claw = find_claw(g);
        if let Some(c) = &claw {
            ensure(common::is_claw(g, c.center, c.leaves), || format!("bad claw {c:?} in {:?}", g.edges()))?;
        }
        let hole = find_even_hole(g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if let Some(h) = &hole {
            ensure(h.len() % 2 == 0 && common::is_induced_cycle(g, h), || format!("bad hole {h:?}"))?;
        }
        ensure(claw.is_some() == common::naive_has_claw(g), || format!("claw disagreement on {:?}", g.edges()))?;
        ensure(hole.is_some() == common::naive_has_even_hole(g), || format!("hole disagreement on {:?}", g.edges()))?;
        let free = claw.is_none() && hole.is_none();
        if free && g.order() > 0 {
            let s = classify(g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(!s.simplicial_cliques.is_empty(), || format!("no simplicial clique in {:?}", g.edges()))?;
        }
        Ok(free)
    };
    let mut exhaustive = 0;
    for n in 1..=6 {
        for g in common::all_graphs(n) {
            check(&g)?;
            exhaustive += 1;
        }
    }
    let mut r = rng(RANDOM_GRAPH_SEED);
    for i in 0..10_000 {
        let n = 7 + i % 2;
        let p = [0.2, 0.35, 0.5, 0.65][i / 2 % 4];
        check(&common::random_graph(&mut r, n, p))?;
    }
    for (order, edges, has_twins, free) in common::forbidden_line_graph_subgraphs() {
        let g = WeightedGraph::<f64>::unweighted(order, &edges).unwrap();
        let s = classify(&g, DEFAULT_BUDGET).unwrap();
        ensure(!twins(&g).is_empty() == has_twins && s.free == free, || format!("{edges:?}: {s:?}"))?;
        ensure(has_twins || s.free, || format!("{edges:?} has neither twins nor the free structure"))?;
    }
    Ok(format!(
        "{exhaustive} labelled graphs on 1-6 vertices, 10000 random graphs on 7-8 vertices (seed {RANDOM_GRAPH_SEED}), 9 line-graph obstructions"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("printed independence polynomials", printed_polynomials),
        ("free spectrum against exact diagonalization", free_spectra),
        ("commuting independent-set charges", integrability),
        ("transfer operator factorization", transfer_factorization),
        ("fundamental identity", fundamental_identity),
        ("fermionic modes", modes),
        ("back-to-back non-example", non_example),
        ("k = 4 chain criticality", criticality),
        ("polynomial recursions", recursions),
        ("claw and even-hole recognition", recognition),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
