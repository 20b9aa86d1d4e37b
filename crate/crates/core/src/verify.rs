//! Exact diagonalization and the end-to-end checks built on it.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frustration::frustration_graph;
use crate::indpoly::{free_spectrum, single_particle_energies, weighted_independence_polynomial, SpectrumLevel};
use crate::model::{generate_model, Family, Hamiltonian};
use crate::pauli::sum_operator_norm;
use crate::recognition::{classify, StructureReport, DEFAULT_BUDGET};
use crate::solver::{
    charge_commutator_residual, check_modes, fundamental_identity_residual, incognito_modes, simplicial_extension,
    transfer_product_residual, ModeChecks, TransferOperator, DENSE_CHECK_QUBITS,
};

/// Largest register the dense eigensolver accepts.
pub const MAX_DENSE_QUBITS: usize = 14;
/// Eigenvalues closer than this (after scaling to unit largest coupling) are one level.
pub const CLUSTER_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_U_GRID: [f64; 8] = [0.1, -0.1, 0.37, -0.37, 0.9, -0.9, 1.5, -1.5];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    /// Per-level spectral deviation and mode residual tolerance.
    pub tolerance: f64,
    /// Tolerance for the transfer-operator identities.
    pub identity_tolerance: f64,
    pub budget: u64,
    pub dense_cap: usize,
    /// Compare spectra even when the graph is not even-hole and claw free.
    pub force_spectrum: bool,
    pub u_grid: Vec<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            identity_tolerance: 1e-9,
            budget: DEFAULT_BUDGET,
            dense_cap: MAX_DENSE_QUBITS,
            force_spectrum: false,
            u_grid: DEFAULT_U_GRID.to_vec(),
        }
    }
}

/// Sorted eigenvalues of the dense matrix of `h`.
pub fn eigenvalues(h: &Hamiltonian<f64>, cap: usize) -> Result<Vec<f64>> {
    let cap = cap.min(MAX_DENSE_QUBITS);
    let m = h.to_operator_sum().to_dense(cap)?;
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

fn cluster(sorted: &[f64], scale: f64) -> Vec<SpectrumLevel> {
    let mut out: Vec<SpectrumLevel> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &v in sorted {
        match out.last_mut() {
            Some(l) if (v - last) / scale <= CLUSTER_TOLERANCE => {
                l.degeneracy += 1;
                sum += v;
                l.energy = sum / l.degeneracy as f64;
            }
            _ => {
                sum = v;
                out.push(SpectrumLevel { energy: v, degeneracy: 1 });
            }
        }
        last = v;
    }
    out
}

/// Distinct eigenvalues with multiplicities, ascending.
pub fn brute_force_spectrum(h: &Hamiltonian<f64>) -> Result<Vec<SpectrumLevel>> {
    let ev = eigenvalues(h, MAX_DENSE_QUBITS)?;
    Ok(cluster(&ev, h.max_coupling().max(f64::MIN_POSITIVE)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumCheck {
    pub matched: bool,
    /// Largest gap between the sorted brute-force and free eigenvalue lists,
    /// in units of the largest coupling.
    pub max_deviation: f64,
    pub brute_levels: usize,
    pub free_levels: usize,
    /// Degeneracy of every level equal level by level.
    pub degeneracies_match: bool,
    /// Every brute-force level has degeneracy `2^(n - alpha)`.
    pub uniform_degeneracy: bool,
    pub energies: Vec<f64>,
}

/// Brute-force spectrum against the one assembled from the roots of the
/// weighted independence polynomial.
pub fn compare_spectrum(h: &Hamiltonian<f64>, tolerance: f64, cap: usize) -> Result<SpectrumCheck> {
    let n = h.num_qubits();
    let scale = h.max_coupling().max(f64::MIN_POSITIVE);
    let ev = eigenvalues(h, cap)?;
    let brute = cluster(&ev, scale);
    let e = single_particle_energies(&weighted_independence_polynomial(&frustration_graph(h)))?;
    let free = free_spectrum(&e, n)?;
    let mut expanded = Vec::with_capacity(ev.len());
    for l in &free {
        expanded.extend(std::iter::repeat(l.energy).take(l.degeneracy as usize));
    }
    let max_deviation = if expanded.len() == ev.len() {
        ev.iter().zip(&expanded).map(|(a, b)| (a - b).abs() / scale).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let degeneracies_match =
        brute.len() == free.len() && brute.iter().zip(&free).all(|(a, b)| a.degeneracy == b.degeneracy);
    let alpha = e.count();
    let uniform_degeneracy = brute.iter().all(|l| l.degeneracy == 1u128 << (n - alpha));
    Ok(SpectrumCheck {
        matched: max_deviation < tolerance && degeneracies_match,
        max_deviation,
        brute_levels: brute.len(),
        free_levels: free.len(),
        degeneracies_match,
        uniform_degeneracy,
        energies: e.energies(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceCheck {
    pub trace: f64,
    pub trace_square: f64,
    pub expected_trace_square: f64,
    pub holds: bool,
}

/// `tr H = 0` and `tr H^2 = 2^n sum_j b_j^2` on the dense matrix.
pub fn trace_check(h: &Hamiltonian<f64>, cap: usize) -> Result<TraceCheck> {
    let m = h.to_operator_sum().to_dense(cap.min(MAX_DENSE_QUBITS))?;
    let trace = m.trace().re;
    let trace_square = m.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let dim = m.nrows() as f64;
    let expected = dim * h.couplings().iter().map(|b| b * b).sum::<f64>();
    let holds = trace.abs() <= 1e-9 * dim * h.max_coupling() && (trace_square - expected).abs() <= 1e-9 * expected;
    Ok(TraceCheck { trace, trace_square, expected_trace_square: expected, holds })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Even-hole and claw free.
    Free,
    NotFree { obstruction: String },
    Undecided { budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub qubits: usize,
    pub terms: usize,
    /// Largest coupling; identity residuals are reported for `H / scale`.
    pub scale: f64,
    pub options: VerifyOptions,
    pub verdict: Verdict,
    pub structure: Option<StructureReport>,
    pub trace: Option<TraceCheck>,
    pub spectrum: Option<SpectrumCheck>,
    pub charges_commute: Option<f64>,
    pub transfer_factorization: Option<f64>,
    pub simplicial_clique: Option<Vec<usize>>,
    pub fundamental_identity: Option<f64>,
    pub modes: Option<ModeChecks>,
    /// Checks not run, with the reason.
    pub skipped: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
    pub passed: bool,
}

impl VerificationReport {
    fn new(h: &Hamiltonian<f64>, options: &VerifyOptions) -> Self {
        Self {
            qubits: h.num_qubits(),
            terms: h.len(),
            scale: h.max_coupling(),
            options: options.clone(),
            verdict: Verdict::Free,
            structure: None,
            trace: None,
            spectrum: None,
            charges_commute: None,
            transfer_factorization: None,
            simplicial_clique: None,
            fundamental_identity: None,
            modes: None,
            skipped: Vec::new(),
            timings_ms: BTreeMap::new(),
            passed: false,
        }
    }

    fn time<R>(&mut self, name: &str, f: impl FnOnce() -> R) -> R {
        let t = Instant::now();
        let r = f();
        self.timings_ms.insert(name.to_string(), t.elapsed().as_secs_f64() * 1e3);
        r
    }

    /// Every check that ran stayed within its tolerance.
    fn settle(&mut self) {
        let o = &self.options;
        let ok = |v: &Option<f64>, tol: f64| v.is_none_or(|x| x <= tol);
        self.passed = matches!(self.verdict, Verdict::Free) || (o.force_spectrum && self.spectrum.is_some());
        self.passed &= self.trace.as_ref().is_none_or(|t| t.holds)
            && self.spectrum.as_ref().is_none_or(|s| s.matched)
            && ok(&self.charges_commute, o.identity_tolerance)
            && ok(&self.transfer_factorization, o.identity_tolerance)
            && ok(&self.fundamental_identity, o.identity_tolerance)
            && self.modes.as_ref().is_none_or(|m| m.max() <= o.tolerance);
    }
}

fn classify_into(report: &mut VerificationReport, h: &Hamiltonian<f64>) -> Result<()> {
    let g = frustration_graph(h);
    let budget = report.options.budget;
    match report.time("classify", || classify(&g, budget)) {
        Ok(s) => {
            if !s.free {
                report.verdict = Verdict::NotFree { obstruction: s.obstruction().unwrap_or_default() };
            }
            report.structure = Some(s);
            Ok(())
        }
        Err(Error::Undecided { budget }) => {
            report.verdict = Verdict::Undecided { budget };
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn spectrum_into(report: &mut VerificationReport, h: &Hamiltonian<f64>) -> Result<()> {
    let (tol, cap) = (report.options.tolerance, report.options.dense_cap);
    if h.num_qubits() > cap.min(MAX_DENSE_QUBITS) {
        report.skipped.push(format!("spectrum: {} qubits exceed the dense limit", h.num_qubits()));
        return Ok(());
    }
    report.trace = Some(report.time("trace", || trace_check(h, cap))?);
    match report.time("spectrum", || compare_spectrum(h, tol, cap)) {
        Ok(s) => report.spectrum = Some(s),
        // a polynomial without a full set of real roots cannot give a free spectrum
        Err(e @ (Error::ComplexRoots { .. } | Error::AlphaExceedsQubits { .. } | Error::DegeneratePolynomial(_))) => {
            report.spectrum = Some(SpectrumCheck {
                matched: false,
                max_deviation: f64::INFINITY,
                brute_levels: cluster(&eigenvalues(h, cap)?, report.scale.max(f64::MIN_POSITIVE)).len(),
                free_levels: 0,
                degeneracies_match: false,
                uniform_degeneracy: false,
                energies: Vec::new(),
            });
            report.skipped.push(format!("free spectrum: {e}"));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Brute-force spectrum against the free-fermion prediction. Graphs that are
/// not even-hole and claw free are only classified unless
/// `options.force_spectrum` is set.
pub fn verify_free(h: &Hamiltonian<f64>, options: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(h, options);
    classify_into(&mut report, h)?;
    if matches!(report.verdict, Verdict::Free) || options.force_spectrum {
        spectrum_into(&mut report, h)?;
    } else {
        report.skipped.push("spectrum: graph is not even-hole and claw free".into());
    }
    report.settle();
    Ok(report)
}

/// The back-to-back model with all couplings equal to one, compared against
/// the free prediction although its graph has claws and even holes.
pub fn verify_nonexample_equal_couplings() -> Result<VerificationReport> {
    let h = generate_model(&Family::BackToBack, &[1.0; 6])?;
    verify_free(&h, &VerifyOptions { force_spectrum: true, ..VerifyOptions::default() })
}

/// Every check in order: structure, charges, transfer factorization,
/// fundamental identity, modes and spectrum. Stops after the structure
/// checks when the graph is not free.
pub fn verify_all(h: &Hamiltonian<f64>, options: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(h, options);
    classify_into(&mut report, h)?;
    if let Verdict::Undecided { .. } = report.verdict {
        report.skipped.push("everything: recognition budget exhausted".into());
        report.settle();
        return Ok(report);
    }
    let scale = h.max_coupling();
    let unit = h.map_scalar(|b| b / scale);
    let has_claw = report.structure.as_ref().is_some_and(|s| s.claw.is_some());

    if has_claw {
        report.skipped.push("charges: graph has a claw".into());
    } else {
        let t = report.time("charges", || TransferOperator::new(&unit))?;
        report.charges_commute = Some(report.time("charge_commutators", || charge_commutator_residual(&t))?);
    }
    if !matches!(report.verdict, Verdict::Free) {
        report.skipped.push("identities, modes, spectrum: graph is not even-hole and claw free".into());
        report.settle();
        report.passed = false;
        return Ok(report);
    }

    let grid = options.u_grid.clone();
    let tf = report.time("transfer_factorization", || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for u in &grid {
            worst = worst.max(transfer_product_residual(&unit, u)?.max_abs());
        }
        Ok(worst)
    })?;
    report.transfer_factorization = Some(tf);

    let clique = report.structure.as_ref().and_then(|s| s.simplicial_cliques.first().cloned());
    match clique {
        Some(k) => {
            let ext = simplicial_extension(&unit, &k)?;
            let dense = ext.hamiltonian.num_qubits() <= DENSE_CHECK_QUBITS;
            let fi = report.time("fundamental_identity", || -> Result<f64> {
                let mut worst: f64 = 0.0;
                for u in &grid {
                    let r = fundamental_identity_residual(&ext, u)?;
                    worst = worst.max(if dense { sum_operator_norm(&r, DENSE_CHECK_QUBITS)? } else { r.max_abs() });
                }
                Ok(worst)
            })?;
            report.fundamental_identity = Some(fi);
            match report.time("modes", || incognito_modes(&unit, Some(&k), options.budget)) {
                Ok(set) => report.modes = Some(report.time("mode_checks", || check_modes(&set))?),
                Err(e @ (Error::DegenerateRoot { .. } | Error::BadNormalization { .. })) => {
                    report.skipped.push(format!("modes: {e}"))
                }
                Err(e) => return Err(e),
            }
            report.simplicial_clique = Some(k);
        }
        None => report.skipped.push("fundamental identity, modes: no simplicial clique found".into()),
    }

    spectrum_into(&mut report, h)?;
    report.settle();
    Ok(report)
}
