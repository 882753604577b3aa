//! Front end for the `intertwine` binary: validated run configuration, the
//! `spectrum` table writer and the `verify` batch runner.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use intertwine::closedform::{factorized_eigenvalue, normalized_leading};
use intertwine::spectrum::{parity_class, recursion_spectrum, RecursionOptions};
use intertwine::verify::{self, tolerance, VerificationReport};
use intertwine::zonal::QuadratureGrid;
use intertwine::{KType, Signature, SpectralOrder, SpectralValue};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Relative output paths are resolved under this directory when it is set.
pub const OUT_DIR_VAR: &str = "INTERTWINE_OUT_DIR";

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] intertwine::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Output { .. } => 2,
            CliError::Core(_) => 1,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodSelection {
    #[default]
    All,
    Recursion,
    ClosedForm,
    Factorized,
}

impl MethodSelection {
    fn wants(self, m: MethodSelection) -> bool {
        self == MethodSelection::All || self == m
    }
}

pub const CHECKS: [&str; 7] = [
    "lemma1",
    "intertwining",
    "method-agreement",
    "conformal-laplacian",
    "inversion",
    "loop-consistency",
    "quadrature",
];

fn check_index(name: &str) -> Option<usize> {
    CHECKS.iter().position(|c| *c == name)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumConfig {
    pub sig: Signature,
    pub r: SpectralOrder,
    pub jmax: u32,
    pub kmax: u32,
    /// `None` means both parity classes.
    pub parity: Option<u8>,
    pub method: MethodSelection,
    pub format: Format,
}

impl SpectrumConfig {
    pub fn new(p: u32, q: u32, r: f64, jmax: u32, kmax: u32) -> Result<Self, CliError> {
        Ok(Self {
            sig: signature(p, q)?,
            r: order(r)?,
            jmax,
            kmax,
            parity: None,
            method: MethodSelection::All,
            format: Format::Csv,
        })
    }
}

fn signature(p: u32, q: u32) -> Result<Signature, CliError> {
    Signature::new(p, q).map_err(|e| CliError::Config(e.to_string()))
}

fn order(r: f64) -> Result<SpectralOrder, CliError> {
    SpectralOrder::new(r).map_err(|e| CliError::Config(e.to_string()))
}

/// One table cell: a number, a singularity marker, or nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    Pole,
    ZeroDenominator,
    Blank,
}

impl Cell {
    fn from_spectral(v: SpectralValue) -> Self {
        match v {
            SpectralValue::Finite(x) => Cell::Value(x),
            SpectralValue::Pole => Cell::Pole,
        }
    }

    fn csv(self) -> String {
        match self {
            Cell::Value(x) => format!("{x:.16e}"),
            Cell::Pole => "pole".into(),
            Cell::ZeroDenominator => "zero-denominator".into(),
            Cell::Blank => String::new(),
        }
    }

    fn finite(self) -> Option<f64> {
        match self {
            Cell::Value(x) => Some(x),
            _ => None,
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Value(x) => s.serialize_f64(*x),
            Cell::Pole => s.serialize_str("pole"),
            Cell::ZeroDenominator => s.serialize_str("zero-denominator"),
            Cell::Blank => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub j: u32,
    pub k: u32,
    #[serde(rename = "J")]
    pub big_j: f64,
    #[serde(rename = "K")]
    pub big_k: f64,
    pub parity: u8,
    pub mu_recursion: Cell,
    pub mu_closed_form: Cell,
    #[serde(rename = "mu_factorized_or_blank")]
    pub mu_factorized: Cell,
    pub max_rel_disagreement: Cell,
}

/// Base-normalized eigenvalues by every selected route, ordered by parity then `(j, k)`.
pub fn spectrum_rows(cfg: &SpectrumConfig) -> Result<Vec<Row>, CliError> {
    let sig = cfg.sig;
    let r = cfg.r;
    let parities: Vec<u8> = match cfg.parity {
        Some(p) if p > 1 => return Err(CliError::Config(format!("parity must be 0 or 1 (got {p})"))),
        Some(p) => vec![p],
        None => vec![0, 1],
    };
    let mut rows = Vec::new();
    for parity in parities {
        let table = if cfg.method.wants(MethodSelection::Recursion) {
            Some(recursion_spectrum(
                sig,
                r,
                cfg.jmax,
                cfg.kmax,
                parity,
                &RecursionOptions::default(),
            )?)
        } else {
            None
        };
        let base = KType::base(parity);
        let integer = r
            .as_positive_integer()
            .filter(|_| cfg.method.wants(MethodSelection::Factorized));
        let factorized_base = integer.map(|n| factorized_eigenvalue(sig, n, base));

        for v in parity_class(parity, cfg.jmax, cfg.kmax) {
            let mu_recursion = table.as_ref().map_or(Cell::Blank, |t| {
                Cell::from_spectral(t.value(v).expect("class is complete"))
            });
            let mu_closed_form = if cfg.method.wants(MethodSelection::ClosedForm) {
                let term = normalized_leading(sig, r, v, base, r.default_continuation())?;
                Cell::from_spectral(term.evaluate())
            } else {
                Cell::Blank
            };
            let mu_factorized = integer.map_or(Cell::Blank, |n| Cell::Value(factorized_eigenvalue(sig, n, v)));

            // The factorized column is unnormalized; compare it after dividing by the base value.
            let normalized_poly = match (mu_factorized, factorized_base) {
                (Cell::Value(x), Some(b)) if b != 0.0 => Some(x / b),
                _ => None,
            };
            let finite: Vec<f64> = [mu_recursion.finite(), mu_closed_form.finite(), normalized_poly]
                .into_iter()
                .flatten()
                .collect();
            let singular = [mu_recursion, mu_closed_form]
                .iter()
                .filter(|c| **c == Cell::Pole)
                .count();
            let present = [mu_recursion, mu_closed_form]
                .iter()
                .filter(|c| **c != Cell::Blank)
                .count();
            let max_rel_disagreement = if singular > 0 {
                if singular == present {
                    Cell::Value(0.0)
                } else {
                    Cell::Value(f64::INFINITY)
                }
            } else if finite.len() >= 2 {
                Cell::Value(max_relative_spread(&finite))
            } else {
                Cell::Blank
            };

            rows.push(Row {
                j: v.j,
                k: v.k,
                big_j: sig.shifted_j(v).value(),
                big_k: sig.shifted_k(v).value(),
                parity,
                mu_recursion,
                mu_closed_form,
                mu_factorized,
                max_rel_disagreement,
            });
        }
    }
    Ok(rows)
}

fn max_relative_spread(xs: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            let scale = a.abs().max(b.abs());
            if scale > 0.0 {
                worst = worst.max((a - b).abs() / scale);
            }
        }
    }
    worst
}

pub const CSV_HEADER: &str = "j,k,J,K,parity,mu_recursion,mu_closed_form,mu_factorized_or_blank,max_rel_disagreement";

#[derive(Serialize)]
struct SpectrumDocument<'a> {
    schema_version: u32,
    p: u32,
    q: u32,
    r: f64,
    jmax: u32,
    kmax: u32,
    rows: &'a [Row],
}

/// Render the spectrum table in the configured format.
pub fn cmd_spectrum(cfg: &SpectrumConfig) -> Result<String, CliError> {
    let rows = spectrum_rows(cfg)?;
    match cfg.format {
        Format::Csv => {
            let mut out = String::with_capacity(64 * (rows.len() + 1));
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    row.j,
                    row.k,
                    row.big_j,
                    row.big_k,
                    row.parity,
                    row.mu_recursion.csv(),
                    row.mu_closed_form.csv(),
                    row.mu_factorized.csv(),
                    row.max_rel_disagreement.csv()
                );
            }
            Ok(out)
        }
        Format::Json => {
            let doc = SpectrumDocument {
                schema_version: SCHEMA_VERSION,
                p: cfg.sig.p(),
                q: cfg.sig.q(),
                r: cfg.r.value(),
                jmax: cfg.jmax,
                kmax: cfg.kmax,
                rows: &rows,
            };
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            Ok(s)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Signatures to sweep; the default is `{1,2,3}²`.
    pub signatures: Vec<Signature>,
    /// Orders to sweep; the default is `{0.37, 1.5}`.
    pub orders: Vec<SpectralOrder>,
    pub jmax: u32,
    pub kmax: u32,
    pub checks: Vec<&'static str>,
    pub tolerances: BTreeMap<&'static str, f64>,
    pub seed: u64,
    /// Random functions per signature for the lemma and intertwining checks.
    pub family_size: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            signatures: (1..=3)
                .flat_map(|p| (1..=3).map(move |q| Signature::new(p, q).unwrap()))
                .collect(),
            orders: [0.37, 1.5]
                .into_iter()
                .map(|r| SpectralOrder::new(r).unwrap())
                .collect(),
            jmax: 8,
            kmax: 8,
            checks: CHECKS.to_vec(),
            tolerances: BTreeMap::new(),
            seed: DEFAULT_SEED,
            family_size: 20,
        }
    }
}

impl VerifyConfig {
    /// Narrow to one signature (both `p` and `q` given) and optionally one order.
    pub fn restrict(&mut self, p: Option<u32>, q: Option<u32>, r: Option<f64>) -> Result<(), CliError> {
        match (p, q) {
            (Some(p), Some(q)) => self.signatures = vec![signature(p, q)?],
            (None, None) => {}
            (p, q) => {
                // Report a violated precondition before the missing partner.
                signature(p.unwrap_or(1), q.unwrap_or(1))?;
                return Err(CliError::Config("give both --p and --q, or neither".into()));
            }
        }
        if let Some(r) = r {
            self.orders = vec![order(r)?];
        }
        Ok(())
    }

    pub fn select_checks<S: AsRef<str>>(&mut self, names: &[S]) -> Result<(), CliError> {
        let mut picked = Vec::new();
        for name in names {
            let i = check_index(name.as_ref()).ok_or_else(|| {
                CliError::Config(format!(
                    "unknown check '{}' (expected one of {})",
                    name.as_ref(),
                    CHECKS.join(", ")
                ))
            })?;
            if !picked.contains(&CHECKS[i]) {
                picked.push(CHECKS[i]);
            }
        }
        self.checks = picked;
        Ok(())
    }

    /// Parse a `NAME=VALUE` tolerance override.
    pub fn set_tolerance(&mut self, spec: &str) -> Result<(), CliError> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("tolerance override '{spec}' is not NAME=VALUE")))?;
        let i = check_index(name)
            .ok_or_else(|| CliError::Config(format!("unknown check '{name}' in tolerance override")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| CliError::Config(format!("tolerance for {name} is not a number: '{value}'")))?;
        if !value.is_finite() || value < 0.0 {
            return Err(CliError::Config(format!(
                "tolerance for {name} must be finite and >= 0"
            )));
        }
        self.tolerances.insert(CHECKS[i], value);
        Ok(())
    }

    fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyBundle {
    pub schema_version: u32,
    pub seed: u64,
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
}

fn worst_of(mut reports: impl Iterator<Item = VerificationReport>) -> Option<VerificationReport> {
    let mut first = reports.next()?;
    reports.for_each(|r| first.absorb(r));
    Some(first)
}

/// Run the selected checks over the configured sweep.
pub fn cmd_verify(cfg: &VerifyConfig) -> Result<VerifyBundle, CliError> {
    let mut reports = Vec::new();
    let box_loop = (cfg.jmax.min(10), cfg.kmax.min(10));
    for &sig in &cfg.signatures {
        let family = verify::random_family(sig, cfg.family_size, 8, cfg.seed);
        for &check in &cfg.checks {
            match check {
                "lemma1" => {
                    let tol = cfg.tol(check, tolerance::LEMMA1);
                    let each = family
                        .iter()
                        .map(|f| verify::check_lemma1(f, &QuadratureGrid::new(sig, f.jmax(), f.kmax()), tol))
                        .collect::<Result<Vec<_>, _>>()?;
                    reports.extend(worst_of(each.into_iter()).map(|r| with_seed(r, cfg.seed)));
                }
                "intertwining" => {
                    let tol = cfg.tol(check, tolerance::INTERTWINING);
                    for &r in &cfg.orders {
                        let each = family
                            .iter()
                            .map(|f| verify::check_intertwining(sig, r, f, tol))
                            .collect::<Result<Vec<_>, _>>()?;
                        reports.extend(worst_of(each.into_iter()).map(|r| with_seed(r, cfg.seed)));
                    }
                }
                "method-agreement" => {
                    let tol = cfg.tol(check, tolerance::METHOD_AGREEMENT);
                    for &r in &cfg.orders {
                        reports.push(verify::check_method_agreement(sig, r, cfg.jmax, cfg.kmax, tol)?);
                        reports.push(verify::check_transition_law(sig, r, cfg.jmax, cfg.kmax, tol)?);
                        if let Some(n) = r.as_positive_integer() {
                            reports.push(verify::check_factorization(sig, n, cfg.jmax, cfg.kmax, tol)?);
                        }
                    }
                }
                "conformal-laplacian" => reports.push(verify::check_conformal_laplacian(sig, cfg.jmax, cfg.kmax)),
                "inversion" => {
                    let tol = cfg.tol(check, tolerance::INVERSION);
                    for &r in &cfg.orders {
                        reports.push(verify::check_inversion(sig, r, cfg.jmax, cfg.kmax, tol));
                    }
                }
                "loop-consistency" => {
                    let tol = cfg.tol(check, tolerance::LOOP);
                    for &r in &cfg.orders {
                        reports.push(verify::check_loop_consistency(sig, r, box_loop.0, box_loop.1, 8, tol));
                    }
                }
                "quadrature" => {
                    let tol = cfg.tol(check, tolerance::ROUNDTRIP);
                    reports.extend(verify::check_quadrature(sig, 8, cfg.seed, tol, tolerance::NORMS)?);
                }
                other => unreachable!("check list validated: {other}"),
            }
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(VerifyBundle {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        pass,
        reports,
    })
}

fn with_seed(mut report: VerificationReport, seed: u64) -> VerificationReport {
    report.seed = Some(seed);
    report
}

/// One line per report, for the terminal.
pub fn summary(bundle: &VerifyBundle) -> String {
    let mut out = String::new();
    for r in &bundle.reports {
        let order = r.r.map_or_else(|| "-".to_owned(), |r| r.to_string());
        let _ = writeln!(
            out,
            "{:<4} {:<20} p={} q={} r={:<6} residual={:.3e} (tol {:.1e}){}",
            if r.pass { "ok" } else { "FAIL" },
            r.check,
            r.p,
            r.q,
            order,
            r.max_residual,
            r.tolerance,
            r.worst_location
                .as_deref()
                .map(|w| format!(" at {w}"))
                .unwrap_or_default(),
        );
    }
    out
}

/// Resolve `path` against the output-directory override.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    let path = resolve_output(path);
    std::fs::write(&path, contents).map_err(|source| CliError::Output { path, source })
}
