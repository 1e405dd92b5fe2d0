//! Batch driver: loads instance files (or a catalogue morphism), runs the
//! selected check suites and assembles a deterministic JSON report.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pbw_core::envelope::{
    build_envelope, check_envelope_squares, check_envelope_witnesses, hat_adjunction_check,
    EnvelopeInstance,
};
use pbw_core::finset::{self, ProbeVerdict};
use pbw_core::instance::{Instance, InstanceFile};
use pbw_core::psimorph::PsiMorphismData;
use pbw_core::tmodule::{
    freeness_check, pb3w_harness, pbw_check, sg_module, PbwMode, PbwReport, PbwVerdict,
};
use pbw_core::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Fincat,
    Finset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Laws,
    Envelope,
    Pbw,
    Freeness,
    Pb3w,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Mode {
    Strict,
    UpToIso,
}

impl From<Mode> for PbwMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => PbwMode::Strict,
            Mode::UpToIso => PbwMode::UpToIso,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "pbw",
    version,
    about = "Check monads, envelopes and the PBW property on finite instances"
)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Backend::Fincat)]
    pub backend: Backend,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// PBW semantics reported as the primary verdict.
    #[arg(long, value_enum, default_value_t = Mode::UpToIso)]
    pub mode: Mode,
    /// Largest carrier (finset backend).
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    /// Include witnesses in the report.
    #[arg(long)]
    pub dump_witnesses: bool,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Source monad from the catalogue (finset backend).
    #[arg(long)]
    pub t: Option<String>,
    /// Target monad from the catalogue (finset backend).
    #[arg(long)]
    pub s: Option<String>,
    /// Morphism name from the registry (finset backend).
    #[arg(long)]
    pub morphism: Option<String>,
    /// Instance file, or a directory of `.json` instance files.
    pub input: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Core {
        path: String,
        #[source]
        source: pbw_core::Error,
    },
    #[error("{path}: validation failed before suite `{suite}`:\n{detail}")]
    Invalid {
        path: String,
        suite: String,
        detail: String,
    },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn core(path: &str, source: pbw_core::Error) -> Self {
        CliError::Core {
            path: path.to_string(),
            source,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, pass: bool) -> Self {
        Self {
            suite,
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail: None,
            witness: None,
        }
    }

    fn from_report(suite: &'static str, name: impl Into<String>, r: &ValidationReport) -> Self {
        let mut c = Self::new(suite, name, r.is_valid());
        if !r.is_valid() {
            c.detail = Some(json!(r.violations));
        }
        c
    }

    fn detail(mut self, v: Value) -> Self {
        self.detail = Some(v);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    /// File name, or the catalogue morphism for the finset backend.
    pub source: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub backend: Backend,
    pub suite: Suite,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    pub instances: Vec<InstanceReport>,
    pub summary: Summary,
}

impl Report {
    /// 0 when every executed check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed == 0 {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn wants(cfg: &RunConfig, s: Suite) -> bool {
    cfg.suite == Suite::All || cfg.suite == s
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let instances = match cfg.backend {
        Backend::Fincat => run_fincat(cfg)?,
        Backend::Finset => vec![run_finset(cfg)?],
    };
    let mut summary = Summary::default();
    for c in instances.iter().flat_map(|i| &i.checks) {
        summary.checks += 1;
        match c.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report {
        backend: cfg.backend,
        suite: cfg.suite,
        mode: cfg.mode,
        max_size: (cfg.backend == Backend::Finset).then_some(cfg.max_size),
        instances,
        summary,
    })
}

/// The input file, or the `.json` files of the input directory in sorted
/// filename order.
pub fn input_files(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

fn run_fincat(cfg: &RunConfig) -> Result<Vec<InstanceReport>, CliError> {
    if cfg.t.is_some() || cfg.s.is_some() || cfg.morphism.is_some() {
        return Err(CliError::Usage(
            "--t, --s and --morphism select catalogue monads and need --backend finset".into(),
        ));
    }
    let input = cfg.input.as_ref().ok_or_else(|| {
        CliError::Usage("the fincat backend needs an instance file or directory".into())
    })?;
    let mut out = Vec::new();
    for path in input_files(input)? {
        let label = path.file_name().map_or_else(
            || path.display().to_string(),
            |n| n.to_string_lossy().into_owned(),
        );
        out.push(run_instance_file(cfg, &path, &label)?);
    }
    Ok(out)
}

fn run_instance_file(
    cfg: &RunConfig,
    path: &Path,
    label: &str,
) -> Result<InstanceReport, CliError> {
    let file = InstanceFile::read(path).map_err(|e| CliError::core(label, e))?;
    let inst = Instance::resolve(&file).map_err(|e| CliError::core(label, e))?;
    let mut checks = Vec::new();
    let reports = inst.validate_all();
    let invalid: Vec<String> = reports
        .iter()
        .filter(|(_, r)| !r.is_valid())
        .map(|(what, r)| format!("{what}:\n{r}"))
        .collect();
    if wants(cfg, Suite::Laws) {
        for (what, r) in &reports {
            checks.push(Check::from_report("laws", what.clone(), r));
        }
    }
    if !invalid.is_empty() {
        // the laws suite reports failures itself; other suites need valid input
        if wants(cfg, Suite::Laws) {
            return Ok(InstanceReport {
                source: label.to_string(),
                checks,
            });
        }
        return Err(CliError::Invalid {
            path: label.to_string(),
            suite: format!("{:?}", cfg.suite).to_lowercase(),
            detail: invalid.join("\n"),
        });
    }
    if cfg.suite != Suite::Laws {
        for (name, p) in &inst.psi_morphisms {
            checks.extend(run_psi(cfg, label, name, p)?);
        }
    }
    Ok(InstanceReport {
        source: label.to_string(),
        checks,
    })
}

fn run_psi(
    cfg: &RunConfig,
    label: &str,
    name: &str,
    p: &PsiMorphismData,
) -> Result<Vec<Check>, CliError> {
    let inst = build_envelope(p).map_err(|e| CliError::core(label, e))?;
    let mut checks = Vec::new();
    let scoped = |check: &str| format!("{name}/{check}");
    if wants(cfg, Suite::Envelope) {
        let mut c = Check::from_report(
            "envelope",
            scoped("section"),
            &check_envelope_witnesses(&inst),
        );
        if cfg.dump_witnesses {
            c.witness = Some(coequalizer_witnesses(&inst));
        }
        checks.push(c);
        checks.push(Check::from_report(
            "envelope",
            scoped("squares"),
            &check_envelope_squares(&inst),
        ));
        checks.push(Check::from_report(
            "envelope",
            scoped("hat_adjunction"),
            &hat_adjunction_check(&inst),
        ));
    }
    if wants(cfg, Suite::Pbw) {
        let strict = pbw_check(&inst, PbwMode::Strict);
        let iso = pbw_check(&inst, PbwMode::UpToIso);
        let implication = strict.verdict == PbwVerdict::NotPbw || iso.verdict == PbwVerdict::Pbw;
        let declared = if cfg.mode == Mode::Strict {
            &strict
        } else {
            &iso
        };
        let mut c = Check::new("pbw", scoped("pbw"), implication).detail(json!({
            "verdict": declared.verdict,
            "strict": strict.verdict,
            "up_to_iso": iso.verdict,
            "conflict": declared.conflict.map(|k| json!([
                inst.em_t.em.obj_name(k.first),
                inst.em_t.em.obj_name(k.second),
            ])),
            "functors_tried": declared.functors_tried,
        }));
        if cfg.dump_witnesses {
            c.witness = pbw_witness(&inst, declared);
        }
        checks.push(c);
    }
    if wants(cfg, Suite::Freeness) {
        let module = sg_module(p).map_err(|e| CliError::core(label, e))?;
        let r = freeness_check(&module, &p.t);
        let mut c = Check::new("freeness", scoped("freeness"), true).detail(json!({
            "verdict": r.verdict,
            "equal_to_free": r.equal_to_free,
            "functors_tried": r.functors_tried,
            "isos_tried": r.isos_tried,
        }));
        if cfg.dump_witnesses {
            c.witness = r.witness.as_ref().map(|w| {
                json!({
                    "q": w.q.to_tables(p.lower().name(), p.upper().name()),
                    "iso": w.iso.to_tables(),
                })
            });
        }
        checks.push(c);
    }
    if wants(cfg, Suite::Pb3w) {
        let h = pb3w_harness(&inst).map_err(|e| CliError::core(label, e))?;
        let mut c = Check::new("pb3w", scoped("agreement"), h.agree).detail(json!({
            "pbw": h.pbw.verdict,
            "freeness": h.freeness.verdict,
            "split_witnesses": h.split_witnesses.len(),
            "disagreement": h.disagreement,
        }));
        if cfg.dump_witnesses {
            let c_cat = p.upper();
            c.witness = Some(json!(h
                .split_witnesses
                .iter()
                .map(|w| json!({
                    "epsilon": c_cat.mor_name(w.epsilon),
                    "gamma": c_cat.mor_name(w.gamma),
                    "delta": c_cat.mor_name(w.delta),
                    "alpha": c_cat.mor_name(w.alpha),
                    "beta": c_cat.mor_name(w.beta),
                }))
                .collect::<Vec<_>>()));
        }
        checks.push(c);
    }
    Ok(checks)
}

fn coequalizer_witnesses(inst: &EnvelopeInstance) -> Value {
    let (em_s, em_t) = (&inst.em_s.em, &inst.em_t.em);
    json!(inst
        .witnesses
        .iter()
        .map(|w| json!({
            "algebra": em_t.obj_name(w.algebra),
            "u": em_s.mor_name(w.u),
            "v": em_s.mor_name(w.v),
            "section": em_s.mor_name(w.section),
            "coequalizer": em_s.obj_name(w.target),
            "map": em_s.mor_name(w.map),
        }))
        .collect::<Vec<_>>())
}

fn pbw_witness(inst: &EnvelopeInstance, r: &PbwReport) -> Option<Value> {
    let p = &inst.p;
    r.witness.as_ref().map(|w| {
        json!({
            "q": w.q.to_tables(p.lower().name(), p.upper().name()),
            "iso": w.iso.to_tables(),
        })
    })
}

fn run_finset(cfg: &RunConfig) -> Result<InstanceReport, CliError> {
    if matches!(cfg.suite, Suite::Freeness | Suite::Pb3w) {
        return Err(CliError::Usage(
            "the freeness and pb3w suites need the fincat backend; the finset algebra categories are infinite".into(),
        ));
    }
    if cfg.input.is_some() {
        return Err(CliError::Usage(
            "the finset backend takes no instance file".into(),
        ));
    }
    let need = |v: &Option<String>, flag: &str| {
        v.clone()
            .ok_or_else(|| CliError::Usage(format!("the finset backend needs {flag}")))
    };
    let (t_id, s_id, m_id) = (
        need(&cfg.t, "--t")?,
        need(&cfg.s, "--s")?,
        need(&cfg.morphism, "--morphism")?,
    );
    let label = format!("{m_id}: {t_id} => {s_id}");
    let core = |e| CliError::core(&label, e);
    let t = finset::instantiate(&t_id).map_err(core)?;
    let s = finset::instantiate(&s_id).map_err(core)?;
    let phi = finset::morphism(&m_id, &t, &s).map_err(core)?;
    let mut checks = Vec::new();
    let bounded = |suite: &'static str, name: String, r: pbw_core::Result<Check>| match r {
        Ok(c) => Ok(c),
        Err(e @ pbw_core::Error::SizeBound { .. }) => Ok(Check {
            suite,
            name,
            status: Status::Skipped,
            detail: Some(json!(e.to_string())),
            witness: None,
        }),
        Err(e) => Err(CliError::core(&label, e)),
    };
    if wants(cfg, Suite::Laws) {
        for (role, m) in [("t", &t), ("s", &s)] {
            for n in 0..=cfg.max_size {
                let name = format!("monad_laws/{role}={m}/size={n}");
                let r = finset::monad_law_spotcheck(m, &[n])
                    .map(|r| Check::from_report("laws", name.clone(), &r));
                checks.push(bounded("laws", name, r)?);
            }
        }
        for n in 0..=cfg.max_size {
            let name = format!("morphism_laws/size={n}");
            let r = finset::monad_morphism_spotcheck(&t, &s, &|k, e| phi.component(k, e), n)
                .map(|r| Check::from_report("laws", name.clone(), &r));
            checks.push(bounded("laws", name, r)?);
        }
    }
    if wants(cfg, Suite::Envelope) {
        for y in 0..=cfg.max_size {
            let name = format!("free_envelope/size={y}");
            let r = finset::free_envelope_sizes(&phi, y).map(|(got, want)| {
                Check::new("envelope", name.clone(), got as u64 == want)
                    .detail(json!({ "envelope": got, "expected": want }))
            });
            checks.push(bounded("envelope", name, r)?);
        }
        for n in 0..=cfg.max_size {
            let name = format!("section/carrier={n}");
            let r = finset::enumerate_algebras(&t, n).and_then(|algebras| {
                let sizes = algebras
                    .iter()
                    .map(|x| finset::envelope_finset(&phi, x).map(|e| e.algebra.carrier()))
                    .collect::<pbw_core::Result<Vec<_>>>()?;
                Ok(Check::new("envelope", name.clone(), true)
                    .detail(json!({ "algebras": algebras.len(), "envelope_sizes": sizes })))
            });
            let c = match r {
                Err(pbw_core::Error::Invalid { report, .. }) => {
                    Check::from_report("envelope", name, &report)
                }
                other => bounded("envelope", name, other)?,
            };
            checks.push(c);
        }
    }
    if wants(cfg, Suite::Pbw) {
        let name = "pbw_probe".to_string();
        let r = finset::pbw_probe(&phi, cfg.max_size).map(|report| {
            let refuted = matches!(report.verdict, ProbeVerdict::Refuted { .. });
            let mut c = Check::new("pbw", name.clone(), true).detail(json!({
                "verdict": if refuted { "refuted" } else { "not_refuted_at_bound" },
                "algebras_checked": report.algebras_checked,
            }));
            if refuted || cfg.dump_witnesses {
                c.witness = Some(json!(report.verdict));
            }
            c
        });
        checks.push(bounded("pbw", name, r)?);
    }
    Ok(InstanceReport {
        source: label,
        checks,
    })
}
