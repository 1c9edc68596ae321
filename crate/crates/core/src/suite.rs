//! Batch verification: every selected (realization, mode, backend, q) cell is
//! checked and each record is compared with the catalog expectation.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{zeta_element, AlgebraMode, Ops, Osc};
use crate::config::{Effective, QValue, SuiteBackend, SuiteConfig, OSCILLATOR_CELL};
use crate::error::{Error, Result};
use crate::fock::{
    check_dinv_numeric, check_fock_relations, check_gl2q_numeric, check_matrix_elements,
    check_qweyl_numeric, compare_matrices, eval_node_matrix, qdet_numeric, rep_matrix,
    safe_check_zero, Basis, FockRep, NumericMatrix, OperatorMatrix, Params,
};
use crate::node::NodeMatrix;
use crate::numeric::{Field, Number};
use crate::qdiff::{check_qdiff_gl2q, check_qdiff_oscillator, PolyBasisRep};
use crate::quantum_matrix::{
    check_dinv_relations, check_gl2q_relations, check_qweyl, matrix_power, qdet, QuantumMatrix2,
};
use crate::realizations::{expected_qdet, make_realization, printed_matrix, spec, Realization};
use crate::report::{CheckRecord, CheckReport, Status};
use crate::scalar::{Scalar, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    ExpectedFail,
    UnexpectedFail,
    UnexpectedPass,
}

impl Outcome {
    pub fn is_expected(self) -> bool {
        matches!(self, Outcome::Pass | Outcome::ExpectedFail)
    }

    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::ExpectedFail => "expected-fail",
            Outcome::UnexpectedFail => "UNEXPECTED-FAIL",
            Outcome::UnexpectedPass => "UNEXPECTED-PASS",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    #[serde(flatten)]
    pub record: CheckRecord,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub realization: String,
    pub mode: String,
    pub backend: SuiteBackend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub checks: Vec<CheckResult>,
    pub qdet: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub config: SuiteConfig,
    pub versions: Versions,
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub qboson_core: &'static str,
    pub report_format: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub meta: Meta,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub expected_fail: usize,
    pub unexpected_fail: usize,
    pub unexpected_pass: usize,
}

impl SuiteReport {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for c in self.cells.iter().flat_map(|c| &c.checks) {
            match c.outcome {
                Outcome::Pass => t.pass += 1,
                Outcome::ExpectedFail => t.expected_fail += 1,
                Outcome::UnexpectedFail => t.unexpected_fail += 1,
                Outcome::UnexpectedPass => t.unexpected_pass += 1,
            }
        }
        t
    }

    pub fn all_expected(&self) -> bool {
        self.cells
            .iter()
            .flat_map(|c| &c.checks)
            .all(|c| c.outcome.is_expected())
    }

    /// 0 when every check matched its expectation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_expected() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable report; `verbose` lists passing checks too.
    pub fn render(&self, verbose: bool) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for c in &self.cells {
            let q =
                c.q.as_deref()
                    .map(|q| format!(" q={q}"))
                    .unwrap_or_default();
            let dim = c.dim.map(|d| format!(" D={d}")).unwrap_or_default();
            let bad = c.checks.iter().filter(|r| !r.outcome.is_expected()).count();
            let xf = c
                .checks
                .iter()
                .filter(|r| r.outcome == Outcome::ExpectedFail)
                .count();
            let _ = writeln!(
                out,
                "{} [{} {}{q}{dim}] {} checks, {xf} expected failures, {bad} unexpected; qdet = {}",
                c.realization,
                c.mode,
                c.backend.name(),
                c.checks.len(),
                c.qdet
            );
            for r in &c.checks {
                if verbose || r.outcome != Outcome::Pass {
                    let _ = writeln!(
                        out,
                        "    {:<15} {}: {}",
                        r.outcome.name(),
                        r.record.relation,
                        r.record.witness
                    );
                    if let Some(n) = &r.note {
                        let _ = writeln!(out, "                    note: {n}");
                    }
                }
            }
        }
        let t = self.tally();
        let _ = writeln!(
            out,
            "summary: {} pass, {} expected-fail, {} unexpected-fail, {} unexpected-pass",
            t.pass, t.expected_fail, t.unexpected_fail, t.unexpected_pass
        );
        out
    }
}

/// Documented failures, keyed by realization, backend and relation.
/// `None` in the backend column matches both evaluation backends.
struct Known {
    realization: &'static str,
    backend: Option<SuiteBackend>,
    mode: Option<AlgebraMode>,
    relations: &'static [&'static str],
    note: &'static str,
}

const FOCK_ONLY_T: &str = "holds only with a+a- = [N]: the relation is a consequence of the Fock-restricted algebra, not of the q-oscillator relations alone";
const XY_NOTE: &str = "Y = lambda a+a- - q^(1-N) does not q-commute with a+, a- the way q^-N does, so the printed factors violate the q-Weyl relations; X alone would work";
const T3_NOTE: &str = "all four printed entries are functions of N1 and N2, hence mutually commuting in the Fock space, so ab = q ba cannot hold";
const ONEBOSON_NOTE: &str = "a+ W^-1 a- annihilates the vacuum, so c = Bz and a = A + uBz lose their |0> component and the factors reproduce T only on states n >= 1";
const OSC_NOTE: &str = "Fock-only identity: false in the generic q-oscillator algebra, true once a+a- = [N] is imposed";
const EQ12_PRINTED_NOTE: &str = "the printed cross term of a omits a factor q relative to A + uBz";
const XY_PRINTED_NOTE: &str = "the printed a and c entries differ from the product of the printed factors (c is printed with X1 Y2 where Bz gives Y1 X2)";
const B_COEFFICIENT_NOTE: &str =
    "printed coefficient beta*delta; applying uB to basis states gives alpha*delta";

static KNOWN: &[Known] = &[
    Known {
        realization: "T",
        backend: Some(SuiteBackend::Symbolic),
        mode: Some(AlgebraMode::Generic),
        relations: &[
            "ad-da=lambda*bc",
            "ad-qbc=da-q^-1*bc",
            "[D_q,a]=0",
            "[D_q,d]=0",
        ],
        note: FOCK_ONLY_T,
    },
    Known {
        realization: "XY",
        backend: None,
        mode: None,
        relations: &[
            "ac=qca",
            "bd=qdb",
            "bc=cb",
            "ad-da=lambda*bc",
            "ad-qbc=da-q^-1*bc",
            "[D_q,a]=0",
            "[D_q,b]=0",
            "[D_q,c]=0",
            "Az=qzA",
            "uB=qBu",
            "d^-1b=qbd^-1",
            "d^-1a-q^2ad^-1=(1-q^2)D_q(d^-1)^2",
        ],
        note: XY_NOTE,
    },
    Known {
        realization: "XY",
        backend: Some(SuiteBackend::Symbolic),
        mode: None,
        relations: &["a (printed) = A+uBz", "c (printed) = Bz"],
        note: XY_PRINTED_NOTE,
    },
    Known {
        realization: "Eq12",
        backend: Some(SuiteBackend::Symbolic),
        mode: None,
        relations: &["a (printed) = A+uBz"],
        note: EQ12_PRINTED_NOTE,
    },
    Known {
        realization: "T3",
        backend: Some(SuiteBackend::Numeric),
        mode: None,
        relations: &[
            "ab=qba",
            "ac=qca",
            "bd=qdb",
            "cd=qdc",
            "ad-da=lambda*bc",
            "ad-qbc=da-q^-1*bc",
            "d^-1c=qcd^-1",
            "d^-1b=qbd^-1",
            "d^-1a-q^2ad^-1=(1-q^2)D_q(d^-1)^2",
            "qdet=-q^-1*mu*nu",
        ],
        note: T3_NOTE,
    },
    Known {
        realization: "OneBosonW",
        backend: Some(SuiteBackend::Numeric),
        mode: None,
        relations: &[
            "ac=qca",
            "cd=qdc",
            "ad-da=lambda*bc",
            "ad-qbc=da-q^-1*bc",
            "[D_q,a]=0",
            "[D_q,d]=0",
            "AB=BA",
            "uB=qBu",
            "zB=qBz",
            "qdet=-q^-1*mu*nu",
        ],
        note: ONEBOSON_NOTE,
    },
    Known {
        realization: OSCILLATOR_CELL,
        backend: Some(SuiteBackend::Symbolic),
        mode: Some(AlgebraMode::Generic),
        relations: &[
            "[N1]=a1+a1-",
            "[N1+1]=a1-a1+",
            "a1-a1+-q^-1*a1+a1-=K1",
            "zeta=0",
        ],
        note: OSC_NOTE,
    },
];

fn known_failure(
    realization: &str,
    backend: SuiteBackend,
    mode: Option<AlgebraMode>,
    relation: &str,
) -> Option<&'static str> {
    KNOWN
        .iter()
        .find(|k| {
            k.realization == realization
                && k.backend
                    .map_or(backend != SuiteBackend::Qdiff, |b| b == backend)
                && k.mode.is_none_or(|m| Some(m) == mode)
                && k.relations.contains(&relation)
        })
        .map(|k| k.note)
}

struct CellCtx<'a> {
    realization: &'a str,
    mode: Option<AlgebraMode>,
    backend: SuiteBackend,
    params: &'a Params,
}

impl CellCtx<'_> {
    fn classify(&self, record: CheckRecord) -> CheckResult {
        let mut note = known_failure(self.realization, self.backend, self.mode, &record.relation);
        if note.is_none() && record.relation.contains("(printed coefficient beta*delta)") {
            // only distinguishable from the correct coefficient when alpha != beta
            if self.params.get(Symbol::Alpha) != self.params.get(Symbol::Beta) {
                note = Some(B_COEFFICIENT_NOTE);
            }
        }
        let outcome = match (record.passed(), note.is_some()) {
            (true, false) => Outcome::Pass,
            (false, true) => Outcome::ExpectedFail,
            (false, false) => Outcome::UnexpectedFail,
            (true, true) => Outcome::UnexpectedPass,
        };
        CheckResult {
            record,
            outcome,
            note: note.map(str::to_string),
        }
    }

    fn finish(
        &self,
        q: Option<String>,
        dim: Option<usize>,
        body: Result<(CheckReport, String)>,
    ) -> Cell {
        let (report, qdet) = body.unwrap_or_else(|e| {
            (
                CheckReport::new(vec![CheckRecord {
                    relation: "error".into(),
                    status: Status::Fail,
                    witness: e.to_string(),
                    mode: self.mode.map_or("any", AlgebraMode::name).into(),
                    q_power: 1,
                    residual: None,
                }]),
                "n/a".into(),
            )
        });
        Cell {
            realization: self.realization.to_string(),
            mode: self.mode.map_or("any", AlgebraMode::name).to_string(),
            backend: self.backend,
            q,
            dim,
            checks: report
                .records
                .into_iter()
                .map(|r| self.classify(r))
                .collect(),
            qdet,
        }
    }
}

/// Record name for the comparison with the stated determinant.
fn stated_qdet_name(realization: &str) -> String {
    let value = match realization {
        "Eq12" => "gamma*delta",
        "XY" => "gamma*delta*X1*X2*Y1*Y2",
        _ => "-q^-1*mu*nu",
    };
    format!("qdet={value}")
}

fn symbolic_cell_body(
    name: &str,
    mode: AlgebraMode,
    eff: &Effective,
) -> Result<(CheckReport, String)> {
    let r = make_realization(name, mode)?;
    let t = r.matrix().expect("symbolic realization");
    let n = eff.q_power;
    let mut report = if n == 1 {
        check_gl2q_relations(&t, 1)
    } else {
        check_gl2q_relations(&matrix_power(&t, n), n as i32)
    };
    let (det, det_report) = qdet(&t);
    if n == 1 {
        report.extend(det_report);
        if let Some(exp) = expected_qdet(name, mode)? {
            report.records.push(CheckRecord {
                relation: stated_qdet_name(name),
                status: Status::from_bool(det == exp),
                witness: format!("{}", &det - &exp),
                mode: mode.name().into(),
                q_power: 1,
                residual: None,
            });
        }
        if let Some(f) = r.factors() {
            report.extend(check_qweyl(f));
        }
        if let Ok(d) = check_dinv_relations(&t) {
            report.extend(d);
        }
        if let Some(p) = printed_matrix(name, mode)? {
            report.extend(printed_comparison(&p, &t));
        }
    }
    Ok((report, det.to_string()))
}

fn printed_comparison(printed: &QuantumMatrix2, t: &QuantumMatrix2) -> CheckReport {
    let rhs = ["A+uBz", "uB", "Bz", "B"];
    let records = printed
        .entries()
        .into_iter()
        .zip(t.entries())
        .zip(rhs)
        .map(|(((n, p), (_, x)), r)| {
            let diff = p - x;
            CheckRecord {
                relation: format!("{n} (printed) = {r}"),
                status: Status::from_bool(diff.is_zero()),
                witness: diff.to_string(),
                mode: t.mode().name().into(),
                q_power: 1,
                residual: None,
            }
        })
        .collect();
    CheckReport::new(records)
}

fn oscillator_symbolic_body(mode: AlgebraMode) -> Result<(CheckReport, String)> {
    let o = Ops::new(mode);
    let one = Osc::One;
    let (ap, am) = (o.ap(one), o.am(one));
    let lam_inv = Scalar::lambda_inv();
    let qn = |shift: i32| {
        (o.k(one, 1).scale(&Scalar::q_pow(shift)) - o.k(one, -1).scale(&Scalar::q_pow(-shift)))
            .scale(&lam_inv)
    };
    let pm = &ap * &am;
    let mp = &am * &ap;
    let zeta = zeta_element(mode);
    let cases = [
        ("[N1]=a1+a1-", &pm - &qn(0)),
        ("[N1+1]=a1-a1+", &mp - &qn(1)),
        (
            "a1-a1+-q^-1*a1+a1-=K1",
            &mp - &pm.scale(&Scalar::q_pow(-1)) - o.k(one, 1),
        ),
        (
            "a1-a1+-q*a1+a1-=K1^-1",
            &mp - &pm.scale(&Scalar::q()) - o.k(one, -1),
        ),
        ("[zeta,a1+]=0", &zeta * &ap - &ap * &zeta),
        ("[zeta,a1-]=0", &zeta * &am - &am * &zeta),
        ("[zeta,K1]=0", &zeta * o.k(one, 1) - o.k(one, 1) * &zeta),
        ("zeta=0", zeta.clone()),
    ];
    let records = cases
        .into_iter()
        .map(|(name, x)| CheckRecord {
            relation: name.into(),
            status: Status::from_bool(x.is_zero()),
            witness: x.to_string(),
            mode: mode.name().into(),
            q_power: 1,
            residual: None,
        })
        .collect();
    Ok((CheckReport::new(records), "n/a".into()))
}

/// Draws the seeded complex `q`: modulus in `[0.6, 0.9]` or its inverse,
/// argument in `[0.2, 1.2]`.
pub fn random_q(seed: u64) -> Complex64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r: f64 = rng.gen_range(0.6..0.9);
    let r = if rng.gen_bool(0.5) { r } else { 1.0 / r };
    let theta: f64 = rng.gen_range(0.2..1.2);
    Complex64::from_polar(r, theta)
}

fn resolve_q(q: &QValue, seed: u64) -> Number {
    match q {
        QValue::Fixed(n) => n.clone(),
        QValue::Random => Number::Complex(random_q(seed)),
    }
}

/// `T^n` evaluated on Fock matrices.
fn numeric_power<T: Field>(m: &NumericMatrix<T>, n: u32) -> NumericMatrix<T> {
    (1..n).fold(m.clone(), |acc, _| acc.matmul(m))
}

/// Describes a determinant matrix: a scalar value when it is a multiple of
/// the identity on its safe columns.
fn describe_det<T: Field>(det: &OperatorMatrix<T>, rep: &FockRep<T>, tol: f64) -> String {
    let Ok(keep) = rep.safe_columns(det.excess) else {
        return "n/a".into();
    };
    let value = det.matrix.get(0, 0);
    let id = OperatorMatrix::new(crate::sparse::SparseMatrix::identity(rep.size()), [0, 0]);
    let diff = det.matrix.sub(&id.matrix.scale(&value));
    let scale = det.matrix.max_abs_where(&keep).max(f64::MIN_POSITIVE);
    let scalar = if T::EXACT {
        diff.is_zero_where(&keep)
    } else {
        diff.max_abs_where(&keep) <= tol * scale
    };
    if scalar {
        value.render()
    } else {
        "not a multiple of the identity".into()
    }
}

fn numeric_body<T: Field>(
    name: &str,
    mode: AlgebraMode,
    rep: &FockRep<T>,
    eff: &Effective,
) -> Result<(CheckReport, String)> {
    let tol = eff.tolerance;
    if name == OSCILLATOR_CELL {
        let mut report = check_fock_relations(rep, tol)?;
        let mut z = safe_check_zero(&zeta_element(mode), rep, tol)?;
        z.relation = "zeta=0".into();
        report.records.push(z);
        return Ok((report, "n/a".into()));
    }
    let r = make_realization(name, mode)?;
    let nm: NodeMatrix = match r.node_factors() {
        Some(f) => f.compose(),
        None => r.node_matrix(),
    };
    let m = eval_node_matrix(&nm, rep)?;
    let n = eff.q_power;
    let mut report = check_gl2q_numeric(&numeric_power(&m, n), rep, n as i32, tol)?;
    let (det, det_report) = qdet_numeric(&m, rep, tol)?;
    let det_text = describe_det(&det, rep, tol);
    if n == 1 {
        report.extend(det_report);
        if let Some(exp) =
            expected_qdet(name, AlgebraMode::FockRestricted)?.or(expected_qdet(name, mode)?)
        {
            let want = rep_matrix(&exp, rep)?;
            report.records.push(compare_matrices(
                &stated_qdet_name(name),
                &det,
                &want,
                rep,
                tol,
            )?);
        }
        if let Some(f) = r.node_factors() {
            report.extend(check_qweyl_numeric(&f, rep, tol)?);
        }
        if m.d.matrix.is_diagonal() {
            report.extend(check_dinv_numeric(&m, rep, tol)?);
        }
        if name == "Eq12" && rep.basis() == Basis::Normalized {
            report.extend(check_matrix_elements(rep, tol)?);
        }
    }
    Ok((report, det_text))
}

fn qdiff_body<T: Field>(rep: &PolyBasisRep<T>, eff: &Effective) -> Result<(CheckReport, String)> {
    let mut report = check_qdiff_oscillator(rep, eff.tolerance)?;
    report.extend(check_qdiff_gl2q(
        rep,
        &eff.params,
        eff.q_power as i32,
        eff.tolerance,
    )?);
    Ok((report, "n/a".into()))
}

enum Job {
    Symbolic(String, AlgebraMode),
    Numeric(String, AlgebraMode, Number),
    Qdiff(Number),
}

fn jobs(cfg: &SuiteConfig) -> Vec<Job> {
    let qs: Vec<Number> = cfg
        .q_values
        .iter()
        .map(|q| resolve_q(q, cfg.seed))
        .collect();
    let mut out = Vec::new();
    for name in &cfg.realizations {
        let symbolic_ok = name == OSCILLATOR_CELL
            || spec(name)
                .map(|s| s.backend == crate::realizations::Backend::Symbolic)
                .unwrap_or(false);
        for backend in &cfg.backends {
            match backend {
                SuiteBackend::Symbolic if symbolic_ok => {
                    for m in &cfg.modes {
                        out.push(Job::Symbolic(name.clone(), *m));
                    }
                }
                SuiteBackend::Numeric => {
                    for m in &cfg.modes {
                        for q in &qs {
                            out.push(Job::Numeric(name.clone(), *m, q.clone()));
                        }
                    }
                }
                SuiteBackend::Qdiff if name == "Eq12" => {
                    for q in &qs {
                        out.push(Job::Qdiff(q.clone()));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn oscillators_of(name: &str) -> usize {
    spec(name).map(|s| s.oscillators).unwrap_or(2)
}

fn exact_carrier(q: &Number, params: &Params) -> Option<BigRational> {
    match q {
        Number::Rational(r) if params.is_exact() => Some(r.clone()),
        _ => None,
    }
}

fn run_job(cfg: &SuiteConfig, job: &Job) -> Cell {
    match job {
        Job::Symbolic(name, mode) => {
            let eff = cfg.effective(name);
            let ctx = CellCtx {
                realization: name,
                mode: Some(*mode),
                backend: SuiteBackend::Symbolic,
                params: &eff.params,
            };
            let body = if name == OSCILLATOR_CELL {
                oscillator_symbolic_body(*mode)
            } else {
                symbolic_cell_body(name, *mode, &eff)
            };
            ctx.finish(None, None, body)
        }
        Job::Numeric(name, mode, q) => {
            let eff = cfg.effective(name);
            let ctx = CellCtx {
                realization: name,
                mode: Some(*mode),
                backend: SuiteBackend::Numeric,
                params: &eff.params,
            };
            let osc = oscillators_of(name);
            let body = match exact_carrier(q, &eff.params) {
                Some(qr) => FockRep::new(eff.dim, osc, Basis::Exact, qr, &eff.params)
                    .and_then(|rep| numeric_body(name, *mode, &rep, &eff)),
                None => FockRep::new(eff.dim, osc, Basis::Normalized, q.to_complex(), &eff.params)
                    .and_then(|rep| numeric_body(name, *mode, &rep, &eff)),
            };
            ctx.finish(Some(q.to_string()), Some(eff.dim), body)
        }
        Job::Qdiff(q) => {
            let eff = cfg.effective("Eq12");
            let ctx = CellCtx {
                realization: "Eq12",
                mode: None,
                backend: SuiteBackend::Qdiff,
                params: &eff.params,
            };
            let body = match exact_carrier(q, &eff.params) {
                Some(qr) => {
                    PolyBasisRep::new(eff.dim - 1, qr, 2).and_then(|rep| qdiff_body(&rep, &eff))
                }
                None => PolyBasisRep::new(eff.dim - 1, q.to_complex(), 2)
                    .and_then(|rep| qdiff_body(&rep, &eff)),
            };
            ctx.finish(Some(q.to_string()), Some(eff.dim), body)
        }
    }
}

/// Runs every selected cell. Deterministic given the configuration.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let jobs = jobs(cfg);
    let cells = jobs.par_iter().map(|j| run_job(cfg, j)).collect();
    SuiteReport {
        meta: Meta {
            config: cfg.clone(),
            versions: Versions {
                qboson_core: env!("CARGO_PKG_VERSION"),
                report_format: 1,
            },
        },
        cells,
    }
}

/// Dense dump of one entry of a realization, row-major `[re, im]` pairs.
pub fn dump_matrix(
    name: &str,
    entry: &str,
    mode: AlgebraMode,
    dim: usize,
    q: &Number,
    params: &Params,
) -> Result<Vec<Vec<[f64; 2]>>> {
    let r: Realization = make_realization(name, mode)?;
    let nm = match r.node_factors() {
        Some(f) if matches!(entry, "u" | "z" | "A" | "B") => {
            let node = match entry {
                "u" => f.u,
                "z" => f.z,
                "A" => f.diag_a,
                _ => f.diag_b,
            };
            return dump_node(&node, oscillators_of(name), dim, q, params);
        }
        Some(f) => f.compose(),
        None => r.node_matrix(),
    };
    let node = match entry {
        "a" => nm.a,
        "b" => nm.b,
        "c" => nm.c,
        "d" => nm.d,
        other => return Err(Error::Representation(format!(
            "unknown entry {other:?}; expected a, b, c, d (or u, z, A, B for factor realizations)"
        ))),
    };
    dump_node(&node, oscillators_of(name), dim, q, params)
}

fn dump_node(
    node: &crate::node::OpNode,
    oscillators: usize,
    dim: usize,
    q: &Number,
    params: &Params,
) -> Result<Vec<Vec<[f64; 2]>>> {
    match exact_carrier(q, params) {
        Some(qr) => {
            let rep = FockRep::new(dim, oscillators, Basis::Exact, qr, params)?;
            Ok(crate::fock::eval_node(node, &rep)?.matrix.to_dense_pairs())
        }
        None => {
            let rep = FockRep::new(dim, oscillators, Basis::Normalized, q.to_complex(), params)?;
            Ok(crate::fock::eval_node(node, &rep)?.matrix.to_dense_pairs())
        }
    }
}
