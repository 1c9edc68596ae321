//! Acceptance criteria 1-10. Runs without the libtest harness so that every
//! criterion prints one line, pass or fail, on each `cargo test` run.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use qboson_core::algebra::{q_commutator, zeta_element_of};
use qboson_core::fock::{
    check_gl2q_numeric, eval_node_matrix, rep_matrix, Basis, FockRep, NumericMatrix, Params,
};
use qboson_core::qdiff::{check_qdiff_gl2q, qdiff_matrices, PolyBasisRep};
use qboson_core::quantum_matrix::{
    check_dinv_relations, check_gl2q_relations, gauss_compose, gauss_extract, gl2q_relations,
    matrix_power, qdet, MatrixEntry,
};
use qboson_core::realizations::{catalog, make_realization, Backend};
use qboson_core::sparse::SparseMatrix;
use qboson_core::{AlgebraMode, CheckReport, Field, OperatorExpr, Ops, Osc, Scalar, Symbol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{add, basis, rat, scale_state, Oracle, State};

const GENERIC: AlgebraMode = AlgebraMode::Generic;
const FOCK: AlgebraMode = AlgebraMode::FockRestricted;

const EQ12_TIME_LIMIT: Duration = Duration::from_secs(1);
const XY_TIME_LIMIT: Duration = Duration::from_secs(5);
const NUMERIC_DIM: usize = 16;
const NUMERIC_TOL: f64 = 1e-9;
const MATRIX_ELEMENT_TOL: f64 = 1e-12;
const MATRIX_ELEMENT_MAX: usize = 12;
const QDIFF_MAX_DIM: usize = 16;
const ASSOC_TRIPLES: usize = 1000;
const HOMOMORPHISM_PAIRS: usize = 500;
const PROPERTY_SEED: u64 = 0x5eed_0010;

/// Expected nonzero matrix elements of one column, `((n, m), value)`.
type Column = Vec<((usize, usize), f64)>;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

fn failing(r: &CheckReport) -> Vec<String> {
    r.failures().map(|x| x.relation.clone()).collect()
}

fn matrix_of(name: &str, mode: AlgebraMode) -> qboson_core::quantum_matrix::QuantumMatrix2 {
    make_realization(name, mode)
        .unwrap()
        .matrix()
        .expect("symbolic realization")
}

fn s(sym: Symbol) -> Scalar {
    Scalar::symbol(sym)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let t = matrix_of("Eq12", GENERIC);
    let rels = check_gl2q_relations(&t, 1);
    let (det, det_report) = qdet(&t);
    // the second form of the determinant, computed on its own
    let other = &t.d * &t.a - (&t.b * &t.c).scale(&Scalar::q_pow(-1));
    let elapsed = start.elapsed();
    let expected = Ops::new(GENERIC).c(s(Symbol::Gamma) * s(Symbol::Delta));
    let pass = rels.len() == 6
        && rels.all_pass()
        && det_report.all_pass()
        && det == expected
        && other == expected
        && elapsed < EQ12_TIME_LIMIT;
    Verdict::new(
        pass,
        format!(
            "{}/6 relations, qdet = {det}, da-q^-1bc = {other}, {:.0?} (limit {:?}); failing: {:?}",
            rels.records.iter().filter(|r| r.passed()).count(),
            elapsed,
            EQ12_TIME_LIMIT,
            failing(&rels)
        ),
    )
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let r = make_realization("XY", GENERIC).unwrap();
    let f = r.factors().expect("Gauss factors");
    let weyl = qboson_core::quantum_matrix::check_qweyl(f);
    let t = gauss_compose(f);
    let rels = check_gl2q_relations(&t, 1);
    let (det, _) = qdet(&t);
    let expected = qboson_core::realizations::expected_qdet("XY", GENERIC)
        .unwrap()
        .unwrap();
    let elapsed = start.elapsed();
    let pass = weyl.all_pass() && rels.all_pass() && det == expected && elapsed < XY_TIME_LIMIT;
    Verdict::new(
        pass,
        format!(
            "q-Weyl failing {:?}; GL_q(2) failing {:?}; qdet matches gamma*delta*X1X2Y1Y2: {}; {:.0?} (limit {:?})",
            failing(&weyl),
            failing(&rels),
            det == expected,
            elapsed,
            XY_TIME_LIMIT
        ),
    )
}

fn criterion_3() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["T", "T1", "T2"] {
        let t = matrix_of(name, FOCK);
        let rels = check_gl2q_relations(&t, 1);
        let (det, det_report) = qdet(&t);
        let mut ok = rels.all_pass() && det_report.all_pass();
        if name == "T2" {
            // D is a central symbol and must be the determinant
            ok &= det == Ops::new(FOCK).c(s(Symbol::Det));
        }
        pass &= ok;
        parts.push(format!("{name} fock: {}", if ok { "pass" } else { "FAIL" }));
    }
    for name in ["T", "T1", "T2"] {
        let t = matrix_of(name, GENERIC);
        let rec = check_gl2q_relations(&t, 1)
            .get("ad-da=lambda*bc")
            .cloned()
            .expect("relation present");
        let fails_with_witness = !rec.passed() && !rec.witness.is_empty() && rec.witness != "0";
        pass &= fails_with_witness;
        parts.push(if fails_with_witness {
            format!("{name} generic ad-da: fails, witness {}", rec.witness)
        } else {
            format!("{name} generic ad-da: PASSES (required to fail)")
        });
    }
    Verdict::new(pass, parts.join("; "))
}

/// T acting on the untruncated Fock space, `a = lambda mu nu K a-`,
/// `b = mu K`, `c = nu K`, `d = a+`.
fn t_on_state(o: &Oracle, mu: &BigRational, nu: &BigRational, e: MatrixEntry, v: &State) -> State {
    let lam = o.qpow(1) - o.qpow(-1);
    match e {
        MatrixEntry::A => scale_state(&o.k(&o.lower(v, 0), 0, 1), &(lam * mu * nu)),
        MatrixEntry::B => scale_state(&o.k(v, 0, 1), mu),
        MatrixEntry::C => scale_state(&o.k(v, 0, 1), nu),
        MatrixEntry::D => o.raise(v, 0),
    }
}

fn criterion_4() -> Verdict {
    let t = matrix_of("T", FOCK);
    let (det, _) = qdet(&t);
    let expected = Ops::new(FOCK).c(-(s(Symbol::Mu) * s(Symbol::Nu) * Scalar::q_pow(-1)));
    let symbolic = det == expected;

    // ad - q bc applied state by state with the defining Fock action
    let (mu, nu) = (rat(3, 2), rat(5, 3));
    let mut numeric = true;
    for q in [rat(3, 2), rat(4, 5), rat(-7, 3)] {
        let o = Oracle::new(q.clone());
        let value = -(&mu * &nu) / &q;
        for n in 0..12 {
            let v = basis(n, 0);
            let ad = t_on_state(
                &o,
                &mu,
                &nu,
                MatrixEntry::A,
                &t_on_state(&o, &mu, &nu, MatrixEntry::D, &v),
            );
            let bc = t_on_state(
                &o,
                &mu,
                &nu,
                MatrixEntry::B,
                &t_on_state(&o, &mu, &nu, MatrixEntry::C, &v),
            );
            let lhs = add(&ad, &scale_state(&bc, &-q.clone()));
            numeric &= lhs == scale_state(&v, &value);
        }
    }
    Verdict::new(
        symbolic && numeric,
        format!("qdet(T) = {det}; state-by-state oracle agrees: {numeric}"),
    )
}

fn criterion_5() -> Verdict {
    let r = make_realization("Eq12", GENERIC).unwrap();
    let f = r.factors().expect("Gauss factors").clone();
    let round = gauss_extract(&gauss_compose(&f)).unwrap();
    let dinv = check_dinv_relations(&gauss_compose(&f)).unwrap();
    Verdict::new(
        round == f && dinv.len() == 5 && dinv.all_pass(),
        format!(
            "round trip identical: {}; d^-1 relations {}/5, failing {:?}",
            round == f,
            dinv.records.iter().filter(|r| r.passed()).count(),
            failing(&dinv)
        ),
    )
}

/// OneBosonW on the untruncated Fock space, composed from its Gauss factors.
struct OneBosonOracle {
    o: Oracle,
    mu: BigRational,
    nu: BigRational,
}

impl OneBosonOracle {
    fn u(&self, v: &State) -> State {
        let o = &self.o;
        scale_state(&o.k(&o.w_inv(&o.lower(v, 0), 0), 0, 1), &self.mu)
    }

    fn z(&self, v: &State) -> State {
        let o = &self.o;
        scale_state(&o.w_inv(&o.k(&o.lower(v, 0), 0, 1), 0), &(&self.nu * &o.q))
    }

    fn diag_a(&self, v: &State) -> State {
        let o = &self.o;
        let ka = o.k(&o.lower(v, 0), 0, 1);
        let mn = &self.mu * &self.nu;
        let lam = o.qpow(1) - o.qpow(-1);
        let first = scale_state(&ka, &(&mn * lam));
        let second = scale_state(&o.k(&o.w_inv(&ka, 0), 0, 1), &-(&mn * &o.q));
        add(&first, &second)
    }

    fn diag_b(&self, v: &State) -> State {
        self.o.raise(v, 0)
    }

    fn entry(&self, e: MatrixEntry, v: &State) -> State {
        match e {
            MatrixEntry::A => add(&self.diag_a(v), &self.u(&self.diag_b(&self.z(v)))),
            MatrixEntry::B => self.u(&self.diag_b(v)),
            MatrixEntry::C => self.diag_b(&self.z(v)),
            MatrixEntry::D => self.diag_b(v),
        }
    }
}

/// Residual of a defining relation on the lowest basis states, computed
/// with an entry action given state by state.
fn oracle_residual(
    rel_name: &str,
    q: &BigRational,
    entry: &dyn Fn(MatrixEntry, &State) -> State,
    states: usize,
) -> Option<usize> {
    let rel = gl2q_relations(1).into_iter().find(|r| r.name == rel_name)?;
    let assign = |sym: Symbol| (sym == Symbol::Q).then(|| q.clone());
    (0..states).find(|&n| {
        let v = basis(n, 0);
        let mut acc = State::new();
        for (c, keys) in &rel.terms {
            let coef: BigRational = c.eval(&assign).expect("coefficient in q only");
            let image = keys.iter().rev().fold(v.clone(), |w, k| entry(*k, &w));
            acc = add(&acc, &scale_state(&image, &coef));
        }
        !acc.is_empty()
    })
}

fn numeric_matrix<T: Field>(name: &str, rep: &FockRep<T>) -> NumericMatrix<T> {
    let sp = qboson_core::realizations::spec(name).unwrap();
    let r = make_realization(name, sp.expected_mode).unwrap();
    eval_node_matrix(&r.node_matrix(), rep).unwrap()
}

fn criterion_6() -> Verdict {
    let params = Params::default();
    let mu = rat(3, 2);
    let nu = rat(5, 3);
    assert_eq!(
        params.get(Symbol::Mu),
        Some(&qboson_core::Number::Rational(mu.clone()))
    );
    assert_eq!(
        params.get(Symbol::Nu),
        Some(&qboson_core::Number::Rational(nu.clone()))
    );
    let mut pass = true;
    let mut parts = Vec::new();
    for sp in catalog() {
        let mut failures: Vec<String> = Vec::new();
        let mut confirmed: Vec<String> = Vec::new();
        for (label, q_exact) in [("q=0.8", rat(4, 5)), ("q=3/2", rat(3, 2))] {
            let report = if label == "q=3/2" {
                let rep = FockRep::new(
                    NUMERIC_DIM,
                    sp.oscillators,
                    Basis::Exact,
                    q_exact.clone(),
                    &params,
                )
                .unwrap();
                let m = numeric_matrix(sp.name, &rep);
                let r = check_gl2q_numeric(&m, &rep, 1, NUMERIC_TOL).unwrap();
                if sp.backend == Backend::Symbolic {
                    // the exact carrier only passes on an exact zero
                    assert!(r
                        .records
                        .iter()
                        .all(|x| !x.passed() || x.residual == Some(0.0)));
                }
                r
            } else {
                let rep = FockRep::new(
                    NUMERIC_DIM,
                    sp.oscillators,
                    Basis::Normalized,
                    Complex64::new(0.8, 0.0),
                    &params,
                )
                .unwrap();
                check_gl2q_numeric(&numeric_matrix(sp.name, &rep), &rep, 1, NUMERIC_TOL).unwrap()
            };
            for rec in report.failures() {
                let tag = format!("{} ({label})", rec.relation);
                if sp.name == "OneBosonW" {
                    let oracle = OneBosonOracle {
                        o: Oracle::new(q_exact.clone()),
                        mu: mu.clone(),
                        nu: nu.clone(),
                    };
                    if let Some(n) =
                        oracle_residual(&rec.relation, &q_exact, &|e, v| oracle.entry(e, v), 4)
                    {
                        confirmed.push(format!("{tag} nonzero on |{n}>"));
                        continue;
                    }
                }
                failures.push(tag);
            }
        }
        pass &= failures.is_empty();
        let mut line = format!("{}:", sp.name);
        if failures.is_empty() && confirmed.is_empty() {
            line.push_str(" pass");
        }
        if !failures.is_empty() {
            line.push_str(&format!(" FAIL {failures:?}"));
        }
        if !confirmed.is_empty() {
            line.push_str(&format!(" expected-fail, oracle-confirmed {confirmed:?}"));
        }
        parts.push(line);
    }
    Verdict::new(pass, parts.join("; "))
}

/// `[n]` for real `q`, from the closed form.
fn qnum_f(q: f64, n: usize) -> f64 {
    (q.powi(n as i32) - q.powi(-(n as i32))) / (q - 1.0 / q)
}

fn criterion_7() -> Verdict {
    let q = 0.8_f64;
    let (alpha, beta, gamma, delta) = (2.0, 3.0, 5.0, 7.0);
    let params = Params::default();
    let dim = MATRIX_ELEMENT_MAX + 2;
    let rep = FockRep::new(dim, 2, Basis::Normalized, Complex64::new(q, 0.0), &params).unwrap();
    let t = matrix_of("Eq12", GENERIC);
    let entries: Vec<(&str, SparseMatrix<Complex64>)> = t
        .entries()
        .iter()
        .map(|(n, x)| (*n, rep_matrix(x, &rep).unwrap().matrix))
        .collect();
    let qp = |e: i64| q.powi(e as i32);
    let root = |n: usize| qnum_f(q, n).sqrt();
    let mut worst = 0.0_f64;
    for n in 0..=MATRIX_ELEMENT_MAX {
        for m in 0..=MATRIX_ELEMENT_MAX {
            let k = m as i64 - n as i64;
            let mut expected: Vec<(&str, Column)> = vec![
                ("a", vec![((n, m), gamma * qp(-k))]),
                ("b", vec![((n + 1, m), alpha * delta * qp(k) * root(n + 1))]),
                ("c", vec![]),
                ("d", vec![((n, m), delta * qp(k))]),
            ];
            if m > 0 {
                expected[0].1.push((
                    (n + 1, m - 1),
                    alpha * beta * delta * qp(k - 1) * (root(n + 1) * root(m)),
                ));
                expected[2]
                    .1
                    .push(((n, m - 1), beta * delta * qp(k - 1) * root(m)));
            }
            for ((name, want), (_, got)) in expected.iter().zip(&entries) {
                let col = rep.index(n, m);
                let mut dense = vec![Complex64::zero(); rep.size()];
                for (i, v) in got.column(col) {
                    dense[*i] = *v;
                }
                let scale = want.iter().map(|(_, v)| v.abs()).fold(1.0, f64::max);
                for ((n2, m2), v) in want {
                    dense[rep.index(*n2, *m2)] -= Complex64::new(*v, 0.0);
                }
                let err = dense.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
                if err > worst {
                    worst = err;
                }
                if err > MATRIX_ELEMENT_TOL {
                    return Verdict::new(
                        false,
                        format!("{name}|{n},{m}>: relative error {err:.3e}"),
                    );
                }
            }
        }
    }
    Verdict::new(
        true,
        format!("a, b (alpha*delta), c, d on n, m <= {MATRIX_ELEMENT_MAX}: max relative error {worst:.2e}"),
    )
}

fn criterion_8() -> Verdict {
    let q = rat(3, 2);
    for variables in [1, 2] {
        for dim in 1..=QDIFF_MAX_DIM {
            let poly = PolyBasisRep::new(dim - 1, q.clone(), variables).unwrap();
            let mats = qdiff_matrices(&poly);
            let fock =
                FockRep::new(dim, variables, Basis::Exact, q.clone(), &Params::ones()).unwrap();
            for (i, osc) in [Osc::One, Osc::Two].into_iter().take(variables).enumerate() {
                let pairs = [
                    ("M", &mats.m[i], OperatorExpr::raise(GENERIC, osc)),
                    ("Dq", &mats.dq[i], OperatorExpr::lower(GENERIC, osc)),
                    ("Kq", &mats.kq[i], OperatorExpr::k_pow(GENERIC, osc, 1)),
                ];
                for (name, lhs, expr) in pairs {
                    let rhs = rep_matrix(&expr, &fock).unwrap().matrix;
                    let size = fock.size();
                    let equal =
                        (0..size).all(|r| (0..size).all(|c| lhs.matrix.get(r, c) == rhs.get(r, c)));
                    if !equal {
                        return Verdict::new(
                            false,
                            format!("{name} differs for {variables} variable(s), dim {dim}"),
                        );
                    }
                }
            }
        }
    }
    let poly = PolyBasisRep::new(NUMERIC_DIM - 1, Complex64::new(0.8, 0.0), 2).unwrap();
    let report = check_qdiff_gl2q(&poly, &Params::default(), 1, NUMERIC_TOL).unwrap();
    let relations: Vec<_> = report.records.iter().take(6).collect();
    let worst = relations
        .iter()
        .filter_map(|r| r.residual)
        .fold(0.0, f64::max);
    let pass = relations.iter().all(|r| r.passed());
    Verdict::new(
        pass,
        format!(
            "M, Dq, Kq equal the Fock matrices for dims 1..={QDIFF_MAX_DIM}; q-difference GL_q(2) at q=0.8: \
             worst relative residual {worst:.2e}, failing {:?}",
            failing(&report)
        ),
    )
}

fn criterion_9() -> Verdict {
    let t = matrix_of("Eq12", GENERIC);
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [2u32, 3] {
        let r = check_gl2q_relations(&matrix_power(&t, n), n as i32);
        pass &= r.len() == 6 && r.all_pass();
        parts.push(format!("n={n}: failing {:?}", failing(&r)));
    }
    Verdict::new(pass, parts.join("; "))
}

fn criterion_10() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    let mut assoc_bad = 0;
    for i in 0..ASSOC_TRIPLES {
        let mode = if i % 2 == 0 { GENERIC } else { FOCK };
        let osc = 1 + i % 2;
        let x = common::random_expr(&mut rng, mode, osc, 3);
        let y = common::random_expr(&mut rng, mode, osc, 3);
        let z = common::random_expr(&mut rng, mode, osc, 3);
        if (&x * &y) * &z != &x * &(&y * &z) {
            assoc_bad += 1;
        }
    }

    let q = rat(3, 2);
    let dim = 8;
    let rep = FockRep::new(dim, 2, Basis::Exact, q, &Params::default()).unwrap();
    let mut hom_bad = 0;
    for i in 0..HOMOMORPHISM_PAIRS {
        let mode = if i % 2 == 0 { GENERIC } else { FOCK };
        let x = common::random_expr(&mut rng, mode, 2, 3);
        let y = common::random_expr(&mut rng, mode, 2, 3);
        let lhs = rep_matrix(&(&x * &y), &rep).unwrap();
        let rhs = rep_matrix(&x, &rep)
            .unwrap()
            .mul(&rep_matrix(&y, &rep).unwrap());
        let rec = qboson_core::fock::compare_matrices("xy", &lhs, &rhs, &rep, 0.0).unwrap();
        if !rec.passed() {
            hom_bad += 1;
        }
    }

    let o = Ops::new(GENERIC);
    let mut central = true;
    for zosc in [Osc::One, Osc::Two] {
        let zeta = zeta_element_of(GENERIC, zosc);
        for osc in [Osc::One, Osc::Two] {
            for g in [o.ap(osc), o.am(osc), o.k(osc, 1), o.k(osc, -1)] {
                central &= q_commutator(&zeta, &g, &Scalar::one(), GENERIC)
                    .unwrap()
                    .is_zero();
            }
        }
        central &= !zeta.is_zero();
    }
    let fock_zero = [Osc::One, Osc::Two]
        .iter()
        .all(|&osc| zeta_element_of(FOCK, osc).is_zero());

    Verdict::new(
        assoc_bad == 0 && hom_bad == 0 && central && fock_zero,
        format!(
            "associativity {}/{ASSOC_TRIPLES}; homomorphism {}/{HOMOMORPHISM_PAIRS}; \
             zeta central (generic) {central}; zeta = 0 (fock) {fock_zero}",
            ASSOC_TRIPLES - assoc_bad,
            HOMOMORPHISM_PAIRS - hom_bad
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Eq12 symbolic, generic", criterion_1),
        ("XY symbolic, generic", criterion_2),
        ("one-boson Fock/generic split", criterion_3),
        ("qdet(T) = -mu*nu*q^-1", criterion_4),
        ("Gauss round trip and d^-1 relations", criterion_5),
        ("numeric catalog, D = 16", criterion_6),
        ("two-oscillator matrix elements", criterion_7),
        ("q-difference = Fock", criterion_8),
        ("matrix powers", criterion_9),
        ("randomized properties", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::new(false, format!("panicked: {msg}"))
        });
        println!(
            "criterion {n:>2} {} {title}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        if !v.pass {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all criteria pass");
}
