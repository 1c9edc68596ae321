//! GL_q(2) layer: relation checks, the quantum determinant, Gauss
//! decompositions in both orders, the `d^-1` relations and matrix powers.
//!
//! Relations are described once as data ([`Relation`]) and evaluated either
//! symbolically here or on Fock matrices in [`crate::fock`].

use rayon::prelude::*;

use crate::algebra::{invert_k_monomial, AlgebraMode, OperatorExpr};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, CheckReport, Status};
use crate::scalar::Scalar;

/// `sum_i coef_i * (product of keys_i)`; the relation holds when this is zero.
#[derive(Debug, Clone)]
pub struct Relation<K> {
    pub name: String,
    pub terms: Vec<(Scalar, Vec<K>)>,
}

impl<K: Copy> Relation<K> {
    fn new(name: impl Into<String>, terms: Vec<(Scalar, Vec<K>)>) -> Self {
        Relation {
            name: name.into(),
            terms,
        }
    }

    /// Evaluates the left-hand side with a caller-supplied algebra.
    pub fn evaluate<T>(
        &self,
        lookup: impl Fn(K) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale_add: impl Fn(Option<T>, &Scalar, T) -> T,
    ) -> Option<T> {
        let mut acc = None;
        for (c, keys) in &self.terms {
            let mut it = keys.iter();
            let first = lookup(*it.next().expect("nonempty product"));
            let prod = it.fold(first, |p, k| mul(&p, &lookup(*k)));
            acc = Some(scale_add(acc, c, prod));
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixEntry {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaussEntry {
    U,
    Z,
    DiagA,
    DiagB,
}

/// Keys for the relations involving `d^-1` and the quantum determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DinvEntry {
    Entry(MatrixEntry),
    DInv,
    Det,
}

/// The six defining relations with `q` replaced by `q^n` in the coefficients.
pub fn gl2q_relations(q_power: i32) -> Vec<Relation<MatrixEntry>> {
    use MatrixEntry::*;
    let p = Scalar::q_pow(q_power);
    let lam = Scalar::lambda_at(q_power);
    let one = Scalar::one();
    let pq = |x: MatrixEntry, y: MatrixEntry| vec![(one.clone(), vec![x, y]), (-&p, vec![y, x])];
    vec![
        Relation::new("ab=qba", pq(A, B)),
        Relation::new("ac=qca", pq(A, C)),
        Relation::new("bd=qdb", pq(B, D)),
        Relation::new("cd=qdc", pq(C, D)),
        Relation::new(
            "bc=cb",
            vec![(one.clone(), vec![B, C]), (-&one, vec![C, B])],
        ),
        Relation::new(
            "ad-da=lambda*bc",
            vec![
                (one.clone(), vec![A, D]),
                (-&one, vec![D, A]),
                (-lam, vec![B, C]),
            ],
        ),
    ]
}

/// `ad - qbc = da - q^-1 bc` and centrality of the determinant.
pub fn qdet_relations() -> Vec<Relation<DinvEntry>> {
    use DinvEntry::*;
    use MatrixEntry::*;
    let one = Scalar::one();
    let mut out = vec![Relation::new(
        "ad-qbc=da-q^-1*bc",
        vec![
            (one.clone(), vec![Entry(A), Entry(D)]),
            (-Scalar::q(), vec![Entry(B), Entry(C)]),
            (-&one, vec![Entry(D), Entry(A)]),
            (Scalar::q_pow(-1), vec![Entry(B), Entry(C)]),
        ],
    )];
    for (x, name) in [(A, "a"), (B, "b"), (C, "c"), (D, "d")] {
        out.push(Relation::new(
            format!("[D_q,{name}]=0"),
            vec![
                (one.clone(), vec![Det, Entry(x)]),
                (-&one, vec![Entry(x), Det]),
            ],
        ));
    }
    out
}

pub fn qweyl_relations() -> Vec<Relation<GaussEntry>> {
    use GaussEntry::*;
    let one = Scalar::one();
    let q = Scalar::q();
    let pq = |x, y, p: &Scalar| vec![(one.clone(), vec![x, y]), (-p, vec![y, x])];
    vec![
        Relation::new("AB=BA", pq(DiagA, DiagB, &one)),
        Relation::new("Au=quA", pq(DiagA, U, &q)),
        Relation::new("Az=qzA", pq(DiagA, Z, &q)),
        Relation::new("uB=qBu", pq(U, DiagB, &q)),
        Relation::new("zB=qBz", pq(Z, DiagB, &q)),
        Relation::new("uz=zu", pq(U, Z, &one)),
    ]
}

pub fn dinv_relations() -> Vec<Relation<DinvEntry>> {
    use DinvEntry::*;
    use MatrixEntry::*;
    let one = Scalar::one();
    let q = Scalar::q();
    let q2 = Scalar::q_pow(2);
    vec![
        Relation::new(
            "d^-1c=qcd^-1",
            vec![
                (one.clone(), vec![DInv, Entry(C)]),
                (-&q, vec![Entry(C), DInv]),
            ],
        ),
        Relation::new(
            "d^-1b=qbd^-1",
            vec![
                (one.clone(), vec![DInv, Entry(B)]),
                (-&q, vec![Entry(B), DInv]),
            ],
        ),
        Relation::new(
            "dd^-1=d^-1d",
            vec![
                (one.clone(), vec![Entry(D), DInv]),
                (-&one, vec![DInv, Entry(D)]),
            ],
        ),
        Relation::new(
            "d^-1a-q^2ad^-1=(1-q^2)D_q(d^-1)^2",
            vec![
                (one.clone(), vec![DInv, Entry(A)]),
                (-&q2, vec![Entry(A), DInv]),
                (-(&one - &q2), vec![Det, DInv, DInv]),
            ],
        ),
        Relation::new(
            "D_qd^-1=d^-1D_q",
            vec![(one.clone(), vec![Det, DInv]), (-&one, vec![DInv, Det])],
        ),
    ]
}

/// A 2x2 matrix `(a b; c d)` of operators in one algebra mode.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumMatrix2 {
    pub a: OperatorExpr,
    pub b: OperatorExpr,
    pub c: OperatorExpr,
    pub d: OperatorExpr,
}

impl QuantumMatrix2 {
    pub fn new(a: OperatorExpr, b: OperatorExpr, c: OperatorExpr, d: OperatorExpr) -> Result<Self> {
        let m = a.mode();
        for x in [&b, &c, &d] {
            if x.mode() != m {
                return Err(Error::ModeMismatch(m.to_string(), x.mode().to_string()));
            }
        }
        Ok(QuantumMatrix2 { a, b, c, d })
    }

    pub fn identity(mode: AlgebraMode) -> Self {
        QuantumMatrix2 {
            a: OperatorExpr::identity(mode),
            b: OperatorExpr::zero(mode),
            c: OperatorExpr::zero(mode),
            d: OperatorExpr::identity(mode),
        }
    }

    pub fn mode(&self) -> AlgebraMode {
        self.a.mode()
    }

    pub fn entry(&self, e: MatrixEntry) -> &OperatorExpr {
        match e {
            MatrixEntry::A => &self.a,
            MatrixEntry::B => &self.b,
            MatrixEntry::C => &self.c,
            MatrixEntry::D => &self.d,
        }
    }

    pub fn entries(&self) -> [(&'static str, &OperatorExpr); 4] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
        ]
    }

    pub fn in_mode(&self, mode: AlgebraMode) -> Result<Self> {
        Ok(QuantumMatrix2 {
            a: self.a.in_mode(mode)?,
            b: self.b.in_mode(mode)?,
            c: self.c.in_mode(mode)?,
            d: self.d.in_mode(mode)?,
        })
    }

    /// Ordinary 2x2 product with noncommuting entries.
    pub fn matmul(&self, o: &QuantumMatrix2) -> QuantumMatrix2 {
        QuantumMatrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussVariant {
    /// `(1 u; 0 1)(A 0; 0 B)(1 0; z 1)`
    UpperLower,
    /// `(1 0; u 1)(A 0; 0 B)(1 z; 0 1)`
    LowerUpper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussFactors {
    pub u: OperatorExpr,
    pub z: OperatorExpr,
    pub diag_a: OperatorExpr,
    pub diag_b: OperatorExpr,
    pub variant: GaussVariant,
}

impl GaussFactors {
    pub fn entry(&self, e: GaussEntry) -> &OperatorExpr {
        match e {
            GaussEntry::U => &self.u,
            GaussEntry::Z => &self.z,
            GaussEntry::DiagA => &self.diag_a,
            GaussEntry::DiagB => &self.diag_b,
        }
    }

    pub fn mode(&self) -> AlgebraMode {
        self.u.mode()
    }

    pub fn in_mode(&self, mode: AlgebraMode) -> Result<Self> {
        Ok(GaussFactors {
            u: self.u.in_mode(mode)?,
            z: self.z.in_mode(mode)?,
            diag_a: self.diag_a.in_mode(mode)?,
            diag_b: self.diag_b.in_mode(mode)?,
            variant: self.variant,
        })
    }
}

fn symbolic_eval<K: Copy + Send + Sync>(
    rel: &Relation<K>,
    mode: AlgebraMode,
    lookup: impl Fn(K) -> OperatorExpr,
) -> OperatorExpr {
    rel.evaluate(
        lookup,
        |x, y| x * y,
        |acc, c, p| {
            let t = p.scale(c);
            match acc {
                Some(a) => a + t,
                None => t,
            }
        },
    )
    .unwrap_or_else(|| OperatorExpr::zero(mode))
}

fn symbolic_report<K: Copy + Send + Sync>(
    rels: &[Relation<K>],
    mode: AlgebraMode,
    q_power: i32,
    lookup: impl Fn(K) -> OperatorExpr + Sync,
) -> CheckReport {
    let records = rels
        .par_iter()
        .map(|rel| {
            let nf = symbolic_eval(rel, mode, &lookup);
            CheckRecord {
                relation: rel.name.clone(),
                status: Status::from_bool(nf.is_zero()),
                witness: nf.to_string(),
                mode: mode.name().to_string(),
                q_power,
                residual: None,
            }
        })
        .collect();
    CheckReport::new(records)
}

/// Checks the six GL_q(2) relations with `q -> q^q_power` in the coefficients.
pub fn check_gl2q_relations(t: &QuantumMatrix2, q_power: i32) -> CheckReport {
    symbolic_report(&gl2q_relations(q_power), t.mode(), q_power, |e| {
        t.entry(e).clone()
    })
}

/// `ad - q bc` together with the consistency and centrality report.
pub fn qdet(t: &QuantumMatrix2) -> (OperatorExpr, CheckReport) {
    let value = &t.a * &t.d - (&t.b * &t.c).scale(&Scalar::q());
    let report = symbolic_report(&qdet_relations(), t.mode(), 1, |e| match e {
        DinvEntry::Entry(x) => t.entry(x).clone(),
        DinvEntry::Det => value.clone(),
        DinvEntry::DInv => unreachable!("no d^-1 in determinant relations"),
    });
    (value, report)
}

pub fn gauss_compose(f: &GaussFactors) -> QuantumMatrix2 {
    match f.variant {
        GaussVariant::UpperLower => {
            let ub = &f.u * &f.diag_b;
            let bz = &f.diag_b * &f.z;
            QuantumMatrix2 {
                a: &f.diag_a + &ub * &f.z,
                b: ub,
                c: bz,
                d: f.diag_b.clone(),
            }
        }
        GaussVariant::LowerUpper => {
            let az = &f.diag_a * &f.z;
            let ua = &f.u * &f.diag_a;
            QuantumMatrix2 {
                a: f.diag_a.clone(),
                d: &ua * &f.z + &f.diag_b,
                b: az,
                c: ua,
            }
        }
    }
}

/// `B = d, z = d^-1 c, u = b d^-1, A = a - b d^-1 c`.
pub fn gauss_extract(t: &QuantumMatrix2) -> Result<GaussFactors> {
    let d_inv = invert_k_monomial(&t.d)?;
    let u = &t.b * &d_inv;
    Ok(GaussFactors {
        z: &d_inv * &t.c,
        diag_a: &t.a - &u * &t.c,
        u,
        diag_b: t.d.clone(),
        variant: GaussVariant::UpperLower,
    })
}

/// The lower-upper order: `A = a, z = a^-1 b, u = c a^-1, B = d - c a^-1 b`.
pub fn gauss_extract_lower_upper(t: &QuantumMatrix2) -> Result<GaussFactors> {
    let a_inv = invert_k_monomial(&t.a)?;
    let u = &t.c * &a_inv;
    Ok(GaussFactors {
        z: &a_inv * &t.b,
        diag_b: &t.d - &u * &t.b,
        u,
        diag_a: t.a.clone(),
        variant: GaussVariant::LowerUpper,
    })
}

pub fn check_qweyl(f: &GaussFactors) -> CheckReport {
    symbolic_report(&qweyl_relations(), f.mode(), 1, |e| f.entry(e).clone())
}

pub fn check_dinv_relations(t: &QuantumMatrix2) -> Result<CheckReport> {
    let d_inv = invert_k_monomial(&t.d)?;
    let (det, _) = qdet(t);
    Ok(symbolic_report(
        &dinv_relations(),
        t.mode(),
        1,
        |e| match e {
            DinvEntry::Entry(x) => t.entry(x).clone(),
            DinvEntry::DInv => d_inv.clone(),
            DinvEntry::Det => det.clone(),
        },
    ))
}

/// `T^n` with normal-ordered entries.
pub fn matrix_power(t: &QuantumMatrix2, n: u32) -> QuantumMatrix2 {
    assert!(n >= 1, "matrix_power needs n >= 1");
    (1..n).fold(t.clone(), |acc, _| acc.matmul(t))
}
