//! Catalog of q-bosonizations of GL_q(2).
//!
//! Each entry is either a matrix `(a b; c d)` of oscillator expressions or a
//! set of Gauss factors `(u, z, A, B)`. Entries that need `W^-1` are built
//! as [`OpNode`] trees and can only be checked on Fock matrices.

use std::fmt;

use serde::Serialize;

use crate::algebra::{AlgebraMode, OperatorExpr, Ops, Osc};
use crate::error::{Error, Result};
use crate::node::{NodeFactors, NodeMatrix, OpNode};
use crate::quantum_matrix::{gauss_compose, GaussFactors, GaussVariant, QuantumMatrix2};
use crate::scalar::{Scalar, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Backend {
    Symbolic,
    NumericOnly,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Symbolic => "symbolic",
            Backend::NumericOnly => "numeric-only",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    Matrix,
    Factors,
}

#[derive(Debug, Clone, Serialize)]
pub struct RealizationSpec {
    pub name: &'static str,
    pub oscillators: usize,
    pub parameters: &'static [Symbol],
    /// Weakest mode in which the defining relations hold.
    pub expected_mode: AlgebraMode,
    pub backend: Backend,
    pub shape: Shape,
    /// The entries as printed in the source, for tracing report lines.
    pub source: &'static str,
}

use Symbol::*;

static CATALOG: [RealizationSpec; 7] = [
    RealizationSpec {
        name: "T",
        oscillators: 1,
        parameters: &[Mu, Nu],
        expected_mode: AlgebraMode::FockRestricted,
        backend: Backend::Symbolic,
        shape: Shape::Matrix,
        source: "T = (lambda mu nu q^N a-, mu q^N; nu q^N, a+)",
    },
    RealizationSpec {
        name: "T1",
        oscillators: 1,
        parameters: &[Mu, Nu],
        expected_mode: AlgebraMode::Generic,
        backend: Backend::Symbolic,
        shape: Shape::Matrix,
        source: "T1 = (-lambda mu nu a+, mu q^-N; nu q^-N, q^-N a-)",
    },
    RealizationSpec {
        name: "T2",
        oscillators: 1,
        parameters: &[Mu, Det],
        expected_mode: AlgebraMode::Generic,
        backend: Backend::Symbolic,
        shape: Shape::Matrix,
        source: "T2 = (mu q^N, a+; a+, mu^-1 q^-N (D_q + q a+^2)), creation operator only",
    },
    RealizationSpec {
        name: "T3",
        oscillators: 2,
        parameters: &[Mu, Nu, Sigma],
        expected_mode: AlgebraMode::FockRestricted,
        backend: Backend::NumericOnly,
        shape: Shape::Matrix,
        source: "T3 = (lambda mu a1+ a1- q^(N2-1), mu nu sigma^-1 X2; sigma q^N2, nu W1^-1), \
                 X2 = lambda a2+ a2- + q^-N2, W1 = q a1+ a1- + q^-N1",
    },
    RealizationSpec {
        name: "Eq12",
        oscillators: 2,
        parameters: &[Alpha, Beta, Gamma, Delta],
        expected_mode: AlgebraMode::Generic,
        backend: Backend::Symbolic,
        shape: Shape::Factors,
        source: "u = alpha a1+, z = beta a2-, A = gamma q^(N1-N2), B = delta q^(N2-N1)",
    },
    RealizationSpec {
        name: "XY",
        oscillators: 2,
        parameters: &[Alpha, Beta, Gamma, Delta],
        expected_mode: AlgebraMode::Generic,
        backend: Backend::Symbolic,
        shape: Shape::Factors,
        source: "u = alpha a1+, z = beta a2-, A = gamma X1 Y2, B = delta Y1 X2, \
                 Xi = lambda ai+ ai- + q^-Ni, Yi = lambda ai+ ai- - q^(-Ni+1)",
    },
    RealizationSpec {
        name: "OneBosonW",
        oscillators: 1,
        parameters: &[Mu, Nu],
        expected_mode: AlgebraMode::FockRestricted,
        backend: Backend::NumericOnly,
        shape: Shape::Factors,
        source:
            "u = mu q^N W^-1 a-, z = nu q W^-1 q^N a-, A = mu nu (lambda - q^(N+1) W^-1) q^N a-, \
                 B = a+, W = q a+ a- + q^-N",
    },
];

/// All entries in a fixed order: T, T1, T2, T3, Eq12, XY, OneBosonW.
pub fn catalog() -> &'static [RealizationSpec] {
    &CATALOG
}

pub fn spec(name: &str) -> Result<&'static RealizationSpec> {
    CATALOG
        .iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownRealization(name.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Realization {
    Matrix(QuantumMatrix2),
    Factors(GaussFactors),
    SeriesMatrix(NodeMatrix),
    SeriesFactors(NodeFactors),
}

impl Realization {
    /// The symbolic matrix, composing Gauss factors when needed.
    pub fn matrix(&self) -> Option<QuantumMatrix2> {
        match self {
            Realization::Matrix(t) => Some(t.clone()),
            Realization::Factors(f) => Some(gauss_compose(f)),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&GaussFactors> {
        match self {
            Realization::Factors(f) => Some(f),
            _ => None,
        }
    }

    pub fn node_matrix(&self) -> NodeMatrix {
        match self {
            Realization::Matrix(t) => NodeMatrix::from(t),
            Realization::Factors(f) => NodeMatrix::from(&gauss_compose(f)),
            Realization::SeriesMatrix(m) => m.clone(),
            Realization::SeriesFactors(f) => f.compose(),
        }
    }

    pub fn node_factors(&self) -> Option<NodeFactors> {
        match self {
            Realization::Factors(f) => Some(NodeFactors::from(f)),
            Realization::SeriesFactors(f) => Some(f.clone()),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Realization::Matrix(_) | Realization::Factors(_))
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realization::Factors(g) => {
                writeln!(f, "u = {}", g.u)?;
                writeln!(f, "z = {}", g.z)?;
                writeln!(f, "A = {}", g.diag_a)?;
                writeln!(f, "B = {}", g.diag_b)?;
                let t = gauss_compose(g);
                for (n, x) in t.entries() {
                    writeln!(f, "{n} = {x}")?;
                }
                Ok(())
            }
            Realization::Matrix(t) => {
                for (n, x) in t.entries() {
                    writeln!(f, "{n} = {x}")?;
                }
                Ok(())
            }
            Realization::SeriesFactors(g) => {
                writeln!(f, "u = {}", g.u)?;
                writeln!(f, "z = {}", g.z)?;
                writeln!(f, "A = {}", g.diag_a)?;
                writeln!(f, "B = {}", g.diag_b)
            }
            Realization::SeriesMatrix(m) => {
                for (n, x) in m.entries() {
                    writeln!(f, "{n} = {x}")?;
                }
                Ok(())
            }
        }
    }
}

fn s(sym: Symbol) -> Scalar {
    Scalar::symbol(sym)
}

/// `X_i = lambda a+ a- + K^-1`.
pub fn x_element(mode: AlgebraMode, osc: Osc) -> OperatorExpr {
    let o = Ops::new(mode);
    (o.ap(osc) * o.am(osc)).scale(&Scalar::lambda()) + o.k(osc, -1)
}

/// `Y_i = lambda a+ a- - q K^-1`.
pub fn y_element(mode: AlgebraMode, osc: Osc) -> OperatorExpr {
    let o = Ops::new(mode);
    (o.ap(osc) * o.am(osc)).scale(&Scalar::lambda()) - o.k(osc, -1).scale(&Scalar::q())
}

/// `W = q a+ a- + K^-1`.
pub fn w_element(mode: AlgebraMode, osc: Osc) -> OperatorExpr {
    let o = Ops::new(mode);
    (o.ap(osc) * o.am(osc)).scale(&Scalar::q()) + o.k(osc, -1)
}

pub fn make_realization(name: &str, mode: AlgebraMode) -> Result<Realization> {
    let spec = spec(name)?;
    let o = Ops::new(mode);
    let (one, two) = (Osc::One, Osc::Two);
    let lam = Scalar::lambda();
    let q = Scalar::q();
    Ok(match spec.name {
        "T" => {
            let k = o.k(one, 1);
            Realization::Matrix(QuantumMatrix2::new(
                (&k * &o.am(one)).scale(&(&lam * s(Mu) * s(Nu))),
                k.scale(&s(Mu)),
                k.scale(&s(Nu)),
                o.ap(one),
            )?)
        }
        "T1" => {
            let ki = o.k(one, -1);
            Realization::Matrix(QuantumMatrix2::new(
                o.ap(one).scale(&-(&lam * s(Mu) * s(Nu))),
                ki.scale(&s(Mu)),
                ki.scale(&s(Nu)),
                &ki * &o.am(one),
            )?)
        }
        "T2" => {
            let ap = o.ap(one);
            let inner = o.c(s(Det)) + (&ap * &ap).scale(&q);
            let mu_inv = Scalar::symbol_pow(Mu, -1);
            Realization::Matrix(QuantumMatrix2::new(
                o.k(one, 1).scale(&s(Mu)),
                ap.clone(),
                ap,
                (o.k(one, -1) * inner).scale(&mu_inv),
            )?)
        }
        "T3" => {
            let a =
                (o.ap(one) * o.am(one) * o.k(two, 1)).scale(&(&lam * s(Mu) * Scalar::q_pow(-1)));
            let b = x_element(mode, two).scale(&(s(Mu) * s(Nu) * Scalar::symbol_pow(Sigma, -1)));
            let c = o.k(two, 1).scale(&s(Sigma));
            let d = OpNode::prod([o.c(s(Nu)).into(), OpNode::inv(w_element(mode, one))]);
            Realization::SeriesMatrix(NodeMatrix {
                a: a.into(),
                b: b.into(),
                c: c.into(),
                d,
            })
        }
        "Eq12" => Realization::Factors(GaussFactors {
            u: o.ap(one).scale(&s(Alpha)),
            z: o.am(two).scale(&s(Beta)),
            diag_a: (o.k(one, 1) * o.k(two, -1)).scale(&s(Gamma)),
            diag_b: (o.k(one, -1) * o.k(two, 1)).scale(&s(Delta)),
            variant: GaussVariant::UpperLower,
        }),
        "XY" => Realization::Factors(GaussFactors {
            u: o.ap(one).scale(&s(Alpha)),
            z: o.am(two).scale(&s(Beta)),
            diag_a: (x_element(mode, one) * y_element(mode, two)).scale(&s(Gamma)),
            diag_b: (y_element(mode, one) * x_element(mode, two)).scale(&s(Delta)),
            variant: GaussVariant::UpperLower,
        }),
        "OneBosonW" => {
            let w_inv = || OpNode::inv(w_element(mode, one));
            let k = o.k(one, 1);
            let am = o.am(one);
            let mu_nu = s(Mu) * s(Nu);
            let u = OpNode::prod([k.scale(&s(Mu)).into(), w_inv(), am.clone().into()]);
            let z = OpNode::prod([o.c(&s(Nu) * &q).into(), w_inv(), (&k * &am).into()]);
            // mu nu (lambda - q K W^-1) K a-
            let ka = &k * &am;
            let diag_a = OpNode::sum([
                ka.scale(&(&mu_nu * &lam)).into(),
                OpNode::prod([k.scale(&-(&mu_nu * &q)).into(), w_inv(), ka.into()]),
            ]);
            Realization::SeriesFactors(NodeFactors {
                u,
                z,
                diag_a,
                diag_b: o.ap(one).into(),
                variant: GaussVariant::UpperLower,
            })
        }
        _ => unreachable!("catalog and constructor out of sync"),
    })
}

/// Determinant values stated alongside the realizations, where one is given.
pub fn expected_qdet(name: &str, mode: AlgebraMode) -> Result<Option<OperatorExpr>> {
    let spec = spec(name)?;
    let o = Ops::new(mode);
    let mu_nu_q = s(Mu) * s(Nu) * Scalar::q_pow(-1);
    Ok(match spec.name {
        "Eq12" => Some(o.c(s(Gamma) * s(Delta))),
        "XY" => Some(
            (x_element(mode, Osc::One)
                * x_element(mode, Osc::Two)
                * y_element(mode, Osc::One)
                * y_element(mode, Osc::Two))
            .scale(&(s(Gamma) * s(Delta))),
        ),
        "T" | "T3" | "OneBosonW" if mode == AlgebraMode::FockRestricted => Some(o.c(-mu_nu_q)),
        _ => None,
    })
}

/// The Eq12 and XY matrices exactly as printed next to their factors (the
/// composed matrices are the ground truth; these are kept to report the
/// differences).
pub fn printed_matrix(name: &str, mode: AlgebraMode) -> Result<Option<QuantumMatrix2>> {
    let spec = spec(name)?;
    let o = Ops::new(mode);
    let (one, two) = (Osc::One, Osc::Two);
    let kk = o.k(one, -1) * o.k(two, 1);
    let pair = o.ap(one) * o.am(two);
    Ok(match spec.name {
        "Eq12" => Some(QuantumMatrix2::new(
            (o.k(one, 1) * o.k(two, -1)).scale(&s(Gamma))
                + (&kk * &pair).scale(&(s(Alpha) * s(Beta) * s(Delta))),
            (o.ap(one) * &kk).scale(&(s(Alpha) * s(Delta))),
            (&kk * o.am(two)).scale(&(s(Beta) * s(Delta))),
            kk.scale(&s(Delta)),
        )?),
        "XY" => {
            let x1y2 = x_element(mode, one) * y_element(mode, two);
            let y1x2 = y_element(mode, one) * x_element(mode, two);
            Some(QuantumMatrix2::new(
                x1y2.scale(&s(Gamma))
                    + (&y1x2 * &pair).scale(&(s(Alpha) * s(Beta) * s(Delta) * Scalar::q())),
                (o.ap(one) * &y1x2).scale(&(s(Alpha) * s(Delta))),
                (&x1y2 * o.am(two)).scale(&(s(Beta) * s(Delta))),
                y1x2.scale(&s(Delta)),
            )?)
        }
        _ => None,
    })
}
