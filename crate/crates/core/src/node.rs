//! Operator trees for realizations that contain a series inverse.
//!
//! `W^-1` for `W = q a+ a- + K^-1` has no polynomial normal form, so entries
//! that use it are kept as trees whose leaves are normal-ordered expressions
//! or opaque diagonal inverses. Only the Fock backend can evaluate them.

use std::fmt;

use crate::algebra::OperatorExpr;
use crate::quantum_matrix::{GaussFactors, GaussVariant, QuantumMatrix2};

#[derive(Debug, Clone, PartialEq)]
pub enum OpNode {
    Poly(OperatorExpr),
    /// Inverse of an operator that is diagonal in the Fock basis.
    DiagInverse(OperatorExpr),
    Prod(Vec<OpNode>),
    Sum(Vec<OpNode>),
}

impl OpNode {
    pub fn prod(parts: impl IntoIterator<Item = OpNode>) -> OpNode {
        OpNode::Prod(parts.into_iter().collect())
    }

    pub fn sum(parts: impl IntoIterator<Item = OpNode>) -> OpNode {
        OpNode::Sum(parts.into_iter().collect())
    }

    pub fn inv(x: OperatorExpr) -> OpNode {
        OpNode::DiagInverse(x)
    }

    pub fn has_series_inverse(&self) -> bool {
        match self {
            OpNode::Poly(_) => false,
            OpNode::DiagInverse(_) => true,
            OpNode::Prod(v) | OpNode::Sum(v) => v.iter().any(OpNode::has_series_inverse),
        }
    }

    /// The polynomial expression, when the tree has no inverse node.
    pub fn as_poly(&self) -> Option<OperatorExpr> {
        match self {
            OpNode::Poly(x) => Some(x.clone()),
            OpNode::DiagInverse(_) => None,
            OpNode::Prod(v) => {
                let mut it = v.iter();
                let first = it.next()?.as_poly()?;
                it.try_fold(first, |acc, n| Some(&acc * &n.as_poly()?))
            }
            OpNode::Sum(v) => {
                let mut it = v.iter();
                let first = it.next()?.as_poly()?;
                it.try_fold(first, |acc, n| Some(&acc + &n.as_poly()?))
            }
        }
    }
}

impl From<OperatorExpr> for OpNode {
    fn from(x: OperatorExpr) -> Self {
        OpNode::Poly(x)
    }
}

impl fmt::Display for OpNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpNode::Poly(x) => write!(f, "({x})"),
            OpNode::DiagInverse(x) => write!(f, "({x})^-1"),
            OpNode::Prod(v) => {
                for (i, n) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" . ")?;
                    }
                    write!(f, "{n}")?;
                }
                Ok(())
            }
            OpNode::Sum(v) => {
                f.write_str("[")?;
                for (i, n) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{n}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// `(a b; c d)` with tree entries.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeMatrix {
    pub a: OpNode,
    pub b: OpNode,
    pub c: OpNode,
    pub d: OpNode,
}

impl NodeMatrix {
    pub fn entries(&self) -> [(&'static str, &OpNode); 4] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
        ]
    }
}

impl From<&QuantumMatrix2> for NodeMatrix {
    fn from(t: &QuantumMatrix2) -> Self {
        NodeMatrix {
            a: t.a.clone().into(),
            b: t.b.clone().into(),
            c: t.c.clone().into(),
            d: t.d.clone().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeFactors {
    pub u: OpNode,
    pub z: OpNode,
    pub diag_a: OpNode,
    pub diag_b: OpNode,
    pub variant: GaussVariant,
}

impl NodeFactors {
    pub fn compose(&self) -> NodeMatrix {
        let p2 = |x: &OpNode, y: &OpNode| OpNode::prod([x.clone(), y.clone()]);
        let p3 =
            |x: &OpNode, y: &OpNode, z: &OpNode| OpNode::prod([x.clone(), y.clone(), z.clone()]);
        match self.variant {
            GaussVariant::UpperLower => NodeMatrix {
                a: OpNode::sum([self.diag_a.clone(), p3(&self.u, &self.diag_b, &self.z)]),
                b: p2(&self.u, &self.diag_b),
                c: p2(&self.diag_b, &self.z),
                d: self.diag_b.clone(),
            },
            GaussVariant::LowerUpper => NodeMatrix {
                a: self.diag_a.clone(),
                b: p2(&self.diag_a, &self.z),
                c: p2(&self.u, &self.diag_a),
                d: OpNode::sum([p3(&self.u, &self.diag_a, &self.z), self.diag_b.clone()]),
            },
        }
    }
}

impl From<&GaussFactors> for NodeFactors {
    fn from(f: &GaussFactors) -> Self {
        NodeFactors {
            u: f.u.clone().into(),
            z: f.z.clone().into(),
            diag_a: f.diag_a.clone().into(),
            diag_b: f.diag_b.clone().into(),
            variant: f.variant,
        }
    }
}
