//! q-difference realization of the q-oscillator on polynomials of degree at
//! most `max_degree` in one variable `w` or two variables `w, v`.
//!
//! Polynomials are dense coefficient vectors; the basis index of `w^n v^m`
//! is the two-oscillator Fock index of `|n,m>`.

use crate::algebra::Osc;
use crate::error::{Error, Result};
use crate::fock::{
    check_gl2q_numeric, compare_matrices, number_matrix, rep_matrix, zero_record, Basis, FockRep,
    NumericMatrix, OperatorMatrix, Params,
};
use crate::numeric::Field;
use crate::realizations::make_realization;
use crate::report::CheckReport;
use crate::sparse::SparseMatrix;
use crate::AlgebraMode;

#[derive(Debug, Clone)]
pub struct PolyBasisRep<T> {
    max_degree: usize,
    q: T,
    variables: usize,
}

impl<T: Field> PolyBasisRep<T> {
    pub fn new(max_degree: usize, q: T, variables: usize) -> Result<Self> {
        if !(1..=2).contains(&variables) {
            return Err(Error::Representation(format!(
                "{variables} variables requested; only 1 or 2 are supported"
            )));
        }
        if q.is_zero() {
            return Err(Error::Representation("q = 0".into()));
        }
        Ok(PolyBasisRep {
            max_degree,
            q,
            variables,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// Number of monomials per variable.
    pub fn dim(&self) -> usize {
        self.max_degree + 1
    }

    pub fn size(&self) -> usize {
        self.dim().pow(self.variables as u32)
    }

    /// Degrees of a basis index in `(w, v)`.
    fn degrees(&self, idx: usize) -> (usize, usize) {
        if self.variables == 1 {
            (idx, 0)
        } else {
            (idx / self.dim(), idx % self.dim())
        }
    }

    fn index(&self, n: usize, m: usize) -> usize {
        if self.variables == 1 {
            n
        } else {
            n * self.dim() + m
        }
    }

    fn degree_in(&self, idx: usize, var: Osc) -> usize {
        let (n, m) = self.degrees(idx);
        if var == Osc::One {
            n
        } else {
            m
        }
    }

    fn check_var(&self, var: Osc) {
        assert!(
            var == Osc::One || self.variables == 2,
            "second variable used on a one-variable space"
        );
    }

    /// `p -> x p`, dropping the part above `max_degree`.
    pub fn multiply(&self, p: &[T], var: Osc) -> Vec<T> {
        self.check_var(var);
        let mut out = vec![T::zero(); self.size()];
        for (i, c) in p.iter().enumerate() {
            let (n, m) = self.degrees(i);
            let (n, m) = if var == Osc::One {
                (n + 1, m)
            } else {
                (n, m + 1)
            };
            if n < self.dim() && m < self.dim() {
                out[self.index(n, m)] = c.clone();
            }
        }
        out
    }

    /// `p(x) -> p(s x)`: the coefficient of `x^n` is scaled by `s^n`.
    pub fn dilate(&self, p: &[T], var: Osc, s: &T) -> Vec<T> {
        self.check_var(var);
        p.iter()
            .enumerate()
            .map(|(i, c)| {
                let n = self.degree_in(i, var) as i64;
                c.clone() * s.powi(n).expect("nonzero dilation")
            })
            .collect()
    }

    /// Jackson derivative `(p(qx) - p(q^-1 x)) / ((q - q^-1) x)`.
    ///
    /// At `q = +-1` the quotient is replaced by its limit.
    pub fn jackson(&self, p: &[T], var: Osc) -> Vec<T> {
        self.check_var(var);
        let q = self.q.clone();
        let q_inv = q.inv().expect("q != 0");
        let lam = q.clone() - q_inv.clone();
        let numerator: Vec<T> = match lam.inv() {
            Some(lam_inv) => {
                let up = self.dilate(p, var, &q);
                let down = self.dilate(p, var, &q_inv);
                up.into_iter()
                    .zip(down)
                    .map(|(x, y)| (x - y) * lam_inv.clone())
                    .collect()
            }
            None => p
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let n = self.degree_in(i, var) as i64;
                    // [n] = sum_k q^(n-1-2k)
                    let qn = (0..n).fold(T::zero(), |acc, k| {
                        acc + q.powi(n - 1 - 2 * k).expect("q != 0")
                    });
                    c.clone() * qn
                })
                .collect(),
        };
        // divide by x: the constant term of the numerator is zero
        let mut out = vec![T::zero(); self.size()];
        for (i, c) in numerator.into_iter().enumerate() {
            let (n, m) = self.degrees(i);
            let shifted = if var == Osc::One {
                n.checked_sub(1).map(|n| (n, m))
            } else {
                m.checked_sub(1).map(|m| (n, m))
            };
            if let Some((n, m)) = shifted {
                out[self.index(n, m)] = c;
            }
        }
        out
    }

    /// Matrix of a linear map given by its action on coefficient vectors.
    fn matrix_of(&self, f: impl Fn(&[T]) -> Vec<T>) -> SparseMatrix<T> {
        let mut m = SparseMatrix::zeros(self.size());
        let mut e = vec![T::zero(); self.size()];
        for j in 0..self.size() {
            e[j] = T::one();
            for (i, x) in f(&e).into_iter().enumerate() {
                m.set(i, j, x);
            }
            e[j] = T::zero();
        }
        m
    }

    /// Exact-basis Fock representation on the same index set.
    pub fn fock(&self, params: &Params) -> Result<FockRep<T>> {
        FockRep::new(
            self.dim(),
            self.variables,
            Basis::Exact,
            self.q.clone(),
            params,
        )
    }
}

/// `M`, `qD`, `qK`, `qK^-1` and the degree operator `N`, one of each per variable.
#[derive(Debug, Clone)]
pub struct QdiffMatrices<T> {
    pub m: Vec<OperatorMatrix<T>>,
    pub dq: Vec<OperatorMatrix<T>>,
    pub kq: Vec<OperatorMatrix<T>>,
    pub kq_inv: Vec<OperatorMatrix<T>>,
    pub degree: Vec<OperatorMatrix<T>>,
}

impl<T: Field> QdiffMatrices<T> {
    fn get(v: &[OperatorMatrix<T>], var: Osc) -> &OperatorMatrix<T> {
        &v[var.index()]
    }
}

pub fn qdiff_matrices<T: Field>(rep: &PolyBasisRep<T>) -> QdiffMatrices<T> {
    let mut out = QdiffMatrices {
        m: vec![],
        dq: vec![],
        kq: vec![],
        kq_inv: vec![],
        degree: vec![],
    };
    let q = rep.q.clone();
    let q_inv = q.inv().expect("q != 0");
    for var in [Osc::One, Osc::Two].into_iter().take(rep.variables) {
        let mut raise = [0, 0];
        raise[var.index()] = 1;
        let wrap = |m: SparseMatrix<T>, excess| OperatorMatrix::new(m, excess);
        out.m
            .push(wrap(rep.matrix_of(|p| rep.multiply(p, var)), raise));
        out.dq
            .push(wrap(rep.matrix_of(|p| rep.jackson(p, var)), [0, 0]));
        out.kq
            .push(wrap(rep.matrix_of(|p| rep.dilate(p, var, &q)), [0, 0]));
        out.kq_inv
            .push(wrap(rep.matrix_of(|p| rep.dilate(p, var, &q_inv)), [0, 0]));
        let degree = (0..rep.size())
            .map(|i| T::from_i64(rep.degree_in(i, var) as i64))
            .collect();
        out.degree
            .push(wrap(SparseMatrix::from_diagonal(degree), [0, 0]));
    }
    out
}

/// The oscillator relations on the polynomial space and the entrywise
/// identification with the exact-basis Fock matrices.
pub fn check_qdiff_oscillator<T: Field>(rep: &PolyBasisRep<T>, tol: f64) -> Result<CheckReport> {
    let mats = qdiff_matrices(rep);
    let fock = rep.fock(&Params::ones())?;
    let g = AlgebraMode::Generic;
    let q = rep.q.clone();
    let neg = |x: &OperatorMatrix<T>| x.scale(&-T::one());
    let mut records = Vec::new();
    for var in [Osc::One, Osc::Two].into_iter().take(rep.variables) {
        let x = if var == Osc::One { "w" } else { "v" };
        let i = var.index() + 1;
        let m = QdiffMatrices::get(&mats.m, var);
        let d = QdiffMatrices::get(&mats.dq, var);
        let k = QdiffMatrices::get(&mats.kq, var);
        let ki = QdiffMatrices::get(&mats.kq_inv, var);
        let n = QdiffMatrices::get(&mats.degree, var);
        records.push(zero_record(
            &format!("Dq_{x}*M_{x}-q*M_{x}*Dq_{x}=Kq_{x}^-1"),
            &[d.mul(m), m.mul(d).scale(&-q.clone()), neg(ki)],
            &fock,
            tol,
            1,
        )?);
        records.push(zero_record(
            &format!("Kq_{x}*M_{x}=q*M_{x}*Kq_{x}"),
            &[k.mul(m), m.mul(k).scale(&-q.clone())],
            &fock,
            tol,
            1,
        )?);
        records.push(zero_record(
            &format!("Kq_{x}*Kq_{x}^-1=Kq_{x}^-1*Kq_{x}"),
            &[k.mul(ki), neg(&ki.mul(k))],
            &fock,
            tol,
            1,
        )?);
        let ops = crate::algebra::Ops::new(g);
        let pairs = [
            (format!("M_{x}=a{i}+"), m, ops.ap(var)),
            (format!("Dq_{x}=a{i}-"), d, ops.am(var)),
            (format!("Kq_{x}=K{i}"), k, ops.k(var, 1)),
            (format!("Kq_{x}^-1=K{i}^-1"), ki, ops.k(var, -1)),
        ];
        for (name, lhs, expr) in pairs {
            let rhs = rep_matrix(&expr, &fock)?;
            records.push(matrices_equal(&name, lhs, &rhs, &fock, tol)?);
        }
        records.push(matrices_equal(
            &format!("N_{x}=N{i}"),
            n,
            &number_matrix(&fock, var),
            &fock,
            tol,
        )?);
    }
    Ok(CheckReport::new(records))
}

/// Entrywise comparison over every column; both sides are exact
/// restrictions of operators on the full space.
fn matrices_equal<T: Field>(
    name: &str,
    x: &OperatorMatrix<T>,
    y: &OperatorMatrix<T>,
    rep: &FockRep<T>,
    tol: f64,
) -> Result<crate::report::CheckRecord> {
    let flat = |m: &OperatorMatrix<T>| OperatorMatrix::new(m.matrix.clone(), [0, 0]);
    compare_matrices(name, &flat(x), &flat(y), rep, tol)
}

/// The generators of GL_q(2) as q-difference operators on polynomials in `w, v`:
///
/// * `a = gamma Kq_w Kq_v^-1 + alpha beta delta M_w Kq_w^-1 Kq_v Dq_v`
/// * `b = alpha delta M_w Kq_w^-1 Kq_v`
/// * `c = beta delta Kq_w^-1 Kq_v Dq_v`
/// * `d = delta Kq_w^-1 Kq_v`
pub fn realize_gl2q_qdiff<T: Field>(
    rep: &PolyBasisRep<T>,
    params: &Params,
) -> Result<NumericMatrix<T>> {
    if rep.variables != 2 {
        return Err(Error::Representation(
            "the q-difference GL_q(2) realization needs two variables".into(),
        ));
    }
    let mats = qdiff_matrices(rep);
    let value = |s: crate::Symbol| -> Result<T> {
        params
            .get(s)
            .and_then(T::from_number)
            .ok_or_else(|| Error::Eval(format!("symbol {} is unassigned", s.name())))
    };
    let (alpha, beta, gamma, delta) = (
        value(crate::Symbol::Alpha)?,
        value(crate::Symbol::Beta)?,
        value(crate::Symbol::Gamma)?,
        value(crate::Symbol::Delta)?,
    );
    let (w, v) = (Osc::One.index(), Osc::Two.index());
    let kw_inv_kv = mats.kq_inv[w].mul(&mats.kq[v]);
    let d = kw_inv_kv.scale(&delta);
    let c = kw_inv_kv
        .mul(&mats.dq[v])
        .scale(&(beta.clone() * delta.clone()));
    let b = mats.m[w]
        .mul(&kw_inv_kv)
        .scale(&(alpha.clone() * delta.clone()));
    let a = mats.kq[w].mul(&mats.kq_inv[v]).scale(&gamma).add(
        &mats.m[w]
            .mul(&kw_inv_kv)
            .mul(&mats.dq[v])
            .scale(&(alpha * beta * delta)),
    );
    Ok(NumericMatrix { a, b, c, d })
}

/// GL_q(2) relations on the q-difference realization (raised to the power
/// `q_power`), plus entrywise agreement with the Fock matrices of the
/// two-oscillator Gauss realization.
pub fn check_qdiff_gl2q<T: Field>(
    rep: &PolyBasisRep<T>,
    params: &Params,
    q_power: i32,
    tol: f64,
) -> Result<CheckReport> {
    let m = realize_gl2q_qdiff(rep, params)?;
    let fock = rep.fock(params)?;
    let power = (1..q_power.max(1)).fold(m.clone(), |acc, _| acc.matmul(&m));
    let mut report = check_gl2q_numeric(&power, &fock, q_power, tol)?;
    let t = make_realization("Eq12", AlgebraMode::Generic)?
        .matrix()
        .expect("symbolic realization");
    let mut records = Vec::new();
    for ((name, lhs), (_, expr)) in m.entries().into_iter().zip(t.entries()) {
        let rhs = rep_matrix(expr, &fock)?;
        records.push(matrices_equal(
            &format!("{name} (q-difference) = {name} (Fock)"),
            lhs,
            &rhs,
            &fock,
            tol,
        )?);
    }
    report.extend(CheckReport::new(records));
    Ok(report)
}
