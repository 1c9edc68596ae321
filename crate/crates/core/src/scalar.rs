//! Exact coefficients: Laurent polynomials over the rationals.
//!
//! A [`Scalar`] is a finite sum of monomials in the deformation parameter `q`,
//! the central realization parameters `alpha .. sigma`, the central determinant
//! symbol `D`, and one auxiliary generator `lambda^-1` standing for the inverse
//! of `lambda = q - q^-1`. The auxiliary generator is what lets
//! `[N] = (K - K^-1) / lambda` live in the coefficient ring without a general
//! rational-function field.
//!
//! Canonical form: no zero coefficients, and within every group of terms that
//! share the exponents of the central parameters the `lambda^-1` power is the
//! smallest possible (the `q`-part is never divisible by `lambda` while a
//! `lambda^-1` factor remains). Equality of canonical forms is equality in
//! `Q[q^±1, lambda^-1, alpha^±1, ..., D^±1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Q,
    Alpha,
    Beta,
    Gamma,
    Delta,
    Mu,
    Nu,
    Sigma,
    /// Central determinant symbol used by the one-boson realization with a
    /// free determinant.
    Det,
    /// `1 / (q - q^-1)`; its exponent is never negative.
    LambdaInv,
}

pub const SYMBOL_COUNT: usize = 10;
const Q: usize = 0;
const LAMBDA_INV: usize = 9;

impl Symbol {
    pub const ALL: [Symbol; SYMBOL_COUNT] = [
        Symbol::Q,
        Symbol::Alpha,
        Symbol::Beta,
        Symbol::Gamma,
        Symbol::Delta,
        Symbol::Mu,
        Symbol::Nu,
        Symbol::Sigma,
        Symbol::Det,
        Symbol::LambdaInv,
    ];

    /// The central realization parameters (everything a user may assign).
    pub const PARAMETERS: [Symbol; 8] = [
        Symbol::Alpha,
        Symbol::Beta,
        Symbol::Gamma,
        Symbol::Delta,
        Symbol::Mu,
        Symbol::Nu,
        Symbol::Sigma,
        Symbol::Det,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Q => "q",
            Symbol::Alpha => "alpha",
            Symbol::Beta => "beta",
            Symbol::Gamma => "gamma",
            Symbol::Delta => "delta",
            Symbol::Mu => "mu",
            Symbol::Nu => "nu",
            Symbol::Sigma => "sigma",
            Symbol::Det => "D",
            Symbol::LambdaInv => "lambda",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL
            .into_iter()
            .find(|s| s.name() == name && *s != Symbol::LambdaInv)
    }
}

impl serde::Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

pub type Exponents = [i32; SYMBOL_COUNT];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Exponents, BigRational>,
}

/// Laurent polynomial in `q` alone, used while canonicalizing `lambda^-1` groups.
type QPoly = BTreeMap<i32, BigRational>;

fn qpoly_times_lambda(p: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (e, c) in p {
        *out.entry(e + 1).or_insert_with(BigRational::zero) += c;
        *out.entry(e - 1).or_insert_with(BigRational::zero) -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Exact division by `q - q^-1`, or `None` if it does not divide.
fn qpoly_div_lambda(p: &QPoly) -> Option<QPoly> {
    let (&lo, _) = p.first_key_value()?;
    let (&hi, _) = p.last_key_value()?;
    let deg = (hi - lo) as usize;
    // p = q^lo * r(q), divide r by q^2 - 1
    let mut r: Vec<BigRational> = (0..=deg)
        .map(|i| {
            p.get(&(lo + i as i32))
                .cloned()
                .unwrap_or_else(BigRational::zero)
        })
        .collect();
    if deg < 2 {
        return None;
    }
    let mut quot = vec![BigRational::zero(); deg - 1];
    for d in (2..=deg).rev() {
        let c = std::mem::replace(&mut r[d], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        r[d - 2] += &c;
        quot[d - 2] = c;
    }
    if !r[0].is_zero() || !r[1].is_zero() {
        return None;
    }
    // (q - q^-1) = q^-1 (q^2 - 1), so p / lambda = q^(lo+1) * quot
    let mut out = QPoly::new();
    for (i, c) in quot.into_iter().enumerate() {
        if !c.is_zero() {
            out.insert(lo + 1 + i as i32, c);
        }
    }
    Some(out)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::monomial(c, [0; SYMBOL_COUNT])
    }

    /// `c * prod symbol^exp`. Negative `lambda^-1` exponents are expanded as
    /// powers of `q - q^-1`.
    pub fn monomial(c: BigRational, exps: Exponents) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        if exps[LAMBDA_INV] < 0 {
            let mut base = exps;
            base[LAMBDA_INV] = 0;
            return Scalar::monomial(c, base) * Scalar::lambda().pow_unchecked(-exps[LAMBDA_INV]);
        }
        let mut terms = BTreeMap::new();
        terms.insert(exps, c);
        Scalar { terms }.canonical()
    }

    pub fn symbol(s: Symbol) -> Self {
        Scalar::symbol_pow(s, 1)
    }

    pub fn symbol_pow(s: Symbol, e: i32) -> Self {
        let mut exps = [0; SYMBOL_COUNT];
        exps[s.index()] = e;
        Scalar::monomial(BigRational::one(), exps)
    }

    pub fn q() -> Self {
        Scalar::symbol(Symbol::Q)
    }

    pub fn q_pow(e: i32) -> Self {
        Scalar::symbol_pow(Symbol::Q, e)
    }

    /// `lambda = q - q^-1`.
    pub fn lambda() -> Self {
        Scalar::q_pow(1) - Scalar::q_pow(-1)
    }

    /// `q^n - q^-n`, the deformation constant with `q` replaced by `q^n`.
    pub fn lambda_at(n: i32) -> Self {
        Scalar::q_pow(n) - Scalar::q_pow(-n)
    }

    pub fn lambda_inv() -> Self {
        Scalar::symbol(Symbol::LambdaInv)
    }

    /// Builds from arbitrary terms, summing duplicates and canonicalizing.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Self {
        terms
            .into_iter()
            .map(|(e, c)| Scalar::monomial(c, e))
            .fold(Scalar::zero(), |acc, t| acc + t)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// The constant rational if the scalar has no symbol content.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|s| self.terms.keys().any(|e| e[s.index()] != 0))
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a single-term scalar. A `lambda^-k` factor inverts to the
    /// polynomial `(q - q^-1)^k`.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.terms.len() != 1 {
            return Err(Error::Invertibility(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        let mut inv = *e;
        for x in inv.iter_mut() {
            *x = -*x;
        }
        Ok(Scalar::monomial(c.recip(), inv))
    }

    pub fn pow(&self, n: i32) -> Result<Scalar> {
        if n < 0 {
            Ok(self.inverse()?.pow_unchecked(-n))
        } else {
            Ok(self.pow_unchecked(n))
        }
    }

    fn pow_unchecked(&self, n: i32) -> Scalar {
        debug_assert!(n >= 0);
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Evaluates under a symbol assignment; `lambda^-1` is derived from `q`.
    pub fn eval<T: Field>(&self, assignment: &dyn Fn(Symbol) -> Option<T>) -> Result<T> {
        let mut values: [Option<T>; SYMBOL_COUNT] = Default::default();
        let mut acc = T::zero();
        for (exps, c) in &self.terms {
            let mut term = T::from_rational(c);
            for s in Symbol::ALL {
                let e = exps[s.index()];
                if e == 0 {
                    continue;
                }
                if values[s.index()].is_none() {
                    let v = if s == Symbol::LambdaInv {
                        let q = assignment(Symbol::Q)
                            .ok_or_else(|| Error::Eval("symbol q is unassigned".into()))?;
                        let lam = q.clone() - q.inv().ok_or_else(|| Error::Eval("q = 0".into()))?;
                        lam.inv().ok_or_else(|| {
                            Error::Eval("lambda^-1 evaluated where q - q^-1 = 0".into())
                        })?
                    } else {
                        assignment(s).ok_or_else(|| {
                            Error::Eval(format!("symbol {} is unassigned", s.name()))
                        })?
                    };
                    values[s.index()] = Some(v);
                }
                let v = values[s.index()].as_ref().expect("filled above");
                let p = v.powi(e as i64).ok_or_else(|| {
                    Error::Eval(format!("symbol {} is zero but has exponent {e}", s.name()))
                })?;
                term = term * p;
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    fn canonical(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.keys().all(|e| e[LAMBDA_INV] == 0) {
            return self;
        }
        // group by everything except q and lambda^-1
        let mut groups: BTreeMap<Exponents, BTreeMap<i32, QPoly>> = BTreeMap::new();
        for (e, c) in std::mem::take(&mut self.terms) {
            let mut key = e;
            key[Q] = 0;
            key[LAMBDA_INV] = 0;
            groups
                .entry(key)
                .or_default()
                .entry(e[LAMBDA_INV])
                .or_default()
                .insert(e[Q], c);
        }
        for (key, by_power) in groups {
            let top = *by_power.keys().next_back().expect("nonempty group");
            let mut poly = QPoly::new();
            for (k, p) in by_power {
                let mut p = p;
                for _ in k..top {
                    p = qpoly_times_lambda(&p);
                }
                for (e, c) in p {
                    *poly.entry(e).or_insert_with(BigRational::zero) += c;
                }
            }
            poly.retain(|_, c| !c.is_zero());
            let mut power = top;
            while power > 0 {
                match qpoly_div_lambda(&poly) {
                    Some(p) => {
                        poly = p;
                        power -= 1;
                    }
                    None => break,
                }
            }
            for (qe, c) in poly {
                let mut e = key;
                e[Q] = qe;
                e[LAMBDA_INV] = power;
                self.terms.insert(e, c);
            }
        }
        self
    }

    fn add_terms(&mut self, other: &Scalar, negate: bool) {
        let touches_lambda = other.terms.keys().any(|e| e[LAMBDA_INV] != 0)
            || self.terms.keys().any(|e| e[LAMBDA_INV] != 0);
        for (e, c) in &other.terms {
            let slot = self.terms.entry(*e).or_insert_with(BigRational::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        if touches_lambda {
            *self = std::mem::take(self).canonical();
        } else {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }
}

/// `[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn qnumber(n: u32) -> Scalar {
    let n = n as i32;
    Scalar::from_terms((0..n).map(|k| {
        let mut e = [0; SYMBOL_COUNT];
        e[Q] = n - 1 - 2 * k;
        (e, BigRational::one())
    }))
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn qfactorial(n: u32) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * qnumber(k))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out.add_terms(rhs, false);
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out.add_terms(rhs, true);
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut terms: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        let mut lambda = false;
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..SYMBOL_COUNT {
                    e[i] += e2[i];
                }
                lambda |= e[LAMBDA_INV] != 0;
                *terms.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        let out = Scalar { terms };
        if lambda {
            out.canonical()
        } else {
            let mut out = out;
            out.terms.retain(|_, c| !c.is_zero());
            out
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.add_terms(rhs, false);
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn fmt_monomial(e: &Exponents, f: &mut fmt::Formatter<'_>, mut first: bool) -> fmt::Result {
    for s in Symbol::ALL {
        let x = e[s.index()];
        if x == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        // lambda^-1 is stored with a positive exponent
        let x = if s == Symbol::LambdaInv { -x } else { x };
        if x == 1 {
            write!(f, "{}", s.name())?;
        } else {
            write!(f, "{}^{}", s.name(), x)?;
        }
    }
    Ok(())
}

/// Sorted sum of monomials, lexicographic on exponent vectors (`q` first):
/// `q^-1 + 1 + q`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let bare = e.iter().all(|&x| x == 0);
            if bare {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                fmt_monomial(e, f, true)?;
            } else {
                write!(f, "{abs}")?;
                fmt_monomial(e, f, false)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn at_q(x: &Scalar, q: BigRational) -> Result<BigRational> {
        x.eval(&|s| (s == Symbol::Q).then(|| q.clone()))
    }

    #[test]
    fn q_times_q_inverse_is_one() {
        assert!((Scalar::q() * Scalar::q_pow(-1)).is_one());
    }

    #[test]
    fn lambda_renders_sorted() {
        assert_eq!(Scalar::lambda().to_string(), "-q^-1 + q");
        assert_eq!(
            (Scalar::q_pow(-1) + Scalar::one() + Scalar::q()).to_string(),
            "q^-1 + 1 + q"
        );
    }

    #[test]
    fn conjugate_product() {
        let p = (Scalar::q() + Scalar::q_pow(-1)) * (Scalar::q() - Scalar::q_pow(-1));
        assert_eq!(p, Scalar::q_pow(2) - Scalar::q_pow(-2));
    }

    #[test]
    fn qnumbers() {
        assert!(qnumber(0).is_zero());
        assert!(qnumber(1).is_one());
        assert_eq!(
            qnumber(3),
            Scalar::q_pow(2) + Scalar::one() + Scalar::q_pow(-2)
        );
        // (q^3 - q^-3) / (q - q^-1)
        assert_eq!(
            qnumber(3),
            (Scalar::q_pow(3) - Scalar::q_pow(-3)) * Scalar::lambda_inv()
        );
    }

    #[test]
    fn qfactorials() {
        assert!(qfactorial(0).is_one());
        assert_eq!(qfactorial(2), Scalar::q() + Scalar::q_pow(-1));
        assert_eq!(
            qfactorial(3),
            (Scalar::q() + Scalar::q_pow(-1))
                * (Scalar::q_pow(2) + Scalar::one() + Scalar::q_pow(-2))
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(at_q(&qnumber(2), rat(2, 1)).unwrap(), rat(5, 2));
        for n in 0..10 {
            assert_eq!(at_q(&qnumber(n), rat(1, 1)).unwrap(), rat(n as i64, 1));
        }
        assert_eq!(at_q(&Scalar::lambda(), rat(1, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn eval_errors() {
        let x = Scalar::symbol(Symbol::Alpha);
        assert!(matches!(at_q(&x, rat(2, 1)), Err(Error::Eval(_))));
        let y = Scalar::symbol_pow(Symbol::Q, -1);
        assert!(matches!(at_q(&y, rat(0, 1)), Err(Error::Eval(_))));
        assert!(matches!(
            at_q(&Scalar::lambda_inv(), rat(1, 1)),
            Err(Error::Eval(_))
        ));
    }

    #[test]
    fn lambda_inverse_reduces() {
        let x = Scalar::lambda_inv() * Scalar::lambda();
        assert!(x.is_one());
        // (q^2 - q^-2) / lambda = q + q^-1
        let y = (Scalar::q_pow(2) - Scalar::q_pow(-2)) * Scalar::lambda_inv();
        assert_eq!(y, Scalar::q() + Scalar::q_pow(-1));
        // q / lambda does not reduce
        let z = Scalar::q() * Scalar::lambda_inv();
        assert_eq!(z.len(), 1);
        assert_eq!(z.to_string(), "q*lambda^-1");
        // parameters are kept apart from the lambda reduction
        let w = Scalar::symbol(Symbol::Mu) * Scalar::lambda() * Scalar::lambda_inv()
            + Scalar::symbol(Symbol::Nu);
        assert_eq!(w, Scalar::symbol(Symbol::Mu) + Scalar::symbol(Symbol::Nu));
    }

    #[test]
    fn negative_power_needs_monomial() {
        let two_terms = Scalar::q() + Scalar::one();
        assert!(matches!(two_terms.pow(-1), Err(Error::Invertibility(_))));
        let m = Scalar::from_int(2) * Scalar::symbol(Symbol::Delta);
        let inv = m.pow(-1).unwrap();
        assert!((inv * m).is_one());
        // inverse of lambda^-1 is lambda
        assert_eq!(Scalar::lambda_inv().inverse().unwrap(), Scalar::lambda());
    }

    #[test]
    fn pascal_identities() {
        for n in 0..20u32 {
            let lhs = qnumber(n + 1);
            let ni = n as i32;
            assert_eq!(lhs, Scalar::q() * qnumber(n) + Scalar::q_pow(-ni));
            assert_eq!(lhs, Scalar::q_pow(-1) * qnumber(n) + Scalar::q_pow(ni));
        }
    }

    #[test]
    fn qnumber_symmetric_under_q_inversion() {
        for n in 0..15 {
            let x = qnumber(n);
            let flipped = Scalar::from_terms(x.terms().map(|(e, c)| {
                let mut e = *e;
                e[0] = -e[0];
                (e, c.clone())
            }));
            assert_eq!(flipped, x);
        }
    }

    #[test]
    fn display_coefficients() {
        let x = Scalar::from_ratio(-3, 2) * Scalar::symbol(Symbol::Gamma) + Scalar::from_int(2);
        assert_eq!(x.to_string(), "2 - 3/2*gamma");
    }
}
