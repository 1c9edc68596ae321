//! Shared test helpers: a seeded random expression generator and an
//! independent Fock-space oracle that applies operators to basis states of
//! the untruncated space.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use qboson_core::{AlgebraMode, OperatorExpr, Ops, Osc, Scalar};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A random polynomial in the generators, built as a sum of products so
/// that the rewrite engine has work to do.
pub fn random_expr<R: Rng>(
    rng: &mut R,
    mode: AlgebraMode,
    oscillators: usize,
    max_len: usize,
) -> OperatorExpr {
    let o = Ops::new(mode);
    let terms = rng.gen_range(1..=3);
    let mut acc = o.zero();
    for _ in 0..terms {
        let coef = Scalar::from_int(rng.gen_range(-3..=3)) * Scalar::q_pow(rng.gen_range(-2..=2));
        let mut t = o.c(coef);
        for _ in 0..rng.gen_range(0..=max_len) {
            let osc = if oscillators == 2 && rng.gen_bool(0.5) {
                Osc::Two
            } else {
                Osc::One
            };
            let g = match rng.gen_range(0..4) {
                0 => o.ap(osc),
                1 => o.am(osc),
                2 => o.k(osc, 1),
                _ => o.k(osc, -1),
            };
            t = &t * &g;
        }
        acc = &acc + &t;
    }
    acc
}

/// Vector in the (untruncated) two-oscillator Fock space, exact basis.
pub type State = BTreeMap<[usize; 2], BigRational>;

pub fn basis(n: usize, m: usize) -> State {
    State::from([([n, m], BigRational::one())])
}

/// Applies operators by their defining action:
/// `a+|n> = |n+1>`, `a-|n> = [n]|n-1>`, `K|n> = q^n|n>`.
#[derive(Clone)]
pub struct Oracle {
    pub q: BigRational,
}

impl Oracle {
    pub fn new(q: BigRational) -> Self {
        Oracle { q }
    }

    pub fn qpow(&self, e: i64) -> BigRational {
        let base = if e < 0 {
            self.q.recip()
        } else {
            self.q.clone()
        };
        (0..e.unsigned_abs()).fold(BigRational::one(), |acc, _| acc * &base)
    }

    /// `[n] = (q^n - q^-n) / (q - q^-1)`
    pub fn qnum(&self, n: i64) -> BigRational {
        (self.qpow(n) - self.qpow(-n)) / (self.qpow(1) - self.qpow(-1))
    }

    fn map(&self, s: &State, f: impl Fn([usize; 2]) -> Option<([usize; 2], BigRational)>) -> State {
        let mut out = State::new();
        for (k, v) in s {
            if let Some((k2, c)) = f(*k) {
                let slot = out.entry(k2).or_insert_with(BigRational::zero);
                *slot += v * c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn raise(&self, s: &State, i: usize) -> State {
        self.map(s, |mut k| {
            k[i] += 1;
            Some((k, BigRational::one()))
        })
    }

    pub fn lower(&self, s: &State, i: usize) -> State {
        self.map(s, |mut k| {
            if k[i] == 0 {
                return None;
            }
            let c = self.qnum(k[i] as i64);
            k[i] -= 1;
            Some((k, c))
        })
    }

    pub fn k(&self, s: &State, i: usize, e: i64) -> State {
        self.map(s, |k| Some((k, self.qpow(e * k[i] as i64))))
    }

    /// `W^-1` with `W = q a+a- + q^-N`, which acts as `1/[n+1]`.
    pub fn w_inv(&self, s: &State, i: usize) -> State {
        self.map(s, |k| Some((k, self.qnum(k[i] as i64 + 1).recip())))
    }
}

pub fn add(a: &State, b: &State) -> State {
    let mut out = a.clone();
    for (k, v) in b {
        let slot = out.entry(*k).or_insert_with(BigRational::zero);
        *slot += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn scale_state(s: &State, c: &BigRational) -> State {
    let mut out: State = s.iter().map(|(k, v)| (*k, v * c)).collect();
    out.retain(|_, v| !v.is_zero());
    out
}
