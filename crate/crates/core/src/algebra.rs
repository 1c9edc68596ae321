//! Normal ordering for one or two mutually commuting q-oscillators.
//!
//! Each oscillator has a raising operator `a+`, a lowering operator `a-` and
//! the invertible `K = q^N`. Words are kept in the order `a+^i a-^j K^k`
//! within an oscillator, oscillator 1 before oscillator 2. The rewrite rules
//! are
//!
//! ```text
//! a- a+     -> q a+ a- + K^-1
//! K^±1 a+   -> q^±1 a+ K^±1
//! K^±1 a-   -> q^∓1 a- K^±1
//! a+ a-     -> lambda^-1 (K - K^-1)        (Fock-restricted mode only)
//! ```
//!
//! Every rule strictly lowers the number of out-of-order letter pairs, and the
//! Generic basis `a+^i a-^j K^k` is a PBW basis, so normal forms are unique and
//! an expression vanishes iff its normal form is empty.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{qnumber, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraMode {
    /// Only the defining relations of the q-oscillator.
    #[serde(rename = "generic")]
    Generic,
    /// Additionally `a+ a- = [N]`, which holds on the Fock representation.
    #[serde(rename = "fock")]
    FockRestricted,
}

impl AlgebraMode {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraMode::Generic => "generic",
            AlgebraMode::FockRestricted => "fock",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "generic" => Some(AlgebraMode::Generic),
            "fock" | "fockrestricted" | "fock-restricted" => Some(AlgebraMode::FockRestricted),
            _ => None,
        }
    }
}

impl fmt::Display for AlgebraMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which of the two oscillators an operator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Osc {
    One,
    Two,
}

impl Osc {
    pub fn index(self) -> usize {
        match self {
            Osc::One => 0,
            Osc::Two => 1,
        }
    }
}

/// One oscillator's block `a+^raise a-^lower K^k`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub raise: u32,
    pub lower: u32,
    pub k: i32,
}

impl Block {
    pub const fn new(raise: u32, lower: u32, k: i32) -> Self {
        Block { raise, lower, k }
    }

    pub fn is_identity(&self) -> bool {
        *self == Block::default()
    }

    /// Net raising surplus over any right-to-left prefix of the block.
    pub fn raising_excess(&self) -> usize {
        self.raise.saturating_sub(self.lower) as usize
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub blocks: [Block; 2],
}

impl NormalWord {
    pub fn identity() -> Self {
        NormalWord::default()
    }

    pub fn single(osc: Osc, block: Block) -> Self {
        let mut w = NormalWord::default();
        w.blocks[osc.index()] = block;
        w
    }

    pub fn block(&self, osc: Osc) -> Block {
        self.blocks[osc.index()]
    }

    pub fn is_k_monomial(&self) -> bool {
        self.blocks.iter().all(|b| b.raise == 0 && b.lower == 0)
    }

    pub fn raising_excess(&self) -> [usize; 2] {
        [
            self.blocks[0].raising_excess(),
            self.blocks[1].raising_excess(),
        ]
    }
}

fn fmt_block(b: &Block, idx: usize, parts: &mut Vec<String>) {
    let pow = |base: String, e: i64| if e == 1 { base } else { format!("{base}^{e}") };
    if b.raise > 0 {
        parts.push(pow(format!("a{idx}+"), b.raise as i64));
    }
    if b.lower > 0 {
        parts.push(pow(format!("a{idx}-"), b.lower as i64));
    }
    if b.k != 0 {
        parts.push(pow(format!("K{idx}"), b.k as i64));
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        fmt_block(&self.blocks[0], 1, &mut parts);
        fmt_block(&self.blocks[1], 2, &mut parts);
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

type BlockSum = Vec<(Block, Scalar)>;

thread_local! {
    static LOWER_RAISE: RefCell<HashMap<(u32, u32), Rc<BlockSum>>> = RefCell::new(HashMap::new());
    static FOCK_PAIR: RefCell<HashMap<(u32, u32), Rc<BlockSum>>> = RefCell::new(HashMap::new());
}

fn push_term(acc: &mut BTreeMap<Block, Scalar>, b: Block, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(b) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Normal form of `a-^l a+^r` in the Generic algebra.
///
/// Uses `a- a+^r = q^r a+^r a- + [r] a+^(r-1) K^-1` and recurses on `l`.
fn lower_raise(l: u32, r: u32) -> Rc<BlockSum> {
    if let Some(hit) = LOWER_RAISE.with(|m| m.borrow().get(&(l, r)).cloned()) {
        return hit;
    }
    let out: BlockSum = if l == 0 || r == 0 {
        vec![(Block::new(r, l, 0), Scalar::one())]
    } else {
        let mut acc = BTreeMap::new();
        let qr = Scalar::q_pow(r as i32);
        for (b, c) in lower_raise(l - 1, r).iter() {
            // (a+^i a-^j K^k) a- = q^-k a+^i a-^(j+1) K^k
            let nb = Block::new(b.raise, b.lower + 1, b.k);
            push_term(&mut acc, nb, c * &qr * Scalar::q_pow(-b.k));
        }
        let qn = qnumber(r);
        for (b, c) in lower_raise(l - 1, r - 1).iter() {
            push_term(&mut acc, Block::new(b.raise, b.lower, b.k - 1), c * &qn);
        }
        acc.into_iter().collect()
    };
    let out = Rc::new(out);
    LOWER_RAISE.with(|m| m.borrow_mut().insert((l, r), out.clone()));
    out
}

/// Fock-restricted normal form of `a+^i a-^j` (both positive), as blocks with
/// `min(raise, lower) = 0`. The `k` field of the result is an offset.
fn fock_pair(i: u32, j: u32) -> Rc<BlockSum> {
    if let Some(hit) = FOCK_PAIR.with(|m| m.borrow().get(&(i, j)).cloned()) {
        return hit;
    }
    let out: BlockSum = if i == 0 || j == 0 {
        vec![(Block::new(i, j, 0), Scalar::one())]
    } else {
        // a+^i a-^j = a+^(i-1) lambda^-1 (K - K^-1) a-^(j-1)
        //           = lambda^-1 (q^-(j-1) a+^(i-1) a-^(j-1) K - q^(j-1) a+^(i-1) a-^(j-1) K^-1)
        let li = Scalar::lambda_inv();
        let shift = (j - 1) as i32;
        let up = &li * Scalar::q_pow(-shift);
        let down = -(&li * Scalar::q_pow(shift));
        let mut acc = BTreeMap::new();
        for (b, c) in fock_pair(i - 1, j - 1).iter() {
            push_term(&mut acc, Block::new(b.raise, b.lower, b.k + 1), c * &up);
            push_term(&mut acc, Block::new(b.raise, b.lower, b.k - 1), c * &down);
        }
        acc.into_iter().collect()
    };
    let out = Rc::new(out);
    FOCK_PAIR.with(|m| m.borrow_mut().insert((i, j), out.clone()));
    out
}

fn reduce_block(mode: AlgebraMode, b: Block, c: Scalar, acc: &mut BTreeMap<Block, Scalar>) {
    if mode == AlgebraMode::FockRestricted && b.raise > 0 && b.lower > 0 {
        for (pb, pc) in fock_pair(b.raise, b.lower).iter() {
            push_term(acc, Block::new(pb.raise, pb.lower, pb.k + b.k), &c * pc);
        }
    } else {
        push_term(acc, b, c);
    }
}

/// Normal form of the product of two blocks of the same oscillator.
fn block_product(mode: AlgebraMode, x: Block, y: Block) -> BlockSum {
    // K^kx a+^ry a-^ly = q^(kx (ry - ly)) a+^ry a-^ly K^kx
    let pass = Scalar::q_pow(x.k * (y.raise as i32 - y.lower as i32));
    let mut acc = BTreeMap::new();
    for (b, c) in lower_raise(x.lower, y.raise).iter() {
        // a+^rx (a+^i a-^j K^k) a-^ly K^(kx+ky), with K^k a-^ly = q^(-k ly) a-^ly K^k
        let coeff = c * &pass * Scalar::q_pow(-b.k * y.lower as i32);
        let nb = Block::new(x.raise + b.raise, b.lower + y.lower, b.k + x.k + y.k);
        reduce_block(mode, nb, coeff, &mut acc);
    }
    acc.into_iter().collect()
}

fn word_product(mode: AlgebraMode, x: &NormalWord, y: &NormalWord) -> Vec<(NormalWord, Scalar)> {
    let first = if y.blocks[0].is_identity() {
        vec![(x.blocks[0], Scalar::one())]
    } else {
        block_product(mode, x.blocks[0], y.blocks[0])
    };
    let second = if y.blocks[1].is_identity() {
        vec![(x.blocks[1], Scalar::one())]
    } else {
        block_product(mode, x.blocks[1], y.blocks[1])
    };
    let mut out = Vec::with_capacity(first.len() * second.len());
    for (b1, c1) in &first {
        for (b2, c2) in &second {
            out.push((NormalWord { blocks: [*b1, *b2] }, c1 * c2));
        }
    }
    out
}

/// A finite `Scalar`-weighted sum of normal words in a fixed algebra mode.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperatorExpr {
    mode: AlgebraMode,
    terms: BTreeMap<NormalWord, Scalar>,
}

impl OperatorExpr {
    pub fn zero(mode: AlgebraMode) -> Self {
        OperatorExpr {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(mode: AlgebraMode) -> Self {
        OperatorExpr::scalar(mode, Scalar::one())
    }

    pub fn scalar(mode: AlgebraMode, c: Scalar) -> Self {
        OperatorExpr::from_word(mode, NormalWord::identity(), c)
    }

    /// A single word, normal-ordered in `mode` (Fock-restricted words with
    /// both `a+` and `a-` are reduced).
    pub fn from_word(mode: AlgebraMode, w: NormalWord, c: Scalar) -> Self {
        let mut out = OperatorExpr::zero(mode);
        let mut b1 = BTreeMap::new();
        reduce_block(mode, w.blocks[0], Scalar::one(), &mut b1);
        let mut b2 = BTreeMap::new();
        reduce_block(mode, w.blocks[1], Scalar::one(), &mut b2);
        for (x, cx) in &b1 {
            for (y, cy) in &b2 {
                out.push(NormalWord { blocks: [*x, *y] }, &c * cx * cy);
            }
        }
        out
    }

    pub fn raise(mode: AlgebraMode, osc: Osc) -> Self {
        OperatorExpr::from_word(
            mode,
            NormalWord::single(osc, Block::new(1, 0, 0)),
            Scalar::one(),
        )
    }

    pub fn lower(mode: AlgebraMode, osc: Osc) -> Self {
        OperatorExpr::from_word(
            mode,
            NormalWord::single(osc, Block::new(0, 1, 0)),
            Scalar::one(),
        )
    }

    /// `K^e = q^(e N)` for one oscillator.
    pub fn k_pow(mode: AlgebraMode, osc: Osc, e: i32) -> Self {
        OperatorExpr::from_word(
            mode,
            NormalWord::single(osc, Block::new(0, 0, e)),
            Scalar::one(),
        )
    }

    pub fn mode(&self) -> AlgebraMode {
        self.mode
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Identity test modulo the relations of this expression's mode.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &NormalWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Oscillators that appear with a nontrivial block.
    pub fn oscillators(&self) -> usize {
        if self.terms.keys().any(|w| !w.blocks[1].is_identity()) {
            2
        } else {
            1
        }
    }

    /// Per-oscillator maximum raising excess over all monomials.
    pub fn raising_excess(&self) -> [usize; 2] {
        self.terms.keys().fold([0, 0], |acc, w| {
            let r = w.raising_excess();
            [acc[0].max(r[0]), acc[1].max(r[1])]
        })
    }

    /// Re-expresses the operator in another mode. Generic to Fock-restricted
    /// is the quotient map; the reverse direction is only allowed when no
    /// Fock-only reduction could have happened.
    pub fn in_mode(&self, mode: AlgebraMode) -> Result<OperatorExpr> {
        if mode == self.mode {
            return Ok(self.clone());
        }
        match (self.mode, mode) {
            (AlgebraMode::Generic, AlgebraMode::FockRestricted) => {
                let mut out = OperatorExpr::zero(mode);
                for (w, c) in &self.terms {
                    out = out + OperatorExpr::from_word(mode, *w, c.clone());
                }
                Ok(out)
            }
            _ => Err(Error::ModeMismatch(self.mode.to_string(), mode.to_string())),
        }
    }

    fn push(&mut self, w: NormalWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_mode(&self, other: &OperatorExpr) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch(
                self.mode.to_string(),
                other.mode.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &OperatorExpr) -> Result<OperatorExpr> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.push(*w, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &OperatorExpr) -> Result<OperatorExpr> {
        self.check_mode(other)?;
        let mut out = OperatorExpr::zero(self.mode);
        for (wx, cx) in &self.terms {
            for (wy, cy) in &other.terms {
                let c = cx * cy;
                for (w, cw) in word_product(self.mode, wx, wy) {
                    out.push(w, &c * cw);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> OperatorExpr {
        let mut out = OperatorExpr::zero(self.mode);
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.terms {
            out.push(*w, x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> OperatorExpr {
        (0..n).fold(OperatorExpr::identity(self.mode), |acc, _| &acc * self)
    }
}

/// Normal-form product of `x` and `y` in `mode`.
pub fn multiply(x: &OperatorExpr, y: &OperatorExpr, mode: AlgebraMode) -> Result<OperatorExpr> {
    if x.mode != mode {
        return Err(Error::ModeMismatch(x.mode.to_string(), mode.to_string()));
    }
    x.try_mul(y)
}

/// Canonical `sum c_i x_i`; all parts must share a mode.
pub fn linear_combine(mode: AlgebraMode, parts: &[(Scalar, OperatorExpr)]) -> Result<OperatorExpr> {
    let mut out = OperatorExpr::zero(mode);
    for (c, x) in parts {
        out = out.try_add(&x.scale(c))?;
    }
    Ok(out)
}

/// `x y - p y x`.
pub fn q_commutator(
    x: &OperatorExpr,
    y: &OperatorExpr,
    p: &Scalar,
    mode: AlgebraMode,
) -> Result<OperatorExpr> {
    let xy = multiply(x, y, mode)?;
    let yx = multiply(y, x, mode)?;
    linear_combine(mode, &[(Scalar::one(), xy), (-p, yx)])
}

/// `[N] = lambda^-1 (K - K^-1)` for one oscillator.
pub fn qnumber_operator(mode: AlgebraMode, osc: Osc) -> OperatorExpr {
    (OperatorExpr::k_pow(mode, osc, 1) - OperatorExpr::k_pow(mode, osc, -1))
        .scale(&Scalar::lambda_inv())
}

/// The central element `zeta = K^-1 ([N] - a+ a-)` of the first oscillator.
pub fn zeta_element(mode: AlgebraMode) -> OperatorExpr {
    zeta_element_of(mode, Osc::One)
}

pub fn zeta_element_of(mode: AlgebraMode, osc: Osc) -> OperatorExpr {
    let n = qnumber_operator(mode, osc);
    let pair = &OperatorExpr::raise(mode, osc) * &OperatorExpr::lower(mode, osc);
    &OperatorExpr::k_pow(mode, osc, -1) * &(n - pair)
}

/// Inverse of `c * K1^e1 K2^e2` with `c` a single-term scalar.
pub fn invert_k_monomial(x: &OperatorExpr) -> Result<OperatorExpr> {
    let mut it = x.terms.iter();
    let (w, c) = match (it.next(), it.next()) {
        (Some(t), None) => t,
        _ => return Err(Error::NonInvertible(x.to_string())),
    };
    if !w.is_k_monomial() {
        return Err(Error::NonInvertible(x.to_string()));
    }
    let c_inv = c
        .inverse()
        .map_err(|_| Error::NonInvertible(x.to_string()))?;
    let mut inv = *w;
    for b in inv.blocks.iter_mut() {
        b.k = -b.k;
    }
    Ok(OperatorExpr::from_word(x.mode, inv, c_inv))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        /// Panics when the operands live in different algebra modes; use the
        /// `try_*` methods to get an error instead.
        impl<'a> $tr<&'a OperatorExpr> for &'a OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: &OperatorExpr) -> OperatorExpr {
                let f: fn(&OperatorExpr, &OperatorExpr) -> Result<OperatorExpr> = $body;
                f(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<OperatorExpr> for OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: OperatorExpr) -> OperatorExpr {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a OperatorExpr> for OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: &OperatorExpr) -> OperatorExpr {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<OperatorExpr> for &'a OperatorExpr {
            type Output = OperatorExpr;
            fn $m(self, rhs: OperatorExpr) -> OperatorExpr {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |x, y| x.try_add(y));
binop!(Sub, sub, |x, y| x.try_add(&-y));
binop!(Mul, mul, |x, y| x.try_mul(y));

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        OperatorExpr {
            mode: self.mode,
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        -&self
    }
}

/// Terms sorted by normal word, e.g. `(q^-1 + q)*a1+ + K1^-1`.
impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let word = w.to_string();
            match (c.is_one(), word == "1", c.len() > 1) {
                (true, _, _) => f.write_str(&word)?,
                (false, true, _) => write!(f, "({c})")?,
                (false, false, true) => write!(f, "({c})*{word}")?,
                (false, false, false) => write!(f, "{c}*{word}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorExpr[{}]({self})", self.mode)
    }
}

/// Shorthand for building expressions in one mode.
#[derive(Debug, Clone, Copy)]
pub struct Ops {
    pub mode: AlgebraMode,
}

impl Ops {
    pub fn new(mode: AlgebraMode) -> Self {
        Ops { mode }
    }

    pub fn one(&self) -> OperatorExpr {
        OperatorExpr::identity(self.mode)
    }

    pub fn zero(&self) -> OperatorExpr {
        OperatorExpr::zero(self.mode)
    }

    pub fn c(&self, s: Scalar) -> OperatorExpr {
        OperatorExpr::scalar(self.mode, s)
    }

    pub fn ap(&self, osc: Osc) -> OperatorExpr {
        OperatorExpr::raise(self.mode, osc)
    }

    pub fn am(&self, osc: Osc) -> OperatorExpr {
        OperatorExpr::lower(self.mode, osc)
    }

    pub fn k(&self, osc: Osc, e: i32) -> OperatorExpr {
        OperatorExpr::k_pow(self.mode, osc, e)
    }
}
