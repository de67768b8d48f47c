//! Noncommutative (super)polynomials over [`Scalar`] with Cartan
//! generators normalized to the left.
//!
//! Words are `k^c * g_1 ... g_n` with the invertible Cartan part stored as
//! a commuting exponent vector.  Multiplication performs the `k e k^-1 =
//! q^(mu, wt e) e` crossing as structural normalization, so conjugation
//! relations never enter the rewrite systems.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::{Rat, Scalar};
use crate::weights::{RootDatum, Weight};

#[derive(Debug, Error, PartialEq)]
pub enum AlgError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("argument is not weight- and parity-homogeneous")]
    InhomogeneousArgument,
    #[error("missing image for generator {0}")]
    MissingImage(String),
    #[error("tensor rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("scalar error: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
}

/// Invertible (group-like) Cartan generator `k_mu`.
#[derive(Debug, Clone)]
pub struct CartanGen {
    pub name: String,
    pub weight: Weight,
}

/// Non-Cartan generator; index order doubles as rewrite precedence.
#[derive(Debug, Clone)]
pub struct GenInfo {
    pub name: String,
    pub weight: Weight,
    pub parity: bool,
    /// Weight of this letter in the monomial order.
    pub order_weight: u32,
}

/// Generator tables shared by every element of one presentation.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub datum: RootDatum,
    pub cartan: Vec<CartanGen>,
    pub tail: Vec<GenInfo>,
    /// Declared symbolic parameters; anything else is rejected at parse time.
    pub params: Vec<String>,
}

pub type CartanVec = SmallVec<[i32; 4]>;
pub type TailVec = SmallVec<[u16; 8]>;

/// Word in Cartan-left normal form.  `Ord` is the monomial order:
/// weighted tail degree, then tail length, then lex on precedence
/// indices, then the Cartan exponent vector.  Grading by both weight and
/// length makes the order monotone under two-sided multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    wdeg: u32,
    pub tail: TailVec,
    pub cartan: CartanVec,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.wdeg
            .cmp(&other.wdeg)
            .then_with(|| self.tail.len().cmp(&other.tail.len()))
            .then_with(|| self.tail.cmp(&other.tail))
            .then_with(|| self.cartan.cmp(&other.cartan))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Algebra {
    pub fn cartan_index(&self, name: &str) -> Option<usize> {
        self.cartan.iter().position(|g| g.name == name)
    }

    pub fn tail_index(&self, name: &str) -> Option<usize> {
        self.tail.iter().position(|g| g.name == name)
    }

    pub fn one_word(&self) -> Word {
        Word {
            wdeg: 0,
            tail: TailVec::new(),
            cartan: smallvec::smallvec![0; self.cartan.len()],
        }
    }

    pub fn word(&self, cartan: CartanVec, tail: TailVec) -> Word {
        debug_assert_eq!(cartan.len(), self.cartan.len());
        let wdeg = tail.iter().map(|g| self.tail[*g as usize].order_weight).sum();
        Word { wdeg, tail, cartan }
    }

    pub fn word_from_tail(&self, tail: &[u16]) -> Word {
        self.word(
            smallvec::smallvec![0; self.cartan.len()],
            tail.iter().copied().collect(),
        )
    }

    /// Combined weight of the Cartan exponent vector.
    pub fn cartan_weight(&self, cartan: &[i32]) -> Weight {
        let mut w = Weight::zero(self.datum.rank);
        for (i, e) in cartan.iter().enumerate() {
            if *e != 0 {
                w = w.add(&self.cartan[i].weight.scale(&crate::scalar::rint(*e as i64)));
            }
        }
        w
    }

    pub fn tail_weight(&self, tail: &[u16]) -> Weight {
        let mut w = Weight::zero(self.datum.rank);
        for g in tail {
            w = w.add(&self.tail[*g as usize].weight);
        }
        w
    }

    pub fn word_parity(&self, word: &Word) -> bool {
        word.tail
            .iter()
            .fold(false, |p, g| p ^ self.tail[*g as usize].parity)
    }

    pub fn word_weight(&self, word: &Word) -> Weight {
        self.tail_weight(&word.tail)
    }
}

impl Word {
    pub fn wdeg(&self) -> u32 {
        self.wdeg
    }

    pub fn tail_len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_one(&self) -> bool {
        self.tail.is_empty() && self.cartan.iter().all(|e| *e == 0)
    }
}

/// Noncommutative polynomial: finite map from words to scalars.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NcPoly {
    pub terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn one(alg: &Algebra) -> NcPoly {
        NcPoly::monomial(alg.one_word(), Scalar::one())
    }

    pub fn monomial(word: Word, coeff: Scalar) -> NcPoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NcPoly { terms }
    }

    pub fn gen(alg: &Algebra, idx: usize) -> NcPoly {
        NcPoly::monomial(alg.word_from_tail(&[idx as u16]), Scalar::one())
    }

    pub fn cartan_monomial(alg: &Algebra, exps: &[i32]) -> NcPoly {
        NcPoly::monomial(
            alg.word(exps.iter().copied().collect(), TailVec::new()),
            Scalar::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_add(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        let mut out = NcPoly::zero();
        for (w, k) in &self.terms {
            out.insert_add(w.clone(), k.mul(c));
        }
        out
    }

    /// Product of two words, with the Cartan crossing factor.
    pub fn word_mul(alg: &Algebra, w1: &Word, w2: &Word) -> (Word, Scalar) {
        let mut cartan = w1.cartan.clone();
        for (i, e) in w2.cartan.iter().enumerate() {
            cartan[i] += e;
        }
        let mut tail = w1.tail.clone();
        tail.extend_from_slice(&w2.tail);
        let word = alg.word(cartan, tail);
        // move k^{c2} left through the tail of w1
        let factor = if w2.cartan.iter().all(|e| *e == 0) || w1.tail.is_empty() {
            Scalar::one()
        } else {
            let mu = alg.cartan_weight(&w2.cartan);
            let t = alg.tail_weight(&w1.tail);
            let p = alg.datum.pairing(&mu, &t).expect("rank-consistent");
            Scalar::q_power(&-p).expect("weights on lattice")
        };
        (word, factor)
    }

    pub fn mul(&self, other: &NcPoly, alg: &Algebra) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let (w, f) = NcPoly::word_mul(alg, w1, w2);
                out.insert_add(w, c1.mul(c2).mul(&f));
            }
        }
        out
    }

    /// Weight and parity if homogeneous.
    pub fn homogeneous_data(&self, alg: &Algebra) -> Option<(Weight, bool)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let w = alg.word_weight(first);
        let p = alg.word_parity(first);
        for word in it {
            if alg.word_weight(word) != w || alg.word_parity(word) != p {
                return None;
            }
        }
        Some((w, p))
    }

    /// q-supercommutator `x y - (-1)^(p(x)p(y)) q^((wt x, wt y)) y x`.
    pub fn q_commutator(&self, other: &NcPoly, alg: &Algebra) -> Result<NcPoly, AlgError> {
        if self.is_zero() || other.is_zero() {
            return Ok(NcPoly::zero());
        }
        let (wx, px) = self
            .homogeneous_data(alg)
            .ok_or(AlgError::InhomogeneousArgument)?;
        let (wy, py) = other
            .homogeneous_data(alg)
            .ok_or(AlgError::InhomogeneousArgument)?;
        let pair = alg.datum.pairing(&wx, &wy).expect("rank-consistent");
        let mut factor = Scalar::q_power(&pair)?;
        if px && py {
            factor = factor.neg();
        }
        Ok(self
            .mul(other, alg)
            .sub(&other.mul(self, alg).scale(&factor)))
    }

    /// Plain (super)commutator `x y - (-1)^(p(x)p(y)) y x`.
    pub fn commutator(&self, other: &NcPoly, alg: &Algebra) -> Result<NcPoly, AlgError> {
        if self.is_zero() || other.is_zero() {
            return Ok(NcPoly::zero());
        }
        let (_, px) = self
            .homogeneous_data(alg)
            .ok_or(AlgError::InhomogeneousArgument)?;
        let (_, py) = other
            .homogeneous_data(alg)
            .ok_or(AlgError::InhomogeneousArgument)?;
        let mut factor = Scalar::one();
        if px && py {
            factor = factor.neg();
        }
        Ok(self
            .mul(other, alg)
            .sub(&other.mul(self, alg).scale(&factor)))
    }

    /// Anticommutator `x y + y x`.
    pub fn anticommutator(&self, other: &NcPoly, alg: &Algebra) -> NcPoly {
        self.mul(other, alg).add(&other.mul(self, alg))
    }

    /// n-fold left-nested q-commutator `(ad_q x)^n y`.
    pub fn ad_q_power(&self, n: u32, y: &NcPoly, alg: &Algebra) -> Result<NcPoly, AlgError> {
        let mut acc = y.clone();
        for _ in 0..n {
            acc = self.q_commutator(&acc, alg)?;
        }
        Ok(acc)
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_wdeg(&self) -> u32 {
        self.terms.keys().map(|w| w.wdeg).max().unwrap_or(0)
    }

    pub fn max_tail_len(&self) -> usize {
        self.terms.keys().map(|w| w.tail.len()).max().unwrap_or(0)
    }

    /// Map every coefficient through `f`, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.insert_add(w.clone(), f(c));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Homomorphic / antihomomorphic extension
// ---------------------------------------------------------------------------

/// Target of a multiplicative extension: the algebra itself, a tensor
/// power, or the scalars (for the counit).
pub trait HomTarget: Clone {
    fn one(alg: &Algebra) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self, alg: &Algebra) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    /// Image of the group-like Cartan monomial `k^c`.
    fn cartan_image(alg: &Algebra, exps: &CartanVec) -> Self;
}

impl HomTarget for NcPoly {
    fn one(alg: &Algebra) -> Self {
        NcPoly::one(alg)
    }
    fn add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul(&self, other: &Self, alg: &Algebra) -> Self {
        self.mul(other, alg)
    }
    fn scale(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn cartan_image(alg: &Algebra, exps: &CartanVec) -> Self {
        NcPoly::monomial(alg.word(exps.clone(), TailVec::new()), Scalar::one())
    }
}

impl HomTarget for Scalar {
    fn one(_alg: &Algebra) -> Self {
        Scalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul(&self, other: &Self, _alg: &Algebra) -> Self {
        self.mul(other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        self.mul(c)
    }
    fn cartan_image(_alg: &Algebra, _exps: &CartanVec) -> Self {
        Scalar::one()
    }
}

/// Multiplicative extension of a generator map.  Cartan monomials map
/// through [`HomTarget::cartan_image`] (group-like images are structural).
pub fn apply_hom<T: HomTarget>(
    alg: &Algebra,
    images: &[T],
    p: &NcPoly,
) -> Result<T, AlgError> {
    let mut out: Option<T> = None;
    for (word, coeff) in &p.terms {
        let mut acc = T::cartan_image(alg, &word.cartan);
        for g in &word.tail {
            let img = images
                .get(*g as usize)
                .ok_or_else(|| AlgError::MissingImage(alg.tail[*g as usize].name.clone()))?;
            acc = acc.mul(img, alg);
        }
        let acc = acc.scale(coeff);
        out = Some(match out {
            None => acc,
            Some(o) => o.add(&acc),
        });
    }
    Ok(out.unwrap_or_else(|| T::one(alg).scale(&Scalar::zero())))
}

/// Graded antihomomorphic extension: words are reversed with the Koszul
/// sign `(-1)^(sum_{i<j} p_i p_j)` before applying the images.
pub fn apply_antihom(alg: &Algebra, images: &[NcPoly], p: &NcPoly) -> Result<NcPoly, AlgError> {
    let mut out = NcPoly::zero();
    for (word, coeff) in &p.terms {
        // Koszul sign of the full reversal.
        let mut odd_seen = 0u32;
        let mut sign_flips = 0u32;
        for g in &word.tail {
            if alg.tail[*g as usize].parity {
                sign_flips += odd_seen;
                odd_seen += 1;
            }
        }
        let mut acc = NcPoly::one(alg);
        for g in word.tail.iter().rev() {
            let img = images
                .get(*g as usize)
                .ok_or_else(|| AlgError::MissingImage(alg.tail[*g as usize].name.clone()))?;
            acc = acc.mul(img, alg);
        }
        // S(k^c) = k^{-c}, multiplied on the right.
        let inv: CartanVec = word.cartan.iter().map(|e| -e).collect();
        acc = acc.mul(
            &NcPoly::monomial(alg.word(inv, TailVec::new()), Scalar::one()),
            alg,
        );
        let mut c = coeff.clone();
        if sign_flips % 2 == 1 {
            c = c.neg();
        }
        for (w, k) in acc.terms {
            out.insert_add(w, k.mul(&c));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tensor powers with Koszul signs
// ---------------------------------------------------------------------------

pub type WordTuple = SmallVec<[Word; 3]>;

/// Element of the tensor square or cube of the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorPoly {
    pub rank: usize,
    pub terms: BTreeMap<WordTuple, Scalar>,
}

impl TensorPoly {
    pub fn zero(rank: usize) -> TensorPoly {
        TensorPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Algebra, rank: usize) -> TensorPoly {
        let tuple: WordTuple = (0..rank).map(|_| alg.one_word()).collect();
        TensorPoly::monomial(rank, tuple, Scalar::one())
    }

    pub fn monomial(rank: usize, tuple: WordTuple, coeff: Scalar) -> TensorPoly {
        let mut t = TensorPoly::zero(rank);
        t.insert_add(tuple, coeff);
        t
    }

    /// Pure tensor of polynomials (no sign: this is a single tensor, not a
    /// product of tensors).
    pub fn tensor(rank: usize, factors: &[&NcPoly]) -> TensorPoly {
        assert_eq!(factors.len(), rank);
        let mut out = TensorPoly::zero(rank);
        let mut stack: Vec<(WordTuple, Scalar)> = vec![(WordTuple::new(), Scalar::one())];
        for f in factors {
            let mut next = Vec::new();
            for (tuple, coeff) in &stack {
                for (w, c) in &f.terms {
                    let mut t = tuple.clone();
                    t.push(w.clone());
                    next.push((t, coeff.mul(c)));
                }
            }
            stack = next;
        }
        for (t, c) in stack {
            out.insert_add(t, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_add(&mut self, tuple: WordTuple, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(tuple) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.insert_add(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorPoly {
        TensorPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly {
        if c.is_zero() {
            return TensorPoly::zero(self.rank);
        }
        let mut out = TensorPoly::zero(self.rank);
        for (t, k) in &self.terms {
            out.insert_add(t.clone(), k.mul(c));
        }
        out
    }

    /// Graded tensor-product multiplication with the Koszul sign rule.
    pub fn mul(&self, other: &TensorPoly, alg: &Algebra) -> Result<TensorPoly, AlgError> {
        if self.rank != other.rank {
            return Err(AlgError::RankMismatch(self.rank, other.rank));
        }
        let mut out = TensorPoly::zero(self.rank);
        for (t1, c1) in &self.terms {
            let par1: SmallVec<[bool; 3]> = t1.iter().map(|w| alg.word_parity(w)).collect();
            for (t2, c2) in &other.terms {
                let mut sign = false;
                let mut tuple = WordTuple::new();
                let mut factor = Scalar::one();
                for i in 0..self.rank {
                    // left factor i crosses right factors 0..i
                    if par1[i] {
                        for w2 in t2.iter().take(i) {
                            if alg.word_parity(w2) {
                                sign = !sign;
                            }
                        }
                    }
                    let (w, f) = NcPoly::word_mul(alg, &t1[i], &t2[i]);
                    factor = factor.mul(&f);
                    tuple.push(w);
                }
                let mut c = c1.mul(c2).mul(&factor);
                if sign {
                    c = c.neg();
                }
                out.insert_add(tuple, c);
            }
        }
        Ok(out)
    }
}

impl HomTarget for TensorPoly {
    fn one(alg: &Algebra) -> Self {
        TensorPoly::one(alg, 2)
    }
    fn add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul(&self, other: &Self, alg: &Algebra) -> Self {
        TensorPoly::mul(self, other, alg).expect("equal rank")
    }
    fn scale(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn cartan_image(alg: &Algebra, exps: &CartanVec) -> Self {
        // group-like: k^c tensor k^c
        let w = alg.word(exps.clone(), TailVec::new());
        TensorPoly::monomial(2, smallvec::smallvec![w.clone(), w], Scalar::one())
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

pub struct WordDisplay<'a> {
    pub alg: &'a Algebra,
    pub word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.word.cartan.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.alg.cartan[i].name)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        let mut run: Option<(u16, u32)> = None;
        let flush = |f: &mut fmt::Formatter<'_>, run: &mut Option<(u16, u32)>, first: &mut bool| -> fmt::Result {
            if let Some((g, n)) = run.take() {
                if !*first {
                    write!(f, "*")?;
                }
                *first = false;
                write!(f, "{}", self.alg.tail[g as usize].name)?;
                if n > 1 {
                    write!(f, "^{}", n)?;
                }
            }
            Ok(())
        };
        for g in &self.word.tail {
            match run {
                Some((prev, n)) if prev == *g => run = Some((prev, n + 1)),
                Some(_) => {
                    flush(f, &mut run, &mut first)?;
                    run = Some((*g, 1));
                }
                None => run = Some((*g, 1)),
            }
        }
        flush(f, &mut run, &mut first)?;
        Ok(())
    }
}

pub struct NcPolyDisplay<'a> {
    pub alg: &'a Algebra,
    pub poly: &'a NcPoly,
}

impl fmt::Display for NcPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.poly.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_coeff_word(f, self.alg, c, &[w.clone()])?;
        }
        Ok(())
    }
}

pub struct TensorDisplay<'a> {
    pub alg: &'a Algebra,
    pub poly: &'a TensorPoly,
}

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.poly.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_coeff_word(f, self.alg, c, t)?;
        }
        Ok(())
    }
}

fn write_coeff_word(
    f: &mut fmt::Formatter<'_>,
    alg: &Algebra,
    c: &Scalar,
    words: &[Word],
) -> fmt::Result {
    let coeff = c.to_string();
    let trivial = coeff == "1";
    if !trivial {
        if coeff.contains(' ') && !coeff.starts_with('(') {
            write!(f, "({})", coeff)?;
        } else {
            write!(f, "{}", coeff)?;
        }
    }
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            write!(f, " (x) ")?;
        } else if !trivial {
            write!(f, "*")?;
        }
        write!(f, "{}", WordDisplay { alg, word: w })?;
    }
    Ok(())
}

pub fn rint(n: i64) -> Rat {
    crate::scalar::rint(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, Scalar};
    use crate::weights::BaseAlgebra;

    /// U_q(sl2)-shaped test algebra: tail gens f (index 0), e (index 1).
    fn uq_sl2() -> Algebra {
        let datum = RootDatum::for_base(BaseAlgebra::Sl2);
        Algebra {
            cartan: vec![CartanGen {
                name: "k[a]".into(),
                weight: Weight::simple(1, 0),
            }],
            tail: vec![
                GenInfo {
                    name: "e[-a]".into(),
                    weight: Weight::simple(1, 0).neg(),
                    parity: false,
                    order_weight: 1,
                },
                GenInfo {
                    name: "e[a]".into(),
                    weight: Weight::simple(1, 0),
                    parity: false,
                    order_weight: 1,
                },
            ],
            params: vec![],
            datum,
        }
    }

    fn uq_osp() -> Algebra {
        let datum = RootDatum::for_base(BaseAlgebra::Osp12);
        Algebra {
            cartan: vec![CartanGen {
                name: "k[a]".into(),
                weight: Weight::simple(1, 0),
            }],
            tail: vec![
                GenInfo {
                    name: "e[-a]".into(),
                    weight: Weight::simple(1, 0).neg(),
                    parity: true,
                    order_weight: 1,
                },
                GenInfo {
                    name: "e[a]".into(),
                    weight: Weight::simple(1, 0),
                    parity: true,
                    order_weight: 1,
                },
            ],
            params: vec![],
            datum,
        }
    }

    #[test]
    fn multiply_cartan_crossing() {
        let alg = uq_sl2();
        let e = NcPoly::gen(&alg, 1);
        let k = NcPoly::cartan_monomial(&alg, &[1]);
        // e * k = q^{-(a,a)} k e with (a,a) = 2
        let prod = e.mul(&k, &alg);
        let (word, coeff) = prod.terms.iter().next().unwrap();
        assert_eq!(word.cartan.as_slice(), &[1]);
        assert_eq!(word.tail.as_slice(), &[1u16]);
        assert_eq!(coeff, &Scalar::q_power(&rint(-2)).unwrap());
    }

    #[test]
    fn multiply_identity_and_inverse() {
        let alg = uq_sl2();
        let e = NcPoly::gen(&alg, 1);
        assert_eq!(NcPoly::one(&alg).mul(&e, &alg), e);
        let k = NcPoly::cartan_monomial(&alg, &[1]);
        let kinv = NcPoly::cartan_monomial(&alg, &[-1]);
        assert_eq!(k.mul(&kinv, &alg), NcPoly::one(&alg));
    }

    #[test]
    fn multiply_associative_randomized() {
        let alg = uq_sl2();
        let gens = [
            NcPoly::gen(&alg, 0),
            NcPoly::gen(&alg, 1),
            NcPoly::cartan_monomial(&alg, &[1]),
            NcPoly::cartan_monomial(&alg, &[-1]),
        ];
        let mut seed = 42u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as usize
        };
        for _ in 0..20 {
            let pick = |next: &mut dyn FnMut() -> usize| {
                let a = gens[next() % 4].clone();
                let b = gens[next() % 4].clone();
                a.add(&b.scale(&Scalar::from_int(next() as i64 % 5 - 2)))
            };
            let x = pick(&mut next);
            let y = pick(&mut next);
            let z = pick(&mut next);
            assert_eq!(x.mul(&y, &alg).mul(&z, &alg), x.mul(&y.mul(&z, &alg), &alg));
        }
    }

    #[test]
    fn q_commutator_weight_conservation_and_antisymmetry() {
        let alg = uq_sl2();
        let e = NcPoly::gen(&alg, 1);
        let f = NcPoly::gen(&alg, 0);
        let c = e.q_commutator(&f, &alg).unwrap();
        let wt = alg.word_weight(c.terms.keys().next().unwrap());
        for w in c.terms.keys() {
            assert_eq!(alg.word_weight(w), wt);
        }
        // direct expansion: [e,f]_q = e f - q^{(a,-a)} f e with (a,-a) = -2
        let ef = e.q_commutator(&f, &alg).unwrap();
        let expect = e
            .mul(&f, &alg)
            .sub(&f.mul(&e, &alg).scale(&Scalar::q_power(&rint(-2)).unwrap()));
        assert_eq!(ef, expect);
    }

    #[test]
    fn q_commutator_with_one_is_zero() {
        let alg = uq_sl2();
        let e = NcPoly::gen(&alg, 1);
        assert!(e.q_commutator(&NcPoly::one(&alg), &alg).unwrap().is_zero());
    }

    #[test]
    fn q_commutator_odd_odd() {
        // [e, e]_q = (1 + q^{(a,a)}) e^2 in osp(1|2)
        let alg = uq_osp();
        let e = NcPoly::gen(&alg, 1);
        let c = e.q_commutator(&e, &alg).unwrap();
        let e2 = e.mul(&e, &alg);
        let expect = e2.scale(&Scalar::one().add(&Scalar::q_power(&rint(1)).unwrap()));
        assert_eq!(c, expect);
    }

    #[test]
    fn ad_q_power_matches_nested_expansion() {
        let alg = uq_sl2();
        let e = NcPoly::gen(&alg, 1);
        let f = NcPoly::gen(&alg, 0);
        assert_eq!(e.ad_q_power(0, &f, &alg).unwrap(), f);
        assert_eq!(
            e.ad_q_power(1, &f, &alg).unwrap(),
            e.q_commutator(&f, &alg).unwrap()
        );
        // independent nested-bracket oracle
        let nested = e
            .q_commutator(&e.q_commutator(&e.q_commutator(&f, &alg).unwrap(), &alg).unwrap(), &alg)
            .unwrap();
        assert_eq!(e.ad_q_power(3, &f, &alg).unwrap(), nested);
    }

    #[test]
    fn tensor_koszul_sign() {
        let alg = uq_osp();
        let e = NcPoly::gen(&alg, 1);
        let one = NcPoly::one(&alg);
        // (1 (x) e)(e (x) 1) = -(e (x) e)
        let t1 = TensorPoly::tensor(2, &[&one, &e]);
        let t2 = TensorPoly::tensor(2, &[&e, &one]);
        let prod = t1.mul(&t2, &alg).unwrap();
        let expect = TensorPoly::tensor(2, &[&e, &e]).neg();
        assert_eq!(prod, expect);
        // even case keeps the + sign
        let alg2 = uq_sl2();
        let e2 = NcPoly::gen(&alg2, 1);
        let f2 = NcPoly::gen(&alg2, 0);
        let one2 = NcPoly::one(&alg2);
        let p = TensorPoly::tensor(2, &[&one2, &e2])
            .mul(&TensorPoly::tensor(2, &[&f2, &one2]), &alg2)
            .unwrap();
        assert_eq!(p, TensorPoly::tensor(2, &[&f2, &e2]));
    }

    #[test]
    fn apply_hom_delta_on_product() {
        // Delta images of U_q(sl2): Delta(e) = e(x)1 + k^{-1}(x)e,
        // Delta(f) = f(x)k + 1(x)f; check multiplicativity on e*f.
        let alg = uq_sl2();
        let e = NcPoly::gen(&alg, 1);
        let f = NcPoly::gen(&alg, 0);
        let one = NcPoly::one(&alg);
        let kinv = NcPoly::cartan_monomial(&alg, &[-1]);
        let k = NcPoly::cartan_monomial(&alg, &[1]);
        let de = TensorPoly::tensor(2, &[&e, &one]).add(&TensorPoly::tensor(2, &[&kinv, &e]));
        let df = TensorPoly::tensor(2, &[&f, &k]).add(&TensorPoly::tensor(2, &[&one, &f]));
        let images = vec![df.clone(), de.clone()];
        let ef = e.mul(&f, &alg);
        let via_hom = apply_hom(&alg, &images, &ef).unwrap();
        let direct = de.mul(&df, &alg).unwrap();
        assert_eq!(via_hom, direct);
        assert_eq!(direct.terms.len(), 4);
        // hom respects randomized products
        let x = e.add(&f.scale(&Scalar::from_int(3)));
        let y = e.mul(&f, &alg).add(&NcPoly::one(&alg));
        let lhs = apply_hom(&alg, &images, &x.mul(&y, &alg)).unwrap();
        let rhs = apply_hom(&alg, &images, &x)
            .unwrap()
            .mul(&apply_hom(&alg, &images, &y).unwrap(), &alg)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_antihom_reversal_sign() {
        // S on e*e in osp(1|2): graded reversal gives -(S e)(S e)
        let alg = uq_osp();
        let e = NcPoly::gen(&alg, 1);
        let se = NcPoly::cartan_monomial(&alg, &[1]).mul(&e, &alg).neg();
        let sf = NcPoly::gen(&alg, 0)
            .mul(&NcPoly::cartan_monomial(&alg, &[-1]), &alg)
            .neg();
        let images = vec![sf, se.clone()];
        let ee = e.mul(&e, &alg);
        let s_ee = apply_antihom(&alg, &images, &ee).unwrap();
        assert_eq!(s_ee, se.mul(&se, &alg).neg());
        // length-1 words map verbatim
        assert_eq!(apply_antihom(&alg, &images, &e).unwrap(), se);
    }

    #[test]
    fn antihom_on_products_randomized() {
        let alg = uq_sl2();
        let e = NcPoly::gen(&alg, 1);
        let f = NcPoly::gen(&alg, 0);
        let se = NcPoly::cartan_monomial(&alg, &[1]).mul(&e, &alg).neg();
        let sf = f.mul(&NcPoly::cartan_monomial(&alg, &[-1]), &alg).neg();
        let images = vec![sf, se];
        for (x, y) in [
            (e.clone(), f.clone()),
            (e.mul(&f, &alg), e.clone()),
            (e.add(&f), f.mul(&f, &alg)),
        ] {
            let lhs = apply_antihom(&alg, &images, &x.mul(&y, &alg)).unwrap();
            let rhs = apply_antihom(&alg, &images, &y)
                .unwrap()
                .mul(&apply_antihom(&alg, &images, &x).unwrap(), &alg);
            assert_eq!(lhs, rhs);
        }
    }
}
