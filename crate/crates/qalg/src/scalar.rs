//! Exact coefficient arithmetic for the ground ring.
//!
//! A [`Scalar`] is a rational function in `q` (internally a Laurent
//! polynomial in `v` with `q = v^L`, `L = 6`), polynomial in `eta` and in
//! any declared symbolic parameters.  Denominators are restricted to
//! `v`-only polynomials, which keeps gcd computation univariate and makes
//! every `eta`-free, parameter-free nonzero scalar invertible.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Exponent lattice constant: `q = v^LATTICE`.
pub const LATTICE: i64 = 6;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a unit and does not divide exactly")]
    NonUnitDivisor,
    #[error("exponent {0} does not lie on the 1/{LATTICE} lattice")]
    OffLattice(Rat),
    #[error("singular at q = 1")]
    SingularAtQ1,
}

// ---------------------------------------------------------------------------
// Laurent polynomials in v
// ---------------------------------------------------------------------------

/// Laurent polynomial in `v` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VPoly {
    terms: BTreeMap<i64, Rat>,
}

impl VPoly {
    pub fn zero() -> Self {
        VPoly::default()
    }

    pub fn one() -> Self {
        VPoly::monomial(0, Rat::one())
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        VPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Lowest and highest exponents; `None` for the zero polynomial.
    pub fn span(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?;
        let hi = self.terms.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &VPoly) -> VPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> VPoly {
        VPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &VPoly) -> VPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &VPoly) -> VPoly {
        let mut out = VPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> VPoly {
        if c.is_zero() {
            return VPoly::zero();
        }
        VPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> VPoly {
        VPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn eval_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }

    fn leading(&self) -> Option<(i64, &Rat)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Euclidean division of ordinary (nonnegative-exponent) polynomials.
    /// Both inputs are first shifted so their lowest exponent is 0.
    fn divrem_ordinary(&self, d: &VPoly) -> (VPoly, VPoly) {
        assert!(!d.is_zero());
        let mut rem = self.clone();
        let mut quo = VPoly::zero();
        let (dl, dc) = d.leading().unwrap();
        while let Some((rl, rc)) = rem.leading() {
            if rl < dl {
                break;
            }
            let c = rc / dc;
            let e = rl - dl;
            quo.insert_add(e, c.clone());
            rem = rem.sub(&d.shift(e).scale(&c));
        }
        (quo, rem)
    }

    /// Exact division in the Laurent ring; `None` if it does not divide.
    pub fn exact_div(&self, d: &VPoly) -> Option<VPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(VPoly::zero());
        }
        let (slo, _) = self.span().unwrap();
        let (dlo, _) = d.span().unwrap();
        let (q, r) = self.shift(-slo).divrem_ordinary(&d.shift(-dlo));
        if r.is_zero() {
            Some(q.shift(slo - dlo))
        } else {
            None
        }
    }

    /// Monic gcd over `Q[v]` of the shifted-to-zero representatives.
    pub fn gcd(&self, other: &VPoly) -> VPoly {
        let mut a = match self.span() {
            None => return other.normalized_assoc(),
            Some((lo, _)) => self.shift(-lo),
        };
        let mut b = match other.span() {
            None => return self.normalized_assoc(),
            Some((lo, _)) => other.shift(-lo),
        };
        while !b.is_zero() {
            let (_, r) = a.divrem_ordinary(&b);
            a = b;
            b = match r.span() {
                None => r,
                Some((lo, _)) => r.shift(-lo),
            };
        }
        a.normalized_assoc()
    }

    /// Associate with lowest exponent 0 and leading coefficient 1.
    fn normalized_assoc(&self) -> VPoly {
        match self.span() {
            None => VPoly::zero(),
            Some((lo, _)) => {
                let s = self.shift(-lo);
                let (_, lc) = s.leading().unwrap();
                let lc = lc.clone();
                s.scale(&lc.recip())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Monomials and polynomials in eta and the declared parameters
// ---------------------------------------------------------------------------

/// Monomial in `eta` and named parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PMono {
    pub eta: u32,
    pub params: SmallVec<[(String, u32); 1]>,
}

impl PMono {
    pub fn one() -> Self {
        PMono::default()
    }

    pub fn eta(n: u32) -> Self {
        PMono {
            eta: n,
            params: SmallVec::new(),
        }
    }

    pub fn param(name: &str) -> Self {
        PMono {
            eta: 0,
            params: smallvec::smallvec![(name.to_string(), 1)],
        }
    }

    pub fn is_one(&self) -> bool {
        self.eta == 0 && self.params.is_empty()
    }

    pub fn mul(&self, other: &PMono) -> PMono {
        let mut params = self.params.clone();
        for (name, d) in &other.params {
            match params.iter_mut().find(|(n, _)| n == name) {
                Some((_, e)) => *e += d,
                None => params.push((name.clone(), *d)),
            }
        }
        params.sort();
        PMono {
            eta: self.eta + other.eta,
            params,
        }
    }

    /// Componentwise divisibility; returns the quotient monomial.
    pub fn try_div(&self, other: &PMono) -> Option<PMono> {
        if self.eta < other.eta {
            return None;
        }
        let mut params = SmallVec::new();
        for (name, d) in &self.params {
            let sub = other
                .params
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, e)| *e)
                .unwrap_or(0);
            if *d < sub {
                return None;
            }
            if *d > sub {
                params.push((name.clone(), d - sub));
            }
        }
        for (name, _) in &other.params {
            if !self.params.iter().any(|(n, _)| n == name) {
                return None;
            }
        }
        Some(PMono {
            eta: self.eta - other.eta,
            params,
        })
    }
}

/// Commutative polynomial in `eta` and parameters with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PPoly {
    pub terms: BTreeMap<PMono, Rat>,
}

impl PPoly {
    pub fn zero() -> Self {
        PPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PMono::one(), c);
        }
        PPoly { terms }
    }

    pub fn monomial(m: PMono, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_add(&mut self, m: PMono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PPoly) -> PPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &PPoly) -> PPoly {
        let mut out = PPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PPoly {
        if c.is_zero() {
            return PPoly::zero();
        }
        PPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn neg(&self) -> PPoly {
        self.scale(&-Rat::one())
    }
}

// ---------------------------------------------------------------------------
// Scalar: the fraction type
// ---------------------------------------------------------------------------

/// Element of `Q(v)[eta, params]` with a `v`-only denominator, kept in
/// canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    /// Numerator: map from eta/parameter monomial to its `v`-coefficient.
    num: BTreeMap<PMono, VPoly>,
    /// Denominator: nonzero polynomial in `v` with lowest exponent 0,
    /// integer coefficients of content 1 and positive leading coefficient.
    den: VPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: BTreeMap::new(),
            den: VPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_vpoly(VPoly::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        Scalar::from_vpoly(VPoly::monomial(0, c))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(rint(n))
    }

    pub fn from_vpoly(p: VPoly) -> Self {
        let mut num = BTreeMap::new();
        if !p.is_zero() {
            num.insert(PMono::one(), p);
        }
        Scalar {
            num,
            den: VPoly::one(),
        }
    }

    pub fn eta() -> Self {
        Scalar::from_pmono(PMono::eta(1))
    }

    pub fn param(name: &str) -> Self {
        Scalar::from_pmono(PMono::param(name))
    }

    pub fn from_pmono(m: PMono) -> Self {
        let mut num = BTreeMap::new();
        num.insert(m, VPoly::one());
        Scalar {
            num,
            den: VPoly::one(),
        }
    }

    pub fn from_ppoly(p: &PPoly) -> Self {
        let mut num = BTreeMap::new();
        for (m, c) in &p.terms {
            num.insert(m.clone(), VPoly::monomial(0, c.clone()));
        }
        Scalar {
            num,
            den: VPoly::one(),
        }
    }

    /// `tau = eta / (q - q^-1)`.
    pub fn tau() -> Self {
        Scalar::eta()
            .div(&Scalar::q_minus_qinv())
            .expect("q - q^-1 is a unit")
    }

    /// `q - q^-1`.
    pub fn q_minus_qinv() -> Self {
        Scalar::from_vpoly(
            VPoly::monomial(LATTICE, Rat::one()).add(&VPoly::monomial(-LATTICE, -Rat::one())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num.len() == 1
            && self
                .num
                .get(&PMono::one())
                .map_or(false, |p| p.is_one())
    }

    /// True when the scalar is a nonzero element of `Q(v)`, i.e. invertible.
    pub fn is_unit(&self) -> bool {
        self.num.len() == 1 && self.num.contains_key(&PMono::one())
    }

    /// Free of `eta` and parameters.
    pub fn is_v_only(&self) -> bool {
        self.is_zero() || self.is_unit()
    }

    pub fn num_terms(&self) -> impl Iterator<Item = (&PMono, &VPoly)> {
        self.num.iter()
    }

    pub fn den(&self) -> &VPoly {
        &self.den
    }

    fn make(num: BTreeMap<PMono, VPoly>, den: VPoly) -> Scalar {
        let mut s = Scalar { num, den };
        s.reduce();
        s
    }

    fn reduce(&mut self) {
        self.num.retain(|_, p| !p.is_zero());
        if self.num.is_empty() {
            self.den = VPoly::one();
            return;
        }
        // Cancel the univariate content gcd against the denominator.
        let mut g = self.den.clone();
        for p in self.num.values() {
            if g.is_one() {
                break;
            }
            g = g.gcd(p);
        }
        if !g.is_one() {
            self.den = self.den.exact_div(&g).expect("gcd divides");
            for p in self.num.values_mut() {
                *p = p.exact_div(&g).expect("gcd divides");
            }
        }
        // Normalize the denominator: lowest exponent 0, integer content 1,
        // positive leading coefficient.
        let (lo, _) = self.den.span().expect("denominator nonzero");
        if lo != 0 {
            self.den = self.den.shift(-lo);
            for p in self.num.values_mut() {
                *p = p.shift(-lo);
            }
        }
        let mut scale: Option<Rat> = None;
        for (_, c) in self.den.terms() {
            let abs = c.abs();
            scale = Some(match scale {
                None => abs,
                Some(s) => {
                    // gcd of rationals: gcd(nums)/lcm(dens)
                    let gn = num_integer::Integer::gcd(s.numer(), abs.numer());
                    let gl = num_integer::Integer::lcm(s.denom(), abs.denom());
                    Rat::new(gn, gl)
                }
            });
        }
        let mut scale = scale.unwrap();
        if self
            .den
            .leading()
            .map_or(false, |(_, c)| c.is_negative())
        {
            scale = -scale;
        }
        if !scale.is_one() {
            let inv = scale.recip();
            self.den = self.den.scale(&inv);
            for p in self.num.values_mut() {
                *p = p.scale(&inv);
            }
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut num = BTreeMap::new();
        for (m, p) in &self.num {
            num.insert(m.clone(), p.mul(&other.den));
        }
        for (m, p) in &other.num {
            let add = p.mul(&self.den);
            use std::collections::btree_map::Entry;
            match num.entry(m.clone()) {
                Entry::Vacant(e) => {
                    e.insert(add);
                }
                Entry::Occupied(mut e) => {
                    let s = e.get().add(&add);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Scalar::make(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.iter().map(|(m, p)| (m.clone(), p.neg())).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let mut num: BTreeMap<PMono, VPoly> = BTreeMap::new();
        for (m1, p1) in &self.num {
            for (m2, p2) in &other.num {
                let m = m1.mul(m2);
                let p = p1.mul(p2);
                use std::collections::btree_map::Entry;
                match num.entry(m) {
                    Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    Entry::Occupied(mut e) => {
                        let s = e.get().add(&p);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Scalar::make(num, self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self
                .num
                .iter()
                .map(|(m, p)| (m.clone(), p.scale(c)))
                .collect(),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(p) = other.num.get(&PMono::one()) {
            if other.num.len() == 1 {
                // v-only divisor: invert it.
                let mut num = BTreeMap::new();
                for (m, n) in &self.num {
                    num.insert(m.clone(), n.mul(&other.den));
                }
                return Ok(Scalar::make(num, self.den.mul(p)));
            }
        }
        // Non-unit divisor: attempt exact multivariate division of
        // self.num * other.den by other.num over the field Q(v).
        let quotient = exact_div_multi(&self.num, &other.num).ok_or(ScalarError::NonUnitDivisor)?;
        let mut out = Scalar::zero();
        for (m, frac) in quotient {
            let term = Scalar::make(
                std::iter::once((m, frac.n.mul(&other.den))).collect(),
                self.den.mul(&frac.d),
            );
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Substitute `eta = 0`.
    pub fn eta_zero(&self) -> Scalar {
        let num: BTreeMap<PMono, VPoly> = self
            .num
            .iter()
            .filter(|(m, _)| m.eta == 0)
            .map(|(m, p)| (m.clone(), p.clone()))
            .collect();
        Scalar::make(num, self.den.clone())
    }

    /// Exact value at `q = 1` as a polynomial in `eta` and parameters.
    pub fn limit_q1(&self) -> Result<PPoly, ScalarError> {
        if self.den.eval_one().is_zero() {
            return Err(ScalarError::SingularAtQ1);
        }
        let d = self.den.eval_one();
        let mut out = PPoly::zero();
        for (m, p) in &self.num {
            out.insert_add(m.clone(), p.eval_one() / &d);
        }
        Ok(out)
    }

    /// Truncated expansion at `q = 1`; poles up to order `max_pole` allowed.
    pub fn q1_series(&self, max_pole: u32) -> Result<HSeries, ScalarError> {
        let prec = 3 + max_pole as i64; // retain orders lo .. 2 inclusive
        // Denominator expansion and its h-valuation.
        let den_series = vpoly_h_series(&self.den, prec as usize);
        let m = den_series
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(ScalarError::SingularAtQ1)? as i64;
        if m > max_pole as i64 {
            return Err(ScalarError::SingularAtQ1);
        }
        // Invert the unit part of the denominator.
        let unit: Vec<Rat> = den_series[m as usize..].to_vec();
        let n = prec as usize;
        let mut inv = vec![Rat::zero(); n];
        inv[0] = unit[0].clone().recip();
        for k in 1..n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if j < unit.len() {
                    acc += &unit[j] * &inv[k - j];
                }
            }
            inv[k] = -acc * inv[0].clone();
        }
        // Numerator expansion, one PPoly per order of h.
        let mut num_series = vec![PPoly::zero(); n];
        for (mono, p) in &self.num {
            let s = vpoly_h_series(p, n);
            for (k, c) in s.into_iter().enumerate() {
                num_series[k].insert_add(mono.clone(), c);
            }
        }
        // Multiply and shift down by the pole order.
        let mut coeffs = vec![PPoly::zero(); n];
        for k in 0..n {
            for j in 0..=k {
                if !num_series[j].is_zero() && !inv[k - j].is_zero() {
                    coeffs[k] = coeffs[k].add(&num_series[j].scale(&inv[k - j]));
                }
            }
        }
        let lo = -m;
        // Keep orders lo..=2.
        let keep = (2 - lo + 1) as usize;
        coeffs.truncate(keep);
        Ok(HSeries { lo, coeffs })
    }

    /// Truncated series at `q = 1`, requiring regularity.
    pub fn to_q1_series(&self) -> Result<Q1Series, ScalarError> {
        let s = self.q1_series(0)?;
        Ok(Q1Series {
            c0: s.coeff(0),
            c1: s.coeff(1),
            c2: s.coeff(2),
        })
    }

    /// q-power `q^r`; `r` must lie on the lattice.
    pub fn q_power(r: &Rat) -> Result<Scalar, ScalarError> {
        let e = r * rint(LATTICE);
        if !e.denom().is_one() {
            return Err(ScalarError::OffLattice(r.clone()));
        }
        let e: i64 = e
            .numer()
            .try_into()
            .map_err(|_| ScalarError::OffLattice(r.clone()))?;
        Ok(Scalar::from_vpoly(VPoly::monomial(e, Rat::one())))
    }

    /// q-bracket `[a] = (q^a - q^-a)/(q - q^-1)`.
    pub fn q_bracket(a: &Rat) -> Result<Scalar, ScalarError> {
        let up = Scalar::q_power(a)?;
        let down = Scalar::q_power(&-a.clone())?;
        up.sub(&down).div(&Scalar::q_minus_qinv())
    }

    /// All eta/parameter monomials appearing in the numerator.
    pub fn monomials(&self) -> impl Iterator<Item = &PMono> {
        self.num.keys()
    }
}

struct VFrac {
    n: VPoly,
    d: VPoly,
}

/// Exact division of multivariate polynomials (coefficients in Q(v)) viewed
/// in the eta/parameter variables; returns quotient terms or `None` when the
/// division is not exact.
fn exact_div_multi(
    num: &BTreeMap<PMono, VPoly>,
    div: &BTreeMap<PMono, VPoly>,
) -> Option<BTreeMap<PMono, VFrac>> {
    let (lead_m, lead_v) = div.iter().next_back()?;
    // Remainder as PMono -> VFrac with a running common shape.
    let mut rem: BTreeMap<PMono, VFrac> = num
        .iter()
        .map(|(m, p)| {
            (
                m.clone(),
                VFrac {
                    n: p.clone(),
                    d: VPoly::one(),
                },
            )
        })
        .collect();
    let mut quo: BTreeMap<PMono, VFrac> = BTreeMap::new();
    // The derived monomial order is not translation-invariant for several
    // parameters at once, so cap the loop instead of relying on descent.
    let mut budget = num.len() * 64 + 256;
    while let Some((m, _)) = rem.iter().next_back() {
        if budget == 0 {
            return None;
        }
        budget -= 1;
        let m = m.clone();
        let q_mono = m.try_div(lead_m)?;
        let f = rem.remove(&m).unwrap();
        // coefficient = f / lead_v
        let qc = VFrac {
            n: f.n.clone(),
            d: f.d.mul(lead_v),
        };
        // rem -= qc * (div - lead term)
        for (dm, dv) in div.iter() {
            if dm == lead_m {
                continue;
            }
            let tm = q_mono.mul(dm);
            let tn = qc.n.mul(dv);
            let entry = rem.remove(&tm);
            let merged = match entry {
                None => VFrac {
                    n: tn.neg(),
                    d: qc.d.clone(),
                },
                Some(e) => VFrac {
                    n: e.n.mul(&qc.d).sub(&tn.mul(&e.d)),
                    d: e.d.mul(&qc.d),
                },
            };
            if !merged.n.is_zero() {
                rem.insert(tm, merged);
            }
        }
        match quo.remove(&q_mono) {
            None => {
                quo.insert(q_mono, qc);
            }
            Some(e) => {
                quo.insert(
                    q_mono,
                    VFrac {
                        n: e.n.mul(&qc.d).add(&qc.n.mul(&e.d)),
                        d: e.d.mul(&qc.d),
                    },
                );
            }
        }
    }
    Some(quo)
}

/// Expansion of a `v`-Laurent polynomial in powers of `h = q - 1`,
/// using `v = (1+h)^{1/L}` exactly, to `prec` orders.
fn vpoly_h_series(p: &VPoly, prec: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); prec];
    for (e, c) in p.terms() {
        // (1+h)^{e/L} = sum_j C(e/L, j) h^j
        let x = rat(*e, LATTICE);
        let mut binom = Rat::one();
        for (j, slot) in out.iter_mut().enumerate() {
            if j > 0 {
                binom = binom * (&x - rint(j as i64 - 1)) / rint(j as i64);
            }
            *slot += &binom * c;
        }
    }
    out
}

/// Truncated Laurent series in `h = q - 1`: orders `lo ..= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HSeries {
    pub lo: i64,
    pub coeffs: Vec<PPoly>,
}

impl HSeries {
    pub fn coeff(&self, order: i64) -> PPoly {
        if order < self.lo {
            return PPoly::zero();
        }
        let i = (order - self.lo) as usize;
        self.coeffs.get(i).cloned().unwrap_or_else(PPoly::zero)
    }
}

/// Truncated series `c0 + c1 h + c2 h^2 + O(h^3)` at `h = q - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Q1Series {
    pub c0: PPoly,
    pub c1: PPoly,
    pub c2: PPoly,
}

impl Q1Series {
    pub fn add(&self, other: &Q1Series) -> Q1Series {
        Q1Series {
            c0: self.c0.add(&other.c0),
            c1: self.c1.add(&other.c1),
            c2: self.c2.add(&other.c2),
        }
    }

    pub fn mul(&self, other: &Q1Series) -> Q1Series {
        Q1Series {
            c0: self.c0.mul(&other.c0),
            c1: self.c0.mul(&other.c1).add(&self.c1.mul(&other.c0)),
            c2: self
                .c0
                .mul(&other.c2)
                .add(&self.c1.mul(&other.c1))
                .add(&self.c2.mul(&other.c0)),
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical text rendering
// ---------------------------------------------------------------------------

fn fmt_qpow(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e % LATTICE == 0 {
        let k = e / LATTICE;
        if k == 1 {
            write!(f, "q")
        } else {
            write!(f, "q^{}", k)
        }
    } else {
        let r = rat(e, LATTICE);
        write!(f, "q^({}/{})", r.numer(), r.denom())
    }
}

fn fmt_monomial(
    f: &mut fmt::Formatter<'_>,
    coeff: &Rat,
    vexp: i64,
    mono: &PMono,
    leading: bool,
) -> fmt::Result {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    if leading {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mut factors_printed = false;
    if !abs.is_one() || (vexp == 0 && mono.is_one()) {
        write!(f, "{}", abs)?;
        factors_printed = true;
    }
    if vexp != 0 {
        if factors_printed {
            write!(f, "*")?;
        }
        fmt_qpow(f, vexp)?;
        factors_printed = true;
    }
    if mono.eta > 0 {
        if factors_printed {
            write!(f, "*")?;
        }
        if mono.eta == 1 {
            write!(f, "eta")?;
        } else {
            write!(f, "eta^{}", mono.eta)?;
        }
        factors_printed = true;
    }
    for (name, d) in &mono.params {
        if factors_printed {
            write!(f, "*")?;
        }
        if *d == 1 {
            write!(f, "{}", name)?;
        } else {
            write!(f, "{}^{}", name, d)?;
        }
        factors_printed = true;
    }
    Ok(())
}

fn fmt_num(f: &mut fmt::Formatter<'_>, num: &BTreeMap<PMono, VPoly>) -> fmt::Result {
    // Monomials sorted by (v-exponent, eta-degree, parameter degrees) desc.
    let mut flat: Vec<(i64, &PMono, &Rat)> = Vec::new();
    for (m, p) in num {
        for (e, c) in p.terms() {
            flat.push((*e, m, c));
        }
    }
    flat.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then_with(|| b.1.eta.cmp(&a.1.eta))
            .then_with(|| b.1.params.cmp(&a.1.params))
    });
    for (i, (e, m, c)) in flat.iter().enumerate() {
        fmt_monomial(f, c, *e, m, i == 0)?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.den.is_one() {
            fmt_num(f, &self.num)
        } else {
            write!(f, "(")?;
            fmt_num(f, &self.num)?;
            write!(f, ")/(")?;
            let mut den = BTreeMap::new();
            den.insert(PMono::one(), self.den.clone());
            fmt_num(f, &den)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut flat: Vec<(&PMono, &Rat)> = self.terms.iter().collect();
        flat.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (m, c)) in flat.iter().enumerate() {
            fmt_monomial(f, c, 0, m, i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q_power(&rint(1)).unwrap()
    }

    fn qinv() -> Scalar {
        Scalar::q_power(&rint(-1)).unwrap()
    }

    /// Independent oracle: long division of Laurent polynomials done over
    /// plain coefficient vectors.
    fn poly_div_oracle(num: &[(i64, i64)], den: &[(i64, i64)]) -> Option<Vec<(i64, i64)>> {
        let shift = |v: &[(i64, i64)]| {
            let lo = v.iter().map(|(e, _)| *e).min().unwrap();
            let hi = v.iter().map(|(e, _)| *e).max().unwrap();
            let mut c = vec![0i64; (hi - lo + 1) as usize];
            for (e, k) in v {
                c[(e - lo) as usize] += k;
            }
            (lo, c)
        };
        let (nlo, mut n) = shift(num);
        let (dlo, d) = shift(den);
        let dl = *d.last().unwrap();
        let mut quo = vec![0i64; n.len().saturating_sub(d.len()) + 1];
        for i in (d.len() - 1..n.len()).rev() {
            if n[i] == 0 {
                continue;
            }
            if n[i] % dl != 0 {
                return None;
            }
            let c = n[i] / dl;
            quo[i + 1 - d.len()] = c;
            for (j, dc) in d.iter().enumerate() {
                n[i + 1 - d.len() + j] -= c * dc;
            }
        }
        if n.iter().any(|&c| c != 0) {
            return None;
        }
        Some(
            quo.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (i as i64 + nlo - dlo, *c))
                .collect(),
        )
    }

    fn scalar_from_terms(terms: &[(i64, i64)]) -> Scalar {
        let mut p = VPoly::zero();
        for (e, c) in terms {
            p.insert_add(*e, rint(*c));
        }
        Scalar::from_vpoly(p)
    }

    #[test]
    fn add_q_qinv() {
        let s = q().add(&qinv());
        assert_eq!(s, scalar_from_terms(&[(LATTICE, 1), (-LATTICE, 1)]));
    }

    #[test]
    fn div_matches_polynomial_division_oracle() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1
        let num = scalar_from_terms(&[(12, 1), (-12, -1)]);
        let den = scalar_from_terms(&[(6, 1), (-6, -1)]);
        let expect = poly_div_oracle(&[(12, 1), (-12, -1)], &[(6, 1), (-6, -1)]).unwrap();
        assert_eq!(num.div(&den).unwrap(), scalar_from_terms(&expect));
        assert_eq!(num.div(&den).unwrap(), q().add(&qinv()));
    }

    #[test]
    fn div_by_eta_is_non_unit() {
        assert_eq!(
            Scalar::one().div(&Scalar::eta()),
            Err(ScalarError::NonUnitDivisor)
        );
    }

    #[test]
    fn div_exact_by_eta_poly() {
        // (eta*q + eta^2) / eta = q + eta
        let x = Scalar::eta()
            .mul(&q())
            .add(&Scalar::eta().mul(&Scalar::eta()));
        let r = x.div(&Scalar::eta()).unwrap();
        assert_eq!(r, q().add(&Scalar::eta()));
    }

    #[test]
    fn q_power_lattice() {
        assert_eq!(Scalar::q_power(&rint(1)).unwrap(), q());
        // q^{-1/3 * (alpha,beta)} with (alpha,beta) = -3 in G2 normalization
        let r = rat(-1, 3) * rint(-3);
        assert_eq!(Scalar::q_power(&r).unwrap(), q());
        assert!(matches!(
            Scalar::q_power(&rat(1, 7)),
            Err(ScalarError::OffLattice(_))
        ));
    }

    #[test]
    fn q_bracket_small_values() {
        assert_eq!(Scalar::q_bracket(&rint(1)).unwrap(), Scalar::one());
        // oracle-derived expansions
        let b2 = poly_div_oracle(&[(12, 1), (-12, -1)], &[(6, 1), (-6, -1)]).unwrap();
        assert_eq!(Scalar::q_bracket(&rint(2)).unwrap(), scalar_from_terms(&b2));
        let b3 = poly_div_oracle(&[(18, 1), (-18, -1)], &[(6, 1), (-6, -1)]).unwrap();
        assert_eq!(Scalar::q_bracket(&rint(3)).unwrap(), scalar_from_terms(&b3));
        assert_eq!(
            Scalar::q_bracket(&rint(3)).unwrap(),
            scalar_from_terms(&[(12, 1), (0, 1), (-12, 1)])
        );
        assert_eq!(Scalar::q_bracket(&rint(0)).unwrap(), Scalar::zero());
        for a in 1..6 {
            assert_eq!(
                Scalar::q_bracket(&rint(-a)).unwrap(),
                Scalar::q_bracket(&rint(a)).unwrap().neg()
            );
        }
    }

    #[test]
    fn q_bracket_identity() {
        // [a] * (q - q^-1) = q^a - q^-a, including fractional lattice points
        for num in [-24, -7, -3, -1, 1, 2, 3, 5, 9, 24] {
            for den in [1i64, 2, 3, 6] {
                let a = rat(num, den);
                let lhs = Scalar::q_bracket(&a).unwrap().mul(&Scalar::q_minus_qinv());
                let rhs = Scalar::q_power(&a)
                    .unwrap()
                    .sub(&Scalar::q_power(&-a.clone()).unwrap());
                assert_eq!(lhs, rhs, "a = {}", a);
            }
        }
    }

    #[test]
    fn limit_q1_of_brackets() {
        for a in -12..=12i64 {
            let b = Scalar::q_bracket(&rint(a)).unwrap();
            assert_eq!(b.limit_q1().unwrap(), PPoly::constant(rint(a)));
        }
    }

    #[test]
    fn limit_q1_singular() {
        let tau = Scalar::tau();
        assert_eq!(tau.limit_q1(), Err(ScalarError::SingularAtQ1));
        let pole = Scalar::one().div(&Scalar::q_minus_qinv()).unwrap();
        assert_eq!(pole.limit_q1(), Err(ScalarError::SingularAtQ1));
    }

    #[test]
    fn limit_q1_eta_q2() {
        let x = Scalar::eta().mul(&Scalar::q_power(&rint(2)).unwrap());
        assert_eq!(
            x.limit_q1().unwrap(),
            PPoly::monomial(PMono::eta(1), Rat::one())
        );
    }

    #[test]
    fn eta_zero_examples() {
        let x = Scalar::eta().mul(&q()).add(&qinv());
        assert_eq!(x.eta_zero(), qinv());
        assert_eq!(
            Scalar::tau().mul(&Scalar::q_minus_qinv()).eta_zero(),
            Scalar::zero()
        );
        let b = Scalar::q_bracket(&rint(2)).unwrap();
        assert_eq!(b.eta_zero(), b);
        // idempotence
        for s in [x, Scalar::tau().mul(&Scalar::q_minus_qinv())] {
            assert_eq!(s.eta_zero().eta_zero(), s.eta_zero());
        }
    }

    #[test]
    fn q1_series_of_q() {
        let s = q().to_q1_series().unwrap();
        assert_eq!(s.c0, PPoly::constant(Rat::one()));
        assert_eq!(s.c1, PPoly::constant(Rat::one()));
        assert_eq!(s.c2, PPoly::zero());
    }

    #[test]
    fn q1_series_of_bracket2() {
        // [2] = q + q^-1 = (1 + h) + (1 - h + h^2 - ...) = 2 + h^2 + O(h^3)
        let s = Scalar::q_bracket(&rint(2)).unwrap().to_q1_series().unwrap();
        assert_eq!(s.c0, PPoly::constant(rint(2)));
        assert_eq!(s.c1, PPoly::zero());
        assert_eq!(s.c2, PPoly::constant(rint(1)));
    }

    #[test]
    fn q1_series_singular() {
        let pole = Scalar::one()
            .div(&q().sub(&Scalar::one()))
            .unwrap();
        assert!(pole.to_q1_series().is_err());
        // but allowed with the shifted expansion
        let s = pole.q1_series(2).unwrap();
        assert_eq!(s.lo, -1);
        assert_eq!(s.coeff(-1), PPoly::constant(Rat::one()));
    }

    #[test]
    fn series_agrees_with_limit_at_order_zero() {
        let cases = [
            Scalar::q_bracket(&rint(5)).unwrap(),
            q().mul(&Scalar::eta()).add(&Scalar::from_int(3)),
            Scalar::q_bracket(&rat(1, 2)).unwrap(),
        ];
        for s in cases {
            assert_eq!(s.to_q1_series().unwrap().c0, s.limit_q1().unwrap());
        }
    }

    #[test]
    fn tau_times_bracket_regular() {
        // tau * (q - q^-1) = eta is regular even though tau is not
        let x = Scalar::tau().mul(&Scalar::q_minus_qinv());
        assert_eq!(
            x.limit_q1().unwrap(),
            PPoly::monomial(PMono::eta(1), Rat::one())
        );
    }

    #[test]
    fn ring_laws_randomized() {
        // deterministic pseudo-random scalars
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut rand_scalar = move || {
            let mut s = Scalar::zero();
            for _ in 0..3 {
                let e = (next() % 13) as i64 - 6;
                let c = (next() % 7) as i64 - 3;
                let eta = (next() % 3) as u32;
                let t = Scalar::from_pmono(PMono::eta(eta))
                    .mul(&Scalar::from_vpoly(VPoly::monomial(e, rint(c))));
                s = s.add(&t);
            }
            s.div(&Scalar::q_minus_qinv()).unwrap()
        };
        for _ in 0..25 {
            let (a, b, c) = (rand_scalar(), rand_scalar(), rand_scalar());
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.sub(&a), Scalar::zero());
        }
    }

    #[test]
    fn display_canonical() {
        assert_eq!(q().add(&qinv()).to_string(), "q + q^-1");
        // canonical form clears the q^-1 from eta/(q - q^-1)
        assert_eq!(Scalar::tau().to_string(), "(q*eta)/(q^2 - 1)");
        assert_eq!(
            Scalar::q_bracket(&rat(1, 2)).unwrap().to_string(),
            "(q^(1/2))/(q + 1)"
        );
    }
}
