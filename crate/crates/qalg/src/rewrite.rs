//! Rewriting modulo two-sided ideals of relations.
//!
//! Relations are oriented into rules `lhs -> rhs` with a Cartan-free
//! leading word and strictly smaller right-hand sides.  Completion closes
//! the system under critical pairs up to a length bound.  A positive
//! verdict (`normal form = 0`) is sound regardless of the bound: the
//! reduction trace exhibits the input as an explicit combination of
//! relations and can be replayed independently.

use std::collections::BTreeMap;
use std::sync::RwLock;

use smallvec::SmallVec;
use thiserror::Error;

use crate::freealg::{Algebra, AlgError, CartanVec, NcPoly, TailVec, Word};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum RewriteError {
    #[error("relation {0} has a non-invertible leading coefficient")]
    NonUnitLeading(String),
    #[error("reduction exceeded {0} steps")]
    ReductionDiverged(usize),
    #[error("completion exceeded its bounds ({0})")]
    CompletionDiverged(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
}

/// Oriented rule; `lhs` is a Cartan-free word, every word of `rhs` is
/// strictly smaller than `lhs` in the monomial order.
#[derive(Debug, Clone)]
pub struct Rule {
    pub name: String,
    pub lhs: Word,
    pub rhs: NcPoly,
}

/// Named presentation of an algebra by relations (each understood as
/// `relation = 0`).
#[derive(Debug, Clone)]
pub struct Presentation {
    pub alg: Algebra,
    pub relations: Vec<(String, NcPoly)>,
}

#[derive(Debug, Clone, Copy)]
pub struct CompletionConfig {
    /// Critical pairs whose overlap word is longer than this are skipped.
    pub max_overlap_len: usize,
    pub max_rules: usize,
    pub max_pairs: usize,
    pub max_steps: usize,
    /// Log adjoined rules to stderr while completing.
    pub verbose: bool,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            max_overlap_len: 8,
            max_rules: 600,
            max_pairs: 200_000,
            max_steps: 2_000_000,
            verbose: false,
        }
    }
}

/// One replacement `coeff * k^c * L * (lhs_r - rhs_r) * R` subtracted
/// from the running element.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub rule: usize,
    pub coeff: Scalar,
    pub cartan: CartanVec,
    pub left: TailVec,
    pub right: TailVec,
}

#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

#[derive(Debug)]
pub struct RewriteSystem {
    pub alg: Algebra,
    pub rules: Vec<Rule>,
    pub max_steps: usize,
    /// Degree (overlap-word length) bound the system was completed to.
    pub completed_to: usize,
    /// Critical pairs beyond the degree bound, left unexamined; this is
    /// the confluence frontier, not a failure.
    pub frontier_overlaps: usize,
    /// Overlap ambiguities within the degree bound that could not be
    /// resolved; empty on every successful completion.
    pub unresolved: Vec<String>,
    cache: RwLock<std::collections::HashMap<TailVec, NcPoly>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem {
            alg: self.alg.clone(),
            rules: self.rules.clone(),
            max_steps: self.max_steps,
            completed_to: self.completed_to,
            frontier_overlaps: self.frontier_overlaps,
            unresolved: self.unresolved.clone(),
            cache: RwLock::new(Default::default()),
        }
    }
}

/// Orient `rel = 0` into a rule.  The leading Cartan factor is cleared by
/// a left multiplication with its inverse; the leading coefficient must
/// be invertible.
pub fn orient(alg: &Algebra, name: &str, rel: &NcPoly) -> Result<Option<Rule>, RewriteError> {
    if rel.is_zero() {
        return Ok(None);
    }
    let (lead, _) = rel.leading().expect("nonzero");
    let mut rel = rel.clone();
    if lead.cartan.iter().any(|e| *e != 0) {
        let inv: CartanVec = lead.cartan.iter().map(|e| -e).collect();
        let shift = NcPoly::monomial(alg.word(inv, TailVec::new()), Scalar::one());
        rel = shift.mul(&rel, alg);
    }
    let (lead, coeff) = {
        let (w, c) = rel.leading().expect("nonzero");
        (w.clone(), c.clone())
    };
    if !coeff.is_unit() {
        return Err(RewriteError::NonUnitLeading(name.to_string()));
    }
    let rel = rel.scale(&Scalar::one().div(&coeff)?);
    let rhs = NcPoly::monomial(lead.clone(), Scalar::one()).sub(&rel);
    debug_assert!(rhs.terms.keys().all(|w| *w < lead));
    Ok(Some(Rule {
        name: name.to_string(),
        lhs: lead,
        rhs,
    }))
}

/// First (position, rule index) at which some rule's left-hand side
/// occurs as a contiguous subword of `tail`.
fn find_reduction(rules: &[Rule], tail: &[u16]) -> Option<(usize, usize)> {
    for pos in 0..tail.len() {
        for (ri, rule) in rules.iter().enumerate() {
            let l = rule.lhs.tail.len();
            if pos + l <= tail.len() && tail[pos..pos + l] == rule.lhs.tail[..] {
                return Some((pos, ri));
            }
        }
    }
    None
}

/// `k^c * poly`: adds exponents, no crossing factor since the Cartan part
/// goes to the far left.
fn prepend_cartan(alg: &Algebra, c: &CartanVec, poly: &NcPoly) -> NcPoly {
    if c.iter().all(|e| *e == 0) {
        return poly.clone();
    }
    let mut out = NcPoly::zero();
    for (w, k) in &poly.terms {
        let mut cartan = w.cartan.clone();
        for (i, e) in c.iter().enumerate() {
            cartan[i] += e;
        }
        out.insert_add(alg.word(cartan, w.tail.clone()), k.clone());
    }
    out
}

fn nf_tail(
    alg: &Algebra,
    rules: &[Rule],
    cache: Option<&RwLock<std::collections::HashMap<TailVec, NcPoly>>>,
    tail: &TailVec,
    steps: &mut usize,
    max_steps: usize,
) -> Result<NcPoly, RewriteError> {
    if let Some(c) = cache {
        if let Some(hit) = c.read().unwrap().get(tail) {
            return Ok(hit.clone());
        }
    }
    let result = match find_reduction(rules, tail) {
        None => NcPoly::monomial(alg.word_from_tail(tail), Scalar::one()),
        Some((pos, ri)) => {
            *steps += 1;
            if *steps > max_steps {
                return Err(RewriteError::ReductionDiverged(max_steps));
            }
            let rule = &rules[ri];
            let l = rule.lhs.tail.len();
            let left = NcPoly::monomial(alg.word_from_tail(&tail[..pos]), Scalar::one());
            let right = NcPoly::monomial(alg.word_from_tail(&tail[pos + l..]), Scalar::one());
            let repl = left.mul(&rule.rhs, alg).mul(&right, alg);
            let mut out = NcPoly::zero();
            for (w, k) in &repl.terms {
                let sub = nf_tail(alg, rules, cache, &w.tail, steps, max_steps)?;
                let sub = prepend_cartan(alg, &w.cartan, &sub);
                for (w2, k2) in sub.terms {
                    out.insert_add(w2, k2.mul(k));
                }
            }
            out
        }
    };
    if let Some(c) = cache {
        c.write()
            .unwrap()
            .insert(tail.clone(), result.clone());
    }
    Ok(result)
}

fn nf_poly(
    alg: &Algebra,
    rules: &[Rule],
    cache: Option<&RwLock<std::collections::HashMap<TailVec, NcPoly>>>,
    p: &NcPoly,
    max_steps: usize,
) -> Result<NcPoly, RewriteError> {
    let mut steps = 0usize;
    let mut out = NcPoly::zero();
    for (w, c) in &p.terms {
        let sub = nf_tail(alg, rules, cache, &w.tail, &mut steps, max_steps)?;
        let sub = prepend_cartan(alg, &w.cartan, &sub);
        for (w2, c2) in sub.terms {
            out.insert_add(w2, c2.mul(c));
        }
    }
    Ok(out)
}

impl RewriteSystem {
    pub fn new(alg: Algebra, rules: Vec<Rule>) -> RewriteSystem {
        RewriteSystem {
            alg,
            rules,
            max_steps: CompletionConfig::default().max_steps,
            completed_to: 0,
            frontier_overlaps: 0,
            unresolved: Vec::new(),
            cache: RwLock::new(Default::default()),
        }
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, RewriteError> {
        nf_poly(&self.alg, &self.rules, Some(&self.cache), p, self.max_steps)
    }

    pub fn is_zero_mod(&self, p: &NcPoly) -> Result<bool, RewriteError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Leading-term reduction loop that records every replacement, so the
    /// result can be certified by [`replay_trace`].
    pub fn normal_form_traced(&self, p: &NcPoly) -> Result<(NcPoly, Trace), RewriteError> {
        let mut work = p.clone();
        let mut out = NcPoly::zero();
        let mut trace = Trace::default();
        let mut steps = 0usize;
        while let Some((w, c)) = work.leading().map(|(w, c)| (w.clone(), c.clone())) {
            match find_reduction(&self.rules, &w.tail) {
                None => {
                    work.terms.remove(&w);
                    out.insert_add(w, c);
                }
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > self.max_steps {
                        return Err(RewriteError::ReductionDiverged(self.max_steps));
                    }
                    let rule = &self.rules[ri];
                    let l = rule.lhs.tail.len();
                    let left: TailVec = w.tail[..pos].iter().copied().collect();
                    let right: TailVec = w.tail[pos + l..].iter().copied().collect();
                    // subtract coeff * k^c L (lhs - rhs) R
                    let lp = NcPoly::monomial(self.alg.word_from_tail(&left), Scalar::one());
                    let rp = NcPoly::monomial(self.alg.word_from_tail(&right), Scalar::one());
                    let lhs_poly = NcPoly::monomial(rule.lhs.clone(), Scalar::one());
                    let delta = lp
                        .mul(&lhs_poly.sub(&rule.rhs), &self.alg)
                        .mul(&rp, &self.alg);
                    let delta = prepend_cartan(&self.alg, &w.cartan, &delta).scale(&c);
                    work = work.sub(&delta);
                    trace.steps.push(TraceStep {
                        rule: ri,
                        coeff: c,
                        cartan: w.cartan.clone(),
                        left,
                        right,
                    });
                }
            }
        }
        Ok((out, trace))
    }
}

/// Independent check that `input = nf + sum of traced relation
/// multiples`.  Only multiplication in the free algebra is used, so a
/// successful replay certifies `input - nf` lies in the two-sided ideal.
pub fn replay_trace(
    system: &RewriteSystem,
    input: &NcPoly,
    nf: &NcPoly,
    trace: &Trace,
) -> bool {
    let alg = &system.alg;
    let mut acc = nf.clone();
    for step in &trace.steps {
        let rule = match system.rules.get(step.rule) {
            Some(r) => r,
            None => return false,
        };
        let lp = NcPoly::monomial(alg.word_from_tail(&step.left), Scalar::one());
        let rp = NcPoly::monomial(alg.word_from_tail(&step.right), Scalar::one());
        let rel = NcPoly::monomial(rule.lhs.clone(), Scalar::one()).sub(&rule.rhs);
        let delta = lp.mul(&rel, alg).mul(&rp, alg);
        let delta = prepend_cartan(alg, &step.cartan, &delta).scale(&step.coeff);
        acc = acc.add(&delta);
    }
    acc == *input
}

impl Presentation {
    /// Orient every relation; no completion.
    pub fn orient_all(&self) -> Result<Vec<Rule>, RewriteError> {
        let mut rules = Vec::new();
        for (name, rel) in &self.relations {
            if let Some(r) = orient(&self.alg, name, rel)? {
                rules.push(r);
            }
        }
        Ok(rules)
    }

    /// Knuth-Bendix completion up to the configured bounds, followed by
    /// inter-reduction of right-hand sides.
    pub fn complete(&self, cfg: &CompletionConfig) -> Result<RewriteSystem, RewriteError> {
        let alg = &self.alg;
        let mut rules = self.orient_all()?;
        // Deduplicate identical leading words up front.
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        rules.dedup_by(|a, b| a.lhs == b.lhs && a.rhs == b.rhs);

        let mut queue: std::collections::VecDeque<(usize, usize)> = (0..rules.len())
            .flat_map(|i| (0..rules.len()).map(move |j| (i, j)))
            .collect();
        let mut pairs = 0usize;
        let mut skipped = 0usize;
        let mut pending: Vec<(String, NcPoly)> = Vec::new();
        // Memo cache for the current rule set; invalidated on every new rule.
        let cache: RwLock<std::collections::HashMap<TailVec, NcPoly>> =
            RwLock::new(Default::default());
        while let Some((i, j)) = queue.pop_front() {
            pairs += 1;
            if pairs > cfg.max_pairs {
                return Err(RewriteError::CompletionDiverged(format!(
                    "more than {} critical pairs",
                    cfg.max_pairs
                )));
            }
            let mut spolys: SmallVec<[NcPoly; 4]> = SmallVec::new();
            {
                let x = &rules[i].lhs.tail;
                let y = &rules[j].lhs.tail;
                // proper overlap: suffix of x = prefix of y
                for l in 1..x.len().min(y.len()) {
                    if x[x.len() - l..] == y[..l] {
                        if x.len() + y.len() - l > cfg.max_overlap_len {
                            skipped += 1;
                            continue;
                        }
                        let a = NcPoly::monomial(alg.word_from_tail(&x[..x.len() - l]), Scalar::one());
                        let b = NcPoly::monomial(alg.word_from_tail(&y[l..]), Scalar::one());
                        let via_i = rules[i].rhs.mul(&b, alg);
                        let via_j = a.mul(&rules[j].rhs, alg);
                        spolys.push(via_i.sub(&via_j));
                    }
                }
                // containment: y inside x
                if i != j && y.len() < x.len() && x.len() <= cfg.max_overlap_len {
                    for pos in 0..=x.len() - y.len() {
                        if x[pos..pos + y.len()] == y[..] {
                            let a = NcPoly::monomial(alg.word_from_tail(&x[..pos]), Scalar::one());
                            let b = NcPoly::monomial(
                                alg.word_from_tail(&x[pos + y.len()..]),
                                Scalar::one(),
                            );
                            let via_j = a.mul(&rules[j].rhs, alg).mul(&b, alg);
                            spolys.push(rules[i].rhs.sub(&via_j));
                        }
                    }
                }
            }
            let name = format!("cp({},{})", rules[i].name, rules[j].name);
            let mut work: Vec<(String, NcPoly)> =
                spolys.into_iter().map(|sp| (name.clone(), sp)).collect();
            while let Some((nm, sp)) = work.pop() {
                let nf = nf_poly(alg, &rules, Some(&cache), &sp, cfg.max_steps)?;
                if nf.is_zero() {
                    continue;
                }
                match orient(alg, &nm, &nf) {
                    // Leading coefficient divisible by eta: cannot be
                    // oriented in the unit-leading regime.  Park it; it
                    // usually reduces to zero once later rules arrive.
                    Err(RewriteError::NonUnitLeading(_)) => {
                        pending.push((nm, nf));
                        continue;
                    }
                    Err(e) => return Err(e),
                    Ok(None) => continue,
                    Ok(Some(rule)) => {
                        if cfg.verbose {
                            eprintln!(
                                "rule {}: {} (lhs len {}, rhs {} terms)",
                                rules.len(),
                                rule.name,
                                rule.lhs.tail.len(),
                                rule.rhs.terms.len()
                            );
                        }
                        let idx = rules.len();
                        rules.push(rule);
                        cache.write().unwrap().clear();
                        if rules.len() > cfg.max_rules {
                            return Err(RewriteError::CompletionDiverged(format!(
                                "more than {} rules",
                                cfg.max_rules
                            )));
                        }
                        for k in 0..=idx {
                            queue.push_back((k, idx));
                            if k != idx {
                                queue.push_back((idx, k));
                            }
                        }
                        // New rule may unblock parked elements.
                        work.append(&mut pending);
                    }
                }
            }
        }

        // Inter-reduce: drop rules whose lhs is reducible by another rule
        // (their content is recoverable from the critical pairs already
        // processed), then normal-form every rhs.
        let mut keep: Vec<Rule> = Vec::new();
        for (idx, rule) in rules.iter().enumerate() {
            let others: Vec<Rule> = rules
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, r)| r.clone())
                .collect();
            if find_reduction(&others, &rule.lhs.tail).is_none() {
                keep.push(rule.clone());
            }
        }
        let snapshot = keep.clone();
        let cache2: RwLock<std::collections::HashMap<TailVec, NcPoly>> =
            RwLock::new(Default::default());
        for rule in keep.iter_mut() {
            rule.rhs = nf_poly(alg, &snapshot, Some(&cache2), &rule.rhs, cfg.max_steps)?;
        }
        let mut system = RewriteSystem::new(alg.clone(), keep);
        system.max_steps = cfg.max_steps;
        system.completed_to = cfg.max_overlap_len;
        system.frontier_overlaps = skipped;
        // Parked non-orientable elements must vanish under the final rules;
        // any survivor is a genuine unresolved ambiguity.
        for (nm, el) in pending {
            let nf = system.normal_form(&el)?;
            if !nf.is_zero() {
                system
                    .unresolved
                    .push(format!("{}: {}", nm, dump(alg, &nf)));
            }
        }
        Ok(system)
    }
}

/// Convenience: reduce each relation of `other` modulo `system`; returns
/// the names of relations that do not reduce to zero.
pub fn nonreducing_relations(
    system: &RewriteSystem,
    other: &[(String, NcPoly)],
) -> Result<Vec<String>, RewriteError> {
    let mut bad = Vec::new();
    for (name, rel) in other {
        if !system.is_zero_mod(rel)? {
            bad.push(name.clone());
        }
    }
    Ok(bad)
}

/// Map from words to scalars for inspection output.
pub fn term_count(p: &NcPoly) -> usize {
    p.terms.len()
}

#[allow(dead_code)]
fn dump(alg: &Algebra, p: &NcPoly) -> String {
    crate::freealg::NcPolyDisplay { alg, poly: p }.to_string()
}

pub type TermMap = BTreeMap<Word, Scalar>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{CartanGen, GenInfo};
    use crate::scalar::{rint, Scalar};
    use crate::weights::{BaseAlgebra, RootDatum, Weight};

    fn uq_sl2() -> Presentation {
        let datum = RootDatum::for_base(BaseAlgebra::Sl2);
        let alpha = Weight::simple(1, 0);
        let alg = Algebra {
            cartan: vec![CartanGen {
                name: "k[a]".into(),
                weight: alpha.clone(),
            }],
            tail: vec![
                GenInfo {
                    name: "e[-a]".into(),
                    weight: alpha.neg(),
                    parity: false,
                    order_weight: 1,
                },
                GenInfo {
                    name: "e[a]".into(),
                    weight: alpha.clone(),
                    parity: false,
                    order_weight: 1,
                },
            ],
            params: vec![],
            datum,
        };
        let e = NcPoly::gen(&alg, 1);
        let f = NcPoly::gen(&alg, 0);
        let k = NcPoly::cartan_monomial(&alg, &[1]);
        let kinv = NcPoly::cartan_monomial(&alg, &[-1]);
        let qqi = Scalar::q_minus_qinv();
        let rel = e
            .mul(&f, &alg)
            .sub(&f.mul(&e, &alg))
            .sub(&k.sub(&kinv).scale(&Scalar::one().div(&qqi).unwrap()));
        Presentation {
            alg,
            relations: vec![("ef".into(), rel)],
        }
    }

    #[test]
    fn orient_uq_sl2() {
        let p = uq_sl2();
        let rules = p.orient_all().unwrap();
        assert_eq!(rules.len(), 1);
        // leader is e f (indices [1,0]), Cartan-free, unit leading coeff
        assert_eq!(rules[0].lhs.tail.as_slice(), &[1u16, 0]);
        assert!(rules[0].lhs.cartan.iter().all(|e| *e == 0));
        assert!(rules[0].rhs.terms.keys().all(|w| *w < rules[0].lhs));
    }

    #[test]
    fn sl2_completion_is_trivial() {
        let p = uq_sl2();
        let sys = p.complete(&CompletionConfig::default()).unwrap();
        assert_eq!(sys.rules.len(), 1);
    }

    #[test]
    fn nf_matches_textbook_commutator_formula() {
        // [e, f^n] = [n] f^{n-1} (q^{1-n} k - q^{n-1} k^{-1})/(q - q^{-1})
        let p = uq_sl2();
        let sys = p.complete(&CompletionConfig::default()).unwrap();
        let alg = &sys.alg;
        let e = NcPoly::gen(alg, 1);
        let f = NcPoly::gen(alg, 0);
        let qqi_inv = Scalar::one().div(&Scalar::q_minus_qinv()).unwrap();
        for n in 1..=4u32 {
            let mut fn_pow = NcPoly::one(alg);
            for _ in 0..n {
                fn_pow = fn_pow.mul(&f, alg);
            }
            let lhs = e
                .mul(&fn_pow, alg)
                .sub(&fn_pow.mul(&e, alg));
            let mut fnm1 = NcPoly::one(alg);
            for _ in 0..n - 1 {
                fnm1 = fnm1.mul(&f, alg);
            }
            let k = NcPoly::cartan_monomial(alg, &[1]);
            let kinv = NcPoly::cartan_monomial(alg, &[-1]);
            let middle = k
                .scale(&Scalar::q_power(&rint(1 - n as i64)).unwrap())
                .sub(&kinv.scale(&Scalar::q_power(&rint(n as i64 - 1)).unwrap()));
            let rhs = fnm1
                .mul(&middle, alg)
                .scale(&Scalar::q_bracket(&rint(n as i64)).unwrap())
                .scale(&qqi_inv);
            let diff = lhs.sub(&rhs);
            assert!(sys.is_zero_mod(&diff).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn ideal_membership_of_products() {
        let p = uq_sl2();
        let sys = p.complete(&CompletionConfig::default()).unwrap();
        let alg = &sys.alg;
        let rel = p.relations[0].1.clone();
        let e = NcPoly::gen(alg, 1);
        let f = NcPoly::gen(alg, 0);
        let k = NcPoly::cartan_monomial(alg, &[1]);
        assert!(sys.is_zero_mod(&rel).unwrap());
        assert!(sys.is_zero_mod(&e.mul(&rel, alg).mul(&f, alg)).unwrap());
        assert!(sys
            .is_zero_mod(&k.mul(&rel, alg).mul(&rel, alg))
            .unwrap());
        // non-members stay nonzero
        assert!(!sys.is_zero_mod(&e).unwrap());
        assert!(!sys.is_zero_mod(&e.mul(&f, alg)).unwrap());
    }

    #[test]
    fn traced_nf_replays() {
        let p = uq_sl2();
        let sys = p.complete(&CompletionConfig::default()).unwrap();
        let alg = &sys.alg;
        let e = NcPoly::gen(alg, 1);
        let f = NcPoly::gen(alg, 0);
        let input = e
            .mul(&f, alg)
            .mul(&e, alg)
            .mul(&f, alg)
            .add(&e.scale(&Scalar::eta()));
        let (nf, trace) = sys.normal_form_traced(&input).unwrap();
        assert!(!trace.steps.is_empty());
        assert!(replay_trace(&sys, &input, &nf, &trace));
        // the two reduction strategies agree
        assert_eq!(nf, sys.normal_form(&input).unwrap());
        // tampering with the trace is detected
        let mut bad = trace.clone();
        bad.steps[0].coeff = bad.steps[0].coeff.add(&Scalar::one());
        assert!(!replay_trace(&sys, &input, &nf, &bad));
    }

    /// Toy system whose completion must add a rule: x has order weight 2,
    /// y weight 1, with yy -> x and yxy -> x.
    fn toy() -> Presentation {
        let datum = RootDatum::for_base(BaseAlgebra::Sl2);
        let zero = Weight::zero(1);
        let alg = Algebra {
            cartan: vec![],
            tail: vec![
                GenInfo {
                    name: "x".into(),
                    weight: zero.clone(),
                    parity: false,
                    order_weight: 2,
                },
                GenInfo {
                    name: "y".into(),
                    weight: zero.clone(),
                    parity: false,
                    order_weight: 1,
                },
            ],
            params: vec![],
            datum,
        };
        let x = NcPoly::gen(&alg, 0);
        let y = NcPoly::gen(&alg, 1);
        let r1 = y.mul(&y, &alg).sub(&x);
        let r2 = y.mul(&x, &alg).mul(&y, &alg).sub(&x);
        Presentation {
            alg,
            relations: vec![("r1".into(), r1), ("r2".into(), r2)],
        }
    }

    #[test]
    fn completion_adds_overlap_rules() {
        let p = toy();
        let base = p.orient_all().unwrap().len();
        let sys = p.complete(&CompletionConfig::default()).unwrap();
        assert!(sys.rules.len() > base);
        // both original relations lie in the completed ideal
        for (_, rel) in &p.relations {
            assert!(sys.is_zero_mod(rel).unwrap());
        }
        // confluence on the witness overlap word y y x y
        let alg = &sys.alg;
        let y = NcPoly::gen(alg, 1);
        let x = NcPoly::gen(alg, 0);
        let w = y.mul(&y, alg).mul(&x, alg).mul(&y, alg);
        let via_r1 = x.mul(&x, alg).mul(&y, alg); // (yy)xy -> x x y
        let via_r2 = y.mul(&x, alg); // y(yxy) -> y x
        assert_eq!(sys.normal_form(&w).unwrap(), sys.normal_form(&via_r1).unwrap());
        assert_eq!(sys.normal_form(&w).unwrap(), sys.normal_form(&via_r2).unwrap());
    }

    #[test]
    fn classical_sl2_system_is_confluent() {
        // U(sl2): h highest precedence; [h,e]=2e, [h,f]=-2f, [e,f]=h
        let datum = RootDatum::for_base(BaseAlgebra::Sl2);
        let zero = Weight::zero(1);
        let alg = Algebra {
            cartan: vec![],
            tail: vec![
                GenInfo { name: "f".into(), weight: zero.clone(), parity: false, order_weight: 1 },
                GenInfo { name: "e".into(), weight: zero.clone(), parity: false, order_weight: 1 },
                GenInfo { name: "h".into(), weight: zero.clone(), parity: false, order_weight: 1 },
            ],
            params: vec![],
            datum,
        };
        let f = NcPoly::gen(&alg, 0);
        let e = NcPoly::gen(&alg, 1);
        let h = NcPoly::gen(&alg, 2);
        let rels = vec![
            ("he".to_string(), h.mul(&e, &alg).sub(&e.mul(&h, &alg)).sub(&e.scale(&Scalar::from_int(2)))),
            ("hf".to_string(), h.mul(&f, &alg).sub(&f.mul(&h, &alg)).add(&f.scale(&Scalar::from_int(2)))),
            ("ef".to_string(), e.mul(&f, &alg).sub(&f.mul(&e, &alg)).sub(&h)),
        ];
        let p = Presentation { alg, relations: rels };
        let sys = p.complete(&CompletionConfig::default()).unwrap();
        assert_eq!(sys.rules.len(), 3);
        // Casimir-type element: nf of e f + f e + h^2/2 is PBW-sorted
        let alg = &sys.alg;
        let c = e
            .mul(&f, alg)
            .add(&f.mul(&e, alg))
            .add(&h.mul(&h, alg).scale(&crate::scalar::Scalar::from_rat(crate::scalar::rat(1, 2))));
        let nf = sys.normal_form(&c).unwrap();
        // 2 f e + h + h^2 / 2
        let expect = f
            .mul(&e, alg)
            .scale(&Scalar::from_int(2))
            .add(&h)
            .add(&h.mul(&h, alg).scale(&Scalar::from_rat(crate::scalar::rat(1, 2))));
        assert_eq!(nf, expect);
    }
}
