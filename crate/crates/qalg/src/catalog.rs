//! Curated presentations: quantized enveloping algebras `U_q(g)`, their
//! half-loop extensions `U_q(g[u]~)`, Drinfeldians `D_{q eta}(g)` (both
//! the generic constructor and the explicit rank-2 / super catalogs), the
//! classical loop presentations and the expected Yangian degenerations,
//! plus the `T_a` automorphism families.

use thiserror::Error;

use crate::freealg::{
    apply_antihom, apply_hom, AlgError, Algebra, CartanGen, GenInfo, NcPoly, TensorPoly,
};
use crate::hopf::{reduce_tensor, CheckOutcome, HopfStructure, VerificationReport};
use crate::rewrite::{CompletionConfig, Presentation, RewriteError, RewriteSystem};
use crate::scalar::{rat, Rat, Scalar, ScalarError};
use crate::weights::{BaseAlgebra, RootDatum, Weight, WeightError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown algebra id `{0}` (expected family:base)")]
    UnknownId(String),
    #[error("family {family} is not defined for base {base}")]
    UnsupportedBase { family: String, base: String },
    #[error("family {0} has no affine generator")]
    UnsupportedFamily(String),
    #[error("etilde is not homogeneous of weight -theta")]
    WrongWeightEtilde,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

// ---------------------------------------------------------------------------
// Identifiers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Uq,
    UqLoop,
    ClassicalLoop,
    DrinfeldianGeneric,
    DrinfeldianExplicit,
    YangianExpected,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Uq,
        Family::UqLoop,
        Family::ClassicalLoop,
        Family::DrinfeldianGeneric,
        Family::DrinfeldianExplicit,
        Family::YangianExpected,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Uq => "uq",
            Family::UqLoop => "uq_loop",
            Family::ClassicalLoop => "classical_loop",
            Family::DrinfeldianGeneric => "drinfeldian_generic",
            Family::DrinfeldianExplicit => "drinfeldian_explicit",
            Family::YangianExpected => "yangian_expected",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "uq" => Some(Family::Uq),
            "uq_loop" => Some(Family::UqLoop),
            "classical_loop" => Some(Family::ClassicalLoop),
            "drinfeldian_generic" => Some(Family::DrinfeldianGeneric),
            "drinfeldian" | "drinfeldian_explicit" => Some(Family::DrinfeldianExplicit),
            "yangian" | "yangian_expected" => Some(Family::YangianExpected),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraId {
    pub family: Family,
    pub base: BaseAlgebra,
}

impl AlgebraId {
    pub fn new(family: Family, base: BaseAlgebra) -> AlgebraId {
        AlgebraId { family, base }
    }

    pub fn name(&self) -> String {
        format!("{}:{}", self.family.name(), self.base.name())
    }

    /// The explicit Drinfeldian and Yangian catalogs cover c2, g2, osp12
    /// only; everything else is defined for all four bases.
    pub fn is_supported(&self) -> bool {
        match self.family {
            Family::DrinfeldianExplicit | Family::YangianExpected => {
                self.base != BaseAlgebra::Sl2
            }
            _ => true,
        }
    }

    pub fn parse(s: &str) -> Result<AlgebraId, CatalogError> {
        let bad = || CatalogError::UnknownId(s.to_string());
        let (fam, base) = s.split_once(':').ok_or_else(bad)?;
        let family = Family::parse(fam).ok_or_else(bad)?;
        let base = BaseAlgebra::parse(base).ok_or_else(bad)?;
        let id = AlgebraId { family, base };
        if !id.is_supported() {
            return Err(CatalogError::UnsupportedBase {
                family: family.name().to_string(),
                base: base.name().to_string(),
            });
        }
        Ok(id)
    }

    /// Every supported id, in canonical (family, base) order.
    pub fn all() -> Vec<AlgebraId> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for base in BaseAlgebra::ALL {
                let id = AlgebraId { family, base };
                if id.is_supported() {
                    out.push(id);
                }
            }
        }
        out
    }
}

impl std::fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A candidate affine substitution element: homogeneous of weight -theta.
#[derive(Debug, Clone)]
pub struct EtildeChoice {
    pub label: String,
    pub expression: NcPoly,
}

/// Value of the coproduct/antipode parameter of the generic Drinfeldian.
#[derive(Debug, Clone)]
pub enum AParam {
    /// `a = tau = eta/(q - q^-1)`; the default, pinned by the catalogs.
    Tau,
    /// `a` left as a symbolic parameter.
    Symbolic,
    /// Any explicit scalar.
    Custom(Scalar),
}

impl AParam {
    fn scalar(&self) -> Scalar {
        match self {
            AParam::Tau => Scalar::tau(),
            AParam::Symbolic => Scalar::param("a"),
            AParam::Custom(s) => s.clone(),
        }
    }
}

/// A built catalog entry: presentation, Hopf data and (for Drinfeldians)
/// the substitution element used.
#[derive(Debug, Clone)]
pub struct Catalogued {
    pub id: AlgebraId,
    pub pres: Presentation,
    pub hopf: HopfStructure,
    pub etilde: Option<EtildeChoice>,
}

impl Catalogued {
    pub fn complete(&self, cfg: &CompletionConfig) -> Result<RewriteSystem, RewriteError> {
        self.pres.complete(cfg)
    }
}

pub fn build(id: AlgebraId) -> Result<Catalogued, CatalogError> {
    match id.family {
        Family::Uq => build_uq(id.base),
        Family::UqLoop => build_uq_loop(id.base),
        Family::ClassicalLoop => build_classical_loop(id.base),
        Family::DrinfeldianGeneric => build_drinfeldian_generic(id.base, None, AParam::Tau),
        Family::DrinfeldianExplicit => build_drinfeldian_explicit(id.base),
        Family::YangianExpected => build_yangian_expected(id.base),
    }
}

// ---------------------------------------------------------------------------
// Generator tables
// ---------------------------------------------------------------------------

/// Signed root word such as `-a-2b` or `d-2a-3b`.
fn root_label(datum: &RootDatum, delta: i64, coeffs: &[i64]) -> String {
    fn push(s: &mut String, c: i64, name: &str) {
        if c == 0 {
            return;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        let a = c.abs();
        if a != 1 {
            s.push_str(&a.to_string());
        }
        s.push_str(name);
    }
    let mut s = String::new();
    push(&mut s, delta, "d");
    for (i, c) in coeffs.iter().enumerate() {
        push(&mut s, *c, datum.root_names[i]);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn theta_height(datum: &RootDatum) -> u32 {
    datum.theta_coeffs.iter().sum::<i64>() as u32
}

/// Tail layout shared by all quantum families: `f_1..f_r, e_1..e_r` and,
/// when affine, the degree-one generator at index `2r`.
fn quantum_algebra(datum: RootDatum, affine_prefix: Option<&str>) -> Algebra {
    let rank = datum.rank;
    let mut cartan = Vec::new();
    for (i, name) in datum.root_names.iter().enumerate() {
        cartan.push(CartanGen {
            name: format!("k[{}]", name),
            weight: Weight::simple(rank, i),
        });
    }
    let mut tail = Vec::new();
    for i in 0..rank {
        let mut unit = vec![0i64; rank];
        unit[i] = -1;
        tail.push(GenInfo {
            name: format!("e[{}]", root_label(&datum, 0, &unit)),
            weight: Weight::simple(rank, i).neg(),
            parity: datum.parity[i],
            order_weight: 1,
        });
    }
    for i in 0..rank {
        let mut unit = vec![0i64; rank];
        unit[i] = 1;
        tail.push(GenInfo {
            name: format!("e[{}]", root_label(&datum, 0, &unit)),
            weight: Weight::simple(rank, i),
            parity: datum.parity[i],
            order_weight: 1,
        });
    }
    if let Some(prefix) = affine_prefix {
        cartan.push(CartanGen {
            name: "k[d]".into(),
            weight: datum.delta(),
        });
        let neg_theta: Vec<i64> = datum.theta_coeffs.iter().map(|c| -c).collect();
        let parity = datum.weight_parity(&datum.theta());
        tail.push(GenInfo {
            name: format!("{}[{}]", prefix, root_label(&datum, 1, &neg_theta)),
            weight: datum.delta_minus_theta(),
            parity,
            // Dominates any product of theta-many simple-root letters, so
            // relation right-hand sides stay below their leaders.
            order_weight: theta_height(&datum) + 1,
        });
    }
    Algebra {
        datum,
        cartan,
        tail,
        params: Vec::new(),
    }
}

/// Classical tail layout: `f, e, affine` at the quantum indices, followed
/// by `h_1..h_r, h_d`.
fn classical_algebra(datum: RootDatum, affine_prefix: &str) -> Algebra {
    let rank = datum.rank;
    let mut alg = quantum_algebra(datum, Some(affine_prefix));
    // Replace the affine generator name (same index, same weight).
    let datum = alg.datum.clone();
    for (i, name) in datum.root_names.iter().enumerate() {
        let _ = i;
        alg.tail.push(GenInfo {
            name: format!("h[{}]", name),
            weight: Weight::zero(rank),
            parity: false,
            order_weight: 1,
        });
    }
    alg.tail.push(GenInfo {
        name: "h[d]".into(),
        weight: Weight::zero(rank),
        parity: false,
        order_weight: 1,
    });
    alg.cartan.clear();
    alg
}

fn kmono(alg: &Algebra, kd: i32, simple: &[i32]) -> NcPoly {
    let mut exps: Vec<i32> = simple.to_vec();
    if alg.cartan.len() == simple.len() + 1 {
        exps.push(kd);
    } else {
        debug_assert_eq!(kd, 0);
    }
    NcPoly::cartan_monomial(alg, &exps)
}

/// Cartan exponents of `k_{delta-theta}^{sign}`.
fn affine_k_exps(alg: &Algebra, sign: i32) -> Vec<i32> {
    let mut exps: Vec<i32> = alg
        .datum
        .theta_coeffs
        .iter()
        .map(|c| -(*c as i32) * sign)
        .collect();
    exps.push(sign);
    exps
}

fn affine_k(alg: &Algebra, sign: i32) -> NcPoly {
    NcPoly::cartan_monomial(alg, &affine_k_exps(alg, sign))
}

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

fn qpow(r: Rat) -> Scalar {
    Scalar::q_power(&r).expect("exponent on the v-lattice")
}

fn qbr(r: Rat) -> Scalar {
    Scalar::q_bracket(&r).expect("exponent on the v-lattice")
}

fn vinv() -> Scalar {
    Scalar::one()
        .div(&Scalar::q_minus_qinv())
        .expect("q - q^-1 is a unit")
}

fn rmul(r: &Rat, n: i64, d: i64) -> Rat {
    r.clone() * rat(n, d)
}

fn sq(alg: &Algebra, p: &NcPoly) -> NcPoly {
    p.mul(p, alg)
}

fn cube(alg: &Algebra, p: &NcPoly) -> NcPoly {
    p.mul(p, alg).mul(p, alg)
}

/// Iterated plain (super)commutator `(ad x)^n y`.
fn ad_power(x: &NcPoly, n: u32, y: &NcPoly, alg: &Algebra) -> Result<NcPoly, AlgError> {
    let mut acc = y.clone();
    for _ in 0..n {
        acc = x.commutator(&acc, alg)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// U_q(g)
// ---------------------------------------------------------------------------

/// Chevalley-Serre relations of `U_q(g)`; conjugation by the `k` is
/// structural and never stored.
fn uq_relations(alg: &Algebra) -> Result<Vec<(String, NcPoly)>, CatalogError> {
    let datum = &alg.datum;
    let r = datum.rank;
    let names = &datum.root_names;
    let inv = vinv();
    let mut rels = Vec::new();
    for i in 0..r {
        let e = NcPoly::gen(alg, r + i);
        let f = NcPoly::gen(alg, i);
        let mut plus = vec![0i32; r];
        plus[i] = 1;
        let mut minus = vec![0i32; r];
        minus[i] = -1;
        let rhs = kmono(alg, 0, &plus).sub(&kmono(alg, 0, &minus)).scale(&inv);
        rels.push((format!("ef[{}]", names[i]), e.commutator(&f, alg)?.sub(&rhs)));
    }
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let e = NcPoly::gen(alg, r + i);
                let f = NcPoly::gen(alg, j);
                rels.push((
                    format!("ef[{},{}]", names[i], names[j]),
                    e.commutator(&f, alg)?,
                ));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let n = (1 - datum.cartan[i][j]) as u32;
                let e_i = NcPoly::gen(alg, r + i);
                let e_j = NcPoly::gen(alg, r + j);
                rels.push((
                    format!("serre_e[{},{}]", names[i], names[j]),
                    e_i.ad_q_power(n, &e_j, alg)?,
                ));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let n = (1 - datum.cartan[i][j]) as u32;
                let f_i = NcPoly::gen(alg, i);
                let f_j = NcPoly::gen(alg, j);
                rels.push((
                    format!("serre_f[{},{}]", names[i], names[j]),
                    f_i.ad_q_power(n, &f_j, alg)?,
                ));
            }
        }
    }
    Ok(rels)
}

/// Standard Hopf data: `Delta f = f (x) k + 1 (x) f`, `Delta e = e (x) 1
/// + k^-1 (x) e`, `S e = -k e`, `S f = -f k^-1`, counit zero; the affine
/// generator follows the same pattern with `k_{delta-theta}`.
fn quantum_hopf(alg: &Algebra) -> HopfStructure {
    let r = alg.datum.rank;
    let one = NcPoly::one(alg);
    let mut coproduct = Vec::new();
    let mut antipode = Vec::new();
    let mut counit = Vec::new();
    for i in 0..r {
        let f = NcPoly::gen(alg, i);
        let mut plus = vec![0i32; r];
        plus[i] = 1;
        let mut minus = vec![0i32; r];
        minus[i] = -1;
        let k = kmono(alg, 0, &plus);
        let kinv = kmono(alg, 0, &minus);
        coproduct.push(TensorPoly::tensor(2, &[&f, &k]).add(&TensorPoly::tensor(2, &[&one, &f])));
        antipode.push(f.mul(&kinv, alg).neg());
        counit.push(Scalar::zero());
    }
    for i in 0..r {
        let e = NcPoly::gen(alg, r + i);
        let mut plus = vec![0i32; r];
        plus[i] = 1;
        let mut minus = vec![0i32; r];
        minus[i] = -1;
        let k = kmono(alg, 0, &plus);
        let kinv = kmono(alg, 0, &minus);
        coproduct.push(TensorPoly::tensor(2, &[&e, &one]).add(&TensorPoly::tensor(2, &[&kinv, &e])));
        antipode.push(k.mul(&e, alg).neg());
        counit.push(Scalar::zero());
    }
    if alg.tail.len() > 2 * r && alg.cartan.len() == r + 1 {
        let x = NcPoly::gen(alg, 2 * r);
        let k = affine_k(alg, 1);
        let kinv = affine_k(alg, -1);
        coproduct.push(TensorPoly::tensor(2, &[&x, &one]).add(&TensorPoly::tensor(2, &[&kinv, &x])));
        antipode.push(k.mul(&x, alg).neg());
        counit.push(Scalar::zero());
    }
    HopfStructure {
        coproduct,
        antipode,
        counit,
    }
}

pub fn build_uq(base: BaseAlgebra) -> Result<Catalogued, CatalogError> {
    let alg = quantum_algebra(RootDatum::for_base(base), None);
    let relations = uq_relations(&alg)?;
    let hopf = quantum_hopf(&alg);
    Ok(Catalogued {
        id: AlgebraId::new(Family::Uq, base),
        pres: Presentation { alg, relations },
        hopf,
        etilde: None,
    })
}

// ---------------------------------------------------------------------------
// U_q(g[u]~)
// ---------------------------------------------------------------------------

/// Indices `i` with `(alpha_i, theta) != 0`, i.e. those carrying the
/// degree-two mixed relation for non-sl2 bases.
fn theta_linked(datum: &RootDatum) -> Result<Vec<usize>, CatalogError> {
    let theta = datum.theta();
    let mut out = Vec::new();
    for i in 0..datum.rank {
        let c = datum.pairing(&Weight::simple(datum.rank, i), &theta)?;
        if !c.numer().sign().eq(&num_bigint::Sign::NoSign) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Left-hand sides of the affine relations, in catalog order: `xf[i]`
/// for each `i`, `xe[i]` with the affine Serre exponent, then the mixed
/// degree-two relation (degree-three for sl2).
fn affine_lhs(alg: &Algebra, x: &NcPoly) -> Result<Vec<(String, NcPoly)>, CatalogError> {
    let datum = &alg.datum;
    let r = datum.rank;
    let names = &datum.root_names;
    let mut rels = Vec::new();
    for i in 0..r {
        let f = NcPoly::gen(alg, i);
        rels.push((format!("xf[{}]", names[i]), f.commutator(x, alg)?));
    }
    for i in 0..r {
        let e = NcPoly::gen(alg, r + i);
        let n = datum.serre_exponent(i)?;
        rels.push((format!("xe[{}]", names[i]), e.ad_q_power(n, x, alg)?));
    }
    if datum.name == "sl2" {
        let e = NcPoly::gen(alg, r);
        let exx = e.q_commutator(x, alg)?.q_commutator(x, alg)?;
        rels.push((format!("xxx[{}]", names[0]), exx.q_commutator(x, alg)?));
    } else {
        for i in theta_linked(datum)? {
            let e = NcPoly::gen(alg, r + i);
            let exx = e.q_commutator(x, alg)?.q_commutator(x, alg)?;
            rels.push((format!("xx[{}]", names[i]), exx));
        }
    }
    Ok(rels)
}

pub fn build_uq_loop(base: BaseAlgebra) -> Result<Catalogued, CatalogError> {
    let alg = quantum_algebra(RootDatum::for_base(base), Some("e"));
    let mut relations = uq_relations(&alg)?;
    let x = NcPoly::gen(&alg, 2 * alg.datum.rank);
    relations.extend(affine_lhs(&alg, &x)?);
    let hopf = quantum_hopf(&alg);
    Ok(Catalogued {
        id: AlgebraId::new(Family::UqLoop, base),
        pres: Presentation { alg, relations },
        hopf,
        etilde: None,
    })
}

// ---------------------------------------------------------------------------
// Generic Drinfeldian
// ---------------------------------------------------------------------------

/// The catalog substitution elements: `k_{delta-theta}^{-1}` times the
/// lowest-root vector built from nested q-commutators (for osp12, the
/// square of the simple lowering generator).
pub fn paper_etilde(alg: &Algebra) -> Result<EtildeChoice, CatalogError> {
    let base = BaseAlgebra::parse(&alg.datum.name)
        .ok_or_else(|| CatalogError::UnknownId(alg.datum.name.to_string()))?;
    let kinv = affine_k(alg, -1);
    let (label, expression) = match base {
        BaseAlgebra::Sl2 => {
            let f = NcPoly::gen(alg, 0);
            ("k^-1[d-a]*e[-a]".to_string(), kinv.mul(&f, alg))
        }
        BaseAlgebra::C2 => {
            let f_a = NcPoly::gen(alg, 0);
            let f_b = NcPoly::gen(alg, 1);
            let e_mab = f_a.q_commutator(&f_b, alg)?;
            let e_ma2b = e_mab.q_commutator(&f_b, alg)?;
            ("k^-1[d-a-2b]*e[-a-2b]".to_string(), kinv.mul(&e_ma2b, alg))
        }
        BaseAlgebra::G2 => {
            let f_a = NcPoly::gen(alg, 0);
            let f_b = NcPoly::gen(alg, 1);
            let e_mab = f_b.q_commutator(&f_a, alg)?;
            let e_ma2b = f_b.q_commutator(&e_mab, alg)?;
            let e_m2a3b = e_ma2b.q_commutator(&e_mab, alg)?;
            (
                "k^-1[d-2a-3b]*e[-2a-3b]".to_string(),
                kinv.mul(&e_m2a3b, alg),
            )
        }
        BaseAlgebra::Osp12 => {
            let f = NcPoly::gen(alg, 0);
            ("e[-a]^2".to_string(), f.mul(&f, alg))
        }
    };
    Ok(EtildeChoice { label, expression })
}

/// Drinfeldian with the affine relations obtained by substituting
/// `tau * etilde` for the affine letter on the right-hand sides, reduced
/// in the completed `U_q(g)` subsystem so every coefficient is canonical.
pub fn build_drinfeldian_generic(
    base: BaseAlgebra,
    etilde: Option<EtildeChoice>,
    a_param: AParam,
) -> Result<Catalogued, CatalogError> {
    let alg = quantum_algebra(RootDatum::for_base(base), Some("xi"));
    let r = alg.datum.rank;
    let xi = NcPoly::gen(&alg, 2 * r);
    let et = match etilde {
        Some(e) => e,
        None => paper_etilde(&alg)?,
    };
    let (w, _) = et
        .expression
        .homogeneous_data(&alg)
        .ok_or(CatalogError::WrongWeightEtilde)?;
    if !w.add(&alg.datum.theta()).is_zero() {
        return Err(CatalogError::WrongWeightEtilde);
    }

    let uq_rels = uq_relations(&alg)?;
    let uq_sys = Presentation {
        alg: alg.clone(),
        relations: uq_rels.clone(),
    }
    .complete(&CompletionConfig::default())?;
    let tau = Scalar::tau();
    let names = &alg.datum.root_names;

    let mut relations = uq_rels;
    for i in 0..r {
        let f = NcPoly::gen(&alg, i);
        let lhs = f.commutator(&xi, &alg)?;
        let rhs = uq_sys.normal_form(&f.commutator(&et.expression, &alg)?.scale(&tau))?;
        relations.push((format!("xf[{}]", names[i]), lhs.sub(&rhs)));
    }
    for i in 0..r {
        let e = NcPoly::gen(&alg, r + i);
        let n = alg.datum.serre_exponent(i)?;
        let lhs = e.ad_q_power(n, &xi, &alg)?;
        let rhs = uq_sys.normal_form(&e.ad_q_power(n, &et.expression, &alg)?.scale(&tau))?;
        relations.push((format!("xe[{}]", names[i]), lhs.sub(&rhs)));
    }
    let tau2 = tau.mul(&tau);
    if base == BaseAlgebra::Sl2 {
        // Cubic mixed relation: expand [e, y, y, y] with y = xi - tau etilde.
        let e = NcPoly::gen(&alg, r);
        let b3 = |x: &NcPoly, y: &NcPoly, z: &NcPoly| -> Result<NcPoly, AlgError> {
            e.q_commutator(x, &alg)?
                .q_commutator(y, &alg)?
                .q_commutator(z, &alg)
        };
        let lhs = b3(&xi, &xi, &xi)?;
        let one_et = b3(&et.expression, &xi, &xi)?
            .add(&b3(&xi, &et.expression, &xi)?)
            .add(&b3(&xi, &xi, &et.expression)?);
        let two_et = b3(&et.expression, &et.expression, &xi)?
            .add(&b3(&et.expression, &xi, &et.expression)?)
            .add(&b3(&xi, &et.expression, &et.expression)?);
        let three_et = b3(&et.expression, &et.expression, &et.expression)?;
        let rhs = uq_sys.normal_form(
            &one_et
                .scale(&tau)
                .sub(&two_et.scale(&tau2))
                .add(&three_et.scale(&tau2.mul(&tau))),
        )?;
        relations.push((format!("xxx[{}]", names[0]), lhs.sub(&rhs)));
    } else {
        for i in theta_linked(&alg.datum)? {
            let e = NcPoly::gen(&alg, r + i);
            let b2 = |x: &NcPoly, y: &NcPoly| -> Result<NcPoly, AlgError> {
                e.q_commutator(x, &alg)?.q_commutator(y, &alg)
            };
            let lhs = b2(&xi, &xi)?;
            let one_et = b2(&et.expression, &xi)?.add(&b2(&xi, &et.expression)?);
            let two_et = b2(&et.expression, &et.expression)?;
            let rhs = uq_sys.normal_form(&one_et.scale(&tau).sub(&two_et.scale(&tau2)))?;
            relations.push((format!("xx[{}]", names[i]), lhs.sub(&rhs)));
        }
    }

    // Hopf data: the affine coproduct/antipode acquire the a-correction
    // built from the images of etilde under the subalgebra structure.
    let mut hopf = quantum_hopf(&alg);
    let a = a_param.scalar();
    let one = NcPoly::one(&alg);
    let kinv = affine_k(&alg, -1);
    let k = affine_k(&alg, 1);
    let delta_et: TensorPoly = apply_hom(&alg, &hopf.coproduct, &et.expression)?;
    let corr = delta_et
        .sub(&TensorPoly::tensor(2, &[&et.expression, &one]))
        .sub(&TensorPoly::tensor(2, &[&kinv, &et.expression]));
    let dx = TensorPoly::tensor(2, &[&xi, &one])
        .add(&TensorPoly::tensor(2, &[&kinv, &xi]))
        .add(&corr.scale(&a));
    hopf.coproduct[2 * r] = reduce_tensor(&uq_sys, &dx)?;
    let s_et = apply_antihom(&alg, &hopf.antipode, &et.expression)?;
    let sx = k
        .mul(&xi, &alg)
        .neg()
        .add(&s_et.add(&k.mul(&et.expression, &alg)).scale(&a));
    hopf.antipode[2 * r] = uq_sys.normal_form(&sx)?;
    hopf.counit[2 * r] = Scalar::zero();

    Ok(Catalogued {
        id: AlgebraId::new(Family::DrinfeldianGeneric, base),
        pres: Presentation { alg, relations },
        hopf,
        etilde: Some(et),
    })
}

// ---------------------------------------------------------------------------
// Explicit Drinfeldians
// ---------------------------------------------------------------------------

pub fn build_drinfeldian_explicit(base: BaseAlgebra) -> Result<Catalogued, CatalogError> {
    match base {
        BaseAlgebra::C2 => explicit_c2(),
        BaseAlgebra::G2 => explicit_g2(),
        BaseAlgebra::Osp12 => explicit_osp12(),
        BaseAlgebra::Sl2 => Err(CatalogError::UnsupportedBase {
            family: Family::DrinfeldianExplicit.name().to_string(),
            base: base.name().to_string(),
        }),
    }
}

fn explicit_c2() -> Result<Catalogued, CatalogError> {
    let alg = quantum_algebra(RootDatum::for_base(BaseAlgebra::C2), Some("xi"));
    let p = alg
        .datum
        .pairing(&Weight::simple(2, 0), &Weight::simple(2, 1))?;
    let eta = Scalar::eta();
    let v = Scalar::q_minus_qinv();
    let inv = vinv();
    let one = NcPoly::one(&alg);

    let f_a = NcPoly::gen(&alg, 0);
    let f_b = NcPoly::gen(&alg, 1);
    let e_a = NcPoly::gen(&alg, 2);
    let e_b = NcPoly::gen(&alg, 3);
    let xi = NcPoly::gen(&alg, 4);
    let e_mab = f_a.q_commutator(&f_b, &alg)?;
    let e_ma2b = e_mab.q_commutator(&f_b, &alg)?;
    let kinv = affine_k(&alg, -1);
    let k = affine_k(&alg, 1);

    let mut relations = uq_relations(&alg)?;
    // [f_a, xi] = -eta q^(-p/2) [p/2] k^-1_{d-a-2b} e_{-a-b}^2
    let c_xf_a = eta
        .mul(&qpow(rmul(&p, -1, 2)))
        .mul(&qbr(rmul(&p, 1, 2)))
        .neg();
    relations.push((
        "xf[a]".into(),
        f_a.commutator(&xi, &alg)?
            .sub(&kinv.mul(&sq(&alg, &e_mab), &alg).scale(&c_xf_a)),
    ));
    relations.push(("xf[b]".into(), f_b.commutator(&xi, &alg)?));
    // [e_a, xi]_q = eta q^(3p/2) [p][p/2] k^-1_{d-a-2b} k_a e_{-b}^2
    let c_xe_a = eta
        .mul(&qpow(rmul(&p, 3, 2)))
        .mul(&qbr(p.clone()))
        .mul(&qbr(rmul(&p, 1, 2)));
    relations.push((
        "xe[a]".into(),
        e_a.q_commutator(&xi, &alg)?
            .sub(&kmono(&alg, -1, &[2, 2]).mul(&sq(&alg, &f_b), &alg).scale(&c_xe_a)),
    ));
    relations.push(("xe[b]".into(), e_b.ad_q_power(3, &xi, &alg)?));
    relations.push((
        "xx[a]".into(),
        e_a.q_commutator(&xi, &alg)?.q_commutator(&xi, &alg)?,
    ));

    let mut hopf = quantum_hopf(&alg);
    // Coproduct correction, with k^-1_{d-a-2b} folded into each factor.
    let t1 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&e_ma2b, &alg),
            &kmono(&alg, -1, &[2, 4]).sub(&one).scale(&inv),
        ],
    );
    let t2 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&e_mab, &alg),
            &kmono(&alg, -1, &[2, 3]).mul(&f_b, &alg),
        ],
    )
    .scale(&qbr(p.clone()).neg());
    let c3 = v
        .mul(&qpow(rmul(&p, 3, 2)))
        .mul(&qbr(p.clone()))
        .mul(&qbr(rmul(&p, 1, 2)));
    let t3 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&f_a, &alg),
            &kmono(&alg, -1, &[2, 2]).mul(&sq(&alg, &f_b), &alg),
        ],
    )
    .scale(&c3);
    hopf.coproduct[4] = TensorPoly::tensor(2, &[&xi, &one])
        .add(&TensorPoly::tensor(2, &[&kinv, &xi]))
        .add(&t1.add(&t2).add(&t3).scale(&eta));
    // Antipode correction, right-multiplied by k^-1_{a+2b} k_{d-a-2b}.
    let s1 = e_ma2b
        .mul(&kmono(&alg, -1, &[2, 4]).sub(&one), &alg)
        .scale(&inv);
    let s2 = e_mab.mul(&f_b, &alg).scale(&qbr(p.clone()).neg());
    let c_s3 = v
        .mul(&qpow(rmul(&p, 1, 2)))
        .mul(&qbr(p.clone()))
        .mul(&qbr(rmul(&p, 1, 2)))
        .neg();
    let s3 = f_a.mul(&sq(&alg, &f_b), &alg).scale(&c_s3);
    hopf.antipode[4] = k.mul(&xi, &alg).neg().add(
        &s1.add(&s2)
            .add(&s3)
            .mul(&kmono(&alg, 1, &[-2, -4]), &alg)
            .scale(&eta),
    );
    hopf.counit[4] = Scalar::zero();

    let etilde = EtildeChoice {
        label: "k^-1[d-a-2b]*e[-a-2b]".into(),
        expression: kinv.mul(&e_ma2b, &alg),
    };
    Ok(Catalogued {
        id: AlgebraId::new(Family::DrinfeldianExplicit, BaseAlgebra::C2),
        pres: Presentation { alg, relations },
        hopf,
        etilde: Some(etilde),
    })
}

fn explicit_g2() -> Result<Catalogued, CatalogError> {
    let alg = quantum_algebra(RootDatum::for_base(BaseAlgebra::G2), Some("xi"));
    let p = alg
        .datum
        .pairing(&Weight::simple(2, 0), &Weight::simple(2, 1))?;
    let eta = Scalar::eta();
    let v = Scalar::q_minus_qinv();
    let inv = vinv();
    let one = NcPoly::one(&alg);

    let f_a = NcPoly::gen(&alg, 0);
    let f_b = NcPoly::gen(&alg, 1);
    let e_a = NcPoly::gen(&alg, 2);
    let e_b = NcPoly::gen(&alg, 3);
    let xi = NcPoly::gen(&alg, 4);
    let e_mab = f_b.q_commutator(&f_a, &alg)?;
    let e_ma2b = f_b.q_commutator(&e_mab, &alg)?;
    let e_ma3b = f_b.q_commutator(&e_ma2b, &alg)?;
    let e_m2a3b = e_ma2b.q_commutator(&e_mab, &alg)?;
    let kinv = affine_k(&alg, -1);
    let k = affine_k(&alg, 1);

    // The four structure constants, as q-brackets of fractions of p.
    let ca = qbr(p.clone());
    let cb = qbr(rmul(&p, 2, 3));
    let cc = qbr(rmul(&p, 1, 3));
    let cd = qbr(rmul(&p, 2, 1));
    let cb_inv = Scalar::one().div(&cb)?;

    let mut relations = uq_relations(&alg)?;
    // [f_a, xi] = -eta (q - q^-1) q^(-p) b c K^-1 e_{-a-b}^3
    let c_xf_a = eta.mul(&v).mul(&qpow(rmul(&p, -1, 1))).mul(&cb).mul(&cc).neg();
    relations.push((
        "xf[a]".into(),
        f_a.commutator(&xi, &alg)?
            .sub(&kinv.mul(&cube(&alg, &e_mab), &alg).scale(&c_xf_a)),
    ));
    // [f_b, xi] = -eta q^(-p/3) a b^-1 c K^-1 e_{-a-2b}^2
    let c_xf_b = eta
        .mul(&qpow(rmul(&p, -1, 3)))
        .mul(&ca)
        .mul(&cb_inv)
        .mul(&cc)
        .neg();
    relations.push((
        "xf[b]".into(),
        f_b.commutator(&xi, &alg)?
            .sub(&kinv.mul(&sq(&alg, &e_ma2b), &alg).scale(&c_xf_b)),
    ));
    // (ad_q e_a)^2 xi = eta (q - q^-1) q^(-p) a b c d K^-1 k_a^-2 e_{-b}^3
    let c_xe_a = eta
        .mul(&v)
        .mul(&qpow(rmul(&p, -1, 1)))
        .mul(&ca)
        .mul(&cb)
        .mul(&cc)
        .mul(&cd);
    relations.push((
        "xe[a]".into(),
        e_a.ad_q_power(2, &xi, &alg)?
            .sub(&kmono(&alg, -1, &[0, 3]).mul(&cube(&alg, &f_b), &alg).scale(&c_xe_a)),
    ));
    // [e_b, xi]_q = -eta q^(p/3) a b K^-1 k_b e_{-a-b}^2
    let c_xe_b = eta.mul(&qpow(rmul(&p, 1, 3))).mul(&ca).mul(&cb).neg();
    relations.push((
        "xe[b]".into(),
        e_b.q_commutator(&xi, &alg)?
            .sub(&kmono(&alg, -1, &[2, 4]).mul(&sq(&alg, &e_mab), &alg).scale(&c_xe_b)),
    ));
    // [[e_a, xi]_q, xi]_q = eta^2 q^(-p) a b^-1 c^2 d K^-2 k_a^-1 e_{-a-2b}^3
    let c_xx_a = eta
        .mul(&eta)
        .mul(&qpow(rmul(&p, -1, 1)))
        .mul(&ca)
        .mul(&cb_inv)
        .mul(&cc)
        .mul(&cc)
        .mul(&cd);
    relations.push((
        "xx[a]".into(),
        e_a.q_commutator(&xi, &alg)?
            .q_commutator(&xi, &alg)?
            .sub(&kmono(&alg, -2, &[3, 6]).mul(&cube(&alg, &e_ma2b), &alg).scale(&c_xx_a)),
    ));

    let mut hopf = quantum_hopf(&alg);
    // Coproduct correction; K^-1 folded into each tensor factor.
    let t1 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&e_m2a3b, &alg),
            &kmono(&alg, -1, &[4, 6]).sub(&one).scale(&inv),
        ],
    );
    let t2 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&e_ma2b, &alg),
            &kmono(&alg, -1, &[3, 5]).mul(&e_mab, &alg),
        ],
    )
    .scale(&qpow(rmul(&p, -1, 3)).mul(&ca).neg());
    let t3 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&e_ma3b, &alg),
            &kmono(&alg, -1, &[3, 6]).mul(&f_a, &alg),
        ],
    )
    .scale(&qpow(rmul(&p, 4, 3)).mul(&Scalar::one().sub(&v.mul(&cb))));
    let t4 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&f_b.mul(&e_ma2b, &alg), &alg),
            &kmono(&alg, -1, &[3, 5]).mul(&f_a, &alg),
        ],
    )
    .scale(&v.mul(&ca).mul(&qpow(p.clone())).mul(&ca));
    let t5 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&f_b, &alg),
            &kmono(&alg, -1, &[2, 4]).mul(&sq(&alg, &e_mab), &alg),
        ],
    )
    .scale(&v.mul(&ca).mul(&qpow(rmul(&p, 1, 3))).mul(&cb));
    let t6 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&sq(&alg, &f_b), &alg),
            &kmono(&alg, -1, &[2, 5]).mul(&e_mab.mul(&f_a, &alg), &alg),
        ],
    )
    .scale(
        &v.mul(&v)
            .mul(&qpow(rmul(&p, 7, 3)))
            .mul(&ca)
            .mul(&ca)
            .mul(&cb)
            .neg(),
    );
    let t7 = TensorPoly::tensor(
        2,
        &[
            &kinv.mul(&cube(&alg, &f_b), &alg),
            &kmono(&alg, -1, &[2, 6]).mul(&sq(&alg, &f_a), &alg),
        ],
    )
    .scale(
        &v.mul(&v)
            .mul(&v)
            .mul(&qpow(rmul(&p, 4, 1)))
            .mul(&ca)
            .mul(&ca)
            .mul(&cb)
            .mul(&cc),
    );
    hopf.coproduct[4] = TensorPoly::tensor(2, &[&xi, &one])
        .add(&TensorPoly::tensor(2, &[&kinv, &xi]))
        .add(
            &t1.add(&t2)
                .add(&t3)
                .add(&t4)
                .add(&t5)
                .add(&t6)
                .add(&t7)
                .scale(&eta),
        );
    // Antipode correction, right-multiplied by k^-1_{2a+3b} k_{d-2a-3b}.
    let s1 = e_m2a3b
        .mul(&kmono(&alg, -1, &[4, 6]).sub(&one), &alg)
        .scale(&inv);
    let s2 = e_ma3b
        .mul(&f_a, &alg)
        .scale(&qpow(rmul(&p, 2, 3)).mul(&ca));
    let s3 = e_ma2b
        .mul(&e_mab, &alg)
        .scale(&qpow(rmul(&p, -1, 3)).mul(&ca));
    let s4 = e_ma3b
        .mul(&f_a, &alg)
        .scale(&qpow(rmul(&p, 2, 3)))
        .sub(&f_b.mul(&sq(&alg, &e_mab), &alg).scale(&qpow(rmul(&p, -1, 3))))
        .scale(&v.mul(&ca).mul(&cb));
    let s5 = f_b
        .mul(&e_ma2b.mul(&f_a, &alg), &alg)
        .scale(&qpow(rmul(&p, 1, 3)))
        .sub(
            &sq(&alg, &f_b)
                .mul(&e_mab.mul(&f_a, &alg), &alg)
                .scale(&qpow(rmul(&p, -1, 3))),
        )
        .scale(&v.mul(&v).mul(&ca).mul(&ca).mul(&cb));
    let s6 = cube(&alg, &f_b).mul(&sq(&alg, &f_a), &alg).scale(
        &v.mul(&v)
            .mul(&v)
            .mul(&ca)
            .mul(&ca)
            .mul(&cb)
            .mul(&cc)
            .neg(),
    );
    hopf.antipode[4] = k.mul(&xi, &alg).neg().add(
        &s1.add(&s2)
            .add(&s3)
            .add(&s4)
            .add(&s5)
            .add(&s6)
            .mul(&kmono(&alg, 1, &[-4, -6]), &alg)
            .scale(&eta),
    );
    hopf.counit[4] = Scalar::zero();

    let etilde = EtildeChoice {
        label: "k^-1[d-2a-3b]*e[-2a-3b]".into(),
        expression: kinv.mul(&e_m2a3b, &alg),
    };
    Ok(Catalogued {
        id: AlgebraId::new(Family::DrinfeldianExplicit, BaseAlgebra::G2),
        pres: Presentation { alg, relations },
        hopf,
        etilde: Some(etilde),
    })
}

fn explicit_osp12() -> Result<Catalogued, CatalogError> {
    let alg = quantum_algebra(RootDatum::for_base(BaseAlgebra::Osp12), Some("xi"));
    let s = alg
        .datum
        .pairing(&Weight::simple(1, 0), &Weight::simple(1, 0))?;
    let eta = Scalar::eta();
    let v = Scalar::q_minus_qinv();
    let inv = vinv();
    let one = NcPoly::one(&alg);

    let f = NcPoly::gen(&alg, 0);
    let e = NcPoly::gen(&alg, 1);
    let xi = NcPoly::gen(&alg, 2);
    let kinv = affine_k(&alg, -1);
    let k = affine_k(&alg, 1);
    let f2 = sq(&alg, &f);
    let f3 = f2.mul(&f, &alg);

    // Cartan binomial `(q^x k_a - q^-x k_a^-1)/(q - q^-1)`, multiplying
    // from the left of the word it acts on.
    let bop = |x: Rat| -> NcPoly {
        kmono(&alg, 0, &[1])
            .scale(&qpow(x.clone()).mul(&inv))
            .sub(&kmono(&alg, 0, &[-1]).scale(&qpow(-x).mul(&inv)))
    };

    let mut relations = uq_relations(&alg)?;
    relations.push(("xf[a]".into(), f.commutator(&xi, &alg)?));
    relations.push(("xe[a]".into(), e.ad_q_power(5, &xi, &alg)?));
    // Quadratic mixed relation with its eta-prefactored right-hand side.
    let lhs = e.q_commutator(&xi, &alg)?.q_commutator(&xi, &alg)?;
    let eta2 = eta.mul(&eta);
    let term1 = f2
        .mul(&f2, &alg)
        .mul(&e, &alg)
        .scale(&eta2.mul(&qbr(s.clone())).mul(&qbr(s.clone())));
    let term2 = bop(rmul(&s, 7, 2))
        .mul(&f3, &alg)
        .scale(&eta2.mul(&qbr(s.clone())).mul(&qbr(rmul(&s, 1, 2))));
    let anti = e.mul(&xi, &alg).add(&xi.mul(&e, &alg));
    let term3 = f2
        .mul(&anti, &alg)
        .scale(&eta.mul(&v).mul(&qbr(s.clone())).mul(&qbr(s.clone())).neg());
    let term4 = bop(rmul(&s, 5, 2)).mul(&f.mul(&xi, &alg), &alg).scale(
        &eta.mul(&v)
            .mul(&qbr(rmul(&s, 1, 2)))
            .mul(&qbr(rmul(&s, 2, 1))),
    );
    relations.push((
        "xx[a]".into(),
        lhs.sub(&term1.add(&term2).add(&term3).add(&term4)),
    ));

    let mut hopf = quantum_hopf(&alg);
    let t1 = TensorPoly::tensor(2, &[&f2, &kmono(&alg, 0, &[2]).sub(&one).scale(&inv)]);
    let t2 = TensorPoly::tensor(2, &[&kinv.sub(&one).scale(&inv), &f2]).neg();
    let t3 = TensorPoly::tensor(2, &[&f, &kmono(&alg, 0, &[1]).mul(&f, &alg)])
        .scale(&qpow(rmul(&s, 1, 2)).mul(&qbr(rmul(&s, 1, 2))).neg());
    hopf.coproduct[2] = TensorPoly::tensor(2, &[&xi, &one])
        .add(&TensorPoly::tensor(2, &[&kinv, &xi]))
        .add(&t1.add(&t2).add(&t3).scale(&eta));
    // S(xi) = -K xi + eta q^s (q^(3s) k_d - 1)/(q - q^-1) e_{-a}^2 k_a^-2
    let kd = kmono(&alg, 1, &[0]);
    let s_corr = kd
        .scale(&qpow(rmul(&s, 3, 1)))
        .sub(&one)
        .scale(&inv)
        .mul(&f2, &alg)
        .mul(&kmono(&alg, 0, &[-2]), &alg)
        .scale(&eta.mul(&qpow(s.clone())));
    hopf.antipode[2] = k.mul(&xi, &alg).neg().add(&s_corr);
    hopf.counit[2] = Scalar::zero();

    let etilde = EtildeChoice {
        label: "e[-a]^2".into(),
        expression: f2,
    };
    Ok(Catalogued {
        id: AlgebraId::new(Family::DrinfeldianExplicit, BaseAlgebra::Osp12),
        pres: Presentation { alg, relations },
        hopf,
        etilde: Some(etilde),
    })
}

// ---------------------------------------------------------------------------
// Classical presentations
// ---------------------------------------------------------------------------

fn classical_mu_weight(datum: &RootDatum, i: usize) -> Weight {
    if i < datum.rank {
        Weight::simple(datum.rank, i)
    } else {
        datum.delta()
    }
}

fn classical_mu_name(datum: &RootDatum, i: usize) -> &'static str {
    if i < datum.rank {
        datum.root_names[i]
    } else {
        "d"
    }
}

/// Structural relations of every classical presentation: commuting
/// Cartan elements and `[h_mu, x] = (mu, wt x) x`, in the order the
/// classical limit emits them.
pub fn classical_structural_relations(
    alg: &Algebra,
) -> Result<Vec<(String, NcPoly)>, CatalogError> {
    let datum = &alg.datum;
    let r = datum.rank;
    let hbase = 2 * r + 1;
    let nh = r + 1;
    let mut rels = Vec::new();
    for i in 0..nh {
        for j in i + 1..nh {
            let rel = NcPoly::gen(alg, hbase + i).commutator(&NcPoly::gen(alg, hbase + j), alg)?;
            rels.push((
                format!(
                    "hh[{},{}]",
                    classical_mu_name(datum, i),
                    classical_mu_name(datum, j)
                ),
                rel,
            ));
        }
    }
    for i in 0..nh {
        let mu = classical_mu_weight(datum, i);
        for g in 0..2 * r + 1 {
            let c = datum.pairing(&mu, &alg.tail[g].weight)?;
            let x = NcPoly::gen(alg, g);
            let rel = NcPoly::gen(alg, hbase + i)
                .commutator(&x, alg)?
                .sub(&x.scale(&Scalar::from_rat(c)));
            rels.push((
                format!("h[{}]{}", classical_mu_name(datum, i), alg.tail[g].name),
                rel,
            ));
        }
    }
    Ok(rels)
}

/// Classical Chevalley-Serre relations, mirroring [`uq_relations`] order.
fn classical_ef_serre(alg: &Algebra) -> Result<Vec<(String, NcPoly)>, CatalogError> {
    let datum = &alg.datum;
    let r = datum.rank;
    let names = &datum.root_names;
    let hbase = 2 * r + 1;
    let mut rels = Vec::new();
    for i in 0..r {
        let e = NcPoly::gen(alg, r + i);
        let f = NcPoly::gen(alg, i);
        let h = NcPoly::gen(alg, hbase + i);
        rels.push((format!("ef[{}]", names[i]), e.commutator(&f, alg)?.sub(&h)));
    }
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let e = NcPoly::gen(alg, r + i);
                let f = NcPoly::gen(alg, j);
                rels.push((
                    format!("ef[{},{}]", names[i], names[j]),
                    e.commutator(&f, alg)?,
                ));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let n = (1 - datum.cartan[i][j]) as u32;
                let e_i = NcPoly::gen(alg, r + i);
                let e_j = NcPoly::gen(alg, r + j);
                rels.push((
                    format!("serre_e[{},{}]", names[i], names[j]),
                    ad_power(&e_i, n, &e_j, alg)?,
                ));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let n = (1 - datum.cartan[i][j]) as u32;
                let f_i = NcPoly::gen(alg, i);
                let f_j = NcPoly::gen(alg, j);
                rels.push((
                    format!("serre_f[{},{}]", names[i], names[j]),
                    ad_power(&f_i, n, &f_j, alg)?,
                ));
            }
        }
    }
    Ok(rels)
}

/// Classical affine left-hand sides (plain commutators), same names and
/// order as the quantum [`affine_lhs`].
fn classical_affine_lhs(alg: &Algebra, x: &NcPoly) -> Result<Vec<(String, NcPoly)>, CatalogError> {
    let datum = &alg.datum;
    let r = datum.rank;
    let names = &datum.root_names;
    let mut rels = Vec::new();
    for i in 0..r {
        let f = NcPoly::gen(alg, i);
        rels.push((format!("xf[{}]", names[i]), f.commutator(x, alg)?));
    }
    for i in 0..r {
        let e = NcPoly::gen(alg, r + i);
        let n = datum.serre_exponent(i)?;
        rels.push((format!("xe[{}]", names[i]), ad_power(&e, n, x, alg)?));
    }
    if datum.name == "sl2" {
        let e = NcPoly::gen(alg, r);
        rels.push((format!("xxx[{}]", names[0]), ad_power(x, 2, &e.commutator(x, alg)?, alg)?));
    } else {
        for i in theta_linked(datum)? {
            let e = NcPoly::gen(alg, r + i);
            rels.push((
                format!("xx[{}]", names[i]),
                e.commutator(x, alg)?.commutator(x, alg)?,
            ));
        }
    }
    Ok(rels)
}

/// Primitive Hopf data for a classical presentation.
fn classical_hopf(alg: &Algebra) -> HopfStructure {
    let one = NcPoly::one(alg);
    let mut coproduct = Vec::new();
    let mut antipode = Vec::new();
    let mut counit = Vec::new();
    for idx in 0..alg.tail.len() {
        let g = NcPoly::gen(alg, idx);
        coproduct.push(TensorPoly::tensor(2, &[&g, &one]).add(&TensorPoly::tensor(2, &[&one, &g])));
        antipode.push(g.neg());
        counit.push(Scalar::zero());
    }
    HopfStructure {
        coproduct,
        antipode,
        counit,
    }
}

pub fn build_classical_loop(base: BaseAlgebra) -> Result<Catalogued, CatalogError> {
    let alg = classical_algebra(RootDatum::for_base(base), "e");
    let x = NcPoly::gen(&alg, 2 * alg.datum.rank);
    let mut relations = classical_structural_relations(&alg)?;
    relations.extend(classical_ef_serre(&alg)?);
    relations.extend(classical_affine_lhs(&alg, &x)?);
    let hopf = classical_hopf(&alg);
    Ok(Catalogued {
        id: AlgebraId::new(Family::ClassicalLoop, base),
        pres: Presentation { alg, relations },
        hopf,
        etilde: None,
    })
}

// ---------------------------------------------------------------------------
// Expected Yangian presentations
// ---------------------------------------------------------------------------

pub fn build_yangian_expected(base: BaseAlgebra) -> Result<Catalogued, CatalogError> {
    match base {
        BaseAlgebra::C2 => yangian_c2(),
        BaseAlgebra::G2 => yangian_g2(),
        BaseAlgebra::Osp12 => yangian_osp12(),
        BaseAlgebra::Sl2 => Err(CatalogError::UnsupportedBase {
            family: Family::YangianExpected.name().to_string(),
            base: base.name().to_string(),
        }),
    }
}

fn yangian_c2() -> Result<Catalogued, CatalogError> {
    let alg = classical_algebra(RootDatum::for_base(BaseAlgebra::C2), "xi");
    let p = alg
        .datum
        .pairing(&Weight::simple(2, 0), &Weight::simple(2, 1))?;
    let eta = Scalar::eta();
    let f_a = NcPoly::gen(&alg, 0);
    let f_b = NcPoly::gen(&alg, 1);
    let e_a = NcPoly::gen(&alg, 2);
    let e_b = NcPoly::gen(&alg, 3);
    let xi = NcPoly::gen(&alg, 4);
    let e_mab = f_a.commutator(&f_b, &alg)?;
    let e_ma2b = e_mab.commutator(&f_b, &alg)?;

    let mut relations = classical_structural_relations(&alg)?;
    relations.extend(classical_ef_serre(&alg)?);
    // [f_a, xi] = -eta (p/2) e_{-a-b}^2
    let c_xf_a = eta.scale(&rmul(&p, 1, 2)).neg();
    relations.push((
        "xf[a]".into(),
        f_a.commutator(&xi, &alg)?
            .sub(&sq(&alg, &e_mab).scale(&c_xf_a)),
    ));
    relations.push(("xf[b]".into(), f_b.commutator(&xi, &alg)?));
    // [e_a, xi] = eta (p^2/2) e_{-b}^2
    let c_xe_a = eta.scale(&rmul(&(p.clone() * p.clone()), 1, 2));
    relations.push((
        "xe[a]".into(),
        e_a.commutator(&xi, &alg)?
            .sub(&sq(&alg, &f_b).scale(&c_xe_a)),
    ));
    relations.push(("xe[b]".into(), ad_power(&e_b, 3, &xi, &alg)?));
    relations.push((
        "xx[a]".into(),
        e_a.commutator(&xi, &alg)?.commutator(&xi, &alg)?,
    ));

    let mut hopf = classical_hopf(&alg);
    let one = NcPoly::one(&alg);
    // h_{a+2b} - h_d/2
    let hcomb = NcPoly::gen(&alg, 5)
        .add(&NcPoly::gen(&alg, 6).scale(&Scalar::from_int(2)))
        .sub(&NcPoly::gen(&alg, 7).scale(&Scalar::from_rat(rat(1, 2))));
    let t1 = TensorPoly::tensor(2, &[&e_ma2b, &hcomb]);
    let t2 = TensorPoly::tensor(2, &[&e_mab, &f_b]).scale(&Scalar::from_rat(p.clone()).neg());
    hopf.coproduct[4] = TensorPoly::tensor(2, &[&xi, &one])
        .add(&TensorPoly::tensor(2, &[&one, &xi]))
        .add(&t1.add(&t2).scale(&eta));
    let s1 = e_ma2b.mul(&hcomb, &alg);
    let s2 = e_mab.mul(&f_b, &alg).scale(&Scalar::from_rat(p.clone()).neg());
    hopf.antipode[4] = xi.neg().add(&s1.add(&s2).scale(&eta));
    hopf.counit[4] = Scalar::zero();

    Ok(Catalogued {
        id: AlgebraId::new(Family::YangianExpected, BaseAlgebra::C2),
        pres: Presentation { alg, relations },
        hopf,
        etilde: None,
    })
}

fn yangian_g2() -> Result<Catalogued, CatalogError> {
    let alg = classical_algebra(RootDatum::for_base(BaseAlgebra::G2), "xi");
    let p = alg
        .datum
        .pairing(&Weight::simple(2, 0), &Weight::simple(2, 1))?;
    let eta = Scalar::eta();
    let f_a = NcPoly::gen(&alg, 0);
    let f_b = NcPoly::gen(&alg, 1);
    let e_a = NcPoly::gen(&alg, 2);
    let e_b = NcPoly::gen(&alg, 3);
    let xi = NcPoly::gen(&alg, 4);
    let e_mab = f_b.commutator(&f_a, &alg)?;
    let e_ma2b = f_b.commutator(&e_mab, &alg)?;
    let e_ma3b = f_b.commutator(&e_ma2b, &alg)?;
    let e_m2a3b = e_ma2b.commutator(&e_mab, &alg)?;

    let mut relations = classical_structural_relations(&alg)?;
    relations.extend(classical_ef_serre(&alg)?);
    relations.push(("xf[a]".into(), f_a.commutator(&xi, &alg)?));
    // [f_b, xi] = -eta (p/2) e_{-a-2b}^2
    let c_xf_b = eta.scale(&rmul(&p, 1, 2)).neg();
    relations.push((
        "xf[b]".into(),
        f_b.commutator(&xi, &alg)?
            .sub(&sq(&alg, &e_ma2b).scale(&c_xf_b)),
    ));
    relations.push(("xe[a]".into(), ad_power(&e_a, 2, &xi, &alg)?));
    // [e_b, xi] = eta (2 p^2 / 3) e_{-a-b}^2
    let c_xe_b = eta.scale(&rmul(&(p.clone() * p.clone()), 2, 3));
    relations.push((
        "xe[b]".into(),
        e_b.commutator(&xi, &alg)?
            .sub(&sq(&alg, &e_mab).scale(&c_xe_b)),
    ));
    // [[e_a, xi], xi] = eta^2 (p^3 / 3) e_{-a-2b}^3
    let p3 = p.clone() * p.clone() * p.clone();
    let c_xx_a = eta.mul(&eta).scale(&rmul(&p3, 1, 3));
    relations.push((
        "xx[a]".into(),
        e_a.commutator(&xi, &alg)?
            .commutator(&xi, &alg)?
            .sub(&cube(&alg, &e_ma2b).scale(&c_xx_a)),
    ));

    let mut hopf = classical_hopf(&alg);
    let one = NcPoly::one(&alg);
    // h_{2a+3b} - h_d/2
    let hcomb = NcPoly::gen(&alg, 5)
        .scale(&Scalar::from_int(2))
        .add(&NcPoly::gen(&alg, 6).scale(&Scalar::from_int(3)))
        .sub(&NcPoly::gen(&alg, 7).scale(&Scalar::from_rat(rat(1, 2))));
    let ps = Scalar::from_rat(p.clone());
    let t1 = TensorPoly::tensor(2, &[&e_m2a3b, &hcomb]);
    let t2 = TensorPoly::tensor(2, &[&e_ma3b, &f_a])
        .sub(&TensorPoly::tensor(2, &[&e_ma2b, &e_mab]))
        .scale(&ps);
    hopf.coproduct[4] = TensorPoly::tensor(2, &[&xi, &one])
        .add(&TensorPoly::tensor(2, &[&one, &xi]))
        .add(&t1.add(&t2).scale(&eta));
    let s1 = e_m2a3b.mul(&hcomb, &alg);
    let s2 = e_ma3b
        .mul(&f_a, &alg)
        .sub(&e_ma2b.mul(&e_mab, &alg))
        .scale(&ps);
    hopf.antipode[4] = xi.neg().add(&s1.add(&s2).scale(&eta));
    hopf.counit[4] = Scalar::zero();

    Ok(Catalogued {
        id: AlgebraId::new(Family::YangianExpected, BaseAlgebra::G2),
        pres: Presentation { alg, relations },
        hopf,
        etilde: None,
    })
}

fn yangian_osp12() -> Result<Catalogued, CatalogError> {
    let alg = classical_algebra(RootDatum::for_base(BaseAlgebra::Osp12), "xi");
    let s = alg
        .datum
        .pairing(&Weight::simple(1, 0), &Weight::simple(1, 0))?;
    let eta = Scalar::eta();
    let f = NcPoly::gen(&alg, 0);
    let e = NcPoly::gen(&alg, 1);
    let xi = NcPoly::gen(&alg, 2);
    let h_a = NcPoly::gen(&alg, 3);
    let h_d = NcPoly::gen(&alg, 4);
    let f2 = sq(&alg, &f);
    let f3 = f2.mul(&f, &alg);

    let mut relations = classical_structural_relations(&alg)?;
    relations.extend(classical_ef_serre(&alg)?);
    relations.push(("xf[a]".into(), f.commutator(&xi, &alg)?));
    relations.push(("xe[a]".into(), ad_power(&e, 5, &xi, &alg)?));
    // [[e, xi], xi] = eta^2 (s^2/2) (2 e_{-a}^4 e_a + (h_a + 7s/2) e_{-a}^3)
    let s2half = eta.mul(&eta).scale(&rmul(&(s.clone() * s.clone()), 1, 2));
    let rhs = f2
        .mul(&f2, &alg)
        .mul(&e, &alg)
        .scale(&Scalar::from_int(2))
        .add(
            &h_a.add(&NcPoly::one(&alg).scale(&Scalar::from_rat(rmul(&s, 7, 2))))
                .mul(&f3, &alg),
        )
        .scale(&s2half);
    relations.push((
        "xx[a]".into(),
        e.commutator(&xi, &alg)?
            .commutator(&xi, &alg)?
            .sub(&rhs),
    ));

    let mut hopf = classical_hopf(&alg);
    let one = NcPoly::one(&alg);
    let t1 = TensorPoly::tensor(2, &[&f2, &h_a]);
    let hdelta_part = h_d.sub(&h_a.scale(&Scalar::from_int(2)));
    let t2 = TensorPoly::tensor(2, &[&hdelta_part, &f2]).scale(&Scalar::from_rat(rat(1, 2)));
    let t3 = TensorPoly::tensor(2, &[&f, &f]).scale(&Scalar::from_rat(rmul(&s, 1, 2)).neg());
    hopf.coproduct[2] = TensorPoly::tensor(2, &[&xi, &one])
        .add(&TensorPoly::tensor(2, &[&one, &xi]))
        .add(&t1.add(&t2).add(&t3).scale(&eta));
    // S(xi) = -xi + (eta/2)(h_d + 3s) e_{-a}^2
    let scorr = h_d
        .add(&NcPoly::one(&alg).scale(&Scalar::from_rat(rmul(&s, 3, 1))))
        .mul(&f2, &alg)
        .scale(&eta.scale(&rat(1, 2)));
    hopf.antipode[2] = xi.neg().add(&scorr);
    hopf.counit[2] = Scalar::zero();

    Ok(Catalogued {
        id: AlgebraId::new(Family::YangianExpected, BaseAlgebra::Osp12),
        pres: Presentation { alg, relations },
        hopf,
        etilde: None,
    })
}

// ---------------------------------------------------------------------------
// T_a automorphisms
// ---------------------------------------------------------------------------

/// Generator images of `T_a` with the given symbolic parameter name:
/// identity on the subalgebra generators and the Cartan part; the affine
/// generator is rescaled (half-loop case) or mixed with `etilde`
/// (Drinfeldian case).
pub fn build_ta_with(cat: &Catalogued, param: &str) -> Result<Vec<NcPoly>, CatalogError> {
    let alg = &cat.pres.alg;
    let r = alg.datum.rank;
    let a = Scalar::param(param);
    let mut images: Vec<NcPoly> = (0..alg.tail.len()).map(|i| NcPoly::gen(alg, i)).collect();
    match cat.id.family {
        Family::UqLoop => {
            images[2 * r] = NcPoly::gen(alg, 2 * r).scale(&a);
        }
        Family::DrinfeldianGeneric | Family::DrinfeldianExplicit => {
            let et = cat
                .etilde
                .as_ref()
                .ok_or_else(|| CatalogError::UnsupportedFamily(cat.id.name()))?;
            let c_xi = Scalar::one().sub(&Scalar::q_minus_qinv().mul(&a));
            images[2 * r] = NcPoly::gen(alg, 2 * r)
                .scale(&c_xi)
                .add(&et.expression.scale(&Scalar::eta().mul(&a)));
        }
        _ => return Err(CatalogError::UnsupportedFamily(cat.id.name())),
    }
    Ok(images)
}

pub fn build_ta(cat: &Catalogued) -> Result<Vec<NcPoly>, CatalogError> {
    build_ta_with(cat, "a")
}

/// Algebra-map property of `T_a` (images of all defining relations
/// reduce to zero, symbolically in `a`) plus counit compatibility.
pub fn verify_ta(
    sys: &RewriteSystem,
    cat: &Catalogued,
    images: &[NcPoly],
) -> Result<VerificationReport, CatalogError> {
    let alg = &cat.pres.alg;
    let mut outcomes = Vec::new();
    for (name, rel) in &cat.pres.relations {
        let image = apply_hom(alg, images, rel)?;
        let nf = sys.normal_form(&image)?;
        outcomes.push(CheckOutcome {
            subject: format!("Ta({})", name),
            witness: if nf.is_zero() {
                None
            } else {
                Some(crate::freealg::NcPolyDisplay { alg, poly: &nf }.to_string())
            },
        });
    }
    for (idx, img) in images.iter().enumerate() {
        let eps: Scalar = apply_hom(alg, &cat.hopf.counit, img)?;
        let diff = eps.sub(&cat.hopf.counit[idx]);
        outcomes.push(CheckOutcome {
            subject: format!("eps(Ta({}))", alg.tail[idx].name),
            witness: if diff.is_zero() {
                None
            } else {
                Some(diff.to_string())
            },
        });
    }
    Ok(VerificationReport {
        check: "automorphism".into(),
        outcomes,
    })
}

/// Apply a generator map to every tensor factor.
fn map_tensor_factors(
    alg: &Algebra,
    images: &[NcPoly],
    t: &TensorPoly,
) -> Result<TensorPoly, AlgError> {
    let mut out = TensorPoly::zero(t.rank);
    for (tuple, coeff) in &t.terms {
        let mut stack: Vec<(crate::freealg::WordTuple, Scalar)> =
            vec![(crate::freealg::WordTuple::new(), coeff.clone())];
        for w in tuple.iter() {
            let image = apply_hom(
                alg,
                images,
                &NcPoly::monomial(w.clone(), Scalar::one()),
            )?;
            let mut next = Vec::new();
            for (tu, c) in &stack {
                for (iw, ic) in &image.terms {
                    let mut tu2 = tu.clone();
                    tu2.push(iw.clone());
                    next.push((tu2, c.mul(ic)));
                }
            }
            stack = next;
        }
        for (tu, c) in stack {
            out.insert_add(tu, c);
        }
    }
    Ok(out)
}

/// Exploratory check of `Delta . T_a = (T_a (x) T_a) . Delta`; reported
/// but not part of the acceptance gate (the coproduct itself carries the
/// deformation parameter).
pub fn ta_coproduct_report(
    sys: &RewriteSystem,
    cat: &Catalogued,
    images: &[NcPoly],
) -> Result<VerificationReport, CatalogError> {
    let alg = &cat.pres.alg;
    let mut outcomes = Vec::new();
    for (idx, dg) in cat.hopf.coproduct.iter().enumerate() {
        let lhs: TensorPoly = apply_hom(alg, &cat.hopf.coproduct, &images[idx])?;
        let rhs = map_tensor_factors(alg, images, dg)?;
        let diff = reduce_tensor(sys, &lhs.sub(&rhs))?;
        outcomes.push(CheckOutcome {
            subject: format!("Delta(Ta({}))", alg.tail[idx].name),
            witness: if diff.is_zero() {
                None
            } else {
                Some(crate::freealg::TensorDisplay { alg, poly: &diff }.to_string())
            },
        });
    }
    Ok(VerificationReport {
        check: "automorphism-coproduct (exploratory)".into(),
        outcomes,
    })
}

/// Effective affine image of `T_a . T_b`, reported as the pair of
/// coefficients in front of the affine generator and of `etilde` (or of
/// the affine generator alone for the half-loop family).
pub fn ta_composition(cat: &Catalogued) -> Result<String, CatalogError> {
    let alg = &cat.pres.alg;
    let r = alg.datum.rank;
    let ia = build_ta_with(cat, "a")?;
    let ib = build_ta_with(cat, "b")?;
    let composite = apply_hom(alg, &ia, &ib[2 * r])?;
    let xi_word = NcPoly::gen(alg, 2 * r);
    let (lead, _) = xi_word.leading().expect("generator is nonzero");
    let c_xi = composite
        .terms
        .get(lead)
        .cloned()
        .unwrap_or_else(Scalar::zero);
    let rest = composite.sub(&xi_word.scale(&c_xi));
    let mut out = format!("Ta.Tb: xi -> ({})*xi", c_xi);
    if !rest.is_zero() {
        if let Some(et) = &cat.etilde {
            // rest should be a scalar multiple of eta * etilde.
            let (elead, ecoeff) = et.expression.leading().expect("etilde nonzero");
            let rcoeff = rest.terms.get(elead).cloned().unwrap_or_else(Scalar::zero);
            let ratio = rcoeff.div(&ecoeff.mul(&Scalar::eta()))?;
            if rest == et.expression.scale(&ratio.mul(&Scalar::eta())) {
                out.push_str(&format!(" + eta*({})*etilde", ratio));
            } else {
                out.push_str(" + (non-etilde remainder)");
            }
        } else {
            out.push_str(" + (remainder)");
        }
    }
    Ok(out)
}

/// Every relation of `relations` reduces to zero in `sys` (one half of a
/// mutual ideal containment).
pub fn check_ideal_containment(
    sys: &RewriteSystem,
    relations: &[(String, NcPoly)],
    label: &str,
) -> Result<VerificationReport, RewriteError> {
    let alg = &sys.alg;
    let mut outcomes = Vec::new();
    for (name, rel) in relations {
        let nf = sys.normal_form(rel)?;
        outcomes.push(CheckOutcome {
            subject: name.clone(),
            witness: if nf.is_zero() {
                None
            } else {
                Some(crate::freealg::NcPolyDisplay { alg, poly: &nf }.to_string())
            },
        });
    }
    Ok(VerificationReport {
        check: label.to_string(),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    #[test]
    fn id_round_trip() {
        for id in AlgebraId::all() {
            assert_eq!(AlgebraId::parse(&id.name()).unwrap(), id);
        }
        assert!(AlgebraId::parse("uq").is_err());
        assert!(AlgebraId::parse("uq:e8").is_err());
        assert!(AlgebraId::parse("drinfeldian_explicit:sl2").is_err());
        assert_eq!(
            AlgebraId::parse("drinfeldian:c2").unwrap().family,
            Family::DrinfeldianExplicit
        );
    }

    #[test]
    fn uq_sl2_shape() {
        let cat = build_uq(BaseAlgebra::Sl2).unwrap();
        assert_eq!(cat.pres.alg.cartan.len(), 1);
        assert_eq!(cat.pres.alg.tail.len(), 2);
        assert_eq!(cat.pres.relations.len(), 1);
        assert_eq!(cat.pres.relations[0].0, "ef[a]");
    }

    #[test]
    fn uq_c2_serre_depths() {
        // Serre exponents 1 - a_ij read off the Cartan matrix.
        let cat = build_uq(BaseAlgebra::C2).unwrap();
        let get = |name: &str| {
            cat.pres
                .relations
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, r)| r.max_tail_len())
                .unwrap()
        };
        assert_eq!(get("serre_e[a,b]"), 3); // 1 - (-1) + 1 letters
        assert_eq!(get("serre_e[b,a]"), 4); // 1 - (-2) + 1 letters
    }

    #[test]
    fn uq_osp12_fermion_commutator() {
        let cat = build_uq(BaseAlgebra::Osp12).unwrap();
        let alg = &cat.pres.alg;
        assert!(alg.tail[0].parity && alg.tail[1].parity);
        let (_, rel) = &cat.pres.relations[0];
        // e f + f e - (k - k^-1)/(q - q^-1): both length-2 words with +1.
        let ef = alg.word_from_tail(&[1, 0]);
        let fe = alg.word_from_tail(&[0, 1]);
        assert!(rel.terms.get(&ef).unwrap().is_one());
        assert!(rel.terms.get(&fe).unwrap().is_one());
    }

    #[test]
    fn loop_affine_relations() {
        let sl2 = build_uq_loop(BaseAlgebra::Sl2).unwrap();
        assert!(sl2.pres.relations.iter().any(|(n, _)| n == "xxx[a]"));
        assert!(!sl2.pres.relations.iter().any(|(n, _)| n.starts_with("xx[")));
        let c2 = build_uq_loop(BaseAlgebra::C2).unwrap();
        let xe_b = c2
            .pres
            .relations
            .iter()
            .find(|(n, _)| n == "xe[b]")
            .unwrap();
        assert_eq!(xe_b.1.max_tail_len(), 4); // (ad_q e_b)^3 on the affine letter
        assert!(c2.pres.relations.iter().any(|(n, _)| n == "xx[b]"));
        // eps of the affine generator vanishes.
        assert!(c2.hopf.counit[4].is_zero());
    }

    #[test]
    fn explicit_c2_xf_coefficient() {
        // -eta q^(-p/2) [p/2] with p = -2 evaluates to eta*q.
        let p = rat(-2, 1);
        let c = Scalar::eta()
            .mul(&qpow(rmul(&p, -1, 2)))
            .mul(&qbr(rmul(&p, 1, 2)))
            .neg();
        assert_eq!(c, Scalar::eta().mul(&qpow(rint(1))));
    }

    #[test]
    fn g2_constant_a_is_odd_bracket() {
        assert_eq!(qbr(rint(-3)), qbr(rint(3)).neg());
    }

    #[test]
    fn etilde_weights() {
        for base in [
            BaseAlgebra::Sl2,
            BaseAlgebra::C2,
            BaseAlgebra::G2,
            BaseAlgebra::Osp12,
        ] {
            let alg = quantum_algebra(RootDatum::for_base(base), Some("xi"));
            let et = paper_etilde(&alg).unwrap();
            let (w, _) = et.expression.homogeneous_data(&alg).unwrap();
            assert!(w.add(&alg.datum.theta()).is_zero(), "base {}", base.name());
        }
    }

    #[test]
    fn yangian_relations_are_q_free() {
        let cat = build_yangian_expected(BaseAlgebra::C2).unwrap();
        for (name, rel) in &cat.pres.relations {
            for (_, c) in &rel.terms {
                let lim = c.limit_q1().unwrap();
                let back = Scalar::from_ppoly(&lim);
                assert_eq!(&back, c, "relation {} has a q-dependent coefficient", name);
            }
        }
    }

    #[test]
    fn classical_loop_completes() {
        let cat = build_classical_loop(BaseAlgebra::Sl2).unwrap();
        let sys = cat.complete(&CompletionConfig::default()).unwrap();
        assert!(sys.unresolved.is_empty());
        // [e, f] reduces to h.
        let alg = &cat.pres.alg;
        let ef = NcPoly::gen(alg, 1).mul(&NcPoly::gen(alg, 0), alg);
        let nf = sys.normal_form(&ef).unwrap();
        assert!(nf.terms.len() >= 2);
    }
}
