use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use serde_json::{json, Value};

use antimorph_core::gen_cyclic::{
    check_gen_anti_conditions, gen_is_involution, verify_gen_map, DAutMap, DKind, GenCyclicAlgebra, GenMap,
    StructureConstantAlgebra,
};
use antimorph_core::laurent::{build_laurent_anti, hilbert90_alpha1, LaurentPoly};
use antimorph_core::morphism::{
    check_anti_conditions, check_iso_conditions, classify, classify_with_degree, is_involution, order_of, verify_map,
    ClassifyOptions, MonomialMap, Order, Role, Search, VerifyMode,
};
use antimorph_core::petit::PetitAlgebra;
use antimorph_core::{Certificate, Condition, Error, FiniteField, FrobeniusTower, Ground, Mode};

use crate::codec::{decode_digits, encode_digits, Codec};
use crate::config::{
    AlgebraSpec, CoeffSpec, GenSpec, KindSpec, MapSpec, MatrixSpec, ModeSpec, RunConfig, SearchSpec, TauSpec,
};
use crate::report::{self, anchor, certificate};

/// Resolved run settings: config values with flag overrides and defaults.
#[derive(Clone, Debug)]
pub struct Settings {
    pub mode: Option<ModeSpec>,
    pub seed: u64,
    pub cap: u64,
    pub bound: usize,
    pub samples: u64,
    pub dim_cap: usize,
}

impl Settings {
    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode,
            "seed": report::hex(self.seed),
            "cap": self.cap,
            "bound": self.bound,
            "samples": self.samples,
            "dim_cap": self.dim_cap,
        })
    }

    fn verify_mode<G: Ground>(&self, ctx: &G) -> VerifyMode {
        match self.mode {
            Some(ModeSpec::Exhaustive) => VerifyMode::Exhaustive,
            Some(ModeSpec::Sampled) => self.sampled(),
            None if ctx.size().is_some() => VerifyMode::Exhaustive,
            None => self.sampled(),
        }
    }

    fn sampled(&self) -> VerifyMode {
        VerifyMode::Sampled { count: self.samples, seed: self.seed }
    }
}

/// A computed report and the exit code it calls for.
pub struct Outcome {
    pub computed: Value,
    pub code: u8,
}

impl Outcome {
    fn success(computed: Value) -> Self {
        Self { computed, code: 0 }
    }

    fn verdict(computed: Value, valid: bool) -> Self {
        Self { computed, code: if valid { 0 } else { 1 } }
    }
}

fn section<'a, T>(x: &'a Option<T>, name: &str) -> Result<&'a T> {
    x.as_ref().ok_or_else(|| anyhow!("the configuration needs a \"{name}\" section"))
}

fn algebra<G: Codec>(ctx: &Arc<G>, spec: &AlgebraSpec) -> Result<PetitAlgebra<G>> {
    let a = ctx.decode(&spec.a).context("algebra.a")?;
    Ok(PetitAlgebra::new(ctx.clone(), spec.m, a)?)
}

fn optional<T>(r: antimorph_core::Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::NoIteration) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Finite(n) => json!(n),
        Order::ExceedsBound => json!("exceeds-bound"),
    }
}

pub fn info<G: Codec>(ctx: Arc<G>, cfg: &RunConfig, s: &Settings) -> Result<Outcome> {
    let alg = algebra(&ctx, section(&cfg.algebra, "algebra")?)?;
    let a_inv = ctx.inv(alg.a()).ok_or(Error::ZeroConstant)?;
    let semifield = optional(alg.is_semifield(s.cap))?;
    let nuclei = optional(alg.nucleus_dims(s.dim_cap))?.map(|d| {
        json!({ "left": d.left, "middle": d.middle, "right": d.right, "center": d.center, "over": "prime field" })
    });
    let opposite = match ctx.size() {
        Some(_) => match alg.opposite_identification()? {
            Some(id) => json!({
                "found": true,
                "rho": ctx.encode_aut(&id.rho),
                "beta": ctx.encode(&id.beta),
                "j": id.j,
            }),
            None => json!({ "found": false, "condition": anchor("opposite-identification") }),
        },
        None => Value::Null,
    };
    Ok(Outcome::success(json!({
        "is_field": alg.m() == 1,
        "cyclic": alg.is_cyclic(),
        "proper_nonassociative": alg.is_proper_nonassociative_cyclic(),
        "associative": alg.is_associative()?,
        "two_sided": alg.is_two_sided()?,
        "semifield": semifield,
        "nucleus_dims": nuclei,
        "dimension_over_k": alg.m(),
        "opposite_constant": ctx.encode(&a_inv),
        "opposite_identification": opposite,
    })))
}

fn map_entry<G: Codec>(map: &MonomialMap<G>, cert: &Certificate, bound: usize) -> Result<Value> {
    let ctx = map.source.ctx();
    let mut entry = json!({
        "tau": ctx.encode_aut(&map.tau),
        "alpha": ctx.encode(&map.alpha),
        "k": map.k,
        "certificate": certificate(cert),
    });
    if map.k == 1 && cert.is_valid() {
        let inv = is_involution(map)?;
        entry["involution"] = json!(inv.is_involution);
        entry["order"] = order_json(order_of(map, bound)?);
        if let Some(route) = inv.norm_one_route {
            entry["norm_one_route"] = json!(route);
        }
    }
    Ok(entry)
}

pub fn classify_cmd<G: Codec>(ctx: Arc<G>, cfg: &RunConfig, s: &Settings) -> Result<Outcome> {
    let alg = algebra(&ctx, section(&cfg.algebra, "algebra")?)?;
    let spec: &MapSpec = section(&cfg.map, "map")?;
    let tau = ctx.decode_aut(&spec.tau).context("map.tau")?;
    let opts = ClassifyOptions {
        strategy: cfg.search.map(|sp| match sp {
            SearchSpec::Exhaustive => Search::Exhaustive,
            SearchSpec::Ansatz(b) => Search::MonomialAnsatz(b),
        }),
        verify: s.mode.map(|_| s.verify_mode(&*ctx)),
        cap: s.cap,
    };
    let result = match spec.k {
        Some(k) => classify_with_degree(&alg, &tau, k, &opts)?,
        None => classify(&alg, &tau, &opts)?,
    };
    let maps = result.maps.iter().map(|(m, c)| map_entry(m, c, s.bound)).collect::<Result<Vec<_>>>()?;
    let involutions = maps.iter().filter(|m| m["involution"] == json!(true)).count();
    Ok(Outcome::success(json!({
        "k": result.k,
        "maps": maps,
        "count": result.maps.len(),
        "involutions": involutions,
        "empty_reason": result.empty_reason.map(anchor),
    })))
}

pub fn verify<G: Codec>(ctx: Arc<G>, cfg: &RunConfig, s: &Settings) -> Result<Outcome> {
    let alg = algebra(&ctx, section(&cfg.algebra, "algebra")?)?;
    let spec: &MapSpec = section(&cfg.map, "map")?;
    let tau = ctx.decode_aut(&spec.tau).context("map.tau")?;
    let alpha = ctx.decode(spec.alpha.as_ref().ok_or_else(|| anyhow!("map.alpha is required"))?).context("map.alpha")?;
    let k = spec.k.unwrap_or(1);
    let (map, predicate) = match &spec.codomain {
        Some(b) => {
            let b = ctx.decode(b).context("map.codomain")?;
            let pred = check_iso_conditions(&*ctx, &tau, &alpha, k, alg.m(), alg.a(), &b);
            (MonomialMap::new(&alg, tau, alpha, k, Role::IsoBetween(b)), pred)
        }
        None => {
            let pred = check_anti_conditions(&*ctx, &tau, &alpha, k, alg.m(), alg.a());
            (MonomialMap::anti(&alg, tau, alpha, k), pred)
        }
    };
    let direct = verify_map(&map, s.verify_mode(&*ctx), s.cap)?;
    let valid = direct.is_valid();
    let mut computed = json!({
        "role": if map.is_anti() { "anti-automorphism" } else { "isomorphism" },
        "codomain_constant": ctx.encode(&map.codomain_constant()),
        "predicate": certificate(&predicate),
        "direct": certificate(&direct),
        "agree": predicate.is_valid() == valid,
        "verdict": if valid { "valid" } else { "invalid" },
    });
    if valid && map.is_anti() && k == 1 {
        let entry = map_entry(&map, &direct, s.bound)?;
        computed["involution"] = entry["involution"].clone();
        computed["order"] = entry["order"].clone();
    }
    Ok(Outcome::verdict(computed, valid))
}

pub fn laurent<G: Codec>(ctx: Arc<G>, cfg: &RunConfig, s: &Settings) -> Result<Outcome> {
    let spec = section(&cfg.laurent, "laurent")?;
    let tau = ctx.decode_aut(&spec.tau).context("laurent.tau")?;
    let alpha1 = match &spec.alpha1 {
        Some(v) => ctx.decode(v).context("laurent.alpha1")?,
        None => hilbert90_alpha1(&*ctx, 1, s.seed)?
            .into_iter()
            .next()
            .ok_or_else(|| anyhow!("no norm-one element found"))?,
    };
    let map = match build_laurent_anti(ctx.clone(), tau, alpha1.clone()) {
        Ok(m) => m,
        Err(Error::ExponentMismatch { expected, found }) => {
            let computed = json!({
                "alpha1": ctx.encode(&alpha1),
                "conditions": certificate(&Certificate::from_conditions(
                    vec![Condition::new("laurent-conjugation", false)],
                    Mode::Predicate,
                )),
                "conjugation_exponent": found,
                "expected_exponent": expected,
                "verdict": "invalid",
            });
            return Ok(Outcome::verdict(computed, false));
        }
        Err(e) => return Err(e.into()),
    };
    let conditions = map.conditions()?;
    let verified = map.verify(s.samples, s.seed);
    let t = LaurentPoly::monomial(&*ctx, ctx.one(), 1);
    let witness = if map.n() > 2 {
        let w = map.infinite_order_witness(s.bound)?;
        json!({ "degrees": w.degrees, "bound": w.bound })
    } else {
        Value::Null
    };
    let valid = conditions.is_valid() && verified.is_valid();
    Ok(Outcome::verdict(
        json!({
            "alpha1": ctx.encode(&alpha1),
            "k": map.k,
            "image_of_t": ctx.encode_laurent(&map.apply_iso(&t)),
            "conditions": certificate(&conditions),
            "direct": certificate(&verified),
            "witness": witness,
            "verdict": if valid { "valid" } else { "invalid" },
        }),
        valid,
    ))
}

fn coeff_algebra(c: &FiniteField, spec: &CoeffSpec) -> Result<StructureConstantAlgebra> {
    Ok(match spec {
        CoeffSpec::M2 => StructureConstantAlgebra::m2(c.clone()),
        CoeffSpec::Field => StructureConstantAlgebra::field_itself(c.clone()),
        CoeffSpec::Constants { labels, constants, unit } => {
            let elems = |v: &[serde_json::Value]| v.iter().map(|x| decode_digits(c, x)).collect::<Result<Vec<_>>>();
            let consts = constants
                .iter()
                .map(|row| row.iter().map(|e| elems(e)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            StructureConstantAlgebra::new(c.clone(), labels.clone(), consts, elems(unit)?)?
        }
    })
}

fn matrix_map(d: &StructureConstantAlgebra, spec: &MatrixSpec, default_name: &str) -> Result<DAutMap> {
    let kind = match spec.kind {
        KindSpec::Automorphism => DKind::Automorphism,
        KindSpec::AntiAutomorphism => DKind::AntiAutomorphism,
    };
    let name = spec.name.as_deref().unwrap_or(default_name);
    Ok(DAutMap::from_matrix(d, kind, name, spec.matrix.clone())?)
}

fn named_tau(d: &StructureConstantAlgebra, sigma: &DAutMap, name: &str) -> Result<DAutMap> {
    Ok(match name {
        "transpose" => DAutMap::transpose(d)?,
        "transpose_sigma" => DAutMap::transpose(d)?.compose(sigma, d),
        "id" => DAutMap::identity(d).with_kind(DKind::AntiAutomorphism),
        _ => match name.strip_prefix("frob").and_then(|e| e.parse::<u32>().ok()) {
            Some(e) => DAutMap::frobenius(d, e).with_kind(DKind::AntiAutomorphism),
            None => bail!("unknown τ {name:?}; use transpose, transpose_sigma, id, frob<e> or a matrix"),
        },
    })
}

pub fn gen(tower: &FrobeniusTower, cfg: &RunConfig, s: &Settings) -> Result<Outcome> {
    let spec: &GenSpec = section(&cfg.gen, "gen")?;
    let c = tower.field();
    let d_alg = coeff_algebra(c, &spec.coeff)?;
    let sigma = match &spec.sigma {
        Some(m) => matrix_map(&d_alg, m, "sigma")?,
        None => DAutMap::frobenius(&d_alg, tower.d()),
    };
    let tau = match &spec.tau {
        TauSpec::Named(n) => named_tau(&d_alg, &sigma, n)?,
        TauSpec::Matrix(m) => matrix_map(&d_alg, m, "tau")?,
    };
    let dv = spec.d.iter().map(|x| decode_digits(c, x)).collect::<Result<Vec<_>>>().context("gen.d")?;
    let alpha = decode_digits(c, &spec.alpha).context("gen.alpha")?;
    let alg = GenCyclicAlgebra::new(d_alg, sigma, spec.m, dv)?;
    let map = GenMap { tau, alpha, k: spec.k.unwrap_or(1) };
    let predicate = check_gen_anti_conditions(&alg, &map);
    let mode = match s.mode {
        Some(ModeSpec::Exhaustive) => VerifyMode::Exhaustive,
        Some(ModeSpec::Sampled) => s.sampled(),
        None => VerifyMode::BasisPairs,
    };
    let direct = verify_gen_map(&alg, &map, mode, s.cap)?;
    let valid = direct.is_valid();
    let involution = if valid && map.k == 1 { Some(gen_is_involution(&alg, &map)?.0) } else { None };
    let opposite = alg.check_opposite_identity()?;
    Ok(Outcome::verdict(
        json!({
            "n": alg.n(),
            "d_invertible": alg.d_invertible(),
            "tau": map.tau.name,
            "alpha": encode_digits(c, alpha),
            "predicate": certificate(&predicate),
            "direct": certificate(&direct),
            "agree": predicate.is_valid() == valid,
            "involution": involution,
            "coefficientwise_opposite": certificate(&opposite),
            "uniqueness": "unverified",
            "verdict": if valid { "valid" } else { "invalid" },
        }),
        valid,
    ))
}
