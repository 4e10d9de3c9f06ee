//! Monomial maps `G_{τ,α,k}: Σ c_i t^i ↦ Σ τ(c_i)(αt^k)^i` between Petit
//! algebras, their closed-form existence conditions, direct verification,
//! classification, composition and order.
//!
//! An anti-automorphism `G̃` of `A = (K, σ, a)` is modelled as the same set
//! map viewed as an isomorphism `A → (K, σ, a⁻¹)`; verification therefore
//! tests multiplicativity into the algebra with constant `a⁻¹`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::cert::{Certificate, Condition, Mode};
use crate::ground::gcd;
use crate::linalg::{self, Echelon};
use crate::petit::{AlgElem, PetitAlgebra};
use crate::skew_poly::{self, SkewPoly};
use crate::{Error, Ground, Result, DEFAULT_SEED};

/// Above this many element pairs, exhaustive verification switches to all
/// pairs of prime-field basis elements.
pub const PAIR_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role<E> {
    /// Isomorphism onto the algebra with constant `a⁻¹`.
    IsoToOpposite,
    /// Anti-endomorphism of the source; verified through the same set map
    /// as [`Role::IsoToOpposite`].
    AntiEndo,
    /// Isomorphism onto the algebra with constant `b`.
    IsoBetween(E),
}

#[derive(Clone, Debug)]
pub struct MonomialMap<G: Ground> {
    pub tau: G::Aut,
    pub alpha: G::Elem,
    pub k: usize,
    pub role: Role<G::Elem>,
    pub source: PetitAlgebra<G>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every pair of elements, or every pair of prime-field basis elements
    /// when there are more than [`PAIR_LIMIT`] element pairs.
    Exhaustive,
    BasisPairs,
    Sampled { count: u64, seed: u64 },
}

impl VerifyMode {
    pub fn sampled_default() -> Self {
        VerifyMode::Sampled { count: 1000, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    Exhaustive,
    /// `α = c·x^j` with `|j| ≤ max_deg`.
    MonomialAnsatz(i32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    ExceedsBound,
}

impl<G: Ground> MonomialMap<G> {
    pub fn new(source: &PetitAlgebra<G>, tau: G::Aut, alpha: G::Elem, k: usize, role: Role<G::Elem>) -> Self {
        Self { tau, alpha, k, role, source: source.clone() }
    }

    /// The anti-automorphism `G̃_{τ,α,k}` of `source`.
    pub fn anti(source: &PetitAlgebra<G>, tau: G::Aut, alpha: G::Elem, k: usize) -> Self {
        Self::new(source, tau, alpha, k, Role::AntiEndo)
    }

    pub fn is_anti(&self) -> bool {
        !matches!(self.role, Role::IsoBetween(_))
    }

    pub fn out_of_range(&self) -> bool {
        let m = self.source.m();
        !(self.k >= 1 && (self.k < m || (m == 1 && self.k == 1)))
    }

    pub fn codomain_constant(&self) -> G::Elem {
        match &self.role {
            Role::IsoBetween(b) => b.clone(),
            _ => self.source.ctx().inv(self.source.a()).expect("a is nonzero"),
        }
    }

    pub fn codomain(&self) -> Result<PetitAlgebra<G>> {
        self.source.with_constant(self.codomain_constant())
    }

    /// `(αt^k)^i` in the codomain for `i = 0..m`.
    pub fn monomials(&self) -> Result<Vec<AlgElem<G::Elem>>> {
        let ctx = self.source.ctx();
        let (m, b) = (self.source.m(), self.codomain_constant());
        let mut out = vec![SkewPoly::constant(ctx, ctx.one())];
        for i in 1..m {
            let (c, e) = skew_poly::monomial_power(ctx, &self.alpha, self.k, i, m, &b)?;
            out.push(SkewPoly::monomial(ctx, c, e));
        }
        Ok(out)
    }

    fn apply_with(&self, monos: &[AlgElem<G::Elem>], x: &AlgElem<G::Elem>) -> AlgElem<G::Elem> {
        let ctx = self.source.ctx();
        let mut out = SkewPoly::zero();
        for (i, c) in x.coeffs().iter().enumerate() {
            if !ctx.is_zero(c) {
                let term = skew_poly::sp_scale(ctx, &ctx.apply(&self.tau, c), &monos[i]);
                out = skew_poly::sp_add(ctx, &out, &term);
            }
        }
        out
    }

    /// `Σ τ(c_i)(αt^k)^i`, powers taken in the codomain.
    pub fn apply(&self, x: &AlgElem<G::Elem>) -> Result<AlgElem<G::Elem>> {
        if x.len() > self.source.m() {
            return Err(Error::ParentMismatch);
        }
        Ok(self.apply_with(&self.monomials()?, x))
    }

    pub fn describe(&self) -> String {
        let ctx = self.source.ctx();
        format!("G({}, {}, {})", ctx.fmt_aut(&self.tau), ctx.fmt_elem(&self.alpha), self.k)
    }
}

fn norm_conditions<G: Ground>(
    ctx: &G,
    tau: &G::Aut,
    alpha: &G::Elem,
    k: usize,
    m: usize,
    a: &G::Elem,
    b: &G::Elem,
) -> Vec<Condition> {
    let n = ctx.n();
    let mut conds = vec![
        Condition::new("alpha-nonzero", !ctx.is_zero(alpha)),
        Condition::new("degree-range", k >= 1 && (k < m || (m == 1 && k == 1))),
        Condition::new("conjugation", ctx.conjugates_to(tau, k)),
    ];
    let tau_a = ctx.apply(tau, a);
    if k <= 1 {
        let lhs = ctx.mul(&ctx.partial_norm(&ctx.sigma(), alpha, m), b);
        conds.push(Condition::new("norm-degree-one", lhs == tau_a));
    } else {
        conds.push(Condition::new("no-map-n-gt-m", n <= m));
        conds.push(Condition::new("gcd-k-m", gcd(k, m) == 1));
        conds.push(Condition::new("n-divides-m", m.is_multiple_of(n)));
        conds.push(Condition::new("constant-in-fixed-field", ctx.in_fixed_field(a) && ctx.in_fixed_field(b)));
        let ok = m.is_multiple_of(n) && {
            let nm = ctx.partial_norm(&ctx.sigma(), alpha, n);
            let lhs = ctx.mul(&ctx.pow(&nm, (m / n) as u64), &ctx.pow(b, k as u64));
            lhs == tau_a
        };
        conds.push(Condition::new("norm-degree-k", ok));
    }
    conds
}

/// Closed-form conditions for `G_{τ,α,k}` to be an isomorphism from
/// `(K,σ,a)` onto `(K,σ,b)` (both of degree `m`).
pub fn check_iso_conditions<G: Ground>(
    ctx: &G,
    tau: &G::Aut,
    alpha: &G::Elem,
    k: usize,
    m: usize,
    a: &G::Elem,
    b: &G::Elem,
) -> Certificate {
    Certificate::from_conditions(norm_conditions(ctx, tau, alpha, k, m, a, b), Mode::Predicate)
}

/// Closed-form conditions for `G̃_{τ,α,k}` to be an anti-automorphism of
/// `(K,σ,a)`: for `k = 1`, `N_m^σ(α) = τ(a)a`; for `k ≥ 2`,
/// `N_{K/F}(α)^{m/n} = τ(a)a^k` together with `a ∈ F`, `n | m`,
/// `gcd(k,m) = 1` and `τστ⁻¹ = σ^k`.
pub fn check_anti_conditions<G: Ground>(
    ctx: &G,
    tau: &G::Aut,
    alpha: &G::Elem,
    k: usize,
    m: usize,
    a: &G::Elem,
) -> Certificate {
    match ctx.inv(a) {
        Some(b) => check_iso_conditions(ctx, tau, alpha, k, m, a, &b),
        None => Certificate::from_conditions(vec![Condition::new("constant-in-fixed-field", false)], Mode::Predicate),
    }
}

struct PairReport {
    additive: Option<String>,
    multiplicative: Option<String>,
    mode: Mode,
}

/// Run `f(x∘y) = f(x) ⋆ f(y)` and additivity over the pairs selected by `mode`.
fn check_pairs<G: Ground>(
    src: &PetitAlgebra<G>,
    mode: VerifyMode,
    cap: u64,
    img: &dyn Fn(&AlgElem<G::Elem>) -> AlgElem<G::Elem>,
    target_mul: &dyn Fn(&AlgElem<G::Elem>, &AlgElem<G::Elem>) -> AlgElem<G::Elem>,
) -> Result<PairReport> {
    let ctx = src.ctx();
    let (elems, mode) = match mode {
        VerifyMode::Exhaustive => {
            let size = src.size().ok_or(Error::NoIteration)?;
            if size > cap {
                return Err(Error::CapExceeded { size, cap });
            }
            if size.saturating_mul(size) <= PAIR_LIMIT {
                (src.elements(cap)?, Mode::Exhaustive { pairs: size * size })
            } else {
                let b = src.basis().ok_or(Error::NoIteration)?;
                let pairs = (b.len() * b.len()) as u64;
                (b, Mode::BasisPairs { pairs })
            }
        }
        VerifyMode::BasisPairs => {
            let b = src.basis().ok_or(Error::NoIteration)?;
            let pairs = (b.len() * b.len()) as u64;
            (b, Mode::BasisPairs { pairs })
        }
        VerifyMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut xs = src.generator_monomials();
            while (xs.len() as u64) < count.max(1) {
                let coeffs = (0..src.m()).map(|_| ctx.random_elem(&mut rng)).collect();
                xs.push(SkewPoly::new(ctx, coeffs));
            }
            (xs, Mode::Sampled { count, seed })
        }
    };
    let images: Vec<_> = elems.iter().map(img).collect();
    let mut report = PairReport { additive: None, multiplicative: None, mode };
    let fmt = |x: &AlgElem<G::Elem>| skew_poly::fmt_skew(ctx, x);
    // Sampled mode pairs neighbours so that the number of pairs stays linear.
    let pairs: Vec<(usize, usize)> = match report.mode {
        Mode::Sampled { .. } => {
            let len = elems.len();
            let gens = src.generator_monomials().len();
            let mut v: Vec<(usize, usize)> = (0..gens).flat_map(|i| (0..gens).map(move |j| (i, j))).collect();
            v.extend((0..len).map(|i| (i, (i * 7 + 3) % len)));
            v
        }
        _ => (0..elems.len()).flat_map(|i| (0..elems.len()).map(move |j| (i, j))).collect(),
    };
    for (i, j) in pairs {
        let (x, y) = (&elems[i], &elems[j]);
        if report.multiplicative.is_none() {
            let lhs = img(&src.pmul(x, y));
            let rhs = target_mul(&images[i], &images[j]);
            if lhs != rhs {
                report.multiplicative =
                    Some(format!("x = {}, y = {}: f(xy) = {}, product of images = {}", fmt(x), fmt(y), fmt(&lhs), fmt(&rhs)));
            }
        }
        if report.additive.is_none() {
            let lhs = img(&src.add(x, y));
            let rhs = src.add(&images[i], &images[j]);
            if lhs != rhs {
                report.additive = Some(format!("x = {}, y = {}", fmt(x), fmt(y)));
            }
        }
        if report.multiplicative.is_some() && report.additive.is_some() {
            break;
        }
    }
    Ok(report)
}

fn images_independent<G: Ground>(map: &MonomialMap<G>, monos: &[AlgElem<G::Elem>]) -> bool {
    let src = &map.source;
    match src.basis() {
        Some(basis) => {
            let rows = basis.iter().map(|b| src.coords(&map.apply_with(monos, b)).unwrap()).collect();
            linalg::rank(rows, src.ctx().characteristic()) == basis.len()
        }
        None => {
            // τ-semilinear and monomial: bijective iff the exponents permute.
            let mut seen = vec![false; src.m()];
            monos.iter().all(|f| match f.degree() {
                Some(d) if f.coeffs()[..d].iter().all(|c| src.ctx().is_zero(c)) && !seen[d] => {
                    seen[d] = true;
                    true
                }
                _ => false,
            })
        }
    }
}

/// Direct verification of a monomial map: well-definedness of the powers,
/// unit, additivity, multiplicativity into the codomain and bijectivity.
pub fn verify_map<G: Ground>(map: &MonomialMap<G>, mode: VerifyMode, cap: u64) -> Result<Certificate> {
    let mode_hint = match mode {
        VerifyMode::Sampled { count, seed } => Mode::Sampled { count, seed },
        _ => Mode::Predicate,
    };
    if map.out_of_range() || map.source.ctx().is_zero(&map.alpha) {
        let conds = vec![
            Condition::new("degree-range", !map.out_of_range()),
            Condition::new("alpha-nonzero", !map.source.ctx().is_zero(&map.alpha)),
        ];
        return Ok(Certificate::from_conditions(conds, mode_hint));
    }
    let monos = match map.monomials() {
        Ok(m) => m,
        Err(Error::WellDefinednessViolation(w)) => {
            let c = Condition::new("well-defined", false).with_witness(Some(w));
            return Ok(Certificate::from_conditions(vec![c], mode_hint));
        }
        Err(e) => return Err(e),
    };
    let target = map.codomain()?;
    let img = |x: &AlgElem<G::Elem>| map.apply_with(&monos, x);
    let unit = img(&map.source.one()) == target.one();
    let bijective = images_independent(map, &monos);
    let report = check_pairs(&map.source, mode, cap, &img, &|x, y| target.pmul(x, y))?;
    let conds = vec![
        Condition::new("well-defined", true),
        Condition::new("unit", unit),
        Condition::new("additive", report.additive.is_none()).with_witness(report.additive),
        Condition::new("multiplicative", report.multiplicative.is_none()).with_witness(report.multiplicative),
        Condition::new("bijective", bijective),
    ];
    Ok(Certificate::from_conditions(conds, report.mode))
}

/// Tests `f(x∘y) = f(y)∘f(x)` literally on the source carrier.
pub fn verify_on_carrier<G: Ground>(map: &MonomialMap<G>, mode: VerifyMode, cap: u64) -> Result<Certificate> {
    let monos = map.monomials()?;
    let src = &map.source;
    let img = |x: &AlgElem<G::Elem>| map.apply_with(&monos, x);
    let report = check_pairs(src, mode, cap, &img, &|x, y| src.pmul(y, x))?;
    let c = Condition::new("anti-multiplicative", report.multiplicative.is_none()).with_witness(report.multiplicative);
    Ok(Certificate::from_conditions(vec![c], report.mode))
}

fn candidates<G: Ground>(ctx: &G, strategy: Search) -> Result<Vec<G::Elem>> {
    match strategy {
        Search::Exhaustive => {
            let all = ctx.elements().ok_or(Error::StrategyMismatch("exhaustive search needs a finite field"))?;
            Ok(all.into_iter().filter(|x| !ctx.is_zero(x)).collect())
        }
        Search::MonomialAnsatz(d) => {
            ctx.monomial_ansatz(d).ok_or(Error::StrategyMismatch("the monomial ansatz needs a function field"))
        }
    }
}

/// All `α` found by `strategy` with `N_{K/F}(α) = rhs`.
pub fn search_alpha<G: Ground>(ctx: &G, rhs: &G::Elem, strategy: Search) -> Result<Vec<G::Elem>> {
    let mut out = Vec::new();
    for a in candidates(ctx, strategy)? {
        if ctx.full_norm(&a)? == *rhs {
            out.push(a);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// `None` picks exhaustive search when `K` is finite.
    pub strategy: Option<Search>,
    /// `None` picks exhaustive verification for finite `K`, sampled otherwise.
    pub verify: Option<VerifyMode>,
    pub cap: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { strategy: None, verify: None, cap: crate::DEFAULT_CAP }
    }
}

#[derive(Clone, Debug)]
pub struct Classification<G: Ground> {
    pub k: usize,
    pub maps: Vec<(MonomialMap<G>, Certificate)>,
    /// Anchor id explaining an empty result.
    pub empty_reason: Option<&'static str>,
}

/// All monomial anti-automorphisms of `A` extending `τ`, with `k` forced by
/// the conjugation exponent of `τ`.
pub fn classify<G: Ground>(a: &PetitAlgebra<G>, tau: &G::Aut, opts: &ClassifyOptions) -> Result<Classification<G>> {
    match a.ctx().conjugation_exponent(tau) {
        Ok(k) => classify_with_degree(a, tau, k, opts),
        Err(Error::NotCompatible) => Ok(Classification { k: 0, maps: Vec::new(), empty_reason: Some("conjugation") }),
        Err(e) => Err(e),
    }
}

/// As [`classify`], for a requested degree `k`.
pub fn classify_with_degree<G: Ground>(
    alg: &PetitAlgebra<G>,
    tau: &G::Aut,
    k: usize,
    opts: &ClassifyOptions,
) -> Result<Classification<G>> {
    let ctx = alg.ctx();
    let (n, m, a) = (ctx.n(), alg.m(), alg.a());
    let strategy = match opts.strategy {
        Some(s) => s,
        None if ctx.elements().is_some() => Search::Exhaustive,
        None => return Err(Error::StrategyMismatch("function-field classification needs an ansatz bound")),
    };
    let empty = |reason| Ok(Classification { k, maps: Vec::new(), empty_reason: Some(reason) });
    let tau_a = ctx.apply(tau, a);
    let accept: alloc::boxed::Box<dyn Fn(&G::Elem) -> bool> = if k >= 2 {
        if n > m {
            return empty("no-map-n-gt-m");
        }
        if alg.is_proper_nonassociative_cyclic() {
            return empty("nonassociative-degree-one");
        }
        if !ctx.in_fixed_field(a) {
            return empty("constant-in-fixed-field");
        }
        if k >= m {
            return empty("degree-range");
        }
        if !ctx.conjugates_to(tau, k) {
            return empty("conjugation");
        }
        if gcd(k, m) != 1 {
            return empty("gcd-k-m");
        }
        if m % n != 0 {
            return empty("n-divides-m");
        }
        let rhs = ctx.mul(&tau_a, &ctx.pow(a, k as u64));
        alloc::boxed::Box::new(move |al| ctx.pow(&ctx.partial_norm(&ctx.sigma(), al, n), (m / n) as u64) == rhs)
    } else {
        if !ctx.conjugates_to(tau, 1) {
            return empty("conjugation");
        }
        let rhs = ctx.mul(&tau_a, a);
        alloc::boxed::Box::new(move |al| ctx.partial_norm(&ctx.sigma(), al, m) == rhs)
    };
    let verify = opts.verify.unwrap_or(if ctx.elements().is_some() {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::sampled_default()
    });
    let mut maps = Vec::new();
    for alpha in candidates(ctx, strategy)? {
        if !accept(&alpha) {
            continue;
        }
        let map = MonomialMap::anti(alg, tau.clone(), alpha.clone(), k);
        let cert = check_anti_conditions(ctx, tau, &alpha, k, m, a).merge(verify_map(&map, verify, opts.cap)?);
        maps.push((map, cert));
    }
    let empty_reason = maps.is_empty().then_some("norm-equation-unsolvable");
    Ok(Classification { k, maps, empty_reason })
}

/// Degree-one composition `G_{τ',α',1} ∘ G_{τ,α,1} = G_{τ'τ, τ'(α)α', 1}`.
pub fn compose<G: Ground>(g2: &MonomialMap<G>, g1: &MonomialMap<G>) -> Result<MonomialMap<G>> {
    for g in [g1, g2] {
        if g.k != 1 {
            return Err(Error::DegreeTooHigh(g.k));
        }
    }
    let (s1, s2) = (&g1.source, &g2.source);
    if s1.m() != s2.m() || s1.a() != s2.a() {
        return Err(Error::ParentMismatch);
    }
    let ctx = s1.ctx();
    let tau = ctx.compose(&g2.tau, &g1.tau);
    let alpha = ctx.mul(&ctx.apply(&g2.tau, &g1.alpha), &g2.alpha);
    let role = if g1.is_anti() ^ g2.is_anti() { Role::AntiEndo } else { Role::IsoBetween(s1.a().clone()) };
    Ok(MonomialMap::new(s1, tau, alpha, 1, role))
}

/// Least `ℓ ≤ bound` with `map^ℓ = id`. Odd powers of an anti-map are
/// anti-maps and never count as the identity. Degree-one maps use the
/// closed form `τ^ℓ = id`, `N_ℓ^τ(α) = 1`; others iterate.
pub fn order_of<G: Ground>(map: &MonomialMap<G>, bound: usize) -> Result<Order> {
    if map.k != 1 {
        return order_by_iteration(map, bound);
    }
    let ctx = map.source.ctx();
    let mut tau_l = ctx.identity();
    for l in 1..=bound {
        tau_l = ctx.compose(&map.tau, &tau_l);
        if map.is_anti() && l % 2 == 1 {
            continue;
        }
        if ctx.is_identity(&tau_l) && ctx.partial_norm(&map.tau, &map.alpha, l) == ctx.one() {
            return Ok(Order::Finite(l));
        }
    }
    Ok(Order::ExceedsBound)
}

/// Order by iterating the set map on a spanning set.
pub fn order_by_iteration<G: Ground>(map: &MonomialMap<G>, bound: usize) -> Result<Order> {
    let probes = map.source.basis().unwrap_or_else(|| map.source.generator_monomials());
    let monos = map.monomials()?;
    let mut cur = probes.clone();
    for l in 1..=bound {
        cur = cur.iter().map(|x| map.apply_with(&monos, x)).collect();
        if (!map.is_anti() || l % 2 == 0) && cur == probes {
            return Ok(Order::Finite(l));
        }
    }
    Ok(Order::ExceedsBound)
}

#[derive(Clone, Debug)]
pub struct InvolutionReport {
    pub is_involution: bool,
    pub certificate: Certificate,
    /// Whether some `α` with `N(α) = 1` and `τ(α)α = 1` exists (finite `K`,
    /// `τ² = id`); `None` when not decidable here.
    pub norm_one_route: Option<bool>,
}

/// `τ² = id` and `τ(α)α = 1`.
pub fn is_involution<G: Ground>(map: &MonomialMap<G>) -> Result<InvolutionReport> {
    if map.k != 1 {
        return Err(Error::DegreeTooHigh(map.k));
    }
    let ctx = map.source.ctx();
    let sq = ctx.is_identity(&ctx.compose(&map.tau, &map.tau));
    let prod = ctx.mul(&ctx.apply(&map.tau, &map.alpha), &map.alpha) == ctx.one();
    let certificate = Certificate::from_conditions(
        vec![Condition::new("tau-squared-identity", sq), Condition::new("tau-alpha-alpha-one", prod)],
        Mode::Predicate,
    );
    let norm_one_route = match ctx.elements() {
        Some(all) if sq => Some(all.iter().filter(|x| !ctx.is_zero(x)).any(|x| {
            ctx.full_norm(x).ok() == Some(ctx.one()) && ctx.mul(&ctx.apply(&map.tau, x), x) == ctx.one()
        })),
        Some(_) => Some(false),
        None => None,
    };
    Ok(InvolutionReport { is_involution: sq && prod, certificate, norm_one_route })
}

/// Which multiplication an enumerated map must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `f(x∘y) = f(x) ∘' f(y)` with `∘'` the product of the algebra with
    /// constant `a⁻¹`.
    Opposite,
    /// `f(x∘y) = f(y)∘f(x)` on the same carrier.
    Carrier,
}

/// A prime-field-linear map given by the images of [`PetitAlgebra::basis`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearMap<E> {
    pub images: Vec<SkewPoly<E>>,
}

impl<E: Clone> LinearMap<E> {
    /// Whether the first `field_dim` basis vectors (spanning `K`) land in `K`.
    pub fn preserves_field(&self, field_dim: usize) -> bool {
        self.images[..field_dim].iter().all(|f| f.len() <= 1)
    }
}

/// The linear map underlying a monomial map.
pub fn to_linear<G: Ground>(map: &MonomialMap<G>) -> Result<LinearMap<G::Elem>> {
    let basis = map.source.basis().ok_or(Error::NoIteration)?;
    let monos = map.monomials()?;
    Ok(LinearMap { images: basis.iter().map(|b| map.apply_with(&monos, b)).collect() })
}

/// Every unital, invertible prime-field-linear map of `A` respecting the
/// product in the given frame, found by running through the general linear
/// group. Needs `dim ≤ 4` and `p ∈ {2, 3}`.
pub fn enumerate_all_antiautomorphisms<G: Ground>(a: &PetitAlgebra<G>, frame: Frame) -> Result<Vec<LinearMap<G::Elem>>> {
    let p = a.ctx().characteristic();
    let basis = a.basis().ok_or(Error::NoIteration)?;
    let dim = basis.len();
    if dim > 4 || p > 3 {
        return Err(Error::CapExceeded { size: dim as u64, cap: 4 });
    }
    let elems = a.elements(u64::MAX)?;
    let coords: Vec<Vec<u32>> = elems.iter().map(|x| a.coords(x).unwrap()).collect();
    let index: BTreeMap<Vec<u32>, usize> = coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let target = match frame {
        Frame::Opposite => a.opposite(),
        Frame::Carrier => a.clone(),
    };
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| {
                    let prod = match frame {
                        Frame::Opposite => target.pmul(x, y),
                        Frame::Carrier => target.pmul(y, x),
                    };
                    index[&a.coords(&prod).unwrap()]
                })
                .collect()
        })
        .collect();
    let src_prod: Vec<Vec<Vec<u32>>> =
        basis.iter().map(|x| basis.iter().map(|y| a.coords(&a.pmul(x, y)).unwrap()).collect()).collect();
    let one = index[&a.coords(&a.one()).unwrap()];
    let mut out = Vec::new();
    let mut images = vec![one];
    let mut ech = Echelon::new(p);
    ech.insert(coords[one].clone());
    enumerate_rec(&mut images, &mut ech, &coords, &index, &table, &src_prod, p, dim, &mut |imgs| {
        out.push(LinearMap { images: imgs.iter().map(|&i| elems[i].clone()).collect() });
    });
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    images: &mut Vec<usize>,
    ech: &mut Echelon,
    coords: &[Vec<u32>],
    index: &BTreeMap<Vec<u32>, usize>,
    table: &[Vec<usize>],
    src_prod: &[Vec<Vec<u32>>],
    p: u32,
    dim: usize,
    emit: &mut dyn FnMut(&[usize]),
) {
    let l = images.len() - 1;
    // Check products whose factors and result only involve assigned columns.
    for i in 0..=l {
        for j in 0..=l {
            if i != l && j != l {
                continue;
            }
            let prod = &src_prod[i][j];
            if prod[l + 1..].iter().any(|&c| c != 0) {
                continue;
            }
            let mut v = vec![0u32; dim];
            for (col, &c) in prod.iter().enumerate().take(l + 1) {
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(&coords[images[col]]) {
                        *x = (*x + c * y) % p;
                    }
                }
            }
            if index[&v] != table[images[i]][images[j]] {
                return;
            }
        }
    }
    if images.len() == dim {
        emit(images);
        return;
    }
    for cand in 0..coords.len() {
        if ech.contains(&coords[cand]) {
            continue;
        }
        let mut next = ech.clone();
        next.insert(coords[cand].clone());
        images.push(cand);
        enumerate_rec(images, &mut next, coords, index, table, src_prod, p, dim, emit);
        images.pop();
    }
}
