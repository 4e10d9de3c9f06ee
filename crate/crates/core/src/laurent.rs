//! Twisted Laurent polynomials `K[t, t⁻¹; σ]` with `t^i a = σ^i(a) t^i`,
//! norm-one elements, and the monomial maps with `α = α₁tⁿ`, `k = n − 1`.
//!
//! Three set maps are provided for a pair `(τ, α₁)`, writing `j = nq + i`
//! with `0 ≤ i < n` and `N_i = N_i^{σ^k}(α₁)`:
//!
//! * [`LaurentAnti::apply_displayed`]: `c t^j ↦ τ(c) N_i t^{n(q+i)+ik}`;
//! * [`LaurentAnti::apply_iso`]: `c t^j ↦ τ(c) N_i s^{ik−n(q+i)}`, a ring
//!   isomorphism onto a second copy `K[s, s⁻¹; σ]` (so `t ↦ α₁s⁻¹`);
//! * [`LaurentAnti::apply_literal`]: `c t^j ↦ σ^j(τ(c) N_i) t^j`, the same
//!   map followed by the anti-isomorphism `c s^{−j} ↦ t^j c`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cert::{Certificate, Condition, Mode};
use crate::{Error, Ground, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly<E> {
    terms: BTreeMap<i64, E>,
}

impl<E: Clone + Eq> LaurentPoly<E> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn monomial<G: Ground<Elem = E>>(ctx: &G, c: E, j: i64) -> Self {
        Self::from_terms(ctx, [(j, c)])
    }

    /// Sums coefficients of repeated exponents and drops zeros.
    pub fn from_terms<G: Ground<Elem = E>>(ctx: &G, terms: impl IntoIterator<Item = (i64, E)>) -> Self {
        let mut out = Self::zero();
        for (j, c) in terms {
            out.add_term(ctx, j, c);
        }
        out
    }

    fn add_term<G: Ground<Elem = E>>(&mut self, ctx: &G, j: i64, c: E) {
        let sum = match self.terms.get(&j) {
            Some(old) => ctx.add(old, &c),
            None => c,
        };
        if ctx.is_zero(&sum) {
            self.terms.remove(&j);
        } else {
            self.terms.insert(j, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent in the support.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add<G: Ground<Elem = E>>(&self, ctx: &G, other: &Self) -> Self {
        let mut out = self.clone();
        for (&j, c) in &other.terms {
            out.add_term(ctx, j, c.clone());
        }
        out
    }

    pub fn fmt<G: Ground<Elem = E>>(&self, ctx: &G) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(j, c)| format!("({})t^{j}", ctx.fmt_elem(c))).collect();
        parts.join(" + ")
    }
}

/// `(a t^i)(b t^j) = a σ^i(b) t^{i+j}`.
pub fn lmul<G: Ground>(ctx: &G, f: &LaurentPoly<G::Elem>, g: &LaurentPoly<G::Elem>) -> LaurentPoly<G::Elem> {
    let mut out = LaurentPoly::zero();
    let mut twist: BTreeMap<i64, G::Aut> = BTreeMap::new();
    for (&i, a) in &f.terms {
        let s = twist.entry(i).or_insert_with(|| ctx.sigma_pow(i)).clone();
        for (&j, b) in &g.terms {
            out.add_term(ctx, i + j, ctx.mul(a, &ctx.apply(&s, b)));
        }
    }
    out
}

/// Applies `φ` to every coefficient.
pub fn map_coeffs<G: Ground>(ctx: &G, phi: &G::Aut, f: &LaurentPoly<G::Elem>) -> LaurentPoly<G::Elem> {
    LaurentPoly::from_terms(ctx, f.terms.iter().map(|(&j, c)| (j, ctx.apply(phi, c))))
}

/// Elements of norm one: all of them for finite `K`, otherwise the
/// quotients `σ(β)/β` for the generators `β`, the generators plus one, and
/// `samples` random `β` drawn from `seed`.
pub fn hilbert90_alpha1<G: Ground>(ctx: &G, samples: usize, seed: u64) -> Result<Vec<G::Elem>> {
    if let Some(all) = ctx.elements() {
        let mut out = Vec::new();
        for x in all.into_iter().filter(|x| !ctx.is_zero(x)) {
            if ctx.full_norm(&x)? == ctx.one() {
                out.push(x);
            }
        }
        return Ok(out);
    }
    let mut betas = ctx.generators();
    betas.extend(ctx.generators().iter().map(|g| ctx.add(g, &ctx.one())));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    betas.extend((0..samples).map(|_| ctx.random_elem(&mut rng)));
    let sigma = ctx.sigma();
    let mut out: Vec<G::Elem> =
        betas.iter().filter_map(|b| ctx.div(&ctx.apply(&sigma, b), b)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `∏_{i<n} σ^i(α)` for `α ∈ K[tⁿ, t⁻ⁿ]`, with `σ` acting on coefficients.
pub fn laurent_norm<G: Ground>(ctx: &G, alpha: &LaurentPoly<G::Elem>) -> Result<LaurentPoly<G::Elem>> {
    let n = ctx.n() as i64;
    if alpha.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if alpha.terms.keys().any(|j| j.rem_euclid(n) != 0) {
        return Err(Error::SupportNotInNZ);
    }
    let sigma = ctx.sigma();
    let mut acc = LaurentPoly::monomial(ctx, ctx.one(), 0);
    let mut cur = alpha.clone();
    for _ in 0..n {
        acc = lmul(ctx, &acc, &cur);
        cur = map_coeffs(ctx, &sigma, &cur);
    }
    Ok(acc)
}

/// The data `(τ, α₁)` of the map with `α = α₁tⁿ` and `k = n − 1`.
#[derive(Clone, Debug)]
pub struct LaurentAnti<G: Ground> {
    ctx: Arc<G>,
    pub tau: G::Aut,
    pub alpha1: G::Elem,
    pub k: usize,
    /// `N_i^{σ^k}(α₁)` for `i < n`.
    norms: Vec<G::Elem>,
}

/// Requires `τστ⁻¹ = σ^{n−1}`; the norm of `α₁` is recorded by
/// [`LaurentAnti::conditions`] rather than enforced.
pub fn build_laurent_anti<G: Ground>(ctx: Arc<G>, tau: G::Aut, alpha1: G::Elem) -> Result<LaurentAnti<G>> {
    let n = ctx.n();
    if n < 2 {
        return Err(Error::Invalid(String::from("σ must have order at least 2")));
    }
    if ctx.is_zero(&alpha1) {
        return Err(Error::DivisionByZero);
    }
    let k = ctx.conjugation_exponent(&tau)?;
    if k != n - 1 {
        return Err(Error::ExponentMismatch { expected: n - 1, found: k });
    }
    let sk = ctx.sigma_pow(k as i64);
    let norms = (0..n).map(|i| ctx.partial_norm(&sk, &alpha1, i)).collect();
    Ok(LaurentAnti { ctx, tau, alpha1, k, norms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWitness {
    /// `v(G̃^ℓ(t))` for `ℓ = 1..=bound`.
    pub degrees: Vec<i64>,
    pub bound: usize,
}

impl<G: Ground> LaurentAnti<G> {
    pub fn ctx(&self) -> &G {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    fn split(&self, j: i64) -> (i64, usize) {
        let n = self.n() as i64;
        (j.div_euclid(n), j.rem_euclid(n) as usize)
    }

    fn coeff(&self, c: &G::Elem, i: usize) -> G::Elem {
        self.ctx.mul(&self.ctx.apply(&self.tau, c), &self.norms[i])
    }

    pub fn apply_displayed(&self, f: &LaurentPoly<G::Elem>) -> LaurentPoly<G::Elem> {
        let (n, k) = (self.n() as i64, self.k as i64);
        LaurentPoly::from_terms(
            &*self.ctx,
            f.terms.iter().map(|(&j, c)| {
                let (q, i) = self.split(j);
                (n * (q + i as i64) + i as i64 * k, self.coeff(c, i))
            }),
        )
    }

    pub fn apply_iso(&self, f: &LaurentPoly<G::Elem>) -> LaurentPoly<G::Elem> {
        let (n, k) = (self.n() as i64, self.k as i64);
        LaurentPoly::from_terms(
            &*self.ctx,
            f.terms.iter().map(|(&j, c)| {
                let (q, i) = self.split(j);
                (i as i64 * k - n * (q + i as i64), self.coeff(c, i))
            }),
        )
    }

    pub fn apply_literal(&self, f: &LaurentPoly<G::Elem>) -> LaurentPoly<G::Elem> {
        let ctx = &*self.ctx;
        LaurentPoly::from_terms(
            ctx,
            f.terms.iter().map(|(&j, c)| {
                let (_, i) = self.split(j);
                (j, ctx.apply(&ctx.sigma_pow(j), &self.coeff(c, i)))
            }),
        )
    }

    /// The closed-form conditions: `τστ⁻¹ = σ^{n−1}` and `N_{K/F}(α₁) = 1`.
    pub fn conditions(&self) -> Result<Certificate> {
        let ctx = &*self.ctx;
        let conds = vec![
            Condition::new("laurent-conjugation", ctx.conjugates_to(&self.tau, self.n() - 1)),
            Condition::new("laurent-norm", ctx.full_norm(&self.alpha1)? == ctx.one()),
        ];
        Ok(Certificate::from_conditions(conds, Mode::Predicate))
    }

    /// Iterates [`Self::apply_displayed`] on `t` and records the minimal
    /// degrees, which must increase strictly.
    pub fn infinite_order_witness(&self, bound: usize) -> Result<DegreeWitness> {
        if self.n() <= 2 {
            return Err(Error::Invalid(String::from("the degree witness needs n > 2")));
        }
        if bound == 0 {
            return Err(Error::Invalid(String::from("bound must be positive")));
        }
        let ctx = &*self.ctx;
        let mut cur = LaurentPoly::monomial(ctx, ctx.one(), 1);
        let mut degrees = Vec::with_capacity(bound);
        let mut prev = 1;
        for l in 1..=bound {
            cur = self.apply_displayed(&cur);
            let d = cur.min_degree().ok_or(Error::Monotonicity(l))?;
            if d <= prev {
                return Err(Error::Monotonicity(l));
            }
            degrees.push(d);
            prev = d;
        }
        Ok(DegreeWitness { degrees, bound })
    }

    /// Monomials `c t^j` for `c` in a prime basis of `K` (or the generators
    /// and `1`) and `|j| ≤ 2n`, followed by `samples` random elements with
    /// support in `[−2n, 2n]`.
    fn test_elements(&self, samples: u64, seed: u64) -> Vec<LaurentPoly<G::Elem>> {
        let ctx = &*self.ctx;
        let w = 2 * self.n() as i64;
        let coeffs = ctx.prime_basis().unwrap_or_else(|| {
            let mut g = ctx.generators();
            g.push(ctx.one());
            g
        });
        let mut out: Vec<_> =
            (-w..=w).flat_map(|j| coeffs.iter().map(move |c| (j, c.clone()))).map(|(j, c)| LaurentPoly::monomial(ctx, c, j)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let terms = (0..3).map(|_| {
                let j = (rng.next_u32() % (2 * w as u32 + 1)) as i64 - w;
                (j, ctx.random_elem(&mut rng))
            });
            out.push(LaurentPoly::from_terms(ctx, terms.collect::<Vec<_>>()));
        }
        out
    }

    fn check(
        &self,
        samples: u64,
        seed: u64,
        name: &'static str,
        f: &dyn Fn(&LaurentPoly<G::Elem>) -> LaurentPoly<G::Elem>,
        reversed: bool,
    ) -> Certificate {
        let ctx = &*self.ctx;
        let elems = self.test_elements(samples, seed);
        let monos = elems.len() - samples as usize;
        let images: Vec<_> = elems.iter().map(f).collect();
        let one = LaurentPoly::monomial(ctx, ctx.one(), 0);
        let unit = f(&one) == one;
        let mut pairs: Vec<(usize, usize)> = (0..monos).flat_map(|i| (0..monos).map(move |j| (i, j))).collect();
        pairs.extend((monos..elems.len()).map(|i| (i, monos + (i * 7 + 3) % samples.max(1) as usize)));
        let mut witness = None;
        for (i, j) in pairs {
            let lhs = f(&lmul(ctx, &elems[i], &elems[j]));
            let rhs = if reversed { lmul(ctx, &images[j], &images[i]) } else { lmul(ctx, &images[i], &images[j]) };
            if lhs != rhs {
                witness = Some(format!(
                    "f = {}, g = {}: image of fg = {}, expected {}",
                    elems[i].fmt(ctx),
                    elems[j].fmt(ctx),
                    lhs.fmt(ctx),
                    rhs.fmt(ctx)
                ));
                break;
            }
        }
        let conds =
            vec![Condition::new("unit", unit), Condition::new(name, witness.is_none()).with_witness(witness)];
        Certificate::from_conditions(conds, Mode::Sampled { count: samples, seed })
    }

    /// Checks that [`Self::apply_iso`] is a unital ring homomorphism into
    /// `K[s, s⁻¹; σ]` on all window monomial pairs and on sampled pairs.
    pub fn verify(&self, samples: u64, seed: u64) -> Certificate {
        self.check(samples, seed, "multiplicative", &|f| self.apply_iso(f), false)
    }

    /// Checks `f(xy) = f(y)f(x)` for [`Self::apply_displayed`] on the same
    /// ring.
    pub fn verify_displayed_literal(&self, samples: u64, seed: u64) -> Certificate {
        self.check(samples, seed, "anti-multiplicative", &|f| self.apply_displayed(f), true)
    }

    /// Checks `f(xy) = f(y)f(x)` for [`Self::apply_literal`].
    pub fn verify_literal(&self, samples: u64, seed: u64) -> Certificate {
        self.check(samples, seed, "anti-multiplicative", &|f| self.apply_literal(f), true)
    }
}

/// See [`LaurentAnti::verify`].
pub fn verify_laurent_anti<G: Ground>(map: &LaurentAnti<G>, samples: u64, seed: u64) -> Certificate {
    map.verify(samples, seed)
}
