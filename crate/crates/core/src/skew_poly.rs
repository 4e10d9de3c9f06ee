//! Arithmetic in `K[t;σ]` with left coefficients and `t·a = σ(a)·t`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg;
use crate::{Error, Ground, Result};

/// `Σ coeffs[i]·t^i`, with no trailing zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkewPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> SkewPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for zero).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
}

impl<E: Clone> SkewPoly<E> {
    pub fn new<G: Ground<Elem = E>>(ctx: &G, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant<G: Ground<Elem = E>>(ctx: &G, c: E) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `c·t^i`.
    pub fn monomial<G: Ground<Elem = E>>(ctx: &G, c: E, i: usize) -> Self {
        let mut v = vec![ctx.zero(); i];
        v.push(c);
        Self::new(ctx, v)
    }

    pub fn coeff<G: Ground<Elem = E>>(&self, ctx: &G, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }
}

pub fn sp_add<G: Ground>(ctx: &G, f: &SkewPoly<G::Elem>, g: &SkewPoly<G::Elem>) -> SkewPoly<G::Elem> {
    let len = f.len().max(g.len());
    SkewPoly::new(ctx, (0..len).map(|i| ctx.add(&f.coeff(ctx, i), &g.coeff(ctx, i))).collect())
}

pub fn sp_neg<G: Ground>(ctx: &G, f: &SkewPoly<G::Elem>) -> SkewPoly<G::Elem> {
    SkewPoly { coeffs: f.coeffs.iter().map(|c| ctx.neg(c)).collect() }
}

pub fn sp_sub<G: Ground>(ctx: &G, f: &SkewPoly<G::Elem>, g: &SkewPoly<G::Elem>) -> SkewPoly<G::Elem> {
    sp_add(ctx, f, &sp_neg(ctx, g))
}

/// `c·f`, multiplying coefficients on the left.
pub fn sp_scale<G: Ground>(ctx: &G, c: &G::Elem, f: &SkewPoly<G::Elem>) -> SkewPoly<G::Elem> {
    SkewPoly::new(ctx, f.coeffs.iter().map(|x| ctx.mul(c, x)).collect())
}

/// Product under `(a t^i)(b t^j) = a σ^i(b) t^{i+j}`.
pub fn sp_mul<G: Ground>(ctx: &G, f: &SkewPoly<G::Elem>, g: &SkewPoly<G::Elem>) -> SkewPoly<G::Elem> {
    if f.is_zero() || g.is_zero() {
        return SkewPoly::zero();
    }
    let mut out = vec![ctx.zero(); f.len() + g.len() - 1];
    let mut twisted: Vec<G::Elem> = g.coeffs.clone();
    let sigma = ctx.sigma();
    for (i, a) in f.coeffs.iter().enumerate() {
        if i > 0 {
            twisted = twisted.iter().map(|b| ctx.apply(&sigma, b)).collect();
        }
        if ctx.is_zero(a) {
            continue;
        }
        for (j, b) in twisted.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
        }
    }
    SkewPoly::new(ctx, out)
}

/// Right division: `f = q·g + r` with `deg r < deg g`.
pub fn sp_right_divide<G: Ground>(
    ctx: &G,
    f: &SkewPoly<G::Elem>,
    g: &SkewPoly<G::Elem>,
) -> Result<(SkewPoly<G::Elem>, SkewPoly<G::Elem>)> {
    let dg = g.degree().ok_or(Error::DivisionByZero)?;
    let lead = g.coeffs[dg].clone();
    let mut r = f.clone();
    let mut q = vec![ctx.zero(); f.len().saturating_sub(dg)];
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let shift = dr - dg;
        // (u t^shift)(lead t^dg) = u σ^shift(lead) t^dr
        let twisted_lead = ctx.apply(&ctx.sigma_pow(shift as i64), &lead);
        let u = ctx.div(&r.coeffs[dr], &twisted_lead).ok_or(Error::DivisionByZero)?;
        q[shift] = ctx.add(&q[shift], &u);
        let term = SkewPoly::monomial(ctx, u, shift);
        r = sp_sub(ctx, &r, &sp_mul(ctx, &term, g));
    }
    Ok((SkewPoly::new(ctx, q), r))
}

/// Right remainder of `f` modulo `t^m - a`, using `c t^j ≡ c σ^{j-m}(a) t^{j-m}`.
pub fn mod_r<G: Ground>(ctx: &G, f: &SkewPoly<G::Elem>, m: usize, a: &G::Elem) -> Result<SkewPoly<G::Elem>> {
    if ctx.is_zero(a) {
        return Err(Error::ZeroConstant);
    }
    if m == 0 {
        return Err(Error::Invalid(String::from("modulus degree must be positive")));
    }
    Ok(reduce(ctx, f.coeffs.clone(), m, &twists(ctx, a)))
}

/// `σ^i(a)` for `i = 0..n`.
pub(crate) fn twists<G: Ground>(ctx: &G, a: &G::Elem) -> Vec<G::Elem> {
    let sigma = ctx.sigma();
    let mut out = Vec::with_capacity(ctx.n());
    let mut cur = a.clone();
    for _ in 0..ctx.n() {
        out.push(cur.clone());
        cur = ctx.apply(&sigma, &cur);
    }
    out
}

pub(crate) fn reduce<G: Ground>(ctx: &G, mut v: Vec<G::Elem>, m: usize, a_twists: &[G::Elem]) -> SkewPoly<G::Elem> {
    let n = a_twists.len();
    for j in (m..v.len()).rev() {
        if ctx.is_zero(&v[j]) {
            continue;
        }
        let c = core::mem::replace(&mut v[j], ctx.zero());
        let t = ctx.mul(&c, &a_twists[(j - m) % n]);
        v[j - m] = ctx.add(&v[j - m], &t);
    }
    v.truncate(m);
    SkewPoly::new(ctx, v)
}

/// `t^m - a`.
pub fn modulus_poly<G: Ground>(ctx: &G, m: usize, a: &G::Elem) -> SkewPoly<G::Elem> {
    let mut v = vec![ctx.zero(); m + 1];
    v[0] = ctx.neg(a);
    v[m] = ctx.one();
    SkewPoly::new(ctx, v)
}

/// Whether `t^m - a` generates a two-sided ideal: `(t^m - a)·u` must be
/// right-divisible by `t^m - a` for `u = t` and for generators of `K`.
pub fn is_two_sided<G: Ground>(ctx: &G, m: usize, a: &G::Elem) -> Result<bool> {
    if ctx.is_zero(a) {
        return Err(Error::ZeroConstant);
    }
    let f = modulus_poly(ctx, m, a);
    let mut probes = vec![SkewPoly::monomial(ctx, ctx.one(), 1)];
    let gens = ctx.prime_basis().unwrap_or_else(|| ctx.generators());
    probes.extend(gens.into_iter().chain(ctx.generators()).map(|c| SkewPoly::constant(ctx, c)));
    for u in &probes {
        let (_, r) = sp_right_divide(ctx, &sp_mul(ctx, &f, u), &f)?;
        if !r.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed form of `(αt^k)^s` in `K[t;σ]/K[t;σ](t^m - b)`:
/// `N_s^{σ^k}(α) ∏_{i=1}^{⌊sk/m⌋} σ^{sk-im}(b) t^{sk mod m}`.
pub fn closed_form_power<G: Ground>(
    ctx: &G,
    alpha: &G::Elem,
    k: usize,
    s: usize,
    m: usize,
    b: &G::Elem,
) -> (G::Elem, usize) {
    let mut coeff = ctx.partial_norm(&ctx.sigma_pow(k as i64), alpha, s);
    for i in 1..=(s * k / m) {
        let e = (s * k - i * m) as i64;
        coeff = ctx.mul(&coeff, &ctx.apply(&ctx.sigma_pow(e), b));
    }
    (coeff, (s * k) % m)
}

/// `(αt^k)^s` computed as `((αt^k ∘ αt^k) ∘ αt^k) ∘ ⋯` in the quotient.
pub fn naive_power_left<G: Ground>(
    ctx: &G,
    alpha: &G::Elem,
    k: usize,
    s: usize,
    m: usize,
    b: &G::Elem,
) -> Result<SkewPoly<G::Elem>> {
    let x = mod_r(ctx, &SkewPoly::monomial(ctx, alpha.clone(), k), m, b)?;
    let mut acc = mod_r(ctx, &SkewPoly::constant(ctx, ctx.one()), m, b)?;
    for _ in 0..s {
        acc = mod_r(ctx, &sp_mul(ctx, &acc, &x), m, b)?;
    }
    Ok(acc)
}

/// `(αt^k)^s` computed as `αt^k ∘ (αt^k ∘ (⋯))` in the quotient.
pub fn naive_power_right<G: Ground>(
    ctx: &G,
    alpha: &G::Elem,
    k: usize,
    s: usize,
    m: usize,
    b: &G::Elem,
) -> Result<SkewPoly<G::Elem>> {
    let x = mod_r(ctx, &SkewPoly::monomial(ctx, alpha.clone(), k), m, b)?;
    let mut acc = mod_r(ctx, &SkewPoly::constant(ctx, ctx.one()), m, b)?;
    for _ in 0..s {
        acc = mod_r(ctx, &sp_mul(ctx, &x, &acc), m, b)?;
    }
    Ok(acc)
}

/// `(αt^k)^s` multiplied out in `K[t;σ]` and reduced once.
pub fn naive_power_unreduced<G: Ground>(
    ctx: &G,
    alpha: &G::Elem,
    k: usize,
    s: usize,
    m: usize,
    b: &G::Elem,
) -> Result<SkewPoly<G::Elem>> {
    let x = SkewPoly::monomial(ctx, alpha.clone(), k);
    let mut acc = SkewPoly::constant(ctx, ctx.one());
    for _ in 0..s {
        acc = sp_mul(ctx, &acc, &x);
    }
    mod_r(ctx, &acc, m, b)
}

/// The closed form of `(αt^k)^s`, checked against the iterated products.
/// A disagreement means the power is not well defined in the quotient and
/// is reported as [`Error::WellDefinednessViolation`].
pub fn monomial_power<G: Ground>(
    ctx: &G,
    alpha: &G::Elem,
    k: usize,
    s: usize,
    m: usize,
    b: &G::Elem,
) -> Result<(G::Elem, usize)> {
    if ctx.is_zero(b) {
        return Err(Error::ZeroConstant);
    }
    let (coeff, exp) = closed_form_power(ctx, alpha, k, s, m, b);
    let closed = SkewPoly::monomial(ctx, coeff.clone(), exp);
    let unreduced = naive_power_unreduced(ctx, alpha, k, s, m, b)?;
    if unreduced != closed {
        return Err(Error::Internal(format!(
            "closed-form power {} differs from the reduced product {}",
            fmt_skew(ctx, &closed),
            fmt_skew(ctx, &unreduced)
        )));
    }
    let left = naive_power_left(ctx, alpha, k, s, m, b)?;
    if left != closed {
        return Err(Error::WellDefinednessViolation(format!(
            "({}·t^{k})^{s}: closed form {} but iterated product {}",
            ctx.fmt_elem(alpha),
            fmt_skew(ctx, &closed),
            fmt_skew(ctx, &left)
        )));
    }
    Ok((coeff, exp))
}

/// All elements of `K[t;σ]/(t^m - a)` as coefficient vectors, if `K` is finite
/// and there are at most `cap` of them.
pub(crate) fn quotient_elements<G: Ground>(ctx: &G, m: usize, cap: u64) -> Result<Vec<SkewPoly<G::Elem>>> {
    let elems = ctx.elements().ok_or(Error::NoIteration)?;
    let size = (elems.len() as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut idx = vec![0usize; m];
    loop {
        out.push(SkewPoly::new(ctx, idx.iter().map(|&i| elems[i].clone()).collect()));
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Prime-field basis `{c·t^i}` of the quotient, with `c` running over a
/// prime-field basis of `K`.
pub(crate) fn quotient_basis<G: Ground>(ctx: &G, m: usize) -> Option<Vec<SkewPoly<G::Elem>>> {
    let kb = ctx.prime_basis()?;
    Some((0..m).flat_map(|i| kb.iter().map(move |c| (c.clone(), i))).map(|(c, i)| SkewPoly::monomial(ctx, c, i)).collect())
}

/// Prime-field coordinates of a quotient element.
pub(crate) fn quotient_coords<G: Ground>(ctx: &G, m: usize, f: &SkewPoly<G::Elem>) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..m {
        out.extend(ctx.coords(&f.coeff(ctx, i))?);
    }
    Some(out)
}

/// Irreducibility of `t^m - a` via a zero-divisor scan of the quotient:
/// the quotient has no zero divisors iff every left multiplication
/// `y ↦ x∘y` with `x ≠ 0` is injective.
pub fn is_irreducible<G: Ground>(ctx: &G, m: usize, a: &G::Elem, cap: u64) -> Result<bool> {
    if ctx.is_zero(a) {
        return Err(Error::ZeroConstant);
    }
    let elems = quotient_elements(ctx, m, cap)?;
    let basis = quotient_basis(ctx, m).ok_or(Error::NoIteration)?;
    let tw = twists(ctx, a);
    let p = ctx.characteristic();
    for x in elems.iter().filter(|x| !x.is_zero()) {
        let rows: Vec<Vec<u32>> = basis
            .iter()
            .map(|y| {
                let prod = reduce(ctx, sp_mul(ctx, x, y).coeffs, m, &tw);
                quotient_coords(ctx, m, &prod).expect("finite field coordinates")
            })
            .collect();
        if linalg::rank(rows, p) < basis.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `t^m - a` has a monic right factor of degree `1..m`; found by
/// trying every monic candidate. Used as an independent check of
/// [`is_irreducible`].
pub fn has_right_factor<G: Ground>(ctx: &G, m: usize, a: &G::Elem, cap: u64) -> Result<bool> {
    let f = modulus_poly(ctx, m, a);
    for d in 1..m {
        for low in quotient_elements(ctx, d, cap)? {
            let mut v: Vec<G::Elem> = (0..d).map(|i| low.coeff(ctx, i)).collect();
            v.push(ctx.one());
            let g = SkewPoly::new(ctx, v);
            if sp_right_divide(ctx, &f, &g)?.1.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn fmt_skew<G: Ground>(ctx: &G, f: &SkewPoly<G::Elem>) -> String {
    if f.is_zero() {
        return String::from("0");
    }
    let mut terms = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        if ctx.is_zero(c) {
            continue;
        }
        let c = ctx.fmt_elem(c);
        terms.push(match i {
            0 => c,
            1 => format!("({c})t"),
            _ => format!("({c})t^{i}"),
        });
    }
    terms.join(" + ")
}
