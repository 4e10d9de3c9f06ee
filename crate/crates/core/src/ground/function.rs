use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::{FiniteField, Ground};
use crate::{Error, Result};

/// Polynomial over `GF(q)`, coefficients lowest degree first, no trailing zeros.
pub type Poly = Vec<u32>;

/// Element of `GF(q)(x)` in canonical form: coprime numerator and monic
/// denominator, zero stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

/// Automorphism of `GF(q)(x)`: `x ↦ scale·x` or `x ↦ scale/x`, and
/// `c ↦ c^(p^frob)` on constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FfAut {
    pub invert: bool,
    pub scale: u32,
    pub frob: u32,
}

/// `K = GF(q)(x)` with `σ(x) = ζx` fixing constants, so `F = GF(q)(x^n)`.
#[derive(Clone, Debug)]
pub struct FunctionField {
    k: FiniteField,
    zeta: u32,
    n: usize,
}

impl FunctionField {
    /// `q` must be a prime power and `ζ ∈ GF(q)^×` must have order `n`.
    pub fn new(q: u32, zeta: u32, n: usize, cap: u64) -> Result<Self> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::Invalid(format!("{q} is not a prime power")))?;
        let mut e = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::Invalid(format!("{q} is not a prime power")));
        }
        let k = FiniteField::new(p, e, cap)?;
        if zeta == 0 || zeta >= q {
            return Err(Error::Invalid(format!("zeta code {zeta} is not a unit of GF({q})")));
        }
        let found = k.mult_order(zeta).unwrap_or(0);
        if found != n {
            return Err(Error::ZetaOrder { expected: n, found });
        }
        Ok(Self { k, zeta, n })
    }

    pub fn constants(&self) -> &FiniteField {
        &self.k
    }

    pub fn zeta(&self) -> u32 {
        self.zeta
    }

    pub fn x(&self) -> RatFn {
        RatFn { num: vec![0, 1], den: vec![1] }
    }

    pub fn constant(&self, c: u32) -> RatFn {
        self.ratio(vec![c], vec![1]).expect("nonzero denominator")
    }

    /// `c·x^j`.
    pub fn monomial(&self, c: u32, j: i32) -> RatFn {
        let mut xp = vec![0; j.unsigned_abs() as usize];
        xp.push(1);
        if j >= 0 {
            self.ratio(self.p_scale(&xp, c), vec![1]).unwrap()
        } else {
            self.ratio(vec![c], xp).unwrap()
        }
    }

    /// Build `num/den` in canonical form; `None` if `den = 0`.
    pub fn ratio(&self, num: Poly, den: Poly) -> Option<RatFn> {
        let (num, den) = (trim(num), trim(den));
        if den.is_empty() {
            return None;
        }
        if num.is_empty() {
            return Some(RatFn { num, den: vec![1] });
        }
        let g = self.p_gcd(&num, &den);
        let (num, _) = self.p_divrem(&num, &g);
        let (den, _) = self.p_divrem(&den, &g);
        let lc_inv = self.k.inv(*den.last().unwrap()).unwrap();
        Some(RatFn { num: self.p_scale(&num, lc_inv), den: self.p_scale(&den, lc_inv) })
    }

    fn p_add(&self, a: &[u32], b: &[u32]) -> Poly {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.k.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
        }
        trim(out)
    }

    fn p_neg(&self, a: &[u32]) -> Poly {
        a.iter().map(|&c| self.k.neg(c)).collect()
    }

    fn p_mul(&self, a: &[u32], b: &[u32]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.k.add(out[i + j], self.k.mul(x, y));
            }
        }
        trim(out)
    }

    fn p_scale(&self, a: &[u32], c: u32) -> Poly {
        trim(a.iter().map(|&x| self.k.mul(x, c)).collect())
    }

    fn p_divrem(&self, a: &[u32], b: &[u32]) -> (Poly, Poly) {
        let lc_inv = self.k.inv(*b.last().expect("nonzero divisor")).unwrap();
        let mut rem = a.to_vec();
        if rem.len() < b.len() {
            return (Vec::new(), trim(rem));
        }
        let mut quo = vec![0; rem.len() - b.len() + 1];
        for shift in (0..quo.len()).rev() {
            let c = self.k.mul(rem[shift + b.len() - 1], lc_inv);
            if c == 0 {
                continue;
            }
            quo[shift] = c;
            for (j, &y) in b.iter().enumerate() {
                rem[shift + j] = self.k.sub(rem[shift + j], self.k.mul(c, y));
            }
        }
        (trim(quo), trim(rem))
    }

    fn p_gcd(&self, a: &[u32], b: &[u32]) -> Poly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let (_, r) = self.p_divrem(&a, &b);
            a = b;
            b = r;
        }
        let lc_inv = self.k.inv(*a.last().unwrap()).unwrap();
        self.p_scale(&a, lc_inv)
    }

    /// Image of a polynomial under `g`, as a rational function.
    fn apply_poly(&self, g: &FfAut, a: &[u32]) -> RatFn {
        if a.is_empty() {
            return self.zero();
        }
        let coeffs: Vec<u32> = a
            .iter()
            .enumerate()
            .map(|(i, &c)| self.k.mul(self.k.frob(c, g.frob), self.k.pow(g.scale, i as u64)))
            .collect();
        if g.invert {
            let d = a.len() - 1;
            let mut den = vec![0; d];
            den.push(1);
            let num: Poly = coeffs.into_iter().rev().collect();
            self.ratio(num, den).unwrap()
        } else {
            self.ratio(coeffs, vec![1]).unwrap()
        }
    }

    fn fmt_poly(&self, a: &[u32]) -> String {
        if a.is_empty() {
            return String::from("0");
        }
        let mut terms = Vec::new();
        for (i, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = self.k.fmt(c);
            terms.push(match (i, c) {
                (0, _) => coef,
                (1, 1) => String::from("x"),
                (1, _) => format!("{coef}*x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{coef}*x^{i}"),
            });
        }
        terms.join("+")
    }
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

impl Ground for FunctionField {
    type Elem = RatFn;
    type Aut = FfAut;

    fn zero(&self) -> RatFn {
        RatFn { num: Vec::new(), den: vec![1] }
    }
    fn one(&self) -> RatFn {
        RatFn { num: vec![1], den: vec![1] }
    }
    fn is_zero(&self, x: &RatFn) -> bool {
        x.num.is_empty()
    }
    fn add(&self, x: &RatFn, y: &RatFn) -> RatFn {
        if x.den == y.den {
            return self.ratio(self.p_add(&x.num, &y.num), x.den.clone()).unwrap();
        }
        let num = self.p_add(&self.p_mul(&x.num, &y.den), &self.p_mul(&y.num, &x.den));
        self.ratio(num, self.p_mul(&x.den, &y.den)).unwrap()
    }
    fn neg(&self, x: &RatFn) -> RatFn {
        RatFn { num: self.p_neg(&x.num), den: x.den.clone() }
    }
    fn mul(&self, x: &RatFn, y: &RatFn) -> RatFn {
        if x.num.is_empty() || y.num.is_empty() {
            return self.zero();
        }
        self.ratio(self.p_mul(&x.num, &y.num), self.p_mul(&x.den, &y.den)).unwrap()
    }
    fn inv(&self, x: &RatFn) -> Option<RatFn> {
        if x.num.is_empty() {
            return None;
        }
        self.ratio(x.den.clone(), x.num.clone())
    }

    fn n(&self) -> usize {
        self.n
    }
    fn sigma(&self) -> FfAut {
        FfAut { invert: false, scale: self.zeta, frob: 0 }
    }
    fn identity(&self) -> FfAut {
        FfAut { invert: false, scale: 1, frob: 0 }
    }
    fn apply(&self, g: &FfAut, x: &RatFn) -> RatFn {
        let num = self.apply_poly(g, &x.num);
        let den = self.apply_poly(g, &x.den);
        self.div(&num, &den).expect("automorphisms map nonzero to nonzero")
    }
    fn compose(&self, outer: &FfAut, inner: &FfAut) -> FfAut {
        let c2 = if inner.invert { self.k.inv(outer.scale).unwrap() } else { outer.scale };
        FfAut {
            invert: outer.invert ^ inner.invert,
            scale: self.k.mul(self.k.frob(inner.scale, outer.frob), c2),
            frob: (outer.frob + inner.frob) % self.k.degree(),
        }
    }
    fn automorphisms(&self) -> Vec<(String, FfAut)> {
        let mut out = vec![(String::from("id"), self.identity()), (String::from("sigma"), self.sigma())];
        if self.k.degree() > 1 {
            out.push((String::from("coef_frob"), FfAut { invert: false, scale: 1, frob: 1 }));
        }
        out.push((String::from("inv_x"), FfAut { invert: true, scale: 1, frob: 0 }));
        out
    }
    fn generators(&self) -> Vec<RatFn> {
        vec![self.x(), self.constant(self.k.generator())]
    }

    fn characteristic(&self) -> u32 {
        self.k.p()
    }
    fn prime_basis(&self) -> Option<Vec<RatFn>> {
        None
    }
    fn coords(&self, _x: &RatFn) -> Option<Vec<u32>> {
        None
    }
    fn elements(&self) -> Option<Vec<RatFn>> {
        None
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> RatFn {
        let q = self.k.order();
        let num_deg = (rng.next_u32() % 4) as usize;
        let num: Poly = (0..=num_deg).map(|_| rng.next_u32() % q).collect();
        let den_deg = (rng.next_u32() % 3) as usize;
        let mut den: Poly = (0..den_deg).map(|_| rng.next_u32() % q).collect();
        den.push(1);
        self.ratio(num, den).unwrap()
    }
    fn monomial_ansatz(&self, max_deg: i32) -> Option<Vec<RatFn>> {
        let mut out = Vec::new();
        for j in -max_deg..=max_deg {
            for c in 1..self.k.order() {
                out.push(self.monomial(c, j));
            }
        }
        Some(out)
    }
    fn fmt_elem(&self, x: &RatFn) -> String {
        if x.den == [1] {
            return self.fmt_poly(&x.num);
        }
        format!("({})/({})", self.fmt_poly(&x.num), self.fmt_poly(&x.den))
    }
    fn fmt_aut(&self, g: &FfAut) -> String {
        self.aut_name(g).unwrap_or_else(|| {
            let x = if g.invert { "1/x" } else { "x" };
            format!("x->{}*{x},frob{}", self.k.fmt(g.scale), g.frob)
        })
    }
    fn aut_eq(&self, g: &FfAut, h: &FfAut) -> bool {
        g.invert == h.invert && g.scale == h.scale && g.frob % self.k.degree() == h.frob % self.k.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;

    fn gf4x() -> FunctionField {
        FunctionField::new(4, 2, 3, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn canonical_form() {
        let k = gf4x();
        let x = k.x();
        let a = k.add(&x, &k.one());
        let q = k.div(&k.mul(&a, &x), &a).unwrap();
        assert_eq!(q, x);
        assert_eq!(k.sub(&q, &x), k.zero());
        let r = k.ratio(vec![2, 2], vec![0, 2]).unwrap();
        assert_eq!(r.den, vec![0, 1]);
        assert_eq!(r.num, vec![1, 1]);
    }

    #[test]
    fn automorphisms_act_as_described() {
        let k = gf4x();
        let x = k.x();
        let s = k.sigma();
        assert_eq!(k.apply(&s, &x), k.monomial(2, 1));
        let inv = k.automorphism("inv_x").unwrap();
        assert_eq!(k.apply(&inv, &x), k.monomial(1, -1));
        let cf = k.automorphism("coef_frob").unwrap();
        assert_eq!(k.apply(&cf, &k.monomial(2, 2)), k.monomial(3, 2));
        for (_, g) in k.automorphisms() {
            for (_, h) in k.automorphisms() {
                let gh = k.compose(&g, &h);
                for y in [x.clone(), k.monomial(2, -1), k.add(&x, &k.constant(3))] {
                    assert_eq!(k.apply(&gh, &y), k.apply(&g, &k.apply(&h, &y)));
                }
            }
        }
    }

    #[test]
    fn zeta_order_is_checked() {
        assert!(FunctionField::new(4, 1, 1, DEFAULT_CAP).is_ok());
        assert!(FunctionField::new(5, 2, 4, DEFAULT_CAP).is_ok());
        assert_eq!(FunctionField::new(5, 4, 4, DEFAULT_CAP).unwrap_err(), Error::ZetaOrder { expected: 4, found: 2 });
        assert!(FunctionField::new(6, 1, 1, DEFAULT_CAP).is_err());
    }
}
