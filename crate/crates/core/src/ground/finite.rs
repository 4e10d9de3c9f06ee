use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::Ground;
use crate::{Error, Result};

/// `GF(p^deg)` with elements encoded as integers whose base-`p` digits are
/// the coefficients of the polynomial representative (lowest degree first).
/// Multiplication goes through exp/log tables for a primitive modulus.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    deg: u32,
    q: u32,
    /// Coefficients `c_0..c_{deg-1}` of the monic modulus.
    modulus: Vec<u32>,
    exp: Arc<Vec<u32>>,
    log: Arc<Vec<u32>>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FiniteField {
    pub fn new(p: u32, deg: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if deg == 0 {
            return Err(Error::Invalid(String::from("extension degree must be positive")));
        }
        let size = (p as u64).checked_pow(deg).unwrap_or(u64::MAX);
        if size > cap || size > u32::MAX as u64 {
            return Err(Error::CapExceeded { size, cap });
        }
        let q = size as u32;
        // Monic polynomials of degree `deg`, in order of their lower coefficients.
        for code in 0..q {
            let modulus = digits_of(code, p, deg as usize);
            if let Some(exp) = primitive_powers(p, &modulus, q) {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return Ok(Self { p, deg, q, modulus, exp: Arc::new(exp), log: Arc::new(log) });
            }
        }
        Err(Error::NoIrreducible(deg))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element `x` (code of its residue class).
    pub fn generator(&self) -> u32 {
        self.exp[1 % (self.q as usize - 1).max(1)]
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        digits_of(x, self.p, self.deg as usize)
    }

    pub fn from_digits(&self, d: &[u32]) -> Option<u32> {
        if d.len() > self.deg as usize || d.iter().any(|&c| c >= self.p) {
            return None;
        }
        Some(d.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.q as u64 - 1;
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % m) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let m = self.q - 1;
        Some(self.exp[((m - self.log[a as usize]) % m) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = self.q as u64 - 1;
        self.exp[((self.log[a as usize] as u64 * (e % m)) % m) as usize]
    }

    /// Discrete logarithm to base [`FiniteField::generator`].
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `x ↦ x^(p^e)`.
    pub fn frob(&self, a: u32, e: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let m = self.q as u64 - 1;
        let mut pe = 1u64;
        for _ in 0..(e % self.deg) {
            pe = pe * self.p as u64 % m.max(1);
        }
        self.pow(a, pe)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> Option<usize> {
        let mut acc = a;
        for i in 1..self.q as usize {
            if acc == 1 {
                return Some(i);
            }
            acc = self.mul(acc, a);
        }
        None
    }

    pub fn fmt(&self, a: u32) -> String {
        if a < self.p {
            format!("{a}")
        } else {
            match self.log[a as usize] {
                1 => String::from("g"),
                l => format!("g^{l}"),
            }
        }
    }
}

fn digits_of(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

/// Successive powers of `x` modulo the monic polynomial with lower
/// coefficients `modulus`, if `x` has order exactly `q - 1`.
fn primitive_powers(p: u32, modulus: &[u32], q: u32) -> Option<Vec<u32>> {
    let deg = modulus.len();
    let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    let mut cur = vec![0u32; deg];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(q as usize - 1);
    for i in 0..q - 1 {
        let code = encode(&cur);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // multiply by x and reduce: x^deg = -(c_0 + ... + c_{deg-1} x^{deg-1})
        let top = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..deg {
            cur[j] = (cur[j] + (p - top) * modulus[j]) % p;
        }
    }
    (encode(&cur) == 1).then_some(exp)
}

/// The tower `GF(p^(dn)) / GF(p^d)` with `σ(x) = x^(p^d)`. Automorphisms are
/// Frobenius exponents `e` with `τ(x) = x^(p^e)`, reduced modulo `dn`.
#[derive(Clone, Debug)]
pub struct FrobeniusTower {
    field: FiniteField,
    d: u32,
    n: u32,
}

impl FrobeniusTower {
    pub fn new(p: u32, d: u32, n: u32, cap: u64) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::Invalid(String::from("d and n must be positive")));
        }
        let field = FiniteField::new(p, d * n, cap)?;
        let tower = Self { field, d, n };
        let ord = tower.aut_order(&tower.sigma(), n as usize + 1);
        if ord != Some(n as usize) {
            return Err(Error::Internal(format!("sigma has order {ord:?}, expected {n}")));
        }
        Ok(tower)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }
}

impl Ground for FrobeniusTower {
    type Elem = u32;
    type Aut = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, x: &u32, y: &u32) -> u32 {
        self.field.add(*x, *y)
    }
    fn neg(&self, x: &u32) -> u32 {
        self.field.neg(*x)
    }
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        self.field.mul(*x, *y)
    }
    fn inv(&self, x: &u32) -> Option<u32> {
        self.field.inv(*x)
    }
    fn pow(&self, x: &u32, e: u64) -> u32 {
        self.field.pow(*x, e)
    }

    fn n(&self) -> usize {
        self.n as usize
    }
    fn sigma(&self) -> u32 {
        self.d % self.field.deg
    }
    fn identity(&self) -> u32 {
        0
    }
    fn apply(&self, g: &u32, x: &u32) -> u32 {
        self.field.frob(*x, *g)
    }
    fn compose(&self, outer: &u32, inner: &u32) -> u32 {
        (outer + inner) % self.field.deg
    }
    fn automorphisms(&self) -> Vec<(String, u32)> {
        (0..self.field.deg)
            .map(|e| {
                let name = if e == 0 {
                    String::from("id")
                } else if e == self.sigma() {
                    String::from("sigma")
                } else {
                    format!("frob{e}")
                };
                (name, e)
            })
            .collect()
    }
    fn generators(&self) -> Vec<u32> {
        vec![self.field.generator()]
    }

    fn characteristic(&self) -> u32 {
        self.field.p
    }
    fn prime_basis(&self) -> Option<Vec<u32>> {
        Some((0..self.field.deg).map(|i| self.field.p.pow(i)).collect())
    }
    fn coords(&self, x: &u32) -> Option<Vec<u32>> {
        Some(self.field.digits(*x))
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.field.q).collect())
    }
    fn size(&self) -> Option<u64> {
        Some(self.field.q as u64)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u32 {
        rng.next_u32() % self.field.q
    }
    fn monomial_ansatz(&self, _max_deg: i32) -> Option<Vec<u32>> {
        None
    }
    fn fmt_elem(&self, x: &u32) -> String {
        self.field.fmt(*x)
    }
    fn fmt_aut(&self, g: &u32) -> String {
        self.aut_name(g).unwrap_or_else(|| format!("frob{g}"))
    }
    fn aut_eq(&self, g: &u32, h: &u32) -> bool {
        g % self.field.deg == h % self.field.deg
    }
}
