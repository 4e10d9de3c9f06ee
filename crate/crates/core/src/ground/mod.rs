//! Cyclic Galois extensions `K/F` with a distinguished generator `σ` of
//! `Gal(K/F)`, extra automorphisms `τ` of `K`, and twisted norms.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::{Error, Result};

mod finite;
mod function;

pub use finite::{FiniteField, FrobeniusTower};
pub use function::{FfAut, FunctionField, Poly, RatFn};

/// A cyclic extension `K/F` together with the operations the algebra
/// modules need. Contexts are immutable once built.
pub trait Ground: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Ord + fmt::Debug;
    type Aut: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;

    /// Order of `σ`, i.e. `[K:F]`.
    fn n(&self) -> usize;
    fn sigma(&self) -> Self::Aut;
    fn identity(&self) -> Self::Aut;
    fn apply(&self, g: &Self::Aut, x: &Self::Elem) -> Self::Elem;
    /// `outer ∘ inner`.
    fn compose(&self, outer: &Self::Aut, inner: &Self::Aut) -> Self::Aut;
    /// Named automorphisms of `K` known to this context.
    fn automorphisms(&self) -> Vec<(String, Self::Aut)>;
    /// Elements generating `K` as a field over its prime field; ring maps are
    /// compared on these.
    fn generators(&self) -> Vec<Self::Elem>;

    fn characteristic(&self) -> u32;
    /// Basis of `K` over the prime field, when `K` is finite.
    fn prime_basis(&self) -> Option<Vec<Self::Elem>>;
    /// Coordinates with respect to [`Ground::prime_basis`].
    fn coords(&self, x: &Self::Elem) -> Option<Vec<u32>>;
    /// All elements of `K`, when `K` is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn size(&self) -> Option<u64>;
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Candidates `c·x^j` with `|j| ≤ max_deg` for backends with a transcendental `x`.
    fn monomial_ansatz(&self, max_deg: i32) -> Option<Vec<Self::Elem>>;
    fn fmt_elem(&self, x: &Self::Elem) -> String;
    fn fmt_aut(&self, g: &Self::Aut) -> String;

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem> {
        self.inv(y).map(|yi| self.mul(x, &yi))
    }

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let (mut base, mut acc) = (x.clone(), self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for a possibly negative exponent; `None` when `x = 0` and `e < 0`.
    fn pow_i(&self, x: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(x, e as u64))
        } else {
            self.inv(x).map(|xi| self.pow(&xi, e.unsigned_abs()))
        }
    }

    fn aut_pow(&self, g: &Self::Aut, e: usize) -> Self::Aut {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.compose(g, &acc);
        }
        acc
    }

    /// `σ^i` for any integer `i`, reduced modulo `n`.
    fn sigma_pow(&self, i: i64) -> Self::Aut {
        self.aut_pow(&self.sigma(), i.rem_euclid(self.n() as i64) as usize)
    }

    fn aut_eq(&self, g: &Self::Aut, h: &Self::Aut) -> bool {
        self.generators().iter().all(|x| self.apply(g, x) == self.apply(h, x))
    }

    fn is_identity(&self, g: &Self::Aut) -> bool {
        self.aut_eq(g, &self.identity())
    }

    /// Order of an automorphism; `None` if it exceeds `bound`.
    fn aut_order(&self, g: &Self::Aut, bound: usize) -> Option<usize> {
        let mut acc = g.clone();
        for l in 1..=bound {
            if self.is_identity(&acc) {
                return Some(l);
            }
            acc = self.compose(g, &acc);
        }
        None
    }

    fn aut_inverse(&self, g: &Self::Aut) -> Self::Aut {
        let ord = self.aut_order(g, 1 << 16).expect("automorphism of finite order");
        self.aut_pow(g, ord - 1)
    }

    fn in_fixed_field(&self, x: &Self::Elem) -> bool {
        self.apply(&self.sigma(), x) == *x
    }

    /// `N_i^φ(β) = φ^{i-1}(β) ⋯ φ(β) β`.
    fn partial_norm(&self, phi: &Self::Aut, beta: &Self::Elem, i: usize) -> Self::Elem {
        let mut acc = self.one();
        let mut cur = beta.clone();
        for _ in 0..i {
            acc = self.mul(&acc, &cur);
            cur = self.apply(phi, &cur);
        }
        acc
    }

    /// `N_{K/F}(β) = N_n^σ(β)`; the result is checked to be `σ`-fixed.
    fn full_norm(&self, beta: &Self::Elem) -> Result<Self::Elem> {
        let nm = self.partial_norm(&self.sigma(), beta, self.n());
        if self.in_fixed_field(&nm) {
            Ok(nm)
        } else {
            Err(Error::Internal(alloc::format!("norm of {} is not fixed by sigma", self.fmt_elem(beta))))
        }
    }

    /// The `k ∈ {1,…,n}` with `τστ⁻¹ = σ^k`, compared on generators.
    fn conjugation_exponent(&self, tau: &Self::Aut) -> Result<usize> {
        let lhs = self.compose(tau, &self.sigma());
        (1..=self.n())
            .find(|&k| self.aut_eq(&lhs, &self.compose(&self.sigma_pow(k as i64), tau)))
            .ok_or(Error::NotCompatible)
    }

    /// Whether `τ∘σ = σ^k∘τ`.
    fn conjugates_to(&self, tau: &Self::Aut, k: usize) -> bool {
        let lhs = self.compose(tau, &self.sigma());
        self.aut_eq(&lhs, &self.compose(&self.sigma_pow(k as i64), tau))
    }

    /// Look up a registered automorphism by name.
    fn automorphism(&self, name: &str) -> Option<Self::Aut> {
        self.automorphisms().into_iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    /// Name of a registered automorphism equal to `g`, if any.
    fn aut_name(&self, g: &Self::Aut) -> Option<String> {
        self.automorphisms().into_iter().find(|(_, h)| self.aut_eq(g, h)).map(|(n, _)| n)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
