//! The quotients `A = K[t;σ]/K[t;σ](t^m - a)` with `x∘y = xy mod_r (t^m - a)`.
//! For `m = n` these are the (possibly nonassociative) cyclic algebras
//! `(K/F, σ, a)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::linalg;
use crate::skew_poly::{self, SkewPoly};
use crate::{Error, Ground, Result};

pub type AlgElem<E> = SkewPoly<E>;

#[derive(Clone, Debug)]
pub struct PetitAlgebra<G: Ground> {
    ctx: Arc<G>,
    m: usize,
    a: G::Elem,
    a_twists: Vec<G::Elem>,
}

/// Dimensions over the prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NucleusDims {
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub center: usize,
}

/// An anti-isomorphism `ψ` from the algebra with constant `a⁻¹` onto `A`,
/// determined by `ψ|_K = ρ` and `ψ(t) = βt^j`.
#[derive(Clone, Debug)]
pub struct OppositeIdentification<G: Ground> {
    pub rho: G::Aut,
    pub beta: G::Elem,
    pub j: usize,
    /// `ψ(t^i)` for `i = 0..m`.
    pub powers: Vec<AlgElem<G::Elem>>,
}

impl<G: Ground> PetitAlgebra<G> {
    pub fn new(ctx: Arc<G>, m: usize, a: G::Elem) -> Result<Self> {
        if ctx.is_zero(&a) {
            return Err(Error::ZeroConstant);
        }
        if m == 0 {
            return Err(Error::Invalid(String::from("m must be positive")));
        }
        let a_twists = skew_poly::twists(&*ctx, &a);
        Ok(Self { ctx, m, a, a_twists })
    }

    pub fn ctx(&self) -> &G {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<G> {
        &self.ctx
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> &G::Elem {
        &self.a
    }

    /// Another algebra over the same context with constant `b`.
    pub fn with_constant(&self, b: G::Elem) -> Result<Self> {
        Self::new(self.ctx.clone(), self.m, b)
    }

    pub fn is_cyclic(&self) -> bool {
        self.m == self.ctx.n()
    }

    /// `a ∉ F` in the cyclic case.
    pub fn is_proper_nonassociative_cyclic(&self) -> bool {
        self.is_cyclic() && !self.ctx.in_fixed_field(&self.a)
    }

    pub fn elem(&self, coeffs: Vec<G::Elem>) -> Result<AlgElem<G::Elem>> {
        let f = SkewPoly::new(&*self.ctx, coeffs);
        self.check(&f)?;
        Ok(f)
    }

    fn check(&self, x: &AlgElem<G::Elem>) -> Result<()> {
        if x.len() > self.m {
            Err(Error::ParentMismatch)
        } else {
            Ok(())
        }
    }

    pub fn one(&self) -> AlgElem<G::Elem> {
        SkewPoly::constant(&*self.ctx, self.ctx.one())
    }

    /// `c·t^i` reduced into the algebra.
    pub fn monomial(&self, c: G::Elem, i: usize) -> AlgElem<G::Elem> {
        self.reduce(SkewPoly::monomial(&*self.ctx, c, i))
    }

    pub fn reduce(&self, f: SkewPoly<G::Elem>) -> AlgElem<G::Elem> {
        skew_poly::reduce(&*self.ctx, f.coeffs().to_vec(), self.m, &self.a_twists)
    }

    pub fn pmul(&self, x: &AlgElem<G::Elem>, y: &AlgElem<G::Elem>) -> AlgElem<G::Elem> {
        debug_assert!(x.len() <= self.m && y.len() <= self.m);
        self.reduce(skew_poly::sp_mul(&*self.ctx, x, y))
    }

    pub fn try_pmul(&self, x: &AlgElem<G::Elem>, y: &AlgElem<G::Elem>) -> Result<AlgElem<G::Elem>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.pmul(x, y))
    }

    /// `x ∘op y := y ∘ x` on the same carrier.
    pub fn opposite_mul(&self, x: &AlgElem<G::Elem>, y: &AlgElem<G::Elem>) -> AlgElem<G::Elem> {
        self.pmul(y, x)
    }

    pub fn add(&self, x: &AlgElem<G::Elem>, y: &AlgElem<G::Elem>) -> AlgElem<G::Elem> {
        skew_poly::sp_add(&*self.ctx, x, y)
    }

    pub fn sub(&self, x: &AlgElem<G::Elem>, y: &AlgElem<G::Elem>) -> AlgElem<G::Elem> {
        skew_poly::sp_sub(&*self.ctx, x, y)
    }

    /// `[x, y, z] = (x∘y)∘z - x∘(y∘z)`.
    pub fn associator(&self, x: &AlgElem<G::Elem>, y: &AlgElem<G::Elem>, z: &AlgElem<G::Elem>) -> AlgElem<G::Elem> {
        self.sub(&self.pmul(&self.pmul(x, y), z), &self.pmul(x, &self.pmul(y, z)))
    }

    /// The algebra with constant `a⁻¹`.
    pub fn opposite(&self) -> Self {
        let inv = self.ctx.inv(&self.a).expect("a is nonzero");
        self.with_constant(inv).expect("a⁻¹ is nonzero")
    }

    /// Prime-field basis `{c·t^i}`, for finite `K`.
    pub fn basis(&self) -> Option<Vec<AlgElem<G::Elem>>> {
        skew_poly::quotient_basis(&*self.ctx, self.m)
    }

    /// `{c·t^i}` with `c` in `{1} ∪ generators`; spans the algebra as a
    /// left `K`-module and is used when no finite basis exists.
    pub fn generator_monomials(&self) -> Vec<AlgElem<G::Elem>> {
        let mut cs = alloc::vec![self.ctx.one()];
        cs.extend(self.ctx.generators());
        (0..self.m).flat_map(|i| cs.iter().map(move |c| (c.clone(), i))).map(|(c, i)| self.monomial(c, i)).collect()
    }

    pub fn coords(&self, x: &AlgElem<G::Elem>) -> Option<Vec<u32>> {
        skew_poly::quotient_coords(&*self.ctx, self.m, x)
    }

    pub fn size(&self) -> Option<u64> {
        self.ctx.size().map(|s| s.checked_pow(self.m as u32).unwrap_or(u64::MAX))
    }

    pub fn elements(&self, cap: u64) -> Result<Vec<AlgElem<G::Elem>>> {
        skew_poly::quotient_elements(&*self.ctx, self.m, cap)
    }

    pub fn is_two_sided(&self) -> Result<bool> {
        skew_poly::is_two_sided(&*self.ctx, self.m, &self.a)
    }

    /// Whether every associator of basis elements vanishes.
    pub fn associator_scan(&self) -> Option<bool> {
        let basis = self.basis()?;
        Some(basis.iter().all(|x| {
            basis.iter().all(|y| basis.iter().all(|z| self.associator(x, y, z).is_zero()))
        }))
    }

    /// For `m = n` this is `a ∈ F`, cross-checked by the basis associator
    /// scan when `K` is finite. Otherwise the scan decides; without a finite
    /// basis the algebra is associative exactly when `t^m - a` is two-sided.
    pub fn is_associative(&self) -> Result<bool> {
        let scan = self.associator_scan();
        if self.is_cyclic() {
            let expected = self.ctx.in_fixed_field(&self.a);
            if let Some(s) = scan {
                if s != expected {
                    return Err(Error::Internal(format!("associator scan gives {s}, a ∈ F gives {expected}")));
                }
            }
            return Ok(expected);
        }
        match scan {
            Some(s) => Ok(s),
            None => self.is_two_sided(),
        }
    }

    /// No zero divisors, checked by a rank test of every left multiplication.
    pub fn is_semifield(&self, cap: u64) -> Result<bool> {
        let basis = self.basis().ok_or(Error::NoIteration)?;
        let p = self.ctx.characteristic();
        for x in self.elements(cap)?.iter().filter(|x| !x.is_zero()) {
            let rows: Vec<Vec<u32>> = basis.iter().map(|y| self.coords(&self.pmul(x, y)).unwrap()).collect();
            if linalg::rank(rows, p) < basis.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Nucleus and center dimensions over the prime field, by solving the
    /// defining linear systems on a basis.
    pub fn nucleus_dims(&self, dim_cap: usize) -> Result<NucleusDims> {
        let basis = self.basis().ok_or(Error::NoIteration)?;
        let dim = basis.len();
        if dim > dim_cap {
            return Err(Error::CapExceeded { size: dim as u64, cap: dim_cap as u64 });
        }
        let p = self.ctx.characteristic();
        let coords = |x: AlgElem<G::Elem>| self.coords(&x).unwrap();
        let slot = |f: &dyn Fn(&AlgElem<G::Elem>, &AlgElem<G::Elem>, &AlgElem<G::Elem>) -> AlgElem<G::Elem>| {
            basis
                .iter()
                .map(|b| {
                    let mut v = Vec::new();
                    for e in &basis {
                        for g in &basis {
                            v.extend(coords(f(b, e, g)));
                        }
                    }
                    v
                })
                .collect::<Vec<_>>()
        };
        let left = slot(&|b, e, g| self.associator(b, e, g));
        let middle = slot(&|b, e, g| self.associator(e, b, g));
        let right = slot(&|b, e, g| self.associator(e, g, b));
        let comm: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| basis.iter().flat_map(|e| coords(self.sub(&self.pmul(b, e), &self.pmul(e, b)))).collect())
            .collect();
        let center: Vec<Vec<u32>> = (0..dim)
            .map(|l| [&left[l], &middle[l], &right[l], &comm[l]].into_iter().flatten().copied().collect())
            .collect();
        let kernel = |rows: Vec<Vec<u32>>| dim - linalg::rank(rows, p);
        Ok(NucleusDims { left: kernel(left), middle: kernel(middle), right: kernel(right), center: kernel(center) })
    }

    /// Whether `K` (degree-zero elements) lies in the left and in the middle
    /// nucleus, checked on basis elements.
    pub fn field_in_nuclei(&self) -> Option<(bool, bool)> {
        let basis = self.basis()?;
        let kb: Vec<_> = basis.iter().filter(|b| b.len() <= 1).cloned().collect();
        let left = kb.iter().all(|c| basis.iter().all(|x| basis.iter().all(|y| self.associator(c, x, y).is_zero())));
        let middle = kb.iter().all(|c| basis.iter().all(|x| basis.iter().all(|y| self.associator(x, c, y).is_zero())));
        Some((left, middle))
    }

    /// Search for a monomial anti-isomorphism from the algebra with constant
    /// `a⁻¹` onto this one. Requires a finite `K`; `Ok(None)` means no
    /// candidate `ψ(c) = ρ(c)`, `ψ(t) = βt^j` works.
    pub fn opposite_identification(&self) -> Result<Option<OppositeIdentification<G>>> {
        let elems = self.ctx.elements().ok_or(Error::NoIteration)?;
        let basis = self.basis().ok_or(Error::NoIteration)?;
        let op = self.opposite();
        let p = self.ctx.characteristic();
        let js: Vec<usize> = if self.m == 1 { alloc::vec![0] } else { (1..self.m).collect() };
        for (_, rho) in self.ctx.automorphisms() {
            for &j in &js {
                for beta in elems.iter().filter(|b| !self.ctx.is_zero(b)) {
                    let t_img = self.monomial(beta.clone(), j);
                    let mut powers = alloc::vec![self.one()];
                    for i in 1..self.m {
                        let next = self.pmul(&t_img, &powers[i - 1]);
                        powers.push(next);
                    }
                    let cand = OppositeIdentification { rho: rho.clone(), beta: beta.clone(), j, powers };
                    let img = |x: &AlgElem<G::Elem>| cand.apply(self, x);
                    let images: Vec<_> = basis.iter().map(img).collect();
                    let rows: Vec<Vec<u32>> = images.iter().map(|y| self.coords(y).unwrap()).collect();
                    if linalg::rank(rows, p) < basis.len() {
                        continue;
                    }
                    let anti = basis.iter().zip(&images).all(|(x, fx)| {
                        basis.iter().zip(&images).all(|(y, fy)| img(&op.pmul(x, y)) == self.pmul(fy, fx))
                    });
                    if anti {
                        return Ok(Some(cand));
                    }
                }
            }
        }
        Ok(None)
    }
}

impl<G: Ground> OppositeIdentification<G> {
    /// `ψ(Σ c_i t^i) = Σ ψ(t^i) ∘ ρ(c_i)`.
    pub fn apply(&self, target: &PetitAlgebra<G>, x: &AlgElem<G::Elem>) -> AlgElem<G::Elem> {
        let ctx = target.ctx();
        let mut out = SkewPoly::zero();
        for (i, c) in x.coeffs().iter().enumerate() {
            if ctx.is_zero(c) {
                continue;
            }
            let rc = SkewPoly::constant(ctx, ctx.apply(&self.rho, c));
            out = target.add(&out, &target.pmul(&self.powers[i], &rc));
        }
        out
    }
}
