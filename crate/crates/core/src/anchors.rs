//! Fixed table of condition anchors. Every condition recorded in a
//! [`Certificate`](crate::Certificate) names one of these ids; the statement
//! text is what reports print next to it.

pub struct Anchor {
    pub id: &'static str,
    pub statement: &'static str,
}

pub const ANCHORS: &[Anchor] = &[
    Anchor { id: "alpha-nonzero", statement: "α ≠ 0" },
    Anchor { id: "degree-range", statement: "1 ≤ k < m" },
    Anchor { id: "conjugation", statement: "τστ⁻¹ = σ^k on generators of K" },
    Anchor {
        id: "norm-degree-one",
        statement: "τ commutes with σ and N_m^σ(α)·b = τ(a); for b = a⁻¹ this reads N_m^σ(α) = τ(a)·a",
    },
    Anchor { id: "gcd-k-m", statement: "gcd(k, m) = 1" },
    Anchor { id: "n-divides-m", statement: "n divides m" },
    Anchor { id: "constant-in-fixed-field", statement: "the constants a (and b) lie in F^×" },
    Anchor {
        id: "norm-degree-k",
        statement: "N_{K/F}(α)^{m/n}·b^k = τ(a); for b = a⁻¹ this reads N_{K/F}(α)^{m/n} = τ(a)·a^k",
    },
    Anchor { id: "no-map-n-gt-m", statement: "no map of degree k ≥ 2 extends τ when n > m" },
    Anchor {
        id: "nonassociative-degree-one",
        statement: "a proper nonassociative cyclic algebra (a ∉ F) admits monomial maps of degree one only",
    },
    Anchor { id: "norm-equation-unsolvable", statement: "the norm equation for α has no solution" },
    Anchor { id: "well-defined", statement: "iterated products of αt^k agree with the closed-form power" },
    Anchor { id: "unit", statement: "f(1) = 1" },
    Anchor { id: "additive", statement: "f(x + y) = f(x) + f(y)" },
    Anchor { id: "multiplicative", statement: "f(xy) = f(x)f(y) in the codomain (the opposite algebra for anti-maps)" },
    Anchor { id: "anti-multiplicative", statement: "f(xy) = f(y)f(x) on the same carrier" },
    Anchor { id: "bijective", statement: "images of a basis are linearly independent" },
    Anchor { id: "tau-squared-identity", statement: "τ² = id" },
    Anchor { id: "tau-alpha-alpha-one", statement: "τ(α)·α = 1" },
    Anchor { id: "norm-one-route", statement: "some α satisfies N_{K/F}(α) = 1 and τ(α)·α = 1" },
    Anchor { id: "d-invertible", statement: "d is invertible in D" },
    Anchor { id: "tau-anti-automorphism", statement: "τ is a unital anti-automorphism of D" },
    Anchor { id: "commutes-with-sigma", statement: "τσ = στ on D" },
    Anchor { id: "central-value", statement: "τ(d)·d lies in C" },
    Anchor { id: "norm-gen-degree-one", statement: "N_m^σ(α) = τ(d)·d" },
    Anchor { id: "d-in-fixed-field", statement: "d ∈ F^×" },
    Anchor { id: "norm-gen-degree-k", statement: "N_{C/F}(α)^{m/n} = τ(d)·d^k" },
    Anchor { id: "tau-preserves-f", statement: "τ maps F = Fix(σ) ∩ C into itself" },
    Anchor {
        id: "opposite-coefficientwise",
        statement: "reversed multiplication on (D,σ,d) equals the product of (D^op,σ,d⁻¹) under the coefficientwise identity",
    },
    Anchor { id: "laurent-conjugation", statement: "τστ⁻¹ = σ^{n-1}" },
    Anchor { id: "laurent-norm", statement: "N_{K/F}(α₁) = 1, so that N(α₁tⁿ) = t^{n²}" },
    Anchor {
        id: "opposite-identification",
        statement: "a monomial anti-isomorphism identifies the algebra with constant a⁻¹ with A^op",
    },
];

pub fn statement(id: &str) -> &'static str {
    ANCHORS
        .iter()
        .find(|a| a.id == id)
        .map(|a| a.statement)
        .unwrap_or_else(|| panic!("unknown anchor {id}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        for (i, a) in ANCHORS.iter().enumerate() {
            assert!(ANCHORS[i + 1..].iter().all(|b| b.id != a.id), "{}", a.id);
        }
    }
}
