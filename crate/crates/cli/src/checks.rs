//! Every check the runners can emit, with its anchor and a formula for `explain`.

pub struct CheckInfo {
    pub name: &'static str,
    pub anchor: &'static str,
    pub formula: &'static str,
}

macro_rules! table {
    ($($name:literal => $anchor:literal, $formula:literal;)*) => {
        pub const CHECKS: &[CheckInfo] = &[$(CheckInfo { name: $name, anchor: $anchor, formula: $formula }),*];
    };
}

table! {
    "tate_annihilated" => "|G|·Ĥⁿ(G, M) = 0",
        "every invariant factor divides |G|";
    "tate_periodicity" => "Ĥⁿ(Z/n, M) ≅ Ĥⁿ⁺²(Z/n, M)",
        "for cyclic G the invariant factors of Ĥ⁻¹, Ĥ¹ and of Ĥ⁰, Ĥ² agree";
    "fundamental_class_order" => "a_{σ^i,σ^j} = p^{-1}",
        "a(i, j) = −1 if i + j ≥ n else 0 is a 2-cocycle whose class has order n in Ĥ²(Z/n, Z)";
    "dieudonne_power" => "d_σⁿ = p⁻¹",
        "in the extension of Z/n by Z from the fundamental cocycle, the n-th power of the section of σ is −1";
    "weight_gerbe_square" => "w(ι)² = −1",
        "the section of ι in the extension of Z/2 by Z/4 (inversion action) squares to the order-2 element";
    "weight_gerbe_conjugation" => "w z w⁻¹ = ι(z)",
        "conjugation by the section of ι inverts the kernel Z/4";
    "defect_identity" => "E_ϱ ϱ(E_σ) E_{ϱσ}⁻¹ = d¹d²",
        "E_ρ + ρE_σ − E_{ρσ} = d¹(ρ,σ) + d²(ρ,σ) in C ⊗ X for all ρ, σ";
    "t_is_cocycle" => "dt = 0, t = de − E",
        "the U ⊗ X valued 2-cochain t extracted from a lift of E is a cocycle";
    "lift_change" => "t(e + r) = t(e) − dr",
        "replacing the lift e by e + r with r in U ⊗ X changes t by the coboundary −dr";
    "factorization" => "E_ϱ = E_ϱ(1) E_ϱ(2) F ϱ(F⁻¹)",
        "for averaged ν there are E(1), E(2), F with E = E(1) + E(2) − F + ρF, dE(i) = dⁱ and ds = t";
    "weil_torsion_free" => "X_*(L, m)_tors = 0",
        "the presented lattice of Weil cocharacters has no torsion";
    "weil_rank" => "rk X_*(L, m) ∈ {1, 1 + r}",
        "r = |⟨ι⟩\\G/H|";
    "weil_relation" => "ν_ϱ + ν_{ιϱ} = k ν_∞",
        "k = |H| (case ι ∈ H gives ν_ρ = (k/2)ν_∞)";
    "nu_conditions" => "ν_i ∈ X^{G_i}, Σ_{G/G₁} σν₁ + Σ_{G/G₂} σν₂ = 0",
        "invariance of each ν_i under its local group and vanishing of the global sum";
    "hasse_surjectivity" => "coker(⊕_v Ĥ⁻¹(G_v, X) → Ĥ⁻¹(G, X)) = 0",
        "local Ĥ⁻¹ classes generate the global Ĥ⁻¹ for the default local family";
    "psi_dual_surjective" => "coker ψ*_μ = 0",
        "the dual of X_*(Serre) → X_*(L, m) is surjective (unit elementary divisors)";
    "transition_vanishing" => "X_*(L') → X_*(L) kills Ĥ⁻¹(G_v, ·) when s | r",
        "the transition X_*(L') → X_*(L) kills every local Ĥ⁻¹ class of the tower";
    "gw_global_nonzero" => "δ(y) ≠ 0 in H¹(G, V), y = (1,−1,−1,−1)",
        "connecting map of 0 → V → M → M/V → 0 applied to the class of (1,−1,−1,−1)";
    "gw_locally_trivial" => "δ(y)|_{⟨σ⟩} = 0 for all σ ≠ 1",
        "restrictions to the seven cyclic subgroups of order 2 vanish";
    "gw_local_lifts" => "y = y_σ mod V with σ(y_σ) = y_σ",
        "the explicit local lifts are σ-invariant and reduce to y";
    "gw_not_injective" => "ker(H¹(Q, V) → ∏_v H¹(Q_v, V)) ≠ 0",
        "the localization kernel is nontrivial and contains δ(y)";
    "frob_power_central" => "F^{2n} = ν(p^{−1})",
        "every component of F^{2n} is the same diagonal matrix and σ^{2n} acts trivially";
    "frob_power_valuations" => "v₁ + v₂ = 2n",
        "the diagonal of F^{2n} has valuations (v₁, v₂)";
    "base_tuple_inv" => "inv(x_{σ(i)}, F x_i) = μ",
        "for x_i = σ^i(x₀) and μ = (1, 0), every index and factor";
    "xp_contains_base" => "(x₀, …, x_{2n−1}) ∈ X_p",
        "enumeration of the ball of the given depth finds the base tuple";
    "xp_mu_zero_empty" => "{x : inv(x_{σ(i)}, F x_i) = (0, 0)} = ∅",
        "valuation obstruction: offsets cannot balance when F has nonzero determinant valuation";
    "gm_identification" => "Q^× \\ I_f / K^p K_p ≅ I_φ \\ X_p × X^p / K^p",
        "the double coset model with Φ = +1 on X_p ≅ Z is Φ-equivariantly bijective to (Z/N)^× with a ↦ p·a";
    "gm_fixed_points" => "|Sh(κ_m)| = φ(N) when ord_N(p) | m",
        "count of Φ^m-fixed points against direct enumeration and the totient";
    "gm_periodicity" => "count_fixed(m) = count_fixed(m + ord_N(p))",
        "fixed-point counts are periodic with period the order of p mod N";
    "torus_translation" => "−ν₂ = μ + σμ + ⋯ + σ^{r−1}μ",
        "translation vector of Φ on X_p = X_*^σ";
    "torus_fixed_point_free" => "inv(a, pa) = 1 = μ",
        "Φ has no fixed points when the translation is nonzero";
    "star_epsilon" => "λ(ε) = N_{L_n/Q_p} μ₁",
        "the valuation of ε equals the Frobenius norm of μ";
    "star_delta" => "ν(δ)|_{ab} = μ₂",
        "b and μ agree in the G_p-coinvariants of the abelianized lattice";
    "kappa_perturbed_nontrivial" => "κ(γ, δ; ε) = ∏_v β(v) ≠ 1",
        "b = [μ] + t with t a 2-torsion class of X_{G_p} mapping nontrivially to X_G gives κ ≠ 0";
    "kappa_nested_trivial" => "κ(γ,δ;ε) = β(∞)β(p) = 1",
        "b = [μ] gives κ = 0 and matching holds";
    "kappa_additive" => "κ(b + b') = κ(b) + κ(b')",
        "additivity in the class of b over random elliptic data";
    "kappa_coboundary" => "κ(b + (g − 1)x) = κ(b)",
        "shifts by (g − 1)x with g in G_p leave κ unchanged";
}

pub fn lookup(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
        names.sort_unstable();
        let n = names.len();
        names.dedup();
        assert_eq!(names.len(), n);
        assert!(CHECKS.iter().all(|c| !c.anchor.is_empty() && !c.formula.is_empty()));
    }
}
