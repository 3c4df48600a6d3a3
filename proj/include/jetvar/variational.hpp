#pragma once

#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/form.hpp"

namespace jetvar {

// A Lagrangian is a density ℒ standing for ℒω; source forms are (1, n)-forms.

Form lagrangian_form(Expr const &density, JetContext const &ctx);
// ω_λ = ∂_λ⌋ω
Form volume_minus(int lambda, JetContext const &ctx);
// ω_{μλ} = ∂_μ⌋∂_λ⌋ω
Form volume_minus(int mu, int lambda, JetContext const &ctx);

// τ = Σ_k (1/k) τ̄∘h_k on forms of horizontal degree n
Form tau(Form const &phi, JetContext const &ctx);
// δ = τ∘d
Form variational_delta(Form const &phi, JetContext const &ctx);

// δ_iℒ = Σ_Λ (−1)^{|Λ|} d_Λ ∂^Λ_i ℒ, one entry per field
std::vector<Expr> variational_derivatives(Expr const &density, JetContext const &ctx);
// ℰ_L = Σ θ^i ∧ δ_iℒ ω
Form euler_lagrange(Expr const &density, JetContext const &ctx);

// π^λ_i = ∂^λ_iℒ indexed [λ][field]
std::vector<std::vector<Expr>> momenta(Expr const &density, JetContext const &ctx);

struct LegendreData
{
	std::vector<std::vector<Expr>> p;   // [λ][field]
	Expr frame;                         // ℒ − π^λ_i y^i_λ
};
LegendreData legendre_map(Expr const &density, JetContext const &ctx);

// H_L = ℒω + π^λ_i θ^i ∧ ω_λ
Form poincare_cartan(Expr const &density, JetContext const &ctx);

// Coefficients of ω in 𝐋_{J¹u}L = u_V⌋ℰ_L + d_H h₀(u⌋H_L)
struct FirstVariation
{
	Expr lie;        // 𝐋_{J¹u}L
	Expr el;         // Σ (u^i − y^i_μu^μ) δ_iℒ
	Expr boundary;   // −d_λ𝔗^λ
	bool identity = false;
};
FirstVariation first_variational_formula(Expr const &density, VectorField const &u,
                                         JetContext const &ctx);
// coefficient of ω in 𝐋_{J¹u}L for projectable u
Expr lie_derivative_lagrangian(Expr const &density, VectorField const &u, JetContext const &ctx);

struct NoetherCurrent
{
	std::vector<Expr> current;        // 𝔗^λ
	Expr lie;                         // 𝐋_{J¹u}L
	Expr divergence;                  // d_λ𝔗^λ
	std::vector<Expr> coefficients;   // c^i per field
	// d_λ𝔗^λ + 𝐋_{J¹u}L = Σ c^i δ_iℒ
	bool identity = false;
};
NoetherCurrent noether_current(Expr const &density, VectorField const &u,
                               JetContext const &ctx);

bool is_variationally_trivial(Expr const &density, JetContext const &ctx);

struct Antiderivative
{
	Form xi;
	Form obstruction;   // constant-coefficient part σ₀, d_Hξ = σ − σ₀
};
Antiderivative horizontal_antiderivative(Form const &sigma, JetContext const &ctx);
// η with d_Hη = ω for a d_H-closed form of contact degree ≥ 1, horizontal degree < n
Form contact_antiderivative(Form const &omega, JetContext const &ctx);

bool helmholtz_check(Form const &source, JetContext const &ctx);

struct LieElReport
{
	Form lhs;   // 𝐋_{J²u}ℰ_L
	Form rhs;   // ℰ_{𝐋_{J¹u}L}
	bool equal = false;
};
LieElReport lie_derivative_el(Expr const &density, VectorField const &u, JetContext const &ctx);

} // namespace jetvar
