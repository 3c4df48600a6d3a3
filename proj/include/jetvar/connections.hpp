#pragma once

#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/tangent_valued.hpp"

namespace jetvar {

enum class ConnectionKind { General, Linear, Affine, World };

// Γ = dx^λ ⊗ (∂_λ + Γ^i_λ ∂_i) on the fibre coordinates `fibre` (even field
// ids at jet order 0); comps[i][λ] belongs to fibre[i].
struct Connection
{
	ConnectionKind kind = ConnectionKind::General;
	std::vector<int> fibre;
	std::vector<std::vector<Expr>> comps;

	Expr const &component(int i, int lambda) const
	{
		return comps.at(std::size_t(i)).at(std::size_t(lambda));
	}
};

// coeff[λ][i][j] = Γ_λ{}^i{}_j(x)
using LinearCoefficients = std::vector<std::vector<std::vector<Expr>>>;

Connection general_connection(std::vector<int> fibre, std::vector<std::vector<Expr>> comps,
                              JetContext const &ctx);
Connection linear_connection(std::vector<int> fibre, LinearCoefficients const &coeff,
                             JetContext const &ctx);
// Γ^i_λ = Γ_λ{}^i{}_j y^j + σ^i_λ(x); sigma[i][λ]
Connection affine_connection(std::vector<int> fibre, LinearCoefficients const &coeff,
                             std::vector<std::vector<Expr>> const &sigma, JetContext const &ctx);
// extracts Γ_λ{}^i{}_j; KindError unless Γ is affine in y with x-only coefficients
LinearCoefficients linear_coefficients(Connection const &gamma, JetContext const &ctx);
// σ^i_λ(x) = Γ^i_λ at y = 0 for an affine connection
std::vector<std::vector<Expr>> affine_shift(Connection const &gamma, JetContext const &ctx);
// the linear connection associated with an affine one
Connection associated_linear(Connection const &gamma, JetContext const &ctx);

// as a tangent-valued 1-form over Z
TangentValuedForm to_tangent_valued(Connection const &gamma, JetContext const &ctx);
// vertical-valued soldering form σ^i_λ on the given fibre
TangentValuedForm soldering_on(std::vector<int> const &fibre,
                               std::vector<std::vector<Expr>> const &sigma, JetContext const &ctx);

// D^Γ = (y^i_λ − Γ^i_λ) dx^λ ⊗ ∂_i, entries [i][λ]
std::vector<std::vector<Expr>> covariant_differential(Connection const &gamma,
                                                      JetContext const &ctx);
// ∇^Γ s = (∂_λ s^i − Γ^i_λ∘s); s[i] is a function of x for fibre[i]
std::vector<std::vector<Expr>> cov_diff(Connection const &gamma, std::vector<Expr> const &s,
                                        JetContext const &ctx);
// τ⌋∇^Γ s
std::vector<Expr> covariant_derivative(Connection const &gamma, std::vector<Expr> const &tau,
                                       std::vector<Expr> const &s, JetContext const &ctx);

// R^i_{λμ} by the coordinate formula, as a vertical-valued 2-form
TangentValuedForm curvature(Connection const &gamma, JetContext const &ctx);
// ½[Γ,Γ]_FN
TangentValuedForm curvature_fn(Connection const &gamma, JetContext const &ctx);
// R_{λμ}{}^i{}_j for a linear connection, indexed [λ][μ][i][j]
std::vector<std::vector<LinearCoefficients::value_type>> linear_curvature(
    Connection const &gamma, JetContext const &ctx);

// T = (∂_λσ^i_μ + Γ^j_λ∂_jσ^i_μ − ∂_jΓ^i_λ σ^j_μ) dx^λ∧dx^μ ⊗ ∂_i
TangentValuedForm torsion(Connection const &gamma, TangentValuedForm const &sigma,
                          JetContext const &ctx);
// ρ^i_{λμ} = σ^j_λ∂_jσ^i_μ − σ^j_μ∂_jσ^i_λ
TangentValuedForm soldered_curvature(TangentValuedForm const &sigma, JetContext const &ctx);

struct ShiftedRelations
{
	TangentValuedForm torsion, curvature, rho;
	TangentValuedForm shifted_torsion, shifted_curvature;
	bool torsion_ok = false;     // T' = T + 2ρ
	bool curvature_ok = false;   // R' = R + ρ + T
};
ShiftedRelations shifted_connection_relations(Connection const &gamma,
                                              TangentValuedForm const &sigma,
                                              JetContext const &ctx);

// Γ* on the dual coordinates y_i: Γ*_{(i)λ} = −Γ_λ{}^j{}_i y_j
Connection dual_connection(Connection const &gamma, std::vector<int> dual_fibre,
                           JetContext const &ctx);
// product[i][a] is the field y^{ia}
Connection tensor_product_connection(Connection const &g1, Connection const &g2,
                                     std::vector<std::vector<int>> const &product,
                                     JetContext const &ctx);
// composite connection on Y → Σ → X. a_x[i][λ] = A^i_λ, a_s[i][m] = A^i_m,
// gamma is the connection on Σ → X (fibre = σ^m)
Connection composite_connection(std::vector<int> y_fibre,
                                std::vector<std::vector<Expr>> const &a_x,
                                std::vector<std::vector<Expr>> const &a_s,
                                Connection const &gamma, JetContext const &ctx);
// D̃ = dx^λ ⊗ (y^i_λ − A^i_λ − A^i_m σ^m_λ) ∂_i, entries [i][λ]
std::vector<std::vector<Expr>> vertical_covariant_differential(
    std::vector<int> const &y_fibre, std::vector<int> const &sigma_fibre,
    std::vector<std::vector<Expr>> const &a_x, std::vector<std::vector<Expr>> const &a_s,
    JetContext const &ctx);

// ---- world connections ----------------------------------------------------------------

// K_λ{}^μ{}_ν(x), stored [λ][μ][ν]
struct WorldConnection
{
	int n = 0;
	std::vector<Expr> data;

	explicit WorldConnection(int n_ = 0) : n(n_), data(std::size_t(n_ * n_ * n_)) {}
	Expr &operator()(int l, int m, int v) { return data[std::size_t((l * n + m) * n + v)]; }
	Expr const &operator()(int l, int m, int v) const
	{
		return data[std::size_t((l * n + m) * n + v)];
	}
};

struct Metric
{
	int n = 0;
	std::vector<std::vector<Expr>> g;
	std::vector<std::vector<Expr>> inverse;   // empty: computed by cofactors (n <= 3)
};

Expr determinant(std::vector<std::vector<Expr>> const &m);
// symbolic inverse by cofactors; SingularMetric when det g is (probably) zero
std::vector<std::vector<Expr>> inverse_metric(Metric const &g);
WorldConnection levi_civita(Metric const &g);
// ∇_λ g^{αβ} residuals, indexed [λ][α][β]
std::vector<std::vector<std::vector<Expr>>> metric_covariant_derivative(Metric const &g,
                                                                        WorldConnection const &K);
WorldConnection physics_sign(WorldConnection const &K);
// K_r = r K_λ{}^μ{}_ν + (1−r) K_ν{}^μ{}_λ
WorldConnection symmetrized(WorldConnection const &K, Rational r);

struct WorldCurvature
{
	int n = 0;
	std::vector<Expr> riemann;   // R_{λμ}{}^α{}_β at [((λn+μ)n+α)n+β]
	std::vector<Expr> ricci;     // R_{λβ} at [λn+β]
	Expr const &R(int l, int m, int a, int b) const
	{
		return riemann[std::size_t(((l * n + m) * n + a) * n + b)];
	}
	Expr const &Ric(int l, int b) const { return ricci[std::size_t(l * n + b)]; }
};
WorldCurvature world_curvature(WorldConnection const &K);
// T_μ{}^ν{}_λ = K_μ{}^ν{}_λ − K_λ{}^ν{}_μ, stored as a world connection [μ][ν][λ]
WorldConnection world_torsion(WorldConnection const &K);

// the world connection as a linear connection on TX with fibre coordinates ẋ
Connection world_as_connection(WorldConnection const &K, std::vector<int> tangent_fibre,
                               JetContext const &ctx);
// Cartan connection A = Γ + θ_X on the same fibre
Connection cartan_connection(WorldConnection const &K, std::vector<int> tangent_fibre,
                             JetContext const &ctx);
// θ̇_X = dx^λ ⊗ ∂/∂ẋ^λ
TangentValuedForm canonical_vertical_form(std::vector<int> const &tangent_fibre,
                                          JetContext const &ctx);

} // namespace jetvar
