#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetvar/connections.hpp"
#include "jetvar/context.hpp"
#include "jetvar/form.hpp"

namespace jetvar {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Structure constants c^r_{pq} stored as c[r][p][q], optional invariant form a^G.
struct LieAlgebraData
{
	int dim = 0;
	std::vector<RationalMatrix> c;
	std::optional<RationalMatrix> bilinear;

	Rational const &operator()(int r, int p, int q) const
	{
		return c[std::size_t(r)][std::size_t(p)][std::size_t(q)];
	}
};

// InvalidAlgebra on shape, antisymmetry, Jacobi or ad-invariance failure
void validate(LieAlgebraData const &g);
LieAlgebraData make_algebra(std::vector<RationalMatrix> c,
                            std::optional<RationalMatrix> bilinear = std::nullopt);
LieAlgebraData u1();
// c^r_{pq} = ε_{rpq}, a^G = δ
LieAlgebraData su2();
// the same algebra in the basis e'_p = M^q_p e_q
LieAlgebraData change_basis(LieAlgebraData const &g, RationalMatrix const &m);
// (I_p)^r_q = c^r_{pq}
std::vector<RationalMatrix> adjoint_generators(LieAlgebraData const &g);

// Jet context of the connection bundle: even fields a^q_λ, plus matter fields y^i
// transforming with generators I_p{}^i{}_j.
struct GaugeContext
{
	JetContext ctx;
	LieAlgebraData algebra;
	std::vector<std::vector<int>> potential;   // [q][λ] -> field id
	std::vector<int> matter;
	std::vector<RationalMatrix> generators;    // [p][i][j]

	int n() const { return ctx.n(); }
	Expr a(int q, int lambda) const;
	// a^q_{λμ} = d_λ a^q_μ
	Expr a(int q, int lambda, int mu) const;
	Var a_var(int q, int lambda) const;
	Var a_var(int q, int lambda, int mu) const;
	Expr y(int i) const;
};

GaugeContext make_gauge_context(LieAlgebraData algebra, int n, std::vector<std::string> coords = {},
                                std::vector<RationalMatrix> generators = {});

using AlgebraTensor = std::vector<std::vector<std::vector<Expr>>>;   // [r][λ][μ]

// ℱ^r_{λμ} = a^r_{λμ} − a^r_{μλ} + c^r_{pq}a^p_λa^q_μ
AlgebraTensor strength(GaugeContext const &gc);
// F^r_{λμ} of a potential A^q_λ(x) given as A[q][λ]
AlgebraTensor strength_of(LieAlgebraData const &g, std::vector<std::vector<Expr>> const &A);
// Σ_cyc (d_λℱ^r_{μν} + c^r_{pq}a^p_λℱ^q_{μν}), indexed [r][λ<μ<ν] in lexicographic order
std::vector<std::vector<Expr>> bianchi_residuals(GaugeContext const &gc);
bool bianchi_check(GaugeContext const &gc);

struct CanonicalSplitting
{
	AlgebraTensor S;   // ½(a_{λμ} + a_{μλ} − c a_λa_μ)
	AlgebraTensor F;   // ℱ
};
CanonicalSplitting canonical_splitting(GaugeContext const &gc);

// ξ_C + ξ_Y for gauge parameters ξ^p(x)
VectorField gauge_vector_field(GaugeContext const &gc, std::vector<Expr> const &xi);

// ξ_{YC} = (u^{Aλ}_p ∂_λξ^p + u^A_p ξ^p)∂_A
struct GaugeGenerators
{
	std::vector<std::vector<Expr>> plain;                 // u^A_p as [p][field]
	std::vector<std::vector<std::vector<Expr>>> deriv;    // u^{Aλ}_p as [p][λ][field]
};
GaugeGenerators gauge_generators(GaugeContext const &gc);

// residuals of the pure-gauge invariance equations
struct InvarianceResiduals
{
	std::vector<Expr> a;                               // [q]
	std::vector<std::vector<Expr>> b;                  // [q][μ]
	std::vector<std::vector<std::vector<Expr>>> c;     // [p][μ][λ]
	bool invariant() const;
};
// KindError when the context has matter fields
InvarianceResiduals invariance_equations(GaugeContext const &gc, Expr const &density);
// strong equalities with matter: u^A_pδ_Aℒ + d_μ(u^A_pπ^μ_A), etc.
InvarianceResiduals strong_equalities(GaugeContext const &gc, Expr const &density);

// √|det g|: exact for constant perfect squares, a power atom otherwise
Expr sqrt_abs_det(Metric const &g);
// (1/4ε²) a^G_{pq} g^{λμ} g^{βν} ℱ^p_{λβ} ℱ^q_{μν} √|g|
Expr yang_mills_lagrangian(GaugeContext const &gc, Metric const &g, Rational coupling = 1);

struct NoetherIdentities
{
	std::vector<Expr> current;                 // 𝔗^λ
	std::vector<std::vector<Expr>> strong_b;   // [p][μ] residual of the strong form
	std::vector<std::vector<Expr>> weak_b;     // [p][μ] d_λ(u^{Aμ}_pπ^λ_A) + u^A_pπ^μ_A
	std::vector<std::vector<std::vector<Expr>>> c;   // [p][λ][μ] u^{Aλ}_pπ^μ_A + u^{Aμ}_pπ^λ_A
	std::vector<Expr> a_from_bc;               // [p] d_μ(u^A_pπ^μ_A) + d_μ(u^{Aμ}_pδ_Aℒ)
	std::vector<std::vector<Expr>> superpotential;   // U^{μλ} as [μ][λ]
	std::vector<Expr> w;                       // W^λ = ξ^p u^{Aλ}_p δ_Aℒ
	std::vector<Expr> residual;                // 𝔗^λ − (W^λ + d_μU^{μλ})
	bool ok = false;
};
// NotInvariant unless the strong equalities hold
NoetherIdentities noether_identities(GaugeContext const &gc, Expr const &density,
                                     std::vector<Expr> const &xi);

// sections ξ^λ∂_λ + ξ^p e_p of T_GP
struct GaugeSection
{
	std::vector<Expr> base;
	std::vector<Expr> alg;
};
GaugeSection section_bracket(LieAlgebraData const &g, GaugeSection const &xi,
                             GaugeSection const &eta);

// ∇^A ξ as [λ][r] = ∂_λξ^r + c^r_{pq}A^p_λξ^q
std::vector<std::vector<Expr>> gauge_covariant_derivative(LieAlgebraData const &g,
                                                          std::vector<std::vector<Expr>> const &A,
                                                          std::vector<Expr> const &xi);
// linear connection dx^λ⊗(∂_λ − A^p_λ I_p{}^i{}_j y^j ∂_i) on the given fibre fields
Connection associated_connection(std::vector<int> fibre, std::vector<RationalMatrix> const &generators,
                                 std::vector<std::vector<Expr>> const &A, JetContext const &ctx);

} // namespace jetvar
