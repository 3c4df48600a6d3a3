#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetvar/connections.hpp"
#include "jetvar/context.hpp"
#include "jetvar/form.hpp"
#include "jetvar/gauge.hpp"

namespace jetvar {

// The form and variational operators are graded throughout; these names
// only fix the graded reading.
Expr graded_total_derivative(Expr const &e, int lambda);
Form graded_d_H(Form const &phi, JetContext const &ctx);
// DegreeError unless φ is a (0, n)-form
Form graded_delta(Form const &phi, JetContext const &ctx);
Form graded_interior(VectorField const &u, Form const &phi);
Form graded_lie(VectorField const &u, Form const &phi, JetContext const &ctx);

// dz^v = θ_v + z_{λ+v}dx^λ for a jet variable z_v
Form graded_differential(Var const &v, JetContext const &ctx);

// gh of a form: coefficients plus one gh(field) per θ; nullopt if inhomogeneous
std::optional<int> ghost_number(Form const &phi, JetContext const &ctx);

// γ̃ = dz^A ⊗ (∂_A + γ̃^a_A ∂_a): A runs over the Z chart, a over the odd
// fields in `ghosts`; comps[a][A], missing entries zero.
struct GradedConnectionData
{
	std::vector<int> ghosts;
	std::vector<std::vector<Expr>> comps;

	Expr component(int a, int A) const;
};

// γ̃^a_λ = γ_λ{}^a{}_b c^b
GradedConnectionData linear_graded_connection(std::vector<int> ghosts,
                                              LinearCoefficients const &coeff);
// R^a_{AB} indexed [a][A][B]
std::vector<std::vector<std::vector<Expr>>> graded_connection_curvature(
    GradedConnectionData const &gamma, JetContext const &ctx);
// D_λζ^a = ζ^a_λ − γ̃^a_λ, indexed [a][λ]
std::vector<std::vector<Expr>> graded_covariant_differential(GradedConnectionData const &gamma,
                                                             JetContext const &ctx);

// ---- BRST -----------------------------------------------------------------------

// Gauge context extended by odd ghosts C^r with gh = 1.
struct BrstContext
{
	GaugeContext gauge;
	std::vector<int> ghosts;
	Expr k = Expr(Rational(-1, 2));   // 𝐬C^r = k c^r_{pq}C^pC^q

	JetContext const &ctx() const { return gauge.ctx; }
	Expr C(int r, MultiIndex mi = {}) const;
};

BrstContext make_brst_context(LieAlgebraData algebra, int n, std::vector<std::string> coords = {});
// the same context with the ghost law coefficient replaced by the parameter `name`
BrstContext with_symbolic_coefficient(BrstContext b, std::string const &name = "k");

// 𝐬a^r_λ = C^r_λ + c^r_{pq}a^p_λC^q, 𝐬C^r = k c^r_{pq}C^pC^q, prolonged by d_Λ.
class BrstOperator
{
	BrstContext b_;

  public:
	explicit BrstOperator(BrstContext b) : b_(std::move(b)) {}
	BrstContext const &context() const { return b_; }

	// 𝐬 on a single jet variable
	Expr on_variable(Var const &v) const;
	// odd derivation Σ 𝐬(v) ∂_v (left derivatives)
	Expr operator()(Expr const &e) const;
	// 𝐬(f dx^I) = (−1)^{|I|}𝐬(f)dx^I; DegreeError on contact forms
	Form operator()(Form const &phi) const;
	// as an evolutionary vector field with components up to `order`
	VectorField as_vector_field(int order) const;
};

BrstOperator brst_yang_mills(BrstContext const &b);

struct NilpotencyReport
{
	struct Line
	{
		std::string name;
		Expr s, s2;
		Form anticommutator;   // (𝐬d_H + d_H𝐬) of the generator as a 0-form
		bool ghost_ok = false;   // gh(𝐬v) = gh(v) + 1
	};
	std::vector<Line> lines;
	bool ok = false;
};

// 𝐬 and 𝐬² on every a^r_{λ,Λ} and C^r_Λ with |Λ| ≤ order, and the anticommutator
NilpotencyReport brst_nilpotency(BrstOperator const &s, int order = 1);

struct GhostLawSolution
{
	std::optional<Rational> k;
	std::vector<Expr> residuals;   // 𝐬²a^r_λ with the parameter left symbolic
};
// imposes 𝐬²a^r_λ = 0 on the ansatz 𝐬C^r = k c^r_{pq}C^pC^q and solves for k
GhostLawSolution solve_ghost_coefficient(LieAlgebraData const &algebra, int n = 2);

} // namespace jetvar
