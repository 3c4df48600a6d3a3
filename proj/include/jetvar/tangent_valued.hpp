#pragma once

#include <map>
#include <utility>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/form.hpp"

namespace jetvar {

// Coordinates of the total space Z of Y -> X: indices 0..n-1 are the base
// coordinates, n.. are the even fields at jet order 0.
struct ZChart
{
	int n = 0;
	std::vector<int> fields;

	explicit ZChart(JetContext const &ctx);
	int dim() const { return n + int(fields.size()); }
	int fibre(int field) const;   // Z index of an even field
	Expr coord(JetContext const &ctx, int z) const;
	Expr partial(Expr const &e, int z, JetContext const &ctx) const;
};

// φ = (1/r!) φ^μ_{λ1…λr} dz^{λ1}∧…∧dz^{λr} ⊗ ∂_μ, stored with strictly
// increasing form indices.
class TangentValuedForm
{
  public:
	using Key = std::pair<std::vector<int>, int>;   // (λ1<…<λr, μ)

  private:
	int r_ = 0;
	std::map<Key, Expr> comps_;

  public:
	TangentValuedForm() = default;
	explicit TangentValuedForm(int r) : r_(r) {}

	int degree() const { return r_; }
	std::map<Key, Expr> const &components() const { return comps_; }
	bool empty() const { return comps_.empty(); }

	// φ^μ_{λ...} for any index order (antisymmetric); zero on repeats
	Expr get(std::vector<int> const &lambdas, int mu) const;
	// sets the component at the given index order, storing it sorted
	void set(std::vector<int> const &lambdas, int mu, Expr const &value);
	void add(std::vector<int> const &lambdas, int mu, Expr const &value);

	TangentValuedForm operator-() const;
	TangentValuedForm &operator+=(TangentValuedForm const &o);
	TangentValuedForm &operator-=(TangentValuedForm const &o);
	friend TangentValuedForm operator+(TangentValuedForm a, TangentValuedForm const &b)
	{
		return a += b;
	}
	friend TangentValuedForm operator-(TangentValuedForm a, TangentValuedForm const &b)
	{
		return a -= b;
	}
	friend TangentValuedForm operator*(Expr const &f, TangentValuedForm a);
	friend bool operator==(TangentValuedForm const &a, TangentValuedForm const &b)
	{
		return a.r_ == b.r_ && a.comps_ == b.comps_;
	}
};

bool is_zero(TangentValuedForm const &phi);

// r = 0 from a vector field whose fibre components live at order 0
TangentValuedForm from_vector_field(VectorField const &u, JetContext const &ctx);
VectorField to_vector_field(TangentValuedForm const &phi, JetContext const &ctx);
// θ_X = dx^λ ⊗ ∂_λ
TangentValuedForm canonical_form(JetContext const &ctx);
// σ = σ^i_λ dx^λ ⊗ ∂_i; sigma[i][λ] indexed by position in even_fields()
TangentValuedForm soldering_form(std::vector<std::vector<Expr>> const &sigma,
                                 JetContext const &ctx);
// Γ = dx^λ ⊗ (∂_λ + Γ^i_λ ∂_i); gamma[i][λ] as for soldering_form
TangentValuedForm connection_form(std::vector<std::vector<Expr>> const &gamma,
                                  JetContext const &ctx);

TangentValuedForm fn_bracket(TangentValuedForm const &phi, TangentValuedForm const &sigma,
                             JetContext const &ctx);
TangentValuedForm nijenhuis_differential(TangentValuedForm const &theta,
                                         TangentValuedForm const &sigma, JetContext const &ctx);

} // namespace jetvar
