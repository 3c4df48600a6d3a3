#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"

namespace jetvar {

// dx^{λ1}∧…∧dx^{λs}∧θ_1∧…∧θ_k with λ's ascending and θ's sorted by
// (field, multi-index); equal θ's may repeat only for odd fields.
struct FormBasis
{
	std::uint32_t dx = 0;
	std::vector<Var> theta;

	int horizontal_degree() const { return __builtin_popcount(dx); }
	int contact_degree() const { return int(theta.size()); }
	int degree() const { return horizontal_degree() + contact_degree(); }
	int parity() const
	{
		int p = 0;
		for (auto const &v : theta)
			p ^= int(v.odd);
		return p;
	}

	friend bool operator==(FormBasis const &, FormBasis const &) = default;
	friend std::strong_ordering operator<=>(FormBasis const &, FormBasis const &) = default;
};

// Graded exterior form in the contact basis; each term is coef ∧ basis.
class Form
{
  public:
	using TermMap = std::map<FormBasis, Expr>;

  private:
	TermMap terms_;

  public:
	Form() = default;
	Form(Expr f);
	static Form dx(int lambda);
	static Form theta(Var v);
	static Form term(Expr coef, FormBasis b);
	static Form from_terms(TermMap t);
	static Form volume(int n);   // ω = dx^1∧…∧dx^n

	TermMap const &terms() const { return terms_; }
	bool empty() const { return terms_.empty(); }
	// coefficient of the given basis element (zero if absent)
	Expr coefficient(FormBasis const &b) const;
	std::set<std::pair<int, int>> bidegrees() const;   // (k, s)
	int parity() const;   // 0, 1, or -1 when mixed
	int jet_order() const;

	Form operator-() const;
	Form &operator+=(Form const &o);
	Form &operator-=(Form const &o);
	friend Form operator+(Form a, Form const &b) { return a += b; }
	friend Form operator-(Form a, Form const &b) { return a -= b; }
	// function times form (function on the left)
	friend Form operator*(Expr const &f, Form const &a);

	friend bool operator==(Form const &a, Form const &b) { return a.terms_ == b.terms_; }
};

Form wedge(Form const &a, Form const &b);
Form d_H(Form const &phi, JetContext const &ctx);
Form d_V(Form const &phi);
Form exterior_d(Form const &phi, JetContext const &ctx);
// total derivative acting as an even derivation (d_λθ_Λ = θ_{λ+Λ})
Form total_derivative(Form const &phi, int lambda);
// (k, s) part; pass -1 for "any"
Form h_projection(Form const &phi, int k, int s);
Form h0(Form const &phi);
bool is_zero(Form const &phi);

// dy^i_Λ = θ^i_Λ + y^i_{λ+Λ}dx^λ. to_dy_basis rewrites every θ in terms of
// dy (the returned θ factors are to be read as dy); from_dy_basis inverts.
Form to_dy_basis(Form const &phi, JetContext const &ctx);
Form from_dy_basis(Form const &phi, JetContext const &ctx);

// ---- vector fields -------------------------------------------------------------

struct VectorField
{
	std::vector<Expr> base;        // u^λ; missing entries are zero
	std::map<Var, Expr> fibre;     // u^i_Λ for |Λ| <= order
	int order = 0;
	// components of order > `order` follow from the prolongation formula
	bool projectable = false;

	Expr base_component(int lambda) const;
	// u^v; for projectable fields prolonged on demand, else OrderError beyond order
	Expr component(Var const &v) const;
	// 0 even, 1 odd, -1 inhomogeneous
	int parity() const;
	bool is_zero() const;
};

VectorField make_vector_field(std::vector<Expr> base, std::map<Var, Expr> fibre = {},
                              int order = 0);
// order-0 field with base components depending on x only and fibre components
// on (x, y); components of any order are generated by prolongation
VectorField projectable_field(std::vector<Expr> base, std::map<Var, Expr> fibre);

// u(f) = Σ u^K ∂_K f (left derivatives)
Expr apply(VectorField const &u, Expr const &f);
Form interior_product(VectorField const &u, Form const &phi);
Form lie_derivative(VectorField const &u, Form const &phi, JetContext const &ctx);
VectorField prolong_vector_field(VectorField const &u, int k, JetContext const &ctx);
std::pair<VectorField, VectorField> split_vector_field(VectorField const &u,
                                                       JetContext const &ctx);
VectorField bracket(VectorField const &u, VectorField const &v);
VectorField operator+(VectorField const &u, VectorField const &v);
VectorField operator-(VectorField const &u, VectorField const &v);
// componentwise equality after normalization (zero components ignored)
bool equal(VectorField const &u, VectorField const &v);

// tensor bundle of valence (m, k): fibre coordinates ẋ^{α1…αm}_{β1…βk}
struct TensorBundle
{
	int m = 0, k = 0;
	std::map<std::vector<int>, int> field_of;   // (α…, β…) -> field id
};
TensorBundle declare_tensor_bundle(JetContext &ctx, std::string const &stem, int m, int k);
VectorField canonical_lift_tensor(std::vector<Expr> const &tau, TensorBundle const &bundle,
                                  JetContext const &ctx);

} // namespace jetvar
