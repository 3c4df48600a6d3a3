#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetvar/multi_index.hpp"
#include "jetvar/rational.hpp"

namespace jetvar {

enum class VarKind : std::uint8_t { Base, Param, Jet };

// A scalar coordinate: base x^λ, a named constant parameter, or a jet
// coordinate y^i_Λ (odd when the field is Grassmann-odd).
struct Var
{
	VarKind kind = VarKind::Base;
	bool odd = false;
	std::uint16_t index = 0;
	MultiIndex mi;

	static Var base(int lambda) { return {VarKind::Base, false, std::uint16_t(lambda), {}}; }
	static Var param(int p) { return {VarKind::Param, false, std::uint16_t(p), {}}; }
	static Var jet(int field, MultiIndex m = {}, bool odd = false)
	{
		return {VarKind::Jet, odd, std::uint16_t(field), m};
	}

	bool is_jet() const { return kind == VarKind::Jet; }
	Var shifted(int lambda) const { return {kind, odd, index, mi.plus(lambda)}; }

	friend bool operator==(Var const &, Var const &) = default;
	friend std::strong_ordering operator<=>(Var const &a, Var const &b)
	{
		if (auto c = a.kind <=> b.kind; c != 0)
			return c;
		if (auto c = a.index <=> b.index; c != 0)
			return c;
		return a.mi <=> b.mi;
	}
};

enum class AtomKind : std::uint8_t { Opaque, Sin, Cos, Exp, Ln, Pow };

class Expr;
struct AtomNode;

// Shared immutable handle to a function of the base coordinates.
class Atom
{
	std::shared_ptr<const AtomNode> node_;

  public:
	Atom() = default;
	explicit Atom(std::shared_ptr<const AtomNode> n) : node_(std::move(n)) {}
	AtomNode const &node() const { return *node_; }
	AtomKind kind() const;

	friend bool operator==(Atom const &a, Atom const &b);
	friend std::strong_ordering operator<=>(Atom const &a, Atom const &b);
};

struct Monomial
{
	std::vector<std::pair<Var, int>> even;          // sorted, exponent != 0
	std::vector<Var> odd;                           // strictly ascending
	std::vector<std::pair<Atom, Rational>> atoms;   // sorted, exponent != 0

	bool is_one() const { return even.empty() && odd.empty() && atoms.empty(); }
	int parity() const { return int(odd.size() % 2); }

	friend bool operator==(Monomial const &, Monomial const &) = default;
	friend std::strong_ordering operator<=>(Monomial const &, Monomial const &) = default;
};

// Canonical sparse sum of monomials with exact rational coefficients.
class Expr
{
  public:
	using TermMap = std::map<Monomial, Rational>;

  private:
	TermMap terms_;

  public:
	Expr() = default;
	Expr(Rational c);
	Expr(std::int64_t c) : Expr(Rational(c)) {}
	Expr(int c) : Expr(Rational(c)) {}
	static Expr from_terms(TermMap t);
	static Expr var(Var v);
	static Expr monomial(Monomial m, Rational c = 1);
	static Expr atom(Atom a, Rational exponent = 1);

	TermMap const &terms() const { return terms_; }
	bool empty() const { return terms_.empty(); }
	std::size_t size() const { return terms_.size(); }
	bool is_constant() const;
	std::optional<Rational> constant_value() const;
	// 0 even, 1 odd, -1 mixed; empty counts as even
	int parity() const;
	bool has_elementary_atoms() const;
	bool has_atoms() const;
	bool has_jets() const;
	bool has_odd() const;

	Expr operator-() const;
	Expr &operator+=(Expr const &o);
	Expr &operator-=(Expr const &o);
	Expr &operator*=(Expr const &o);
	Expr &operator*=(Rational const &c);

	friend Expr operator+(Expr a, Expr const &b) { return a += b; }
	friend Expr operator-(Expr a, Expr const &b) { return a -= b; }
	friend Expr operator*(Expr const &a, Expr const &b);

	friend bool operator==(Expr const &a, Expr const &b) { return a.terms_ == b.terms_; }
	friend std::strong_ordering operator<=>(Expr const &a, Expr const &b);
};

struct AtomNode
{
	AtomKind kind = AtomKind::Opaque;
	std::string name;          // opaque only
	std::uint32_t deps = 0;    // opaque only: bit λ set iff f depends on x^λ
	MultiIndex deriv;          // opaque only: ∂_Λ f
	Expr arg;                  // elementary kinds
};

// ---- constructors -------------------------------------------------------

Expr opaque(std::string name, std::uint32_t deps, MultiIndex deriv = {});
Expr sin(Expr const &u);
Expr cos(Expr const &u);
Expr exp(Expr const &u);
Expr ln(Expr const &u);
Expr pow(Expr const &u, Rational q);

// ---- derivatives ---------------------------------------------------------

// ∂e/∂v; left derivative for odd v; ∂_λ for base v acts through atoms
Expr partial(Expr const &e, Var const &v);
Expr partial_base(Expr const &e, int lambda);
// d_λ e = ∂_λ e + Σ y^i_{λ+Λ} ∂^Λ_i e (odd fields included with Koszul sign)
Expr total_derivative(Expr const &e, int lambda);
Expr total_derivative(Expr const &e, MultiIndex const &lambda);

// ---- inspection / substitution -------------------------------------------

int jet_order(Expr const &e);       // -1 if no jet coordinate occurs
std::vector<Var> variables(Expr const &e);   // distinct vars, sorted
std::vector<Var> jet_variables(Expr const &e);
// rebuilds e with every variable v replaced by f(v) when f returns a value
Expr substitute(Expr const &e, std::function<std::optional<Expr>(Var const &)> const &f);
Expr substitute(Expr const &e, Var const &v, Expr const &by);
// coefficient of the given odd monomial block (grouping by odd part)
std::map<std::vector<Var>, Expr> split_odd(Expr const &e);
// polynomial coefficients in the single even variable v
std::map<int, Expr> coefficients_in(Expr const &e, Var const &v);
// degree in jet coordinates of each term is the same: returns it, else -1
std::map<int, Expr> split_by_jet_degree(Expr const &e);

// ---- zero testing ---------------------------------------------------------

struct ZeroCheck
{
	bool zero = false;
	bool probable = false;   // decided by numeric sampling
	int samples = 0;
	double max_residual = 0;
};

ZeroCheck zero_check(Expr const &e, int samples = 16, double tol = 1e-9);
bool is_zero(Expr const &e);

// numeric evaluation with every symbol drawn at random (deterministic seed)
class Sampler
{
	struct Impl;
	std::shared_ptr<Impl> impl_;

  public:
	explicit Sampler(std::uint64_t seed);
	void redraw();
	double value(Var const &v);
	double evaluate(Expr const &e);
	double magnitude(Expr const &e);   // Σ |term| at the current point
};

} // namespace jetvar
