#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetvar/expr.hpp"

namespace jetvar {

enum class Parity : std::uint8_t { Even, Odd };

struct FieldDecl
{
	std::string name;
	Parity parity = Parity::Even;
	int ghost = 0;
	std::optional<int> antifield_of;
	bool odd() const { return parity == Parity::Odd; }
};

struct FunctionDecl
{
	std::string name;
	std::uint32_t deps = 0;
};

// Base dimension, coordinate names, field declarations, constant parameters
// and opaque functions of x. Built once, then only read.
class JetContext
{
	int n_ = 1;
	std::vector<std::string> coords_;
	std::vector<FieldDecl> fields_;
	std::vector<std::string> params_;
	std::vector<FunctionDecl> functions_;
	int max_order_ = 8;

	void check_fresh(std::string const &name) const;

  public:
	explicit JetContext(int n = 1, std::vector<std::string> coords = {});

	int n() const { return n_; }
	int max_order() const { return max_order_; }
	void set_max_order(int k) { max_order_ = k; }

	int add_field(std::string name, Parity p = Parity::Even, int ghost = 0);
	int add_antifield(std::string name, int partner);
	int add_param(std::string name);
	// deps: bit mask of base directions, ~0u for all
	void add_function(std::string name, std::uint32_t deps = ~0u);

	std::vector<std::string> const &coords() const { return coords_; }
	std::vector<FieldDecl> const &fields() const { return fields_; }
	FieldDecl const &field(int i) const { return fields_.at(std::size_t(i)); }
	std::vector<std::string> const &params() const { return params_; }
	std::vector<FunctionDecl> const &functions() const { return functions_; }
	int field_count() const { return int(fields_.size()); }
	std::vector<int> even_fields() const;
	std::vector<int> odd_fields() const;

	std::optional<int> coord_index(std::string_view name) const;
	std::optional<int> field_index(std::string_view name) const;
	std::optional<int> param_index(std::string_view name) const;
	std::optional<FunctionDecl> function(std::string_view name) const;
	int field_id(std::string_view name) const;   // throws UnknownSymbol

	Var jet_var(int field, MultiIndex mi = {}) const
	{
		return Var::jet(field, mi, fields_.at(std::size_t(field)).odd());
	}
	Expr x(int lambda) const { return Expr::var(Var::base(lambda)); }
	Expr y(int field, MultiIndex mi = {}) const { return Expr::var(jet_var(field, mi)); }
	Expr y(std::string_view name, MultiIndex mi = {}) const { return y(field_id(name), mi); }
	Expr param(std::string_view name) const;
	Expr fn(std::string_view name, MultiIndex deriv = {}) const;

	// throws UnknownSymbol when e mentions an undeclared coordinate
	void validate(Expr const &e) const;
	// ghost number of a monomial-homogeneous expression
	std::optional<int> ghost_number(Expr const &e) const;
	int ghost_number(Var const &v) const;
};

// normalize: expressions are canonical by construction; this validates them
// against the context and returns the canonical value.
Expr normalize(Expr const &e, JetContext const &ctx);

} // namespace jetvar
