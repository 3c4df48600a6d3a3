#include "jetvar/context.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {

JetContext::JetContext(int n, std::vector<std::string> coords) : n_(n)
{
	if (n < 1 || n > 16)
		throw std::invalid_argument("base dimension must lie in 1..16");
	if (coords.empty())
		for (int i = 1; i <= n; ++i)
			coords.push_back("x" + std::to_string(i));
	if (int(coords.size()) != n)
		throw std::invalid_argument("coordinate name count differs from the base dimension");
	for (auto &c : coords)
	{
		check_fresh(c);
		coords_.push_back(c);
	}
}

void JetContext::check_fresh(std::string const &name) const
{
	if (name.empty())
		throw std::invalid_argument("empty symbol name");
	if (coord_index(name) || field_index(name) || param_index(name) || function(name))
		throw std::invalid_argument("symbol declared twice: " + name);
}

int JetContext::add_field(std::string name, Parity p, int ghost)
{
	check_fresh(name);
	fields_.push_back({std::move(name), p, ghost, std::nullopt});
	return int(fields_.size()) - 1;
}

int JetContext::add_antifield(std::string name, int partner)
{
	auto const &f = field(partner);
	int i = add_field(std::move(name), f.odd() ? Parity::Even : Parity::Odd, -f.ghost - 1);
	fields_.back().antifield_of = partner;
	return i;
}

int JetContext::add_param(std::string name)
{
	check_fresh(name);
	params_.push_back(std::move(name));
	return int(params_.size()) - 1;
}

void JetContext::add_function(std::string name, std::uint32_t deps)
{
	check_fresh(name);
	if (n_ < 32)
		deps &= (1u << n_) - 1u;
	functions_.push_back({std::move(name), deps});
}

std::vector<int> JetContext::even_fields() const
{
	std::vector<int> r;
	for (int i = 0; i < field_count(); ++i)
		if (!fields_[std::size_t(i)].odd())
			r.push_back(i);
	return r;
}

std::vector<int> JetContext::odd_fields() const
{
	std::vector<int> r;
	for (int i = 0; i < field_count(); ++i)
		if (fields_[std::size_t(i)].odd())
			r.push_back(i);
	return r;
}

std::optional<int> JetContext::coord_index(std::string_view name) const
{
	for (std::size_t i = 0; i < coords_.size(); ++i)
		if (coords_[i] == name)
			return int(i);
	return std::nullopt;
}

std::optional<int> JetContext::field_index(std::string_view name) const
{
	for (std::size_t i = 0; i < fields_.size(); ++i)
		if (fields_[i].name == name)
			return int(i);
	return std::nullopt;
}

std::optional<int> JetContext::param_index(std::string_view name) const
{
	for (std::size_t i = 0; i < params_.size(); ++i)
		if (params_[i] == name)
			return int(i);
	return std::nullopt;
}

std::optional<FunctionDecl> JetContext::function(std::string_view name) const
{
	for (auto const &f : functions_)
		if (f.name == name)
			return f;
	return std::nullopt;
}

int JetContext::field_id(std::string_view name) const
{
	if (auto i = field_index(name))
		return *i;
	throw UnknownSymbol("unknown field: " + std::string(name));
}

Expr JetContext::param(std::string_view name) const
{
	if (auto i = param_index(name))
		return Expr::var(Var::param(*i));
	throw UnknownSymbol("unknown parameter: " + std::string(name));
}

Expr JetContext::fn(std::string_view name, MultiIndex deriv) const
{
	if (auto f = function(name))
		return opaque(f->name, f->deps, deriv);
	throw UnknownSymbol("unknown function: " + std::string(name));
}

namespace {

void validate_rec(Expr const &e, JetContext const &ctx)
{
	for (auto const &[m, c] : e.terms())
	{
		auto check = [&](Var const &v) {
			switch (v.kind)
			{
			case VarKind::Base:
				if (v.index >= ctx.n())
					throw UnknownSymbol("base coordinate index out of range");
				break;
			case VarKind::Param:
				if (v.index >= ctx.params().size())
					throw UnknownSymbol("undeclared parameter");
				break;
			case VarKind::Jet:
				if (v.index >= ctx.fields().size())
					throw UnknownSymbol("undeclared field");
				if (v.odd != ctx.field(v.index).odd())
					throw UnknownSymbol("parity mismatch for field " + ctx.field(v.index).name);
				for (int d : v.mi)
					if (d >= ctx.n())
						throw UnknownSymbol("multi-index direction out of range");
				break;
			}
		};
		for (auto const &[v, k] : m.even)
			check(v);
		for (auto const &v : m.odd)
			check(v);
		for (auto const &[a, q] : m.atoms)
		{
			auto const &nd = a.node();
			if (nd.kind == AtomKind::Opaque)
			{
				auto f = ctx.function(nd.name);
				if (!f || f->deps != nd.deps)
					throw UnknownSymbol("undeclared function: " + nd.name);
			}
			else
				validate_rec(nd.arg, ctx);
		}
	}
}

} // namespace

void JetContext::validate(Expr const &e) const { validate_rec(e, *this); }

int JetContext::ghost_number(Var const &v) const
{
	if (v.kind != VarKind::Jet)
		return 0;
	return field(v.index).ghost;
}

std::optional<int> JetContext::ghost_number(Expr const &e) const
{
	std::optional<int> g;
	for (auto const &[m, c] : e.terms())
	{
		int s = 0;
		for (auto const &[v, k] : m.even)
			s += k * ghost_number(v);
		for (auto const &v : m.odd)
			s += ghost_number(v);
		if (g && *g != s)
			return std::nullopt;
		g = s;
	}
	return g ? g : std::optional<int>(0);
}

Expr normalize(Expr const &e, JetContext const &ctx)
{
	ctx.validate(e);
	return e;
}

} // namespace jetvar
