#include "jetvar/declaration.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "jetvar/errors.hpp"
#include "jetvar/io.hpp"

namespace jetvar {

namespace {

std::size_t z(int i) { return static_cast<std::size_t>(i); }

[[noreturn]] void fail(SExpr const &at, std::string const &msg)
{
	throw ParseError(msg, at.line, at.column);
}

std::string const &atom(SExpr const &s, char const *what)
{
	if (s.is_list)
		fail(s, std::string("expected ") + what);
	return s.atom;
}

int integer(SExpr const &s, char const *what)
{
	auto const &a = atom(s, what);
	try
	{
		std::size_t used = 0;
		int v = std::stoi(a, &used);
		if (used == a.size())
			return v;
	}
	catch (std::exception const &)
	{
	}
	fail(s, std::string("expected ") + what);
}

SExpr const &list(SExpr const &s, char const *what)
{
	if (!s.is_list)
		fail(s, std::string("expected ") + what);
	return s;
}

bool head_is(SExpr const &s, std::string const &h)
{
	return s.is_list && !s.items.empty() && !s.items[0].is_list && s.items[0].atom == h;
}

Expr expr_at(SExpr const &s, JetContext const &ctx)
{
	try
	{
		return expr_from_sexpr(s, ctx);
	}
	catch (ParseError const &)
	{
		throw;
	}
	catch (std::exception const &e)
	{
		fail(s, e.what());
	}
}

// ---- algebra blocks ----------------------------------------------------------

LieAlgebraData algebra_from_sexpr(SExpr const &s)
{
	if (!s.is_list)
	{
		if (s.atom == "u1")
			return u1();
		if (s.atom == "su2")
			return su2();
		fail(s, "unknown algebra '" + s.atom + "'");
	}
	int dim = -1;
	std::optional<RationalMatrix> form;
	std::vector<SExpr const *> entries;
	for (auto const &part : s.items)
	{
		auto const &p = list(part, "(dim k), (structure ...) or (form ...)");
		std::string const &key = atom(p.items.at(0), "a key");
		if (key == "dim" && p.items.size() == 2)
			dim = integer(p.items[1], "a dimension");
		else if (key == "structure")
			for (std::size_t i = 1; i < p.items.size(); ++i)
				entries.push_back(&p.items[i]);
		else if (key == "form")
		{
			RationalMatrix m;
			for (std::size_t i = 1; i < p.items.size(); ++i)
			{
				auto const &row = list(p.items[i], "a matrix row");
				m.emplace_back();
				for (auto const &e : row.items)
				{
					JetContext none;
					auto v = expr_at(e, none).constant_value();
					if (!v)
						fail(e, "expected a rational entry");
					m.back().push_back(*v);
				}
			}
			form = m;
		}
		else
			fail(p, "unknown algebra key '" + key + "'");
	}
	if (dim < 1)
		fail(s, "algebra needs (dim k) with k >= 1");
	std::vector<RationalMatrix> c(z(dim), RationalMatrix(z(dim), std::vector<Rational>(z(dim))));
	for (auto const *e : entries)
	{
		auto const &t = list(*e, "(r p q value)");
		if (t.items.size() != 4)
			fail(t, "structure entries are (r p q value)");
		int r = integer(t.items[0], "an index"), p = integer(t.items[1], "an index"),
		    q = integer(t.items[2], "an index");
		if (r < 1 || p < 1 || q < 1 || r > dim || p > dim || q > dim)
			fail(t, "structure index out of range");
		JetContext none;
		auto v = expr_at(t.items[3], none).constant_value();
		if (!v)
			fail(t.items[3], "expected a rational structure constant");
		c[z(r - 1)][z(p - 1)][z(q - 1)] = *v;
		c[z(r - 1)][z(q - 1)][z(p - 1)] = -*v;
	}
	try
	{
		return make_algebra(std::move(c), std::move(form));
	}
	catch (InvalidAlgebra const &e)
	{
		fail(s, e.what());
	}
}

std::vector<std::vector<Expr>> rows_at(SExpr const &s, JetContext const &ctx)
{
	std::vector<std::vector<Expr>> rows;
	for (auto const &r : list(s, "a list of rows").items)
	{
		rows.emplace_back();
		for (auto const &e : list(r, "a row").items)
			rows.back().push_back(expr_at(e, ctx));
	}
	return rows;
}

// ---- parser state --------------------------------------------------------------------

class Parser
{
	Declaration d_;
	std::set<std::string> names_;
	bool fields_declared_ = false;
	bool base_declared_ = false;

	void fresh(SExpr const &at, std::string const &name)
	{
		if (!names_.insert(name).second)
			fail(at, "duplicate name '" + name + "'");
	}

	void sync()
	{
		if (d_.gauge)
			d_.gauge->ctx = d_.ctx;
	}

	void need(SExpr const &s, std::size_t lo, std::size_t hi, char const *shape)
	{
		if (s.items.size() < lo || s.items.size() > hi)
			fail(s, std::string("expected ") + shape);
	}

	std::vector<int> fibre_list(SExpr const &s)
	{
		auto const &l = list(s, "(fibre field...)");
		if (!head_is(l, "fibre"))
			fail(l, "expected (fibre field...)");
		std::vector<int> out;
		for (std::size_t i = 1; i < l.items.size(); ++i)
		{
			auto f = d_.ctx.field_index(atom(l.items[i], "a field name"));
			if (!f)
				fail(l.items[i], "unknown field '" + l.items[i].atom + "'");
			out.push_back(*f);
		}
		return out;
	}

	std::vector<std::vector<Expr>> components(SExpr const &s, std::size_t rows)
	{
		auto const &l = list(s, "(components row...)");
		if (!head_is(l, "components"))
			fail(l, "expected (components row...)");
		SExpr body = l;
		body.items.erase(body.items.begin());
		auto m = rows_at(body, d_.ctx);
		if (m.size() != rows)
			fail(l, "one component row per fibre field is required");
		for (auto &r : m)
		{
			if (int(r.size()) != d_.ctx.n())
				fail(l, "each row needs one entry per base direction");
		}
		return m;
	}

	void statement(SExpr const &s)
	{
		if (!s.is_list || s.items.empty() || s.items[0].is_list)
			fail(s, "expected a statement (keyword ...)");
		std::string const &key = s.items[0].atom;
		auto arg = [&](std::size_t i) -> SExpr const & { return s.items.at(i); };
		auto name_at = [&](std::size_t i) {
			std::string const &n = atom(arg(i), "a name");
			return n;
		};

		if (key == "base")
		{
			if (base_declared_ || fields_declared_)
				fail(s, "base must be declared once, first");
			need(s, 2, 33, "(base coordinate...)");
			std::vector<std::string> coords;
			for (std::size_t i = 1; i < s.items.size(); ++i)
				coords.push_back(name_at(i));
			try
			{
				d_.ctx = JetContext(int(coords.size()), coords);
			}
			catch (std::exception const &e)
			{
				fail(s, e.what());
			}
			for (auto const &c : coords)
				fresh(s, c);
			base_declared_ = true;
			return;
		}
		if (!base_declared_ && key != "algebra")
			fail(s, "declare (base ...) first");

		if (key == "field")
		{
			need(s, 2, 4, "(field name [even|odd] [ghost])");
			Parity p = Parity::Even;
			int gh = 0;
			if (s.items.size() >= 3)
			{
				std::string const &par = atom(arg(2), "even or odd");
				if (par == "odd")
					p = Parity::Odd;
				else if (par != "even")
					fail(arg(2), "expected even or odd");
			}
			if (s.items.size() == 4)
				gh = integer(arg(3), "a ghost number");
			fresh(s, name_at(1));
			call(s, [&] { d_.ctx.add_field(name_at(1), p, gh); });
			fields_declared_ = true;
		}
		else if (key == "antifield")
		{
			need(s, 3, 3, "(antifield name partner)");
			auto f = d_.ctx.field_index(name_at(2));
			if (!f)
				fail(arg(2), "unknown field '" + name_at(2) + "'");
			fresh(s, name_at(1));
			call(s, [&] { d_.ctx.add_antifield(name_at(1), *f); });
			fields_declared_ = true;
		}
		else if (key == "param")
		{
			need(s, 2, 2, "(param name)");
			fresh(s, name_at(1));
			call(s, [&] { d_.ctx.add_param(name_at(1)); });
		}
		else if (key == "function")
		{
			need(s, 2, 33, "(function name coordinate...)");
			std::uint32_t deps = s.items.size() == 2 ? ~0u : 0u;
			for (std::size_t i = 2; i < s.items.size(); ++i)
			{
				auto c = d_.ctx.coord_index(name_at(i));
				if (!c)
					fail(arg(i), "unknown coordinate '" + name_at(i) + "'");
				deps |= 1u << *c;
			}
			fresh(s, name_at(1));
			call(s, [&] { d_.ctx.add_function(name_at(1), deps); });
		}
		else if (key == "algebra")
		{
			need(s, 3, 6, "(algebra name u1|su2|(dim ...) ...)");
			fresh(s, name_at(1));
			if (s.items.size() == 3 && !arg(2).is_list)
				d_.algebras[name_at(1)] = algebra_from_sexpr(arg(2));
			else if (s.items.size() == 3 && head_is(arg(2), "json"))
			{
				auto const &j = arg(2);
				need(j, 2, 2, "(json path)");
				d_.algebras[name_at(1)] = call(j, [&] { return load_algebra(atom(j.items[1], "a path")); });
			}
			else
			{
				SExpr body = s;
				body.items.erase(body.items.begin(), body.items.begin() + 2);
				d_.algebras[name_at(1)] = algebra_from_sexpr(body);
			}
		}
		else if (key == "gauge")
		{
			need(s, 2, 2, "(gauge algebra)");
			if (fields_declared_ || d_.gauge)
				fail(s, "gauge must precede every field declaration");
			auto it = d_.algebras.find(name_at(1));
			if (it == d_.algebras.end())
				fail(arg(1), "unknown algebra '" + name_at(1) + "'");
			GaugeContext gc = make_gauge_context(it->second, d_.ctx.n(), d_.ctx.coords());
			for (auto const &f : gc.ctx.fields())
				fresh(s, f.name);
			for (auto const &p : d_.ctx.params())
				call(s, [&] { gc.ctx.add_param(p); });
			for (auto const &f : d_.ctx.functions())
				call(s, [&] { gc.ctx.add_function(f.name, f.deps); });
			d_.ctx = gc.ctx;
			d_.gauge = gc;
			fields_declared_ = true;
		}
		else if (key == "metric")
		{
			need(s, 3, 4, "(metric name rows|euclid|minkowski [(inverse rows)])");
			fresh(s, name_at(1));
			Metric g;
			if (!arg(2).is_list)
				g = call(arg(2), [&] { return standard_metric(arg(2).atom, d_.ctx.n()); });
			else
			{
				g.n = d_.ctx.n();
				g.g = rows_at(arg(2), d_.ctx);
				if (int(g.g.size()) != g.n)
					fail(arg(2), "metric needs n rows");
				for (auto const &r : g.g)
					if (int(r.size()) != g.n)
						fail(arg(2), "metric rows need n entries");
				for (int i = 0; i < g.n; ++i)
					for (int j = 0; j < i; ++j)
						if (!(g.g[z(i)][z(j)] == g.g[z(j)][z(i)]))
							fail(arg(2), "metric must be symmetric");
			}
			if (s.items.size() == 4)
			{
				if (!head_is(arg(3), "inverse"))
					fail(arg(3), "expected (inverse rows)");
				SExpr body = arg(3);
				body.items.erase(body.items.begin());
				g.inverse = rows_at(body, d_.ctx);
			}
			d_.metrics[name_at(1)] = g;
		}
		else if (key == "lagrangian")
		{
			need(s, 3, 3, "(lagrangian name expression)");
			fresh(s, name_at(1));
			if (head_is(arg(2), "yang-mills"))
			{
				auto const &y = arg(2);
				need(y, 2, 3, "(yang-mills metric [coupling])");
				auto it = d_.metrics.find(atom(y.items[1], "a metric name"));
				if (it == d_.metrics.end())
					fail(y.items[1], "unknown metric '" + y.items[1].atom + "'");
				Rational coupling(1);
				if (y.items.size() == 3)
				{
					auto v = expr_at(y.items[2], d_.ctx).constant_value();
					if (!v)
						fail(y.items[2], "coupling must be a rational number");
					coupling = *v;
				}
				if (!d_.gauge)
					fail(y, "yang-mills needs a (gauge ...) block");
				sync();
				d_.lagrangians[name_at(1)] =
				    call(y, [&] { return yang_mills_lagrangian(*d_.gauge, it->second, coupling); });
			}
			else
				d_.lagrangians[name_at(1)] = expr_at(arg(2), d_.ctx);
		}
		else if (key == "form")
		{
			need(s, 3, 3, "(form name form-expression)");
			fresh(s, name_at(1));
			d_.forms[name_at(1)] = call(arg(2), [&] { return form_from_sexpr(arg(2), d_.ctx); });
		}
		else if (key == "vector-field")
		{
			need(s, 3, 4, "(vector-field name (base ...) [(fibre (field expr)...)])");
			fresh(s, name_at(1));
			auto const &b = list(arg(2), "(base component...)");
			if (!head_is(b, "base") || int(b.items.size()) != d_.ctx.n() + 1)
				fail(b, "expected (base u^1 ... u^n)");
			std::vector<Expr> base;
			for (std::size_t i = 1; i < b.items.size(); ++i)
				base.push_back(expr_at(b.items[i], d_.ctx));
			std::map<Var, Expr> fibre;
			if (s.items.size() == 4)
			{
				auto const &f = list(arg(3), "(fibre (field expr)...)");
				if (!head_is(f, "fibre"))
					fail(f, "expected (fibre (field expr)...)");
				for (std::size_t i = 1; i < f.items.size(); ++i)
				{
					auto const &pr = list(f.items[i], "(field expr)");
					if (pr.items.size() != 2)
						fail(pr, "expected (field expr)");
					auto fi = d_.ctx.field_index(atom(pr.items[0], "a field"));
					if (!fi)
						fail(pr.items[0], "unknown field '" + pr.items[0].atom + "'");
					fibre[d_.ctx.jet_var(*fi)] = expr_at(pr.items[1], d_.ctx);
				}
			}
			d_.vector_fields[name_at(1)] = call(s, [&] { return projectable_field(base, fibre); });
		}
		else if (key == "connection" || key == "soldering")
		{
			need(s, 4, 4, "(connection name (fibre ...) (components row...))");
			fresh(s, name_at(1));
			auto fib = fibre_list(arg(2));
			auto comps = components(arg(3), fib.size());
			if (key == "connection")
				d_.connections[name_at(1)] =
				    call(s, [&] { return general_connection(fib, comps, d_.ctx); });
			else
				d_.solderings[name_at(1)] = call(s, [&] { return soldering_on(fib, comps, d_.ctx); });
		}
		else if (key == "run")
		{
			need(s, 2, 16, "(run command argument...)");
			Command c;
			c.line = s.line;
			c.column = s.column;
			c.name = name_at(1);
			for (std::size_t i = 2; i < s.items.size(); ++i)
				c.args.push_back(name_at(i));
			d_.commands.push_back(std::move(c));
		}
		else
			fail(s.items[0], "unknown statement '" + key + "'");
	}

	template <class F> auto call(SExpr const &at, F &&f) -> decltype(f())
	{
		try
		{
			return f();
		}
		catch (ParseError const &)
		{
			throw;
		}
		catch (std::exception const &e)
		{
			fail(at, e.what());
		}
	}

  public:
	Declaration run(std::vector<SExpr> const &stmts)
	{
		for (auto const &s : stmts)
			statement(s);
		if (!base_declared_)
			throw ParseError("missing (base ...) declaration", 1, 1);
		sync();
		return std::move(d_);
	}
};

} // namespace

GaugeContext const &Declaration::gauge_context() const
{
	if (!gauge)
		throw KindError("no (gauge ...) block declared");
	return *gauge;
}

LieAlgebraData algebra_from_json(nlohmann::json const &j)
{
	if (j.is_string())
	{
		SExpr s;
		s.atom = j.get<std::string>();
		return algebra_from_sexpr(s);
	}
	if (!j.is_object() || !j.contains("dim") || !j.contains("structure"))
		throw ParseError("algebra table needs \"dim\" and \"structure\"", 1, 1);
	for (auto const &[k, v] : j.items())
		if (k != "dim" && k != "structure" && k != "form")
			throw ParseError("unknown algebra key \"" + k + "\"", 1, 1);
	SExpr s{true, {}, {}, 1, 1};
	s.items.push_back(sexpr_from_json(nlohmann::json::array({"dim", j.at("dim")}), 1, 1));
	nlohmann::json st = nlohmann::json::array({"structure"});
	for (auto const &e : j.at("structure"))
		st.push_back(e);
	s.items.push_back(sexpr_from_json(st, 1, 2));
	if (j.contains("form"))
	{
		nlohmann::json f = nlohmann::json::array({"form"});
		for (auto const &r : j.at("form"))
			f.push_back(r);
		s.items.push_back(sexpr_from_json(f, 1, 3));
	}
	return algebra_from_sexpr(s);
}

LieAlgebraData load_algebra(std::string const &name_or_path)
{
	if (name_or_path == "u1")
		return u1();
	if (name_or_path == "su2")
		return su2();
	std::ifstream in(name_or_path);
	if (!in)
		throw ParseError("cannot open algebra table '" + name_or_path + "'", 1, 1);
	nlohmann::json j;
	try
	{
		j = nlohmann::json::parse(in);
	}
	catch (nlohmann::json::parse_error const &e)
	{
		throw ParseError(e.what(), 1, int(e.byte));
	}
	return algebra_from_json(j);
}

Metric standard_metric(std::string const &kind, int n)
{
	if (kind != "euclid" && kind != "minkowski")
		throw KindError("unknown metric '" + kind + "' (euclid or minkowski)");
	Metric g;
	g.n = n;
	g.g.assign(z(n), std::vector<Expr>(z(n)));
	for (int i = 0; i < n; ++i)
		g.g[z(i)][z(i)] = Expr(kind == "minkowski" && i > 0 ? -1 : 1);
	return g;
}

Declaration parse_declaration(std::string const &text)
{
	return Parser().run(parse_sexprs(text));
}

SExpr sexpr_from_json(nlohmann::json const &j, int line, int column)
{
	SExpr s;
	s.line = line;
	s.column = column;
	if (j.is_array())
	{
		s.is_list = true;
		int k = 1;
		for (auto const &e : j)
			s.items.push_back(sexpr_from_json(e, line, k++));
		return s;
	}
	if (j.is_number_integer())
		s.atom = std::to_string(j.get<long long>());
	else if (j.is_string())
	{
		std::string t = j.get<std::string>();
		if (t.find_first_of("() \t\n") != std::string::npos)
			return parse_sexpr(t, line, column);
		s.atom = t;
	}
	else
		throw ParseError("expected a string, integer or array", line, column);
	return s;
}

Declaration parse_declaration_json(nlohmann::json const &j)
{
	if (!j.is_array())
		throw ParseError("declaration must be an array of statements", 1, 1);
	std::vector<SExpr> stmts;
	int k = 1;
	for (auto const &st : j)
	{
		if (!st.is_array())
			throw ParseError("each statement must be an array", k, 1);
		stmts.push_back(sexpr_from_json(st, k, 1));
		++k;
	}
	return Parser().run(stmts);
}

Declaration parse_declaration_auto(std::string const &text)
{
	auto p = text.find_first_not_of(" \t\r\n");
	if (p != std::string::npos && text[p] == '[')
	{
		nlohmann::json j;
		try
		{
			j = nlohmann::json::parse(text);
		}
		catch (nlohmann::json::parse_error const &e)
		{
			// byte offset to line/column
			std::size_t b = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
			int line = 1, col = 1;
			for (std::size_t i = 0; i < b; ++i)
				if (text[i] == '\n')
					line++, col = 1;
				else
					col++;
			throw ParseError("invalid JSON", line, col);
		}
		return parse_declaration_json(j);
	}
	return parse_declaration(text);
}

} // namespace jetvar
