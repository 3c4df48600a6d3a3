#include "jetvar/io.hpp"

#include <cctype>
#include <regex>
#include <sstream>

#include "jetvar/errors.hpp"

namespace jetvar {

using nlohmann::json;

namespace {

std::string dirs_text(MultiIndex const &mi)
{
	std::string s = "[";
	bool first = true;
	for (int d : mi)
	{
		if (!first)
			s += ",";
		s += std::to_string(d + 1);
		first = false;
	}
	return s + "]";
}

std::string atom_name(AtomNode const &n)
{
	std::string s = n.name;
	if (!n.deriv.empty())
		s += dirs_text(n.deriv);
	return s;
}

char const *fn_name(AtomKind k)
{
	switch (k)
	{
	case AtomKind::Sin: return "sin";
	case AtomKind::Cos: return "cos";
	case AtomKind::Exp: return "exp";
	case AtomKind::Ln: return "ln";
	default: return "";
	}
}

std::string power_text(std::string const &base, Rational const &q)
{
	if (q.is_one())
		return base;
	return "(^ " + base + " " + q.str() + ")";
}

std::string atom_text(Atom const &a, Rational const &q, JetContext const &ctx)
{
	auto const &n = a.node();
	switch (n.kind)
	{
	case AtomKind::Opaque:
		return power_text(atom_name(n), q);
	case AtomKind::Pow:
		return power_text(to_text(n.arg, ctx), q);
	default:
		return power_text(std::string("(") + fn_name(n.kind) + " " + to_text(n.arg, ctx) + ")", q);
	}
}

std::string term_text(Monomial const &m, Rational const &c, JetContext const &ctx)
{
	std::vector<std::string> f;
	for (auto const &[v, k] : m.even)
		f.push_back(power_text(var_name(v, ctx), Rational(k)));
	for (auto const &v : m.odd)
		f.push_back(var_name(v, ctx));
	for (auto const &[a, q] : m.atoms)
		f.push_back(atom_text(a, q, ctx));
	if (f.empty())
		return c.str();
	if (c.is_one() && f.size() == 1)
		return f[0];
	std::string s = "(*";
	if (!c.is_one())
		s += " " + c.str();
	for (auto const &x : f)
		s += " " + x;
	return s + ")";
}

bool is_number(std::string const &t)
{
	static std::regex const re("[+-]?[0-9]+(/[0-9]+)?");
	return std::regex_match(t, re);
}

Rational number(std::string const &t, int line, int col)
{
	try
	{
		return Rational::parse(t[0] == '+' ? t.substr(1) : t);
	}
	catch (std::exception const &e)
	{
		throw ParseError(std::string("bad number '") + t + "'", line, col);
	}
}

// symbol with optional [d1,d2,...] suffix
Expr symbol(std::string const &tok, JetContext const &ctx, int line, int col)
{
	std::string name = tok;
	MultiIndex mi;
	bool has_dirs = false;
	auto lb = tok.find('[');
	if (lb != std::string::npos)
	{
		if (tok.back() != ']')
			throw ParseError("malformed multi-index in '" + tok + "'", line, col);
		name = tok.substr(0, lb);
		std::string inner = tok.substr(lb + 1, tok.size() - lb - 2);
		has_dirs = true;
		std::stringstream ss(inner);
		std::string part;
		while (std::getline(ss, part, ','))
		{
			if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit))
				throw ParseError("bad direction in '" + tok + "'", line, col);
			int d = std::stoi(part);
			if (d < 1 || d > ctx.n())
				throw ParseError("direction out of range in '" + tok + "'", line, col);
			mi = mi.plus(d - 1);
		}
	}
	if (auto c = ctx.coord_index(name); c && !has_dirs)
		return ctx.x(*c);
	if (auto p = ctx.param_index(name); p && !has_dirs)
		return Expr::var(Var::param(*p));
	if (auto f = ctx.field_index(name))
		return ctx.y(*f, mi);
	if (auto f = ctx.function(name))
		return opaque(f->name, f->deps, mi);
	throw ParseError("unknown symbol '" + tok + "'", line, col);
}

} // namespace

std::string var_name(Var const &v, JetContext const &ctx)
{
	switch (v.kind)
	{
	case VarKind::Base: return ctx.coords().at(v.index);
	case VarKind::Param: return ctx.params().at(v.index);
	case VarKind::Jet:
	{
		std::string s = ctx.field(v.index).name;
		if (!v.mi.empty())
			s += dirs_text(v.mi);
		return s;
	}
	}
	return "?";
}

std::string to_text(Expr const &e, JetContext const &ctx)
{
	if (e.empty())
		return "0";
	if (e.size() == 1)
	{
		auto const &[m, c] = *e.terms().begin();
		return term_text(m, c, ctx);
	}
	std::string s = "(+";
	for (auto const &[m, c] : e.terms())
		s += " " + term_text(m, c, ctx);
	return s + ")";
}

Expr expr_from_sexpr(SExpr const &s, JetContext const &ctx)
{
	if (!s.is_list)
	{
		if (s.atom.empty())
			throw ParseError("empty token", s.line, s.column);
		if (is_number(s.atom))
			return Expr(number(s.atom, s.line, s.column));
		return symbol(s.atom, ctx, s.line, s.column);
	}
	if (s.items.empty() || s.items[0].is_list)
		throw ParseError("expected an operator after '('", s.line, s.column);
	std::string const &op = s.items[0].atom;
	std::size_t argc = s.items.size() - 1;
	auto arg = [&](std::size_t i) { return expr_from_sexpr(s.items[i], ctx); };
	if (op == "+")
	{
		Expr r;
		for (std::size_t i = 1; i < s.items.size(); ++i)
			r += arg(i);
		return r;
	}
	if (op == "*")
	{
		Expr r(1);
		for (std::size_t i = 1; i < s.items.size(); ++i)
			r *= arg(i);
		return r;
	}
	if (op == "-")
	{
		if (argc == 0)
			throw ParseError("'-' needs an argument", s.line, s.column);
		if (argc == 1)
			return -arg(1);
		Expr r = arg(1);
		for (std::size_t i = 2; i < s.items.size(); ++i)
			r -= arg(i);
		return r;
	}
	if (op == "/")
	{
		if (argc != 2)
			throw ParseError("'/' takes two arguments", s.line, s.column);
		Expr b = arg(2);
		if (b.empty())
			throw ParseError("division by zero", s.line, s.column);
		try
		{
			return arg(1) * pow(b, -1);
		}
		catch (NonPolynomial const &e)
		{
			throw ParseError(e.what(), s.line, s.column);
		}
	}
	if (op == "^")
	{
		if (argc != 2 || s.items[2].is_list || !is_number(s.items[2].atom))
			throw ParseError("'^' takes a base and a rational exponent", s.line, s.column);
		Rational q = number(s.items[2].atom, s.items[2].line, s.items[2].column);
		try
		{
			return pow(arg(1), q);
		}
		catch (std::exception const &e)
		{
			throw ParseError(e.what(), s.line, s.column);
		}
	}
	if (op == "sin" || op == "cos" || op == "exp" || op == "ln")
	{
		if (argc != 1)
			throw ParseError("'" + op + "' takes one argument", s.line, s.column);
		Expr u = arg(1);
		try
		{
			if (op == "sin")
				return sin(u);
			if (op == "cos")
				return cos(u);
			if (op == "exp")
				return exp(u);
			return ln(u);
		}
		catch (std::exception const &e)
		{
			throw ParseError(e.what(), s.line, s.column);
		}
	}
	throw ParseError("unknown operator '" + op + "'", s.items[0].line, s.items[0].column);
}

Expr parse_expr(std::string const &text, JetContext const &ctx, int line, int column)
{
	return expr_from_sexpr(parse_sexpr(text, line, column), ctx);
}

// ---- forms -------------------------------------------------------------------------

namespace {

std::vector<std::pair<bool, int>> basis_factors(FormBasis const &b)
{
	std::vector<std::pair<bool, int>> f;   // (is_dx, index into dx or θ)
	for (int l = 0; l < 32; ++l)
		if (b.dx >> l & 1u)
			f.push_back({true, l});
	for (std::size_t j = 0; j < b.theta.size(); ++j)
		f.push_back({false, int(j)});
	return f;
}

} // namespace

std::string to_text(Form const &f, JetContext const &ctx, Basis basis)
{
	Form g = basis == Basis::Dy ? to_dy_basis(f, ctx) : f;
	char const *th = basis == Basis::Dy ? "(dy " : "(th ";
	std::string s = "(form";
	for (auto const &[b, c] : g.terms())
	{
		s += " (wedge " + to_text(c, ctx);
		for (auto [is_dx, i] : basis_factors(b))
		{
			if (is_dx)
				s += " (d " + ctx.coords().at(std::size_t(i)) + ")";
			else
				s += std::string(" ") + th + var_name(b.theta[std::size_t(i)], ctx) + ")";
		}
		s += ")";
	}
	return s + ")";
}

Form form_from_sexpr(SExpr const &s, JetContext const &ctx)
{
	if (!(s.is_list && !s.items.empty() && !s.items[0].is_list && s.items[0].atom == "form"))
		return Form(expr_from_sexpr(s, ctx));
	Form r;
	for (std::size_t i = 1; i < s.items.size(); ++i)
	{
		SExpr const &t = s.items[i];
		if (!t.is_list || t.items.size() < 2 || t.items[0].is_list || t.items[0].atom != "wedge")
			throw ParseError("expected (wedge coefficient factor...)", t.line, t.column);
		Form acc(expr_from_sexpr(t.items[1], ctx));
		if (acc.empty())
			continue;
		for (std::size_t j = 2; j < t.items.size(); ++j)
		{
			SExpr const &fa = t.items[j];
			if (!fa.is_list || fa.items.size() != 2 || fa.items[0].is_list || fa.items[1].is_list)
				throw ParseError("expected (d x), (th y) or (dy y)", fa.line, fa.column);
			std::string const &kind = fa.items[0].atom;
			std::string const &sym = fa.items[1].atom;
			Form factor;
			if (kind == "d")
			{
				auto c = ctx.coord_index(sym);
				if (!c)
					throw ParseError("unknown coordinate '" + sym + "'", fa.items[1].line,
					                 fa.items[1].column);
				factor = Form::dx(*c);
			}
			else if (kind == "th" || kind == "dy")
			{
				Expr y = symbol(sym, ctx, fa.items[1].line, fa.items[1].column);
				if (y.size() != 1 || !y.has_jets())
					throw ParseError("contact factor needs a jet coordinate", fa.items[1].line,
					                 fa.items[1].column);
				auto const &m = y.terms().begin()->first;
				Var v = m.odd.empty() ? m.even[0].first : m.odd[0];
				factor = Form::theta(v);
				if (kind == "dy")
					for (int l = 0; l < ctx.n(); ++l)
						factor += Expr::var(v.shifted(l)) * Form::dx(l);
			}
			else
				throw ParseError("unknown form factor '" + kind + "'", fa.line, fa.column);
			acc = wedge(acc, factor);
		}
		r += acc;
	}
	return r;
}

Form parse_form(std::string const &text, JetContext const &ctx, int line, int column)
{
	return form_from_sexpr(parse_sexpr(text, line, column), ctx);
}

// ---- JSON ----------------------------------------------------------------------------

namespace {

json var_json(Var const &v, JetContext const &ctx)
{
	json j;
	switch (v.kind)
	{
	case VarKind::Base: j["sym"] = ctx.coords().at(v.index); break;
	case VarKind::Param: j["sym"] = ctx.params().at(v.index); break;
	case VarKind::Jet:
		j["sym"] = ctx.field(v.index).name;
		if (!v.mi.empty())
		{
			json d = json::array();
			for (int x : v.mi)
				d.push_back(x + 1);
			j["d"] = d;
		}
		break;
	}
	return j;
}

json power_json(json base, Rational const &q)
{
	if (q.is_one())
		return base;
	return json{{"op", "^"}, {"args", json::array({base})}, {"exp", q.str()}};
}

json term_json(Monomial const &m, Rational const &c, JetContext const &ctx)
{
	json f = json::array();
	for (auto const &[v, k] : m.even)
		f.push_back(power_json(var_json(v, ctx), Rational(k)));
	for (auto const &v : m.odd)
		f.push_back(var_json(v, ctx));
	for (auto const &[a, q] : m.atoms)
	{
		auto const &n = a.node();
		json base;
		if (n.kind == AtomKind::Opaque)
		{
			base["sym"] = n.name;
			if (!n.deriv.empty())
			{
				json d = json::array();
				for (int x : n.deriv)
					d.push_back(x + 1);
				base["d"] = d;
			}
		}
		else if (n.kind == AtomKind::Pow)
			base = to_json(n.arg, ctx);
		else
			base = json{{"op", fn_name(n.kind)}, {"args", json::array({to_json(n.arg, ctx)})}};
		f.push_back(power_json(base, q));
	}
	if (f.empty())
		return json{{"num", c.str()}};
	if (c.is_one() && f.size() == 1)
		return f[0];
	json args = json::array();
	if (!c.is_one())
		args.push_back(json{{"num", c.str()}});
	for (auto &x : f)
		args.push_back(x);
	return json{{"op", "*"}, {"args", args}};
}

std::string json_where(json const &j)
{
	std::string s = j.dump();
	if (s.size() > 40)
		s = s.substr(0, 40) + "...";
	return s;
}

} // namespace

json to_json(Expr const &e, JetContext const &ctx)
{
	if (e.empty())
		return json{{"num", "0"}};
	if (e.size() == 1)
	{
		auto const &[m, c] = *e.terms().begin();
		return term_json(m, c, ctx);
	}
	json args = json::array();
	for (auto const &[m, c] : e.terms())
		args.push_back(term_json(m, c, ctx));
	return json{{"op", "+"}, {"args", args}};
}

Expr expr_from_json(json const &j, JetContext const &ctx)
{
	if (!j.is_object())
		throw ParseError("expression node must be an object: " + json_where(j), 0, 0);
	if (j.contains("num"))
	{
		auto const &v = j["num"];
		std::string t = v.is_string() ? v.get<std::string>() : v.dump();
		if (!is_number(t))
			throw ParseError("bad number " + t, 0, 0);
		return Expr(number(t, 0, 0));
	}
	if (j.contains("sym"))
	{
		std::string tok = j["sym"].get<std::string>();
		if (j.contains("d"))
		{
			tok += "[";
			bool first = true;
			for (auto const &d : j["d"])
			{
				if (!first)
					tok += ",";
				tok += std::to_string(d.get<int>());
				first = false;
			}
			tok += "]";
		}
		return symbol(tok, ctx, 0, 0);
	}
	if (!j.contains("op") || !j.contains("args"))
		throw ParseError("expression node needs num, sym or op/args: " + json_where(j), 0, 0);
	std::string op = j["op"].get<std::string>();
	std::vector<Expr> a;
	for (auto const &x : j["args"])
		a.push_back(expr_from_json(x, ctx));
	if (op == "+")
	{
		Expr r;
		for (auto &x : a)
			r += x;
		return r;
	}
	if (op == "*")
	{
		Expr r(1);
		for (auto &x : a)
			r *= x;
		return r;
	}
	if (a.size() != 1)
		throw ParseError("operator " + op + " takes one argument", 0, 0);
	if (op == "^")
	{
		std::string q = j.at("exp").get<std::string>();
		return pow(a[0], number(q, 0, 0));
	}
	if (op == "sin")
		return sin(a[0]);
	if (op == "cos")
		return cos(a[0]);
	if (op == "exp")
		return exp(a[0]);
	if (op == "ln")
		return ln(a[0]);
	throw ParseError("unknown operator " + op, 0, 0);
}

json to_json(Form const &f, JetContext const &ctx, Basis basis)
{
	Form g = basis == Basis::Dy ? to_dy_basis(f, ctx) : f;
	json terms = json::array();
	for (auto const &[b, c] : g.terms())
	{
		json fac = json::array();
		for (auto [is_dx, i] : basis_factors(b))
		{
			if (is_dx)
				fac.push_back(json{{"d", ctx.coords().at(std::size_t(i))}});
			else
				fac.push_back(json{{basis == Basis::Dy ? "dy" : "th",
				                    var_json(b.theta[std::size_t(i)], ctx)}});
		}
		terms.push_back(json{{"coef", to_json(c, ctx)}, {"factors", fac}});
	}
	return json{{"form", terms}};
}

Form form_from_json(json const &j, JetContext const &ctx)
{
	if (!j.is_object() || !j.contains("form"))
		return Form(expr_from_json(j, ctx));
	Form r;
	for (auto const &t : j["form"])
	{
		Form acc(expr_from_json(t.at("coef"), ctx));
		for (auto const &fa : t.at("factors"))
		{
			Form factor;
			if (fa.contains("d"))
			{
				auto c = ctx.coord_index(fa["d"].get<std::string>());
				if (!c)
					throw ParseError("unknown coordinate in form factor", 0, 0);
				factor = Form::dx(*c);
			}
			else
			{
				bool dy = fa.contains("dy");
				Expr y = expr_from_json(dy ? fa["dy"] : fa.at("th"), ctx);
				if (y.size() != 1 || !y.has_jets())
					throw ParseError("contact factor needs a jet coordinate", 0, 0);
				auto const &m = y.terms().begin()->first;
				Var v = m.odd.empty() ? m.even[0].first : m.odd[0];
				factor = Form::theta(v);
				if (dy)
					for (int l = 0; l < ctx.n(); ++l)
						factor += Expr::var(v.shifted(l)) * Form::dx(l);
			}
			acc = wedge(acc, factor);
		}
		r += acc;
	}
	return r;
}

// ---- LaTeX ---------------------------------------------------------------------------

namespace {

std::string latex_name(std::string const &name)
{
	static std::regex const coord("([A-Za-z]+)([0-9]+)");
	std::smatch m;
	if (std::regex_match(name, m, coord))
		return m[1].str() + "^{" + m[2].str() + "}";
	std::string s;
	for (char c : name)
	{
		if (c == '_')
			s += "\\_";
		else
			s += c;
	}
	return s;
}

std::string latex_var(Var const &v, JetContext const &ctx)
{
	if (v.kind != VarKind::Jet)
		return latex_name(var_name(v, ctx));
	std::string base = ctx.field(v.index).name;
	std::string s;
	for (char c : base)
		s += (c == '_') ? std::string("\\_") : std::string(1, c);
	if (v.mi.empty())
		return s;
	s = "{" + s + "}_{";
	for (int d : v.mi)
		s += std::to_string(d + 1);
	return s + "}";
}

std::string latex_pow(std::string const &base, Rational const &q, bool wrap)
{
	if (q.is_one())
		return base;
	std::string b = wrap ? "\\left(" + base + "\\right)" : "{" + base + "}";
	if (q.is_integer())
		return b + "^{" + q.str() + "}";
	return b + "^{" + std::to_string(q.num()) + "/" + std::to_string(q.den()) + "}";
}

std::string latex_term(Monomial const &m, Rational c, JetContext const &ctx, bool first)
{
	std::string sign;
	if (c.sign() < 0)
	{
		sign = first ? "-" : " - ";
		c = -c;
	}
	else if (!first)
		sign = " + ";
	std::vector<std::string> f;
	for (auto const &[v, k] : m.even)
		f.push_back(latex_pow(latex_var(v, ctx), Rational(k), false));
	for (auto const &v : m.odd)
		f.push_back(latex_var(v, ctx));
	for (auto const &[a, q] : m.atoms)
	{
		auto const &n = a.node();
		if (n.kind == AtomKind::Opaque)
		{
			std::string s = n.name;
			if (!n.deriv.empty())
			{
				s = "\\partial_{";
				for (int d : n.deriv)
					s += std::to_string(d + 1);
				s += "}" + n.name;
			}
			f.push_back(latex_pow(s, q, !n.deriv.empty()));
		}
		else if (n.kind == AtomKind::Pow)
			f.push_back(latex_pow(to_latex(n.arg, ctx), q, true));
		else
		{
			std::string s = std::string("\\") + fn_name(n.kind) + "\\left(" +
			                to_latex(n.arg, ctx) + "\\right)";
			if (q.is_one())
				f.push_back(s);
			else
				f.push_back(latex_pow(s, q, true));
		}
	}
	std::string coef;
	if (!c.is_one() || f.empty())
	{
		if (c.is_integer())
			coef = c.str();
		else
			coef = "\\frac{" + std::to_string(c.num()) + "}{" + std::to_string(c.den()) + "}";
	}
	std::string body = coef;
	for (auto const &x : f)
		body += (body.empty() ? "" : " ") + x;
	return sign + body;
}

} // namespace

std::string to_latex(Expr const &e, JetContext const &ctx)
{
	if (e.empty())
		return "0";
	std::string s;
	bool first = true;
	for (auto const &[m, c] : e.terms())
	{
		s += latex_term(m, c, ctx, first);
		first = false;
	}
	return s;
}

std::string to_latex(Form const &f, JetContext const &ctx, Basis basis)
{
	Form g = basis == Basis::Dy ? to_dy_basis(f, ctx) : f;
	if (g.empty())
		return "0";
	std::string s;
	bool first = true;
	for (auto const &[b, c] : g.terms())
	{
		if (!first)
			s += " + ";
		first = false;
		std::string coef = to_latex(c, ctx);
		if (c.size() > 1)
			coef = "\\left(" + coef + "\\right)";
		s += coef;
		for (auto [is_dx, i] : basis_factors(b))
		{
			s += " \\wedge ";
			if (is_dx)
				s += "d" + latex_name(ctx.coords().at(std::size_t(i)));
			else
				s += std::string(basis == Basis::Dy ? "d" : "\\theta_{") +
				     (basis == Basis::Dy ? latex_var(b.theta[std::size_t(i)], ctx)
				                         : latex_var(b.theta[std::size_t(i)], ctx) + "}");
		}
	}
	return s;
}

} // namespace jetvar
