#include "jetvar/driver.hpp"

#include <sstream>

#include "jetvar/errors.hpp"
#include "jetvar/graded_brst.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

namespace {

std::size_t z(int i) { return static_cast<std::size_t>(i); }

Result value(std::string name, Expr e) { return {std::move(name), Result::Kind::Value, std::move(e)}; }
Result value(std::string name, Form f) { return {std::move(name), Result::Kind::Value, std::move(f)}; }
Result equation(std::string name, Expr e)
{
	return {std::move(name), Result::Kind::Equation, std::move(e)};
}
Result check(std::string name, bool ok, bool identity)
{
	return {std::move(name), Result::Kind::Check, ok, identity};
}

std::string bracket(std::string stem, std::vector<std::string> const &idx)
{
	stem += "[";
	for (std::size_t i = 0; i < idx.size(); ++i)
		stem += (i ? "," : "") + idx[i];
	return stem + "]";
}

std::string z_name(ZChart const &zc, int k, JetContext const &ctx)
{
	if (k < zc.n)
		return ctx.coords().at(z(k));
	return ctx.field(zc.fields.at(z(k - zc.n))).name;
}

void need_args(Command const &cmd, std::size_t lo, std::size_t hi)
{
	if (cmd.args.size() < lo || cmd.args.size() > hi)
		throw KindError("'" + cmd.name + "' takes " + std::to_string(lo) +
		                (hi > lo ? " to " + std::to_string(hi) : std::string()) + " argument(s)");
}

template <class Map> auto const &lookup(Map const &m, std::string const &name, char const *what)
{
	auto it = m.find(name);
	if (it == m.end())
		throw KindError(std::string("unknown ") + what + " '" + name + "'");
	return it->second;
}

// the named object, or the only one of its kind when no name is given
template <class Map>
auto const &pick(Map const &m, Command const &cmd, std::size_t i, char const *what)
{
	if (i < cmd.args.size())
		return lookup(m, cmd.args[i], what);
	if (m.size() != 1)
		throw KindError(std::string("'") + cmd.name + "' needs a " + what + " name");
	return m.begin()->second;
}

void tangent_results(Report &rep, std::string const &stem, TangentValuedForm const &t,
                     JetContext const &ctx)
{
	ZChart zc(ctx);
	for (auto const &[key, e] : t.components())
	{
		if (e.empty())
			continue;
		std::vector<std::string> idx{z_name(zc, key.second, ctx)};
		for (int l : key.first)
			idx.push_back(z_name(zc, l, ctx));
		rep.results.push_back(value(bracket(stem, idx), e));
	}
}

// ---- shared pieces -----------------------------------------------------------------

void el_results(Report &rep, Expr const &L, JetContext const &ctx)
{
	auto dl = variational_derivatives(L, ctx);
	for (int i = 0; i < ctx.field_count(); ++i)
		rep.results.push_back(equation("E[" + ctx.field(i).name + "]", dl[z(i)]));
}

void ym_results(Report &rep, GaugeContext gc, Expr const &L, std::string const &what)
{
	bool all = what == "all";
	if (!all && what != "lagrangian" && what != "el" && what != "noether")
		throw KindError("ym output must be all, lagrangian, el or noether");
	if (all || what == "lagrangian")
		rep.results.push_back(value("L", L));
	if (all || what == "el")
		el_results(rep, L, gc.ctx);
	if (all || what == "noether")
	{
		rep.results.push_back(check("invariant", strong_equalities(gc, L).invariant(), true));
		std::vector<Expr> xi;
		for (int p = 0; p < gc.algebra.dim; ++p)
		{
			std::string name = "xi" + std::to_string(p + 1);
			gc.ctx.add_function(name);
			xi.push_back(gc.ctx.fn(name));
		}
		auto ni = noether_identities(gc, L, xi);
		auto const &co = gc.ctx.coords();
		for (int m = 0; m < gc.n(); ++m)
			for (int l = m + 1; l < gc.n(); ++l)
				rep.results.push_back(
				    value(bracket("U", {co[z(m)], co[z(l)]}), ni.superpotential[z(m)][z(l)]));
		bool anti = true;
		for (int m = 0; m < gc.n(); ++m)
			for (int l = 0; l < gc.n(); ++l)
				anti = anti && (ni.superpotential[z(m)][z(l)] + ni.superpotential[z(l)][z(m)]).empty();
		rep.results.push_back(check("superpotential-antisymmetric", anti, true));
		rep.results.push_back(check("noether-identities", ni.ok, true));
	}
	rep.ctx = gc.ctx;
}

BrstContext brst_from(GaugeContext gc)
{
	BrstContext b{std::move(gc), {}};
	for (int r = 0; r < b.gauge.algebra.dim; ++r)
	{
		std::string name = "C" + std::to_string(r + 1);
		if (b.gauge.ctx.field_index(name))
			throw KindError("ghost name '" + name + "' is already declared");
		b.ghosts.push_back(b.gauge.ctx.add_field(name, Parity::Odd, 1));
	}
	return b;
}

void brst_results(Report &rep, BrstContext const &b, std::string const &chk)
{
	if (!chk.empty() && chk != "nilpotency")
		throw KindError("brst --check accepts only nilpotency");
	auto s = brst_yang_mills(b);
	auto nil = brst_nilpotency(s, 0);
	for (auto const &line : nil.lines)
		rep.results.push_back(value("s(" + line.name + ")", line.s));
	if (!chk.empty())
	{
		for (auto const &line : nil.lines)
			rep.results.push_back(value("s2(" + line.name + ")", line.s2));
		for (auto const &line : nil.lines)
			rep.results.push_back(value("sdH(" + line.name + ")", line.anticommutator));
		auto sol = solve_ghost_coefficient(b.gauge.algebra, b.gauge.n());
		if (sol.k)
			rep.results.push_back(value("k", Expr(*sol.k)));
		rep.results.push_back(check("nilpotent", nil.ok, true));
	}
	rep.ctx = b.ctx();
}

// ---- deterministic corpus for `check nilpotency` ----------------------------------

class Lcg
{
	std::uint64_t s_;

  public:
	explicit Lcg(std::uint64_t seed) : s_(seed) {}
	int next(int bound)
	{
		s_ = s_ * 6364136223846793005ull + 1442695040888963407ull;
		return int((s_ >> 33) % std::uint64_t(bound));
	}
};

Expr corpus_scalar(Lcg &g, JetContext const &ctx)
{
	Expr r;
	for (int t = 0; t < 2; ++t)
	{
		int a = g.next(7) - 3;
		Expr m(Rational(a == 0 ? 1 : a, 1 + g.next(2)));
		for (int k = g.next(3); k > 0; --k)
		{
			if (ctx.field_count() == 0 || g.next(4) == 0)
				m *= ctx.x(g.next(ctx.n()));
			else
			{
				MultiIndex mi;
				for (int o = g.next(2); o > 0; --o)
					mi = mi.plus(g.next(ctx.n()));
				m *= ctx.y(g.next(ctx.field_count()), mi);
			}
		}
		r += m;
	}
	return r;
}

Form corpus_form(Lcg &g, JetContext const &ctx, int k, int s)
{
	Form f(corpus_scalar(g, ctx));
	std::vector<int> dirs;
	for (int l = 0; l < ctx.n(); ++l)
		dirs.push_back(l);
	for (int j = 0; j < s && j < ctx.n(); ++j)
	{
		int pick = j + g.next(ctx.n() - j);
		std::swap(dirs[z(j)], dirs[z(pick)]);
		f = wedge(f, Form::dx(dirs[z(j)]));
	}
	for (int j = 0; j < k && ctx.field_count() > 0; ++j)
	{
		MultiIndex mi;
		for (int o = g.next(2); o > 0; --o)
			mi = mi.plus(g.next(ctx.n()));
		f = wedge(f, Form::theta(ctx.jet_var(g.next(ctx.field_count()), mi)));
	}
	return f;
}

void forms_checks(Report &rep, JetContext const &ctx)
{
	Lcg g(0x6a657476ull);
	bool dh2 = true, dv2 = true, anti = true, d2 = true, h0d = true;
	for (int rep_i = 0; rep_i < 40; ++rep_i)
	{
		Form phi = corpus_form(g, ctx, g.next(2), g.next(ctx.n() + 1));
		dh2 = dh2 && d_H(d_H(phi, ctx), ctx).empty();
		dv2 = dv2 && d_V(d_V(phi)).empty();
		anti = anti && (d_H(d_V(phi), ctx) + d_V(d_H(phi, ctx))).empty();
		d2 = d2 && exterior_d(exterior_d(phi, ctx), ctx).empty();
		h0d = h0d && h0(exterior_d(phi, ctx)) == d_H(h0(phi), ctx);
	}
	rep.results.push_back(check("d_H^2 = 0", dh2, true));
	rep.results.push_back(check("d_V^2 = 0", dv2, true));
	rep.results.push_back(check("d_H d_V + d_V d_H = 0", anti, true));
	rep.results.push_back(check("d^2 = 0", d2, true));
	rep.results.push_back(check("h0 d = d_H h0", h0d, true));
}

void variational_checks(Report &rep, JetContext const &ctx)
{
	Lcg g(0x76617269ull);
	int n = ctx.n();
	bool tt = true, tdh = true, dd = true, ddh = true;
	for (int rep_i = 0; rep_i < 40; ++rep_i)
	{
		if (ctx.field_count() > 0)
		{
			Form phi = corpus_form(g, ctx, 1 + g.next(2), n);
			Form t = tau(phi, ctx);
			tt = tt && is_zero(tau(t, ctx) - t);
			Form xi = corpus_form(g, ctx, 1, n - 1);
			tdh = tdh && tau(d_H(xi, ctx), ctx).empty();
		}
		Form L = corpus_form(g, ctx, 0, n);
		dd = dd && variational_delta(variational_delta(L, ctx), ctx).empty();
		Form eta = corpus_form(g, ctx, 0, n - 1);
		ddh = ddh && variational_delta(d_H(eta, ctx), ctx).empty();
	}
	rep.results.push_back(check("tau^2 = tau", tt, true));
	rep.results.push_back(check("tau d_H = 0", tdh, true));
	rep.results.push_back(check("delta^2 = 0", dd, true));
	rep.results.push_back(check("delta d_H = 0", ddh, true));
}

JetContext default_corpus_context()
{
	JetContext ctx(2);
	ctx.add_field("y");
	ctx.add_field("c", Parity::Odd, 1);
	return ctx;
}

} // namespace

// ---- results ------------------------------------------------------------------------

bool Result::is_zero() const
{
	if (auto const *e = std::get_if<Expr>(&value))
		return jetvar::is_zero(*e);
	if (auto const *f = std::get_if<Form>(&value))
		return jetvar::is_zero(*f);
	return std::get<bool>(value);
}

int Result::jet_order() const
{
	if (auto const *e = std::get_if<Expr>(&value))
		return jetvar::jet_order(*e);
	if (auto const *f = std::get_if<Form>(&value))
		return f->jet_order();
	return -1;
}

bool Report::failed() const
{
	for (auto const &r : results)
		if (r.identity && r.kind == Result::Kind::Check && !std::get<bool>(r.value))
			return true;
	return false;
}

// ---- commands -----------------------------------------------------------------------

Report run_command(Declaration &decl, Command const &cmd, Options const &opt)
{
	Report rep;
	rep.command = cmd.name;
	rep.args = cmd.args;
	rep.ctx = decl.ctx;
	auto const &ctx = decl.ctx;
	auto const &co = ctx.coords();
	std::string const &c = cmd.name;

	if (c == "el")
	{
		need_args(cmd, 0, 1);
		el_results(rep, pick(decl.lagrangians, cmd, 0, "lagrangian"), ctx);
	}
	else if (c == "noether" || c == "first-variation")
	{
		need_args(cmd, 0, 2);
		Expr const &L = pick(decl.lagrangians, cmd, 0, "lagrangian");
		VectorField const &u = pick(decl.vector_fields, cmd, 1, "vector field");
		if (c == "noether")
		{
			auto nc = noether_current(L, u, ctx);
			for (int l = 0; l < ctx.n(); ++l)
				rep.results.push_back(value("T[" + co[z(l)] + "]", nc.current[z(l)]));
			rep.results.push_back(value("divergence", nc.divergence));
			rep.results.push_back(value("lie", nc.lie));
			for (int i = 0; i < ctx.field_count(); ++i)
				if (!nc.coefficients[z(i)].empty())
					rep.results.push_back(value("c[" + ctx.field(i).name + "]", nc.coefficients[z(i)]));
			rep.results.push_back(check("identity", nc.identity, true));
		}
		else
		{
			auto fv = first_variational_formula(L, u, ctx);
			rep.results.push_back(value("lie", fv.lie));
			rep.results.push_back(value("el", fv.el));
			rep.results.push_back(value("boundary", fv.boundary));
			rep.results.push_back(check("identity", fv.identity, true));
		}
	}
	else if (c == "poincare-cartan")
	{
		need_args(cmd, 0, 1);
		rep.results.push_back(value("H", poincare_cartan(pick(decl.lagrangians, cmd, 0, "lagrangian"), ctx)));
	}
	else if (c == "legendre")
	{
		need_args(cmd, 0, 1);
		auto ld = legendre_map(pick(decl.lagrangians, cmd, 0, "lagrangian"), ctx);
		for (int l = 0; l < ctx.n(); ++l)
			for (int i = 0; i < ctx.field_count(); ++i)
				if (!ld.p[z(l)][z(i)].empty())
					rep.results.push_back(value(bracket("p", {co[z(l)], ctx.field(i).name}), ld.p[z(l)][z(i)]));
		rep.results.push_back(value("frame", ld.frame));
	}
	else if (c == "helmholtz")
	{
		need_args(cmd, 0, 1);
		Form source;
		if (cmd.args.empty() || decl.lagrangians.count(cmd.args[0]))
			source = euler_lagrange(pick(decl.lagrangians, cmd, 0, "lagrangian"), ctx);
		else
			source = lookup(decl.forms, cmd.args[0], "lagrangian or form");
		rep.results.push_back(check("helmholtz", helmholtz_check(source, ctx), false));
	}
	else if (c == "trivial?")
	{
		need_args(cmd, 0, 1);
		rep.results.push_back(check("trivial", is_variationally_trivial(pick(decl.lagrangians, cmd, 0, "lagrangian"), ctx), false));
	}
	else if (c == "antiderivative")
	{
		need_args(cmd, 0, 1);
		auto a = horizontal_antiderivative(pick(decl.forms, cmd, 0, "form"), ctx);
		rep.results.push_back(value("xi", a.xi));
		rep.results.push_back(value("obstruction", a.obstruction));
	}
	else if (c == "curvature")
	{
		need_args(cmd, 0, 1);
		tangent_results(rep, "R", curvature(pick(decl.connections, cmd, 0, "connection"), ctx), ctx);
	}
	else if (c == "torsion")
	{
		need_args(cmd, 0, 2);
		auto const &G = pick(decl.connections, cmd, 0, "connection");
		auto const &S = pick(decl.solderings, cmd, 1, "soldering form");
		tangent_results(rep, "T", torsion(G, S, ctx), ctx);
	}
	else if (c == "levi-civita" || c == "ricci")
	{
		need_args(cmd, 0, 1);
		Metric const &g = pick(decl.metrics, cmd, 0, "metric");
		if (g.n != ctx.n())
			throw KindError("metric dimension does not match the base");
		WorldConnection K0 = levi_civita(g);
		WorldConnection K = opt.physics_sign ? physics_sign(K0) : K0;
		int n = g.n;
		if (c == "levi-civita")
		{
			for (int l = 0; l < n; ++l)
				for (int m = 0; m < n; ++m)
					for (int v = 0; v < n; ++v)
						if (!K(l, m, v).empty())
							rep.results.push_back(value(bracket("K", {co[z(l)], co[z(m)], co[z(v)]}), K(l, m, v)));
			bool metric_ok = true;
			for (auto const &a : metric_covariant_derivative(g, K0))
				for (auto const &b : a)
					for (auto const &e : b)
						metric_ok = metric_ok && is_zero(e);
			rep.results.push_back(check("metric-compatible", metric_ok, true));
		}
		else
		{
			auto W = world_curvature(K);
			auto gi = g.inverse.empty() ? inverse_metric(g) : g.inverse;
			Expr scalar;
			for (int l = 0; l < n; ++l)
				for (int b = 0; b < n; ++b)
				{
					Expr const &r = W.Ric(l, b);
					if (!r.empty())
					{
						rep.results.push_back(value(bracket("Ric", {co[z(l)], co[z(b)]}), r));
						scalar += gi[z(l)][z(b)] * r;
					}
				}
			rep.results.push_back(value("scalar", scalar));
		}
	}
	else if (c == "ym")
	{
		need_args(cmd, 0, 3);
		GaugeContext gc = decl.gauge_context();
		Metric const &g = pick(decl.metrics, cmd, 0, "metric");
		Rational coupling(1);
		if (cmd.args.size() >= 2)
		{
			auto v = parse_expr(cmd.args[1], ctx).constant_value();
			if (!v)
				throw KindError("coupling must be a rational number");
			coupling = *v;
		}
		std::string what = cmd.args.size() == 3 ? cmd.args[2] : "all";
		ym_results(rep, gc, yang_mills_lagrangian(gc, g, coupling), what);
	}
	else if (c == "brst")
	{
		need_args(cmd, 0, 1);
		brst_results(rep, brst_from(decl.gauge_context()), cmd.args.empty() ? "" : cmd.args[0]);
	}
	else if (c == "check")
	{
		need_args(cmd, 1, 2);
		if (cmd.args[0] != "nilpotency")
			throw KindError("only 'check nilpotency' is available");
		return nilpotency_report(&decl, cmd.args.size() == 2 ? cmd.args[1] : opt.module);
	}
	else
		throw KindError("unknown command '" + c + "'");

	if (opt.max_order)
		for (auto const &r : rep.results)
			if (int k = r.jet_order(); k > *opt.max_order)
				rep.warnings.push_back(r.name + ": jet order " + std::to_string(k) +
				                       " exceeds --max-order " + std::to_string(*opt.max_order));
	return rep;
}

Report yang_mills_report(LieAlgebraData const &alg, std::string const &metric, int n,
                         Rational coupling, std::string const &what)
{
	Report rep;
	rep.command = "ym";
	GaugeContext gc = make_gauge_context(alg, n);
	Expr L = yang_mills_lagrangian(gc, standard_metric(metric, n), coupling);
	ym_results(rep, gc, L, what);
	return rep;
}

Report brst_report(LieAlgebraData const &alg, int n, std::string const &chk)
{
	Report rep;
	rep.command = "brst";
	brst_results(rep, brst_from(make_gauge_context(alg, n)), chk);
	return rep;
}

Report nilpotency_report(Declaration const *decl, std::string const &module)
{
	if (module != "all" && module != "forms" && module != "variational" && module != "brst")
		throw KindError("--module must be all, forms, variational or brst");
	Report rep;
	rep.command = "check";
	rep.args = {"nilpotency", module};
	rep.ctx = decl ? decl->ctx : default_corpus_context();
	if (module == "all" || module == "forms")
		forms_checks(rep, rep.ctx);
	if (module == "all" || module == "variational")
		variational_checks(rep, rep.ctx);
	if (module == "all" || module == "brst")
	{
		std::vector<std::pair<std::string, GaugeContext>> theories;
		if (decl && decl->gauge)
			theories.emplace_back("declared", *decl->gauge);
		else
		{
			theories.emplace_back("u1", make_gauge_context(u1(), 2));
			theories.emplace_back("su2", make_gauge_context(su2(), 2));
		}
		for (auto const &[name, gc] : theories)
		{
			auto b = brst_from(gc);
			auto nil = brst_nilpotency(brst_yang_mills(b), 1);
			bool s2 = true, anti = true, gh = true;
			for (auto const &line : nil.lines)
			{
				s2 = s2 && line.s2.empty();
				anti = anti && line.anticommutator.empty();
				gh = gh && line.ghost_ok;
			}
			rep.results.push_back(check("s^2 = 0 (" + name + ")", s2, true));
			rep.results.push_back(check("s d_H + d_H s = 0 (" + name + ")", anti, true));
			rep.results.push_back(check("ghost number (" + name + ")", gh, true));
		}
	}
	return rep;
}

// ---- rendering ----------------------------------------------------------------------

namespace {

std::string header(Report const &r)
{
	std::string s = "# " + r.command;
	for (auto const &a : r.args)
		s += " " + a;
	return s;
}

std::string body_text(Result const &r, Report const &rep, Options const &opt)
{
	if (auto const *b = std::get_if<bool>(&r.value))
		return *b ? "true" : "false";
	bool latex = opt.format == Format::Latex;
	if (auto const *e = std::get_if<Expr>(&r.value))
		return latex ? to_latex(*e, rep.ctx) : to_text(*e, rep.ctx);
	auto const &f = std::get<Form>(r.value);
	return latex ? to_latex(f, rep.ctx, opt.basis) : to_text(f, rep.ctx, opt.basis);
}

} // namespace

std::string render(std::vector<Report> const &reports, Options const &opt)
{
	if (opt.format == Format::Json)
	{
		nlohmann::json out = nlohmann::json::array();
		for (auto const &rep : reports)
		{
			nlohmann::json jr;
			jr["command"] = rep.command;
			jr["args"] = rep.args;
			nlohmann::json res = nlohmann::json::array();
			for (auto const &r : rep.results)
			{
				nlohmann::json o;
				o["name"] = r.name;
				o["kind"] = r.kind == Result::Kind::Value      ? "value"
				            : r.kind == Result::Kind::Equation ? "equation"
				                                               : "check";
				if (auto const *b = std::get_if<bool>(&r.value))
					o["value"] = *b;
				else if (auto const *e = std::get_if<Expr>(&r.value))
				{
					o["value"] = to_json(*e, rep.ctx);
					o["text"] = to_text(*e, rep.ctx);
				}
				else
				{
					auto const &f = std::get<Form>(r.value);
					o["value"] = to_json(f, rep.ctx, opt.basis);
					o["text"] = to_text(f, rep.ctx, opt.basis);
				}
				res.push_back(std::move(o));
			}
			jr["results"] = std::move(res);
			out.push_back(std::move(jr));
		}
		return out.dump(2) + "\n";
	}
	std::ostringstream os;
	for (auto const &rep : reports)
	{
		os << header(rep) << "\n";
		for (auto const &r : rep.results)
		{
			std::string b = body_text(r, rep, opt);
			switch (r.kind)
			{
			case Result::Kind::Equation: os << r.name << ": " << b << " = 0\n"; break;
			case Result::Kind::Check: os << r.name << ": " << b << "\n"; break;
			case Result::Kind::Value: os << r.name << " = " << b << "\n"; break;
			}
		}
	}
	return os.str();
}

int exit_status(std::vector<Report> const &reports, Options const &opt)
{
	int status = 0;
	for (auto const &rep : reports)
		if (rep.failed())
			status = 2;
	for (auto const &name : opt.assert_zero)
	{
		bool found = false;
		for (auto const &rep : reports)
			for (auto const &r : rep.results)
				if (r.name == name)
				{
					found = true;
					if (!r.is_zero())
						status = 2;
				}
		if (!found)
			throw KindError("--assert-zero: no result named '" + name + "'");
	}
	return status;
}

} // namespace jetvar
