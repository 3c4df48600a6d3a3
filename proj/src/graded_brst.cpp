#include "jetvar/graded_brst.hpp"

#include "jetvar/errors.hpp"
#include "jetvar/io.hpp"
#include "jetvar/tangent_valued.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

namespace {

std::size_t z(int i) { return static_cast<std::size_t>(i); }

} // namespace

Expr graded_total_derivative(Expr const &e, int lambda) { return total_derivative(e, lambda); }

Form graded_d_H(Form const &phi, JetContext const &ctx) { return d_H(phi, ctx); }

Form graded_delta(Form const &phi, JetContext const &ctx)
{
	for (auto const &[k, s] : phi.bidegrees())
		if (k != 0 || s != ctx.n())
			throw DegreeError("graded variational operator needs a (0, n)-form");
	return variational_delta(phi, ctx);
}

Form graded_interior(VectorField const &u, Form const &phi) { return interior_product(u, phi); }

Form graded_lie(VectorField const &u, Form const &phi, JetContext const &ctx)
{
	return lie_derivative(u, phi, ctx);
}

Form graded_differential(Var const &v, JetContext const &ctx)
{
	if (!v.is_jet())
	{
		if (v.kind == VarKind::Base)
			return Form::dx(v.index);
		return {};
	}
	Form r = Form::theta(v);
	for (int l = 0; l < ctx.n(); ++l)
		r += Expr::var(v.shifted(l)) * Form::dx(l);
	return r;
}

std::optional<int> ghost_number(Form const &phi, JetContext const &ctx)
{
	std::optional<int> g;
	for (auto const &[b, c] : phi.terms())
	{
		auto gc = ctx.ghost_number(c);
		if (!gc)
			return std::nullopt;
		int s = *gc;
		for (auto const &v : b.theta)
			s += ctx.ghost_number(v);
		if (g && *g != s)
			return std::nullopt;
		g = s;
	}
	return g ? g : std::optional<int>(0);
}

// ---- graded connections ----------------------------------------------------------

Expr GradedConnectionData::component(int a, int A) const
{
	if (a < 0 || z(a) >= comps.size() || A < 0 || z(A) >= comps[z(a)].size())
		return {};
	return comps[z(a)][z(A)];
}

GradedConnectionData linear_graded_connection(std::vector<int> ghosts,
                                              LinearCoefficients const &coeff)
{
	GradedConnectionData g;
	std::size_t m = ghosts.size();
	g.comps.assign(m, std::vector<Expr>(coeff.size()));
	for (std::size_t l = 0; l < coeff.size(); ++l)
		for (std::size_t a = 0; a < m; ++a)
			for (std::size_t b = 0; b < m; ++b)
			{
				Expr const &c = coeff[l][a][b];
				if (!c.empty())
					g.comps[a][l] += c * Expr::var(Var::jet(ghosts[b], {}, true));
			}
	g.ghosts = std::move(ghosts);
	return g;
}

std::vector<std::vector<std::vector<Expr>>> graded_connection_curvature(
    GradedConnectionData const &gamma, JetContext const &ctx)
{
	ZChart zc(ctx);
	int dim = zc.dim();
	std::size_t m = gamma.ghosts.size();
	for (int a : gamma.ghosts)
		if (!ctx.field(a).odd())
			throw KindError("graded connection components must sit over odd fields");
	std::vector<std::vector<std::vector<Expr>>> R(
	    m, std::vector<std::vector<Expr>>(z(dim), std::vector<Expr>(z(dim))));
	for (std::size_t a = 0; a < m; ++a)
		for (int A = 0; A < dim; ++A)
			for (int B = A + 1; B < dim; ++B)
			{
				int ai = int(a);
				Expr r = zc.partial(gamma.component(ai, B), A, ctx) -
				         zc.partial(gamma.component(ai, A), B, ctx);
				for (std::size_t k = 0; k < m; ++k)
				{
					Var ck = ctx.jet_var(gamma.ghosts[k]);
					int ki = int(k);
					r += gamma.component(ki, A) * partial(gamma.component(ai, B), ck);
					r -= gamma.component(ki, B) * partial(gamma.component(ai, A), ck);
				}
				R[a][z(A)][z(B)] = r;
				R[a][z(B)][z(A)] = -r;
			}
	return R;
}

std::vector<std::vector<Expr>> graded_covariant_differential(GradedConnectionData const &gamma,
                                                             JetContext const &ctx)
{
	std::vector<std::vector<Expr>> D(gamma.ghosts.size(), std::vector<Expr>(z(ctx.n())));
	for (std::size_t a = 0; a < gamma.ghosts.size(); ++a)
		for (int l = 0; l < ctx.n(); ++l)
			D[a][z(l)] = ctx.y(gamma.ghosts[a], MultiIndex().plus(l)) - gamma.component(int(a), l);
	return D;
}

// ---- BRST ------------------------------------------------------------------------

Expr BrstContext::C(int r, MultiIndex mi) const { return gauge.ctx.y(ghosts.at(z(r)), mi); }

BrstContext make_brst_context(LieAlgebraData algebra, int n, std::vector<std::string> coords)
{
	BrstContext b{make_gauge_context(std::move(algebra), n, std::move(coords)), {}};
	for (int r = 0; r < b.gauge.algebra.dim; ++r)
		b.ghosts.push_back(b.gauge.ctx.add_field("C" + std::to_string(r + 1), Parity::Odd, 1));
	return b;
}

BrstContext with_symbolic_coefficient(BrstContext b, std::string const &name)
{
	b.gauge.ctx.add_param(name);
	b.k = b.gauge.ctx.param(name);
	return b;
}

Expr BrstOperator::on_variable(Var const &v) const
{
	if (!v.is_jet())
		return {};
	auto const &gc = b_.gauge;
	auto const &c = gc.algebra;
	int d = c.dim;
	Expr base;
	for (int r = 0; r < d && base.empty(); ++r)
	{
		if (v.index == b_.ghosts[z(r)])
		{
			for (int p = 0; p < d; ++p)
				for (int q = 0; q < d; ++q)
					if (!c(r, p, q).is_zero())
						base += Expr(c(r, p, q)) * b_.C(p) * b_.C(q);
			base = b_.k * base;
			if (base.empty())
				return {};
			break;
		}
		for (int l = 0; l < gc.n(); ++l)
			if (v.index == gc.potential[z(r)][z(l)])
			{
				base = b_.C(r, MultiIndex().plus(l));
				for (int p = 0; p < d; ++p)
					for (int q = 0; q < d; ++q)
						if (!c(r, p, q).is_zero())
							base += Expr(c(r, p, q)) * gc.a(p, l) * b_.C(q);
				break;
			}
	}
	return v.mi.order() ? total_derivative(base, v.mi) : base;
}

Expr BrstOperator::operator()(Expr const &e) const
{
	Expr r;
	for (auto const &v : jet_variables(e))
	{
		Expr sv = on_variable(v);
		if (!sv.empty())
			r += sv * partial(e, v);
	}
	return r;
}

Form BrstOperator::operator()(Form const &phi) const
{
	Form r;
	for (auto const &[b, c] : phi.terms())
	{
		if (b.contact_degree() > 0)
			throw DegreeError("BRST operator is defined on horizontal forms");
		Expr sc = (*this)(c);
		if (sc.empty())
			continue;
		r += Form::term(b.horizontal_degree() % 2 ? -sc : sc, b);
	}
	return r;
}

VectorField BrstOperator::as_vector_field(int order) const
{
	auto const &ctx = b_.ctx();
	std::map<Var, Expr> comps;
	for (int f = 0; f < ctx.field_count(); ++f)
		for (int o = 0; o <= order; ++o)
			for (auto const &mi : multi_indices(ctx.n(), o))
			{
				Var v = ctx.jet_var(f, mi);
				Expr s = on_variable(v);
				if (!s.empty())
					comps.emplace(v, std::move(s));
			}
	return make_vector_field({}, std::move(comps), order);
}

BrstOperator brst_yang_mills(BrstContext const &b)
{
	for (int g : b.ghosts)
	{
		auto const &f = b.ctx().field(g);
		if (!f.odd() || f.ghost != 1)
			throw KindError("ghosts must be odd with ghost number 1");
	}
	if (int(b.ghosts.size()) != b.gauge.algebra.dim)
		throw KindError("one ghost per algebra generator is required");
	return BrstOperator(b);
}

NilpotencyReport brst_nilpotency(BrstOperator const &s, int order)
{
	auto const &b = s.context();
	auto const &ctx = b.ctx();
	NilpotencyReport rep;
	rep.ok = true;
	std::vector<int> gens;
	for (auto const &row : b.gauge.potential)
		gens.insert(gens.end(), row.begin(), row.end());
	gens.insert(gens.end(), b.ghosts.begin(), b.ghosts.end());
	for (int f : gens)
		for (int o = 0; o <= order; ++o)
			for (auto const &mi : multi_indices(ctx.n(), o))
			{
				Var v = ctx.jet_var(f, mi);
				NilpotencyReport::Line line;
				line.name = var_name(v, ctx);
				line.s = s.on_variable(v);
				line.s2 = s(line.s);
				Form fv(Expr::var(v));
				line.anticommutator = s(d_H(fv, ctx)) + d_H(s(fv), ctx);
				auto g = ctx.ghost_number(line.s);
				line.ghost_ok = line.s.empty() || (g && *g == ctx.ghost_number(v) + 1);
				rep.ok = rep.ok && line.s2.empty() && line.anticommutator.empty() && line.ghost_ok;
				rep.lines.push_back(std::move(line));
			}
	return rep;
}

GhostLawSolution solve_ghost_coefficient(LieAlgebraData const &algebra, int n)
{
	auto b = with_symbolic_coefficient(make_brst_context(algebra, n), "k");
	BrstOperator s(b);
	Var k = Var::param(*b.ctx().param_index("k"));
	GhostLawSolution out;
	bool consistent = true;
	std::optional<Rational> sol;
	for (int r = 0; r < algebra.dim; ++r)
		for (int l = 0; l < n; ++l)
		{
			Expr e = s(s.on_variable(b.gauge.a_var(r, l)));
			out.residuals.push_back(e);
			auto co = coefficients_in(e, k);
			for (auto const &[deg, c] : co)
				if (deg > 1)
					consistent = false;
			Expr lin = co.count(1) ? co.at(1) : Expr();
			Expr cst = co.count(0) ? co.at(0) : Expr();
			// α_m k + β_m = 0 for every monomial m
			std::map<Monomial, std::pair<Rational, Rational>> eqs;
			for (auto const &[m, a] : lin.terms())
				eqs[m].first = a;
			for (auto const &[m, c] : cst.terms())
				eqs[m].second = c;
			for (auto const &[m, ab] : eqs)
			{
				if (ab.first.is_zero())
				{
					consistent = consistent && ab.second.is_zero();
					continue;
				}
				Rational v = -ab.second / ab.first;
				if (sol && *sol != v)
					consistent = false;
				sol = v;
			}
		}
	// an unconstrained k (abelian case) is reported as no unique solution
	if (consistent && sol)
		out.k = sol;
	return out;
}

} // namespace jetvar
