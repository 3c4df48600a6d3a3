#include "doctest.h"

#include <algorithm>

#include "gen.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/tangent_valued.hpp"

using namespace jetvar;
using jetvar::testing::Gen;

namespace {

// random r-form over Z with polynomial components in (x, y)
TangentValuedForm random_tvf(Gen &g, JetContext const &ctx, int r, bool horizontal = false)
{
	ZChart z(ctx);
	int range = horizontal ? ctx.n() : z.dim();
	TangentValuedForm t(r);
	for (int k = 0; k < 3; ++k)
	{
		std::vector<int> l;
		for (int j = 0; j < r; ++j)
			l.push_back(g.uniform(0, range - 1));
		auto sorted = l;
		std::sort(sorted.begin(), sorted.end());
		if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
			continue;
		t.add(l, g.uniform(0, z.dim() - 1), g.even_expr(ctx, 0, 2, 2));
	}
	return t;
}

// curvature by the coordinate formula, as an independent oracle
Expr curvature_160(std::vector<std::vector<Expr>> const &G, JetContext const &ctx, int i,
                   int l, int m)
{
	auto fields = ctx.even_fields();
	Expr r = partial_base(G[std::size_t(i)][std::size_t(m)], l) -
	         partial_base(G[std::size_t(i)][std::size_t(l)], m);
	for (std::size_t j = 0; j < fields.size(); ++j)
	{
		Var yj = ctx.jet_var(fields[j]);
		r += G[j][std::size_t(l)] * partial(G[std::size_t(i)][std::size_t(m)], yj);
		r -= G[j][std::size_t(m)] * partial(G[std::size_t(i)][std::size_t(l)], yj);
	}
	return r;
}

} // namespace

TEST_CASE("antisymmetric storage")
{
	TangentValuedForm t(2);
	t.set({1, 0}, 0, Expr(3));
	CHECK(t.get({0, 1}, 0) == Expr(-3));
	CHECK(t.get({1, 1}, 0).empty());
	CHECK_THROWS_AS(t.set({0}, 0, Expr(1)), DegreeError);
}

TEST_CASE("FN bracket of vector fields is the Lie bracket")
{
	Gen g(31);
	JetContext ctx(2);
	ctx.add_field("y");
	for (int trial = 0; trial < 20; ++trial)
	{
		auto u = make_vector_field({g.even_expr(ctx, 0), g.even_expr(ctx, 0)},
		                           {{ctx.jet_var(0), g.even_expr(ctx, 0)}});
		auto v = make_vector_field({g.even_expr(ctx, 0), g.even_expr(ctx, 0)},
		                           {{ctx.jet_var(0), g.even_expr(ctx, 0)}});
		auto b = fn_bracket(from_vector_field(u, ctx), from_vector_field(v, ctx), ctx);
		CHECK(b == from_vector_field(bracket(u, v), ctx));
		auto uu = fn_bracket(from_vector_field(u, ctx), from_vector_field(u, ctx), ctx);
		CHECK(uu.empty());
	}
	auto th = canonical_form(ctx);
	CHECK(fn_bracket(th, th, ctx).empty());
}

TEST_CASE("degree overflow")
{
	JetContext ctx(2);
	ctx.add_field("y");
	TangentValuedForm a(2);
	a.set({0, 1}, 2, ctx.y("y"));
	CHECK_THROWS_AS(fn_bracket(a, canonical_form(ctx), ctx), DegreeOverflow);
}

TEST_CASE("Nijenhuis differential along a vector field is the Lie derivative")
{
	Gen g(37);
	JetContext ctx(2);
	ctx.add_field("y");
	ZChart z(ctx);
	for (int trial = 0; trial < 20; ++trial)
	{
		auto u = from_vector_field(
		    make_vector_field({g.even_expr(ctx, 0), g.even_expr(ctx, 0)},
		                      {{ctx.jet_var(0), g.even_expr(ctx, 0)}}),
		    ctx);
		int s = g.uniform(1, 2);
		auto sig = random_tvf(g, ctx, s, true);
		auto lhs = nijenhuis_differential(u, sig, ctx);
		// direct Lie derivative of a tangent-valued form
		TangentValuedForm rhs(s);
		std::vector<int> idx(static_cast<std::size_t>(s), 0);
		for (int a = 0; a < z.dim(); ++a)
			for (int b = 0; b < (s == 2 ? z.dim() : 1); ++b)
			{
				idx[0] = a;
				if (s == 2)
					idx[1] = b;
				if (s == 2 && b <= a)
					continue;
				for (int mu = 0; mu < z.dim(); ++mu)
				{
					Expr t;
					for (int nu = 0; nu < z.dim(); ++nu)
					{
						t += u.get({}, nu) * z.partial(sig.get(idx, mu), nu, ctx);
						t -= sig.get(idx, nu) * z.partial(u.get({}, mu), nu, ctx);
						for (int j = 0; j < s; ++j)
						{
							auto i2 = idx;
							i2[std::size_t(j)] = nu;
							t += sig.get(i2, mu) * z.partial(u.get({}, nu), idx[std::size_t(j)], ctx);
						}
					}
					rhs.set(idx, mu, t);
				}
			}
		CHECK(lhs == rhs);
	}
}

TEST_CASE("graded antisymmetry and Jacobi")
{
	Gen g(41);
	JetContext ctx(3);
	ctx.add_field("y");
	for (int trial = 0; trial < 12; ++trial)
	{
		int r = g.uniform(0, 1), s = g.uniform(0, 2 - r), t = g.uniform(0, 3 - r - s);
		auto a = random_tvf(g, ctx, r), b = random_tvf(g, ctx, s), c = random_tvf(g, ctx, t);
		auto ab = fn_bracket(a, b, ctx), ba = fn_bracket(b, a, ctx);
		CHECK(ab == ((r * s + 1) % 2 ? -ba : ba));
		auto lhs = fn_bracket(a, fn_bracket(b, c, ctx), ctx);
		auto rhs = fn_bracket(ab, c, ctx);
		auto third = fn_bracket(b, fn_bracket(a, c, ctx), ctx);
		rhs += (r * s) % 2 ? -third : third;
		CHECK(lhs == rhs);
	}
}

TEST_CASE("connection curvature and Bianchi identities")
{
	Gen g(43);
	JetContext ctx(3);
	ctx.add_field("y");
	ctx.add_field("w");
	for (int trial = 0; trial < 8; ++trial)
	{
		std::vector<std::vector<Expr>> G(2, std::vector<Expr>(3));
		for (auto &row : G)
			for (auto &e : row)
				e = g.even_expr(ctx, 0, 2, 2);
		auto gamma = connection_form(G, ctx);
		auto R = Expr(Rational(1, 2)) * fn_bracket(gamma, gamma, ctx);
		ZChart z(ctx);
		for (int i = 0; i < 2; ++i)
			for (int l = 0; l < 3; ++l)
				for (int m = 0; m < 3; ++m)
					CHECK(R.get({l, m}, z.n + i) == curvature_160(G, ctx, i, l, m));
		CHECK(fn_bracket(gamma, R, ctx).empty());
	}
	// [R, R] needs a 4-dimensional base
	JetContext c4(4);
	c4.add_field("y");
	std::vector<std::vector<Expr>> G(1, std::vector<Expr>(4));
	for (auto &e : G[0])
		e = g.even_expr(c4, 0, 2, 2);
	auto gamma = connection_form(G, c4);
	auto R = Expr(Rational(1, 2)) * fn_bracket(gamma, gamma, c4);
	CHECK(fn_bracket(R, R, c4).empty());
}
