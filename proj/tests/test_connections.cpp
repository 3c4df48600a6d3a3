#include "doctest.h"

#include "gen.hpp"
#include "jetvar/connections.hpp"
#include "jetvar/errors.hpp"

using namespace jetvar;
using jetvar::testing::Gen;

namespace {

using Rows = std::vector<std::vector<Expr>>;

LinearCoefficients zero_coeff(int n, int m)
{
	return LinearCoefficients(std::size_t(n), Rows(std::size_t(m), std::vector<Expr>(std::size_t(m))));
}

Expr rand_x(Gen &g, int n)
{
	return g.even_expr(JetContext(n), 0, 2, 2);
}

} // namespace

TEST_CASE("covariant differential examples")
{
	JetContext ctx(2);
	int y = ctx.add_field("y");
	int z = ctx.add_field("z");
	Connection zero = general_connection({y, z}, Rows(2, std::vector<Expr>(2)), ctx);
	auto d = cov_diff(zero, {ctx.x(0), ctx.x(0)}, ctx);
	CHECK(d[0][0] == Expr(1));
	CHECK(d[0][1].empty());
	CHECK(d[1][0] == Expr(1));

	JetContext c1(1);
	int u = c1.add_field("u");
	LinearCoefficients one = zero_coeff(1, 1);
	one[0][0][0] = Expr(1);
	Connection lin = linear_connection({u}, one, c1);
	auto s = exp(c1.x(0));
	CHECK(is_zero(cov_diff(lin, {s}, c1)[0][0]));

	ctx.add_function("a");
	LinearCoefficients diag = zero_coeff(2, 2);
	for (int l = 0; l < 2; ++l)
		for (int i = 0; i < 2; ++i)
			diag[std::size_t(l)][std::size_t(i)][std::size_t(i)] = ctx.fn("a", MultiIndex().plus(l));
	Connection dg = linear_connection({y, z}, diag, ctx);
	auto ds = cov_diff(dg, {Expr(1), Expr(1)}, ctx);
	for (int l = 0; l < 2; ++l)
		for (int i = 0; i < 2; ++i)
			CHECK(ds[std::size_t(i)][std::size_t(l)] == -ctx.fn("a", MultiIndex().plus(l)));
	auto tau = covariant_derivative(dg, {Expr(1), Expr()}, {Expr(1), Expr(1)}, ctx);
	CHECK(tau[0] == -ctx.fn("a", MultiIndex().plus(0)));
}

TEST_CASE("curvature examples")
{
	JetContext ctx(2);
	int y = ctx.add_field("y");
	Connection zero = general_connection({y}, Rows(1, std::vector<Expr>(2)), ctx);
	CHECK(curvature(zero, ctx).empty());
	Connection cst = general_connection({y}, {{Expr(3), Expr(Rational(1, 2))}}, ctx);
	CHECK(curvature(cst, ctx).empty());
	// R_{12} = ∂_1Γ_2 − ∂_2Γ_1 + Γ_1∂_yΓ_2 − Γ_2∂_yΓ_1 = 0 for Γ_1 = y, Γ_2 = 0
	Connection g1 = general_connection({y}, {{ctx.y(y), Expr()}}, ctx);
	CHECK(curvature(g1, ctx).empty());
	CHECK(curvature_fn(g1, ctx).empty());
	// Γ_1 = y, Γ_2 = x¹y gives R_{12} = y + y·x¹ − x¹y = y
	Connection g2 = general_connection({y}, {{ctx.y(y), ctx.x(0) * ctx.y(y)}}, ctx);
	CHECK(curvature(g2, ctx).get({0, 1}, 2) == ctx.y(y));
}

TEST_CASE("curvature equals half the FN self-bracket")
{
	Gen g(53);
	for (int n = 2; n <= 3; ++n)
	{
		JetContext ctx(n);
		int a = ctx.add_field("a"), b = ctx.add_field("b");
		for (int trial = 0; trial < 10; ++trial)
		{
			Rows comps(2, std::vector<Expr>(std::size_t(n)));
			for (auto &row : comps)
				for (auto &e : row)
					e = g.even_expr(ctx, 0, 2, 2);
			auto G = general_connection({a, b}, comps, ctx);
			CHECK(curvature(G, ctx) == curvature_fn(G, ctx));
		}
	}
}

TEST_CASE("torsion examples and symmetry")
{
	JetContext ctx(2);
	int v1 = ctx.add_field("v1"), v2 = ctx.add_field("v2");
	std::vector<int> tf{v1, v2};
	auto theta = canonical_vertical_form(tf, ctx);
	WorldConnection sym(2);
	sym(0, 0, 1) = sym(1, 0, 0) = ctx.x(1);
	sym(1, 1, 1) = Expr(2);
	CHECK(torsion(world_as_connection(sym, tf, ctx), theta, ctx).empty());

	WorldConnection anti(2);
	anti(0, 0, 1) = Expr(3);
	anti(1, 0, 0) = Expr(-3);
	anti(0, 1, 1) = Expr(Rational(1, 2));
	anti(1, 1, 0) = Expr(Rational(-1, 2));
	auto T = torsion(world_as_connection(anti, tf, ctx), theta, ctx);
	ZChart z(ctx);
	// component of dx^λ∧dx^μ ⊗ ∂_ν is T_μ{}^ν{}_λ = 2K_μ{}^ν{}_λ
	for (int nu = 0; nu < 2; ++nu)
	{
		CHECK(T.get({0, 1}, z.fibre(tf[std::size_t(nu)])) == Expr(2) * anti(1, nu, 0));
		CHECK(T.get({0, 1}, z.fibre(tf[std::size_t(nu)])) == world_torsion(anti)(1, nu, 0));
	}
	CHECK(torsion(world_as_connection(anti, tf, ctx), TangentValuedForm(1), ctx).empty());

	Gen g(59);
	for (int trial = 0; trial < 10; ++trial)
	{
		Rows comps(2, std::vector<Expr>(2)), sig(2, std::vector<Expr>(2));
		for (auto &row : comps)
			for (auto &e : row)
				e = g.even_expr(ctx, 0, 2, 2);
		for (auto &row : sig)
			for (auto &e : row)
				e = g.even_expr(ctx, 0, 2, 2);
		auto G = general_connection(tf, comps, ctx);
		auto s = soldering_on(tf, sig, ctx);
		auto gt = to_tangent_valued(G, ctx);
		CHECK(fn_bracket(gt, s, ctx) == fn_bracket(s, gt, ctx));
		CHECK(torsion(G, s, ctx) == fn_bracket(gt, s, ctx));
		CHECK(Expr(Rational(1, 2)) * fn_bracket(s, s, ctx) == soldered_curvature(s, ctx));
		auto rel = shifted_connection_relations(G, s, ctx);
		CHECK(rel.torsion_ok);
		CHECK(rel.curvature_ok);
	}
}

TEST_CASE("soldered curvature examples")
{
	JetContext ctx(2);
	int y = ctx.add_field("y");
	auto basic = soldering_on({y}, {{ctx.x(1), Expr(2)}}, ctx);
	CHECK(soldered_curvature(basic, ctx).empty());
	JetContext tx(2);
	int a = tx.add_field("v1"), b = tx.add_field("v2");
	CHECK(soldered_curvature(canonical_vertical_form({a, b}, tx), tx).empty());
	auto s = soldering_on({y}, {{ctx.y(y), Expr(1)}}, ctx);
	// ρ_{12} = σ_1∂_yσ_2 − σ_2∂_yσ_1 = −1
	CHECK(soldered_curvature(s, ctx).get({0, 1}, 2) == Expr(-1));
}

TEST_CASE("shifted connection relations")
{
	JetContext ctx(2);
	int y = ctx.add_field("y"), w = ctx.add_field("w");
	auto G = general_connection({y, w}, {{ctx.y(y) * ctx.y(w), ctx.x(0)}, {Expr(), ctx.y(y)}}, ctx);
	auto rel0 = shifted_connection_relations(G, TangentValuedForm(1), ctx);
	CHECK(rel0.shifted_torsion == rel0.torsion);
	CHECK(rel0.shifted_curvature == rel0.curvature);
	auto zero = general_connection({y, w}, Rows(2, std::vector<Expr>(2)), ctx);
	auto lin = soldering_on({y, w}, {{ctx.y(w), ctx.y(y)}, {Expr(2) * ctx.y(y), Expr()}}, ctx);
	auto rel = shifted_connection_relations(zero, lin, ctx);
	CHECK(rel.curvature_ok);
	CHECK(is_zero(rel.shifted_curvature - rel.rho - rel.torsion));

	// Cartan connection: torsion equals the world torsion
	JetContext tx(2);
	int a = tx.add_field("v1"), b = tx.add_field("v2");
	WorldConnection K(2);
	K(0, 1, 0) = tx.x(1);
	K(1, 0, 0) = Expr(5);
	auto theta = canonical_vertical_form({a, b}, tx);
	auto A = cartan_connection(K, {a, b}, tx);
	auto TA = torsion(A, theta, tx);
	auto TK = torsion(world_as_connection(K, {a, b}, tx), theta, tx);
	CHECK(TA == TK);
	auto relK = shifted_connection_relations(world_as_connection(K, {a, b}, tx), theta, tx);
	CHECK(relK.rho.empty());
	CHECK(curvature(A, tx) == relK.curvature + relK.torsion);
}

TEST_CASE("dual and tensor product connections")
{
	JetContext ctx(2);
	int y1 = ctx.add_field("y1"), y2 = ctx.add_field("y2");
	int d1 = ctx.add_field("p1"), d2 = ctx.add_field("p2");
	auto zero = linear_connection({y1, y2}, zero_coeff(2, 2), ctx);
	auto dz = dual_connection(zero, {d1, d2}, ctx);
	for (auto const &row : dz.comps)
		for (auto const &e : row)
			CHECK(e.empty());
	Gen g(61);
	auto c = zero_coeff(2, 2);
	for (auto &a : c)
		for (auto &row : a)
			for (auto &e : row)
				e = rand_x(g, 2);
	auto G = linear_connection({y1, y2}, c, ctx);
	auto dd = dual_connection(dual_connection(G, {d1, d2}, ctx), {y1, y2}, ctx);
	CHECK(dd.comps == G.comps);
	auto dual = dual_connection(G, {d1, d2}, ctx);
	for (int l = 0; l < 2; ++l)
		for (int i = 0; i < 2; ++i)
		{
			Expr e = -(c[std::size_t(l)][0][std::size_t(i)] * ctx.y(d1) +
			           c[std::size_t(l)][1][std::size_t(i)] * ctx.y(d2));
			CHECK(dual.comps[std::size_t(i)][std::size_t(l)] == e);
		}

	JetContext r1(2);
	int p = r1.add_field("p"), q = r1.add_field("q"), pq = r1.add_field("pq");
	r1.add_function("a");
	r1.add_function("b");
	auto ca = zero_coeff(2, 1), cb = zero_coeff(2, 1);
	for (int l = 0; l < 2; ++l)
	{
		ca[std::size_t(l)][0][0] = r1.fn("a", MultiIndex().plus(l));
		cb[std::size_t(l)][0][0] = r1.fn("b", MultiIndex().plus(l));
	}
	auto A = linear_connection({p}, ca, r1), B = linear_connection({q}, cb, r1);
	auto AB = tensor_product_connection(A, B, {{pq}}, r1);
	for (int l = 0; l < 2; ++l)
		CHECK(AB.comps[0][std::size_t(l)] ==
		      (r1.fn("a", MultiIndex().plus(l)) + r1.fn("b", MultiIndex().plus(l))) * r1.y(pq));
	auto A0 = tensor_product_connection(A, linear_connection({q}, zero_coeff(2, 1), r1), {{pq}}, r1);
	for (int l = 0; l < 2; ++l)
		CHECK(A0.comps[0][std::size_t(l)] == r1.fn("a", MultiIndex().plus(l)) * r1.y(pq));
	CHECK_THROWS_AS(dual_connection(general_connection({p}, {{r1.y(p) * r1.y(p), Expr()}}, r1),
	                                {q}, r1),
	                KindError);
}

TEST_CASE("linear curvature acts as the commutator of covariant derivatives")
{
	Gen g(67);
	JetContext ctx(2);
	int y1 = ctx.add_field("y1"), y2 = ctx.add_field("y2");
	for (int trial = 0; trial < 10; ++trial)
	{
		auto c = zero_coeff(2, 2);
		for (auto &a : c)
			for (auto &row : a)
				for (auto &e : row)
					e = rand_x(g, 2);
		auto G = linear_connection({y1, y2}, c, ctx);
		std::vector<Expr> s{rand_x(g, 2), rand_x(g, 2)};
		auto R = curvature(G, ctx);
		auto Rl = linear_curvature(G, ctx);
		auto nab = [&](int l, std::vector<Expr> const &sec) {
			std::vector<Expr> t(2);
			t[std::size_t(l)] = Expr(1);
			return covariant_derivative(G, t, sec, ctx);
		};
		auto comm = nab(0, nab(1, s));
		auto other = nab(1, nab(0, s));
		ZChart z(ctx);
		for (int i = 0; i < 2; ++i)
		{
			Expr lhs = substitute(R.get({0, 1}, z.fibre(i == 0 ? y1 : y2)), [&](Var const &v) -> std::optional<Expr> {
				if (v == ctx.jet_var(y1))
					return s[0];
				if (v == ctx.jet_var(y2))
					return s[1];
				return std::nullopt;
			});
			CHECK(lhs == -(comm[std::size_t(i)] - other[std::size_t(i)]));
			CHECK(lhs == Rl[0][1][std::size_t(i)][0] * s[0] + Rl[0][1][std::size_t(i)][1] * s[1]);
		}
	}
}

TEST_CASE("affine curvature splits into linear curvature and torsion")
{
	Gen g(71);
	JetContext ctx(2);
	int y1 = ctx.add_field("y1"), y2 = ctx.add_field("y2");
	for (int trial = 0; trial < 10; ++trial)
	{
		auto c = zero_coeff(2, 2);
		for (auto &a : c)
			for (auto &row : a)
				for (auto &e : row)
					e = rand_x(g, 2);
		Rows sig(2, std::vector<Expr>(2));
		for (auto &row : sig)
			for (auto &e : row)
				e = rand_x(g, 2);
		auto A = affine_connection({y1, y2}, c, sig, ctx);
		auto Abar = associated_linear(A, ctx);
		auto T = torsion(A, soldering_on({y1, y2}, affine_shift(A, ctx), ctx), ctx);
		CHECK(curvature(A, ctx) == curvature(Abar, ctx) + T);
		// explicit torsion of an affine connection
		ZChart z(ctx);
		for (std::size_t i = 0; i < 2; ++i)
		{
			Expr t = partial_base(sig[i][1], 0) - partial_base(sig[i][0], 1);
			for (std::size_t h = 0; h < 2; ++h)
				t += sig[h][0] * c[1][i][h] - sig[h][1] * c[0][i][h];
			CHECK(T.get({0, 1}, z.fibre(int(i) == 0 ? y1 : y2)) == t);
		}
	}
}

TEST_CASE("Levi-Civita connection")
{
	JetContext ctx(2);
	Metric flat{2, {{Expr(1), Expr()}, {Expr(), Expr(1)}}, {}};
	auto K0 = levi_civita(flat);
	for (auto const &e : K0.data)
		CHECK(e.empty());
	auto R0 = world_curvature(K0);
	for (auto const &e : R0.riemann)
		CHECK(e.empty());

	JetContext c1(1);
	c1.add_function("f");
	Metric m1{1, {{c1.fn("f")}}, {}};
	auto K1 = levi_civita(m1);
	Expr f1 = c1.fn("f", MultiIndex().plus(0));
	CHECK(is_zero(K1(0, 0, 0) + Expr(Rational(1, 2)) * pow(c1.fn("f"), -1) * f1));

	Expr x1 = ctx.x(0);
	Metric sphere{2, {{Expr(1), Expr()}, {Expr(), sin(x1) * sin(x1)}}, {}};
	auto K = levi_civita(sphere);
	CHECK(is_zero(K(1, 0, 1) - sin(x1) * cos(x1)));
	CHECK(is_zero(K(0, 1, 1) + cos(x1) * pow(sin(x1), -1)));
	CHECK(is_zero(physics_sign(K)(1, 0, 1) + sin(x1) * cos(x1)));
	for (auto const &a : metric_covariant_derivative(sphere, K))
		for (auto const &b : a)
			for (auto const &e : b)
			{
				auto zc = zero_check(e);
				CHECK(zc.zero);
			}
	auto R = world_curvature(K);
	CHECK(is_zero(R.R(0, 1, 0, 1) + sin(x1) * sin(x1)));
	CHECK(is_zero(R.Ric(0, 0) - Expr(1)));
	CHECK(is_zero(R.Ric(1, 1) - sin(x1) * sin(x1)));
	CHECK(is_zero(R.Ric(0, 1)));

	Metric singular{2, {{Expr(1), Expr(1)}, {Expr(1), Expr(1)}}, {}};
	CHECK_THROWS_AS(levi_civita(singular), SingularMetric);

	// rational metric: ∇g = 0 exactly
	Metric rat{2, {{Expr(1) + ctx.x(1) * ctx.x(1), ctx.x(0)}, {ctx.x(0), Expr(2)}}, {}};
	auto Kr = levi_civita(rat);
	for (auto const &a : metric_covariant_derivative(rat, Kr))
		for (auto const &b : a)
			for (auto const &e : b)
				CHECK(is_zero(e));
	// symmetric, so torsion-free
	for (auto const &e : world_torsion(Kr).data)
		CHECK(is_zero(e));
}

TEST_CASE("symmetrized world connection")
{
	WorldConnection K(2);
	K(0, 1, 1) = Expr(2);
	K(1, 0, 0) = Expr(3);
	K(0, 0, 1) = Expr(7);
	auto h = symmetrized(K, Rational(1, 2));
	for (int l = 0; l < 2; ++l)
		for (int m = 0; m < 2; ++m)
			for (int v = 0; v < 2; ++v)
				CHECK(h(l, m, v) == h(v, m, l));
	auto one = symmetrized(K, Rational(1));
	CHECK(one.data == K.data);
}

TEST_CASE("composite connections")
{
	JetContext ctx(2);
	int s = ctx.add_field("s"), y = ctx.add_field("y");
	ctx.add_function("g");
	Connection G = general_connection({s}, {{ctx.fn("g"), ctx.y(s)}}, ctx);
	Rows ax{{ctx.y(y), ctx.x(1)}};
	Rows a0{{Expr()}};
	auto c0 = composite_connection({y}, ax, a0, G, ctx);
	CHECK(c0.comps[0] == G.comps[0]);
	CHECK(c0.comps[1] == ax[0]);
	auto Gz = general_connection({s}, Rows(1, std::vector<Expr>(2)), ctx);
	Rows as{{ctx.y(y) * ctx.y(s)}};
	auto c1 = composite_connection({y}, ax, as, Gz, ctx);
	CHECK(c1.comps[1] == ax[0]);
	auto c2 = composite_connection({y}, ax, as, G, ctx);
	for (int l = 0; l < 2; ++l)
		CHECK(c2.comps[1][std::size_t(l)] ==
		      ax[0][std::size_t(l)] + as[0][0] * G.comps[0][std::size_t(l)]);

	auto D0 = vertical_covariant_differential({y}, {s}, Rows{{Expr(), Expr()}}, Rows{{Expr()}}, ctx);
	for (int l = 0; l < 2; ++l)
		CHECK(D0[0][std::size_t(l)] == ctx.y(y, MultiIndex().plus(l)));
	auto D = vertical_covariant_differential({y}, {s}, ax, as, ctx);
	// on an h-section σ = h(x) and y = φ(x), D̃ reduces to the covariant differential
	// of the pull-back connection
	Expr h = ctx.x(0) * ctx.x(1), phi = ctx.x(1) * ctx.x(1);
	auto on = [&](Expr const &e) {
		return substitute(e, [&](Var const &v) -> std::optional<Expr> {
			if (!v.is_jet())
				return std::nullopt;
			Expr r = v.index == std::uint16_t(s) ? h : phi;
			for (int d : v.mi)
				r = partial_base(r, d);
			return r;
		});
	};
	for (int l = 0; l < 2; ++l)
	{
		Expr pull = on(ax[0][std::size_t(l)]) + on(as[0][0]) * partial_base(h, l);
		CHECK(on(D[0][std::size_t(l)]) == partial_base(phi, l) - pull);
	}
}
