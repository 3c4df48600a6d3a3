#include "doctest.h"

#include "gen.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/gauge.hpp"
#include "jetvar/tangent_valued.hpp"
#include "jetvar/variational.hpp"

using namespace jetvar;
using jetvar::testing::Gen;

namespace {

Metric diagonal(std::vector<int> d)
{
	Metric g;
	g.n = int(d.size());
	g.g.assign(d.size(), std::vector<Expr>(d.size()));
	for (std::size_t i = 0; i < d.size(); ++i)
		g.g[i][i] = Expr(d[i]);
	return g;
}

RationalMatrix random_invertible(Gen &g, int d)
{
	for (;;)
	{
		RationalMatrix m(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
		for (auto &row : m)
			for (auto &x : row)
				x = Rational(g.uniform(-2, 2));
		std::vector<std::vector<Expr>> e(static_cast<std::size_t>(d), std::vector<Expr>(static_cast<std::size_t>(d)));
		for (int i = 0; i < d; ++i)
			for (int j = 0; j < d; ++j)
				e[std::size_t(i)][std::size_t(j)] = Expr(m[std::size_t(i)][std::size_t(j)]);
		if (!determinant(e).empty())
			return m;
	}
}

LieAlgebraData random_su2(Gen &g) { return change_basis(su2(), random_invertible(g, 3)); }

// a section A^q_λ(x) and its substitution into jet coordinates
struct SectionSub
{
	std::vector<std::vector<Expr>> A;
	Expr operator()(GaugeContext const &gc, Expr const &e) const
	{
		return substitute(e, [&](Var const &v) -> std::optional<Expr> {
			for (int q = 0; q < gc.algebra.dim; ++q)
				for (int m = 0; m < gc.n(); ++m)
					if (v.is_jet() && v.index == gc.potential[std::size_t(q)][std::size_t(m)])
					{
						Expr r = A[std::size_t(q)][std::size_t(m)];
						for (int l : v.mi)
							r = partial_base(r, l);
						return r;
					}
			return std::nullopt;
		});
	}
};

std::vector<Expr> parameters(GaugeContext &gc, int d)
{
	std::vector<Expr> xi;
	for (int p = 0; p < d; ++p)
	{
		std::string name = "xi" + std::to_string(p + 1);
		gc.ctx.add_function(name);
		xi.push_back(gc.ctx.fn(name));
	}
	return xi;
}

// ½ Σ (D_λψ)² − ½ m ψ·ψ with D_λψ = ψ_λ + A^p_λ I_p ψ
Expr matter_lagrangian(GaugeContext const &gc)
{
	Expr L;
	std::size_t m = gc.matter.size();
	for (int l = 0; l < gc.n(); ++l)
		for (std::size_t i = 0; i < m; ++i)
		{
			Expr D = gc.ctx.y(gc.matter[i], {l});
			for (int p = 0; p < gc.algebra.dim; ++p)
				for (std::size_t j = 0; j < m; ++j)
					if (!gc.generators[std::size_t(p)][i][j].is_zero())
						D += Expr(gc.generators[std::size_t(p)][i][j]) * gc.a(p, l) * gc.y(int(j));
			L += Expr(Rational(1, 2)) * D * D;
		}
	for (std::size_t i = 0; i < m; ++i)
		L -= Expr(Rational(3, 2)) * gc.y(int(i)) * gc.y(int(i));
	return L;
}

} // namespace

TEST_CASE("lie algebra validation")
{
	CHECK_NOTHROW(su2());
	CHECK(u1().dim == 1);
	auto bad = su2();
	bad.c[0][0][1] = Rational(1);
	bad.c[0][1][0] = Rational(-1);
	CHECK_THROWS_AS(validate(bad), InvalidAlgebra);
	auto asym = su2();
	asym.c[0][1][2] = Rational(2);
	CHECK_THROWS_AS(validate(asym), InvalidAlgebra);
	auto form = su2();
	(*form.bilinear)[0][0] = Rational(2);
	CHECK_THROWS_AS(validate(form), InvalidAlgebra);

	Gen g(0x9a01);
	for (int rep = 0; rep < 10; ++rep)
		CHECK_NOTHROW(validate(random_su2(g)));
	CHECK_NOTHROW(make_gauge_context(su2(), 2, {}, adjoint_generators(su2())));
	auto wrong = adjoint_generators(su2());
	wrong[0][0][1] += Rational(1);
	CHECK_THROWS_AS(make_gauge_context(su2(), 2, {}, wrong), InvalidAlgebra);
}

TEST_CASE("strength examples")
{
	auto ab = make_gauge_context(u1(), 2);
	auto F = strength(ab);
	CHECK(F[0][0][1] == ab.a(0, 0, 1) - ab.a(0, 1, 0));

	auto gc = make_gauge_context(su2(), 2);
	auto G = strength(gc);
	CHECK(G[0][0][1] ==
	      gc.a(0, 0, 1) - gc.a(0, 1, 0) + gc.a(1, 0) * gc.a(2, 1) - gc.a(2, 0) * gc.a(1, 1));
	for (int r = 0; r < 3; ++r)
		for (int l = 0; l < 2; ++l)
			for (int m = 0; m < 2; ++m)
				CHECK(G[std::size_t(r)][std::size_t(l)][std::size_t(m)] ==
				      -G[std::size_t(r)][std::size_t(m)][std::size_t(l)]);
}

TEST_CASE("strength on a section matches the section formula")
{
	Gen g(0x9a02);
	for (int rep = 0; rep < 10; ++rep)
	{
		auto gc = make_gauge_context(random_su2(g), 3);
		JetContext base(3);
		SectionSub sub;
		for (int q = 0; q < 3; ++q)
		{
			sub.A.emplace_back();
			for (int l = 0; l < 3; ++l)
				sub.A.back().push_back(g.even_expr(base, 0, 2, 2));
		}
		auto F = strength(gc);
		auto Fs = strength_of(gc.algebra, sub.A);
		for (int r = 0; r < 3; ++r)
			for (int l = 0; l < 3; ++l)
				for (int m = 0; m < 3; ++m)
					CHECK(sub(gc, F[std::size_t(r)][std::size_t(l)][std::size_t(m)]) ==
					      Fs[std::size_t(r)][std::size_t(l)][std::size_t(m)]);
	}
}

TEST_CASE("second bianchi identity")
{
	CHECK(bianchi_check(make_gauge_context(u1(), 4)));
	CHECK(bianchi_check(make_gauge_context(su2(), 3)));
	Gen g(0x9a03);
	for (int rep = 0; rep < 5; ++rep)
		CHECK(bianchi_check(make_gauge_context(random_su2(g), 3 + rep % 2)));
	auto broken = make_gauge_context(su2(), 3);
	broken.algebra.c[0][0][1] = Rational(1);
	broken.algebra.c[0][1][0] = Rational(-1);
	CHECK_THROWS_AS(validate(broken.algebra), InvalidAlgebra);
	CHECK_FALSE(bianchi_check(broken));
}

TEST_CASE("canonical splitting")
{
	Gen g(0x9a04);
	std::vector<LieAlgebraData> algebras{u1(), su2(), random_su2(g)};
	for (auto const &alg : algebras)
	{
		auto gc = make_gauge_context(alg, 3);
		auto sp = canonical_splitting(gc);
		for (int r = 0; r < alg.dim; ++r)
			for (int l = 0; l < 3; ++l)
				for (int m = 0; m < 3; ++m)
				{
					auto R = std::size_t(r), L = std::size_t(l), M = std::size_t(m);
					CHECK(sp.S[R][L][M] + Expr(Rational(1, 2)) * sp.F[R][L][M] == gc.a(r, l, m));
					CHECK(sp.S[R][L][M] - sp.S[R][M][L] ==
					      gc.a(r, l, m) - gc.a(r, m, l) - sp.F[R][L][M]);
					// at a^p_λ = 0 only the plain jet parts remain
					auto at0 = [&](Expr const &e) {
						return substitute(e, [&](Var const &v) -> std::optional<Expr> {
							if (v.is_jet() && v.mi.order() == 0)
								return Expr();
							return std::nullopt;
						});
					};
					CHECK(at0(sp.S[R][L][M]) ==
					      Expr(Rational(1, 2)) * (gc.a(r, l, m) + gc.a(r, m, l)));
					CHECK(at0(sp.F[R][L][M]) == gc.a(r, l, m) - gc.a(r, m, l));
				}
	}
}

TEST_CASE("gauge vector fields")
{
	auto ab = make_gauge_context(u1(), 2);
	CHECK(gauge_vector_field(ab, {Expr(3)}).is_zero());
	Expr xi = ab.ctx.x(0) * ab.ctx.x(1);
	auto u = gauge_vector_field(ab, {xi});
	CHECK(u.component(ab.a_var(0, 0)) == -ab.ctx.x(1));
	CHECK(u.component(ab.a_var(0, 1)) == -ab.ctx.x(0));

	auto gc = make_gauge_context(su2(), 2);
	auto v = gauge_vector_field(gc, {Expr(1), Expr(), Expr()});
	// c^r_{1q}a^q_λ: r = 2 picks c^2_{13} = −1, r = 3 picks c^3_{12} = 1
	CHECK(v.component(gc.a_var(0, 0)).empty());
	CHECK(v.component(gc.a_var(1, 0)) == -gc.a(2, 0));
	CHECK(v.component(gc.a_var(2, 1)) == gc.a(1, 1));
	CHECK_THROWS_AS(gauge_vector_field(gc, {gc.a(0, 0), Expr(), Expr()}), KindError);
}

TEST_CASE("invariance equations")
{
	auto mx = make_gauge_context(u1(), 4);
	Expr maxwell = yang_mills_lagrangian(mx, diagonal({1, 1, 1, 1}));
	CHECK(invariance_equations(mx, maxwell).invariant());
	auto bare = invariance_equations(mx, mx.a(0, 0));
	CHECK(bare.b[0][0] == Expr(1));
	CHECK_FALSE(bare.invariant());
	CHECK(invariance_equations(mx, Expr(7)).invariant());

	auto gc = make_gauge_context(su2(), 3);
	Expr ym = yang_mills_lagrangian(gc, diagonal({1, -1, -1}), Rational(2));
	CHECK(invariance_equations(gc, ym).invariant());
	CHECK(strong_equalities(gc, ym).invariant());

	// the strong equalities are the negatives of the pure-gauge equations
	Gen g(0x9a05);
	for (int rep = 0; rep < 10; ++rep)
	{
		Expr L = g.even_expr(gc.ctx, 1, 3, 3);
		auto lit = invariance_equations(gc, L);
		auto str = strong_equalities(gc, L);
		for (int p = 0; p < 3; ++p)
		{
			CHECK(is_zero(lit.a[std::size_t(p)] + str.a[std::size_t(p)]));
			for (int m = 0; m < 3; ++m)
			{
				CHECK(is_zero(lit.b[std::size_t(p)][std::size_t(m)] +
				              str.b[std::size_t(p)][std::size_t(m)]));
				for (int l = 0; l < 3; ++l)
					CHECK(is_zero(lit.c[std::size_t(p)][std::size_t(m)][std::size_t(l)] +
					              str.c[std::size_t(p)][std::size_t(m)][std::size_t(l)]));
			}
		}
	}
	auto with_matter = make_gauge_context(su2(), 2, {}, adjoint_generators(su2()));
	CHECK_THROWS_AS(invariance_equations(with_matter, Expr(1)), KindError);
}

TEST_CASE("yang-mills lagrangian")
{
	auto mx = make_gauge_context(u1(), 4);
	Expr L = yang_mills_lagrangian(mx, diagonal({1, 1, 1, 1}));
	auto F = strength(mx);
	Expr expected;
	for (int l = 0; l < 4; ++l)
		for (int m = 0; m < 4; ++m)
			expected += F[0][std::size_t(l)][std::size_t(m)] * F[0][std::size_t(l)][std::size_t(m)];
	CHECK(L == Expr(Rational(1, 4)) * expected);
	// conformal invariance in four dimensions
	CHECK(yang_mills_lagrangian(mx, diagonal({2, 2, 2, 2})) == L);
	auto m3 = make_gauge_context(u1(), 3);
	CHECK(yang_mills_lagrangian(m3, diagonal({4, 4, 4})) ==
	      Expr(Rational(1, 2)) * yang_mills_lagrangian(m3, diagonal({1, 1, 1})));

	auto gc = make_gauge_context(su2(), 4);
	Expr Y = yang_mills_lagrangian(gc, diagonal({1, 1, 1, 1}));
	auto G = strength(gc);
	Expr e;
	for (int r = 0; r < 3; ++r)
		for (int l = 0; l < 4; ++l)
			for (int m = 0; m < 4; ++m)
				e += G[std::size_t(r)][std::size_t(l)][std::size_t(m)] *
				     G[std::size_t(r)][std::size_t(l)][std::size_t(m)];
	CHECK(Y == Expr(Rational(1, 4)) * e);
	// vanishes where ℱ = 0: a pure-gauge section of the abelian theory
	Expr f = mx.ctx.x(0) * mx.ctx.x(0) * mx.ctx.x(1);
	SectionSub flat{{{partial_base(f, 0), partial_base(f, 1), Expr(), Expr()}}};
	CHECK(flat(mx, L).empty());

	auto noform = make_gauge_context(make_algebra(su2().c), 2);
	CHECK_THROWS_AS(yang_mills_lagrangian(noform, diagonal({1, 1})), MissingBilinearForm);
	CHECK(sqrt_abs_det(diagonal({4, 9})) == Expr(6));
	CHECK(sqrt_abs_det(diagonal({1, -1, -1, -1})) == Expr(1));
}

TEST_CASE("yang-mills is gauge invariant along every gauge field")
{
	Gen g(0x9a06);
	for (int rep = 0; rep < 4; ++rep)
	{
		auto gc = make_gauge_context(rep % 2 ? random_su2(g) : su2(), 2 + rep % 2);
		Metric m = rep % 2 ? diagonal(std::vector<int>(std::size_t(gc.n()), 1))
		                   : diagonal({1, -1, -1});
		if (m.n != gc.n())
			m = diagonal(std::vector<int>(std::size_t(gc.n()), 1));
		auto gc2 = gc;
		auto xi = parameters(gc2, 3);
		Expr L = yang_mills_lagrangian(gc2, m);
		CHECK(invariance_equations(gc2, L).invariant());
		CHECK(lie_derivative_lagrangian(L, gauge_vector_field(gc2, xi), gc2.ctx).empty());
		// constraints u^A_pδ_Aℒ − d_μ(u^{Aμ}_pδ_Aℒ) = 0
		auto u = gauge_generators(gc2);
		auto dl = variational_derivatives(L, gc2.ctx);
		for (int p = 0; p < 3; ++p)
		{
			Expr c;
			for (int f = 0; f < gc2.ctx.field_count(); ++f)
			{
				c += u.plain[std::size_t(p)][std::size_t(f)] * dl[std::size_t(f)];
				for (int mu = 0; mu < gc2.n(); ++mu)
					c -= total_derivative(u.deriv[std::size_t(p)][std::size_t(mu)][std::size_t(f)] *
					                          dl[std::size_t(f)],
					                      mu);
			}
			CHECK(is_zero(c));
		}
	}
}

TEST_CASE("noether identities")
{
	auto mx = make_gauge_context(u1(), 4);
	auto xi = parameters(mx, 1);
	Expr L = yang_mills_lagrangian(mx, diagonal({1, 1, 1, 1}));
	auto ni = noether_identities(mx, L, xi);
	CHECK(ni.ok);
	auto F = strength(mx);
	for (int m = 0; m < 4; ++m)
		for (int l = 0; l < 4; ++l)
		{
			auto M = std::size_t(m), Lx = std::size_t(l);
			CHECK(ni.superpotential[M][Lx] == -ni.superpotential[Lx][M]);
			// π^{μλ} = ∂ℒ/∂a_{λμ} = F_{λμ}
			CHECK(ni.superpotential[M][Lx] == xi[0] * F[0][Lx][M]);
		}
	auto cst = noether_identities(mx, L, {Expr(5)});
	for (auto const &t : cst.current)
		CHECK(t.empty());

	auto gc = make_gauge_context(su2(), 3);
	auto xs = parameters(gc, 3);
	Expr Y = yang_mills_lagrangian(gc, diagonal({1, -1, -1}));
	auto nu = noether_identities(gc, Y, xs);
	CHECK(nu.ok);
	for (auto const &m : nu.c)
		for (auto const &row : m)
			for (auto const &e : row)
				CHECK(e.empty());
	// the current agrees with the general Noether current of the gauge field
	auto nc = noether_current(Y, gauge_vector_field(gc, xs), gc.ctx);
	for (int l = 0; l < 3; ++l)
		CHECK(is_zero(nc.current[std::size_t(l)] - nu.current[std::size_t(l)]));

	CHECK_THROWS_AS(noether_identities(mx, mx.a(0, 0), xi), NotInvariant);
}

TEST_CASE("gauge theory with matter")
{
	auto gc = make_gauge_context(su2(), 2, {}, adjoint_generators(su2()));
	auto xi = parameters(gc, 3);
	Expr L = yang_mills_lagrangian(gc, diagonal({1, -1})) + matter_lagrangian(gc);
	CHECK(strong_equalities(gc, L).invariant());
	CHECK(lie_derivative_lagrangian(L, gauge_vector_field(gc, xi), gc.ctx).empty());
	auto ni = noether_identities(gc, L, xi);
	CHECK(ni.ok);
	Expr broken = L + gc.y(0) * gc.y(0);
	CHECK_FALSE(strong_equalities(gc, broken).invariant());
	CHECK_THROWS_AS(noether_identities(gc, broken, xi), NotInvariant);
}

TEST_CASE("section bracket")
{
	Gen g(0x9a07);
	JetContext base(2);
	for (int rep = 0; rep < 10; ++rep)
	{
		auto alg = random_su2(g);
		auto rnd = [&] {
			GaugeSection s;
			for (int l = 0; l < 2; ++l)
				s.base.push_back(g.even_expr(base, 0, 2, 2));
			for (int p = 0; p < 3; ++p)
				s.alg.push_back(g.even_expr(base, 0, 2, 2));
			return s;
		};
		GaugeSection a = rnd(), b = rnd(), c = rnd();
		auto ab = section_bracket(alg, a, b), ba = section_bracket(alg, b, a);
		for (std::size_t i = 0; i < 2; ++i)
			CHECK(ab.base[i] == -ba.base[i]);
		for (std::size_t p = 0; p < 3; ++p)
			CHECK(ab.alg[p] == -ba.alg[p]);
		auto j1 = section_bracket(alg, a, section_bracket(alg, b, c));
		auto j2 = section_bracket(alg, b, section_bracket(alg, c, a));
		auto j3 = section_bracket(alg, c, section_bracket(alg, a, b));
		for (std::size_t i = 0; i < 2; ++i)
			CHECK((j1.base[i] + j2.base[i] + j3.base[i]).empty());
		for (std::size_t p = 0; p < 3; ++p)
			CHECK((j1.alg[p] + j2.alg[p] + j3.alg[p]).empty());
	}
	GaugeSection e1{{}, {Expr(1), Expr(), Expr()}}, e2{{}, {Expr(), Expr(1), Expr()}};
	auto s = section_bracket(su2(), e1, e2);
	CHECK(s.alg[2] == Expr(1));
}

TEST_CASE("associated connection curvature")
{
	auto alg = su2();
	auto I = adjoint_generators(alg);
	JetContext ctx(2);
	std::vector<int> fibre;
	for (int i = 0; i < 3; ++i)
		fibre.push_back(ctx.add_field("v" + std::to_string(i + 1)));
	Gen g(0x9a08);
	JetContext base(2);
	std::vector<std::vector<Expr>> A(3);
	for (auto &row : A)
		for (int l = 0; l < 2; ++l)
			row.push_back(g.even_expr(base, 0, 2, 2));
	Connection gam = associated_connection(fibre, I, A, ctx);
	auto R = curvature(gam, ctx);
	auto F = strength_of(alg, A);
	ZChart zc(ctx);
	for (int i = 0; i < 3; ++i)
	{
		Expr expected;
		for (int p = 0; p < 3; ++p)
			for (int j = 0; j < 3; ++j)
				if (!I[std::size_t(p)][std::size_t(i)][std::size_t(j)].is_zero())
					expected -= Expr(I[std::size_t(p)][std::size_t(i)][std::size_t(j)]) *
					            F[std::size_t(p)][0][1] * ctx.y(fibre[std::size_t(j)]);
		CHECK(R.get({0, 1}, zc.fibre(fibre[std::size_t(i)])) == expected);
	}
	// the adjoint covariant derivative is ∇ = y_λ − Γ
	std::vector<Expr> xi;
	for (int p = 0; p < 3; ++p)
		xi.push_back(g.even_expr(base, 0, 2, 2));
	auto nab = gauge_covariant_derivative(alg, A, xi);
	for (int r = 0; r < 3; ++r)
	{
		Expr e = partial_base(xi[std::size_t(r)], 0);
		Expr gr = substitute(gam.component(r, 0), [&](Var const &v) -> std::optional<Expr> {
			for (int q = 0; q < 3; ++q)
				if (v.is_jet() && v.index == fibre[std::size_t(q)])
					return xi[std::size_t(q)];
			return std::nullopt;
		});
		CHECK(nab[0][std::size_t(r)] == e - gr);
	}
}
