#include "doctest.h"

#include "gen.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/io.hpp"

using namespace jetvar;
using jetvar::testing::Gen;

namespace {

MultiIndex mi(std::initializer_list<int> dirs)
{
	MultiIndex m;
	for (int d : dirs)
		m = m.plus(d);
	return m;
}

// Evaluates e on the jet of a polynomial section: y^i_Λ -> ∂_Λ s^i.
Expr on_section(Expr const &e, std::vector<Expr> const &s)
{
	return substitute(e, [&](Var const &v) -> std::optional<Expr> {
		if (!v.is_jet())
			return std::nullopt;
		Expr r = s[v.index];
		for (int d : v.mi)
			r = partial_base(r, d);
		return r;
	});
}

} // namespace

TEST_CASE("multi-index is symmetric")
{
	CHECK(mi({0, 1, 1}) == mi({1, 0, 1}));
	CHECK(mi({0, 1, 1}).order() == 3);
	CHECK(mi({}).order() == 0);
	CHECK(mi({0}).plus(mi({})) == mi({0}));
	CHECK(mi({1, 0}).count(1) == 1);
}

TEST_CASE("normalize examples")
{
	JetContext ctx(1);
	ctx.add_field("y");
	ctx.add_field("c1", Parity::Odd, 1);
	ctx.add_field("c2", Parity::Odd, 1);
	Expr y = ctx.y("y"), y1 = ctx.y("y", mi({0}));
	Expr c1 = ctx.y("c1"), c2 = ctx.y("c2");
	CHECK(is_zero(y * y1 - y1 * y));
	CHECK(is_zero(c1 * c2 + c2 * c1));
	CHECK(c1 * c1 == Expr());
	CHECK(Expr(2) * y + Expr(3) * y == Expr(5) * y);
	CHECK(normalize(normalize(y * y1 + c1, ctx), ctx) == normalize(y1 * y + c1, ctx));

	JetContext other(1);
	other.add_field("z");
	CHECK_THROWS_AS(normalize(other.y("z", mi({0})) * Expr::var(Var::jet(3)), ctx),
	                UnknownSymbol);
}

TEST_CASE("partial derivative examples")
{
	JetContext ctx(2);
	ctx.add_field("y");
	ctx.add_field("c1", Parity::Odd, 1);
	ctx.add_field("c2", Parity::Odd, 1);
	ctx.add_function("f");
	Expr y1 = ctx.y("y", mi({0}));
	CHECK(partial(Expr(Rational(1, 2)) * y1 * y1, ctx.jet_var(0, mi({0}))) == y1);
	Expr c1 = ctx.y("c1"), c2 = ctx.y("c2");
	CHECK(partial(c1 * c2, ctx.jet_var(1)) == c2);
	CHECK(partial(c1 * c2, ctx.jet_var(2)) == -c1);
	for (int l = 0; l < 2; ++l)
		CHECK(partial(ctx.fn("f") * ctx.y("y"), Var::base(l)) ==
		      ctx.fn("f", mi({l})) * ctx.y("y"));
}

TEST_CASE("total derivative examples")
{
	JetContext ctx(1);
	ctx.add_field("y");
	Expr y = ctx.y("y"), y1 = ctx.y("y", mi({0})), y11 = ctx.y("y", mi({0, 0}));
	CHECK(total_derivative(ctx.x(0), 0) == Expr(1));
	CHECK(total_derivative(ctx.y("y", mi({0})), 0) == y11);
	CHECK(total_derivative(y * y1, 0) == y1 * y1 + y * y11);

	JetContext c2(3);
	c2.add_field("u");
	c2.add_field("v");
	CHECK(total_derivative(c2.y("v", mi({0, 2})), 1) == c2.y("v", mi({0, 1, 2})));
}

TEST_CASE("total derivative agrees with substitution of a section")
{
	Gen g(11);
	JetContext ctx(2);
	ctx.add_field("u");
	ctx.add_field("w");
	ctx.add_function("f", 0b01);
	for (int trial = 0; trial < 60; ++trial)
	{
		Expr e = g.even_expr(ctx, 2, 3, 3);
		if (trial % 3 == 0)
			e *= ctx.fn("f");
		std::vector<Expr> s = {g.even_expr(JetContext(2), 0, 3, 3),
		                       g.even_expr(JetContext(2), 0, 3, 3)};
		for (int l = 0; l < 2; ++l)
			CHECK(is_zero(on_section(total_derivative(e, l), s) -
			              partial_base(on_section(e, s), l)));
	}
}

TEST_CASE("zero test")
{
	JetContext ctx(1);
	ctx.add_field("y");
	Expr y1 = ctx.y("y", mi({0}));
	CHECK(is_zero(y1 - y1));
	CHECK_FALSE(is_zero(ctx.y("y", mi({0, 0}))));
	Expr x = ctx.x(0);
	Expr e = sin(x) * sin(x) + cos(x) * cos(x) - Expr(1);
	auto z = zero_check(e);
	CHECK(z.zero);
	CHECK(z.probable);
	CHECK(z.samples == 16);
	CHECK_FALSE(is_zero(sin(x) * sin(x) + cos(x) * cos(x)));
	CHECK(is_zero(exp(ln(x)) - x));
	CHECK(is_zero(pow(x, Rational(1, 2)) * pow(x, Rational(1, 2)) - x));
}

TEST_CASE("elementary atoms reject jet arguments")
{
	JetContext ctx(1);
	ctx.add_field("y");
	CHECK_THROWS_AS(sin(ctx.y("y")), NonPolynomial);
}

TEST_CASE("rational overflow is detected")
{
	Rational big(std::int64_t(1) << 62);
	CHECK_THROWS_AS(big * big, ArithmeticOverflow);
}

TEST_CASE("commuting total derivatives")
{
	Gen g(5);
	for (int n = 1; n <= 3; ++n)
	{
		JetContext ctx(n);
		ctx.add_field("u");
		ctx.add_field("c", Parity::Odd, 1);
		ctx.add_function("f");
		for (int trial = 0; trial < 40; ++trial)
		{
			Expr e = g.expr(ctx, 2);
			if (trial % 4 == 0)
				e *= ctx.fn("f");
			int a = g.uniform(0, n - 1), b = g.uniform(0, n - 1);
			CHECK(total_derivative(total_derivative(e, a), b) ==
			      total_derivative(total_derivative(e, b), a));
			Expr e2 = g.expr(ctx, 2);
			CHECK(total_derivative(e + e2, a) ==
			      total_derivative(e, a) + total_derivative(e2, a));
		}
	}
}

TEST_CASE("odd partials anticommute")
{
	Gen g(7);
	JetContext ctx(2);
	ctx.add_field("u");
	ctx.add_field("c", Parity::Odd, 1);
	ctx.add_field("d", Parity::Odd, 1);
	for (int trial = 0; trial < 60; ++trial)
	{
		Expr e = g.expr(ctx, 1, 4, 4);
		Var a = jetvar::testing::jet_of(ctx.y(1 + g.uniform(0, 1), g.multi_index(2, g.uniform(0, 1))));
		Var b = jetvar::testing::jet_of(ctx.y(1 + g.uniform(0, 1), g.multi_index(2, g.uniform(0, 1))));
		CHECK(partial(partial(e, b), a) == -partial(partial(e, a), b));
	}
}

TEST_CASE("Leibniz rule for even factors")
{
	Gen g(9);
	JetContext ctx(2);
	ctx.add_field("u");
	ctx.add_field("c", Parity::Odd, 1);
	for (int trial = 0; trial < 40; ++trial)
	{
		Expr a = g.even_expr(ctx, 2), b = g.expr(ctx, 2);
		CHECK(total_derivative(a * b, 1) ==
		      total_derivative(a, 1) * b + a * total_derivative(b, 1));
	}
}

TEST_CASE("text and json round trip")
{
	Gen g(13);
	JetContext ctx(2, {"t", "s"});
	ctx.add_field("u");
	ctx.add_field("c", Parity::Odd, 1);
	ctx.add_param("k");
	ctx.add_function("f", 0b01);
	for (int trial = 0; trial < 100; ++trial)
	{
		Expr e = g.expr(ctx, 2, 4, 3);
		if (trial % 5 == 0)
			e *= ctx.fn("f", mi({0})) + ctx.param("k");
		if (trial % 7 == 0)
			e = e + sin(ctx.x(0)) * pow(ctx.x(1) + Expr(1), Rational(-1, 2));
		std::string t = to_text(e, ctx);
		CHECK(parse_expr(t, ctx) == e);
		CHECK(to_text(parse_expr(t, ctx), ctx) == t);
		CHECK(expr_from_json(to_json(e, ctx), ctx) == e);
	}
	CHECK(to_text(parse_expr("(* 2 u[1,2] u)", ctx), ctx) == "(* 2 u u[1,2])");
	CHECK(to_text(Expr(), ctx) == "0");
	CHECK(parse_expr("(- u (/ u 2))", ctx) == Expr(Rational(1, 2)) * ctx.y("u"));
}

TEST_CASE("parse errors carry positions")
{
	JetContext ctx(1);
	ctx.add_field("y");
	try
	{
		parse_expr("(+ y\n   zz)", ctx);
		FAIL("expected a parse error");
	}
	catch (ParseError const &e)
	{
		CHECK(e.line == 2);
		CHECK(e.column == 4);
	}
	CHECK_THROWS_AS(parse_expr("(+ y", ctx), ParseError);
	CHECK_THROWS_AS(parse_expr("y[2]", ctx), ParseError);
}
