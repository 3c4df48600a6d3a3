#include "doctest.h"

#include "gen.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/io.hpp"

using namespace jetvar;
using jetvar::testing::Gen;
using jetvar::testing::jet_of;

namespace {

MultiIndex mi(std::initializer_list<int> dirs)
{
	MultiIndex m;
	for (int d : dirs)
		m = m.plus(d);
	return m;
}

Form th(JetContext const &ctx, std::string const &f, MultiIndex m = {})
{
	return Form::theta(ctx.jet_var(ctx.field_id(f), m));
}

JetContext mixed(int n)
{
	JetContext ctx(n);
	ctx.add_field("u");
	ctx.add_field("w");
	ctx.add_field("c", Parity::Odd, 1);
	return ctx;
}

// random projectable field: base parts in x, fibre parts in (x, y)
VectorField random_projectable(Gen &g, JetContext const &ctx)
{
	JetContext base_only(ctx.n());
	std::vector<Expr> base;
	for (int l = 0; l < ctx.n(); ++l)
		base.push_back(g.coin() ? g.even_expr(base_only, 0, 2, 2) : Expr());
	std::map<Var, Expr> fibre;
	for (int i : ctx.even_fields())
		fibre[ctx.jet_var(i)] = g.even_expr(ctx, 0, 2, 2);
	return projectable_field(base, fibre);
}

} // namespace

TEST_CASE("wedge examples")
{
	JetContext ctx(2);
	ctx.add_field("y");
	ctx.add_field("c", Parity::Odd, 1);
	CHECK(wedge(Form::dx(0), Form::dx(0)).empty());
	Form c = th(ctx, "c");
	CHECK(wedge(Form::dx(1), c) == -wedge(c, Form::dx(1)));
	Form cc = wedge(c, c);
	CHECK_FALSE(cc.empty());
	CHECK(cc.bidegrees() == std::set<std::pair<int, int>>{{2, 0}});
	Form y = th(ctx, "y");
	CHECK(wedge(y, y).empty());
	CHECK(wedge(y, c) == -wedge(c, y));
}

TEST_CASE("d_H and d_V tables")
{
	JetContext ctx(2);
	ctx.add_field("y");
	ctx.add_function("f");
	Expr y = ctx.y("y");
	// d_H on a function
	Expr f = ctx.fn("f") * y * y;
	Form expect;
	for (int l = 0; l < 2; ++l)
		expect += (partial_base(f, l) + ctx.y("y", mi({l})) * partial(f, ctx.jet_var(0))) *
		          Form::dx(l);
	CHECK(d_H(Form(f), ctx) == expect);
	CHECK(d_H(Form::dx(1), ctx).empty());
	Form dth;
	for (int l = 0; l < 2; ++l)
		dth += wedge(Form::dx(l), th(ctx, "y", mi({l})));
	CHECK(d_H(th(ctx, "y"), ctx) == dth);

	JetContext c1(1);
	c1.add_field("y");
	Expr y0 = c1.y("y"), y1 = c1.y("y", mi({0}));
	CHECK(d_V(Form(y1)) == th(c1, "y", mi({0})));
	CHECK(d_V(Form::dx(0)).empty());
	Form dv = d_V(Form(y0 * y1));
	CHECK(dv == y1 * th(c1, "y") + y0 * th(c1, "y", mi({0})));
	CHECK(dv == exterior_d(Form(y0 * y1), c1) - d_H(Form(y0 * y1), c1));
	CHECK(exterior_d(Form(y0), c1) == y1 * Form::dx(0) + th(c1, "y"));
	CHECK(exterior_d(Form::dx(0), c1).empty());
}

TEST_CASE("horizontal projection")
{
	JetContext ctx(2);
	ctx.add_field("y");
	CHECK(h0(th(ctx, "y")).empty());
	Form dy = from_dy_basis(th(ctx, "y"), ctx);
	Form expect;
	for (int l = 0; l < 2; ++l)
		expect += ctx.y("y", mi({l})) * Form::dx(l);
	CHECK(h0(dy) == expect);
	Form t = wedge(Form::dx(0), th(ctx, "y"));
	CHECK(h_projection(t, 0, 1).empty());
	CHECK(h_projection(t, 1, 1) == t);
}

TEST_CASE("dy basis round trip")
{
	Gen g(21);
	JetContext ctx = mixed(2);
	for (int trial = 0; trial < 40; ++trial)
	{
		Form f = g.form_up_to(ctx, 2, 2, 2);
		CHECK(from_dy_basis(to_dy_basis(f, ctx), ctx) == f);
		CHECK(parse_form(to_text(f, ctx, Basis::Dy), ctx) == f);
		CHECK(parse_form(to_text(f, ctx), ctx) == f);
		CHECK(form_from_json(to_json(f, ctx, Basis::Dy), ctx) == f);
	}
}

TEST_CASE("interior product examples")
{
	JetContext ctx(2);
	ctx.add_field("y");
	ctx.add_field("z");
	for (int l = 0; l < 2; ++l)
		for (int m = 0; m < 2; ++m)
		{
			std::vector<Expr> b(2);
			b[std::size_t(l)] = Expr(1);
			auto u = make_vector_field(b);
			CHECK(interior_product(u, Form::dx(m)) == Form(Expr(l == m ? 1 : 0)));
		}
	auto dy = make_vector_field({}, {{ctx.jet_var(0), Expr(1)}});
	CHECK(interior_product(dy, th(ctx, "y")) == Form(Expr(1)));
	CHECK(interior_product(dy, th(ctx, "z")).empty());
	auto d1 = make_vector_field({Expr(1), Expr()});
	CHECK(interior_product(d1, wedge(Form::dx(0), Form::dx(1))) == Form::dx(1));
	CHECK_THROWS_AS(interior_product(d1, Form(ctx.y("y"))), DegreeError);
	// contraction beyond the declared order is refused
	auto low = make_vector_field({}, {{ctx.jet_var(0), Expr(1)}}, 0);
	CHECK_THROWS_AS(interior_product(low, th(ctx, "y", mi({0}))), OrderError);
}

TEST_CASE("Lie derivative examples")
{
	JetContext ctx(2);
	ctx.add_field("y");
	auto d1 = make_vector_field({Expr(1), Expr()});
	CHECK(lie_derivative(d1, ctx.x(0) * Form::dx(1), ctx) == Form::dx(1));
	Gen g(3);
	for (int trial = 0; trial < 20; ++trial)
	{
		auto u = random_projectable(g, ctx);
		Expr f = g.even_expr(ctx, 0);
		CHECK(lie_derivative(u, Form(f), ctx) == Form(apply(u, f)));
		Form phi = g.form_up_to(ctx, 1, 1, 0);
		CHECK(lie_derivative(u, exterior_d(phi, ctx), ctx) ==
		      exterior_d(lie_derivative(u, phi, ctx), ctx));
		Form psi = g.form_up_to(ctx, 1, 1, 0);
		CHECK(lie_derivative(u, wedge(phi, psi), ctx) ==
		      wedge(lie_derivative(u, phi, ctx), psi) + wedge(phi, lie_derivative(u, psi, ctx)));
	}
}

TEST_CASE("prolongation examples")
{
	JetContext ctx(1);
	ctx.add_field("y");
	Expr y = ctx.y("y"), y1 = ctx.y("y", mi({0}));
	auto shift = projectable_field({Expr(1)}, {});
	auto j1 = prolong_vector_field(shift, 1, ctx);
	CHECK(j1.fibre.empty());
	auto scale = projectable_field({Expr()}, {{ctx.jet_var(0), y}});
	auto js = prolong_vector_field(scale, 1, ctx);
	CHECK(js.component(ctx.jet_var(0)) == y);
	CHECK(js.component(ctx.jet_var(0, mi({0}))) == y1);
	auto dil = projectable_field({ctx.x(0)}, {});
	auto jd = prolong_vector_field(dil, 1, ctx);
	CHECK(jd.component(ctx.jet_var(0, mi({0}))) == -y1);
	CHECK(jd.base_component(0) == ctx.x(0));
	auto bad = make_vector_field({y}, {});
	CHECK_THROWS_AS(prolong_vector_field(bad, 1, ctx), NotProjectable);
}

TEST_CASE("horizontal splitting")
{
	JetContext ctx(2);
	ctx.add_field("y");
	auto d1 = projectable_field({Expr(1), Expr()}, {});
	auto u = prolong_vector_field(d1, 2, ctx);
	auto [h, v] = split_vector_field(u, ctx);
	for (int o = 0; o <= 2; ++o)
		for (auto const &m : multi_indices(2, o))
		{
			Var w = ctx.jet_var(0, m);
			CHECK(v.component(w) == -Expr::var(w.shifted(0)));
			CHECK(equal(h + v, u));
		}
	auto vert = make_vector_field({}, {{ctx.jet_var(0), ctx.y("y")}}, 0);
	auto [h2, v2] = split_vector_field(vert, ctx);
	CHECK(h2.is_zero());
	CHECK(equal(v2, vert));
}

TEST_CASE("canonical lifts to tensor bundles")
{
	JetContext ctx(2);
	auto tb = declare_tensor_bundle(ctx, "v", 1, 0);
	auto cb = declare_tensor_bundle(ctx, "w", 0, 1);
	auto l1 = canonical_lift_tensor({Expr(1), Expr()}, tb, ctx);
	CHECK(l1.fibre.empty());
	auto lt = canonical_lift_tensor({ctx.x(1), Expr()}, tb, ctx);
	CHECK(lt.component(ctx.jet_var(ctx.field_id("v1"))) == ctx.y("v2"));
	CHECK(lt.component(ctx.jet_var(ctx.field_id("v2"))).empty());
	auto lc = canonical_lift_tensor({ctx.x(1), Expr()}, cb, ctx);
	CHECK(lc.component(ctx.jet_var(ctx.field_id("w_2"))) == -ctx.y("w_1"));
	CHECK(lc.component(ctx.jet_var(ctx.field_id("w_1"))).empty());
}

TEST_CASE("bicomplex nilpotency")
{
	Gen g(17);
	for (int n = 1; n <= 3; ++n)
	{
		JetContext ctx = mixed(n);
		for (int trial = 0; trial < 25; ++trial)
		{
			Form phi = g.form_up_to(ctx, 2, n - 1, 3);
			CHECK(d_H(d_H(phi, ctx), ctx).empty());
			CHECK(d_V(d_V(phi)).empty());
			CHECK((d_V(d_H(phi, ctx)) + d_H(d_V(phi), ctx)).empty());
			CHECK(exterior_d(exterior_d(phi, ctx), ctx).empty());
			CHECK(h0(exterior_d(phi, ctx)) == d_H(h0(phi), ctx));
		}
	}
}

TEST_CASE("graded interior product rule")
{
	Gen g(19);
	JetContext ctx = mixed(2);
	for (int trial = 0; trial < 40; ++trial)
	{
		auto u = make_vector_field({g.even_expr(ctx, 1), g.even_expr(ctx, 1)},
		                           {{ctx.jet_var(0), g.even_expr(ctx, 1)},
		                            {ctx.jet_var(0, mi({0})), g.even_expr(ctx, 1)},
		                            {ctx.jet_var(1, mi({1})), g.even_expr(ctx, 1)},
		                            {ctx.jet_var(2), g.even_expr(ctx, 1) * ctx.y("c")}},
		                           1);
		// an odd vector field: ∂/∂c with even coefficient
		auto uo = make_vector_field({}, {{ctx.jet_var(2), g.even_expr(ctx, 1)},
		                                 {ctx.jet_var(2, mi({0})), g.even_expr(ctx, 1)}},
		                            1);
		Form phi = g.form(ctx, g.uniform(0, 1), g.uniform(0, 1), 1, 1);
		Form sig = g.form(ctx, g.uniform(0, 1), g.uniform(0, 1), 1, 1);
		if (phi.empty() || sig.empty())
			continue;
		int deg = phi.terms().begin()->first.degree();
		int par = std::max(0, phi.parity());
		if (deg == 0 && sig.terms().begin()->first.degree() == 0)
			continue;
		for (auto const *w : {&u, &uo})
		{
			int pu = std::max(0, w->parity());
			Form lhs = interior_product(*w, wedge(phi, sig));
			Form left = deg ? wedge(interior_product(*w, phi), sig) : Form();
			bool sig0 = sig.terms().begin()->first.degree() == 0;
			Form right = sig0 ? Form() : wedge(phi, interior_product(*w, sig));

			int sgn = ((deg + par * pu) % 2) ? -1 : 1;
			CHECK(lhs == left + (sgn > 0 ? right : -right));
		}
	}
}

TEST_CASE("bracket contraction identity")
{
	Gen g(23);
	JetContext ctx(2);
	ctx.add_field("y");
	for (int trial = 0; trial < 20; ++trial)
	{
		auto u = prolong_vector_field(random_projectable(g, ctx), 1, ctx);
		auto v = prolong_vector_field(random_projectable(g, ctx), 1, ctx);
		Form phi = g.form(ctx, g.uniform(0, 1), 1 - 0, 0, 2);
		if (g.coin())
			phi = g.form(ctx, 1, 0, 0, 2);
		Form lhs = interior_product(bracket(u, v), phi);
		Form rhs = lie_derivative(u, interior_product(v, phi), ctx) -
		           interior_product(v, lie_derivative(u, phi, ctx));
		CHECK(is_zero(lhs - rhs));
	}
}

TEST_CASE("prolongation preserves brackets")
{
	Gen g(29);
	for (int n = 1; n <= 2; ++n)
	{
		JetContext ctx(n);
		ctx.add_field("y");
		ctx.add_field("z");
		for (int trial = 0; trial < 15; ++trial)
		{
			auto u = random_projectable(g, ctx), v = random_projectable(g, ctx);
			auto lhs = prolong_vector_field(bracket(u, v), 2, ctx);
			auto rhs = bracket(prolong_vector_field(u, 2, ctx), prolong_vector_field(v, 2, ctx));
			CHECK(equal(lhs, rhs));
		}
	}
}
