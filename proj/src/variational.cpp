#include "jetvar/variational.hpp"

#include <algorithm>
#include <set>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

void require_top_degree(Form const &phi, JetContext const &ctx)
{
	for (auto const &[b, c] : phi.terms())
		if (b.horizontal_degree() != ctx.n())
			throw DegreeError("expected horizontal degree " + std::to_string(ctx.n()));
}

void require_first_order(Expr const &density)
{
	if (jet_order(density) > 1)
		throw OrderError("operation is defined for first-order Lagrangians only");
}

void require_projectable(VectorField const &u)
{
	for (auto const &b : u.base)
		if (b.has_jets())
			throw NotProjectable("base components must depend on x only");
	for (auto const &[v, c] : u.fibre)
		if (v.mi.order() > 0 && !u.projectable)
			throw NotProjectable("projectable fields carry order-0 components only");
}

Form total_derivative(Form phi, MultiIndex const &lambda)
{
	for (int l : lambda)
		phi = jetvar::total_derivative(phi, l);
	return phi;
}

int max_theta_order(Form const &phi)
{
	int m = 0;
	for (auto const &[b, c] : phi.terms())
		for (auto const &v : b.theta)
			m = std::max(m, v.mi.order());
	return m;
}

// τ̄(φ) = Σ (−1)^{|Λ|} θ^i ∧ d_Λ(∂^Λ_i⌋φ)
Form tau_bar(Form const &phi)
{
	std::set<Var> thetas;
	for (auto const &[b, c] : phi.terms())
		thetas.insert(b.theta.begin(), b.theta.end());
	int order = max_theta_order(phi);
	Form r;
	for (auto const &v : thetas)
	{
		VectorField dv = make_vector_field({}, {{v, Expr(1)}}, order);
		Form t = total_derivative(interior_product(dv, phi), v.mi);
		t = wedge(Form::theta(Var::jet(v.index, {}, v.odd)), t);
		if (v.mi.order() % 2)
			r -= t;
		else
			r += t;
	}
	return r;
}

Expr contraction_theta(VectorField const &u, int field, JetContext const &ctx)
{
	Expr r = u.component(ctx.jet_var(field));
	for (int mu = 0; mu < ctx.n(); ++mu)
	{
		Expr um = u.base_component(mu);
		if (!um.empty())
			r -= ctx.y(field, {mu}) * um;
	}
	return r;
}

bool polynomial(Expr const &e)
{
	if (e.has_atoms())
		return false;
	for (auto const &[m, c] : e.terms())
		for (auto const &[v, k] : m.even)
			if (k < 0)
				return false;
	return true;
}

int base_degree(Monomial const &m)
{
	int d = 0;
	for (auto const &[v, k] : m.even)
		if (v.kind == VarKind::Base)
			d += k;
	return d;
}

} // namespace

Form lagrangian_form(Expr const &density, JetContext const &ctx)
{
	return density * Form::volume(ctx.n());
}

Form volume_minus(int lambda, JetContext const &ctx)
{
	std::vector<Expr> base(std::size_t(ctx.n()));
	base[std::size_t(lambda)] = Expr(1);
	return interior_product(make_vector_field(base), Form::volume(ctx.n()));
}

Form volume_minus(int mu, int lambda, JetContext const &ctx)
{
	std::vector<Expr> base(std::size_t(ctx.n()));
	base[std::size_t(mu)] = Expr(1);
	return interior_product(make_vector_field(base), volume_minus(lambda, ctx));
}

Form tau(Form const &phi, JetContext const &ctx)
{
	require_top_degree(phi, ctx);
	int kmax = 0;
	for (auto const &[b, c] : phi.terms())
		kmax = std::max(kmax, b.contact_degree());
	Form r;
	for (int k = 1; k <= kmax; ++k)
	{
		Form part = h_projection(phi, k, ctx.n());
		if (part.empty())
			continue;
		r += Expr(Rational(1, k)) * tau_bar(part);
	}
	return r;
}

Form variational_delta(Form const &phi, JetContext const &ctx)
{
	require_top_degree(phi, ctx);
	return tau(exterior_d(phi, ctx), ctx);
}

std::vector<Expr> variational_derivatives(Expr const &density, JetContext const &ctx)
{
	std::vector<Expr> out(std::size_t(ctx.field_count()));
	int order = std::max(jet_order(density), 0);
	for (int i = 0; i < ctx.field_count(); ++i)
		for (int k = 0; k <= order; ++k)
			for (auto const &mi : multi_indices(ctx.n(), k))
			{
				Expr d = partial(density, ctx.jet_var(i, mi));
				if (d.empty())
					continue;
				d = total_derivative(d, mi);
				if (k % 2)
					out[std::size_t(i)] -= d;
				else
					out[std::size_t(i)] += d;
			}
	return out;
}

Form euler_lagrange(Expr const &density, JetContext const &ctx)
{
	auto dl = variational_derivatives(density, ctx);
	Form omega = Form::volume(ctx.n());
	Form r;
	for (int i = 0; i < ctx.field_count(); ++i)
		if (!dl[std::size_t(i)].empty())
			r += wedge(Form::theta(ctx.jet_var(i)), dl[std::size_t(i)] * omega);
	return r;
}

std::vector<std::vector<Expr>> momenta(Expr const &density, JetContext const &ctx)
{
	std::vector<std::vector<Expr>> p(std::size_t(ctx.n()),
	                                 std::vector<Expr>(std::size_t(ctx.field_count())));
	for (int l = 0; l < ctx.n(); ++l)
		for (int i = 0; i < ctx.field_count(); ++i)
			p[std::size_t(l)][std::size_t(i)] = partial(density, ctx.jet_var(i, {l}));
	return p;
}

LegendreData legendre_map(Expr const &density, JetContext const &ctx)
{
	require_first_order(density);
	LegendreData r;
	r.p = momenta(density, ctx);
	r.frame = density;
	for (int l = 0; l < ctx.n(); ++l)
		for (int i = 0; i < ctx.field_count(); ++i)
			r.frame -= r.p[std::size_t(l)][std::size_t(i)] * ctx.y(i, {l});
	return r;
}

Form poincare_cartan(Expr const &density, JetContext const &ctx)
{
	require_first_order(density);
	auto p = momenta(density, ctx);
	Form r = lagrangian_form(density, ctx);
	for (int l = 0; l < ctx.n(); ++l)
	{
		Form wl = volume_minus(l, ctx);
		for (int i = 0; i < ctx.field_count(); ++i)
		{
			Expr const &pi = p[std::size_t(l)][std::size_t(i)];
			if (!pi.empty())
				r += pi * wedge(Form::theta(ctx.jet_var(i)), wl);
		}
	}
	return r;
}

Expr lie_derivative_lagrangian(Expr const &density, VectorField const &u, JetContext const &ctx)
{
	require_projectable(u);
	Expr r;
	for (int l = 0; l < ctx.n(); ++l)
	{
		Expr ul = u.base_component(l);
		if (ul.empty())
			continue;
		r += partial_base(ul, l) * density;
		r += ul * partial_base(density, l);
	}
	for (int i = 0; i < ctx.field_count(); ++i)
	{
		Expr ui = u.component(ctx.jet_var(i));
		if (!ui.empty())
			r += ui * partial(density, ctx.jet_var(i));
		for (int l = 0; l < ctx.n(); ++l)
		{
			Expr dp = partial(density, ctx.jet_var(i, {l}));
			if (dp.empty())
				continue;
			Expr c = total_derivative(ui, l);
			for (int mu = 0; mu < ctx.n(); ++mu)
				c -= ctx.y(i, {mu}) * partial_base(u.base_component(mu), l);
			r += c * dp;
		}
	}
	return r;
}

namespace {

// 𝔗^λ = π^λ_i(u^μy^i_μ − u^i) − u^λℒ
std::vector<Expr> symmetry_current(Expr const &density, VectorField const &u,
                                   JetContext const &ctx)
{
	auto p = momenta(density, ctx);
	std::vector<Expr> cur(std::size_t(ctx.n()));
	for (int l = 0; l < ctx.n(); ++l)
	{
		Expr t = -(u.base_component(l) * density);
		for (int i = 0; i < ctx.field_count(); ++i)
		{
			Expr const &pi = p[std::size_t(l)][std::size_t(i)];
			if (!pi.empty())
				t -= pi * contraction_theta(u, i, ctx);
		}
		cur[std::size_t(l)] = t;
	}
	return cur;
}

} // namespace

FirstVariation first_variational_formula(Expr const &density, VectorField const &u,
                                         JetContext const &ctx)
{
	require_first_order(density);
	FirstVariation r;
	r.lie = lie_derivative_lagrangian(density, u, ctx);
	auto dl = variational_derivatives(density, ctx);
	for (int i = 0; i < ctx.field_count(); ++i)
		if (!dl[std::size_t(i)].empty())
			r.el += contraction_theta(u, i, ctx) * dl[std::size_t(i)];
	auto cur = symmetry_current(density, u, ctx);
	for (int l = 0; l < ctx.n(); ++l)
		r.boundary -= total_derivative(cur[std::size_t(l)], l);
	r.identity = is_zero(r.lie - r.el - r.boundary);
	return r;
}

NoetherCurrent noether_current(Expr const &density, VectorField const &u,
                               JetContext const &ctx)
{
	require_first_order(density);
	NoetherCurrent r;
	r.current = symmetry_current(density, u, ctx);
	r.lie = lie_derivative_lagrangian(density, u, ctx);
	for (int l = 0; l < ctx.n(); ++l)
		r.divergence += total_derivative(r.current[std::size_t(l)], l);
	auto dl = variational_derivatives(density, ctx);
	Expr rhs;
	for (int i = 0; i < ctx.field_count(); ++i)
	{
		r.coefficients.push_back(contraction_theta(u, i, ctx));
		rhs += r.coefficients.back() * dl[std::size_t(i)];
	}
	r.identity = is_zero(r.divergence + r.lie - rhs);
	return r;
}

bool is_variationally_trivial(Expr const &density, JetContext const &ctx)
{
	for (auto const &e : variational_derivatives(density, ctx))
		if (!is_zero(e))
			return false;
	return true;
}

Form contact_antiderivative(Form const &omega, JetContext const &ctx)
{
	int n = ctx.n();
	int s = -1;
	for (auto const &[b, c] : omega.terms())
	{
		if (b.contact_degree() != 1)
			throw DegreeError("contact antiderivative needs contact degree 1");
		if (s >= 0 && b.horizontal_degree() != s)
			throw DegreeError("form is not homogeneous");
		s = b.horizontal_degree();
	}
	if (s < 0)
		return {};
	if (s >= n)
		throw DegreeError("horizontal degree must be below the base dimension");
	Form xi;
	Form rest = omega;
	while (!rest.empty())
	{
		int top = max_theta_order(rest);
		if (top == 0)
			throw NotClosed("form is not d_H-closed");
		// Koszul homotopy on the top-order symbol: Σ_λ ∂_{ξ_λ} ⊗ (right contraction by ∂_λ)
		Form::TermMap r;
		Rational scale(1, top + n - s);
		for (auto const &[b, c] : rest.terms())
		{
			Var const &v = b.theta[0];
			if (v.mi.order() != top)
				continue;
			for (int l = 0; l < n; ++l)
			{
				int mult = v.mi.count(l);
				if (mult == 0 || !(b.dx >> l & 1u))
					continue;
				FormBasis nb;
				nb.dx = b.dx & ~(1u << l);
				nb.theta.push_back(Var{v.kind, v.odd, v.index, *v.mi.minus(l)});
				int above = __builtin_popcount(b.dx >> l >> 1);
				Rational k = scale * Rational(mult);
				if (above % 2)
					k = -k;
				if ((s - 1) % 2)
					k = -k;
				Expr t = c;
				t *= k;
				auto [it, ins] = r.try_emplace(nb, t);
				if (!ins)
					it->second += t;
			}
		}
		Form step = Form::from_terms(std::move(r));
		xi += step;
		rest -= d_H(step, ctx);
		if (!rest.empty() && max_theta_order(rest) >= top)
			throw NotClosed("form is not d_H-closed");
	}
	return xi;
}

Antiderivative horizontal_antiderivative(Form const &sigma, JetContext const &ctx)
{
	Antiderivative out;
	if (sigma.empty())
		return out;
	int n = ctx.n();
	int s = -1;
	for (auto const &[b, c] : sigma.terms())
	{
		if (b.contact_degree() != 0)
			throw DegreeError("horizontal antiderivative needs a horizontal form");
		if (s >= 0 && b.horizontal_degree() != s)
			throw DegreeError("form is not homogeneous");
		s = b.horizontal_degree();
		if (!polynomial(c))
			throw NonPolynomial("coefficients must be polynomial");
	}
	if (s >= n)
		throw DegreeError("horizontal degree must be below the base dimension");
	if (!is_zero(d_H(sigma, ctx)))
		throw NotClosed("form is not d_H-closed");

	// split by jet degree; the jet-degree-0 part further by x-weight
	std::map<int, Form::TermMap> by_jet;
	std::map<int, Form::TermMap> by_weight;
	Form::TermMap constant;
	for (auto const &[b, c] : sigma.terms())
		for (auto const &[m, part] : split_by_jet_degree(c))
		{
			if (m > 0)
			{
				by_jet[m][b] += part;
				continue;
			}
			for (auto const &[mono, q] : part.terms())
			{
				int p = base_degree(mono);
				Expr t = Expr::monomial(mono, q);
				if (p == 0)
					constant[b] += t;
				else
					by_weight[p + s][b] += t;
			}
		}
	out.obstruction = Form::from_terms(std::move(constant));

	std::vector<Expr> euler(static_cast<std::size_t>(n));
	for (int l = 0; l < n; ++l)
		euler[std::size_t(l)] = ctx.x(l);
	VectorField radial = make_vector_field(euler);
	for (auto &[w, t] : by_weight)
		out.xi += Expr(Rational(1, w)) * interior_product(radial, Form::from_terms(std::move(t)));

	for (auto &[m, t] : by_jet)
	{
		Form part = Form::from_terms(std::move(t));
		Form eta = contact_antiderivative(d_V(part), ctx);
		std::map<Var, Expr> scaling;
		for (auto const &[b, c] : eta.terms())
			for (auto const &v : b.theta)
				scaling.emplace(v, Expr::var(v));
		VectorField y = make_vector_field({}, scaling, max_theta_order(eta));
		out.xi -= Expr(Rational(1, m)) * interior_product(y, eta);
	}

	if (!(d_H(out.xi, ctx) + out.obstruction == sigma))
		throw NotClosed("antiderivative failed re-derivation check");
	return out;
}

bool helmholtz_check(Form const &source, JetContext const &ctx)
{
	for (auto const &[b, c] : source.terms())
		if (b.contact_degree() != 1 || b.horizontal_degree() != ctx.n())
			throw DegreeError("source form must have bidegree (1, n)");
	return is_zero(variational_delta(source, ctx));
}

LieElReport lie_derivative_el(Expr const &density, VectorField const &u, JetContext const &ctx)
{
	require_first_order(density);
	require_projectable(u);
	LieElReport r;
	Form el = euler_lagrange(density, ctx);
	VectorField pu = prolong_vector_field(u, std::max(el.jet_order(), 0) + 1, ctx);
	r.lhs = lie_derivative(pu, el, ctx);
	r.rhs = euler_lagrange(lie_derivative_lagrangian(density, u, ctx), ctx);
	r.equal = is_zero(r.lhs - r.rhs);
	return r;
}

} // namespace jetvar
