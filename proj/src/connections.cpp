#include "jetvar/connections.hpp"

#include <optional>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

void check_shape(std::vector<int> const &fibre, std::vector<std::vector<Expr>> const &comps,
                 JetContext const &ctx)
{
	if (comps.size() != fibre.size())
		throw KindError("connection needs one component row per fibre coordinate");
	for (auto const &row : comps)
		if (int(row.size()) != ctx.n())
			throw KindError("connection row must have n components");
	for (int f : fibre)
		if (ctx.field(f).odd())
			throw KindError("connection fibre coordinates must be even");
}

Expr fibre_partial(Expr const &e, int field, JetContext const &ctx)
{
	return partial(e, ctx.jet_var(field));
}

Expr on_section(Expr const &e, std::vector<int> const &fibre, std::vector<Expr> const &s,
                JetContext const &ctx)
{
	return substitute(e, [&](Var const &v) -> std::optional<Expr> {
		if (!v.is_jet() || !v.mi.empty())
			return std::nullopt;
		for (std::size_t i = 0; i < fibre.size(); ++i)
			if (v == ctx.jet_var(fibre[i]))
				return s[i];
		return std::nullopt;
	});
}

} // namespace

Connection general_connection(std::vector<int> fibre, std::vector<std::vector<Expr>> comps,
                              JetContext const &ctx)
{
	check_shape(fibre, comps, ctx);
	for (auto const &row : comps)
		for (auto const &e : row)
			if (jet_order(e) > 0)
				throw OrderError("connection components depend on (x, y) only");
	return {ConnectionKind::General, std::move(fibre), std::move(comps)};
}

Connection linear_connection(std::vector<int> fibre, LinearCoefficients const &coeff,
                             JetContext const &ctx)
{
	std::vector<std::vector<Expr>> sigma(fibre.size(), std::vector<Expr>(static_cast<std::size_t>(ctx.n())));
	Connection c = affine_connection(std::move(fibre), coeff, sigma, ctx);
	c.kind = ConnectionKind::Linear;
	return c;
}

Connection affine_connection(std::vector<int> fibre, LinearCoefficients const &coeff,
                             std::vector<std::vector<Expr>> const &sigma, JetContext const &ctx)
{
	std::size_t m = fibre.size();
	int n = ctx.n();
	if (coeff.size() != std::size_t(n))
		throw KindError("linear coefficients need n rows");
	std::vector<std::vector<Expr>> comps(m, std::vector<Expr>(static_cast<std::size_t>(n)));
	for (int l = 0; l < n; ++l)
		for (std::size_t i = 0; i < m; ++i)
		{
			Expr c = sigma.at(i).at(std::size_t(l));
			for (std::size_t j = 0; j < m; ++j)
			{
				Expr const &a = coeff[std::size_t(l)].at(i).at(j);
				if (a.has_jets())
					throw KindError("linear coefficients depend on x only");
				c += a * ctx.y(fibre[j]);
			}
			if (sigma[i][std::size_t(l)].has_jets())
				throw KindError("affine shift depends on x only");
			comps[i][std::size_t(l)] = c;
		}
	Connection r = general_connection(std::move(fibre), std::move(comps), ctx);
	r.kind = ConnectionKind::Affine;
	return r;
}

LinearCoefficients linear_coefficients(Connection const &gamma, JetContext const &ctx)
{
	int n = ctx.n();
	std::size_t m = gamma.fibre.size();
	LinearCoefficients c(static_cast<std::size_t>(n), std::vector<std::vector<Expr>>(m, std::vector<Expr>(m)));
	for (int l = 0; l < n; ++l)
		for (std::size_t i = 0; i < m; ++i)
		{
			Expr rest = gamma.comps[i][std::size_t(l)];
			for (std::size_t j = 0; j < m; ++j)
			{
				Expr a = fibre_partial(gamma.comps[i][std::size_t(l)], gamma.fibre[j], ctx);
				if (a.has_jets())
					throw KindError("connection is not affine in the fibre coordinates");
				c[std::size_t(l)][i][j] = a;
				rest -= a * ctx.y(gamma.fibre[j]);
			}
			if (rest.has_jets())
				throw KindError("connection is not affine in the fibre coordinates");
			if (gamma.kind == ConnectionKind::Linear && !rest.empty())
				throw KindError("linear connection has an inhomogeneous term");
		}
	return c;
}

std::vector<std::vector<Expr>> affine_shift(Connection const &gamma, JetContext const &ctx)
{
	linear_coefficients(gamma, ctx);
	std::vector<Expr> zero(gamma.fibre.size());
	std::vector<std::vector<Expr>> s(gamma.fibre.size());
	for (std::size_t i = 0; i < gamma.fibre.size(); ++i)
		for (auto const &c : gamma.comps[i])
			s[i].push_back(on_section(c, gamma.fibre, zero, ctx));
	return s;
}

Connection associated_linear(Connection const &gamma, JetContext const &ctx)
{
	return linear_connection(gamma.fibre, linear_coefficients(gamma, ctx), ctx);
}

TangentValuedForm soldering_on(std::vector<int> const &fibre,
                               std::vector<std::vector<Expr>> const &sigma, JetContext const &ctx)
{
	ZChart z(ctx);
	TangentValuedForm r(1);
	for (std::size_t i = 0; i < fibre.size(); ++i)
		for (int l = 0; l < ctx.n(); ++l)
			r.set({l}, z.fibre(fibre[i]), sigma.at(i).at(std::size_t(l)));
	return r;
}

TangentValuedForm to_tangent_valued(Connection const &gamma, JetContext const &ctx)
{
	return canonical_form(ctx) + soldering_on(gamma.fibre, gamma.comps, ctx);
}

std::vector<std::vector<Expr>> covariant_differential(Connection const &gamma,
                                                      JetContext const &ctx)
{
	auto r = gamma.comps;
	for (std::size_t i = 0; i < r.size(); ++i)
		for (int l = 0; l < ctx.n(); ++l)
			r[i][std::size_t(l)] =
			    ctx.y(gamma.fibre[i], MultiIndex().plus(l)) - r[i][std::size_t(l)];
	return r;
}

std::vector<std::vector<Expr>> cov_diff(Connection const &gamma, std::vector<Expr> const &s,
                                        JetContext const &ctx)
{
	if (s.size() != gamma.fibre.size())
		throw KindError("section needs one component per fibre coordinate");
	auto r = gamma.comps;
	for (std::size_t i = 0; i < r.size(); ++i)
		for (int l = 0; l < ctx.n(); ++l)
			r[i][std::size_t(l)] = partial_base(s[i], l) -
			                       on_section(gamma.comps[i][std::size_t(l)], gamma.fibre, s, ctx);
	return r;
}

std::vector<Expr> covariant_derivative(Connection const &gamma, std::vector<Expr> const &tau,
                                       std::vector<Expr> const &s, JetContext const &ctx)
{
	auto d = cov_diff(gamma, s, ctx);
	std::vector<Expr> r(d.size());
	for (std::size_t i = 0; i < d.size(); ++i)
		for (std::size_t l = 0; l < tau.size(); ++l)
			r[i] += tau[l] * d[i][l];
	return r;
}

TangentValuedForm curvature(Connection const &gamma, JetContext const &ctx)
{
	ZChart z(ctx);
	int n = ctx.n();
	std::size_t m = gamma.fibre.size();
	TangentValuedForm R(2);
	for (int l = 0; l < n; ++l)
		for (int mu = l + 1; mu < n; ++mu)
			for (std::size_t i = 0; i < m; ++i)
			{
				Expr const &gl = gamma.comps[i][std::size_t(l)];
				Expr const &gm = gamma.comps[i][std::size_t(mu)];
				Expr r = partial_base(gm, l) - partial_base(gl, mu);
				for (std::size_t j = 0; j < m; ++j)
				{
					r += gamma.comps[j][std::size_t(l)] * fibre_partial(gm, gamma.fibre[j], ctx);
					r -= gamma.comps[j][std::size_t(mu)] * fibre_partial(gl, gamma.fibre[j], ctx);
				}
				R.set({l, mu}, z.fibre(gamma.fibre[i]), r);
			}
	return R;
}

TangentValuedForm curvature_fn(Connection const &gamma, JetContext const &ctx)
{
	auto g = to_tangent_valued(gamma, ctx);
	return Expr(Rational(1, 2)) * fn_bracket(g, g, ctx);
}

std::vector<std::vector<LinearCoefficients::value_type>> linear_curvature(
    Connection const &gamma, JetContext const &ctx)
{
	auto G = linear_coefficients(gamma, ctx);
	int n = ctx.n();
	std::size_t m = gamma.fibre.size();
	std::vector<std::vector<LinearCoefficients::value_type>> R(
	    static_cast<std::size_t>(n), std::vector<LinearCoefficients::value_type>(
	                        static_cast<std::size_t>(n), std::vector<std::vector<Expr>>(m, std::vector<Expr>(m))));
	for (std::size_t l = 0; l < std::size_t(n); ++l)
		for (std::size_t mu = 0; mu < std::size_t(n); ++mu)
			for (std::size_t i = 0; i < m; ++i)
				for (std::size_t j = 0; j < m; ++j)
				{
					Expr r = partial_base(G[mu][i][j], int(l)) - partial_base(G[l][i][j], int(mu));
					for (std::size_t h = 0; h < m; ++h)
						r += G[l][h][j] * G[mu][i][h] - G[mu][h][j] * G[l][i][h];
					R[l][mu][i][j] = r;
				}
	return R;
}

TangentValuedForm torsion(Connection const &gamma, TangentValuedForm const &sigma,
                          JetContext const &ctx)
{
	ZChart z(ctx);
	int n = ctx.n();
	if (sigma.degree() != 1 && !sigma.empty())
		throw DegreeError("torsion needs a soldering 1-form");
	for (auto const &[k, c] : sigma.components())
		if (k.first[0] >= n || k.second < n)
			throw KindError("soldering form must be vertical-valued and horizontal");
	// Γ^j over every even fibre coordinate (zero outside gamma.fibre)
	std::vector<std::vector<Expr>> G(z.fields.size(), std::vector<Expr>(static_cast<std::size_t>(n)));
	for (std::size_t i = 0; i < gamma.fibre.size(); ++i)
		G[std::size_t(z.fibre(gamma.fibre[i]) - n)] = gamma.comps[i];
	auto t = [&](int l, int mu, std::size_t i) {
		int zi = n + int(i);
		Expr r = partial_base(sigma.get({mu}, zi), l);
		for (std::size_t j = 0; j < z.fields.size(); ++j)
		{
			r += G[j][std::size_t(l)] * z.partial(sigma.get({mu}, zi), n + int(j), ctx);
			r -= z.partial(G[i][std::size_t(l)], n + int(j), ctx) * sigma.get({mu}, n + int(j));
		}
		return r;
	};
	TangentValuedForm T(2);
	for (int l = 0; l < n; ++l)
		for (int mu = l + 1; mu < n; ++mu)
			for (std::size_t i = 0; i < z.fields.size(); ++i)
				T.set({l, mu}, n + int(i), t(l, mu, i) - t(mu, l, i));
	return T;
}

TangentValuedForm soldered_curvature(TangentValuedForm const &sigma, JetContext const &ctx)
{
	ZChart z(ctx);
	int n = ctx.n();
	TangentValuedForm rho(2);
	for (int l = 0; l < n; ++l)
		for (int mu = l + 1; mu < n; ++mu)
			for (int i = n; i < z.dim(); ++i)
			{
				Expr r;
				for (int j = n; j < z.dim(); ++j)
				{
					r += sigma.get({l}, j) * z.partial(sigma.get({mu}, i), j, ctx);
					r -= sigma.get({mu}, j) * z.partial(sigma.get({l}, i), j, ctx);
				}
				rho.set({l, mu}, i, r);
			}
	return rho;
}

ShiftedRelations shifted_connection_relations(Connection const &gamma,
                                              TangentValuedForm const &sigma,
                                              JetContext const &ctx)
{
	ShiftedRelations s;
	ZChart z(ctx);
	Connection shifted = gamma;
	// Γ' = Γ + σ over the union of fibre coordinates
	for (auto const &[k, c] : sigma.components())
	{
		int field = z.fields[std::size_t(k.second - z.n)];
		auto it = std::find(shifted.fibre.begin(), shifted.fibre.end(), field);
		if (it == shifted.fibre.end())
		{
			shifted.fibre.push_back(field);
			shifted.comps.emplace_back(static_cast<std::size_t>(ctx.n()));
			it = shifted.fibre.end() - 1;
		}
		shifted.comps[std::size_t(it - shifted.fibre.begin())][std::size_t(k.first[0])] += c;
	}
	shifted.kind = ConnectionKind::General;
	s.torsion = torsion(gamma, sigma, ctx);
	s.curvature = curvature(gamma, ctx);
	s.rho = soldered_curvature(sigma, ctx);
	s.shifted_torsion = torsion(shifted, sigma, ctx);
	s.shifted_curvature = curvature(shifted, ctx);
	s.torsion_ok = is_zero(s.shifted_torsion - s.torsion - Expr(2) * s.rho);
	s.curvature_ok = is_zero(s.shifted_curvature - s.curvature - s.rho - s.torsion);
	return s;
}

Connection dual_connection(Connection const &gamma, std::vector<int> dual_fibre,
                           JetContext const &ctx)
{
	if (gamma.kind != ConnectionKind::Linear && gamma.kind != ConnectionKind::World)
		throw KindError("dual connection needs a linear connection");
	if (dual_fibre.size() != gamma.fibre.size())
		throw KindError("dual fibre must match the rank");
	auto G = linear_coefficients(gamma, ctx);
	LinearCoefficients D = G;
	std::size_t m = gamma.fibre.size();
	for (std::size_t l = 0; l < G.size(); ++l)
		for (std::size_t i = 0; i < m; ++i)
			for (std::size_t j = 0; j < m; ++j)
				D[l][i][j] = -G[l][j][i];
	Connection r = linear_connection(std::move(dual_fibre), D, ctx);
	r.kind = gamma.kind == ConnectionKind::World ? ConnectionKind::Linear : r.kind;
	return r;
}

Connection tensor_product_connection(Connection const &g1, Connection const &g2,
                                     std::vector<std::vector<int>> const &product,
                                     JetContext const &ctx)
{
	for (auto const *g : {&g1, &g2})
		if (g->kind != ConnectionKind::Linear && g->kind != ConnectionKind::World)
			throw KindError("tensor product needs linear connections");
	auto A = linear_coefficients(g1, ctx), B = linear_coefficients(g2, ctx);
	std::size_t m1 = g1.fibre.size(), m2 = g2.fibre.size();
	if (product.size() != m1)
		throw KindError("product fibre has the wrong shape");
	std::vector<int> fibre;
	std::vector<std::vector<Expr>> comps;
	for (std::size_t i = 0; i < m1; ++i)
	{
		if (product[i].size() != m2)
			throw KindError("product fibre has the wrong shape");
		for (std::size_t a = 0; a < m2; ++a)
		{
			fibre.push_back(product[i][a]);
			std::vector<Expr> row(static_cast<std::size_t>(ctx.n()));
			for (int l = 0; l < ctx.n(); ++l)
			{
				Expr c;
				for (std::size_t j = 0; j < m1; ++j)
					c += A[std::size_t(l)][i][j] * ctx.y(product[j][a]);
				for (std::size_t b = 0; b < m2; ++b)
					c += B[std::size_t(l)][a][b] * ctx.y(product[i][b]);
				row[std::size_t(l)] = c;
			}
			comps.push_back(row);
		}
	}
	Connection r = general_connection(std::move(fibre), std::move(comps), ctx);
	r.kind = ConnectionKind::Linear;
	return r;
}

Connection composite_connection(std::vector<int> y_fibre,
                                std::vector<std::vector<Expr>> const &a_x,
                                std::vector<std::vector<Expr>> const &a_s,
                                Connection const &gamma, JetContext const &ctx)
{
	Connection r;
	r.fibre = gamma.fibre;
	r.comps = gamma.comps;
	for (std::size_t i = 0; i < y_fibre.size(); ++i)
	{
		r.fibre.push_back(y_fibre[i]);
		std::vector<Expr> row(static_cast<std::size_t>(ctx.n()));
		for (int l = 0; l < ctx.n(); ++l)
		{
			Expr c = a_x.at(i).at(std::size_t(l));
			for (std::size_t m = 0; m < gamma.fibre.size(); ++m)
				c += a_s.at(i).at(m) * gamma.comps[m][std::size_t(l)];
			row[std::size_t(l)] = c;
		}
		r.comps.push_back(row);
	}
	return general_connection(std::move(r.fibre), std::move(r.comps), ctx);
}

std::vector<std::vector<Expr>> vertical_covariant_differential(
    std::vector<int> const &y_fibre, std::vector<int> const &sigma_fibre,
    std::vector<std::vector<Expr>> const &a_x, std::vector<std::vector<Expr>> const &a_s,
    JetContext const &ctx)
{
	std::vector<std::vector<Expr>> r(y_fibre.size(), std::vector<Expr>(static_cast<std::size_t>(ctx.n())));
	for (std::size_t i = 0; i < y_fibre.size(); ++i)
		for (int l = 0; l < ctx.n(); ++l)
		{
			MultiIndex d = MultiIndex().plus(l);
			Expr c = ctx.y(y_fibre[i], d) - a_x.at(i).at(std::size_t(l));
			for (std::size_t m = 0; m < sigma_fibre.size(); ++m)
				c -= a_s.at(i).at(m) * ctx.y(sigma_fibre[m], d);
			r[i][std::size_t(l)] = c;
		}
	return r;
}

// ---- world connections ----------------------------------------------------------------

Expr determinant(std::vector<std::vector<Expr>> const &m)
{
	std::size_t n = m.size();
	if (n == 0)
		return Expr(1);
	if (n == 1)
		return m[0][0];
	Expr d;
	for (std::size_t c = 0; c < n; ++c)
	{
		if (m[0][c].empty())
			continue;
		std::vector<std::vector<Expr>> minor;
		for (std::size_t r = 1; r < n; ++r)
		{
			std::vector<Expr> row;
			for (std::size_t k = 0; k < n; ++k)
				if (k != c)
					row.push_back(m[r][k]);
			minor.push_back(row);
		}
		Expr t = m[0][c] * determinant(minor);
		d += c % 2 ? -t : t;
	}
	return d;
}

namespace {

// Gauss–Jordan over the rationals; nullopt unless every entry is constant
std::optional<std::vector<std::vector<Expr>>> constant_inverse(
    std::vector<std::vector<Expr>> const &m)
{
	std::size_t n = m.size();
	std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
	for (std::size_t i = 0; i < n; ++i)
	{
		for (std::size_t j = 0; j < n; ++j)
		{
			if (m[i][j].empty())
				continue;
			auto c = m[i][j].constant_value();
			if (!c)
				return std::nullopt;
			a[i][j] = *c;
		}
		a[i][n + i] = Rational(1);
	}
	for (std::size_t col = 0; col < n; ++col)
	{
		std::size_t piv = col;
		while (piv < n && a[piv][col].is_zero())
			++piv;
		if (piv == n)
			throw SingularMetric("metric determinant vanishes");
		std::swap(a[piv], a[col]);
		Rational inv = Rational(1) / a[col][col];
		for (auto &x : a[col])
			x *= inv;
		for (std::size_t r = 0; r < n; ++r)
		{
			if (r == col || a[r][col].is_zero())
				continue;
			Rational f = a[r][col];
			for (std::size_t k = 0; k < 2 * n; ++k)
				a[r][k] -= f * a[col][k];
		}
	}
	std::vector<std::vector<Expr>> out(n, std::vector<Expr>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			out[i][j] = Expr(a[i][n + j]);
	return out;
}

} // namespace

std::vector<std::vector<Expr>> inverse_metric(Metric const &g)
{
	int n = g.n;
	for (int a = 0; a < n; ++a)
		for (int b = 0; b < n; ++b)
		{
			if (g.g[std::size_t(a)][std::size_t(b)].has_jets())
				throw KindError("world metric depends on x only");
			if (!is_zero(g.g[std::size_t(a)][std::size_t(b)] - g.g[std::size_t(b)][std::size_t(a)]))
				throw KindError("metric is not symmetric");
		}
	Expr det = determinant(g.g);
	if (is_zero(det))
		throw SingularMetric("metric determinant vanishes");
	if (!g.inverse.empty())
		return g.inverse;
	if (auto c = constant_inverse(g.g))
		return *c;
	if (n > 3)
		throw KindError("cofactor inversion is limited to n <= 3; supply the inverse metric");
	Expr inv = pow(det, -1);
	std::vector<std::vector<Expr>> r(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
	for (int a = 0; a < n; ++a)
		for (int b = 0; b < n; ++b)
		{
			std::vector<std::vector<Expr>> minor;
			for (int i = 0; i < n; ++i)
			{
				if (i == b)
					continue;
				std::vector<Expr> row;
				for (int j = 0; j < n; ++j)
					if (j != a)
						row.push_back(g.g[std::size_t(i)][std::size_t(j)]);
				minor.push_back(row);
			}
			Expr c = determinant(minor) * inv;
			r[std::size_t(a)][std::size_t(b)] = (a + b) % 2 ? -c : c;
		}
	return r;
}

WorldConnection levi_civita(Metric const &g)
{
	auto gi = inverse_metric(g);
	int n = g.n;
	WorldConnection K(n);
	auto G = [&](int a, int b) -> Expr const & { return g.g[std::size_t(a)][std::size_t(b)]; };
	for (int l = 0; l < n; ++l)
		for (int v = 0; v < n; ++v)
			for (int m = 0; m < n; ++m)
			{
				Expr s;
				for (int r = 0; r < n; ++r)
				{
					Expr const &gvr = gi[std::size_t(v)][std::size_t(r)];
					if (gvr.empty())
						continue;
					s += gvr * (partial_base(G(r, m), l) + partial_base(G(r, l), m) -
					            partial_base(G(l, m), r));
				}
				s *= Rational(-1, 2);
				K(l, v, m) = s;
			}
	return K;
}

std::vector<std::vector<std::vector<Expr>>> metric_covariant_derivative(Metric const &g,
                                                                        WorldConnection const &K)
{
	auto gi = inverse_metric(g);
	int n = g.n;
	std::vector<std::vector<std::vector<Expr>>> r(
	    static_cast<std::size_t>(n), std::vector<std::vector<Expr>>(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n))));
	for (int l = 0; l < n; ++l)
		for (int a = 0; a < n; ++a)
			for (int b = 0; b < n; ++b)
			{
				Expr s = partial_base(gi[std::size_t(a)][std::size_t(b)], l);
				for (int c = 0; c < n; ++c)
				{
					s -= gi[std::size_t(a)][std::size_t(c)] * K(l, b, c);
					s -= gi[std::size_t(b)][std::size_t(c)] * K(l, a, c);
				}
				r[std::size_t(l)][std::size_t(a)][std::size_t(b)] = s;
			}
	return r;
}

WorldConnection physics_sign(WorldConnection const &K)
{
	WorldConnection r = K;
	for (auto &e : r.data)
		e = -e;
	return r;
}

WorldConnection symmetrized(WorldConnection const &K, Rational r)
{
	WorldConnection s(K.n);
	for (int l = 0; l < K.n; ++l)
		for (int m = 0; m < K.n; ++m)
			for (int v = 0; v < K.n; ++v)
			{
				Expr a = K(l, m, v), b = K(v, m, l);
				a *= r;
				b *= Rational(1) - r;
				s(l, m, v) = a + b;
			}
	return s;
}

WorldCurvature world_curvature(WorldConnection const &K)
{
	int n = K.n;
	WorldCurvature R;
	R.n = n;
	R.riemann.resize(std::size_t(n * n * n * n));
	R.ricci.resize(std::size_t(n * n));
	for (int l = 0; l < n; ++l)
		for (int m = 0; m < n; ++m)
			for (int a = 0; a < n; ++a)
				for (int b = 0; b < n; ++b)
				{
					Expr r = partial_base(K(m, a, b), l) - partial_base(K(l, a, b), m);
					for (int c = 0; c < n; ++c)
						r += K(l, c, b) * K(m, a, c) - K(m, c, b) * K(l, a, c);
					R.riemann[std::size_t(((l * n + m) * n + a) * n + b)] = r;
				}
	for (int l = 0; l < n; ++l)
		for (int b = 0; b < n; ++b)
		{
			Expr s;
			for (int m = 0; m < n; ++m)
				s += R.R(l, m, m, b);
			R.ricci[std::size_t(l * n + b)] = s;
		}
	return R;
}

WorldConnection world_torsion(WorldConnection const &K)
{
	WorldConnection T(K.n);
	for (int m = 0; m < K.n; ++m)
		for (int v = 0; v < K.n; ++v)
			for (int l = 0; l < K.n; ++l)
				T(m, v, l) = K(m, v, l) - K(l, v, m);
	return T;
}

Connection world_as_connection(WorldConnection const &K, std::vector<int> tangent_fibre,
                               JetContext const &ctx)
{
	int n = K.n;
	if (int(tangent_fibre.size()) != n || ctx.n() != n)
		throw KindError("world connection needs n tangent fibre coordinates");
	LinearCoefficients c(static_cast<std::size_t>(n), std::vector<std::vector<Expr>>(
	                                         static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n))));
	for (int l = 0; l < n; ++l)
		for (int m = 0; m < n; ++m)
			for (int v = 0; v < n; ++v)
				c[std::size_t(l)][std::size_t(m)][std::size_t(v)] = K(l, m, v);
	Connection r = linear_connection(std::move(tangent_fibre), c, ctx);
	r.kind = ConnectionKind::World;
	return r;
}

Connection cartan_connection(WorldConnection const &K, std::vector<int> tangent_fibre,
                             JetContext const &ctx)
{
	Connection r = world_as_connection(K, std::move(tangent_fibre), ctx);
	for (int m = 0; m < K.n; ++m)
		r.comps[std::size_t(m)][std::size_t(m)] += Expr(1);
	r.kind = ConnectionKind::Affine;
	return r;
}

TangentValuedForm canonical_vertical_form(std::vector<int> const &tangent_fibre,
                                          JetContext const &ctx)
{
	std::vector<std::vector<Expr>> s(tangent_fibre.size(),
	                                 std::vector<Expr>(static_cast<std::size_t>(ctx.n())));
	for (std::size_t i = 0; i < tangent_fibre.size(); ++i)
		s[i][i] = Expr(1);
	return soldering_on(tangent_fibre, s, ctx);
}

} // namespace jetvar
