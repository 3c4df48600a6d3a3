#include "jetvar/gauge.hpp"

#include <cmath>
#include <cstdlib>

#include "jetvar/errors.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

namespace {

std::size_t z(int i) { return static_cast<std::size_t>(i); }

RationalMatrix zero_matrix(int r, int c)
{
	return RationalMatrix(z(r), std::vector<Rational>(z(c)));
}

RationalMatrix multiply(RationalMatrix const &a, RationalMatrix const &b)
{
	std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
	RationalMatrix r(n, std::vector<Rational>(m));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t l = 0; l < k; ++l)
		{
			if (a[i][l].is_zero())
				continue;
			for (std::size_t j = 0; j < m; ++j)
				r[i][j] += a[i][l] * b[l][j];
		}
	return r;
}

std::optional<RationalMatrix> invert(RationalMatrix a)
{
	std::size_t n = a.size();
	for (std::size_t i = 0; i < n; ++i)
	{
		a[i].resize(2 * n);
		a[i][n + i] = Rational(1);
	}
	for (std::size_t col = 0; col < n; ++col)
	{
		std::size_t piv = col;
		while (piv < n && a[piv][col].is_zero())
			++piv;
		if (piv == n)
			return std::nullopt;
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
	RationalMatrix out(n, std::vector<Rational>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			out[i][j] = a[i][n + j];
	return out;
}

void validate_generators(LieAlgebraData const &g, std::vector<RationalMatrix> const &gen)
{
	if (int(gen.size()) != g.dim)
		throw InvalidAlgebra("one generator per algebra basis element is required");
	std::size_t m = gen.empty() ? 0 : gen[0].size();
	for (auto const &I : gen)
	{
		if (I.size() != m)
			throw InvalidAlgebra("generators must share one dimension");
		for (auto const &row : I)
			if (row.size() != m)
				throw InvalidAlgebra("generators must be square");
	}
	for (int p = 0; p < g.dim; ++p)
		for (int q = 0; q < g.dim; ++q)
		{
			RationalMatrix lhs = multiply(gen[z(p)], gen[z(q)]);
			RationalMatrix qp = multiply(gen[z(q)], gen[z(p)]);
			for (std::size_t i = 0; i < m; ++i)
				for (std::size_t j = 0; j < m; ++j)
				{
					Rational v = lhs[i][j] - qp[i][j];
					for (int r = 0; r < g.dim; ++r)
						v -= g(r, p, q) * gen[z(r)][i][j];
					if (!v.is_zero())
						throw InvalidAlgebra("generators do not represent the algebra");
				}
		}
}

std::optional<std::int64_t> isqrt(std::int64_t v)
{
	if (v < 0)
		return std::nullopt;
	auto r = std::int64_t(std::llround(std::sqrt(double(v))));
	for (std::int64_t c = std::max<std::int64_t>(r - 1, 0); c <= r + 1; ++c)
		if (c * c == v)
			return c;
	return std::nullopt;
}

} // namespace

// ---- algebra data --------------------------------------------------------------

void validate(LieAlgebraData const &g)
{
	int d = g.dim;
	if (int(g.c.size()) != d)
		throw InvalidAlgebra("structure constant table has the wrong shape");
	for (auto const &m : g.c)
	{
		if (int(m.size()) != d)
			throw InvalidAlgebra("structure constant table has the wrong shape");
		for (auto const &row : m)
			if (int(row.size()) != d)
				throw InvalidAlgebra("structure constant table has the wrong shape");
	}
	for (int r = 0; r < d; ++r)
		for (int p = 0; p < d; ++p)
			for (int q = 0; q < d; ++q)
				if (g(r, p, q) != -g(r, q, p))
					throw InvalidAlgebra("structure constants are not antisymmetric");
	// c^s_{pq}c^t_{sr} + c^s_{qr}c^t_{sp} + c^s_{rp}c^t_{sq} = 0
	for (int p = 0; p < d; ++p)
		for (int q = 0; q < d; ++q)
			for (int r = 0; r < d; ++r)
				for (int t = 0; t < d; ++t)
				{
					Rational v;
					for (int s = 0; s < d; ++s)
						v += g(s, p, q) * g(t, s, r) + g(s, q, r) * g(t, s, p) +
						     g(s, r, p) * g(t, s, q);
					if (!v.is_zero())
						throw InvalidAlgebra("structure constants violate the Jacobi identity");
				}
	if (!g.bilinear)
		return;
	auto const &a = *g.bilinear;
	if (int(a.size()) != d)
		throw InvalidAlgebra("bilinear form has the wrong shape");
	for (auto const &row : a)
		if (int(row.size()) != d)
			throw InvalidAlgebra("bilinear form has the wrong shape");
	for (int p = 0; p < d; ++p)
		for (int q = 0; q < d; ++q)
		{
			if (a[z(p)][z(q)] != a[z(q)][z(p)])
				throw InvalidAlgebra("bilinear form is not symmetric");
			for (int r = 0; r < d; ++r)
			{
				Rational v;
				for (int s = 0; s < d; ++s)
					v += g(s, p, q) * a[z(s)][z(r)] + g(s, p, r) * a[z(q)][z(s)];
				if (!v.is_zero())
					throw InvalidAlgebra("bilinear form is not ad-invariant");
			}
		}
}

LieAlgebraData make_algebra(std::vector<RationalMatrix> c, std::optional<RationalMatrix> bilinear)
{
	LieAlgebraData g;
	g.dim = int(c.size());
	g.c = std::move(c);
	g.bilinear = std::move(bilinear);
	validate(g);
	return g;
}

LieAlgebraData u1()
{
	return make_algebra({zero_matrix(1, 1)}, RationalMatrix{{Rational(1)}});
}

LieAlgebraData su2()
{
	std::vector<RationalMatrix> c(3, zero_matrix(3, 3));
	for (int r = 0; r < 3; ++r)
	{
		int p = (r + 1) % 3, q = (r + 2) % 3;
		c[z(r)][z(p)][z(q)] = Rational(1);
		c[z(r)][z(q)][z(p)] = Rational(-1);
	}
	RationalMatrix id = zero_matrix(3, 3);
	for (int i = 0; i < 3; ++i)
		id[z(i)][z(i)] = Rational(1);
	return make_algebra(std::move(c), std::move(id));
}

LieAlgebraData change_basis(LieAlgebraData const &g, RationalMatrix const &m)
{
	auto inv = invert(m);
	if (!inv)
		throw InvalidAlgebra("change of basis is singular");
	int d = g.dim;
	// [e'_p, e'_q] = M^a_p M^b_q c^s_{ab} e_s, e_s = (M⁻¹)^r_s e'_r
	std::vector<RationalMatrix> c(z(d), zero_matrix(d, d));
	for (int p = 0; p < d; ++p)
		for (int q = 0; q < d; ++q)
			for (int a = 0; a < d; ++a)
			{
				if (m[z(a)][z(p)].is_zero())
					continue;
				for (int b = 0; b < d; ++b)
				{
					Rational w = m[z(a)][z(p)] * m[z(b)][z(q)];
					if (w.is_zero())
						continue;
					for (int s = 0; s < d; ++s)
					{
						if (g(s, a, b).is_zero())
							continue;
						for (int r = 0; r < d; ++r)
							c[z(r)][z(p)][z(q)] += (*inv)[z(r)][z(s)] * w * g(s, a, b);
					}
				}
			}
	std::optional<RationalMatrix> bil;
	if (g.bilinear)
	{
		RationalMatrix b = zero_matrix(d, d);
		for (int p = 0; p < d; ++p)
			for (int q = 0; q < d; ++q)
				for (int a = 0; a < d; ++a)
					for (int e = 0; e < d; ++e)
						b[z(p)][z(q)] += m[z(a)][z(p)] * (*g.bilinear)[z(a)][z(e)] * m[z(e)][z(q)];
		bil = b;
	}
	return make_algebra(std::move(c), std::move(bil));
}

std::vector<RationalMatrix> adjoint_generators(LieAlgebraData const &g)
{
	std::vector<RationalMatrix> out(z(g.dim), zero_matrix(g.dim, g.dim));
	for (int p = 0; p < g.dim; ++p)
		for (int r = 0; r < g.dim; ++r)
			for (int q = 0; q < g.dim; ++q)
				out[z(p)][z(r)][z(q)] = g(r, p, q);
	return out;
}

// ---- gauge context ---------------------------------------------------------------

Var GaugeContext::a_var(int q, int lambda) const
{
	return ctx.jet_var(potential[z(q)][z(lambda)]);
}

Var GaugeContext::a_var(int q, int lambda, int mu) const
{
	return ctx.jet_var(potential[z(q)][z(mu)], {lambda});
}

Expr GaugeContext::a(int q, int lambda) const { return Expr::var(a_var(q, lambda)); }

Expr GaugeContext::a(int q, int lambda, int mu) const { return Expr::var(a_var(q, lambda, mu)); }

Expr GaugeContext::y(int i) const { return ctx.y(matter[z(i)]); }

GaugeContext make_gauge_context(LieAlgebraData algebra, int n, std::vector<std::string> coords,
                                std::vector<RationalMatrix> generators)
{
	validate(algebra);
	if (!generators.empty())
		validate_generators(algebra, generators);
	GaugeContext gc{JetContext(n, std::move(coords)), std::move(algebra), {}, {}, {}};
	for (int q = 0; q < gc.algebra.dim; ++q)
	{
		gc.potential.emplace_back();
		for (int l = 0; l < n; ++l)
			gc.potential.back().push_back(
			    gc.ctx.add_field("a" + std::to_string(q + 1) + "_" + std::to_string(l + 1)));
	}
	std::size_t m = generators.empty() ? 0 : generators[0].size();
	for (std::size_t i = 0; i < m; ++i)
		gc.matter.push_back(gc.ctx.add_field("psi" + std::to_string(i + 1)));
	gc.generators = std::move(generators);
	return gc;
}

// ---- strength and splitting ----------------------------------------------------------

AlgebraTensor strength(GaugeContext const &gc)
{
	int d = gc.algebra.dim, n = gc.n();
	AlgebraTensor F(z(d), std::vector<std::vector<Expr>>(z(n), std::vector<Expr>(z(n))));
	for (int r = 0; r < d; ++r)
		for (int l = 0; l < n; ++l)
			for (int m = 0; m < n; ++m)
			{
				if (l == m)
					continue;
				Expr f = gc.a(r, l, m) - gc.a(r, m, l);
				for (int p = 0; p < d; ++p)
					for (int q = 0; q < d; ++q)
						if (!gc.algebra(r, p, q).is_zero())
							f += Expr(gc.algebra(r, p, q)) * gc.a(p, l) * gc.a(q, m);
				F[z(r)][z(l)][z(m)] = f;
			}
	return F;
}

AlgebraTensor strength_of(LieAlgebraData const &g, std::vector<std::vector<Expr>> const &A)
{
	int d = g.dim;
	int n = A.empty() ? 0 : int(A[0].size());
	AlgebraTensor F(z(d), std::vector<std::vector<Expr>>(z(n), std::vector<Expr>(z(n))));
	for (int r = 0; r < d; ++r)
		for (int l = 0; l < n; ++l)
			for (int m = 0; m < n; ++m)
			{
				Expr f = partial_base(A[z(r)][z(m)], l) - partial_base(A[z(r)][z(l)], m);
				for (int p = 0; p < d; ++p)
					for (int q = 0; q < d; ++q)
						if (!g(r, p, q).is_zero())
							f += Expr(g(r, p, q)) * A[z(p)][z(l)] * A[z(q)][z(m)];
				F[z(r)][z(l)][z(m)] = f;
			}
	return F;
}

std::vector<std::vector<Expr>> bianchi_residuals(GaugeContext const &gc)
{
	int d = gc.algebra.dim, n = gc.n();
	AlgebraTensor F = strength(gc);
	std::vector<std::vector<Expr>> out(z(d));
	auto term = [&](int r, int l, int m, int v) {
		Expr t = total_derivative(F[z(r)][z(m)][z(v)], l);
		for (int p = 0; p < d; ++p)
			for (int q = 0; q < d; ++q)
				if (!gc.algebra(r, p, q).is_zero())
					t += Expr(gc.algebra(r, p, q)) * gc.a(p, l) * F[z(q)][z(m)][z(v)];
		return t;
	};
	for (int r = 0; r < d; ++r)
		for (int l = 0; l < n; ++l)
			for (int m = l + 1; m < n; ++m)
				for (int v = m + 1; v < n; ++v)
					out[z(r)].push_back(term(r, l, m, v) + term(r, m, v, l) + term(r, v, l, m));
	return out;
}

bool bianchi_check(GaugeContext const &gc)
{
	for (auto const &row : bianchi_residuals(gc))
		for (auto const &e : row)
			if (!is_zero(e))
				return false;
	return true;
}

CanonicalSplitting canonical_splitting(GaugeContext const &gc)
{
	int d = gc.algebra.dim, n = gc.n();
	CanonicalSplitting out;
	out.F = strength(gc);
	out.S = AlgebraTensor(z(d), std::vector<std::vector<Expr>>(z(n), std::vector<Expr>(z(n))));
	for (int r = 0; r < d; ++r)
		for (int l = 0; l < n; ++l)
			for (int m = 0; m < n; ++m)
			{
				Expr s = gc.a(r, l, m) + gc.a(r, m, l);
				for (int p = 0; p < d; ++p)
					for (int q = 0; q < d; ++q)
						if (!gc.algebra(r, p, q).is_zero())
							s -= Expr(gc.algebra(r, p, q)) * gc.a(p, l) * gc.a(q, m);
				out.S[z(r)][z(l)][z(m)] = Expr(Rational(1, 2)) * s;
			}
	return out;
}

// ---- gauge vector fields ---------------------------------------------------------------

GaugeGenerators gauge_generators(GaugeContext const &gc)
{
	int d = gc.algebra.dim, n = gc.n(), nf = gc.ctx.field_count();
	GaugeGenerators u;
	u.plain.assign(z(d), std::vector<Expr>(z(nf)));
	u.deriv.assign(z(d), std::vector<std::vector<Expr>>(z(n), std::vector<Expr>(z(nf))));
	for (int p = 0; p < d; ++p)
	{
		for (int r = 0; r < d; ++r)
			for (int l = 0; l < n; ++l)
			{
				Expr e;
				for (int q = 0; q < d; ++q)
					if (!gc.algebra(r, p, q).is_zero())
						e += Expr(gc.algebra(r, p, q)) * gc.a(q, l);
				u.plain[z(p)][z(gc.potential[z(r)][z(l)])] = e;
			}
		for (std::size_t i = 0; i < gc.matter.size(); ++i)
		{
			Expr e;
			for (std::size_t j = 0; j < gc.matter.size(); ++j)
				if (!gc.generators[z(p)][i][j].is_zero())
					e += Expr(gc.generators[z(p)][i][j]) * gc.y(int(j));
			u.plain[z(p)][z(gc.matter[i])] = e;
		}
		for (int l = 0; l < n; ++l)
			u.deriv[z(p)][z(l)][z(gc.potential[z(p)][z(l)])] = Expr(-1);
	}
	return u;
}

VectorField gauge_vector_field(GaugeContext const &gc, std::vector<Expr> const &xi)
{
	for (auto const &e : xi)
		if (e.has_jets())
			throw KindError("gauge parameters depend on x only");
	auto u = gauge_generators(gc);
	std::map<Var, Expr> fibre;
	for (int f = 0; f < gc.ctx.field_count(); ++f)
	{
		Expr c;
		for (int p = 0; p < gc.algebra.dim && p < int(xi.size()); ++p)
		{
			Expr const &x = xi[z(p)];
			if (x.empty())
				continue;
			c += u.plain[z(p)][z(f)] * x;
			for (int l = 0; l < gc.n(); ++l)
				if (!u.deriv[z(p)][z(l)][z(f)].empty())
					c += u.deriv[z(p)][z(l)][z(f)] * partial_base(x, l);
		}
		if (!c.empty())
			fibre[gc.ctx.jet_var(f)] = c;
	}
	return projectable_field({}, fibre);
}

// ---- invariance equations ------------------------------------------------------------------

bool InvarianceResiduals::invariant() const
{
	for (auto const &e : a)
		if (!is_zero(e))
			return false;
	for (auto const &row : b)
		for (auto const &e : row)
			if (!is_zero(e))
				return false;
	for (auto const &m : c)
		for (auto const &row : m)
			for (auto const &e : row)
				if (!is_zero(e))
					return false;
	return true;
}

InvarianceResiduals invariance_equations(GaugeContext const &gc, Expr const &density)
{
	if (!gc.matter.empty())
		throw KindError("pure-gauge invariance equations need a context without matter");
	int d = gc.algebra.dim, n = gc.n();
	auto const &c = gc.algebra;
	// ∂^μ_r ℒ and ∂^{λμ}_r ℒ = ∂ℒ/∂a^r_{λμ}
	std::vector<std::vector<Expr>> d0(z(d), std::vector<Expr>(z(n)));
	AlgebraTensor d1(z(d), std::vector<std::vector<Expr>>(z(n), std::vector<Expr>(z(n))));
	for (int r = 0; r < d; ++r)
		for (int m = 0; m < n; ++m)
		{
			d0[z(r)][z(m)] = partial(density, gc.a_var(r, m));
			for (int l = 0; l < n; ++l)
				d1[z(r)][z(l)][z(m)] = partial(density, gc.a_var(r, l, m));
		}
	InvarianceResiduals out;
	out.a.assign(z(d), Expr());
	out.b.assign(z(d), std::vector<Expr>(z(n)));
	out.c.assign(z(d), std::vector<std::vector<Expr>>(z(n), std::vector<Expr>(z(n))));
	for (int q = 0; q < d; ++q)
	{
		for (int r = 0; r < d; ++r)
			for (int p = 0; p < d; ++p)
			{
				if (c(r, p, q).is_zero())
					continue;
				Expr k(c(r, p, q));
				for (int m = 0; m < n; ++m)
				{
					out.a[z(q)] += k * gc.a(p, m) * d0[z(r)][z(m)];
					for (int l = 0; l < n; ++l)
						out.a[z(q)] += k * gc.a(p, l, m) * d1[z(r)][z(l)][z(m)];
				}
			}
		for (int m = 0; m < n; ++m)
		{
			Expr e = d0[z(q)][z(m)];
			for (int r = 0; r < d; ++r)
				for (int p = 0; p < d; ++p)
				{
					if (c(r, p, q).is_zero())
						continue;
					for (int l = 0; l < n; ++l)
						e += Expr(c(r, p, q)) * gc.a(p, l) * d1[z(r)][z(m)][z(l)];
				}
			out.b[z(q)][z(m)] = e;
		}
	}
	for (int p = 0; p < d; ++p)
		for (int m = 0; m < n; ++m)
			for (int l = 0; l < n; ++l)
				out.c[z(p)][z(m)][z(l)] = d1[z(p)][z(m)][z(l)] + d1[z(p)][z(l)][z(m)];
	return out;
}

namespace {

struct StrongParts
{
	GaugeGenerators u;
	std::vector<Expr> delta;                 // δ_Aℒ
	std::vector<std::vector<Expr>> pi;       // π^λ_A as [λ][A]
};

StrongParts strong_parts(GaugeContext const &gc, Expr const &density)
{
	return {gauge_generators(gc), variational_derivatives(density, gc.ctx),
	        momenta(density, gc.ctx)};
}

Expr contract(std::vector<Expr> const &u, std::vector<Expr> const &v)
{
	Expr r;
	for (std::size_t a = 0; a < u.size(); ++a)
		if (!u[a].empty() && !v[a].empty())
			r += u[a] * v[a];
	return r;
}

} // namespace

InvarianceResiduals strong_equalities(GaugeContext const &gc, Expr const &density)
{
	int d = gc.algebra.dim, n = gc.n();
	auto s = strong_parts(gc, density);
	InvarianceResiduals out;
	out.a.assign(z(d), Expr());
	out.b.assign(z(d), std::vector<Expr>(z(n)));
	out.c.assign(z(d), std::vector<std::vector<Expr>>(z(n), std::vector<Expr>(z(n))));
	for (int p = 0; p < d; ++p)
	{
		auto const &up = s.u.plain[z(p)];
		out.a[z(p)] = contract(up, s.delta);
		for (int m = 0; m < n; ++m)
			out.a[z(p)] += total_derivative(contract(up, s.pi[z(m)]), m);
		for (int m = 0; m < n; ++m)
		{
			auto const &um = s.u.deriv[z(p)][z(m)];
			Expr e = contract(um, s.delta) + contract(up, s.pi[z(m)]);
			for (int l = 0; l < n; ++l)
				e += total_derivative(contract(um, s.pi[z(l)]), l);
			out.b[z(p)][z(m)] = e;
			for (int l = 0; l < n; ++l)
				out.c[z(p)][z(l)][z(m)] =
				    contract(s.u.deriv[z(p)][z(l)], s.pi[z(m)]) + contract(um, s.pi[z(l)]);
		}
	}
	return out;
}

// ---- Yang–Mills ------------------------------------------------------------------------------

Expr sqrt_abs_det(Metric const &g)
{
	Expr det = determinant(g.g);
	if (auto c = det.constant_value())
	{
		Rational v = c->sign() < 0 ? -*c : *c;
		if (v.is_zero())
			throw SingularMetric("metric determinant vanishes");
		auto a = isqrt(v.num()), b = isqrt(v.den());
		if (a && b)
			return Expr(Rational(*a, *b));
		return pow(Expr(v), Rational(1, 2));
	}
	if (det.empty())
		throw SingularMetric("metric determinant vanishes");
	Sampler s(0x5eed0001);
	double v = s.evaluate(det);
	return pow(v < 0 ? -det : det, Rational(1, 2));
}

Expr yang_mills_lagrangian(GaugeContext const &gc, Metric const &g, Rational coupling)
{
	if (!gc.algebra.bilinear)
		throw MissingBilinearForm("the Yang–Mills Lagrangian needs an invariant bilinear form");
	if (coupling.is_zero())
		throw KindError("coupling constant must be nonzero");
	int d = gc.algebra.dim, n = gc.n();
	if (g.n != n)
		throw KindError("metric dimension does not match the base");
	auto gi = inverse_metric(g);
	auto F = canonical_splitting(gc).F;
	auto const &aG = *gc.algebra.bilinear;
	// G^{p,λβ} = g^{λμ}g^{βν}ℱ^p_{μν} is formed once, then contracted
	Expr sum;
	for (int p = 0; p < d; ++p)
		for (int q = 0; q < d; ++q)
		{
			if (aG[z(p)][z(q)].is_zero())
				continue;
			Expr pq;
			for (int l = 0; l < n; ++l)
				for (int b = 0; b < n; ++b)
				{
					if (F[z(p)][z(l)][z(b)].empty())
						continue;
					Expr raised;
					for (int m = 0; m < n; ++m)
						for (int v = 0; v < n; ++v)
						{
							if (gi[z(l)][z(m)].empty() || gi[z(b)][z(v)].empty() ||
							    F[z(q)][z(m)][z(v)].empty())
								continue;
							raised += gi[z(l)][z(m)] * gi[z(b)][z(v)] * F[z(q)][z(m)][z(v)];
						}
					pq += F[z(p)][z(l)][z(b)] * raised;
				}
			sum += Expr(aG[z(p)][z(q)]) * pq;
		}
	Rational k = Rational(1, 4) / (coupling * coupling);
	return Expr(k) * sum * sqrt_abs_det(g);
}

// ---- Noether identities ------------------------------------------------------------------------

NoetherIdentities noether_identities(GaugeContext const &gc, Expr const &density,
                                     std::vector<Expr> const &xi)
{
	if (!strong_equalities(gc, density).invariant())
		throw NotInvariant("Lagrangian is not gauge invariant");
	int d = gc.algebra.dim, n = gc.n();
	auto s = strong_parts(gc, density);
	auto strong = strong_equalities(gc, density);
	NoetherIdentities out;
	out.strong_b = strong.b;
	out.c = strong.c;
	out.weak_b.assign(z(d), std::vector<Expr>(z(n)));
	out.a_from_bc.assign(z(d), Expr());
	for (int p = 0; p < d; ++p)
		for (int m = 0; m < n; ++m)
		{
			auto const &um = s.u.deriv[z(p)][z(m)];
			Expr e = contract(s.u.plain[z(p)], s.pi[z(m)]);
			for (int l = 0; l < n; ++l)
				e += total_derivative(contract(um, s.pi[z(l)]), l);
			out.weak_b[z(p)][z(m)] = e;
			out.a_from_bc[z(p)] += total_derivative(contract(s.u.plain[z(p)], s.pi[z(m)]), m) +
			                       total_derivative(contract(um, s.delta), m);
		}

	// 𝔗^λ = −(u^A_pξ^p + u^{Aμ}_p∂_μξ^p)π^λ_A
	std::vector<Expr> comp(z(gc.ctx.field_count()));
	for (int p = 0; p < d && p < int(xi.size()); ++p)
		for (std::size_t A = 0; A < comp.size(); ++A)
		{
			if (!s.u.plain[z(p)][A].empty())
				comp[A] += s.u.plain[z(p)][A] * xi[z(p)];
			for (int m = 0; m < n; ++m)
				if (!s.u.deriv[z(p)][z(m)][A].empty())
					comp[A] += s.u.deriv[z(p)][z(m)][A] * partial_base(xi[z(p)], m);
		}
	out.current.assign(z(n), Expr());
	out.w.assign(z(n), Expr());
	out.superpotential.assign(z(n), std::vector<Expr>(z(n)));
	for (int l = 0; l < n; ++l)
	{
		out.current[z(l)] = -contract(comp, s.pi[z(l)]);
		for (int p = 0; p < d && p < int(xi.size()); ++p)
		{
			out.w[z(l)] += xi[z(p)] * contract(s.u.deriv[z(p)][z(l)], s.delta);
			for (int m = 0; m < n; ++m)
				out.superpotential[z(m)][z(l)] -=
				    xi[z(p)] * contract(s.u.deriv[z(p)][z(m)], s.pi[z(l)]);
		}
	}
	out.residual.assign(z(n), Expr());
	for (int l = 0; l < n; ++l)
	{
		Expr r = out.current[z(l)] - out.w[z(l)];
		for (int m = 0; m < n; ++m)
			r -= total_derivative(out.superpotential[z(m)][z(l)], m);
		out.residual[z(l)] = r;
	}

	out.ok = true;
	auto zero = [&](Expr const &e) {
		if (!is_zero(e))
			out.ok = false;
	};
	for (int p = 0; p < d; ++p)
	{
		zero(out.a_from_bc[z(p)]);
		for (int m = 0; m < n; ++m)
		{
			zero(out.strong_b[z(p)][z(m)]);
			zero(out.weak_b[z(p)][z(m)] + contract(s.u.deriv[z(p)][z(m)], s.delta));
			for (int l = 0; l < n; ++l)
				zero(out.c[z(p)][z(l)][z(m)]);
		}
	}
	for (auto const &r : out.residual)
		zero(r);
	return out;
}

// ---- sections and associated connections ------------------------------------------------------

GaugeSection section_bracket(LieAlgebraData const &g, GaugeSection const &xi,
                             GaugeSection const &eta)
{
	std::size_t n = std::max(xi.base.size(), eta.base.size());
	auto at = [](std::vector<Expr> const &v, std::size_t i) { return i < v.size() ? v[i] : Expr(); };
	// ξ^μ∂_μ f − η^μ∂_μ g
	auto flow = [&](Expr const &f, Expr const &h) {
		Expr r;
		for (std::size_t m = 0; m < n; ++m)
		{
			Expr a = at(xi.base, m), b = at(eta.base, m);
			if (!a.empty())
				r += a * partial_base(f, int(m));
			if (!b.empty())
				r -= b * partial_base(h, int(m));
		}
		return r;
	};
	GaugeSection out;
	for (std::size_t l = 0; l < n; ++l)
		out.base.push_back(flow(at(eta.base, l), at(xi.base, l)));
	for (int r = 0; r < g.dim; ++r)
	{
		Expr e = flow(at(eta.alg, z(r)), at(xi.alg, z(r)));
		for (int p = 0; p < g.dim; ++p)
			for (int q = 0; q < g.dim; ++q)
				if (!g(r, p, q).is_zero())
					e += Expr(g(r, p, q)) * at(xi.alg, z(p)) * at(eta.alg, z(q));
		out.alg.push_back(e);
	}
	return out;
}

std::vector<std::vector<Expr>> gauge_covariant_derivative(LieAlgebraData const &g,
                                                          std::vector<std::vector<Expr>> const &A,
                                                          std::vector<Expr> const &xi)
{
	int d = g.dim;
	int n = A.empty() ? 0 : int(A[0].size());
	std::vector<std::vector<Expr>> out(z(n), std::vector<Expr>(z(d)));
	for (int l = 0; l < n; ++l)
		for (int r = 0; r < d; ++r)
		{
			Expr e = partial_base(xi[z(r)], l);
			for (int p = 0; p < d; ++p)
				for (int q = 0; q < d; ++q)
					if (!g(r, p, q).is_zero())
						e += Expr(g(r, p, q)) * A[z(p)][z(l)] * xi[z(q)];
			out[z(l)][z(r)] = e;
		}
	return out;
}

Connection associated_connection(std::vector<int> fibre, std::vector<RationalMatrix> const &generators,
                                 std::vector<std::vector<Expr>> const &A, JetContext const &ctx)
{
	int n = ctx.n();
	std::size_t m = fibre.size();
	LinearCoefficients k(z(n), std::vector<std::vector<Expr>>(m, std::vector<Expr>(m)));
	for (int l = 0; l < n; ++l)
		for (std::size_t p = 0; p < generators.size(); ++p)
		{
			Expr const &a = A[p][z(l)];
			if (a.empty())
				continue;
			for (std::size_t i = 0; i < m; ++i)
				for (std::size_t j = 0; j < m; ++j)
					if (!generators[p][i][j].is_zero())
						k[z(l)][i][j] -= Expr(generators[p][i][j]) * a;
		}
	return linear_connection(std::move(fibre), k, ctx);
}

} // namespace jetvar
