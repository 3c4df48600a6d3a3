#include "jetvar/tangent_valued.hpp"

#include <algorithm>
#include <numeric>

#include "jetvar/errors.hpp"

namespace jetvar {

ZChart::ZChart(JetContext const &ctx) : n(ctx.n()), fields(ctx.even_fields()) {}

int ZChart::fibre(int field) const
{
	auto it = std::find(fields.begin(), fields.end(), field);
	if (it == fields.end())
		throw KindError("field is not an even fibre coordinate");
	return n + int(it - fields.begin());
}

Expr ZChart::coord(JetContext const &ctx, int z) const
{
	if (z < n)
		return ctx.x(z);
	return ctx.y(fields.at(std::size_t(z - n)));
}

Expr ZChart::partial(Expr const &e, int z, JetContext const &ctx) const
{
	if (z < n)
		return partial_base(e, z);
	return jetvar::partial(e, ctx.jet_var(fields.at(std::size_t(z - n))));
}

namespace {

// sorts in place; returns the permutation sign, 0 on a repeated index
int sort_sign(std::vector<int> &v)
{
	int sign = 1;
	for (std::size_t i = 1; i < v.size(); ++i)
		for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j)
		{
			if (v[j - 1] == v[j])
				return 0;
			std::swap(v[j - 1], v[j]);
			sign = -sign;
		}
	return sign;
}

std::int64_t factorial(int k)
{
	std::int64_t f = 1;
	for (int i = 2; i <= k; ++i)
		f *= i;
	return f;
}

} // namespace

Expr TangentValuedForm::get(std::vector<int> const &lambdas, int mu) const
{
	std::vector<int> l = lambdas;
	int s = sort_sign(l);
	if (s == 0)
		return Expr();
	auto it = comps_.find({l, mu});
	if (it == comps_.end())
		return Expr();
	return s > 0 ? it->second : -it->second;
}

void TangentValuedForm::set(std::vector<int> const &lambdas, int mu, Expr const &value)
{
	if (int(lambdas.size()) != r_)
		throw DegreeError("component has the wrong number of form indices");
	std::vector<int> l = lambdas;
	int s = sort_sign(l);
	if (s == 0)
	{
		if (!value.empty())
			throw DegreeError("repeated form index with nonzero component");
		return;
	}
	Key k{l, mu};
	if (value.empty())
		comps_.erase(k);
	else
		comps_[k] = s > 0 ? value : -value;
}

void TangentValuedForm::add(std::vector<int> const &lambdas, int mu, Expr const &value)
{
	if (value.empty())
		return;
	set(lambdas, mu, get(lambdas, mu) + value);
}

TangentValuedForm TangentValuedForm::operator-() const
{
	TangentValuedForm r = *this;
	for (auto &[k, c] : r.comps_)
		c = -c;
	return r;
}

TangentValuedForm &TangentValuedForm::operator+=(TangentValuedForm const &o)
{
	if (o.empty())
		return *this;
	if (empty())
		r_ = o.r_;
	if (r_ != o.r_)
		throw DegreeError("sum of tangent-valued forms of different degree");
	for (auto const &[k, c] : o.comps_)
	{
		Expr s = comps_[k] + c;
		if (s.empty())
			comps_.erase(k);
		else
			comps_[k] = s;
	}
	return *this;
}

TangentValuedForm &TangentValuedForm::operator-=(TangentValuedForm const &o)
{
	return *this += -o;
}

TangentValuedForm operator*(Expr const &f, TangentValuedForm a)
{
	for (auto it = a.comps_.begin(); it != a.comps_.end();)
	{
		it->second = f * it->second;
		if (it->second.empty())
			it = a.comps_.erase(it);
		else
			++it;
	}
	return a;
}

bool is_zero(TangentValuedForm const &phi)
{
	for (auto const &[k, c] : phi.components())
		if (!is_zero(c))
			return false;
	return true;
}

TangentValuedForm from_vector_field(VectorField const &u, JetContext const &ctx)
{
	ZChart z(ctx);
	TangentValuedForm r(0);
	for (int l = 0; l < ctx.n(); ++l)
		r.set({}, l, u.base_component(l));
	for (auto const &[v, c] : u.fibre)
	{
		if (!v.mi.empty())
		{
			if (!c.empty())
				throw OrderError("tangent-valued forms live on Y: jet components not allowed");
			continue;
		}
		r.set({}, z.fibre(v.index), c);
	}
	return r;
}

VectorField to_vector_field(TangentValuedForm const &phi, JetContext const &ctx)
{
	if (phi.degree() != 0)
		throw DegreeError("only 0-forms are vector fields");
	ZChart z(ctx);
	std::vector<Expr> base(std::size_t(ctx.n()));
	std::map<Var, Expr> fibre;
	for (auto const &[k, c] : phi.components())
	{
		if (k.second < z.n)
			base[std::size_t(k.second)] = c;
		else
			fibre[ctx.jet_var(z.fields[std::size_t(k.second - z.n)])] = c;
	}
	return make_vector_field(base, fibre, 0);
}

TangentValuedForm canonical_form(JetContext const &ctx)
{
	TangentValuedForm r(1);
	for (int l = 0; l < ctx.n(); ++l)
		r.set({l}, l, Expr(1));
	return r;
}

TangentValuedForm soldering_form(std::vector<std::vector<Expr>> const &sigma,
                                 JetContext const &ctx)
{
	ZChart z(ctx);
	TangentValuedForm r(1);
	for (std::size_t i = 0; i < sigma.size(); ++i)
		for (std::size_t l = 0; l < sigma[i].size(); ++l)
			r.set({int(l)}, z.n + int(i), sigma[i][l]);
	return r;
}

TangentValuedForm connection_form(std::vector<std::vector<Expr>> const &gamma,
                                  JetContext const &ctx)
{
	return canonical_form(ctx) + soldering_form(gamma, ctx);
}

TangentValuedForm fn_bracket(TangentValuedForm const &phi, TangentValuedForm const &sigma,
                             JetContext const &ctx)
{
	int r = phi.degree(), s = sigma.degree();
	if (r + s > ctx.n())
		throw DegreeOverflow("FN bracket degree " + std::to_string(r + s) +
		                     " exceeds the base dimension");
	ZChart z(ctx);
	int dim = z.dim();
	TangentValuedForm out(r + s);
	if (phi.empty() || sigma.empty())
		return out;
	Rational norm(1, factorial(r) * factorial(s));

	// T^μ_{λ1…λ_{r+s}} for an ordered index tuple
	auto term = [&](std::vector<int> const &lam, int mu) {
		std::vector<int> a(lam.begin(), lam.begin() + r), b(lam.begin() + r, lam.end());
		Expr t;
		for (int nu = 0; nu < dim; ++nu)
		{
			Expr pn = phi.get(a, nu);
			if (!pn.empty())
				t += pn * z.partial(sigma.get(b, mu), nu, ctx);
			Expr sn = sigma.get(b, nu);
			if (!sn.empty())
				t -= sn * z.partial(phi.get(a, mu), nu, ctx);
			if (r > 0)
			{
				auto a2 = a;
				a2.back() = nu;
				Expr p = phi.get(a2, mu);
				if (!p.empty())
				{
					Expr q = p * z.partial(sigma.get(b, nu), a.back(), ctx);
					q *= Rational(r);
					t -= q;
				}
			}
			if (s > 0)
			{
				auto b2 = b;
				b2.front() = nu;
				Expr p = sigma.get(b2, mu);
				if (!p.empty())
				{
					Expr q = p * z.partial(phi.get(a, nu), b.front(), ctx);
					q *= Rational(s);
					t += q;
				}
			}
		}
		return t;
	};

	// every increasing (r+s)-subset of Z indices
	std::vector<int> sel(std::size_t(r + s));
	std::iota(sel.begin(), sel.end(), 0);
	auto next = [&]() {
		int k = r + s - 1;
		while (k >= 0 && sel[std::size_t(k)] == dim - (r + s) + k)
			--k;
		if (k < 0)
			return false;
		++sel[std::size_t(k)];
		for (int j = k + 1; j < r + s; ++j)
			sel[std::size_t(j)] = sel[std::size_t(j - 1)] + 1;
		return true;
	};
	if (r + s > dim)
		return out;
	do
	{
		for (int mu = 0; mu < dim; ++mu)
		{
			Expr acc;
			std::vector<int> perm = sel;
			do
			{
				std::vector<int> p = perm;
				int sg = sort_sign(p);
				Expr t = term(perm, mu);
				if (sg > 0)
					acc += t;
				else
					acc -= t;
			} while (std::next_permutation(perm.begin(), perm.end()));
			acc *= norm;
			out.set(sel, mu, acc);
		}
	} while (next());
	return out;
}

TangentValuedForm nijenhuis_differential(TangentValuedForm const &theta,
                                         TangentValuedForm const &sigma, JetContext const &ctx)
{
	return fn_bracket(theta, sigma, ctx);
}

} // namespace jetvar
