#include "jetvar/form.hpp"

#include <algorithm>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

void add_term(Form::TermMap &m, FormBasis const &b, Expr const &c)
{
	if (c.empty())
		return;
	auto [it, inserted] = m.try_emplace(b, c);
	if (!inserted)
	{
		it->second += c;
		if (it->second.empty())
			m.erase(it);
	}
}

// exchange sign of two adjacent contact factors
int swap_sign(Var const &a, Var const &b) { return (a.odd && b.odd) ? 1 : -1; }

// sorts θ factors in place; returns the sign, 0 if an even θ repeats
int sort_theta(std::vector<Var> &t)
{
	int sign = 1;
	for (std::size_t i = 1; i < t.size(); ++i)
	{
		std::size_t j = i;
		while (j > 0 && t[j] < t[j - 1])
		{
			sign *= swap_sign(t[j], t[j - 1]);
			std::swap(t[j], t[j - 1]);
			--j;
		}
	}
	for (std::size_t i = 1; i < t.size(); ++i)
		if (t[i] == t[i - 1] && !t[i].odd)
			return 0;
	return sign;
}

int bits_below(std::uint32_t mask, int lambda)
{
	return __builtin_popcount(mask & ((1u << lambda) - 1u));
}

// A ∧ B on basis elements
int wedge_basis(FormBasis const &a, FormBasis const &b, FormBasis &out)
{
	if (a.dx & b.dx)
		return 0;
	int sign = 1;
	// dx factors of b move left past the θ's of a
	if ((__builtin_popcount(b.dx) * a.contact_degree()) % 2)
		sign = -sign;
	// merge dx masks
	int inv = 0;
	for (int l = 0; l < 32; ++l)
		if (b.dx >> l & 1u)
			inv += __builtin_popcount(a.dx >> l >> 1);
	if (inv % 2)
		sign = -sign;
	out.dx = a.dx | b.dx;
	out.theta = a.theta;
	out.theta.insert(out.theta.end(), b.theta.begin(), b.theta.end());
	if (!b.theta.empty() && !a.theta.empty())
	{
		int s = sort_theta(out.theta);
		if (s == 0)
			return 0;
		sign *= s;
	}
	return sign;
}

// θ_v ∧ B
int left_theta(Var const &v, FormBasis const &b, FormBasis &out)
{
	FormBasis single;
	single.theta.push_back(v);
	return wedge_basis(single, b, out);
}

} // namespace

// ---- Form basics ---------------------------------------------------------------

Form::Form(Expr f)
{
	if (!f.empty())
		terms_.emplace(FormBasis{}, std::move(f));
}

Form Form::dx(int lambda)
{
	FormBasis b;
	b.dx = 1u << lambda;
	return term(Expr(1), b);
}

Form Form::theta(Var v)
{
	FormBasis b;
	b.theta.push_back(v);
	return term(Expr(1), b);
}

Form Form::term(Expr coef, FormBasis b)
{
	Form f;
	int s = sort_theta(b.theta);
	if (s == 0 || coef.empty())
		return f;
	if (s < 0)
		coef = -coef;
	f.terms_.emplace(std::move(b), std::move(coef));
	return f;
}

Form Form::from_terms(TermMap t)
{
	Form f;
	for (auto &[b, c] : t)
		if (!c.empty())
			f.terms_.emplace(b, std::move(c));
	return f;
}

Form Form::volume(int n)
{
	FormBasis b;
	b.dx = (n >= 32) ? ~0u : ((1u << n) - 1u);
	return term(Expr(1), b);
}

Expr Form::coefficient(FormBasis const &b) const
{
	auto it = terms_.find(b);
	return it == terms_.end() ? Expr() : it->second;
}

std::set<std::pair<int, int>> Form::bidegrees() const
{
	std::set<std::pair<int, int>> r;
	for (auto const &[b, c] : terms_)
		r.insert({b.contact_degree(), b.horizontal_degree()});
	return r;
}

int Form::parity() const
{
	int p = -2;
	for (auto const &[b, c] : terms_)
	{
		int cp = c.parity();
		if (cp < 0)
			return -1;
		int q = (cp + b.parity()) % 2;
		if (p == -2)
			p = q;
		else if (p != q)
			return -1;
	}
	return p == -2 ? 0 : p;
}

int Form::jet_order() const
{
	int o = -1;
	for (auto const &[b, c] : terms_)
	{
		o = std::max(o, jetvar::jet_order(c));
		for (auto const &v : b.theta)
			o = std::max(o, v.mi.order());
	}
	return o;
}

Form Form::operator-() const
{
	Form r = *this;
	for (auto &[b, c] : r.terms_)
		c = -c;
	return r;
}

Form &Form::operator+=(Form const &o)
{
	for (auto const &[b, c] : o.terms_)
		add_term(terms_, b, c);
	return *this;
}

Form &Form::operator-=(Form const &o)
{
	for (auto const &[b, c] : o.terms_)
		add_term(terms_, b, -c);
	return *this;
}

Form operator*(Expr const &f, Form const &a)
{
	Form r;
	if (f.empty())
		return r;
	for (auto const &[b, c] : a.terms_)
		add_term(r.terms_, b, f * c);
	return r;
}

Form wedge(Form const &a, Form const &b)
{
	Form::TermMap acc;
	FormBasis out;
	for (auto const &[ba, ca] : a.terms())
		for (auto const &[bb, cb] : b.terms())
		{
			int s = wedge_basis(ba, bb, out);
			if (s == 0)
				continue;
			// moving the coefficient of b left past the factors of A
			int gp = cb.parity();
			Expr c;
			if (gp < 0)
			{
				// split cb by parity
				Expr ev, od;
				for (auto const &[m, k] : cb.terms())
					(m.parity() ? od : ev) += Expr::monomial(m, k);
				Expr od_signed = ba.parity() ? -od : od;
				c = ca * (ev + od_signed);
			}
			else
			{
				c = ca * cb;
				if (gp && ba.parity())
					c = -c;
			}
			if (s < 0)
				c = -c;
			add_term(acc, out, c);
		}
	return Form::from_terms(std::move(acc));
}

Form total_derivative(Form const &phi, int lambda)
{
	Form::TermMap acc;
	for (auto const &[b, c] : phi.terms())
	{
		add_term(acc, b, total_derivative(c, lambda));
		for (std::size_t j = 0; j < b.theta.size(); ++j)
		{
			FormBasis nb = b;
			nb.theta[j] = b.theta[j].shifted(lambda);
			int s = sort_theta(nb.theta);
			if (s == 0)
				continue;
			add_term(acc, nb, s > 0 ? c : -c);
		}
	}
	return Form::from_terms(std::move(acc));
}

// dx^λ ∧ B
static int left_dx(int lambda, FormBasis const &b, FormBasis &out)
{
	if (b.dx >> lambda & 1u)
		return 0;
	out = b;
	out.dx |= 1u << lambda;
	return (bits_below(b.dx, lambda) % 2) ? -1 : 1;
}

Form d_H(Form const &phi, JetContext const &ctx)
{
	Form::TermMap acc;
	FormBasis out;
	for (int l = 0; l < ctx.n(); ++l)
	{
		Form dl = total_derivative(phi, l);
		for (auto const &[b, c] : dl.terms())
		{
			int s = left_dx(l, b, out);
			if (s == 0)
				continue;
			add_term(acc, out, s > 0 ? c : -c);
		}
	}
	return Form::from_terms(std::move(acc));
}

Form d_V(Form const &phi)
{
	Form::TermMap acc;
	FormBasis out;
	for (auto const &[b, c] : phi.terms())
	{
		for (auto const &v : jet_variables(c))
		{
			Expr g = partial(c, v);
			if (g.empty())
				continue;
			int s = left_theta(v, b, out);
			if (s == 0)
				continue;
			// θ_v ∧ g = (-1)^{[g][v]} g θ_v; g may mix parities
			if (v.odd)
			{
				Expr ev, od;
				for (auto const &[m, k] : g.terms())
					(m.parity() ? od : ev) += Expr::monomial(m, k);
				g = ev - od;
			}
			add_term(acc, out, s > 0 ? g : -g);
		}
	}
	return Form::from_terms(std::move(acc));
}

Form exterior_d(Form const &phi, JetContext const &ctx) { return d_H(phi, ctx) + d_V(phi); }

Form h_projection(Form const &phi, int k, int s)
{
	Form::TermMap acc;
	for (auto const &[b, c] : phi.terms())
		if ((k < 0 || b.contact_degree() == k) && (s < 0 || b.horizontal_degree() == s))
			acc.emplace(b, c);
	return Form::from_terms(std::move(acc));
}

Form h0(Form const &phi) { return h_projection(phi, 0, -1); }

bool is_zero(Form const &phi)
{
	for (auto const &[b, c] : phi.terms())
		if (!is_zero(c))
			return false;
	return true;
}

namespace {

// replaces every θ^i_Λ by θ^i_Λ + sign·y^i_{λ+Λ}dx^λ
Form shift_basis(Form const &phi, JetContext const &ctx, int sign)
{
	Form r;
	for (auto const &[b, c] : phi.terms())
	{
		FormBasis h;
		h.dx = b.dx;
		Form acc = Form::term(c, h);
		for (auto const &v : b.theta)
		{
			Form f = Form::theta(v);
			for (int l = 0; l < ctx.n(); ++l)
				f += Expr(sign) * ctx.y(v.index, v.mi.plus(l)) * Form::dx(l);
			acc = wedge(acc, f);
		}
		r += acc;
	}
	return r;
}

} // namespace

Form to_dy_basis(Form const &phi, JetContext const &ctx) { return shift_basis(phi, ctx, -1); }
Form from_dy_basis(Form const &phi, JetContext const &ctx) { return shift_basis(phi, ctx, 1); }

// ---- vector fields ------------------------------------------------------------------

Expr VectorField::base_component(int lambda) const
{
	if (lambda < int(base.size()))
		return base[std::size_t(lambda)];
	return Expr();
}

Expr VectorField::component(Var const &v) const
{
	if (v.kind == VarKind::Base)
		return base_component(v.index);
	if (v.kind != VarKind::Jet)
		return Expr();
	if (v.mi.order() <= order)
	{
		auto it = fibre.find(v);
		return it == fibre.end() ? Expr() : it->second;
	}
	if (!projectable)
		throw OrderError("vector field is declared only up to jet order " +
		                 std::to_string(order));
	// u^i_{λ+Λ} = d_λ u^i_Λ − y^i_{μ+Λ} ∂_λ u^μ
	int lambda = v.mi[0];
	Var lower{v.kind, v.odd, v.index, *v.mi.minus(lambda)};
	Expr r = total_derivative(component(lower), lambda);
	for (std::size_t mu = 0; mu < base.size(); ++mu)
	{
		Expr dl = partial_base(base[mu], lambda);
		if (dl.empty())
			continue;
		r -= Expr::var(lower.shifted(int(mu))) * dl;
	}
	return r;
}

int VectorField::parity() const
{
	int p = -2;
	auto visit = [&](int q) {
		if (p == -2)
			p = q;
		else if (p != q)
			p = -1;
	};
	for (auto const &b : base)
		if (!b.empty())
		{
			int q = b.parity();
			visit(q < 0 ? -1 : q);
		}
	for (auto const &[v, c] : fibre)
		if (!c.empty())
		{
			int q = c.parity();
			visit(q < 0 ? -1 : (q + int(v.odd)) % 2);
		}
	if (p == -1)
		return -1;
	return p == -2 ? 0 : p;
}

bool VectorField::is_zero() const
{
	for (auto const &b : base)
		if (!b.empty())
			return false;
	for (auto const &[v, c] : fibre)
		if (!c.empty())
			return false;
	return true;
}

VectorField make_vector_field(std::vector<Expr> base, std::map<Var, Expr> fibre, int order)
{
	VectorField u;
	u.base = std::move(base);
	for (auto &[v, c] : fibre)
	{
		if (v.kind != VarKind::Jet)
			throw std::invalid_argument("fibre component keyed by a non-jet variable");
		if (v.mi.order() > order)
			throw OrderError("fibre component above the declared order");
		if (!c.empty())
			u.fibre.emplace(v, std::move(c));
	}
	u.order = order;
	return u;
}

VectorField projectable_field(std::vector<Expr> base, std::map<Var, Expr> fibre)
{
	for (auto const &b : base)
		if (b.has_jets())
			throw NotProjectable("base components must depend on base coordinates only");
	for (auto const &[v, c] : fibre)
		if (jet_order(c) > 0 || v.mi.order() > 0)
			throw NotProjectable("fibre components must live on order 0");
	VectorField u = make_vector_field(std::move(base), std::move(fibre), 0);
	u.projectable = true;
	return u;
}

Expr apply(VectorField const &u, Expr const &f)
{
	Expr r;
	for (auto const &v : variables(f))
	{
		if (v.kind == VarKind::Param)
			continue;
		if (v.kind == VarKind::Base)
			continue;
		Expr c = u.component(v);
		if (!c.empty())
			r += c * partial(f, v);
	}
	// base directions act through atoms as well
	for (std::size_t l = 0; l < u.base.size(); ++l)
		if (!u.base[l].empty())
			r += u.base[l] * partial_base(f, int(l));
	return r;
}

namespace {

// sign and remaining basis when ∂_K (parity pk) contracts factor j of b;
// the sign covers passing the earlier factors and moving the scalar result
// (parity pg) to the front
struct Removal
{
	int sign;
	FormBasis rest;
};

Removal remove_factor(FormBasis const &b, int j, int pk, int pg)
{
	// factors in storage order: dx (ascending) then θ
	std::vector<int> par;
	for (int l = 0; l < 32; ++l)
		if (b.dx >> l & 1u)
			par.push_back(0);
	for (auto const &v : b.theta)
		par.push_back(int(v.odd));
	int sign = 1;
	for (int l = 0; l < j; ++l)
		if ((1 + par[std::size_t(l)] * pk + pg * par[std::size_t(l)]) % 2)
			sign = -sign;
	Removal r{sign, b};
	int ndx = b.horizontal_degree();
	if (j < ndx)
	{
		int seen = 0;
		for (int l = 0; l < 32; ++l)
			if (b.dx >> l & 1u)
			{
				if (seen == j)
				{
					r.rest.dx &= ~(1u << l);
					break;
				}
				++seen;
			}
	}
	else
		r.rest.theta.erase(r.rest.theta.begin() + (j - ndx));
	return r;
}

int parity_of(Expr const &e) { return std::max(0, e.parity()); }

Expr graded_left(Expr const &f, int pk)
{
	// (-1)^{[f][K]} f with f possibly of mixed parity
	if (!pk)
		return f;
	Expr ev, od;
	for (auto const &[m, k] : f.terms())
		(m.parity() ? od : ev) += Expr::monomial(m, k);
	return ev - od;
}

} // namespace

Form interior_product(VectorField const &u, Form const &phi)
{
	Form::TermMap acc;
	for (auto const &[b, c] : phi.terms())
	{
		if (b.degree() == 0)
			throw DegreeError("interior product of a 0-form");
		int ndx = b.horizontal_degree();
		std::vector<int> dirs;
		for (int l = 0; l < 32; ++l)
			if (b.dx >> l & 1u)
				dirs.push_back(l);
		// horizontal factors: only K = ∂_μ contributes, scalar 1
		for (int j = 0; j < ndx; ++j)
		{
			Expr uk = u.base_component(dirs[std::size_t(j)]);
			if (uk.empty())
				continue;
			Removal r = remove_factor(b, j, 0, 0);
			Expr t = uk * c;
			add_term(acc, r.rest, r.sign > 0 ? t : -t);
		}
		for (int j = 0; j < b.contact_degree(); ++j)
		{
			Var const &v = b.theta[std::size_t(j)];
			int pv = int(v.odd);
			// K = ∂^Λ_i: scalar 1 (parity 0)
			Expr uv = u.component(v);
			if (!uv.empty())
			{
				Removal r = remove_factor(b, ndx + j, pv, 0);
				Expr t = uv * graded_left(c, pv);
				add_term(acc, r.rest, r.sign > 0 ? t : -t);
			}
			// K = ∂_λ: scalar −y^i_{λ+Λ} (parity pv)
			for (std::size_t l = 0; l < u.base.size(); ++l)
			{
				Expr const &ul = u.base[l];
				if (ul.empty())
					continue;
				Removal r = remove_factor(b, ndx + j, 0, pv);
				Expr g = -Expr::var(v.shifted(int(l)));
				Expr t = ul * c * g;
				add_term(acc, r.rest, r.sign > 0 ? t : -t);
			}
		}
	}
	(void)parity_of;
	return Form::from_terms(std::move(acc));
}

Form lie_derivative(VectorField const &u, Form const &phi, JetContext const &ctx)
{
	Form r;
	// split off the 0-form part, on which u⌋ vanishes
	Form zero_part = h_projection(phi, 0, 0);
	Form rest = phi - zero_part;
	Form dphi = exterior_d(phi, ctx);
	if (!dphi.empty())
		r += interior_product(u, dphi);
	if (!rest.empty())
		r += exterior_d(interior_product(u, rest), ctx);
	return r;
}

VectorField prolong_vector_field(VectorField const &u, int k, JetContext const &ctx)
{
	if (!u.projectable)
	{
		// accept plain order-0 data that satisfies the projectability conditions
		VectorField p = projectable_field(u.base, u.fibre);
		return prolong_vector_field(p, k, ctx);
	}
	VectorField r;
	r.base = u.base;
	r.base.resize(std::size_t(ctx.n()));
	r.order = k;
	r.projectable = true;
	for (int i = 0; i < ctx.field_count(); ++i)
		for (int o = 0; o <= k; ++o)
			for (auto const &mi : multi_indices(ctx.n(), o))
			{
				Var v = ctx.jet_var(i, mi);
				Expr c = u.component(v);
				if (!c.empty())
					r.fibre.emplace(v, std::move(c));
			}
	return r;
}

std::pair<VectorField, VectorField> split_vector_field(VectorField const &u,
                                                       JetContext const &ctx)
{
	VectorField h, v;
	h.base = u.base;
	h.base.resize(std::size_t(ctx.n()));
	v.base.assign(std::size_t(ctx.n()), Expr());
	h.order = v.order = u.order;
	for (int i = 0; i < ctx.field_count(); ++i)
		for (int o = 0; o <= u.order; ++o)
			for (auto const &mi : multi_indices(ctx.n(), o))
			{
				Var w = ctx.jet_var(i, mi);
				Expr hc;
				for (int l = 0; l < ctx.n(); ++l)
					hc += h.base[std::size_t(l)] * Expr::var(w.shifted(l));
				Expr vc = u.component(w) - hc;
				if (!hc.empty())
					h.fibre.emplace(w, hc);
				if (!vc.empty())
					v.fibre.emplace(w, vc);
			}
	return {h, v};
}

VectorField bracket(VectorField const &u, VectorField const &v)
{
	VectorField r;
	int pu = std::max(0, u.parity()), pv = std::max(0, v.parity());
	int sgn = (pu && pv) ? 1 : -1;   // [u,v] = u v − (−1)^{[u][v]} v u
	std::size_t nb = std::max(u.base.size(), v.base.size());
	r.base.resize(nb);
	for (std::size_t l = 0; l < nb; ++l)
	{
		Expr a = apply(u, v.base_component(int(l)));
		Expr b = apply(v, u.base_component(int(l)));
		r.base[l] = sgn > 0 ? a + b : a - b;
	}
	r.order = std::min(u.order, v.order);
	r.projectable = u.projectable && v.projectable;
	std::set<Var> keys;
	for (auto const &[w, c] : u.fibre)
		keys.insert(w);
	for (auto const &[w, c] : v.fibre)
		keys.insert(w);
	for (auto const &w : keys)
	{
		if (w.mi.order() > r.order)
			continue;
		Expr a = apply(u, v.component(w));
		Expr b = apply(v, u.component(w));
		Expr c = sgn > 0 ? a + b : a - b;
		if (!c.empty())
			r.fibre.emplace(w, c);
	}
	return r;
}

VectorField operator+(VectorField const &u, VectorField const &v)
{
	VectorField r = u;
	r.base.resize(std::max(u.base.size(), v.base.size()));
	for (std::size_t l = 0; l < v.base.size(); ++l)
		r.base[l] += v.base[l];
	for (auto const &[w, c] : v.fibre)
	{
		Expr s = r.fibre[w] + c;
		if (s.empty())
			r.fibre.erase(w);
		else
			r.fibre[w] = s;
	}
	r.order = std::max(u.order, v.order);
	r.projectable = u.projectable && v.projectable;
	return r;
}

VectorField operator-(VectorField const &u, VectorField const &v)
{
	VectorField m = v;
	for (auto &b : m.base)
		b = -b;
	for (auto &[w, c] : m.fibre)
		c = -c;
	return u + m;
}

bool equal(VectorField const &u, VectorField const &v)
{
	VectorField d = u - v;
	for (auto const &b : d.base)
		if (!is_zero(b))
			return false;
	for (auto const &[w, c] : d.fibre)
		if (!is_zero(c))
			return false;
	return true;
}

TensorBundle declare_tensor_bundle(JetContext &ctx, std::string const &stem, int m, int k)
{
	TensorBundle tb;
	tb.m = m;
	tb.k = k;
	int n = ctx.n();
	int total = m + k;
	std::vector<int> idx(std::size_t(total), 0);
	for (;;)
	{
		std::string name = stem;
		for (int a = 0; a < m; ++a)
			name += std::to_string(idx[std::size_t(a)] + 1);
		if (k > 0)
		{
			name += "_";
			for (int b = m; b < total; ++b)
				name += std::to_string(idx[std::size_t(b)] + 1);
		}
		tb.field_of[idx] = ctx.add_field(name);
		int p = total - 1;
		while (p >= 0 && ++idx[std::size_t(p)] == n)
			idx[std::size_t(p--)] = 0;
		if (p < 0)
			break;
	}
	return tb;
}

VectorField canonical_lift_tensor(std::vector<Expr> const &tau, TensorBundle const &bundle,
                                  JetContext const &ctx)
{
	for (auto const &t : tau)
		if (t.has_jets())
			throw NotProjectable("τ must depend on base coordinates only");
	int n = ctx.n();
	VectorField r;
	r.base = tau;
	r.base.resize(std::size_t(n));
	r.order = 0;
	r.projectable = true;
	for (auto const &[idx, field] : bundle.field_of)
	{
		Expr c;
		for (int j = 0; j < bundle.m; ++j)
			for (int nu = 0; nu < n; ++nu)
			{
				Expr d = partial_base(r.base[std::size_t(idx[std::size_t(j)])], nu);
				if (d.empty())
					continue;
				auto other = idx;
				other[std::size_t(j)] = nu;
				c += d * ctx.y(bundle.field_of.at(other));
			}
		for (int j = bundle.m; j < bundle.m + bundle.k; ++j)
			for (int nu = 0; nu < n; ++nu)
			{
				Expr d = partial_base(r.base[std::size_t(nu)], idx[std::size_t(j)]);
				if (d.empty())
					continue;
				auto other = idx;
				other[std::size_t(j)] = nu;
				c -= d * ctx.y(bundle.field_of.at(other));
			}
		if (!c.empty())
			r.fibre.emplace(ctx.jet_var(field), c);
	}
	return r;
}

} // namespace jetvar
