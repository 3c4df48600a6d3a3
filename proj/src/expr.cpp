#include "jetvar/expr.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "jetvar/errors.hpp"

namespace jetvar {

// ---- atoms ----------------------------------------------------------------

AtomKind Atom::kind() const { return node_->kind; }

bool operator==(Atom const &a, Atom const &b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(Atom const &a, Atom const &b)
{
	if (a.node_ == b.node_)
		return std::strong_ordering::equal;
	auto const &x = *a.node_;
	auto const &y = *b.node_;
	if (auto c = x.kind <=> y.kind; c != 0)
		return c;
	if (x.kind == AtomKind::Opaque)
	{
		if (auto c = x.name <=> y.name; c != 0)
			return c;
		if (auto c = x.deps <=> y.deps; c != 0)
			return c;
		return x.deriv <=> y.deriv;
	}
	return x.arg <=> y.arg;
}

std::strong_ordering operator<=>(Expr const &a, Expr const &b)
{
	return std::lexicographical_compare_three_way(
	    a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end());
}

namespace {

void add_term(Expr::TermMap &m, Monomial const &mono, Rational const &c)
{
	if (c.is_zero())
		return;
	auto [it, inserted] = m.try_emplace(mono, c);
	if (!inserted)
	{
		it->second += c;
		if (it->second.is_zero())
			m.erase(it);
	}
}

void add_term(Expr::TermMap &m, Monomial &&mono, Rational const &c)
{
	if (c.is_zero())
		return;
	auto it = m.find(mono);
	if (it == m.end())
		m.emplace(std::move(mono), c);
	else
	{
		it->second += c;
		if (it->second.is_zero())
			m.erase(it);
	}
}

void mul_even(std::vector<std::pair<Var, int>> &ev, Var const &v, int e)
{
	auto it = std::lower_bound(
	    ev.begin(), ev.end(), v,
	    [](std::pair<Var, int> const &p, Var const &w) { return p.first < w; });
	if (it != ev.end() && it->first == v)
	{
		it->second += e;
		if (it->second == 0)
			ev.erase(it);
	}
	else if (e != 0)
		ev.insert(it, {v, e});
}

// product of monomials; returns sign (0 when a Grassmann square appears)
int mul_mono(Monomial const &a, Monomial const &b, Monomial &out)
{
	out.even.clear();
	out.odd.clear();
	out.atoms.clear();
	// even part: merge
	{
		auto i = a.even.begin(), j = b.even.begin();
		while (i != a.even.end() || j != b.even.end())
		{
			if (j == b.even.end() || (i != a.even.end() && i->first < j->first))
				out.even.push_back(*i++);
			else if (i == a.even.end() || j->first < i->first)
				out.even.push_back(*j++);
			else
			{
				int e = i->second + j->second;
				if (e != 0)
					out.even.push_back({i->first, e});
				++i;
				++j;
			}
		}
	}
	int sign = 1;
	{
		auto i = a.odd.begin(), j = b.odd.begin();
		while (i != a.odd.end() || j != b.odd.end())
		{
			if (j == b.odd.end() || (i != a.odd.end() && *i < *j))
				out.odd.push_back(*i++);
			else if (i == a.odd.end() || *j < *i)
			{
				// passes every remaining factor of a
				if ((a.odd.end() - i) % 2)
					sign = -sign;
				out.odd.push_back(*j++);
			}
			else
				return 0;
		}
	}
	{
		auto i = a.atoms.begin(), j = b.atoms.begin();
		while (i != a.atoms.end() || j != b.atoms.end())
		{
			if (j == b.atoms.end() || (i != a.atoms.end() && i->first < j->first))
				out.atoms.push_back(*i++);
			else if (i == a.atoms.end() || j->first < i->first)
				out.atoms.push_back(*j++);
			else
			{
				Rational e = i->second + j->second;
				if (!e.is_zero())
					out.atoms.push_back({i->first, e});
				++i;
				++j;
			}
		}
	}
	return sign;
}

bool needs_pow_expansion(Monomial const &m)
{
	for (auto const &[a, q] : m.atoms)
		if (a.kind() == AtomKind::Pow && q.is_integer() && q.num() > 0)
			return true;
	return false;
}

// (u)^k with k a positive integer written back as an ordinary product
void add_expanding(Expr::TermMap &m, Monomial &&mono, Rational const &c)
{
	if (!needs_pow_expansion(mono))
	{
		add_term(m, std::move(mono), c);
		return;
	}
	Expr acc = Expr(c);
	Monomial rest = mono;
	rest.atoms.clear();
	for (auto const &[a, q] : mono.atoms)
	{
		if (a.kind() == AtomKind::Pow && q.is_integer() && q.num() > 0)
			acc *= pow(a.node().arg, q);
		else
			rest.atoms.push_back({a, q});
	}
	acc *= Expr::monomial(std::move(rest));
	for (auto const &[mm, cc] : acc.terms())
		add_term(m, mm, cc);
}

Expr make_atom(AtomNode node)
{
	return Expr::atom(Atom(std::make_shared<const AtomNode>(std::move(node))));
}

} // namespace

// ---- Expr basics -------------------------------------------------------------

Expr::Expr(Rational c)
{
	if (!c.is_zero())
		terms_.emplace(Monomial{}, c);
}

Expr Expr::from_terms(TermMap t)
{
	Expr e;
	for (auto it = t.begin(); it != t.end();)
	{
		if (it->second.is_zero())
			it = t.erase(it);
		else
			++it;
	}
	e.terms_ = std::move(t);
	return e;
}

Expr Expr::var(Var v)
{
	Monomial m;
	if (v.odd)
		m.odd.push_back(v);
	else
		m.even.push_back({v, 1});
	return monomial(std::move(m));
}

Expr Expr::monomial(Monomial m, Rational c)
{
	Expr e;
	add_expanding(e.terms_, std::move(m), c);
	return e;
}

Expr Expr::atom(Atom a, Rational exponent)
{
	Monomial m;
	if (!exponent.is_zero())
		m.atoms.push_back({std::move(a), exponent});
	return monomial(std::move(m));
}

bool Expr::is_constant() const
{
	return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<Rational> Expr::constant_value() const
{
	if (terms_.empty())
		return Rational(0);
	if (is_constant())
		return terms_.begin()->second;
	return std::nullopt;
}

int Expr::parity() const
{
	int p = -2;
	for (auto const &[m, c] : terms_)
	{
		int q = m.parity();
		if (p == -2)
			p = q;
		else if (p != q)
			return -1;
	}
	return p == -2 ? 0 : p;
}

bool Expr::has_elementary_atoms() const
{
	for (auto const &[m, c] : terms_)
		for (auto const &[a, q] : m.atoms)
		{
			if (a.kind() != AtomKind::Opaque)
				return true;
		}
	return false;
}

bool Expr::has_atoms() const
{
	for (auto const &[m, c] : terms_)
		if (!m.atoms.empty())
			return true;
	return false;
}

bool Expr::has_jets() const
{
	for (auto const &[m, c] : terms_)
	{
		if (!m.odd.empty())
			return true;
		for (auto const &[v, e] : m.even)
			if (v.is_jet())
				return true;
	}
	return false;
}

bool Expr::has_odd() const
{
	for (auto const &[m, c] : terms_)
		if (!m.odd.empty())
			return true;
	return false;
}

Expr Expr::operator-() const
{
	Expr r = *this;
	for (auto &[m, c] : r.terms_)
		c = -c;
	return r;
}

Expr &Expr::operator+=(Expr const &o)
{
	for (auto const &[m, c] : o.terms_)
		add_term(terms_, m, c);
	return *this;
}

Expr &Expr::operator-=(Expr const &o)
{
	for (auto const &[m, c] : o.terms_)
		add_term(terms_, m, -c);
	return *this;
}

Expr &Expr::operator*=(Rational const &c)
{
	if (c.is_zero())
		terms_.clear();
	else
		for (auto &[m, v] : terms_)
			v *= c;
	return *this;
}

Expr &Expr::operator*=(Expr const &o)
{
	*this = *this * o;
	return *this;
}

Expr operator*(Expr const &a, Expr const &b)
{
	Expr r;
	if (a.terms_.empty() || b.terms_.empty())
		return r;
	if (auto c = b.constant_value())
		return Expr(a) *= *c;
	if (auto c = a.constant_value())
		return Expr(b) *= *c;
	Monomial prod;
	for (auto const &[ma, ca] : a.terms_)
		for (auto const &[mb, cb] : b.terms_)
		{
			int s = mul_mono(ma, mb, prod);
			if (s == 0)
				continue;
			Rational c = ca * cb;
			if (s < 0)
				c = -c;
			add_expanding(r.terms_, Monomial(prod), c);
		}
	return r;
}

// ---- atoms and elementary functions -------------------------------------------

Expr opaque(std::string name, std::uint32_t deps, MultiIndex deriv)
{
	for (int d : deriv)
		if (!(deps >> d & 1u))
			return Expr();
	AtomNode n;
	n.kind = AtomKind::Opaque;
	n.name = std::move(name);
	n.deps = deps;
	n.deriv = deriv;
	return make_atom(std::move(n));
}

namespace {

void require_base_function(Expr const &u, char const *what)
{
	if (u.has_jets())
		throw NonPolynomial(std::string(what) +
		                    ": elementary functions of jet coordinates are not supported");
}

Expr elementary(AtomKind k, Expr const &u)
{
	AtomNode n;
	n.kind = k;
	n.arg = u;
	return make_atom(std::move(n));
}

} // namespace

Expr sin(Expr const &u)
{
	require_base_function(u, "sin");
	if (u.empty())
		return Expr();
	return elementary(AtomKind::Sin, u);
}

Expr cos(Expr const &u)
{
	require_base_function(u, "cos");
	if (u.empty())
		return Expr(1);
	return elementary(AtomKind::Cos, u);
}

Expr exp(Expr const &u)
{
	require_base_function(u, "exp");
	if (u.empty())
		return Expr(1);
	return elementary(AtomKind::Exp, u);
}

Expr ln(Expr const &u)
{
	require_base_function(u, "ln");
	if (auto c = u.constant_value(); c && c->is_one())
		return Expr();
	if (u.empty())
		throw std::domain_error("ln(0)");
	return elementary(AtomKind::Ln, u);
}

Expr pow(Expr const &u, Rational q)
{
	if (q.is_zero())
		return Expr(1);
	if (u.empty())
	{
		if (q.sign() > 0)
			return Expr();
		throw std::domain_error("negative power of zero");
	}
	if (q.is_integer() && q.num() > 0)
	{
		Expr r(1), b = u;
		std::int64_t k = q.num();
		while (k)
		{
			if (k & 1)
				r *= b;
			k >>= 1;
			if (k)
				b = b * b;
		}
		return r;
	}
	if (u.size() == 1)
	{
		auto const &[m, c] = *u.terms().begin();
		if (m.odd.empty())
		{
			// scale exponents when every resulting even exponent stays integral
			bool ok = true;
			for (auto const &[v, e] : m.even)
			{
				Rational s = Rational(e) * q;
				if (!s.is_integer())
					ok = false;
			}
			std::optional<Rational> cq;
			if (q.is_integer())
			{
				Rational r(1);
				Rational base = q.sign() > 0 ? c : Rational(1) / c;
				for (std::int64_t i = 0; i < (q.num() < 0 ? -q.num() : q.num()); ++i)
					r *= base;
				cq = r;
			}
			else if (c.is_one())
				cq = Rational(1);
			if (ok && cq)
			{
				Monomial r;
				for (auto const &[v, e] : m.even)
					r.even.push_back({v, int((Rational(e) * q).num())});
				for (auto const &[a, e] : m.atoms)
					r.atoms.push_back({a, e * q});
				return Expr::monomial(std::move(r), *cq);
			}
		}
	}
	if (u.has_odd())
		throw NonPolynomial("non-integer power of a Grassmann-odd expression");
	if (u.has_jets())
		throw NonPolynomial("negative or fractional power of a jet-dependent sum");
	AtomNode n;
	n.kind = AtomKind::Pow;
	n.arg = u;
	return Expr::atom(Atom(std::make_shared<const AtomNode>(std::move(n))), q);
}

// ---- derivatives --------------------------------------------------------------

namespace {

// derivative of the bare atom A (exponent 1) along a base or parameter variable
Expr atom_derivative(Atom const &a, Var const &v)
{
	auto const &n = a.node();
	if (n.kind == AtomKind::Opaque)
	{
		if (v.kind != VarKind::Base)
			return Expr();
		return opaque(n.name, n.deps, n.deriv.plus(v.index));
	}
	Expr du = partial(n.arg, v);
	if (du.empty())
		return du;
	switch (n.kind)
	{
	case AtomKind::Sin:
		return cos(n.arg) * du;
	case AtomKind::Cos:
		return -(sin(n.arg) * du);
	case AtomKind::Exp:
		return Expr::atom(a) * du;
	case AtomKind::Ln:
		return pow(n.arg, -1) * du;
	case AtomKind::Pow:
		return du;
	default:
		break;
	}
	return Expr();
}

bool atom_depends_on(Atom const &a, Var const &v)
{
	auto const &n = a.node();
	if (n.kind == AtomKind::Opaque)
		return v.kind == VarKind::Base && (n.deps >> v.index & 1u);
	if (v.kind == VarKind::Jet)
		return false;
	for (auto const &[m, c] : n.arg.terms())
	{
		for (auto const &[w, e] : m.even)
			if (w == v)
				return true;
		for (auto const &[b, q] : m.atoms)
			if (atom_depends_on(b, v))
				return true;
	}
	return false;
}

void atoms_partial(Monomial const &m, Rational const &c, Var const &v, Expr &out)
{
	for (std::size_t j = 0; j < m.atoms.size(); ++j)
	{
		auto const &[a, q] = m.atoms[j];
		if (!atom_depends_on(a, v))
			continue;
		Expr da = atom_derivative(a, v);
		if (da.empty())
			continue;
		Monomial rest = m;
		Rational nq = q - 1;
		if (nq.is_zero())
			rest.atoms.erase(rest.atoms.begin() + long(j));
		else
			rest.atoms[j].second = nq;
		out += Expr::monomial(std::move(rest), c * q) * da;
	}
}

} // namespace

Expr partial(Expr const &e, Var const &v)
{
	Expr::TermMap acc;
	Expr extra;
	for (auto const &[m, c] : e.terms())
	{
		if (v.odd)
		{
			auto it = std::lower_bound(m.odd.begin(), m.odd.end(), v);
			if (it != m.odd.end() && *it == v)
			{
				long pos = it - m.odd.begin();
				Monomial r = m;
				r.odd.erase(r.odd.begin() + pos);
				add_term(acc, std::move(r), (pos % 2) ? -c : c);
			}
			continue;
		}
		for (std::size_t j = 0; j < m.even.size(); ++j)
		{
			if (!(m.even[j].first == v))
				continue;
			int k = m.even[j].second;
			Monomial r = m;
			if (k == 1)
				r.even.erase(r.even.begin() + long(j));
			else
				r.even[j].second = k - 1;
			add_term(acc, std::move(r), c * Rational(k));
			break;
		}
		if (!m.atoms.empty() && v.kind != VarKind::Jet)
			atoms_partial(m, c, v, extra);
	}
	Expr r = Expr::from_terms(std::move(acc));
	r += extra;
	return r;
}

Expr partial_base(Expr const &e, int lambda) { return partial(e, Var::base(lambda)); }

Expr total_derivative(Expr const &e, int lambda)
{
	Expr::TermMap acc;
	Expr extra;
	Var x = Var::base(lambda);
	for (auto const &[m, c] : e.terms())
	{
		for (std::size_t j = 0; j < m.even.size(); ++j)
		{
			auto const &[v, k] = m.even[j];
			if (v.kind == VarKind::Param)
				continue;
			Monomial r = m;
			if (k == 1)
				r.even.erase(r.even.begin() + long(j));
			else
				r.even[j].second = k - 1;
			if (v.kind == VarKind::Jet)
				mul_even(r.even, v.shifted(lambda), 1);
			else if (v.index != lambda)
				continue;
			add_term(acc, std::move(r), c * Rational(k));
		}
		for (std::size_t j = 0; j < m.odd.size(); ++j)
		{
			// an even derivation: replace in place, then restore order
			Monomial r = m;
			Var w = m.odd[j].shifted(lambda);
			r.odd.erase(r.odd.begin() + long(j));
			auto it = std::lower_bound(r.odd.begin(), r.odd.end(), w);
			if (it != r.odd.end() && *it == w)
				continue;
			long pos = it - r.odd.begin();
			r.odd.insert(it, w);
			long moved = pos - long(j);
			add_term(acc, std::move(r), (moved % 2) ? -c : c);
		}
		if (!m.atoms.empty())
			atoms_partial(m, c, x, extra);
	}
	Expr r = Expr::from_terms(std::move(acc));
	r += extra;
	return r;
}

Expr total_derivative(Expr const &e, MultiIndex const &lambda)
{
	Expr r = e;
	for (int d : lambda)
		r = total_derivative(r, d);
	return r;
}

// ---- inspection ------------------------------------------------------------------

int jet_order(Expr const &e)
{
	int o = -1;
	for (auto const &[m, c] : e.terms())
	{
		for (auto const &[v, k] : m.even)
			if (v.is_jet())
				o = std::max(o, v.mi.order());
		for (auto const &v : m.odd)
			o = std::max(o, v.mi.order());
	}
	return o;
}

std::vector<Var> variables(Expr const &e)
{
	std::vector<Var> r;
	for (auto const &[m, c] : e.terms())
	{
		for (auto const &[v, k] : m.even)
			r.push_back(v);
		for (auto const &v : m.odd)
			r.push_back(v);
	}
	std::sort(r.begin(), r.end());
	r.erase(std::unique(r.begin(), r.end()), r.end());
	return r;
}

std::vector<Var> jet_variables(Expr const &e)
{
	auto vs = variables(e);
	std::erase_if(vs, [](Var const &v) { return !v.is_jet(); });
	return vs;
}

Expr substitute(Expr const &e, std::function<std::optional<Expr>(Var const &)> const &f)
{
	Expr r;
	for (auto const &[m, c] : e.terms())
	{
		Expr t(c);
		Monomial keep;
		for (auto const &[v, k] : m.even)
		{
			if (auto s = f(v))
				t *= pow(*s, Rational(k));
			else
				keep.even.push_back({v, k});
		}
		for (auto const &[a, q] : m.atoms)
		{
			auto const &n = a.node();
			if (n.kind == AtomKind::Opaque)
			{
				for (int l = 0; l < 32; ++l)
					if ((n.deps >> l & 1u) && f(Var::base(l)))
						throw std::logic_error("cannot substitute a base coordinate inside an opaque function");
				keep.atoms.push_back({a, q});
				continue;
			}
			Expr arg = substitute(n.arg, f);
			Expr base;
			switch (n.kind)
			{
			case AtomKind::Sin: base = sin(arg); break;
			case AtomKind::Cos: base = cos(arg); break;
			case AtomKind::Exp: base = exp(arg); break;
			case AtomKind::Ln: base = ln(arg); break;
			default: base = arg; break;
			}
			t *= pow(base, q);
		}
		t *= Expr::monomial(keep);
		// odd factors keep their stored order
		for (auto const &v : m.odd)
		{
			if (auto s = f(v))
				t *= *s;
			else
				t *= Expr::var(v);
		}
		r += t;
	}
	return r;
}

Expr substitute(Expr const &e, Var const &v, Expr const &by)
{
	return substitute(e, [&](Var const &w) -> std::optional<Expr> {
		if (w == v)
			return by;
		return std::nullopt;
	});
}

std::map<std::vector<Var>, Expr> split_odd(Expr const &e)
{
	std::map<std::vector<Var>, Expr::TermMap> g;
	for (auto const &[m, c] : e.terms())
	{
		Monomial r = m;
		r.odd.clear();
		add_term(g[m.odd], std::move(r), c);
	}
	std::map<std::vector<Var>, Expr> out;
	for (auto &[k, t] : g)
		out.emplace(k, Expr::from_terms(std::move(t)));
	return out;
}

std::map<int, Expr> coefficients_in(Expr const &e, Var const &v)
{
	std::map<int, Expr::TermMap> g;
	for (auto const &[m, c] : e.terms())
	{
		Monomial r = m;
		int k = 0;
		for (std::size_t j = 0; j < r.even.size(); ++j)
			if (r.even[j].first == v)
			{
				k = r.even[j].second;
				r.even.erase(r.even.begin() + long(j));
				break;
			}
		add_term(g[k], std::move(r), c);
	}
	std::map<int, Expr> out;
	for (auto &[k, t] : g)
		out.emplace(k, Expr::from_terms(std::move(t)));
	return out;
}

std::map<int, Expr> split_by_jet_degree(Expr const &e)
{
	std::map<int, Expr::TermMap> g;
	for (auto const &[m, c] : e.terms())
	{
		int d = int(m.odd.size());
		for (auto const &[v, k] : m.even)
			if (v.is_jet())
				d += k;
		add_term(g[d], m, c);
	}
	std::map<int, Expr> out;
	for (auto &[k, t] : g)
		out.emplace(k, Expr::from_terms(std::move(t)));
	return out;
}

// ---- numeric sampling --------------------------------------------------------------

struct Sampler::Impl
{
	struct Poly
	{
		// coefficient and exponents over up to 32 base directions
		std::vector<std::pair<double, std::vector<int>>> terms;
	};

	std::mt19937_64 rng;
	std::map<Var, double> values;
	std::map<std::pair<std::string, std::uint32_t>, Poly> functions;

	explicit Impl(std::uint64_t seed) : rng(seed) {}

	double uniform(double a, double b)
	{
		return std::uniform_real_distribution<double>(a, b)(rng);
	}

	double var(Var const &v)
	{
		auto it = values.find(v);
		if (it != values.end())
			return it->second;
		double x = 0;
		switch (v.kind)
		{
		case VarKind::Base: x = uniform(0.3, 1.2); break;
		case VarKind::Param: x = uniform(0.5, 1.5); break;
		case VarKind::Jet: x = uniform(-1.0, 1.0); break;
		}
		values.emplace(v, x);
		return x;
	}

	Poly &function(std::string const &name, std::uint32_t deps)
	{
		auto key = std::make_pair(name, deps);
		auto it = functions.find(key);
		if (it != functions.end())
			return it->second;
		Poly p;
		std::vector<int> dirs;
		for (int l = 0; l < 32; ++l)
			if (deps >> l & 1u)
				dirs.push_back(l);
		std::vector<int> zero(32, 0);
		p.terms.push_back({uniform(1.5, 2.5), zero});
		for (int a : dirs)
		{
			auto e = zero;
			e[a] = 1;
			p.terms.push_back({uniform(-0.5, 0.5), e});
			e[a] = 3;
			p.terms.push_back({uniform(-0.3, 0.3), e});
			for (int b : dirs)
				if (b >= a)
				{
					auto f = zero;
					f[a] += 1;
					f[b] += 1;
					p.terms.push_back({uniform(-0.5, 0.5), f});
				}
		}
		return functions.emplace(key, std::move(p)).first->second;
	}

	double opaque_value(AtomNode const &n)
	{
		Poly &p = function(n.name, n.deps);
		double s = 0;
		for (auto const &[c, ex] : p.terms)
		{
			auto e = ex;
			double k = c;
			for (int d : n.deriv)
			{
				k *= e[d];
				if (e[d] == 0)
					break;
				--e[d];
			}
			if (k == 0)
				continue;
			for (int l = 0; l < 32; ++l)
				if (e[l])
					k *= std::pow(var(Var::base(l)), e[l]);
			s += k;
		}
		return s;
	}

	double atom(AtomNode const &n)
	{
		switch (n.kind)
		{
		case AtomKind::Opaque: return opaque_value(n);
		case AtomKind::Sin: return std::sin(eval(n.arg));
		case AtomKind::Cos: return std::cos(eval(n.arg));
		case AtomKind::Exp: return std::exp(eval(n.arg));
		case AtomKind::Ln: return std::log(eval(n.arg));
		case AtomKind::Pow: return eval(n.arg);
		}
		return 0;
	}

	double monomial(Monomial const &m)
	{
		if (!m.odd.empty())
			throw std::logic_error("numeric evaluation of a Grassmann-odd monomial");
		double v = 1;
		for (auto const &[w, k] : m.even)
			v *= std::pow(var(w), k);
		for (auto const &[a, q] : m.atoms)
			v *= std::pow(atom(a.node()), q.to_double());
		return v;
	}

	double eval(Expr const &e)
	{
		double s = 0;
		for (auto const &[m, c] : e.terms())
			s += c.to_double() * monomial(m);
		return s;
	}
};

Sampler::Sampler(std::uint64_t seed) : impl_(std::make_shared<Impl>(seed)) {}

void Sampler::redraw()
{
	impl_->values.clear();
	impl_->functions.clear();
}

double Sampler::value(Var const &v) { return impl_->var(v); }
double Sampler::evaluate(Expr const &e) { return impl_->eval(e); }

double Sampler::magnitude(Expr const &e)
{
	double s = 0;
	for (auto const &[m, c] : e.terms())
		s += std::abs(c.to_double() * impl_->monomial(m));
	return s;
}

ZeroCheck zero_check(Expr const &e, int samples, double tol)
{
	ZeroCheck r;
	if (e.empty())
	{
		r.zero = true;
		return r;
	}
	if (!e.has_elementary_atoms())
		return r;
	r.probable = true;
	Sampler s(0x5eed0001u);
	auto groups = split_odd(e);
	for (int i = 0; i < samples; ++i)
	{
		int attempts = 0;
		for (;;)
		{
			s.redraw();
			bool finite = true;
			double worst = 0;
			for (auto const &[odd, g] : groups)
			{
				double v = s.evaluate(g);
				double mag = s.magnitude(g);
				if (!std::isfinite(v) || !std::isfinite(mag))
				{
					finite = false;
					break;
				}
				double rel = std::abs(v) / std::max(1.0, mag);
				worst = std::max(worst, rel);
			}
			if (!finite)
			{
				if (++attempts > 100)
					return r;
				continue;
			}
			r.max_residual = std::max(r.max_residual, worst);
			if (worst > tol)
			{
				r.samples = i + 1;
				return r;
			}
			break;
		}
	}
	r.samples = samples;
	r.zero = true;
	return r;
}

bool is_zero(Expr const &e) { return zero_check(e).zero; }

std::vector<MultiIndex> multi_indices(int n, int order)
{
	std::vector<MultiIndex> out;
	std::vector<int> cur;
	std::function<void(int, int)> rec = [&](int start, int left) {
		if (left == 0)
		{
			out.push_back(MultiIndex::from_dirs(cur));
			return;
		}
		for (int d = start; d < n; ++d)
		{
			cur.push_back(d);
			rec(d, left - 1);
			cur.pop_back();
		}
	};
	rec(0, order);
	return out;
}

} // namespace jetvar
