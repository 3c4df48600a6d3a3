#include "jetvar/rational.hpp"

#include <numeric>

namespace jetvar {

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b)
{
	std::int64_t r;
	if (__builtin_mul_overflow(a, b, &r))
		throw ArithmeticOverflow("rational coefficient overflow");
	return r;
}

std::int64_t add(std::int64_t a, std::int64_t b)
{
	std::int64_t r;
	if (__builtin_add_overflow(a, b, &r))
		throw ArithmeticOverflow("rational coefficient overflow");
	return r;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d)
{
	if (d == 0)
		throw std::domain_error("rational with zero denominator");
	reduce();
}

void Rational::reduce()
{
	if (den_ < 0)
	{
		num_ = mul(num_, -1);
		den_ = mul(den_, -1);
	}
	std::int64_t g = std::gcd(num_, den_);
	if (g > 1)
	{
		num_ /= g;
		den_ /= g;
	}
	if (num_ == 0)
		den_ = 1;
}

Rational Rational::operator-() const
{
	Rational r;
	r.num_ = mul(num_, -1);
	r.den_ = den_;
	return r;
}

Rational &Rational::operator+=(Rational const &o)
{
	if (den_ == o.den_)
	{
		num_ = add(num_, o.num_);
	}
	else
	{
		std::int64_t g = std::gcd(den_, o.den_);
		std::int64_t a = mul(num_, o.den_ / g);
		std::int64_t b = mul(o.num_, den_ / g);
		num_ = add(a, b);
		den_ = mul(den_, o.den_ / g);
	}
	reduce();
	return *this;
}

Rational &Rational::operator-=(Rational const &o) { return *this += -o; }

Rational &Rational::operator*=(Rational const &o)
{
	std::int64_t g1 = std::gcd(num_, o.den_);
	std::int64_t g2 = std::gcd(o.num_, den_);
	if (g1 == 0)
		g1 = 1;
	if (g2 == 0)
		g2 = 1;
	num_ = mul(num_ / g1, o.num_ / g2);
	den_ = mul(den_ / g2, o.den_ / g1);
	reduce();
	return *this;
}

Rational &Rational::operator/=(Rational const &o)
{
	if (o.num_ == 0)
		throw std::domain_error("rational division by zero");
	Rational inv;
	inv.num_ = o.den_;
	inv.den_ = o.num_;
	inv.reduce();
	return *this *= inv;
}

std::strong_ordering operator<=>(Rational const &a, Rational const &b)
{
	__int128 l = (__int128)a.num_ * b.den_;
	__int128 r = (__int128)b.num_ * a.den_;
	if (l < r)
		return std::strong_ordering::less;
	if (l > r)
		return std::strong_ordering::greater;
	return std::strong_ordering::equal;
}

std::string Rational::str() const
{
	if (den_ == 1)
		return std::to_string(num_);
	return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string const &s)
{
	auto slash = s.find('/');
	try
	{
		std::size_t pos = 0;
		if (slash == std::string::npos)
		{
			std::int64_t n = std::stoll(s, &pos);
			if (pos != s.size())
				throw std::invalid_argument(s);
			return Rational(n);
		}
		std::string a = s.substr(0, slash), b = s.substr(slash + 1);
		std::int64_t n = std::stoll(a, &pos);
		if (pos != a.size())
			throw std::invalid_argument(s);
		std::int64_t d = std::stoll(b, &pos);
		if (pos != b.size() || b.empty() || b[0] == '-' || b[0] == '+')
			throw std::invalid_argument(s);
		return Rational(n, d);
	}
	catch (std::out_of_range const &)
	{
		throw ArithmeticOverflow("rational literal out of range: " + s);
	}
}

} // namespace jetvar
