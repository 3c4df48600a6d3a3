#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <stdexcept>

namespace jetvar {

class ArithmeticOverflow : public std::overflow_error
{
  public:
	using std::overflow_error::overflow_error;
};

// Exact rational with 64-bit numerator/denominator; overflow throws.
class Rational
{
	std::int64_t num_ = 0;
	std::int64_t den_ = 1;

	void reduce();

  public:
	Rational() = default;
	Rational(std::int64_t n) : num_(n) {}
	Rational(std::int64_t n, std::int64_t d);

	std::int64_t num() const { return num_; }
	std::int64_t den() const { return den_; }

	bool is_zero() const { return num_ == 0; }
	bool is_one() const { return num_ == 1 && den_ == 1; }
	bool is_integer() const { return den_ == 1; }
	int sign() const { return (num_ > 0) - (num_ < 0); }
	double to_double() const { return double(num_) / double(den_); }

	Rational operator-() const;
	Rational &operator+=(Rational const &o);
	Rational &operator-=(Rational const &o);
	Rational &operator*=(Rational const &o);
	Rational &operator/=(Rational const &o);

	friend Rational operator+(Rational a, Rational const &b) { return a += b; }
	friend Rational operator-(Rational a, Rational const &b) { return a -= b; }
	friend Rational operator*(Rational a, Rational const &b) { return a *= b; }
	friend Rational operator/(Rational a, Rational const &b) { return a /= b; }

	friend bool operator==(Rational const &a, Rational const &b)
	{
		return a.num_ == b.num_ && a.den_ == b.den_;
	}
	friend std::strong_ordering operator<=>(Rational const &a, Rational const &b);

	std::string str() const;
	// accepts "3", "-2/5"
	static Rational parse(std::string const &s);
};

} // namespace jetvar
