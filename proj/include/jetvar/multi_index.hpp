#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "jetvar/errors.hpp"

namespace jetvar {

// Symmetric multi-index: a multiset of base directions, kept as a
// non-decreasing direction sequence.
class MultiIndex
{
  public:
	static constexpr int capacity = 16;

  private:
	std::array<std::uint8_t, capacity> dirs_{};
	std::uint8_t len_ = 0;

  public:
	MultiIndex() = default;
	MultiIndex(std::initializer_list<int> dirs)
	{
		for (int d : dirs)
			*this = plus(d);
	}
	static MultiIndex from_dirs(std::vector<int> const &dirs)
	{
		MultiIndex m;
		for (int d : dirs)
			m = m.plus(d);
		return m;
	}

	int order() const { return len_; }
	bool empty() const { return len_ == 0; }
	int operator[](int i) const { return dirs_[i]; }
	std::uint8_t const *begin() const { return dirs_.data(); }
	std::uint8_t const *end() const { return dirs_.data() + len_; }

	int count(int dir) const
	{
		return int(std::count(begin(), end(), std::uint8_t(dir)));
	}

	MultiIndex plus(int dir) const
	{
		if (len_ == capacity)
			throw OrderError("jet order exceeds multi-index capacity");
		MultiIndex r = *this;
		int i = len_;
		while (i > 0 && r.dirs_[i - 1] > dir)
		{
			r.dirs_[i] = r.dirs_[i - 1];
			--i;
		}
		r.dirs_[i] = std::uint8_t(dir);
		++r.len_;
		return r;
	}

	MultiIndex plus(MultiIndex const &o) const
	{
		MultiIndex r = *this;
		for (int d : o)
			r = r.plus(d);
		return r;
	}

	std::optional<MultiIndex> minus(int dir) const
	{
		auto it = std::find(begin(), end(), std::uint8_t(dir));
		if (it == end())
			return std::nullopt;
		MultiIndex r;
		bool skipped = false;
		for (auto p = begin(); p != end(); ++p)
		{
			if (!skipped && p == it)
			{
				skipped = true;
				continue;
			}
			r.dirs_[r.len_++] = *p;
		}
		return r;
	}

	// multinomial |Λ|!/(Λ_1!...Λ_n!)
	long long multinomial() const
	{
		long long r = 1;
		int k = 0;
		for (int i = 0; i < len_;)
		{
			int j = i;
			while (j < len_ && dirs_[j] == dirs_[i])
				++j;
			for (int t = 1; t <= j - i; ++t)
			{
				++k;
				r = r * k / t;
			}
			i = j;
		}
		return r;
	}

	friend bool operator==(MultiIndex const &a, MultiIndex const &b)
	{
		return a.len_ == b.len_ && std::equal(a.begin(), a.end(), b.begin());
	}
	friend std::strong_ordering operator<=>(MultiIndex const &a,
	                                        MultiIndex const &b)
	{
		return std::lexicographical_compare_three_way(a.begin(), a.end(),
		                                              b.begin(), b.end());
	}
};

// all multi-indices over n directions of exactly the given order
std::vector<MultiIndex> multi_indices(int n, int order);

} // namespace jetvar
