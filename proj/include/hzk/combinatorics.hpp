#pragma once

#include <functional>
#include <vector>

#include "hzk/rational.hpp"

namespace hzk {

// n!/(m_1! ... m_r!) with the convention that any negative factorial
// argument makes the whole coefficient zero. Total on all integers.
Rational multinomial(long n, const std::vector<long>& parts);

// binom(n, r) = multinomial(n, {r, n-r}); zero outside 0 <= r <= n.
Rational binom(long n, long r);

// Sum over (r,s,t) with r+s+t = n of multinomial(n;r,s,t) (-1)^s a_t.
// For any sequence this recovers a_n; the sum is evaluated literally.
Rational trinomial_shift_sum(const std::vector<Rational>& a, int n);

// Visits every composition n = r+s+t of non-negative integers.
void for_each_composition3(int n, const std::function<void(int, int, int)>& fn);

}  // namespace hzk
