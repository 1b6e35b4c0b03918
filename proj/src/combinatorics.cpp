#include "hzk/combinatorics.hpp"

#include <stdexcept>

namespace hzk {

Rational multinomial(long n, const std::vector<long>& parts) {
  if (n < 0) return Rational(0);
  for (long p : parts)
    if (p < 0) return Rational(0);
  mpz_t num, den, f;
  mpz_init(num);
  mpz_init(den);
  mpz_init(f);
  mpz_fac_ui(num, static_cast<unsigned long>(n));
  mpz_set_ui(den, 1);
  for (long p : parts) {
    mpz_fac_ui(f, static_cast<unsigned long>(p));
    mpz_mul(den, den, f);
  }
  mpq_t q;
  mpq_init(q);
  mpz_set(mpq_numref(q), num);
  mpz_set(mpq_denref(q), den);
  Rational out = Rational::from_mpq(q);
  mpq_clear(q);
  mpz_clear(num);
  mpz_clear(den);
  mpz_clear(f);
  return out;
}

Rational binom(long n, long r) { return multinomial(n, {r, n - r}); }

Rational trinomial_shift_sum(const std::vector<Rational>& a, int n) {
  if (n < 0 || static_cast<size_t>(n) >= a.size())
    throw std::out_of_range("trinomial_shift_sum: index out of range");
  Rational acc(0);
  for_each_composition3(n, [&](int r, int s, int t) {
    Rational c = multinomial(n, {r, s, t});
    if (s % 2 != 0) c = -c;
    acc.add_mul(c, a[static_cast<size_t>(t)]);
  });
  return acc;
}

void for_each_composition3(int n, const std::function<void(int, int, int)>& fn) {
  for (int r = 0; r <= n; ++r)
    for (int s = 0; r + s <= n; ++s) fn(r, s, n - r - s);
}

}  // namespace hzk
