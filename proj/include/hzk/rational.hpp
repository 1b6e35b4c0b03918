#pragma once

#include <gmp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace hzk {

// Exact rational scalar backed by GMP. Values are always canonical:
// lowest terms, positive denominator. There is no rounding anywhere.
class Rational {
 public:
  Rational() { mpq_init(v_); }

  Rational(long n) {  // NOLINT: implicit by design, scalars appear everywhere
    mpq_init(v_);
    mpq_set_si(v_, n, 1);
  }

  Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    mpq_init(v_);
    mpq_set_si(v_, num, static_cast<unsigned long>(den));
    mpq_canonicalize(v_);
  }

  Rational(const Rational& o) {
    mpq_init(v_);
    mpq_set(v_, o.v_);
  }

  Rational(Rational&& o) noexcept {
    mpq_init(v_);
    mpq_swap(v_, o.v_);
  }

  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }

  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(v_, o.v_);
    return *this;
  }

  ~Rational() { mpq_clear(v_); }

  // Parses "p" or "p/q" in base 10. Rejects malformed input and q = 0.
  static Rational parse(const std::string& s) {
    Rational r;
    if (s.empty() || mpq_set_str(r.v_, s.c_str(), 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (mpz_sgn(mpq_denref(r.v_)) == 0)
      throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    mpq_canonicalize(r.v_);
    return r;
  }

  std::string str() const {
    char* raw = mpq_get_str(nullptr, 10, v_);
    std::string out(raw);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(raw, out.size() + 1);
    return out;
  }

  bool is_zero() const { return mpq_sgn(v_) == 0; }
  bool is_one() const { return mpq_cmp_si(v_, 1, 1) == 0; }
  int sgn() const { return mpq_sgn(v_); }

  Rational& operator+=(const Rational& o) {
    mpq_add(v_, v_, o.v_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(v_, v_, o.v_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(v_, v_, o.v_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    mpq_div(v_, v_, o.v_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  Rational operator-() const {
    Rational r;
    mpq_neg(r.v_, v_);
    return r;
  }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    Rational r;
    mpq_inv(r.v_, v_);
    return r;
  }

  Rational pow(unsigned e) const {
    Rational r(1);
    Rational base(*this);
    while (e != 0) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_, b.v_) < 0;
  }

  // Accumulate a += b*c without temporaries beyond one scratch slot.
  void add_mul(const Rational& b, const Rational& c) {
    if (mpq_sgn(b.v_) == 0 || mpq_sgn(c.v_) == 0) return;
    mpq_t t;
    mpq_init(t);
    mpq_mul(t, b.v_, c.v_);
    mpq_add(v_, v_, t);
    mpq_clear(t);
  }

  const mpq_t& raw() const { return v_; }

  static Rational from_mpq(const mpq_t q) {
    Rational r;
    mpq_set(r.v_, q);
    mpq_canonicalize(r.v_);
    return r;
  }

 private:
  mpq_t v_;
};

}  // namespace hzk
