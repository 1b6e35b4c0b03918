#pragma once

#include <cstdint>
#include <vector>

#include "hzk/algebra.hpp"
#include "hzk/matrix.hpp"
#include "hzk/rational.hpp"

namespace hzk {

// Deterministic xoshiro256** generator (public algorithm, version 1.0),
// seeded through splitmix64. Used for every randomized trial so that any
// counterexample is reproducible from the seed alone.
inline constexpr const char* kPrngId = "xoshiro256**-1.0";

class Prng {
 public:
  explicit Prng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) {
      // splitmix64 step
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }

  uint64_t next() {
    auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, n); n > 0.
  uint64_t below(uint64_t n) { return next() % n; }

  long int_in(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  Rational rational(long max_num = 4, long max_den = 4) {
    long num = int_in(-max_num, max_num);
    long den = int_in(1, max_den);
    return Rational(num, den);
  }

  AlgebraElem elem(const AlgebraCtx& ctx, long max_num = 4, long max_den = 4) {
    std::vector<Rational> c;
    c.reserve(static_cast<size_t>(ctx.dim()));
    for (int i = 0; i < ctx.dim(); ++i) c.push_back(rational(max_num, max_den));
    return ctx.elem(std::move(c));
  }

  // Product of unit lower and unit upper triangular matrices: always
  // invertible, entries stay small.
  Matrix invertible(int n, long max_entry = 2) {
    Matrix lo = Matrix::identity(n);
    Matrix up = Matrix::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        lo.at(i, j) = Rational(int_in(-max_entry, max_entry));
        up.at(j, i) = Rational(int_in(-max_entry, max_entry));
      }
    return lo * up;
  }

 private:
  uint64_t s_[4];
};

}  // namespace hzk
