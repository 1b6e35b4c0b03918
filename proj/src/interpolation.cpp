#include "hzk/interpolation.hpp"

#include <algorithm>
#include <stdexcept>

#include "hzk/combinatorics.hpp"

namespace hzk {

PolyResidue PolyResidue::zero(const AlgebraCtx& ctx, int level) {
  if (level <= 0) throw std::invalid_argument("PolyResidue: level must be positive");
  if (!ctx.commutative())
    throw std::invalid_argument("PolyResidue: commutative context required");
  PolyResidue f;
  f.ctx = &ctx;
  f.level = level;
  f.coeffs.assign(static_cast<size_t>(level), ctx.zero());
  return f;
}

PolyResidue PolyResidue::one(const AlgebraCtx& ctx, int level) {
  PolyResidue f = zero(ctx, level);
  f.coeffs[0] = ctx.one();
  return f;
}

bool PolyResidue::operator==(const PolyResidue& o) const {
  return ctx == o.ctx && level == o.level && coeffs == o.coeffs;
}

std::vector<AlgebraElem> PolyResidue::monomial_coeffs() const {
  // binom(x,n) = sum_m s(n,m)/n! x^m with signed Stirling numbers of the
  // first kind; build the falling factorials iteratively instead.
  std::vector<std::vector<Rational>> falling;  // falling[n][m] = coeff of x^m
  falling.push_back({Rational(1)});
  for (int n = 1; n < level; ++n) {
    const auto& prev = falling.back();
    std::vector<Rational> cur(prev.size() + 1);
    // multiply by (x - (n-1)) then divide by n
    for (size_t m = 0; m < prev.size(); ++m) {
      cur[m + 1] += prev[m];
      cur[m] -= Rational(n - 1) * prev[m];
    }
    Rational inv_n = Rational(n).inverse();
    for (auto& c : cur) c *= inv_n;
    falling.push_back(std::move(cur));
  }
  std::vector<AlgebraElem> out(static_cast<size_t>(level), ctx->zero());
  for (int n = 0; n < level; ++n)
    for (size_t m = 0; m < falling[static_cast<size_t>(n)].size(); ++m)
      out[m] = ctx->add(
          out[m], ctx->scale(falling[static_cast<size_t>(n)][m], coeffs[n]));
  return out;
}

PolyResidue series_to_residue(const TruncatedSeries& a) {
  PolyResidue f = PolyResidue::zero(*a.ctx, a.level);
  f.coeffs = a.coeffs;
  return f;
}

PolyResidue residue_mul(const PolyResidue& f, const PolyResidue& g) {
  if (f.ctx != g.ctx || f.level != g.level)
    throw std::invalid_argument("residue_mul: mismatched residues");
  const AlgebraCtx& A = *f.ctx;
  PolyResidue out = PolyResidue::zero(A, f.level);
  for (int p = 0; p < f.level; ++p) {
    if (f.coeffs[p].is_zero()) continue;
    for (int q = 0; q < g.level; ++q) {
      if (g.coeffs[q].is_zero()) continue;
      AlgebraElem prod = A.mul(f.coeffs[p], g.coeffs[q]);
      for (int t = std::max(0, p + q - (f.level - 1)); t <= std::min(p, q); ++t) {
        Rational c = multinomial(p + q - t, {p - t, q - t, t});
        out.coeffs[p + q - t] =
            A.add(out.coeffs[p + q - t], A.scale(c, prod));
      }
    }
  }
  return out;
}

TruncatedSeries evaluate_residue(const PolyResidue& f) {
  TruncatedSeries out = TruncatedSeries::zero(*f.ctx, f.level);
  for (int n = 0; n < f.level; ++n) {
    AlgebraElem acc = f.ctx->zero();
    for (int m = 0; m <= n; ++m)
      acc = f.ctx->add(acc, f.ctx->scale(binom(n, m), f.coeffs[m]));
    out.coeffs[n] = std::move(acc);
  }
  return out;
}

PolyResidue interpolate_series(const TruncatedSeries& values) {
  if (!values.ctx->commutative())
    throw std::invalid_argument("interpolate_series: commutative context required");
  PolyResidue f = PolyResidue::zero(*values.ctx, values.level);
  f.coeffs = binomial_transform_inverse(values).coeffs;
  return f;
}

Matrix evaluation_matrix(int level) {
  Matrix m(level, level);
  for (int n = 0; n < level; ++n)
    for (int k = 0; k <= n; ++k) m.at(n, k) = binom(n, k);
  return m;
}

}  // namespace hzk
