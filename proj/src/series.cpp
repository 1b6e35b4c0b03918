#include "hzk/series.hpp"

#include <algorithm>
#include <stdexcept>

#include "hzk/combinatorics.hpp"

namespace hzk {

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.ctx != b.ctx)
    throw std::invalid_argument("series: mismatched coefficient contexts");
  if (a.level != b.level) throw std::invalid_argument("series: mismatched levels");
}

}  // namespace

TruncatedSeries TruncatedSeries::zero(const AlgebraCtx& ctx, int level) {
  if (level <= 0) throw std::invalid_argument("series: level must be positive");
  TruncatedSeries s;
  s.ctx = &ctx;
  s.level = level;
  s.coeffs.assign(static_cast<size_t>(level), ctx.zero());
  return s;
}

TruncatedSeries TruncatedSeries::unit_hurwitz(const AlgebraCtx& ctx, int level) {
  TruncatedSeries s = zero(ctx, level);
  s.coeffs[0] = ctx.one();
  return s;
}

TruncatedSeries TruncatedSeries::unit_pointwise(const AlgebraCtx& ctx, int level) {
  TruncatedSeries s = zero(ctx, level);
  for (auto& c : s.coeffs) c = ctx.one();
  return s;
}

TruncatedSeries TruncatedSeries::from_coeffs(const AlgebraCtx& ctx,
                                             std::vector<AlgebraElem> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("series: level must be positive");
  TruncatedSeries s;
  s.ctx = &ctx;
  s.level = static_cast<int>(coeffs.size());
  for (const auto& c : coeffs)
    if (c.ctx != &ctx)
      throw std::invalid_argument("series: coefficient from another context");
  s.coeffs = std::move(coeffs);
  return s;
}

TruncatedSeries TruncatedSeries::restricted(int new_level) const {
  if (new_level <= 0 || new_level > level)
    throw std::invalid_argument("series: bad restriction level");
  TruncatedSeries s;
  s.ctx = ctx;
  s.level = new_level;
  s.coeffs.assign(coeffs.begin(), coeffs.begin() + new_level);
  return s;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return ctx == o.ctx && level == o.level && coeffs == o.coeffs;
}

TruncatedSeries hurwitz_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                            const Rational& weight) {
  require_compatible(a, b);
  const AlgebraCtx& A = *a.ctx;
  TruncatedSeries out = TruncatedSeries::zero(A, a.level);
  for (int n = 0; n < a.level; ++n) {
    AlgebraElem acc = A.zero();
    for_each_composition3(n, [&](int r, int s, int t) {
      const AlgebraElem& x = a.coeffs[static_cast<size_t>(r + t)];
      const AlgebraElem& y = b.coeffs[static_cast<size_t>(s + t)];
      if (x.is_zero() || y.is_zero()) return;
      Rational c = multinomial(n, {r, s, t});
      if (t > 0) c *= weight.pow(static_cast<unsigned>(t));
      if (c.is_zero()) return;
      acc = A.add(acc, A.scale(c, A.mul(x, y)));
    });
    out.coeffs[static_cast<size_t>(n)] = std::move(acc);
  }
  return out;
}

TruncatedSeries pointwise_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  for (int n = 0; n < a.level; ++n)
    out.coeffs[n] = a.ctx->mul(a.coeffs[n], b.coeffs[n]);
  return out;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b);
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  for (int n = 0; n < a.level; ++n)
    out.coeffs[n] = a.ctx->add(a.coeffs[n], b.coeffs[n]);
  return out;
}

TruncatedSeries power_scale(const TruncatedSeries& a, const Rational& weight) {
  TruncatedSeries out = a;
  Rational p(1);
  for (int n = 0; n < a.level; ++n) {
    out.coeffs[n] = a.ctx->scale(p, a.coeffs[n]);
    p *= weight;
  }
  return out;
}

TruncatedSeries binomial_transform(const TruncatedSeries& a) {
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  for (int n = 0; n < a.level; ++n) {
    AlgebraElem acc = a.ctx->zero();
    for (int m = 0; m <= n; ++m)
      acc = a.ctx->add(acc, a.ctx->scale(binom(n, m), a.coeffs[m]));
    out.coeffs[n] = std::move(acc);
  }
  return out;
}

TruncatedSeries binomial_transform_inverse(const TruncatedSeries& a) {
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  for (int m = 0; m < a.level; ++m) {
    AlgebraElem acc = a.ctx->zero();
    for (int n = 0; n <= m; ++n) {
      Rational c = binom(m, n);
      if ((m - n) % 2 != 0) c = -c;
      acc = a.ctx->add(acc, a.ctx->scale(c, a.coeffs[n]));
    }
    out.coeffs[m] = std::move(acc);
  }
  return out;
}

TruncatedSeries weighted_binomial_transform(const TruncatedSeries& a,
                                            const Rational& weight) {
  return binomial_transform(power_scale(a, weight));
}

TruncatedSeries shift_derivation(const TruncatedSeries& a) {
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  for (int n = 0; n + 1 < a.level; ++n) out.coeffs[n] = a.coeffs[n + 1];
  return out;
}

TruncatedSeries difference_operator(const TruncatedSeries& a) {
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  for (int n = 0; n < a.level; ++n) {
    AlgebraElem next = (n + 1 < a.level) ? a.coeffs[n + 1] : a.ctx->zero();
    out.coeffs[n] = a.ctx->sub(next, a.coeffs[n]);
  }
  return out;
}

WeightedDerivation::WeightedDerivation(const AlgebraCtx& ctx, Rational weight,
                                       Matrix map)
    : ctx_(&ctx), weight_(std::move(weight)), map_(std::move(map)) {
  if (map_.rows() != ctx.dim() || map_.cols() != ctx.dim())
    throw std::invalid_argument("WeightedDerivation: matrix size mismatch");
  if (!apply(ctx.one()).is_zero())
    throw std::invalid_argument("WeightedDerivation: d(1) != 0");
  for (int i = 0; i < ctx.dim(); ++i)
    for (int j = 0; j < ctx.dim(); ++j) {
      AlgebraElem bi = ctx.basis(i), bj = ctx.basis(j);
      AlgebraElem lhs = apply(ctx.mul(bi, bj));
      AlgebraElem di = apply(bi), dj = apply(bj);
      AlgebraElem rhs = ctx.add(ctx.mul(di, bj), ctx.mul(bi, dj));
      rhs = ctx.add(rhs, ctx.scale(weight_, ctx.mul(di, dj)));
      if (lhs != rhs)
        throw std::invalid_argument("WeightedDerivation: Leibniz law fails");
    }
}

AlgebraElem WeightedDerivation::apply(const AlgebraElem& x) const {
  return ctx_->elem(map_.apply(x.coords));
}

RotaBaxterOp::RotaBaxterOp(const AlgebraCtx& ctx, Rational weight, Matrix map)
    : ctx_(&ctx), weight_(std::move(weight)), map_(std::move(map)) {
  if (map_.rows() != ctx.dim() || map_.cols() != ctx.dim())
    throw std::invalid_argument("RotaBaxterOp: matrix size mismatch");
  for (int i = 0; i < ctx.dim(); ++i)
    for (int j = 0; j < ctx.dim(); ++j) {
      AlgebraElem bi = ctx.basis(i), bj = ctx.basis(j);
      AlgebraElem pi = apply(bi), pj = apply(bj);
      AlgebraElem lhs = ctx.mul(pi, pj);
      AlgebraElem inner = ctx.add(ctx.mul(pi, bj), ctx.mul(bi, pj));
      inner = ctx.add(inner, ctx.scale(weight_, ctx.mul(bi, bj)));
      if (lhs != apply(inner))
        throw std::invalid_argument("RotaBaxterOp: operator law fails");
    }
}

AlgebraElem RotaBaxterOp::apply(const AlgebraElem& x) const {
  return ctx_->elem(map_.apply(x.coords));
}

TruncatedSeries rb_lift_hurwitz(const RotaBaxterOp& P, const TruncatedSeries& a) {
  if (&P.ctx() != a.ctx)
    throw std::invalid_argument("rb_lift_hurwitz: context mismatch");
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  out.coeffs[0] = P.apply(a.coeffs[0]);
  for (int n = 1; n < a.level; ++n) out.coeffs[n] = a.coeffs[n - 1];
  return out;
}

TruncatedSeries rb_lift_pointwise(const RotaBaxterOp& P, const TruncatedSeries& a) {
  if (&P.ctx() != a.ctx)
    throw std::invalid_argument("rb_lift_pointwise: context mismatch");
  TruncatedSeries out = TruncatedSeries::zero(*a.ctx, a.level);
  AlgebraElem base = P.apply(a.coeffs[0]);
  AlgebraElem partial = a.ctx->zero();
  for (int n = 0; n < a.level; ++n) {
    out.coeffs[n] = a.ctx->add(base, a.ctx->scale(P.weight(), partial));
    partial = a.ctx->add(partial, a.coeffs[n]);
  }
  return out;
}

AlgebraMap::AlgebraMap(const AlgebraCtx& src, const AlgebraCtx& dst, Matrix map)
    : src_(&src), dst_(&dst), map_(std::move(map)) {
  if (map_.rows() != dst.dim() || map_.cols() != src.dim())
    throw std::invalid_argument("AlgebraMap: matrix size mismatch");
  if (apply(src.one()) != dst.one())
    throw std::invalid_argument("AlgebraMap: unit not preserved");
  for (int i = 0; i < src.dim(); ++i)
    for (int j = 0; j < src.dim(); ++j) {
      AlgebraElem lhs = apply(src.mul(src.basis(i), src.basis(j)));
      AlgebraElem rhs = dst.mul(apply(src.basis(i)), apply(src.basis(j)));
      if (lhs != rhs)
        throw std::invalid_argument("AlgebraMap: multiplication not preserved");
    }
}

AlgebraElem AlgebraMap::apply(const AlgebraElem& x) const {
  if (x.ctx != src_)
    throw std::invalid_argument("AlgebraMap: element from another context");
  return dst_->elem(map_.apply(x.coords));
}

TruncatedSeries cofree_lift_derivation(const AlgebraMap& f,
                                       const WeightedDerivation& dB, int level,
                                       const AlgebraElem& b) {
  if (&dB.ctx() != &f.src())
    throw std::invalid_argument("cofree_lift_derivation: context mismatch");
  TruncatedSeries out = TruncatedSeries::zero(f.dst(), level);
  AlgebraElem cur = b;
  for (int n = 0; n < level; ++n) {
    out.coeffs[n] = f.apply(cur);
    cur = dB.apply(cur);
  }
  return out;
}

TruncatedSeries cofree_lift_endomorphism(const AlgebraMap& f, const AlgebraMap& phi,
                                         int level, const AlgebraElem& b) {
  if (&phi.src() != &f.src() || &phi.dst() != &f.src())
    throw std::invalid_argument("cofree_lift_endomorphism: context mismatch");
  TruncatedSeries out = TruncatedSeries::zero(f.dst(), level);
  AlgebraElem cur = b;
  for (int n = 0; n < level; ++n) {
    out.coeffs[n] = f.apply(cur);
    cur = phi.apply(cur);
  }
  return out;
}

AlgebraElem comonad_counit(const TruncatedSeries& a) { return a.coeffs[0]; }

DoubleSeries comonad_comult(const TruncatedSeries& a, int sub_level) {
  if (sub_level <= 0 || sub_level > a.level)
    throw std::invalid_argument("comonad_comult: bad sub level");
  DoubleSeries d;
  d.ctx = a.ctx;
  d.outer = d.inner = sub_level;
  d.grid.assign(static_cast<size_t>(sub_level),
                std::vector<AlgebraElem>(static_cast<size_t>(sub_level),
                                         a.ctx->zero()));
  for (int m = 0; m < sub_level; ++m)
    for (int n = 0; n < sub_level; ++n)
      if (m + n < a.level) d.grid[m][n] = a.coeffs[m + n];
  return d;
}

namespace {

// Structure constants of the basis product e_{n,a} e_{m,b} for the weighted
// series product: nonzero only at degrees n+m-t with coefficient
// multinomial(n+m-t; n-t, m-t, t) w^t (a*b).
AlgebraCtx build_series_ctx(const AlgebraCtx& inner, int level,
                            const Rational* weight) {
  int dimA = inner.dim();
  int dim = level * dimA;
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(dim));
  for (int n = 0; n < level; ++n)
    for (int a = 0; a < dimA; ++a)
      labels.push_back("d" + std::to_string(n) + "*" + inner.labels()[a]);

  std::vector<Rational> unit(static_cast<size_t>(dim));
  AlgebraElem one = inner.one();
  if (weight != nullptr) {
    for (int a = 0; a < dimA; ++a) unit[a] = one.coords[a];
  } else {
    for (int n = 0; n < level; ++n)
      for (int a = 0; a < dimA; ++a) unit[n * dimA + a] = one.coords[a];
  }

  std::vector<std::vector<std::vector<Rational>>> mul(
      static_cast<size_t>(dim),
      std::vector<std::vector<Rational>>(static_cast<size_t>(dim),
                                         std::vector<Rational>(
                                             static_cast<size_t>(dim))));
  for (int n = 0; n < level; ++n)
    for (int a = 0; a < dimA; ++a)
      for (int m = 0; m < level; ++m)
        for (int b = 0; b < dimA; ++b) {
          const auto& prod = inner.structure(a, b);
          auto& target = mul[n * dimA + a][m * dimA + b];
          if (weight == nullptr) {
            if (n == m)
              for (int c = 0; c < dimA; ++c) target[n * dimA + c] = prod[c];
            continue;
          }
          for (int t = 0; t <= std::min(n, m); ++t) {
            int deg = n + m - t;
            if (deg >= level) continue;
            Rational coef = multinomial(deg, {n - t, m - t, t});
            if (t > 0) coef *= weight->pow(static_cast<unsigned>(t));
            if (coef.is_zero()) continue;
            for (int c = 0; c < dimA; ++c)
              if (!prod[c].is_zero())
                target[deg * dimA + c] += coef * prod[c];
          }
        }
  std::string name = (weight != nullptr)
                         ? "hurwitz(" + inner.name() + "," + std::to_string(level) +
                               ",w=" + weight->str() + ")"
                         : "pointwise(" + inner.name() + "," +
                               std::to_string(level) + ")";
  return AlgebraCtx(std::move(name), std::move(labels), std::move(unit),
                    std::move(mul));
}

}  // namespace

AlgebraCtx hurwitz_series_ctx(const AlgebraCtx& inner, int level,
                              const Rational& weight) {
  return build_series_ctx(inner, level, &weight);
}

AlgebraCtx pointwise_series_ctx(const AlgebraCtx& inner, int level) {
  return build_series_ctx(inner, level, nullptr);
}

}  // namespace hzk
