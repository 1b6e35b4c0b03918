#pragma once

#include <vector>

#include "hzk/algebra.hpp"
#include "hzk/matrix.hpp"
#include "hzk/rational.hpp"

namespace hzk {

// Length-l coefficient vector over a coefficient algebra. The type carries
// no product of its own; the weighted and pointwise products below are the
// operations of interest. Index n only ever reads indices <= n, so a series
// truncates consistently: dropping the last coefficient commutes with every
// operation in this header.
struct TruncatedSeries {
  const AlgebraCtx* ctx = nullptr;
  int level = 0;
  std::vector<AlgebraElem> coeffs;

  static TruncatedSeries zero(const AlgebraCtx& ctx, int level);
  static TruncatedSeries unit_hurwitz(const AlgebraCtx& ctx, int level);
  static TruncatedSeries unit_pointwise(const AlgebraCtx& ctx, int level);
  static TruncatedSeries from_coeffs(const AlgebraCtx& ctx,
                                     std::vector<AlgebraElem> coeffs);

  TruncatedSeries restricted(int new_level) const;  // drop trailing coefficients
  bool operator==(const TruncatedSeries& o) const;
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }
};

// (a *_w b)_n = sum over r+s+t=n of multinomial(n;r,s,t) w^t a_{r+t} b_{s+t}.
// Unit (1,0,...,0). Weight 0 is the classical divided-power case.
TruncatedSeries hurwitz_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                            const Rational& weight);

TruncatedSeries pointwise_mul(const TruncatedSeries& a, const TruncatedSeries& b);

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);

// (a)_n -> w^n a_n: algebra map from the weight-w product to the weight-1 one.
TruncatedSeries power_scale(const TruncatedSeries& a, const Rational& weight);

// Binomial transform sum_m binom(n,m) a_m: weight-1 product -> pointwise.
TruncatedSeries binomial_transform(const TruncatedSeries& a);

// Alternating inverse sum_n binom(m,n)(-1)^{m-n} a_n of the above.
TruncatedSeries binomial_transform_inverse(const TruncatedSeries& a);

// sum_m binom(n,m) w^m a_m = binomial_transform(power_scale(a, w)):
// weight-w product -> pointwise, an isomorphism when w is invertible.
TruncatedSeries weighted_binomial_transform(const TruncatedSeries& a,
                                            const Rational& weight);

// Shift (d a)_n = a_{n+1}, zero fill at the top. A weighted derivation for
// the weight-w product at every truncation.
TruncatedSeries shift_derivation(const TruncatedSeries& a);

// Difference (d a)_n = a_{n+1} - a_n with a_l = 0; weight-1 Leibniz under
// the pointwise product.
TruncatedSeries difference_operator(const TruncatedSeries& a);

// Linear endomorphism of a coefficient algebra satisfying d(1) = 0 and
// d(ab) = (da)b + a(db) + w (da)(db); the law is checked on basis pairs.
class WeightedDerivation {
 public:
  WeightedDerivation(const AlgebraCtx& ctx, Rational weight, Matrix map);
  const AlgebraCtx& ctx() const { return *ctx_; }
  const Rational& weight() const { return weight_; }
  const Matrix& map() const { return map_; }
  AlgebraElem apply(const AlgebraElem& x) const;

 private:
  const AlgebraCtx* ctx_;
  Rational weight_;
  Matrix map_;
};

// Linear P with P(a)P(b) = P(P(a)b + aP(b) + w ab), checked on basis pairs.
class RotaBaxterOp {
 public:
  RotaBaxterOp(const AlgebraCtx& ctx, Rational weight, Matrix map);
  const AlgebraCtx& ctx() const { return *ctx_; }
  const Rational& weight() const { return weight_; }
  const Matrix& map() const { return map_; }
  AlgebraElem apply(const AlgebraElem& x) const;

 private:
  const AlgebraCtx* ctx_;
  Rational weight_;
  Matrix map_;
};

// Lift of P to the weight-w product: (P(a_0), a_0, a_1, ..., a_{l-2}).
TruncatedSeries rb_lift_hurwitz(const RotaBaxterOp& P, const TruncatedSeries& a);

// Lift of P to the pointwise product: result_n = P(a_0) + w * sum_{i<n} a_i.
TruncatedSeries rb_lift_pointwise(const RotaBaxterOp& P, const TruncatedSeries& a);

// Unital algebra map between contexts, given by a coordinate matrix and
// validated on basis pairs.
class AlgebraMap {
 public:
  AlgebraMap(const AlgebraCtx& src, const AlgebraCtx& dst, Matrix map);
  const AlgebraCtx& src() const { return *src_; }
  const AlgebraCtx& dst() const { return *dst_; }
  const Matrix& map() const { return map_; }
  AlgebraElem apply(const AlgebraElem& x) const;

 private:
  const AlgebraCtx* src_;
  const AlgebraCtx* dst_;
  Matrix map_;
};

// Lift of an algebra map f : B -> A against a weighted derivation on B:
// b |-> (f(b), f(db), f(d^2 b), ...), an algebra map into the weight-w
// product that intertwines the derivations and has 0th component f.
TruncatedSeries cofree_lift_derivation(const AlgebraMap& f,
                                       const WeightedDerivation& dB, int level,
                                       const AlgebraElem& b);

// Lift of f : B -> A against an algebra endomorphism phi of B:
// b |-> (f(phi^n b))_n, an algebra map into the pointwise product that
// intertwines phi with the shift.
TruncatedSeries cofree_lift_endomorphism(const AlgebraMap& f, const AlgebraMap& phi,
                                         int level, const AlgebraElem& b);

// Doubly indexed block of coefficients, grid[m][n] = a_{m+n} (zero when the
// index passes the truncation). Carries the comultiplication data of the
// series comonad.
struct DoubleSeries {
  const AlgebraCtx* ctx = nullptr;
  int outer = 0, inner = 0;
  std::vector<std::vector<AlgebraElem>> grid;
};

AlgebraElem comonad_counit(const TruncatedSeries& a);
DoubleSeries comonad_comult(const TruncatedSeries& a, int sub_level);

// The series algebras as honest finite-dimensional contexts, so that all
// algebra machinery (validation, convolution comparisons, nested series)
// applies to them unchanged. Coordinates flatten as (n, a) -> n*dimA + a.
AlgebraCtx hurwitz_series_ctx(const AlgebraCtx& inner, int level,
                              const Rational& weight);
AlgebraCtx pointwise_series_ctx(const AlgebraCtx& inner, int level);

}  // namespace hzk
