#pragma once

#include <vector>

#include "hzk/matrix.hpp"
#include "hzk/series.hpp"

namespace hzk {

// Residue of a polynomial over a commutative coefficient algebra in the
// quotient where binom(x,n) = 0 for n >= l. Coefficients are stored in the
// falling-factorial basis binom(x,0)..binom(x,l-1); reduction is just
// truncation there. Monomial coefficients are for display only.
struct PolyResidue {
  const AlgebraCtx* ctx = nullptr;
  int level = 0;
  std::vector<AlgebraElem> coeffs;

  static PolyResidue zero(const AlgebraCtx& ctx, int level);
  static PolyResidue one(const AlgebraCtx& ctx, int level);
  bool operator==(const PolyResidue& o) const;
  bool operator!=(const PolyResidue& o) const { return !(*this == o); }

  // Coefficients in the monomial basis 1, x, ..., x^{l-1}; display only.
  std::vector<AlgebraElem> monomial_coeffs() const;
};

// Reads a series as a residue sum_n a_n binom(x,n). Commutative ctx only;
// an algebra map from the weight-1 product to the quotient ring.
PolyResidue series_to_residue(const TruncatedSeries& a);

// Quotient-ring product via binom(x,p)binom(x,q) =
// sum_t multinomial(p+q-t; p-t,q-t,t) binom(x,p+q-t), truncated at l.
PolyResidue residue_mul(const PolyResidue& f, const PolyResidue& g);

// Evaluation at the integers 0..l-1; an algebra isomorphism onto the
// pointwise product, and evaluate(series_to_residue(a)) equals the
// binomial transform of a.
TruncatedSeries evaluate_residue(const PolyResidue& f);

// Inverse of evaluation, via the alternating binomial transform.
PolyResidue interpolate_series(const TruncatedSeries& values);

// The l x l evaluation matrix binom(n, m); unitriangular.
Matrix evaluation_matrix(int level);

}  // namespace hzk
