#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hzk/combinatorics.hpp"
#include "hzk/interpolation.hpp"
#include "hzk/prng.hpp"

using namespace hzk;

namespace {

TruncatedSeries rat_series(const std::vector<long>& vals) {
  const AlgebraCtx& k = rational_ctx();
  std::vector<AlgebraElem> cs;
  for (long v : vals) cs.push_back(k.from_scalar(Rational(v)));
  return TruncatedSeries::from_coeffs(k, cs);
}

TruncatedSeries random_series(Prng& rng, const AlgebraCtx& ctx, int level) {
  std::vector<AlgebraElem> cs;
  for (int i = 0; i < level; ++i) cs.push_back(rng.elem(ctx, 3, 3));
  return TruncatedSeries::from_coeffs(ctx, cs);
}

}  // namespace

TEST_CASE("residue basics") {
  const AlgebraCtx& k = rational_ctx();
  PolyResidue one = series_to_residue(rat_series({1, 0, 0}));
  CHECK(one == PolyResidue::one(k, 3));

  PolyResidue x = series_to_residue(rat_series({0, 1, 0}));
  CHECK(x.coeffs[1] == k.one());  // binom(x,1) = x

  CHECK_THROWS_AS(series_to_residue(TruncatedSeries::unit_hurwitz(mat2_ctx(), 2)),
                  std::invalid_argument);
}

TEST_CASE("residue product rule") {
  const AlgebraCtx& k = rational_ctx();
  PolyResidue x = series_to_residue(rat_series({0, 1, 0}));
  // x^2 = 2 binom(x,2) + binom(x,1)
  PolyResidue x2 = residue_mul(x, x);
  CHECK(x2 == series_to_residue(rat_series({0, 1, 2})));

  PolyResidue f = series_to_residue(rat_series({3, -1, 2}));
  CHECK(residue_mul(f, PolyResidue::one(k, 3)) == f);

  // binom(x,l-1)*binom(x,1) keeps only the t=1 term at the top level.
  int l = 4;
  TruncatedSeries top = rat_series({0, 0, 0, 1});
  TruncatedSeries lin = rat_series({0, 1, 0, 0});
  PolyResidue prod = residue_mul(series_to_residue(top), series_to_residue(lin));
  // binom(x,3)binom(x,1) = 4 binom(x,4) + 3 binom(x,3); the first term dies.
  PolyResidue want = PolyResidue::zero(k, l);
  want.coeffs[3] = k.from_scalar(Rational(3));
  CHECK(prod == want);
}

TEST_CASE("residue product matches the series product") {
  Prng rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    const AlgebraCtx& A =
        (rng.below(2) == 0) ? rational_ctx() : poly_trunc_ctx(3);
    int level = 1 + static_cast<int>(rng.below(8));
    TruncatedSeries a = random_series(rng, A, level);
    TruncatedSeries b = random_series(rng, A, level);
    CHECK(residue_mul(series_to_residue(a), series_to_residue(b)) ==
          series_to_residue(hurwitz_mul(a, b, Rational(1))));
    // unit preserved
    CHECK(series_to_residue(TruncatedSeries::unit_hurwitz(A, level)) ==
          PolyResidue::one(A, level));
  }
}

TEST_CASE("evaluation examples") {
  const AlgebraCtx& k = rational_ctx();
  CHECK(evaluate_residue(PolyResidue::one(k, 4)) == rat_series({1, 1, 1, 1}));
  PolyResidue x = series_to_residue(rat_series({0, 1, 0}));
  CHECK(evaluate_residue(x) == rat_series({0, 1, 2}));
}

TEST_CASE("evaluation is a pointwise algebra isomorphism") {
  Prng rng(22);
  for (int trial = 0; trial < 120; ++trial) {
    const AlgebraCtx& A =
        (rng.below(2) == 0) ? rational_ctx() : poly_trunc_ctx(3);
    int level = 1 + static_cast<int>(rng.below(8));
    TruncatedSeries a = random_series(rng, A, level);
    TruncatedSeries b = random_series(rng, A, level);
    PolyResidue fa = series_to_residue(a), fb = series_to_residue(b);
    CHECK(evaluate_residue(residue_mul(fa, fb)) ==
          pointwise_mul(evaluate_residue(fa), evaluate_residue(fb)));
    // triangle: evaluation of the residue of a = binomial transform of a
    CHECK(evaluate_residue(fa) == binomial_transform(a));
    // inverse roundtrip
    CHECK(interpolate_series(evaluate_residue(fa)) == fa);
    CHECK(evaluate_residue(interpolate_series(a)) == a);
  }
}

TEST_CASE("evaluation matrix is unitriangular and matches the inverse route") {
  for (int l = 1; l <= 8; ++l) {
    Matrix ev = evaluation_matrix(l);
    for (int i = 0; i < l; ++i) {
      CHECK(ev.at(i, i) == Rational(1));
      for (int j = i + 1; j < l; ++j) CHECK(ev.at(i, j) == Rational(0));
    }
    Matrix inv = ev.inverse();
    // the inverse is the alternating binomial matrix
    for (int i = 0; i < l; ++i)
      for (int j = 0; j <= i; ++j) {
        Rational want = binom(i, j);
        if ((i - j) % 2 != 0) want = -want;
        CHECK(inv.at(i, j) == want);
      }
  }
}

TEST_CASE("joint evaluation kernel is generated by the falling factorial") {
  // On polynomials of degree <= l (monomial coefficient space of dimension
  // l+1), the kernel of evaluation at 0..l-1 is spanned by
  // x(x-1)...(x-l+1), checked by exact nullspace computation.
  for (int l = 1; l <= 6; ++l) {
    Matrix ev(l, l + 1);
    for (int n = 0; n < l; ++n) {
      Rational p(1);
      for (int j = 0; j <= l; ++j) {
        ev.at(n, j) = p;
        p *= Rational(n);
      }
    }
    Matrix ns = ev.nullspace();
    REQUIRE(ns.cols() == 1);

    // coefficients of x(x-1)...(x-l+1)
    std::vector<Rational> poly = {Rational(1)};
    for (int j = 0; j < l; ++j) {
      std::vector<Rational> next(poly.size() + 1);
      for (size_t m = 0; m < poly.size(); ++m) {
        next[m + 1] += poly[m];
        next[m] -= Rational(j) * poly[m];
      }
      poly = std::move(next);
    }
    // the nullspace vector must be a scalar multiple of poly
    Rational scale;
    bool found = false;
    for (int j = 0; j <= l; ++j) {
      if (poly[static_cast<size_t>(j)].is_zero()) continue;
      scale = ns.at(j, 0) / poly[static_cast<size_t>(j)];
      found = true;
      break;
    }
    REQUIRE(found);
    CHECK_FALSE(scale.is_zero());
    for (int j = 0; j <= l; ++j)
      CHECK(ns.at(j, 0) == scale * poly[static_cast<size_t>(j)]);
  }
}

TEST_CASE("monomial display") {
  const AlgebraCtx& k = rational_ctx();
  // 2 binom(x,2) + binom(x,1) = x^2
  PolyResidue f = series_to_residue(rat_series({0, 1, 2}));
  auto mono = f.monomial_coeffs();
  CHECK(mono[0] == k.zero());
  CHECK(mono[1] == k.zero());
  CHECK(mono[2] == k.one());
}
