#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hzk/combinatorics.hpp"
#include "hzk/prng.hpp"
#include "hzk/series.hpp"
#include "hzk/species.hpp"

using namespace hzk;

namespace {

std::vector<Perm> all_perms(int n) {
  Perm p = identity_perm(n);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Rational> rank_scalars(const LinearSpecies& s) {
  std::vector<Rational> out;
  for (int r : s.ranks()) out.push_back(Rational(r));
  return out;
}

}  // namespace

TEST_CASE("permutation helpers") {
  Perm p = {2, 0, 1};
  CHECK(is_perm(p));
  CHECK_FALSE(is_perm(Perm{0, 0, 1}));
  CHECK(perm_cycle_count(p) == 1);
  CHECK(perm_cycle_count(identity_perm(4)) == 4);

  for (const Perm& q : all_perms(4)) {
    // the adjacent word reassembles the permutation
    Perm acc = identity_perm(4);
    for (int i : adjacent_word(q)) {
      Perm s = identity_perm(4);
      std::swap(s[static_cast<size_t>(i)], s[static_cast<size_t>(i + 1)]);
      acc = compose_perm(acc, s);
    }
    CHECK(acc == q);
  }
}

TEST_CASE("catalog species validate and act correctly") {
  LinearSpecies unit = species_unit(4);
  CHECK(unit.rank(0) == 1);
  CHECK(unit.rank(3) == 0);

  LinearSpecies sign = species_sign(4);
  for (const Perm& p : all_perms(4)) {
    int inversions = 0;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) ++inversions;
    Rational want(inversions % 2 == 0 ? 1 : -1);
    CHECK(sign.character(4, p) == want);
  }

  // identity character is the rank
  Prng rng(51);
  LinearSpecies rnd = species_random(4, rng);
  for (int n = 0; n <= 4; ++n)
    CHECK(rnd.character(n, identity_perm(n)) == Rational(rnd.rank(n)));

  // broken braid relation is rejected
  std::vector<int> ranks = {0, 0, 0, 1};
  std::vector<std::vector<Matrix>> gens(4);
  Matrix m1(1, 1), m2(1, 1);
  m1.at(0, 0) = Rational(1);
  m2.at(0, 0) = Rational(-1);
  gens[3] = {m1, m2};
  CHECK_THROWS_AS(LinearSpecies(ranks, gens), std::invalid_argument);
}

TEST_CASE("weighted tensor unit law and singleton decomposition") {
  for (int g : {0, 1, 2}) {
    LinearSpecies unit = species_unit(3);
    LinearSpecies x = species_singleton(3);
    LinearSpecies t = weighted_tensor(unit, x, g);
    CHECK(t.ranks() == x.ranks());
    LinearSpecies uu = weighted_tensor(unit, unit, g);
    CHECK(uu.ranks() == unit.ranks());

    // at n=1 the three covers contribute r0*r1, r1*r0, g*r1*r1
    LinearSpecies xx = weighted_tensor(x, x, g);
    CHECK(xx.rank(1) == g);
    CHECK(xx.rank(2) == 2);
  }
}

TEST_CASE("weighted tensor ranks match the series product") {
  Prng rng(52);
  for (int g : {0, 1, 2})
    for (int trial = 0; trial < 12; ++trial) {
      int bound = 2 + static_cast<int>(rng.below(4));  // up to 5
      LinearSpecies m = species_random(bound, rng);
      LinearSpecies n = species_random(bound, rng);

      // route 1: direct subset-cover enumeration
      auto enum_ranks =
          weighted_tensor_ranks_enum(rank_scalars(m), rank_scalars(n), g);
      // route 2: the weighted series product of the rank sequences
      const AlgebraCtx& k = rational_ctx();
      std::vector<AlgebraElem> ac, bc;
      for (int r : m.ranks()) ac.push_back(k.from_scalar(Rational(r)));
      for (int r : n.ranks()) bc.push_back(k.from_scalar(Rational(r)));
      TruncatedSeries prod =
          hurwitz_mul(TruncatedSeries::from_coeffs(k, ac),
                      TruncatedSeries::from_coeffs(k, bc), Rational(g));
      for (int deg = 0; deg <= bound; ++deg)
        CHECK(enum_ranks[static_cast<size_t>(deg)] ==
              prod.coeffs[static_cast<size_t>(deg)].coords[0]);

      // route 3 (small bounds): the fully assembled tensor species
      if (bound <= 3) {
        LinearSpecies t = weighted_tensor(m, n, g);
        for (int deg = 0; deg <= bound; ++deg)
          CHECK(Rational(t.rank(deg)) == enum_ranks[static_cast<size_t>(deg)]);
      }
    }
}

TEST_CASE("weighted tensor characters two ways") {
  Prng rng(53);
  for (int g : {0, 1, 2})
    for (int trial = 0; trial < 4; ++trial) {
      int bound = 3;
      LinearSpecies m = species_random(bound, rng, 1);
      LinearSpecies n = species_random(bound, rng, 1);
      LinearSpecies t = weighted_tensor(m, n, g);
      for (int deg = 0; deg <= bound; ++deg)
        for (const Perm& p : all_perms(deg))
          CHECK(t.character(deg, p) ==
                weighted_tensor_character_bookkeeping(m, n, g, deg, p));
    }
}

TEST_CASE("pair transform") {
  auto t = pair_transform(1, 0, 7);
  CHECK(t.out0 == 1);
  CHECK(t.out1 == 1);
  auto z = pair_transform(3, 5, 0);
  CHECK(z.out0 == 3);
  CHECK(z.out1 == 3);
  auto o = pair_transform(1, 1, 1);
  CHECK(o.out1 == 2);
}

TEST_CASE("subset transform ranks") {
  // rank at n is sum over m of binom(n,m) g^m rank_M(m)
  Prng rng(54);
  for (int g : {0, 1, 2}) {
    LinearSpecies m = species_random(4, rng, 1);
    LinearSpecies t = subset_transform(m, g);
    for (int n = 0; n <= 4; ++n) {
      Rational want(0);
      for (int w = 0; w <= n; ++w)
        want += binom(n, w) * Rational(g).pow(static_cast<unsigned>(w)) *
                Rational(m.rank(w));
      CHECK(Rational(t.rank(n)) == want);
    }
    // weight rank zero keeps only the empty subset
    LinearSpecies z = subset_transform(m, 0);
    for (int n = 0; n <= 4; ++n) CHECK(z.rank(n) == m.rank(0));
  }
  // unit input: rank 1 at every level when g = 1
  LinearSpecies u = subset_transform(species_unit(4), 1);
  for (int n = 0; n <= 4; ++n) CHECK(u.rank(n) == 1);
}

TEST_CASE("subset transform is monoidal at the character level") {
  Prng rng(55);
  for (int g : {0, 1, 2})
    for (int trial = 0; trial < 3; ++trial) {
      int bound = 3;
      LinearSpecies m = species_random(bound, rng, 1);
      LinearSpecies n = species_random(bound, rng, 1);
      LinearSpecies lhs = subset_transform(weighted_tensor(m, n, g), g);
      LinearSpecies rhs =
          pointwise_tensor(subset_transform(m, g), subset_transform(n, g));
      for (int deg = 0; deg <= bound; ++deg) {
        REQUIRE(lhs.rank(deg) == rhs.rank(deg));
        for (const Perm& p : all_perms(deg))
          CHECK(lhs.character(deg, p) == rhs.character(deg, p));
      }
    }
}

TEST_CASE("sequence tensor conventions differ") {
  std::vector<Rational> a = {Rational(1), Rational(1), Rational(1)};
  std::vector<Rational> b = a;
  auto canonical = sequence_tensor_ranks(a, b, Rational(1), false);
  auto printed = sequence_tensor_ranks(a, b, Rational(1), true);
  // canonical matches the weighted series product: (1+1+1)^n profile
  CHECK(canonical[2] == Rational(9));
  // the printed variant has no multiplicities: sum over r+s+t=2 of 1 = 6
  CHECK(printed[2] == Rational(6));
  CHECK(canonical[0] == printed[0]);
}

TEST_CASE("subset coalgebra") {
  for (const Rational& w : {Rational(0), Rational(1), Rational(1, 2)})
    for (int n = 0; n <= 5; ++n) {
      FinCoalgebra c = subset_coalgebra(n, w);  // constructor validates laws
      CHECK(c.dim() == (1 << n));
      CHECK(c.counit(0) == Rational(1));
      if (n >= 1) {
        // comult({1}) = {1}(x){} + {}(x){1} + w {1}(x){1}
        const SparseTensor& t = c.comult(1);
        auto get = [&](int i, int j) {
          auto it = t.find({i, j});
          return it == t.end() ? Rational(0) : it->second;
        };
        CHECK(get(1, 0) == Rational(1));
        CHECK(get(0, 1) == Rational(1));
        CHECK(get(1, 1) == w);
      }
    }
}

TEST_CASE("subset coalgebra convolution restricted to symmetric maps") {
  // Cardinality-graded maps form a subalgebra of the convolution algebra
  // and multiply exactly like the weighted series product.
  int n = 4;
  for (const Rational& w : {Rational(0), Rational(1), Rational(-1)}) {
    FinCoalgebra c = subset_coalgebra(n, w);
    AlgebraCtx conv = convolution_ctx(c, rational_ctx());
    Prng rng(56);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Rational> f, g;
      for (int i = 0; i <= n; ++i) {
        f.push_back(rng.rational());
        g.push_back(rng.rational());
      }
      auto embed = [&](const std::vector<Rational>& seq) {
        std::vector<Rational> coords(static_cast<size_t>(conv.dim()));
        for (int mask = 0; mask < (1 << n); ++mask)
          coords[static_cast<size_t>(mask)] =
              seq[static_cast<size_t>(__builtin_popcount(
                  static_cast<unsigned>(mask)))];
        return conv.elem(coords);
      };
      AlgebraElem prod = conv.mul(embed(f), embed(g));
      const AlgebraCtx& k = rational_ctx();
      std::vector<AlgebraElem> fc, gc;
      for (const auto& v : f) fc.push_back(k.from_scalar(v));
      for (const auto& v : g) gc.push_back(k.from_scalar(v));
      TruncatedSeries want = hurwitz_mul(TruncatedSeries::from_coeffs(k, fc),
                                         TruncatedSeries::from_coeffs(k, gc), w);
      for (int mask = 0; mask < (1 << n); ++mask)
        CHECK(prod.coords[static_cast<size_t>(mask)] ==
              want.coeffs[static_cast<size_t>(__builtin_popcount(
                              static_cast<unsigned>(mask)))]
                  .coords[0]);
    }
  }
}
