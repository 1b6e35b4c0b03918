#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hzk/coalgebra.hpp"
#include "hzk/matrix.hpp"
#include "hzk/prng.hpp"
#include "hzk/rational.hpp"

namespace hzk {

// Permutation of {0..n-1} given by its image vector.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose_perm(const Perm& f, const Perm& g);  // f after g
bool is_perm(const Perm& p);

// Right-to-left product of adjacent-transposition generators expressing p;
// index i stands for the swap of positions i and i+1.
std::vector<int> adjacent_word(const Perm& p);

int perm_cycle_count(const Perm& p);

// Skeletal linear species: one free module per cardinality 0..bound plus an
// invertible matrix per adjacent transposition. The generator matrices are
// checked against the symmetric-group Coxeter relations at construction.
class LinearSpecies {
 public:
  LinearSpecies(std::vector<int> ranks, std::vector<std::vector<Matrix>> gens);

  int bound() const { return static_cast<int>(ranks_.size()) - 1; }
  int rank(int n) const { return ranks_[static_cast<size_t>(n)]; }
  const std::vector<int>& ranks() const { return ranks_; }
  const Matrix& gen(int n, int i) const { return gens_[n][i]; }

  // Action matrix of an arbitrary permutation of {0..n-1}.
  Matrix action(int n, const Perm& p) const;

  Rational character(int n, const Perm& p) const;

 private:
  std::vector<int> ranks_;
  std::vector<std::vector<Matrix>> gens_;
};

// Small catalog used by tests and the CLI.
LinearSpecies species_unit(int bound);
LinearSpecies species_exp(int bound);        // rank 1 everywhere, trivial action
LinearSpecies species_sign(int bound);       // rank 1 everywhere, sign action
LinearSpecies species_singleton(int bound);  // rank 1 at cardinality 1
LinearSpecies species_random(int bound, Prng& rng, int max_rank = 2);
LinearSpecies species_by_name(const std::string& name, int bound, uint64_t seed);

// Weighted tensor: at [n] the direct sum over ordered subset pairs (U, V)
// with U and V covering {0..n-1} of blocks of rank
// g^{|U and V|} rank_M(|U|) rank_N(|V|), with the permutation action
// permuting pair summands and acting through transport on each factor.
// The weight rank g is the decategorified weight object.
LinearSpecies weighted_tensor(const LinearSpecies& M, const LinearSpecies& N,
                              int g);

// Pointwise tensor: rank products, Kronecker actions.
LinearSpecies pointwise_tensor(const LinearSpecies& M, const LinearSpecies& N);

// Subset transform: at [n] the direct sum over W of g^{|W|} rank_M(|W|)
// blocks; converts the weighted tensor into the pointwise one.
LinearSpecies subset_transform(const LinearSpecies& M, int g);

// The rank-2 restriction of the comparison: (r0, r1) -> (r0, r0 + g r1).
struct PairTransform {
  int in0 = 0, in1 = 0, g = 0;
  int out0 = 0, out1 = 0;
  std::vector<std::string> second_component;  // summand labels
};
PairTransform pair_transform(int rank0, int rank1, int g);

// Rank sequence of the weighted tensor by direct enumeration of subset
// covers; the independent route against the series product formula.
std::vector<Rational> weighted_tensor_ranks_enum(const std::vector<Rational>& m,
                                                 const std::vector<Rational>& n,
                                                 int g);

// Rank sequence of the sequence-level tensor. The canonical form carries
// multinomial multiplicities and weights the shared index, matching the
// subset-cover tensor; the alternative "as printed" convention weights the
// unshared index with no multiplicities and is exposed for comparison only.
std::vector<Rational> sequence_tensor_ranks(const std::vector<Rational>& a,
                                            const std::vector<Rational>& b,
                                            const Rational& g, bool as_printed);

// Coalgebra on the subsets of {1..n}: counit selects the empty set and the
// comultiplication sums over ordered covers with weight^{|U and V|}.
FinCoalgebra subset_coalgebra(int n, const Rational& weight);

// Character of the weighted tensor computed from the summand bookkeeping
// alone: fixed pair-summands contribute the product of the factor
// characters times g^{cycles} of the intersection permutation.
Rational weighted_tensor_character_bookkeeping(const LinearSpecies& M,
                                               const LinearSpecies& N, int g,
                                               int n, const Perm& p);

}  // namespace hzk
