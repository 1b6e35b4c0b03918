#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hzk/algebra.hpp"
#include "hzk/matrix.hpp"
#include "hzk/rational.hpp"

namespace hzk {

// Sparse element of a tensor square, keyed by basis index pairs.
using SparseTensor = std::map<std::pair<int, int>, Rational>;

// Finite free coalgebra presented by structure constants: counit vector
// and, per basis element, a sparse comultiplication. Coassociativity and
// both counit laws are checked exactly on every basis element at
// construction. Optionally pointed by a grouplike basis element.
class FinCoalgebra {
 public:
  FinCoalgebra(std::string name, std::vector<std::string> labels,
               std::vector<Rational> counit, std::vector<SparseTensor> comult,
               std::optional<int> point = std::nullopt);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Rational& counit(int i) const { return counit_[i]; }
  const SparseTensor& comult(int i) const { return comult_[i]; }
  std::optional<int> point() const { return point_; }

 private:
  std::string name_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<Rational> counit_;
  std::vector<SparseTensor> comult_;
  std::optional<int> point_;
};

// Linear map of coalgebras; counit and comultiplication compatibility are
// checked exactly at construction.
class CoalgebraMorphism {
 public:
  CoalgebraMorphism(const FinCoalgebra& src, const FinCoalgebra& dst, Matrix map);
  const FinCoalgebra& src() const { return *src_; }
  const FinCoalgebra& dst() const { return *dst_; }
  const Matrix& map() const { return map_; }

 private:
  const FinCoalgebra* src_;
  const FinCoalgebra* dst_;
  Matrix map_;
};

// Rank-2 pointed coalgebra on {e, d} with counit(d) = 0 and
// comult(d) = d(x)e + e(x)d + w d(x)d; the generic weighted model.
FinCoalgebra weighted_coalgebra(const Rational& weight);

// Rank-2 "set-like" pointed coalgebra: both basis vectors grouplike.
FinCoalgebra diagonal_coalgebra();

// Morphism from the diagonal to the weighted model: e -> e, d -> w d + e.
CoalgebraMorphism comparison_morphism(const Rational& weight);

// Tensor product coalgebra on basis pairs, counit multiplicative and
// comultiplication with the middle swap.
FinCoalgebra coalgebra_tensor(const FinCoalgebra& a, const FinCoalgebra& b);

// Joint coequalizer of the point insertions on the l-fold tensor power of
// a pointed coalgebra: words modulo moving point letters to the front.
// For the rank-2 models the normal forms are e^r d^s, giving dimension l+1.
FinCoalgebra word_quotient(const FinCoalgebra& pointed, int power);

// Closed form of the quotient comultiplication for the weighted model:
// comult(d_n) = sum over r+s+t=n of multinomial(n;r,s,t) w^t
// d_{r+t} (x) d_{s+t}, on basis d_0..d_bound.
SparseTensor weighted_comult_closed_form(int n, const Rational& weight);

// The weighted model quotient built directly from the closed form.
FinCoalgebra weighted_coalgebra_quotient(const Rational& weight, int level);

// Set-like quotient of the diagonal model, basis d_0..d_level.
FinCoalgebra diagonal_coalgebra_quotient(int level);

// Coefficients of the induced comparison map on the quotients:
// d_n -> sum_m binom(n,m) w^m d_m.
std::vector<Rational> comparison_coeffs(int n, const Rational& weight);

// The induced morphism on level-l quotients, validated.
CoalgebraMorphism comparison_morphism_quotient(const Rational& weight, int level);

// Convolution algebra on linear maps C -> A, dimension dim(C)*dim(A) with
// basis E_{i,a}, unit the counit followed by the algebra unit, and product
// f*g = mul o (f(x)g) o comult. Coordinates flatten as (i,a) -> i*dimA + a.
AlgebraCtx convolution_ctx(const FinCoalgebra& c, const AlgebraCtx& a);

// Recovers the weight and the change of basis d = d' - counit(d') e
// exhibiting any rank-2 pointed coalgebra as the weighted model.
struct Rank2Normalization {
  Rational weight;
  Matrix basis_change;  // new basis in terms of the old, 2x2
};
Rank2Normalization normalize_rank2(const FinCoalgebra& c);

// Working-bounded model of the free graded bialgebra with basis d_0..d_N,
// product d_m d_n = d_{m+n}, and the weighted (or set-like) coalgebra
// structure per degree. Degreewise data are memoized lazily; safe for
// concurrent readers.
class GradedBialgebra {
 public:
  GradedBialgebra(Rational weight, bool diagonal, int bound);

  int bound() const { return bound_; }
  const Rational& weight() const { return weight_; }
  bool diagonal() const { return diagonal_; }

  Rational counit(int n) const;
  const SparseTensor& comult(int n) const;

  // Checks counit and comultiplication are algebra maps up to the bound:
  // comult(d_{m+n}) = comult(d_m) * comult(d_n) componentwise.
  bool compatible_to_degree(int max_degree) const;

 private:
  Rational weight_;
  bool diagonal_;
  int bound_;
  mutable std::mutex mu_;
  mutable std::map<int, SparseTensor> cache_;
};

}  // namespace hzk
