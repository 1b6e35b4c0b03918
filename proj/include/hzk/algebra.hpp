#pragma once

#include <string>
#include <vector>

#include "hzk/matrix.hpp"
#include "hzk/rational.hpp"

namespace hzk {

class AlgebraCtx;

// Element of a finite-dimensional algebra, stored as a coordinate vector
// in the basis of its context. Immutable in practice; operations return
// fresh values.
struct AlgebraElem {
  const AlgebraCtx* ctx = nullptr;
  std::vector<Rational> coords;

  bool is_zero() const;
  bool operator==(const AlgebraElem& o) const;
  bool operator!=(const AlgebraElem& o) const { return !(*this == o); }
};

// Associative unital algebra over the rationals, presented by a labelled
// basis and the structure-constant tensor c[i][j] = coords of b_i * b_j.
// Unit neutrality and associativity are checked on every basis pair and
// triple at construction; the commutativity flag is validated against the
// constants rather than trusted.
class AlgebraCtx {
 public:
  AlgebraCtx(std::string name, std::vector<std::string> labels,
             std::vector<Rational> unit,
             std::vector<std::vector<std::vector<Rational>>> mul);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool commutative() const { return commutative_; }

  AlgebraElem zero() const;
  AlgebraElem one() const;
  AlgebraElem basis(int i) const;
  AlgebraElem elem(std::vector<Rational> coords) const;
  AlgebraElem from_scalar(const Rational& c) const;

  AlgebraElem mul(const AlgebraElem& x, const AlgebraElem& y) const;
  AlgebraElem add(const AlgebraElem& x, const AlgebraElem& y) const;
  AlgebraElem sub(const AlgebraElem& x, const AlgebraElem& y) const;
  AlgebraElem scale(const Rational& c, const AlgebraElem& x) const;

  // Structure constants of b_i * b_j.
  const std::vector<Rational>& structure(int i, int j) const { return mul_[i][j]; }

 private:
  std::string name_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<Rational> unit_;
  std::vector<std::vector<std::vector<Rational>>> mul_;
  bool commutative_ = false;
};

// Built-in coefficient contexts. References stay valid for the whole run.
const AlgebraCtx& rational_ctx();                 // the base field itself
const AlgebraCtx& mat2_ctx();                     // 2x2 matrices, noncommutative
const AlgebraCtx& poly_trunc_ctx(int m = 3);      // k[y]/(y^m), m in {2,3,4}
const AlgebraCtx& c2_group_ctx();                 // group algebra k[C2], basis {1,g}
const AlgebraCtx& split_pair_ctx();               // k x k, basis of idempotents
const AlgebraCtx& ctx_by_name(const std::string& name);

// Falling-factorial binomial of an algebra element:
// binom(x,0) = 1, binom(x,r) = x(x-1)...(x-r+1)/r!. Commutative ctx only.
AlgebraElem binom_elem(const AlgebraElem& x, int r);

// Checks binom(x,p)binom(x,q) = sum_t multinomial(p+q-t; p-t, q-t, t)
// binom(x, p+q-t) at the given probe element, exactly.
bool binomial_product_identity_holds(int p, int q, const AlgebraElem& probe);

}  // namespace hzk
