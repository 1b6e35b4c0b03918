#include "hzk/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "hzk/combinatorics.hpp"

namespace hzk {

bool AlgebraElem::is_zero() const {
  for (const auto& c : coords)
    if (!c.is_zero()) return false;
  return true;
}

bool AlgebraElem::operator==(const AlgebraElem& o) const {
  return ctx == o.ctx && coords == o.coords;
}

AlgebraCtx::AlgebraCtx(std::string name, std::vector<std::string> labels,
                       std::vector<Rational> unit,
                       std::vector<std::vector<std::vector<Rational>>> mul)
    : name_(std::move(name)),
      dim_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      unit_(std::move(unit)),
      mul_(std::move(mul)) {
  if (dim_ <= 0) throw std::invalid_argument("AlgebraCtx: empty basis");
  if (static_cast<int>(unit_.size()) != dim_ ||
      static_cast<int>(mul_.size()) != dim_)
    throw std::invalid_argument("AlgebraCtx: dimension mismatch");
  for (const auto& row : mul_) {
    if (static_cast<int>(row.size()) != dim_)
      throw std::invalid_argument("AlgebraCtx: dimension mismatch");
    for (const auto& v : row)
      if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("AlgebraCtx: dimension mismatch");
  }

  // Unit is two-sided neutral on every basis vector.
  for (int j = 0; j < dim_; ++j) {
    std::vector<Rational> left(dim_), right(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (unit_[i].is_zero()) continue;
      for (int m = 0; m < dim_; ++m) {
        left[m].add_mul(unit_[i], mul_[i][j][m]);
        right[m].add_mul(unit_[i], mul_[j][i][m]);
      }
    }
    for (int m = 0; m < dim_; ++m) {
      Rational want(m == j ? 1 : 0);
      if (left[m] != want || right[m] != want)
        throw std::invalid_argument("AlgebraCtx '" + name_ + "': unit not neutral");
    }
  }

  // Associativity on all basis triples, via the structure constants.
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        std::vector<Rational> lhs(dim_), rhs(dim_);
        for (int m = 0; m < dim_; ++m) {
          const Rational& cm = mul_[i][j][m];
          if (!cm.is_zero())
            for (int p = 0; p < dim_; ++p) lhs[p].add_mul(cm, mul_[m][k][p]);
          const Rational& dm = mul_[j][k][m];
          if (!dm.is_zero())
            for (int p = 0; p < dim_; ++p) rhs[p].add_mul(dm, mul_[i][m][p]);
        }
        if (lhs != rhs)
          throw std::invalid_argument("AlgebraCtx '" + name_ +
                                      "': multiplication not associative");
      }

  commutative_ = true;
  for (int i = 0; i < dim_ && commutative_; ++i)
    for (int j = i + 1; j < dim_ && commutative_; ++j)
      if (mul_[i][j] != mul_[j][i]) commutative_ = false;
}

AlgebraElem AlgebraCtx::zero() const {
  return AlgebraElem{this, std::vector<Rational>(static_cast<size_t>(dim_))};
}

AlgebraElem AlgebraCtx::one() const { return AlgebraElem{this, unit_}; }

AlgebraElem AlgebraCtx::basis(int i) const {
  AlgebraElem e = zero();
  e.coords[static_cast<size_t>(i)] = Rational(1);
  return e;
}

AlgebraElem AlgebraCtx::elem(std::vector<Rational> coords) const {
  if (static_cast<int>(coords.size()) != dim_)
    throw std::invalid_argument("AlgebraCtx: coordinate length mismatch");
  return AlgebraElem{this, std::move(coords)};
}

AlgebraElem AlgebraCtx::from_scalar(const Rational& c) const {
  AlgebraElem e = one();
  for (auto& x : e.coords) x *= c;
  return e;
}

AlgebraElem AlgebraCtx::mul(const AlgebraElem& x, const AlgebraElem& y) const {
  if (x.ctx != this || y.ctx != this)
    throw std::invalid_argument("AlgebraCtx: element from another context");
  AlgebraElem r = zero();
  for (int i = 0; i < dim_; ++i) {
    if (x.coords[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y.coords[j].is_zero()) continue;
      Rational c = x.coords[i] * y.coords[j];
      const auto& sc = mul_[i][j];
      for (int m = 0; m < dim_; ++m)
        if (!sc[m].is_zero()) r.coords[m].add_mul(c, sc[m]);
    }
  }
  return r;
}

AlgebraElem AlgebraCtx::add(const AlgebraElem& x, const AlgebraElem& y) const {
  AlgebraElem r = x;
  for (int m = 0; m < dim_; ++m) r.coords[m] += y.coords[m];
  return r;
}

AlgebraElem AlgebraCtx::sub(const AlgebraElem& x, const AlgebraElem& y) const {
  AlgebraElem r = x;
  for (int m = 0; m < dim_; ++m) r.coords[m] -= y.coords[m];
  return r;
}

AlgebraElem AlgebraCtx::scale(const Rational& c, const AlgebraElem& x) const {
  AlgebraElem r = x;
  for (auto& v : r.coords) v *= c;
  return r;
}

namespace {

std::vector<std::vector<std::vector<Rational>>> empty_mul(int dim) {
  return std::vector<std::vector<std::vector<Rational>>>(
      dim, std::vector<std::vector<Rational>>(
               dim, std::vector<Rational>(static_cast<size_t>(dim))));
}

AlgebraCtx build_rational() {
  auto mul = empty_mul(1);
  mul[0][0][0] = Rational(1);
  return AlgebraCtx("rat", {"1"}, {Rational(1)}, std::move(mul));
}

AlgebraCtx build_mat2() {
  // Basis e11, e12, e21, e22 with e_{ab} e_{cd} = [b==c] e_{ad}.
  auto idx = [](int a, int b) { return 2 * a + b; };
  auto mul = empty_mul(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          if (b == c) mul[idx(a, b)][idx(c, d)][idx(a, d)] = Rational(1);
  std::vector<Rational> unit(4);
  unit[idx(0, 0)] = Rational(1);
  unit[idx(1, 1)] = Rational(1);
  return AlgebraCtx("mat2", {"e11", "e12", "e21", "e22"}, std::move(unit),
                    std::move(mul));
}

AlgebraCtx build_poly_trunc(int m) {
  auto mul = empty_mul(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i + j < m) mul[i][j][i + j] = Rational(1);
  std::vector<std::string> labels;
  labels.emplace_back("1");
  for (int i = 1; i < m; ++i)
    labels.push_back(i == 1 ? "y" : "y^" + std::to_string(i));
  std::vector<Rational> unit(static_cast<size_t>(m));
  unit[0] = Rational(1);
  return AlgebraCtx("poly" + std::to_string(m), std::move(labels), std::move(unit),
                    std::move(mul));
}

AlgebraCtx build_c2_group() {
  auto mul = empty_mul(2);
  mul[0][0][0] = Rational(1);
  mul[0][1][1] = Rational(1);
  mul[1][0][1] = Rational(1);
  mul[1][1][0] = Rational(1);  // g*g = 1
  return AlgebraCtx("c2", {"1", "g"}, {Rational(1), Rational(0)}, std::move(mul));
}

AlgebraCtx build_split_pair() {
  auto mul = empty_mul(2);
  mul[0][0][0] = Rational(1);
  mul[1][1][1] = Rational(1);
  return AlgebraCtx("kxk", {"p1", "p2"}, {Rational(1), Rational(1)}, std::move(mul));
}

}  // namespace

const AlgebraCtx& rational_ctx() {
  static const AlgebraCtx ctx = build_rational();
  return ctx;
}

const AlgebraCtx& mat2_ctx() {
  static const AlgebraCtx ctx = build_mat2();
  return ctx;
}

const AlgebraCtx& poly_trunc_ctx(int m) {
  static const AlgebraCtx p2 = build_poly_trunc(2);
  static const AlgebraCtx p3 = build_poly_trunc(3);
  static const AlgebraCtx p4 = build_poly_trunc(4);
  switch (m) {
    case 2: return p2;
    case 3: return p3;
    case 4: return p4;
    default: throw std::invalid_argument("poly_trunc_ctx: m must be 2, 3 or 4");
  }
}

const AlgebraCtx& c2_group_ctx() {
  static const AlgebraCtx ctx = build_c2_group();
  return ctx;
}

const AlgebraCtx& split_pair_ctx() {
  static const AlgebraCtx ctx = build_split_pair();
  return ctx;
}

const AlgebraCtx& ctx_by_name(const std::string& name) {
  if (name == "rat") return rational_ctx();
  if (name == "mat2") return mat2_ctx();
  if (name == "poly3") return poly_trunc_ctx(3);
  if (name == "poly2") return poly_trunc_ctx(2);
  if (name == "poly4") return poly_trunc_ctx(4);
  if (name == "c2") return c2_group_ctx();
  if (name == "kxk") return split_pair_ctx();
  throw std::invalid_argument("unknown coefficient context '" + name + "'");
}

AlgebraElem binom_elem(const AlgebraElem& x, int r) {
  if (r < 0) throw std::invalid_argument("binom_elem: negative index");
  const AlgebraCtx& A = *x.ctx;
  if (!A.commutative())
    throw std::invalid_argument(
        "binom_elem: falling factorials need a commutative context");
  AlgebraElem acc = A.one();
  for (int j = 0; j < r; ++j)
    acc = A.mul(acc, A.sub(x, A.from_scalar(Rational(j))));
  Rational inv_rfact = multinomial(r, {}).inverse();  // 1/r!
  return A.scale(inv_rfact, acc);
}

bool binomial_product_identity_holds(int p, int q, const AlgebraElem& probe) {
  if (p < 0 || q < 0) throw std::invalid_argument("identity needs p,q >= 0");
  const AlgebraCtx& A = *probe.ctx;
  AlgebraElem lhs = A.mul(binom_elem(probe, p), binom_elem(probe, q));
  AlgebraElem rhs = A.zero();
  for (int t = 0; t <= std::min(p, q); ++t) {
    Rational c = multinomial(p + q - t, {p - t, q - t, t});
    rhs = A.add(rhs, A.scale(c, binom_elem(probe, p + q - t)));
  }
  return lhs == rhs;
}

}  // namespace hzk
