#include "hzk/coalgebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "hzk/combinatorics.hpp"

namespace hzk {

namespace {

using SparseTriple = std::map<std::tuple<int, int, int>, Rational>;

void add_entry(SparseTensor& t, int i, int j, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

void add_entry3(SparseTriple& t, int i, int j, int k, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t.try_emplace({i, j, k}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

}  // namespace

FinCoalgebra::FinCoalgebra(std::string name, std::vector<std::string> labels,
                           std::vector<Rational> counit,
                           std::vector<SparseTensor> comult,
                           std::optional<int> point)
    : name_(std::move(name)),
      dim_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      counit_(std::move(counit)),
      comult_(std::move(comult)),
      point_(point) {
  if (dim_ <= 0) throw std::invalid_argument("FinCoalgebra: empty basis");
  if (static_cast<int>(counit_.size()) != dim_ ||
      static_cast<int>(comult_.size()) != dim_)
    throw std::invalid_argument("FinCoalgebra: dimension mismatch");

  for (int b = 0; b < dim_; ++b) {
    // Counit laws: (eps (x) id) comult = id = (id (x) eps) comult.
    std::vector<Rational> left(static_cast<size_t>(dim_)),
        right(static_cast<size_t>(dim_));
    for (const auto& [ij, c] : comult_[b]) {
      auto [i, j] = ij;
      if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
        throw std::invalid_argument("FinCoalgebra: comult index out of range");
      left[j].add_mul(counit_[i], c);
      right[i].add_mul(counit_[j], c);
    }
    for (int m = 0; m < dim_; ++m) {
      Rational want(m == b ? 1 : 0);
      if (left[m] != want || right[m] != want)
        throw std::invalid_argument("FinCoalgebra '" + name_ +
                                    "': counit law fails on basis " +
                                    labels_[b]);
    }

    // Coassociativity: (comult (x) id) comult = (id (x) comult) comult.
    SparseTriple lhs, rhs;
    for (const auto& [ij, c] : comult_[b]) {
      auto [i, j] = ij;
      for (const auto& [pq, d] : comult_[i]) add_entry3(lhs, pq.first, pq.second, j, c * d);
      for (const auto& [pq, d] : comult_[j]) add_entry3(rhs, i, pq.first, pq.second, c * d);
    }
    if (lhs != rhs)
      throw std::invalid_argument("FinCoalgebra '" + name_ +
                                  "': coassociativity fails on basis " +
                                  labels_[b]);
  }

  if (point_) {
    int p = *point_;
    if (p < 0 || p >= dim_)
      throw std::invalid_argument("FinCoalgebra: point out of range");
    if (!counit_[p].is_one())
      throw std::invalid_argument("FinCoalgebra: point must have counit 1");
    SparseTensor grouplike;
    grouplike[{p, p}] = Rational(1);
    if (comult_[p] != grouplike)
      throw std::invalid_argument("FinCoalgebra: point must be grouplike");
  }
}

CoalgebraMorphism::CoalgebraMorphism(const FinCoalgebra& src,
                                     const FinCoalgebra& dst, Matrix map)
    : src_(&src), dst_(&dst), map_(std::move(map)) {
  if (map_.rows() != dst.dim() || map_.cols() != src.dim())
    throw std::invalid_argument("CoalgebraMorphism: matrix size mismatch");
  for (int b = 0; b < src.dim(); ++b) {
    // Counit: eps_dst(f(b)) = eps_src(b).
    Rational eps(0);
    for (int i = 0; i < dst.dim(); ++i) eps.add_mul(map_.at(i, b), dst.counit(i));
    if (eps != src.counit(b))
      throw std::invalid_argument("CoalgebraMorphism: counit not preserved");

    // (f (x) f) comult_src(b) = comult_dst(f(b)).
    SparseTensor lhs;
    for (const auto& [ij, c] : src.comult(b)) {
      auto [i, j] = ij;
      for (int p = 0; p < dst.dim(); ++p) {
        if (map_.at(p, i).is_zero()) continue;
        for (int q = 0; q < dst.dim(); ++q)
          add_entry(lhs, p, q, c * map_.at(p, i) * map_.at(q, j));
      }
    }
    SparseTensor rhs;
    for (int i = 0; i < dst.dim(); ++i) {
      if (map_.at(i, b).is_zero()) continue;
      for (const auto& [pq, c] : dst.comult(i))
        add_entry(rhs, pq.first, pq.second, map_.at(i, b) * c);
    }
    if (lhs != rhs)
      throw std::invalid_argument(
          "CoalgebraMorphism: comultiplication not preserved");
  }
  // Pointedness travels along when both sides are pointed.
  if (src.point() && dst.point()) {
    for (int i = 0; i < dst.dim(); ++i) {
      Rational want(i == *dst.point() ? 1 : 0);
      if (map_.at(i, *src.point()) != want)
        throw std::invalid_argument("CoalgebraMorphism: point not preserved");
    }
  }
}

FinCoalgebra weighted_coalgebra(const Rational& weight) {
  std::vector<SparseTensor> comult(2);
  comult[0][{0, 0}] = Rational(1);
  comult[1][{1, 0}] = Rational(1);
  comult[1][{0, 1}] = Rational(1);
  if (!weight.is_zero()) comult[1][{1, 1}] = weight;
  return FinCoalgebra("C(" + weight.str() + ")", {"e", "d"},
                      {Rational(1), Rational(0)}, std::move(comult), 0);
}

FinCoalgebra diagonal_coalgebra() {
  std::vector<SparseTensor> comult(2);
  comult[0][{0, 0}] = Rational(1);
  comult[1][{1, 1}] = Rational(1);
  return FinCoalgebra("D", {"e", "d"}, {Rational(1), Rational(1)},
                      std::move(comult), 0);
}

CoalgebraMorphism comparison_morphism(const Rational& weight) {
  static const FinCoalgebra d = diagonal_coalgebra();
  static std::map<std::string, FinCoalgebra> targets;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = targets.try_emplace(weight.str(), weighted_coalgebra(weight));
  Matrix m(2, 2);
  m.at(0, 0) = Rational(1);
  m.at(0, 1) = Rational(1);
  m.at(1, 1) = weight;
  return CoalgebraMorphism(d, it->second, std::move(m));
}

FinCoalgebra coalgebra_tensor(const FinCoalgebra& a, const FinCoalgebra& b) {
  int da = a.dim(), db = b.dim();
  auto idx = [db](int i, int p) { return i * db + p; };
  std::vector<std::string> labels;
  std::vector<Rational> counit;
  std::vector<SparseTensor> comult(static_cast<size_t>(da) * db);
  for (int i = 0; i < da; ++i)
    for (int p = 0; p < db; ++p) {
      labels.push_back(a.labels()[i] + "." + b.labels()[p]);
      counit.push_back(a.counit(i) * b.counit(p));
      SparseTensor& t = comult[idx(i, p)];
      for (const auto& [jk, c] : a.comult(i))
        for (const auto& [qr, d] : b.comult(p))
          add_entry(t, idx(jk.first, qr.first), idx(jk.second, qr.second), c * d);
    }
  std::optional<int> point;
  if (a.point() && b.point()) point = idx(*a.point(), *b.point());
  return FinCoalgebra(a.name() + "(x)" + b.name(), std::move(labels),
                      std::move(counit), std::move(comult), point);
}

FinCoalgebra word_quotient(const FinCoalgebra& pointed, int power) {
  if (!pointed.point())
    throw std::invalid_argument("word_quotient: coalgebra must be pointed");
  if (power < 1) throw std::invalid_argument("word_quotient: power must be >= 1");
  const int e = *pointed.point();
  const int dim = pointed.dim();

  // Normal form of a word: point letters first, the rest in order.
  auto normalize = [&](const std::vector<int>& w) {
    std::vector<int> out;
    int points = 0;
    for (int letter : w)
      if (letter == e)
        ++points;
      else
        out.push_back(letter);
    std::vector<int> norm(static_cast<size_t>(points), e);
    norm.insert(norm.end(), out.begin(), out.end());
    return norm;
  };

  // Enumerate classes: all words of the shape e^r w with w point-free.
  std::vector<std::vector<int>> classes;
  std::map<std::vector<int>, int> class_index;
  std::vector<int> word(static_cast<size_t>(power), 0);
  while (true) {
    std::vector<int> norm = normalize(word);
    if (class_index.emplace(norm, static_cast<int>(classes.size())).second)
      classes.push_back(norm);
    int i = 0;
    while (i < power) {
      if (++word[static_cast<size_t>(i)] < dim) break;
      word[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == power) break;
  }
  std::sort(classes.begin(), classes.end(),
            [&](const std::vector<int>& x, const std::vector<int>& y) {
              int px = static_cast<int>(std::count(x.begin(), x.end(), e));
              int py = static_cast<int>(std::count(y.begin(), y.end(), e));
              if (px != py) return px > py;  // more points first: d_0, d_1, ...
              return x < y;
            });
  class_index.clear();
  for (size_t i = 0; i < classes.size(); ++i)
    class_index[classes[i]] = static_cast<int>(i);

  std::vector<std::string> labels;
  std::vector<Rational> counit;
  std::vector<SparseTensor> comult(classes.size());
  for (size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& rep = classes[ci];
    std::string label;
    for (int letter : rep) label += pointed.labels()[letter];
    labels.push_back(label);

    Rational eps(1);
    for (int letter : rep) eps *= pointed.counit(letter);
    counit.push_back(eps);

    // Tensor-power comultiplication of the representative, normalized on
    // both sides.
    struct Term {
      std::vector<int> left, right;
      Rational coef;
    };
    std::vector<Term> terms = {{{}, {}, Rational(1)}};
    for (int letter : rep) {
      std::vector<Term> next;
      for (const auto& t : terms)
        for (const auto& [jk, c] : pointed.comult(letter)) {
          Term nt = t;
          nt.left.push_back(jk.first);
          nt.right.push_back(jk.second);
          nt.coef *= c;
          next.push_back(std::move(nt));
        }
      terms = std::move(next);
    }
    for (const auto& t : terms)
      add_entry(comult[ci], class_index.at(normalize(t.left)),
                class_index.at(normalize(t.right)), t.coef);
  }

  std::vector<int> all_point(static_cast<size_t>(power), e);
  return FinCoalgebra(pointed.name() + "_" + std::to_string(power),
                      std::move(labels), std::move(counit), std::move(comult),
                      class_index.at(all_point));
}

SparseTensor weighted_comult_closed_form(int n, const Rational& weight) {
  SparseTensor out;
  for_each_composition3(n, [&](int r, int s, int t) {
    Rational c = multinomial(n, {r, s, t});
    if (t > 0) c *= weight.pow(static_cast<unsigned>(t));
    add_entry(out, r + t, s + t, c);
  });
  return out;
}

FinCoalgebra weighted_coalgebra_quotient(const Rational& weight, int level) {
  std::vector<std::string> labels;
  std::vector<Rational> counit;
  std::vector<SparseTensor> comult;
  for (int n = 0; n <= level; ++n) {
    labels.push_back("d" + std::to_string(n));
    counit.push_back(Rational(n == 0 ? 1 : 0));
    comult.push_back(weighted_comult_closed_form(n, weight));
  }
  return FinCoalgebra("C(" + weight.str() + ")_" + std::to_string(level),
                      std::move(labels), std::move(counit), std::move(comult), 0);
}

FinCoalgebra diagonal_coalgebra_quotient(int level) {
  std::vector<std::string> labels;
  std::vector<Rational> counit;
  std::vector<SparseTensor> comult(static_cast<size_t>(level) + 1);
  for (int n = 0; n <= level; ++n) {
    labels.push_back("d" + std::to_string(n));
    counit.push_back(Rational(1));
    comult[n][{n, n}] = Rational(1);
  }
  return FinCoalgebra("D_" + std::to_string(level), std::move(labels),
                      std::move(counit), std::move(comult), 0);
}

std::vector<Rational> comparison_coeffs(int n, const Rational& weight) {
  std::vector<Rational> out;
  for (int m = 0; m <= n; ++m)
    out.push_back(binom(n, m) * weight.pow(static_cast<unsigned>(m)));
  return out;
}

CoalgebraMorphism comparison_morphism_quotient(const Rational& weight,
                                               int level) {
  static std::map<std::pair<std::string, int>,
                  std::pair<FinCoalgebra, FinCoalgebra>>
      cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(weight.str(), level);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache
             .emplace(key, std::make_pair(diagonal_coalgebra_quotient(level),
                                          weighted_coalgebra_quotient(weight,
                                                                      level)))
             .first;
  Matrix m(level + 1, level + 1);
  for (int n = 0; n <= level; ++n) {
    auto col = comparison_coeffs(n, weight);
    for (int i = 0; i <= n; ++i) m.at(i, n) = col[static_cast<size_t>(i)];
  }
  return CoalgebraMorphism(it->second.first, it->second.second, std::move(m));
}

AlgebraCtx convolution_ctx(const FinCoalgebra& c, const AlgebraCtx& a) {
  int dc = c.dim(), da = a.dim();
  int dim = dc * da;
  auto idx = [da](int i, int x) { return i * da + x; };

  std::vector<std::string> labels;
  for (int i = 0; i < dc; ++i)
    for (int x = 0; x < da; ++x)
      labels.push_back("[" + c.labels()[i] + "->" + a.labels()[x] + "]");

  // Unit is the counit followed by the algebra unit.
  std::vector<Rational> unit(static_cast<size_t>(dim));
  AlgebraElem one = a.one();
  for (int i = 0; i < dc; ++i)
    for (int x = 0; x < da; ++x) unit[idx(i, x)] = c.counit(i) * one.coords[x];

  // E_{i,x} * E_{j,y} sends basis m to comult-coefficient of (i,j) in m
  // times the product of the value vectors.
  std::vector<std::vector<std::vector<Rational>>> mul(
      static_cast<size_t>(dim),
      std::vector<std::vector<Rational>>(static_cast<size_t>(dim),
                                         std::vector<Rational>(
                                             static_cast<size_t>(dim))));
  for (int i = 0; i < dc; ++i)
    for (int x = 0; x < da; ++x)
      for (int j = 0; j < dc; ++j)
        for (int y = 0; y < da; ++y) {
          const auto& prod = a.structure(x, y);
          auto& target = mul[idx(i, x)][idx(j, y)];
          for (int m = 0; m < dc; ++m) {
            auto it = c.comult(m).find({i, j});
            if (it == c.comult(m).end()) continue;
            for (int z = 0; z < da; ++z)
              if (!prod[z].is_zero()) target[idx(m, z)] += it->second * prod[z];
          }
        }
  return AlgebraCtx("[" + c.name() + "," + a.name() + "]", std::move(labels),
                    std::move(unit), std::move(mul));
}

Rank2Normalization normalize_rank2(const FinCoalgebra& c) {
  if (c.dim() != 2) throw std::invalid_argument("normalize_rank2: rank must be 2");
  if (!c.point()) throw std::invalid_argument("normalize_rank2: must be pointed");
  int e = *c.point();
  int d = 1 - e;

  // Change of basis d_new = d - counit(d) e; the counit laws force the
  // mixed coefficients to 1 and the e(x)e coefficient to 0 afterwards.
  Rational shift = c.counit(d);
  auto coeff = [&](const SparseTensor& t, int i, int j) {
    auto it = t.find({i, j});
    return it == t.end() ? Rational(0) : it->second;
  };
  const SparseTensor& dd = c.comult(d);
  // comult(d_new) in the new basis {e, d_new}:
  // expand comult(d) - shift e(x)e and rewrite d = d_new + shift e.
  Rational rho = coeff(dd, e, e), sigma = coeff(dd, e, d), tau = coeff(dd, d, e),
           ups = coeff(dd, d, d);
  // d(x)d -> (d_new + s e)(x)(d_new + s e) etc.
  Rational s = shift;
  Rational new_dd = ups;
  Rational new_de = tau + ups * s;
  Rational new_ed = sigma + ups * s;
  Rational new_ee = rho + sigma * s + tau * s + ups * s * s - s;
  if (new_de != Rational(1) || new_ed != Rational(1) || !new_ee.is_zero())
    throw std::invalid_argument(
        "normalize_rank2: counit laws violated (not a valid coalgebra?)");

  Rank2Normalization out;
  out.weight = new_dd;
  out.basis_change = Matrix::identity(2);
  out.basis_change.at(d, e) = Rational(0);
  out.basis_change.at(e, d) = -s;  // column d: d_new = d - s e
  // Rows/cols follow the original basis order; entry (i, j) is the
  // coefficient of old basis i in new basis j.
  out.basis_change.at(e, e) = Rational(1);
  out.basis_change.at(d, d) = Rational(1);
  return out;
}

GradedBialgebra::GradedBialgebra(Rational weight, bool diagonal, int bound)
    : weight_(std::move(weight)), diagonal_(diagonal), bound_(bound) {
  if (bound < 0) throw std::invalid_argument("GradedBialgebra: negative bound");
}

Rational GradedBialgebra::counit(int n) const {
  if (n < 0 || n > bound_) throw std::out_of_range("GradedBialgebra: degree");
  if (diagonal_) return Rational(1);
  return Rational(n == 0 ? 1 : 0);
}

const SparseTensor& GradedBialgebra::comult(int n) const {
  if (n < 0 || n > bound_) throw std::out_of_range("GradedBialgebra: degree");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(n);
  if (it == cache_.end()) {
    SparseTensor t;
    if (diagonal_)
      t[{n, n}] = Rational(1);
    else
      t = weighted_comult_closed_form(n, weight_);
    it = cache_.emplace(n, std::move(t)).first;
  }
  return it->second;
}

bool GradedBialgebra::compatible_to_degree(int max_degree) const {
  if (max_degree > bound_)
    throw std::invalid_argument("GradedBialgebra: degree beyond bound");
  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; m + n <= max_degree; ++n) {
      if (counit(m + n) != counit(m) * counit(n)) return false;
      // Product of tensors is componentwise: (d_i(x)d_j)(d_k(x)d_l) =
      // d_{i+k}(x)d_{j+l}.
      SparseTensor prod;
      for (const auto& [ij, c] : comult(m))
        for (const auto& [kl, d] : comult(n))
          add_entry(prod, ij.first + kl.first, ij.second + kl.second, c * d);
      if (prod != comult(m + n)) return false;
    }
  return true;
}

}  // namespace hzk
