#include "hzk/species.hpp"

#include <algorithm>
#include <stdexcept>

#include "hzk/combinatorics.hpp"
#include "hzk/series.hpp"

namespace hzk {

Perm identity_perm(int n) {
  Perm p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
  return p;
}

Perm compose_perm(const Perm& f, const Perm& g) {
  Perm out(g.size());
  for (size_t i = 0; i < g.size(); ++i)
    out[i] = f[static_cast<size_t>(g[i])];
  return out;
}

bool is_perm(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<size_t>(v)])
      return false;
    seen[static_cast<size_t>(v)] = true;
  }
  return true;
}

std::vector<int> adjacent_word(const Perm& p) {
  // Bubble sort: right-multiplying by s_i swaps entries i, i+1. If
  // p s_{i1} ... s_{ik} = id then p = s_{ik} ... s_{i1}.
  Perm cur = p;
  std::vector<int> sorting;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < static_cast<int>(cur.size()); ++i)
      if (cur[i] > cur[i + 1]) {
        std::swap(cur[i], cur[i + 1]);
        sorting.push_back(i);
        moved = true;
      }
  }
  std::reverse(sorting.begin(), sorting.end());
  return sorting;
}

int perm_cycle_count(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int cycles = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<size_t>(p[j]);
    }
  }
  return cycles;
}

LinearSpecies::LinearSpecies(std::vector<int> ranks,
                             std::vector<std::vector<Matrix>> gens)
    : ranks_(std::move(ranks)), gens_(std::move(gens)) {
  if (ranks_.empty() || gens_.size() != ranks_.size())
    throw std::invalid_argument("LinearSpecies: shape mismatch");
  for (size_t n = 0; n < ranks_.size(); ++n) {
    int expected = std::max<int>(0, static_cast<int>(n) - 1);
    if (static_cast<int>(gens_[n].size()) != expected)
      throw std::invalid_argument("LinearSpecies: wrong generator count");
    int r = ranks_[n];
    for (const Matrix& g : gens_[n])
      if (g.rows() != r || g.cols() != r)
        throw std::invalid_argument("LinearSpecies: generator size mismatch");
    // Coxeter relations.
    Matrix id = Matrix::identity(r);
    for (int i = 0; i + 1 < static_cast<int>(n); ++i) {
      const Matrix& si = gens_[n][static_cast<size_t>(i)];
      if (si * si != id)
        throw std::invalid_argument("LinearSpecies: involution relation fails");
      for (int j = i + 1; j + 1 < static_cast<int>(n); ++j) {
        const Matrix& sj = gens_[n][static_cast<size_t>(j)];
        if (j == i + 1) {
          if (si * sj * si != sj * si * sj)
            throw std::invalid_argument("LinearSpecies: braid relation fails");
        } else if (si * sj != sj * si) {
          throw std::invalid_argument(
              "LinearSpecies: distant commutation fails");
        }
      }
    }
  }
}

Matrix LinearSpecies::action(int n, const Perm& p) const {
  if (n < 0 || n > bound()) throw std::invalid_argument("species: bad level");
  if (static_cast<int>(p.size()) != n || !is_perm(p))
    throw std::invalid_argument("species: invalid permutation");
  Matrix out = Matrix::identity(rank(n));
  for (int i : adjacent_word(p)) out = out * gen(n, i);
  return out;
}

Rational LinearSpecies::character(int n, const Perm& p) const {
  Matrix a = action(n, p);
  Rational tr(0);
  for (int i = 0; i < a.rows(); ++i) tr += a.at(i, i);
  return tr;
}

namespace {

std::vector<std::vector<Matrix>> trivial_gens(const std::vector<int>& ranks) {
  std::vector<std::vector<Matrix>> gens(ranks.size());
  for (size_t n = 0; n < ranks.size(); ++n)
    gens[n].assign(static_cast<size_t>(std::max<int>(0, static_cast<int>(n) - 1)),
                   Matrix::identity(ranks[n]));
  return gens;
}

}  // namespace

LinearSpecies species_unit(int bound) {
  std::vector<int> ranks(static_cast<size_t>(bound) + 1, 0);
  ranks[0] = 1;
  return LinearSpecies(ranks, trivial_gens(ranks));
}

LinearSpecies species_exp(int bound) {
  std::vector<int> ranks(static_cast<size_t>(bound) + 1, 1);
  return LinearSpecies(ranks, trivial_gens(ranks));
}

LinearSpecies species_sign(int bound) {
  std::vector<int> ranks(static_cast<size_t>(bound) + 1, 1);
  std::vector<std::vector<Matrix>> gens(ranks.size());
  Matrix neg(1, 1);
  neg.at(0, 0) = Rational(-1);
  for (size_t n = 0; n < ranks.size(); ++n)
    gens[n].assign(static_cast<size_t>(std::max<int>(0, static_cast<int>(n) - 1)),
                   neg);
  return LinearSpecies(ranks, gens);
}

LinearSpecies species_singleton(int bound) {
  std::vector<int> ranks(static_cast<size_t>(bound) + 1, 0);
  if (bound >= 1) ranks[1] = 1;
  return LinearSpecies(ranks, trivial_gens(ranks));
}

LinearSpecies species_random(int bound, Prng& rng, int max_rank) {
  std::vector<int> ranks(static_cast<size_t>(bound) + 1, 0);
  std::vector<std::vector<Matrix>> gens(ranks.size());
  for (int n = 0; n <= bound; ++n) {
    // Mix of trivial and sign one-dimensional pieces, conjugated.
    int triv = static_cast<int>(rng.below(static_cast<uint64_t>(max_rank) + 1));
    int sign = static_cast<int>(
        rng.below(static_cast<uint64_t>(max_rank - triv) + 1));
    int r = triv + sign;
    ranks[n] = r;
    Matrix q = rng.invertible(r);
    Matrix qi = q.inverse();
    Matrix s = Matrix::zero(r, r);
    for (int i = 0; i < r; ++i) s.at(i, i) = Rational(i < triv ? 1 : -1);
    Matrix conj = q * s * qi;
    gens[n].assign(static_cast<size_t>(std::max(0, n - 1)), conj);
  }
  return LinearSpecies(ranks, gens);
}

LinearSpecies species_by_name(const std::string& name, int bound, uint64_t seed) {
  if (name == "unit") return species_unit(bound);
  if (name == "exp") return species_exp(bound);
  if (name == "sign") return species_sign(bound);
  if (name == "x" || name == "singleton") return species_singleton(bound);
  if (name == "random") {
    Prng rng(seed);
    return species_random(bound, rng);
  }
  throw std::invalid_argument("unknown species '" + name + "'");
}

namespace {

int popcount(uint32_t m) { return __builtin_popcount(m); }

// Elements of a mask in increasing order.
std::vector<int> mask_elems(uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

uint32_t apply_perm_mask(const Perm& p, uint32_t m) {
  uint32_t out = 0;
  for (int e : mask_elems(m)) out |= 1u << p[static_cast<size_t>(e)];
  return out;
}

// Permutation induced on the positions of mask m by p: position i of m goes
// to the position of p(elem_i) inside p(m).
Perm induced_perm(const Perm& p, uint32_t m) {
  std::vector<int> src = mask_elems(m);
  std::vector<int> dst = mask_elems(apply_perm_mask(p, m));
  Perm out(src.size());
  for (size_t i = 0; i < src.size(); ++i) {
    int image = p[static_cast<size_t>(src[i])];
    out[i] = static_cast<int>(
        std::lower_bound(dst.begin(), dst.end(), image) - dst.begin());
  }
  return out;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Permutation matrix of the position action of p on tuples {0..g-1}^k,
// tuple index little-endian in positions.
Matrix tuple_perm_matrix(const Perm& p, int g) {
  int k = static_cast<int>(p.size());
  long dim = ipow(g, k);
  Matrix out(static_cast<int>(dim), static_cast<int>(dim));
  std::vector<int> digits(static_cast<size_t>(k));
  for (long t = 0; t < dim; ++t) {
    long rest = t;
    for (int j = 0; j < k; ++j) {
      digits[static_cast<size_t>(j)] = static_cast<int>(rest % g);
      rest /= g;
    }
    long target = 0;
    for (int j = 0; j < k; ++j)
      target += digits[static_cast<size_t>(j)] *
                ipow(g, p[static_cast<size_t>(j)]);
    out.at(static_cast<int>(target), static_cast<int>(t)) = Rational(1);
  }
  return out;
}

struct SummandLayout {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;  // (U, V) covers, ordered
  std::vector<int> offset;
  std::vector<int> rank;
  int total = 0;
  std::map<std::pair<uint32_t, uint32_t>, int> index;
};

SummandLayout cover_layout(int n, const LinearSpecies& M, const LinearSpecies& N,
                           int g) {
  SummandLayout lay;
  uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  for (uint32_t u = 0; u <= full; ++u) {
    uint32_t rest = full & ~u;
    // V must contain rest; V = rest | S for S subset of u.
    uint32_t s = 0;
    while (true) {
      uint32_t v = rest | s;
      lay.pairs.emplace_back(u, v);
      if (s == u) break;
      s = (s - u) & u;  // next subset of u
    }
    if (u == full) break;
  }
  std::sort(lay.pairs.begin(), lay.pairs.end());
  for (size_t i = 0; i < lay.pairs.size(); ++i) {
    auto [u, v] = lay.pairs[i];
    int r = M.rank(popcount(u)) * N.rank(popcount(v)) *
            static_cast<int>(ipow(g, popcount(u & v)));
    lay.index[lay.pairs[i]] = static_cast<int>(i);
    lay.offset.push_back(lay.total);
    lay.rank.push_back(r);
    lay.total += r;
  }
  return lay;
}

}  // namespace

LinearSpecies weighted_tensor(const LinearSpecies& M, const LinearSpecies& N,
                              int g) {
  if (M.bound() != N.bound())
    throw std::invalid_argument("weighted_tensor: bound mismatch");
  if (g < 0) throw std::invalid_argument("weighted_tensor: negative weight rank");
  int bound = M.bound();
  std::vector<int> ranks;
  std::vector<std::vector<Matrix>> gens;
  for (int n = 0; n <= bound; ++n) {
    SummandLayout lay = cover_layout(n, M, N, g);
    ranks.push_back(lay.total);
    std::vector<Matrix> level_gens;
    for (int i = 0; i + 1 < n; ++i) {
      Perm s = identity_perm(n);
      std::swap(s[static_cast<size_t>(i)], s[static_cast<size_t>(i + 1)]);
      Matrix mat = Matrix::zero(lay.total, lay.total);
      for (size_t si = 0; si < lay.pairs.size(); ++si) {
        if (lay.rank[si] == 0) continue;
        auto [u, v] = lay.pairs[si];
        auto target = std::make_pair(apply_perm_mask(s, u),
                                     apply_perm_mask(s, v));
        int ti = lay.index.at(target);
        Matrix block = tuple_perm_matrix(induced_perm(s, u & v), g)
                           .kronecker(M.action(popcount(u), induced_perm(s, u)))
                           .kronecker(N.action(popcount(v), induced_perm(s, v)));
        for (int r = 0; r < block.rows(); ++r)
          for (int c = 0; c < block.cols(); ++c)
            if (!block.at(r, c).is_zero())
              mat.at(lay.offset[static_cast<size_t>(ti)] + r,
                     lay.offset[si] + c) = block.at(r, c);
      }
      level_gens.push_back(std::move(mat));
    }
    gens.push_back(std::move(level_gens));
  }
  return LinearSpecies(std::move(ranks), std::move(gens));
}

LinearSpecies pointwise_tensor(const LinearSpecies& M, const LinearSpecies& N) {
  if (M.bound() != N.bound())
    throw std::invalid_argument("pointwise_tensor: bound mismatch");
  std::vector<int> ranks;
  std::vector<std::vector<Matrix>> gens;
  for (int n = 0; n <= M.bound(); ++n) {
    ranks.push_back(M.rank(n) * N.rank(n));
    std::vector<Matrix> level;
    for (int i = 0; i + 1 < n; ++i)
      level.push_back(M.gen(n, i).kronecker(N.gen(n, i)));
    gens.push_back(std::move(level));
  }
  return LinearSpecies(std::move(ranks), std::move(gens));
}

LinearSpecies subset_transform(const LinearSpecies& M, int g) {
  if (g < 0) throw std::invalid_argument("subset_transform: negative weight rank");
  int bound = M.bound();
  std::vector<int> ranks;
  std::vector<std::vector<Matrix>> gens;
  for (int n = 0; n <= bound; ++n) {
    uint32_t full = (1u << n) - 1u;
    std::vector<uint32_t> subsets;
    for (uint32_t w = 0;; ++w) {
      subsets.push_back(w);
      if (w == full) break;
    }
    std::vector<int> offset, rank;
    int total = 0;
    for (uint32_t w : subsets) {
      int r = M.rank(popcount(w)) * static_cast<int>(ipow(g, popcount(w)));
      offset.push_back(total);
      rank.push_back(r);
      total += r;
    }
    ranks.push_back(total);
    std::vector<Matrix> level;
    for (int i = 0; i + 1 < n; ++i) {
      Perm s = identity_perm(n);
      std::swap(s[static_cast<size_t>(i)], s[static_cast<size_t>(i + 1)]);
      Matrix mat = Matrix::zero(total, total);
      for (size_t wi = 0; wi < subsets.size(); ++wi) {
        if (rank[wi] == 0) continue;
        uint32_t w = subsets[wi];
        uint32_t tw = apply_perm_mask(s, w);
        Perm pi = induced_perm(s, w);
        Matrix block =
            tuple_perm_matrix(pi, g).kronecker(M.action(popcount(w), pi));
        size_t ti = static_cast<size_t>(
            std::lower_bound(subsets.begin(), subsets.end(), tw) -
            subsets.begin());
        for (int r = 0; r < block.rows(); ++r)
          for (int c = 0; c < block.cols(); ++c)
            if (!block.at(r, c).is_zero())
              mat.at(offset[ti] + r, offset[wi] + c) = block.at(r, c);
      }
      level.push_back(std::move(mat));
    }
    gens.push_back(std::move(level));
  }
  return LinearSpecies(std::move(ranks), std::move(gens));
}

PairTransform pair_transform(int rank0, int rank1, int g) {
  PairTransform out;
  out.in0 = rank0;
  out.in1 = rank1;
  out.g = g;
  out.out0 = rank0;
  out.out1 = rank0 + g * rank1;
  out.second_component = {"M0", "L*M1"};
  return out;
}

std::vector<Rational> weighted_tensor_ranks_enum(const std::vector<Rational>& m,
                                                 const std::vector<Rational>& n,
                                                 int g) {
  size_t bound = std::min(m.size(), n.size());
  std::vector<Rational> out(bound);
  for (size_t deg = 0; deg < bound; ++deg) {
    uint32_t full = (1u << deg) - 1u;
    Rational acc(0);
    for (uint32_t u = 0;; ++u) {
      for (uint32_t v = 0;; ++v) {
        if ((u | v) == full)
          acc += Rational(ipow(g, popcount(u & v))) *
                 m[static_cast<size_t>(popcount(u))] *
                 n[static_cast<size_t>(popcount(v))];
        if (v == full) break;
      }
      if (u == full) break;
    }
    out[deg] = acc;
  }
  return out;
}

std::vector<Rational> sequence_tensor_ranks(const std::vector<Rational>& a,
                                            const std::vector<Rational>& b,
                                            const Rational& g, bool as_printed) {
  size_t bound = std::min(a.size(), b.size());
  std::vector<Rational> out(bound);
  for (size_t n = 0; n < bound; ++n) {
    Rational acc(0);
    for_each_composition3(static_cast<int>(n), [&](int r, int s, int t) {
      if (as_printed) {
        // Alternative convention: weight on the unshared index, no
        // multiplicities, factors at the split degrees.
        acc += g.pow(static_cast<unsigned>(r)) * a[static_cast<size_t>(s)] *
               b[static_cast<size_t>(t)];
      } else {
        acc += multinomial(static_cast<long>(n), {r, s, t}) *
               g.pow(static_cast<unsigned>(t)) * a[static_cast<size_t>(r + t)] *
               b[static_cast<size_t>(s + t)];
      }
    });
    out[n] = acc;
  }
  return out;
}

FinCoalgebra subset_coalgebra(int n, const Rational& weight) {
  if (n < 0 || n > 10) throw std::invalid_argument("subset_coalgebra: bad size");
  uint32_t count = 1u << n;
  std::vector<std::string> labels;
  std::vector<Rational> counit;
  std::vector<SparseTensor> comult(count);
  for (uint32_t x = 0; x < count; ++x) {
    std::string label = "{";
    for (int e : mask_elems(x)) {
      if (label.size() > 1) label += ",";
      label += std::to_string(e + 1);
    }
    label += "}";
    labels.push_back(label);
    counit.push_back(Rational(x == 0 ? 1 : 0));
    // ordered covers of x: U subset of x, V = (x \ U) | S for S subset of U
    for (uint32_t u = x;; u = (u - 1) & x) {
      uint32_t rest = x & ~u;
      for (uint32_t s = u;; s = (s - 1) & u) {
        uint32_t v = rest | s;
        Rational c = weight.pow(static_cast<unsigned>(popcount(u & v)));
        if (!c.is_zero()) {
          auto [it, fresh] =
              comult[x].try_emplace({static_cast<int>(u), static_cast<int>(v)},
                                    c);
          if (!fresh) it->second += c;
        }
        if (s == 0) break;
      }
      if (u == 0) break;
    }
  }
  return FinCoalgebra("subsets(" + std::to_string(n) + "," + weight.str() + ")",
                      std::move(labels), std::move(counit), std::move(comult),
                      0);
}

Rational weighted_tensor_character_bookkeeping(const LinearSpecies& M,
                                               const LinearSpecies& N, int g,
                                               int n, const Perm& p) {
  uint32_t full = (1u << n) - 1u;
  Rational total(0);
  for (uint32_t u = 0;; ++u) {
    for (uint32_t v = 0;; ++v) {
      if ((u | v) == full && apply_perm_mask(p, u) == u &&
          apply_perm_mask(p, v) == v) {
        Perm pu = induced_perm(p, u), pv = induced_perm(p, v),
             pi = induced_perm(p, u & v);
        Rational lam =
            Rational(ipow(static_cast<long>(g), perm_cycle_count(pi)));
        total += lam * M.character(popcount(u), pu) *
                 N.character(popcount(v), pv);
      }
      if (v == full) break;
    }
    if (u == full) break;
  }
  return total;
}

}  // namespace hzk
