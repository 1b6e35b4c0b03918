#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hzk/matrix.hpp"
#include "hzk/prng.hpp"
#include "hzk/rational.hpp"

namespace hzk::dk {

enum class Instance { fi_sharp, fo_sharp, cube, simplicial };

Instance instance_by_name(const std::string& name);
std::string instance_name(Instance kind);

// Morphism of a base category, encoded per instance so that equality is
// structural:
//  - fi_sharp / fo_sharp: data[i] = image of element i, or -1 if undefined;
//  - cube: data[i] = -2 outside the carrier, -1 in the carrier but
//    undefined, otherwise the image (spans of a subset and a partial
//    monotone injection on it);
//  - simplicial: data = the underlying monotone map of the opposite
//    morphism, indexed over the elements of the codomain object.
struct Mor {
  int src = 0, dst = 0;
  std::vector<int> data;
  auto operator<=>(const Mor&) const = default;
  std::string label() const;
};

struct Factorization {
  int sub_src = 0;  // index into sub(src) for the backwards leg
  int sub_dst = 0;  // index into sub(dst) for the forwards mono
  Mor middle;       // the middle-class part
};

// One-time enumeration of a base category with the factorization data the
// equivalence engine needs: all morphisms, the split subcategory of monos
// with its section, subobject representatives, the middle class, and the
// unique factorization of every morphism. Queries after construction are
// pure and safe for concurrent readers.
class DoldKanDatum {
 public:
  static DoldKanDatum make(Instance kind, int bound, uint64_t shuffle_seed = 0);

  Instance kind() const { return kind_; }
  int bound() const { return bound_; }
  int objects() const { return bound_ + 1; }
  int elements(int obj) const;

  const std::vector<Mor>& hom(int a, int b) const;
  Mor identity(int a) const;
  Mor compose(const Mor& g, const Mor& f) const;  // g after f

  bool is_mono_part(const Mor& m) const;  // membership in the split monos
  Mor section(const Mor& m) const;        // m* with m* o m = id
  bool is_middle(const Mor& r) const;     // membership in the middle class

  // Chosen representatives of the subobjects of a; canonical order unless a
  // shuffle seed permuted them.
  const std::vector<Mor>& sub(int a) const { return subs_[a]; }
  int full_sub_index(int a) const { return full_sub_[a]; }

  const Factorization& factor(const Mor& f) const;

  // Exhaustive count of (sub, middle, sub) factorizations of f; the
  // uniqueness assumption says this is 1 for every enumerated morphism.
  int count_factorizations(const Mor& f) const;

  // All middle-class morphisms out of / between enumerated objects.
  std::vector<Mor> middle_maps() const;

 private:
  Instance kind_;
  int bound_ = 0;
  std::vector<std::vector<std::vector<Mor>>> homs_;  // [a][b]
  std::vector<std::vector<Mor>> subs_;
  std::vector<int> full_sub_;
  std::map<Mor, bool> iso_;
  std::map<Mor, bool> middle_;
  std::map<Mor, Factorization> fact_;

  bool is_iso(const Mor& f) const { return iso_.at(f); }
  std::optional<Factorization> cheap_factor(const Mor& f) const;
  void build_isos();
  void build_subs(uint64_t shuffle_seed);
  void build_middle();
  void build_factorizations();
};

// Zero-map-preserving presheaf on the normalized side: a rank per object
// and a matrix per middle-class morphism; undefined composites act as zero.
class Presheaf {
 public:
  Presheaf(const DoldKanDatum& datum, std::vector<int> ranks,
           std::map<Mor, Matrix> action);

  const DoldKanDatum& datum() const { return *datum_; }
  int rank(int a) const { return ranks_[a]; }
  const std::vector<int>& ranks() const { return ranks_; }
  const Matrix& act(const Mor& r) const;

  // Functoriality on all composable middle-class pairs, with composites
  // that leave the class acting as zero.
  void validate() const;

 private:
  const DoldKanDatum* datum_;
  std::vector<int> ranks_;
  std::map<Mor, Matrix> action_;
};

Presheaf trivial_presheaf(const DoldKanDatum& datum, std::vector<int> ranks);
Presheaf random_presheaf(const DoldKanDatum& datum, Prng& rng, int max_rank = 2);

// Presheaf on the base category itself (covariant, all morphisms).
class BasePresheaf {
 public:
  virtual ~BasePresheaf() = default;
  virtual const DoldKanDatum& datum() const = 0;
  virtual int rank(int a) const = 0;
  virtual Matrix act(const Mor& f) const = 0;
};

// Support of a morphism on subobject summands: for each subobject of the
// source, the unique target subobject and middle map through which the
// composite factors, when the backwards leg of its factorization is
// trivial; empty otherwise.
struct SupportEntry {
  int target = 0;
  Mor middle;
};
std::vector<std::optional<SupportEntry>> expansion_support(
    const DoldKanDatum& datum, const Mor& f);

// Subobject-indexed direct-sum expansion of a normalized-side presheaf,
// with morphism matrices assembled blockwise from the support.
class ExpandedPresheaf : public BasePresheaf {
 public:
  explicit ExpandedPresheaf(const Presheaf& f);
  const DoldKanDatum& datum() const override { return f_->datum(); }
  int rank(int a) const override { return ranks_[a]; }
  Matrix act(const Mor& f) const override;
  int block_offset(int a, int sub_index) const { return offsets_[a][sub_index]; }
  std::vector<std::pair<std::string, int>> summands(int a) const;

 private:
  const Presheaf* f_;
  std::vector<int> ranks_;
  std::vector<std::vector<int>> offsets_;
};

// Pointwise tensor of two expansions: Kronecker blocks per object.
class ExpandedTensor : public BasePresheaf {
 public:
  ExpandedTensor(const ExpandedPresheaf& f, const ExpandedPresheaf& g);
  const DoldKanDatum& datum() const override { return f_->datum(); }
  int rank(int a) const override { return f_->rank(a) * g_->rank(a); }
  Matrix act(const Mor& f) const override;
  const ExpandedPresheaf& left() const { return *f_; }
  const ExpandedPresheaf& right() const { return *g_; }

 private:
  const ExpandedPresheaf* f_;
  const ExpandedPresheaf* g_;
};

// Constant rank-1 presheaf: the pointwise tensor unit on the base side.
class ConstantUnit : public BasePresheaf {
 public:
  explicit ConstantUnit(const DoldKanDatum& datum) : datum_(&datum) {}
  const DoldKanDatum& datum() const override { return *datum_; }
  int rank(int) const override { return 1; }
  Matrix act(const Mor&) const override { return Matrix::identity(1); }

 private:
  const DoldKanDatum* datum_;
};

// Idempotent of the normalization at one object: the product of
// (1 - H(m m*)) over the proper subobjects.
Matrix normalization_idempotent(const BasePresheaf& h, int a);

// Normalization: split the idempotent per object; morphisms transport
// through the splitting with the factorization property asserted.
class Normalized {
 public:
  explicit Normalized(const BasePresheaf& h);
  int rank(int a) const { return ranks_[a]; }
  const Matrix& proj(int a) const { return proj_[a]; }
  const Matrix& incl(int a) const { return incl_[a]; }
  Matrix act(const BasePresheaf& h, const Mor& r) const;

 private:
  std::vector<int> ranks_;
  std::vector<Matrix> proj_, incl_;
};

std::vector<std::pair<int, int>> covering_pairs(const DoldKanDatum& datum, int a);

// Pair indexing of the transported-tensor summands: the covering pairs for
// the partial-map instances, the jointly injective collapse pairs for the
// simplicial one (where the absorption idempotents mix summands and the
// literal covering test undercounts the split summand).
std::vector<std::pair<int, int>> tensor_pairs(const DoldKanDatum& datum, int a);

// Transported tensor of two normalized-side presheaves: the engine route
// normalizes the pointwise tensor of the expansions; the closed form sums
// blocks over the tensor pairs. Carries the comparison of both routes.
struct TransportedTensor {
  std::vector<int> engine_ranks;
  std::vector<int> closed_ranks;
  bool ranks_match = false;
  // The split summand projects isomorphically onto the pair-indexed
  // coordinates (the intertwiner candidate is invertible at every object).
  bool summand_projection_iso = false;
  // Whether a blockwise closed action exists for this instance; the
  // simplicial transported differential is a retract correction, not a
  // blockwise matrix, so no closed action is compared there.
  bool has_closed_action = false;
  // Closed blockwise action conjugates to the engine transport through the
  // intertwiner (meaningful when has_closed_action).
  bool action_match = false;
};
TransportedTensor transported_tensor(const DoldKanDatum& datum, const Presheaf& f,
                                     const Presheaf& g);

// Ranks of the normalization of the constant unit presheaf.
std::vector<int> transported_unit_ranks(const DoldKanDatum& datum);

// Monotone surjections from the (n+1)-element ordinal, as value vectors.
std::vector<std::vector<int>> monotone_surjections(int n);

// Summands of the chain-complex-style tensor at degree n: pairs of
// monotone surjections that are jointly injective.
struct ChainSummand {
  std::vector<int> first, second;
  int left_degree = 0, right_degree = 0;
};
std::vector<ChainSummand> chain_tensor_object(int n);

// Normalize the expansion of f and compare with f through the projection
// onto the full-subobject block, naturally in every middle-class morphism.
bool roundtrip_isomorphic(const DoldKanDatum& datum, const Presheaf& f);

}  // namespace hzk::dk
