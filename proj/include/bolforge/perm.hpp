#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bolforge {

/// Permutation on {0..degree-1} as an image array, acting on points from
/// the right: i^p = p[i]. compose(p, q) applies p first, then q. The total
/// order used throughout the project is lexicographic on the image array.
class Perm {
public:
  Perm() = default;
  explicit Perm(int degree); // identity
  static Perm from_images(std::vector<std::uint16_t> images);
  /// Cycles over 0-based points; unlisted points are fixed.
  static Perm from_cycles(int degree,
                          const std::vector<std::vector<int>> &cycles);

  int degree() const { return static_cast<int>(img_.size()); }
  std::uint16_t operator[](int i) const { return img_[i]; }
  const std::uint16_t *data() const { return img_.data(); }

  Perm compose(const Perm &then) const; // this first, then the argument
  Perm inverse() const;
  bool is_identity() const;

  bool operator==(const Perm &o) const { return img_ == o.img_; }
  bool operator!=(const Perm &o) const { return img_ != o.img_; }
  bool operator<(const Perm &o) const { return img_ < o.img_; }

  std::string cycle_string() const;

private:
  std::vector<std::uint16_t> img_;
};

/// q^-1 p q (conjugation matching the exponent convention x^g).
Perm conjugate(const Perm &p, const Perm &q);
/// [p, q] = p^-1 q^-1 p q.
Perm commutator(const Perm &p, const Perm &q);
/// Least n >= 1 with p^n = identity.
int perm_order(const Perm &p);
/// Sign: +1 even, -1 odd.
int perm_sign(const Perm &p);

struct PermHash {
  std::size_t operator()(const Perm &p) const;
};

/// Fully enumerated finite permutation group. `elements` is sorted by the
/// total order (so elements[0] is the identity) and `index` inverts it.
class GroupEnum {
public:
  static constexpr std::size_t kDefaultBudget = std::size_t{1} << 24;

  /// Breadth-first closure of the generators. Throws if the order would
  /// exceed the budget.
  static GroupEnum generate(std::vector<Perm> gens,
                            std::size_t budget = kDefaultBudget);
  /// Non-throwing variant used by subgroup searches.
  static std::optional<GroupEnum> try_generate(std::vector<Perm> gens,
                                               std::size_t budget);
  /// Wrap an explicit element list (used for scanned subgroups).
  static GroupEnum from_elements(std::vector<Perm> elements);

  int degree() const { return degree_; }
  std::uint64_t order() const { return elements_.size(); }
  const std::vector<Perm> &gens() const { return gens_; }
  const std::vector<Perm> &elements() const { return elements_; }
  const Perm &at(std::uint32_t i) const { return elements_[i]; }

  std::uint32_t idx(const Perm &p) const; // throws if absent
  std::optional<std::uint32_t> find(const Perm &p) const;
  bool contains(const Perm &p) const { return find(p).has_value(); }

  std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_idx(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t conj_idx(std::uint32_t x, std::uint32_t by) const;

private:
  void build_index();

  int degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elements_;
  std::vector<std::uint32_t> inv_;
  // Open-addressed hash index over elements_ (FNV over image bytes).
  std::vector<std::uint32_t> slots_;
  std::uint64_t slot_mask_ = 0;
};

/// Conjugacy class of g in G, as a sorted list of element indices.
std::vector<std::uint32_t> conj_class(const GroupEnum &G, const Perm &g);

GroupEnum centralizer(const GroupEnum &G, const Perm &g);
GroupEnum normalizer(const GroupEnum &G, const GroupEnum &H);
GroupEnum core(const GroupEnum &G, const GroupEnum &H);
/// Derived subgroup: normal closure of generator commutators iterated to a
/// fixpoint inside G.
GroupEnum derived_subgroup(const GroupEnum &G);

/// Largest normal 2-subgroup is trivial: no 2-element has a 2-group normal
/// closure. Used to certify quotients isomorphic to S5.
bool has_trivial_o2(const GroupEnum &G);

struct CosetAction {
  int degree = 0;                       // index |G:H|
  std::vector<Perm> gen_images;         // images of G's generators
  std::vector<std::uint32_t> labels;    // per element of G: its coset label
};

/// Right-coset action of G on H. Coset H gets label 0; the remaining cosets
/// are ordered by their minimal element under the total order.
CosetAction coset_action(const GroupEnum &G, const GroupEnum &H);

/// Orbit of a point under the generators, in BFS discovery order.
std::vector<int> orbit_of(const std::vector<Perm> &gens, int point);

/// Block of the finest block system in which a and b share a block
/// (classical union-find merge algorithm). The generated group must be
/// transitive. Returns the sorted block containing a.
std::vector<int> minimal_block(const std::vector<Perm> &gens, int a, int b);

/// Exact group order via a deterministic Schreier-Sims stabilizer chain.
/// Base points are chosen in natural order (smallest moved point first).
/// Throws if the order overflows 64 bits.
std::uint64_t ss_order(const std::vector<Perm> &gens);

/// Basic orbit sizes of the completed stabilizer chain (the group order is
/// their product, possibly too large for 64 bits).
std::vector<std::uint64_t> ss_orbit_sizes(const std::vector<Perm> &gens);

} // namespace bolforge
