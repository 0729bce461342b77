#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bolforge/certificate.hpp"
#include "bolforge/perm.hpp"

namespace bolforge {

/// Multiplication oracle over an element universe. Handles are dense codes
/// in [0, order): a GroupEnum uses element indices, a semidirect-product
/// group uses (base index << module dim) | vector.
class MulOracle {
public:
  virtual ~MulOracle() = default;
  virtual std::uint64_t order() const = 0;
  virtual std::uint64_t mul(std::uint64_t a, std::uint64_t b) const = 0;
  virtual std::uint64_t inv(std::uint64_t a) const = 0;
  std::uint64_t unit() const { return 0; } // identity always codes to 0
  std::uint64_t conj(std::uint64_t x, std::uint64_t by) const {
    return mul(mul(inv(by), x), by);
  }
};

/// Oracle over a fully enumerated permutation group.
class EnumOracle : public MulOracle {
public:
  explicit EnumOracle(const GroupEnum &G) : G_(&G) {}
  std::uint64_t order() const override { return G_->order(); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    return G_->mul_idx(static_cast<std::uint32_t>(a),
                       static_cast<std::uint32_t>(b));
  }
  std::uint64_t inv(std::uint64_t a) const override {
    return G_->inv_idx(static_cast<std::uint32_t>(a));
  }

private:
  const GroupEnum *G_;
};

/// Oracle over an elementary abelian 2-group F_2^dim (handles are packed
/// vectors; the product is XOR).
class XorOracle : public MulOracle {
public:
  explicit XorOracle(int dim) : dim_(dim) {}
  std::uint64_t order() const override { return std::uint64_t{1} << dim_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    return a ^ b;
  }
  std::uint64_t inv(std::uint64_t a) const override { return a; }

private:
  int dim_;
};

/// Loop folder (group, subgroup, transversal K) with K[0] = 1 and
/// K \ {1} consisting of involutions closed under conjugation.
struct Folder {
  const MulOracle *mul = nullptr;
  std::vector<std::uint64_t> hset;                // enumerated subgroup H
  std::function<bool(std::uint64_t)> in_h;        // membership in H
  std::vector<std::uint64_t> k;                   // canonical order, k[0] = 1
  std::vector<std::uint64_t> ambient_gens;        // for conjugation checks
};

/// Checks: unit membership, involution condition, conjugation invariance,
/// |K| = |G:H|, and the pairwise condition x*y not in H for distinct
/// x, y in K. Because K is conjugation-invariant, transversality for H
/// implies transversality for every conjugate H^g (see README).
Certificate verify_folder(const Folder &f);

/// Materialized multiplication table. Element 0 is the unit.
struct LoopTable {
  std::uint32_t n = 0;
  std::vector<std::uint16_t> cells; // n*n, row-major

  std::uint16_t at(std::uint32_t i, std::uint32_t j) const {
    return cells[i * n + j];
  }
  Perm row_map(std::uint32_t a) const;    // x -> a o x (left translation)
  Perm column_map(std::uint32_t a) const; // x -> x o a (right translation)
};

/// H(x o y) = H x y: table[i][j] is the unique z in K with Hz = H K[i] K[j],
/// realized by labeling every coset H z with the K-index z and doing one
/// lookup per pair. Requires a verified folder.
LoopTable build_loop(const Folder &f);

/// Latin square rows/columns, unit law, exponent 2.
Certificate table_checks(const LoopTable &t);

struct BolMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
};

/// The right Bol identity ((xy)z)y = x(y(zy)) over all n^3 triples or over
/// seeded pseudorandom samples. Also asserts the z = 1 specialization
/// (xy)y = x separately. Violations report the minimal witness triple, so
/// parallel runs return identical results.
Certificate check_bol(const LoopTable &t, const BolMode &mode,
                      int workers = 1);

/// Normal closure of x in the loop: the minimal block of Mlt(Q) containing
/// {unit, x}, computed over the 2n translation generators.
std::vector<int> normal_closure_block(const LoopTable &t, int x);

struct SimplicityReport {
  bool simple = false;
  int witness = -1;      // smallest x with a proper block
  std::size_t block_size = 0;
};

/// True iff every x != 0 has full normal closure.
SimplicityReport is_simple(const LoopTable &t, int workers = 1);

struct QuotientResult {
  bool well_defined = false;
  std::pair<int, int> witness{-1, -1}; // violating pair when ill-defined
  LoopTable table;                     // quotient table when well-defined
};

/// Attempt to induce a quotient table through fiber_map (surjective with
/// equal fiber sizes). well_defined means the induced product is
/// independent of fiber representatives.
QuotientResult quotient_induce(const LoopTable &t,
                               const std::vector<std::uint16_t> &fiber_map);

enum class MultKind { Right, Full };

/// Order of the right (column maps) or full (rows and columns)
/// multiplication group, via the Schreier-Sims chain. Throws if the order
/// does not fit 64 bits (the full multiplication group can be enormous);
/// use mult_group_orbit_sizes for divisibility arguments in that case.
std::uint64_t mult_group_order(const LoopTable &t, MultKind kind);

/// Basic orbit sizes of the stabilizer chain; the group order is their
/// product.
std::vector<std::uint64_t> mult_group_orbit_sizes(const LoopTable &t,
                                                  MultKind kind);

} // namespace bolforge
