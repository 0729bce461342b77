#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bolforge {

/// Bit-packed vector over GF(2). Addition is XOR; every element is its own
/// inverse. Coordinates are indexed from 0; the lexicographic order compares
/// coordinate 0 first.
class F2Vec {
public:
  F2Vec() = default;
  explicit F2Vec(int dim);
  static F2Vec from_bits(int dim, std::uint64_t bits);

  int dim() const { return dim_; }
  bool get(int i) const;
  void set(int i, bool value);

  F2Vec &operator^=(const F2Vec &other);
  friend F2Vec operator^(F2Vec a, const F2Vec &b) {
    a ^= b;
    return a;
  }

  bool is_zero() const;
  int popcount() const;
  int lowest_set() const; // -1 if zero
  std::uint64_t low_bits() const; // dim <= 64 only

  bool operator==(const F2Vec &other) const;
  bool operator!=(const F2Vec &other) const { return !(*this == other); }
  /// Lexicographic on coordinates, coordinate 0 most significant.
  bool lex_less(const F2Vec &other) const;

  std::string to_string() const;

private:
  int dim_ = 0;
  std::vector<std::uint64_t> w_;
};

/// GF(2) matrix, row-vector convention: apply(v) = v * M, i.e. XOR of the
/// rows selected by the set bits of v.
class F2Mat {
public:
  F2Mat() = default;
  F2Mat(int nrows, int ncols);
  static F2Mat identity(int n);
  static F2Mat from_rows(std::vector<F2Vec> rows);

  int nrows() const { return nrows_; }
  int ncols() const { return ncols_; }
  const F2Vec &row(int i) const { return rows_[i]; }
  F2Vec &row(int i) { return rows_[i]; }
  bool get(int i, int j) const { return rows_[i].get(j); }
  void set(int i, int j, bool v) { rows_[i].set(j, v); }

  F2Vec apply(const F2Vec &v) const;
  F2Mat mul(const F2Mat &other) const;
  F2Mat add(const F2Mat &other) const;
  F2Mat pow(std::uint64_t e) const; // square only
  F2Mat plus_identity() const;
  F2Mat transpose() const;

  int rank() const;
  bool invertible() const { return nrows_ == ncols_ && rank() == nrows_; }
  bool is_identity() const;
  int order(int cap = 1 << 16) const; // multiplicative order of a square matrix

  bool operator==(const F2Mat &other) const;
  bool operator!=(const F2Mat &other) const { return !(*this == other); }
  std::string to_string() const;

private:
  int nrows_ = 0, ncols_ = 0;
  std::vector<F2Vec> rows_;
};

/// Subspace with a canonical reduced-row-echelon basis (rows sorted by
/// pivot). Equal subspaces have identical bases, so equality is basis
/// equality.
class Subspace {
public:
  explicit Subspace(int ambient_dim = 0) : ambient_(ambient_dim) {}
  static Subspace span(int ambient_dim, const std::vector<F2Vec> &vectors);

  int ambient_dim() const { return ambient_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<F2Vec> &basis() const { return basis_; }
  const std::vector<int> &pivots() const { return pivots_; }

  /// Reduce v against the basis; returns the residual.
  F2Vec reduce(F2Vec v) const;
  bool contains(const F2Vec &v) const { return reduce(v).is_zero(); }
  bool contains_subspace(const Subspace &other) const;

  /// Insert v, keeping the basis reduced. Returns true if the rank grew.
  bool insert(const F2Vec &v);

  /// Coordinates of v in the echelon basis (requires contains(v)).
  F2Vec coords_of(const F2Vec &v) const;

  Subspace sum(const Subspace &other) const;
  Subspace intersect(const Subspace &other) const;

  /// All 2^rank vectors, sorted lexicographically.
  std::vector<F2Vec> enumerate() const;

  bool operator==(const Subspace &other) const;
  bool operator!=(const Subspace &other) const { return !(*this == other); }
  /// Canonical order: by (rank, lexicographic concatenated basis).
  bool canonical_less(const Subspace &other) const;

  std::string to_string() const;

private:
  int ambient_ = 0;
  std::vector<F2Vec> basis_;
  std::vector<int> pivots_;
};

struct LinSolveResult {
  bool consistent = false;
  F2Vec particular;           // one solution of x * A = b
  std::vector<F2Vec> kernel;  // canonical basis of { x : x * A = 0 }
};

/// Solve x * A = b over GF(2) (row-vector convention). An inconsistent
/// system is reported with consistent = false, not an error.
LinSolveResult linsolve(const F2Mat &A, const F2Vec &b);

/// Canonical basis of the left kernel { x : x * A = 0 }.
std::vector<F2Vec> kernel(const F2Mat &A);

/// Smallest subspace containing the seeds and invariant under every
/// generator matrix.
Subspace spin(int dim, const std::vector<F2Vec> &seeds,
              const std::vector<F2Mat> &gens);

/// Which abstract group a generator tuple presents. Relations are checked
/// when the action is constructed:
///   S5Pair  (c, d):  c^2 = d^4 = (cd)^5 = [c,d]^3 = 1
///   A5Pair  (a, b):  a^2 = b^3 = (ab)^5 = 1
///   F20Pair (t, s):  t^4 = s^5 = 1, s^t in { s^2, s^3 }
///   C5Single (s):    s^5 = 1, s != 1
enum class GroupTag { S5Pair, A5Pair, F20Pair, C5Single };

struct ModuleAction {
  int dim = 0;
  GroupTag tag = GroupTag::S5Pair;
  std::vector<F2Mat> gens;

  static ModuleAction make(GroupTag tag, std::vector<F2Mat> gens);
};

/// All proper nonzero invariant subspaces of the action, canonically
/// ordered by (dimension, lexicographic basis).
///
/// Strategy: when the acting group contains an element of order 5, every
/// proper nonzero invariant subspace restricts to a proper nonzero
/// C5-submodule, and all of those are cyclic; so the cyclic C5-submodules
/// (finitely many, one spin per vector) form a complete candidate list to
/// filter by invariance. Without an order-5 element the scan falls back to
/// a full subspace enumeration, only feasible for dim <= 5.
std::vector<Subspace> submodule_scan(const ModuleAction &act,
                                     const std::optional<F2Mat> &c5 = {});

/// Basis of the space of intertwiners X with rho_a(g) X = X rho_b(g) for
/// every generator g (X maps a -> b, acting on the right of row vectors).
std::vector<F2Mat> hom_space(const ModuleAction &a, const ModuleAction &b);

struct ModuleDiagnostics {
  bool irreducible = false;
  int endo_dim = 0;
  std::optional<bool> free_over_c4;
};

/// irreducible: every nonzero vector spins to the full space (dim <= 8).
/// endo_dim: dim hom_space(act, act).
/// free_over_c4: exists v with {v, vg, vg^2, vg^3} independent for the
/// designated order-4 matrix g.
ModuleDiagnostics module_diagnostics(const ModuleAction &act,
                                     const std::optional<F2Mat> &order4 = {});

/// Quadratic form on the sum-zero model of the 4-dimensional orthogonal
/// space of Witt index 1: coordinates are the first four entries of a
/// sum-zero vector in F_2^5, and Q(v) = 1 exactly when the embedded weight
/// is 2. The polar form b(u,v) = Q(u+v)+Q(u)+Q(v) is the dot product.
int n_quad(const F2Vec &v4);
int n_bilinear(const F2Vec &u4, const F2Vec &v4);
/// Form on the 8-dimensional doubled space: sum of the two copies' forms.
int u_quad(const F2Vec &v8);

/// All subspaces of F_2^dim of the given rank (dedup by canonical basis).
/// Exhaustive helper for small ambient dimensions (dim <= 5).
std::vector<Subspace> all_subspaces_of_rank(int dim, int r);

} // namespace bolforge
