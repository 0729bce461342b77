#include "bolforge/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bolforge {

namespace {
constexpr int kWordBits = 64;

int words_for(int dim) { return (dim + kWordBits - 1) / kWordBits; }
} // namespace

F2Vec::F2Vec(int dim) : dim_(dim), w_(words_for(dim), 0) {
  if (dim < 0)
    throw std::invalid_argument("F2Vec: negative dimension");
}

F2Vec F2Vec::from_bits(int dim, std::uint64_t bits) {
  if (dim > 64)
    throw std::invalid_argument("F2Vec::from_bits: dim > 64");
  F2Vec v(dim);
  if (dim > 0)
    v.w_[0] = (dim == 64) ? bits : (bits & ((std::uint64_t{1} << dim) - 1));
  return v;
}

bool F2Vec::get(int i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1; }

void F2Vec::set(int i, bool value) {
  std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value)
    w_[i / kWordBits] |= mask;
  else
    w_[i / kWordBits] &= ~mask;
}

F2Vec &F2Vec::operator^=(const F2Vec &other) {
  if (dim_ != other.dim_)
    throw std::invalid_argument("F2Vec: dimension mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i)
    w_[i] ^= other.w_[i];
  return *this;
}

bool F2Vec::is_zero() const {
  for (auto x : w_)
    if (x)
      return false;
  return true;
}

int F2Vec::popcount() const {
  int n = 0;
  for (auto x : w_)
    n += std::popcount(x);
  return n;
}

int F2Vec::lowest_set() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i])
      return static_cast<int>(i) * kWordBits + std::countr_zero(w_[i]);
  return -1;
}

std::uint64_t F2Vec::low_bits() const { return w_.empty() ? 0 : w_[0]; }

bool F2Vec::operator==(const F2Vec &other) const {
  return dim_ == other.dim_ && w_ == other.w_;
}

bool F2Vec::lex_less(const F2Vec &other) const {
  if (dim_ != other.dim_)
    throw std::invalid_argument("F2Vec::lex_less: dimension mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) {
    std::uint64_t diff = w_[i] ^ other.w_[i];
    if (diff) {
      std::uint64_t low = diff & (~diff + 1);
      return (w_[i] & low) == 0; // 0 before 1 at the first differing coordinate
    }
  }
  return false;
}

std::string F2Vec::to_string() const {
  std::string s;
  s.reserve(dim_);
  for (int i = 0; i < dim_; ++i)
    s.push_back(get(i) ? '1' : '0');
  return s;
}

F2Mat::F2Mat(int nrows, int ncols)
    : nrows_(nrows), ncols_(ncols), rows_(nrows, F2Vec(ncols)) {}

F2Mat F2Mat::identity(int n) {
  F2Mat m(n, n);
  for (int i = 0; i < n; ++i)
    m.set(i, i, true);
  return m;
}

F2Mat F2Mat::from_rows(std::vector<F2Vec> rows) {
  F2Mat m;
  m.nrows_ = static_cast<int>(rows.size());
  m.ncols_ = rows.empty() ? 0 : rows[0].dim();
  for (const auto &r : rows)
    if (r.dim() != m.ncols_)
      throw std::invalid_argument("F2Mat::from_rows: ragged rows");
  m.rows_ = std::move(rows);
  return m;
}

F2Vec F2Mat::apply(const F2Vec &v) const {
  if (v.dim() != nrows_)
    throw std::invalid_argument("F2Mat::apply: dimension mismatch");
  F2Vec out(ncols_);
  for (int i = 0; i < nrows_; ++i)
    if (v.get(i))
      out ^= rows_[i];
  return out;
}

F2Mat F2Mat::mul(const F2Mat &other) const {
  if (ncols_ != other.nrows_)
    throw std::invalid_argument("F2Mat::mul: dimension mismatch");
  F2Mat out(nrows_, other.ncols_);
  for (int i = 0; i < nrows_; ++i)
    out.rows_[i] = other.apply(rows_[i]);
  return out;
}

F2Mat F2Mat::add(const F2Mat &other) const {
  if (nrows_ != other.nrows_ || ncols_ != other.ncols_)
    throw std::invalid_argument("F2Mat::add: dimension mismatch");
  F2Mat out = *this;
  for (int i = 0; i < nrows_; ++i)
    out.rows_[i] ^= other.rows_[i];
  return out;
}

F2Mat F2Mat::pow(std::uint64_t e) const {
  if (nrows_ != ncols_)
    throw std::invalid_argument("F2Mat::pow: not square");
  F2Mat acc = identity(nrows_);
  F2Mat base = *this;
  while (e) {
    if (e & 1)
      acc = acc.mul(base);
    base = base.mul(base);
    e >>= 1;
  }
  return acc;
}

F2Mat F2Mat::plus_identity() const {
  if (nrows_ != ncols_)
    throw std::invalid_argument("F2Mat::plus_identity: not square");
  return add(identity(nrows_));
}

F2Mat F2Mat::transpose() const {
  F2Mat out(ncols_, nrows_);
  for (int i = 0; i < nrows_; ++i)
    for (int j = 0; j < ncols_; ++j)
      if (get(i, j))
        out.set(j, i, true);
  return out;
}

int F2Mat::rank() const {
  Subspace s = Subspace::span(ncols_, rows_);
  return s.rank();
}

bool F2Mat::is_identity() const {
  if (nrows_ != ncols_)
    return false;
  return *this == identity(nrows_);
}

int F2Mat::order(int cap) const {
  if (!invertible())
    throw std::invalid_argument("F2Mat::order: singular matrix");
  F2Mat acc = *this;
  for (int n = 1; n <= cap; ++n) {
    if (acc.is_identity())
      return n;
    acc = acc.mul(*this);
  }
  throw std::runtime_error("F2Mat::order: cap exceeded");
}

bool F2Mat::operator==(const F2Mat &other) const {
  return nrows_ == other.nrows_ && ncols_ == other.ncols_ &&
         rows_ == other.rows_;
}

std::string F2Mat::to_string() const {
  std::string s;
  for (int i = 0; i < nrows_; ++i) {
    s += rows_[i].to_string();
    s.push_back('\n');
  }
  return s;
}

Subspace Subspace::span(int ambient_dim, const std::vector<F2Vec> &vectors) {
  Subspace s(ambient_dim);
  for (const auto &v : vectors)
    s.insert(v);
  return s;
}

F2Vec Subspace::reduce(F2Vec v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i]))
      v ^= basis_[i];
  return v;
}

bool Subspace::contains_subspace(const Subspace &other) const {
  for (const auto &b : other.basis_)
    if (!contains(b))
      return false;
  return true;
}

bool Subspace::insert(const F2Vec &v) {
  if (v.dim() != ambient_)
    throw std::invalid_argument("Subspace::insert: dimension mismatch");
  F2Vec r = reduce(v);
  int p = r.lowest_set();
  if (p < 0)
    return false;
  // Back-reduce existing rows, then splice in pivot order.
  for (auto &b : basis_)
    if (b.get(p))
      b ^= r;
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  std::size_t pos = static_cast<std::size_t>(it - pivots_.begin());
  pivots_.insert(it, p);
  basis_.insert(basis_.begin() + pos, r);
  return true;
}

F2Vec Subspace::coords_of(const F2Vec &v) const {
  if (!contains(v))
    throw std::invalid_argument("Subspace::coords_of: vector not in subspace");
  F2Vec c(rank());
  for (int i = 0; i < rank(); ++i)
    c.set(i, v.get(pivots_[i]));
  return c;
}

Subspace Subspace::sum(const Subspace &other) const {
  Subspace s = *this;
  for (const auto &b : other.basis_)
    s.insert(b);
  return s;
}

Subspace Subspace::intersect(const Subspace &other) const {
  // Zassenhaus: row-reduce [B|B; C|0]; rows with zero left half give the
  // intersection in the right half.
  int n = ambient_;
  std::vector<F2Vec> rows;
  for (const auto &b : basis_) {
    F2Vec r(2 * n);
    for (int j = 0; j < n; ++j) {
      r.set(j, b.get(j));
      r.set(n + j, b.get(j));
    }
    rows.push_back(r);
  }
  for (const auto &c : other.basis_) {
    F2Vec r(2 * n);
    for (int j = 0; j < n; ++j)
      r.set(j, c.get(j));
    rows.push_back(r);
  }
  Subspace big = Subspace::span(2 * n, rows);
  Subspace out(n);
  for (const auto &r : big.basis()) {
    bool left_zero = true;
    for (int j = 0; j < n && left_zero; ++j)
      left_zero = !r.get(j);
    if (left_zero) {
      F2Vec v(n);
      for (int j = 0; j < n; ++j)
        v.set(j, r.get(n + j));
      out.insert(v);
    }
  }
  return out;
}

std::vector<F2Vec> Subspace::enumerate() const {
  std::vector<F2Vec> out;
  out.reserve(std::size_t{1} << rank());
  std::uint64_t total = std::uint64_t{1} << rank();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    F2Vec v(ambient_);
    for (int i = 0; i < rank(); ++i)
      if ((mask >> i) & 1)
        v ^= basis_[i];
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(),
            [](const F2Vec &a, const F2Vec &b) { return a.lex_less(b); });
  return out;
}

bool Subspace::operator==(const Subspace &other) const {
  return ambient_ == other.ambient_ && basis_ == other.basis_;
}

bool Subspace::canonical_less(const Subspace &other) const {
  if (rank() != other.rank())
    return rank() < other.rank();
  for (int i = 0; i < rank(); ++i) {
    if (basis_[i] != other.basis_[i])
      return basis_[i].lex_less(other.basis_[i]);
  }
  return false;
}

std::string Subspace::to_string() const {
  std::string s = "<";
  for (int i = 0; i < rank(); ++i) {
    if (i)
      s += ", ";
    s += basis_[i].to_string();
  }
  s += ">";
  return s;
}

LinSolveResult linsolve(const F2Mat &A, const F2Vec &b) {
  if (b.dim() != A.ncols())
    throw std::invalid_argument("linsolve: dimension mismatch");
  int m = A.nrows();
  // Eliminate over rows of A, tracking the row operations in an augmented
  // coefficient part so kernel rows come out explicitly.
  std::vector<F2Vec> rows(m), coef(m);
  for (int i = 0; i < m; ++i) {
    rows[i] = A.row(i);
    coef[i] = F2Vec(m);
    coef[i].set(i, true);
  }
  std::vector<int> pivot_row_of; // per pivot: index into rows
  std::vector<int> pivot_col;
  std::vector<bool> used(m, false);
  for (int col = 0; col < A.ncols(); ++col) {
    int pr = -1;
    for (int i = 0; i < m; ++i)
      if (!used[i] && rows[i].get(col)) {
        pr = i;
        break;
      }
    if (pr < 0)
      continue;
    used[pr] = true;
    pivot_row_of.push_back(pr);
    pivot_col.push_back(col);
    for (int i = 0; i < m; ++i)
      if (i != pr && rows[i].get(col)) {
        rows[i] ^= rows[pr];
        coef[i] ^= coef[pr];
      }
  }
  LinSolveResult res;
  res.kernel = [&] {
    Subspace k(m);
    for (int i = 0; i < m; ++i)
      if (!used[i])
        k.insert(coef[i]);
    return k.basis();
  }();
  // Solve by expressing b in the reduced rows.
  F2Vec target = b;
  F2Vec x(m);
  for (std::size_t p = 0; p < pivot_row_of.size(); ++p) {
    if (target.get(pivot_col[p])) {
      target ^= rows[pivot_row_of[p]];
      x ^= coef[pivot_row_of[p]];
    }
  }
  if (target.is_zero()) {
    res.consistent = true;
    res.particular = x;
  } else {
    res.consistent = false;
    res.particular = F2Vec(m);
  }
  return res;
}

std::vector<F2Vec> kernel(const F2Mat &A) {
  return linsolve(A, F2Vec(A.ncols())).kernel;
}

Subspace spin(int dim, const std::vector<F2Vec> &seeds,
              const std::vector<F2Mat> &gens) {
  Subspace s(dim);
  std::vector<F2Vec> work;
  for (const auto &v : seeds) {
    if (v.dim() != dim)
      throw std::invalid_argument("spin: seed dimension mismatch");
    if (s.insert(v))
      work.push_back(v);
  }
  while (!work.empty()) {
    F2Vec v = work.back();
    work.pop_back();
    for (const auto &g : gens) {
      F2Vec w = g.apply(v);
      if (s.insert(w))
        work.push_back(w);
    }
  }
  // Re-span for a fully canonical reduced basis.
  return Subspace::span(dim, s.basis());
}

namespace {

void require(bool cond, const char *msg) {
  if (!cond)
    throw std::invalid_argument(msg);
}

void check_relations(GroupTag tag, const std::vector<F2Mat> &g) {
  auto comm = [](const F2Mat &a, const F2Mat &b) {
    // [a,b] = a^-1 b^-1 a b; generator orders are small, so inverses are
    // powers.
    F2Mat ai = a.pow(a.order() - 1);
    F2Mat bi = b.pow(b.order() - 1);
    return ai.mul(bi).mul(a).mul(b);
  };
  switch (tag) {
  case GroupTag::S5Pair: {
    require(g.size() == 2, "ModuleAction: S5 pair needs 2 generators");
    require(g[0].pow(2).is_identity(), "ModuleAction: c^2 != 1");
    require(g[1].pow(4).is_identity(), "ModuleAction: d^4 != 1");
    require(g[0].mul(g[1]).pow(5).is_identity(), "ModuleAction: (cd)^5 != 1");
    require(comm(g[0], g[1]).pow(3).is_identity(),
            "ModuleAction: [c,d]^3 != 1");
    break;
  }
  case GroupTag::A5Pair: {
    require(g.size() == 2, "ModuleAction: A5 pair needs 2 generators");
    require(g[0].pow(2).is_identity(), "ModuleAction: a^2 != 1");
    require(g[1].pow(3).is_identity(), "ModuleAction: b^3 != 1");
    require(g[0].mul(g[1]).pow(5).is_identity(), "ModuleAction: (ab)^5 != 1");
    break;
  }
  case GroupTag::F20Pair: {
    require(g.size() == 2, "ModuleAction: F20 pair needs 2 generators");
    const F2Mat &t = g[0], &s = g[1];
    require(t.pow(4).is_identity(), "ModuleAction: t^4 != 1");
    require(s.pow(5).is_identity(), "ModuleAction: s^5 != 1");
    F2Mat st = t.pow(3).mul(s).mul(t);
    require(st == s.pow(2) || st == s.pow(3),
            "ModuleAction: s^t not in {s^2, s^3}");
    break;
  }
  case GroupTag::C5Single: {
    require(g.size() == 1, "ModuleAction: C5 needs 1 generator");
    require(g[0].pow(5).is_identity(), "ModuleAction: s^5 != 1");
    require(!g[0].is_identity(), "ModuleAction: C5 generator trivial");
    break;
  }
  }
}

} // namespace

ModuleAction ModuleAction::make(GroupTag tag, std::vector<F2Mat> gens) {
  require(!gens.empty(), "ModuleAction: empty generator list");
  int dim = gens[0].nrows();
  for (const auto &m : gens) {
    require(m.nrows() == dim && m.ncols() == dim,
            "ModuleAction: generators not square of equal size");
    require(m.invertible(), "ModuleAction: singular generator");
  }
  check_relations(tag, gens);
  ModuleAction act;
  act.dim = dim;
  act.tag = tag;
  act.gens = std::move(gens);
  return act;
}

namespace {

/// Enumerate the matrix group generated by the action (small here: at most
/// 120 elements) and return an element of order 5, if any.
std::optional<F2Mat> find_order5(const ModuleAction &act, int cap = 4096) {
  std::vector<F2Mat> elems{F2Mat::identity(act.dim)};
  std::vector<std::string> keys{elems[0].to_string()};
  auto seen = [&](const F2Mat &m) {
    std::string k = m.to_string();
    for (const auto &s : keys)
      if (s == k)
        return true;
    return false;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto &g : act.gens) {
      F2Mat m = elems[i].mul(g);
      if (!seen(m)) {
        elems.push_back(m);
        keys.push_back(m.to_string());
        if (static_cast<int>(elems.size()) > cap)
          throw std::runtime_error("find_order5: matrix group too large");
      }
    }
  }
  for (const auto &m : elems)
    if (!m.is_identity() && m.pow(5).is_identity())
      return m;
  return std::nullopt;
}

} // namespace

std::vector<Subspace> submodule_scan(const ModuleAction &act,
                                     const std::optional<F2Mat> &c5) {
  std::optional<F2Mat> order5 = c5;
  if (!order5)
    order5 = find_order5(act);

  std::vector<Subspace> candidates;
  auto push_unique = [&](const Subspace &s) {
    if (s.rank() == 0 || s.rank() == act.dim)
      return;
    for (const auto &t : candidates)
      if (t == s)
        return;
    candidates.push_back(s);
  };

  if (order5) {
    std::vector<F2Mat> cg{*order5};
    std::uint64_t total = std::uint64_t{1} << act.dim;
    for (std::uint64_t bits = 1; bits < total; ++bits)
      push_unique(spin(act.dim, {F2Vec::from_bits(act.dim, bits)}, cg));
  } else {
    if (act.dim > 5)
      throw std::runtime_error(
          "submodule_scan: no order-5 element and dim > 5");
    for (int r = 1; r < act.dim; ++r)
      for (const auto &s : all_subspaces_of_rank(act.dim, r))
        push_unique(s);
  }

  std::vector<Subspace> out;
  for (const auto &s : candidates) {
    bool invariant = true;
    for (const auto &g : act.gens) {
      for (const auto &b : s.basis())
        if (!s.contains(g.apply(b))) {
          invariant = false;
          break;
        }
      if (!invariant)
        break;
    }
    if (invariant)
      out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const Subspace &a, const Subspace &b) {
    return a.canonical_less(b);
  });
  return out;
}

std::vector<F2Mat> hom_space(const ModuleAction &a, const ModuleAction &b) {
  if (a.gens.size() != b.gens.size())
    throw std::invalid_argument("hom_space: generator count mismatch");
  if (a.tag != b.tag)
    throw std::invalid_argument("hom_space: group tag mismatch");
  int ad = a.dim, bd = b.dim;
  int unknowns = ad * bd;
  int eqs_per_gen = ad * bd;
  int total_eqs = eqs_per_gen * static_cast<int>(a.gens.size());
  // Unknown u[k*bd + l] = X[k][l]; equations rho_a(g) X + X rho_b(g) = 0.
  F2Mat system(unknowns, total_eqs);
  for (std::size_t gi = 0; gi < a.gens.size(); ++gi) {
    const F2Mat &A = a.gens[gi];
    const F2Mat &B = b.gens[gi];
    int base = static_cast<int>(gi) * eqs_per_gen;
    for (int i = 0; i < ad; ++i)
      for (int j = 0; j < bd; ++j) {
        int eq = base + i * bd + j;
        for (int k = 0; k < ad; ++k)
          if (A.get(i, k))
            system.row(k * bd + j).set(eq, !system.row(k * bd + j).get(eq));
        for (int l = 0; l < bd; ++l)
          if (B.get(l, j))
            system.row(i * bd + l).set(eq, !system.row(i * bd + l).get(eq));
      }
  }
  std::vector<F2Vec> null = kernel(system);
  std::vector<F2Mat> out;
  for (const auto &v : null) {
    F2Mat X(ad, bd);
    for (int k = 0; k < ad; ++k)
      for (int l = 0; l < bd; ++l)
        X.set(k, l, v.get(k * bd + l));
    // Re-assert the intertwiner property.
    for (std::size_t gi = 0; gi < a.gens.size(); ++gi)
      if (a.gens[gi].mul(X) != X.mul(b.gens[gi]))
        throw std::runtime_error("hom_space: solution fails re-check");
    out.push_back(std::move(X));
  }
  return out;
}

ModuleDiagnostics module_diagnostics(const ModuleAction &act,
                                     const std::optional<F2Mat> &order4) {
  if (act.dim > 8)
    throw std::invalid_argument("module_diagnostics: dim > 8");
  ModuleDiagnostics d;
  d.irreducible = true;
  std::uint64_t total = std::uint64_t{1} << act.dim;
  for (std::uint64_t bits = 1; bits < total && d.irreducible; ++bits) {
    Subspace s = spin(act.dim, {F2Vec::from_bits(act.dim, bits)}, act.gens);
    if (s.rank() != act.dim)
      d.irreducible = false;
  }
  d.endo_dim = static_cast<int>(hom_space(act, act).size());
  if (order4) {
    const F2Mat &g = *order4;
    if (g.order() != 4)
      throw std::invalid_argument("module_diagnostics: designated element "
                                  "does not have order 4");
    bool found = false;
    for (std::uint64_t bits = 1; bits < total && !found; ++bits) {
      F2Vec v = F2Vec::from_bits(act.dim, bits);
      std::vector<F2Vec> orbit{v};
      for (int i = 0; i < 3; ++i)
        orbit.push_back(g.apply(orbit.back()));
      if (Subspace::span(act.dim, orbit).rank() == 4)
        found = true;
    }
    d.free_over_c4 = found;
  }
  return d;
}

int n_quad(const F2Vec &v4) {
  if (v4.dim() != 4)
    throw std::invalid_argument("n_quad: expects dim 4");
  // Embedded sum-zero weight is 0, 2 or 4; the form is 1 exactly at weight 2.
  int w5 = v4.popcount() + (v4.popcount() & 1);
  return w5 == 2 ? 1 : 0;
}

int n_bilinear(const F2Vec &u4, const F2Vec &v4) {
  return n_quad(u4 ^ v4) ^ n_quad(u4) ^ n_quad(v4);
}

int u_quad(const F2Vec &v8) {
  if (v8.dim() != 8)
    throw std::invalid_argument("u_quad: expects dim 8");
  F2Vec a(4), b(4);
  for (int i = 0; i < 4; ++i) {
    a.set(i, v8.get(i));
    b.set(i, v8.get(4 + i));
  }
  return n_quad(a) ^ n_quad(b);
}

std::vector<Subspace> all_subspaces_of_rank(int dim, int r) {
  if (dim > 5)
    throw std::invalid_argument("all_subspaces_of_rank: dim > 5");
  std::vector<Subspace> out;
  if (r == 0) {
    out.emplace_back(dim);
    return out;
  }
  std::uint64_t total = std::uint64_t{1} << dim;
  // Spans of r-subsets of nonzero vectors, deduplicated by canonical basis.
  auto push_unique = [&](const Subspace &s) {
    if (s.rank() != r)
      return;
    for (const auto &t : out)
      if (t == s)
        return;
    out.push_back(s);
  };
  std::vector<std::uint64_t> nz;
  for (std::uint64_t b = 1; b < total; ++b)
    nz.push_back(b);
  std::vector<std::uint64_t> chosen;
  auto rec = [&](auto &&self, std::size_t start) -> void {
    if (static_cast<int>(chosen.size()) == r) {
      std::vector<F2Vec> vs;
      for (auto b : chosen)
        vs.push_back(F2Vec::from_bits(dim, b));
      push_unique(Subspace::span(dim, vs));
      return;
    }
    for (std::size_t i = start; i < nz.size(); ++i) {
      chosen.push_back(nz[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Subspace &a, const Subspace &b) {
    return a.canonical_less(b);
  });
  return out;
}

} // namespace bolforge
