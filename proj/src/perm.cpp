#include "bolforge/perm.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace bolforge {

Perm::Perm(int degree) : img_(degree) {
  for (int i = 0; i < degree; ++i)
    img_[i] = static_cast<std::uint16_t>(i);
}

Perm Perm::from_images(std::vector<std::uint16_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (auto v : images) {
    if (v >= images.size() || seen[v])
      throw std::invalid_argument("Perm: image array is not a bijection");
    seen[v] = true;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(int degree,
                       const std::vector<std::vector<int>> &cycles) {
  Perm p(degree);
  for (const auto &cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i];
      int to = cyc[(i + 1) % cyc.size()];
      if (from < 0 || from >= degree || to < 0 || to >= degree)
        throw std::invalid_argument("Perm: cycle point out of range");
      if (p.img_[from] != from)
        throw std::invalid_argument("Perm: overlapping cycles");
      p.img_[from] = static_cast<std::uint16_t>(to);
    }
  }
  std::vector<bool> seen(degree, false);
  for (auto v : p.img_) {
    if (seen[v])
      throw std::invalid_argument("Perm: cycles do not define a bijection");
    seen[v] = true;
  }
  return p;
}

Perm Perm::compose(const Perm &then) const {
  if (degree() != then.degree())
    throw std::invalid_argument("Perm::compose: degree mismatch");
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    r.img_[i] = then.img_[img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    r.img_[img_[i]] = static_cast<std::uint16_t>(i);
  return r;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i)
      return false;
  return true;
}

std::string Perm::cycle_string() const {
  std::string s;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t start = 0; start < img_.size(); ++start) {
    if (seen[start] || img_[start] == start)
      continue;
    s.push_back('(');
    std::size_t cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = true;
      if (!first)
        s.push_back(' ');
      s += std::to_string(cur);
      first = false;
      cur = img_[cur];
    }
    s.push_back(')');
  }
  if (s.empty())
    s = "()";
  return s;
}

Perm conjugate(const Perm &p, const Perm &q) {
  return q.inverse().compose(p).compose(q);
}

Perm commutator(const Perm &p, const Perm &q) {
  return p.inverse().compose(q.inverse()).compose(p).compose(q);
}

int perm_order(const Perm &p) {
  Perm acc = p;
  int n = 1;
  while (!acc.is_identity()) {
    acc = acc.compose(p);
    ++n;
    if (n > 1 << 20)
      throw std::runtime_error("perm_order: runaway");
  }
  return n;
}

int perm_sign(const Perm &p) {
  std::vector<bool> seen(p.degree(), false);
  int transpositions = 0;
  for (int start = 0; start < p.degree(); ++start) {
    if (seen[start])
      continue;
    int len = 0;
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = p[cur];
      ++len;
    }
    transpositions += len - 1;
  }
  return (transpositions % 2 == 0) ? 1 : -1;
}

namespace {
std::uint64_t fnv1a(const std::uint16_t *data, std::size_t n) {
  std::uint64_t h = 14695981039346656037ULL;
  const unsigned char *bytes = reinterpret_cast<const unsigned char *>(data);
  for (std::size_t i = 0; i < n * sizeof(std::uint16_t); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}
} // namespace

std::size_t PermHash::operator()(const Perm &p) const {
  return static_cast<std::size_t>(fnv1a(p.data(), p.degree()));
}

GroupEnum GroupEnum::generate(std::vector<Perm> gens, std::size_t budget) {
  auto g = try_generate(std::move(gens), budget);
  if (!g)
    throw std::runtime_error("GroupEnum::generate: enumeration budget exceeded");
  return std::move(*g);
}

std::optional<GroupEnum> GroupEnum::try_generate(std::vector<Perm> gens,
                                                 std::size_t budget) {
  if (gens.empty())
    throw std::invalid_argument("GroupEnum: empty generator list");
  int degree = gens[0].degree();
  for (const auto &g : gens)
    if (g.degree() != degree)
      throw std::invalid_argument("GroupEnum: generator degree mismatch");

  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> work;
  Perm id(degree);
  seen.insert(id);
  work.push_back(id);
  while (!work.empty()) {
    Perm x = std::move(work.front());
    work.pop_front();
    for (const auto &g : gens) {
      Perm y = x.compose(g);
      if (seen.insert(y).second) {
        if (seen.size() > budget)
          return std::nullopt;
        work.push_back(std::move(y));
      }
    }
  }
  GroupEnum G;
  G.degree_ = degree;
  G.gens_ = std::move(gens);
  G.elements_.assign(seen.begin(), seen.end());
  std::sort(G.elements_.begin(), G.elements_.end());
  G.build_index();
  return G;
}

GroupEnum GroupEnum::from_elements(std::vector<Perm> elements) {
  if (elements.empty())
    throw std::invalid_argument("GroupEnum::from_elements: empty");
  GroupEnum G;
  G.degree_ = elements[0].degree();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  G.elements_ = std::move(elements);
  G.build_index();
  // Sanity: closed under product and inverse, contains identity.
  if (!G.elements_[0].is_identity())
    throw std::invalid_argument("GroupEnum::from_elements: no identity");
  for (const auto &e : G.elements_)
    if (!G.contains(e.inverse()))
      throw std::invalid_argument("GroupEnum::from_elements: not a group");
  // Reduced generating set: each addition at least doubles the closure, so
  // at most log2(order) generators are kept.
  {
    std::unordered_set<Perm, PermHash> closure{Perm(G.degree_)};
    for (const auto &e : G.elements_) {
      if (closure.count(e))
        continue;
      G.gens_.push_back(e);
      closure.clear();
      std::deque<Perm> work{Perm(G.degree_)};
      closure.insert(work.front());
      while (!work.empty()) {
        Perm x = std::move(work.front());
        work.pop_front();
        for (const auto &g : G.gens_) {
          Perm y = x.compose(g);
          if (closure.insert(y).second)
            work.push_back(std::move(y));
        }
      }
      if (closure.size() == G.elements_.size())
        break;
    }
    if (G.gens_.empty())
      G.gens_.push_back(Perm(G.degree_)); // trivial group
  }
  return G;
}

void GroupEnum::build_index() {
  std::size_t want = elements_.size() * 2;
  std::size_t cap = 16;
  while (cap < want)
    cap <<= 1;
  slots_.assign(cap, UINT32_MAX);
  slot_mask_ = cap - 1;
  for (std::uint32_t i = 0; i < elements_.size(); ++i) {
    std::uint64_t h =
        fnv1a(elements_[i].data(), static_cast<std::size_t>(degree_));
    std::uint64_t s = h & slot_mask_;
    while (slots_[s] != UINT32_MAX)
      s = (s + 1) & slot_mask_;
    slots_[s] = i;
  }
  inv_.resize(elements_.size());
  for (std::uint32_t i = 0; i < elements_.size(); ++i) {
    auto j = find(elements_[i].inverse());
    if (!j)
      throw std::runtime_error("GroupEnum: element set not inverse-closed");
    inv_[i] = *j;
  }
}

std::optional<std::uint32_t> GroupEnum::find(const Perm &p) const {
  if (p.degree() != degree_)
    return std::nullopt;
  std::uint64_t h = fnv1a(p.data(), static_cast<std::size_t>(degree_));
  std::uint64_t s = h & slot_mask_;
  while (slots_[s] != UINT32_MAX) {
    std::uint32_t i = slots_[s];
    if (std::memcmp(elements_[i].data(), p.data(),
                    sizeof(std::uint16_t) * degree_) == 0)
      return i;
    s = (s + 1) & slot_mask_;
  }
  return std::nullopt;
}

std::uint32_t GroupEnum::idx(const Perm &p) const {
  auto i = find(p);
  if (!i)
    throw std::invalid_argument("GroupEnum::idx: element not in group");
  return *i;
}

std::uint32_t GroupEnum::mul_idx(std::uint32_t a, std::uint32_t b) const {
  const Perm &pa = elements_[a];
  const Perm &pb = elements_[b];
  // Compose into a stack buffer and probe the index without allocating.
  std::uint16_t buf[2048];
  if (degree_ <= 2048) {
    for (int i = 0; i < degree_; ++i)
      buf[i] = pb[pa[i]];
    std::uint64_t h = fnv1a(buf, static_cast<std::size_t>(degree_));
    std::uint64_t s = h & slot_mask_;
    while (slots_[s] != UINT32_MAX) {
      std::uint32_t i = slots_[s];
      if (std::memcmp(elements_[i].data(), buf,
                      sizeof(std::uint16_t) * degree_) == 0)
        return i;
      s = (s + 1) & slot_mask_;
    }
    throw std::runtime_error("GroupEnum::mul_idx: product escaped the group");
  }
  return idx(pa.compose(pb));
}

std::uint32_t GroupEnum::conj_idx(std::uint32_t x, std::uint32_t by) const {
  return mul_idx(mul_idx(inv_[by], x), by);
}

std::vector<std::uint32_t> conj_class(const GroupEnum &G, const Perm &g) {
  auto start = G.find(g);
  if (!start)
    throw std::invalid_argument("conj_class: element not in group");
  std::vector<std::uint32_t> genIdx;
  for (const auto &gen : G.gens())
    genIdx.push_back(G.idx(gen));
  std::vector<bool> in(G.order(), false);
  std::vector<std::uint32_t> out{*start};
  in[*start] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto gi : genIdx) {
      std::uint32_t y = G.conj_idx(out[i], gi);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupEnum centralizer(const GroupEnum &G, const Perm &g) {
  if (!G.contains(g))
    throw std::invalid_argument("centralizer: element not in group");
  std::vector<Perm> elems;
  for (const auto &x : G.elements())
    if (x.compose(g) == g.compose(x))
      elems.push_back(x);
  return GroupEnum::from_elements(std::move(elems));
}

GroupEnum normalizer(const GroupEnum &G, const GroupEnum &H) {
  std::vector<Perm> elems;
  for (const auto &x : G.elements()) {
    bool ok = true;
    for (const auto &h : H.gens())
      if (!H.contains(conjugate(h, x))) {
        ok = false;
        break;
      }
    if (ok)
      elems.push_back(x);
  }
  return GroupEnum::from_elements(std::move(elems));
}

GroupEnum core(const GroupEnum &G, const GroupEnum &H) {
  for (const auto &h : H.elements())
    if (!G.contains(h))
      throw std::invalid_argument("core: H not inside G");
  std::vector<Perm> cur(H.elements());
  bool changed = true;
  while (changed) {
    changed = false;
    GroupEnum C = GroupEnum::from_elements(cur);
    std::vector<Perm> next;
    for (const auto &x : C.elements()) {
      bool keep = true;
      for (const auto &g : G.gens())
        if (!C.contains(conjugate(x, g))) {
          keep = false;
          break;
        }
      if (keep)
        next.push_back(x);
    }
    if (next.size() != cur.size()) {
      changed = true;
      cur = std::move(next);
    }
  }
  return GroupEnum::from_elements(std::move(cur));
}

namespace {

/// Conjugation closure of the seeds under G's generators (the union of
/// their conjugacy classes), generating the normal closure.
std::vector<Perm> class_closure(const GroupEnum &G,
                                const std::vector<Perm> &seeds) {
  std::unordered_set<Perm, PermHash> set;
  std::vector<Perm> work;
  for (const auto &s : seeds)
    if (set.insert(s).second)
      work.push_back(s);
  for (std::size_t i = 0; i < work.size(); ++i)
    for (const auto &g : G.gens()) {
      Perm y = conjugate(work[i], g);
      if (set.insert(y).second)
        work.push_back(std::move(y));
    }
  return work;
}

} // namespace

GroupEnum derived_subgroup(const GroupEnum &G) {
  // [G,G] is the normal closure of the generator commutators.
  std::vector<Perm> seeds;
  for (const auto &a : G.gens())
    for (const auto &b : G.gens()) {
      Perm c = commutator(a, b);
      if (!c.is_identity())
        seeds.push_back(c);
    }
  if (seeds.empty())
    return GroupEnum::from_elements({Perm(G.degree())});
  return GroupEnum::generate(class_closure(G, seeds), G.order());
}

bool has_trivial_o2(const GroupEnum &G) {
  // O2(G) is generated by the 2-elements whose normal closure is a 2-group.
  for (const auto &x : G.elements()) {
    if (x.is_identity())
      continue;
    int n = perm_order(x);
    if ((n & (n - 1)) != 0)
      continue; // not a 2-element
    GroupEnum N = GroupEnum::generate(class_closure(G, {x}), G.order());
    std::uint64_t ord = N.order();
    if ((ord & (ord - 1)) == 0)
      return false;
  }
  return true;
}

CosetAction coset_action(const GroupEnum &G, const GroupEnum &H) {
  std::vector<std::uint32_t> hIdx;
  hIdx.reserve(H.order());
  for (const auto &h : H.elements()) {
    auto i = G.find(h);
    if (!i)
      throw std::invalid_argument("coset_action: H not inside G");
    hIdx.push_back(*i);
  }
  std::uint64_t n = G.order();
  // Canonical representative of the coset of x = minimal element of Hx.
  std::vector<std::uint32_t> rep(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t best = UINT32_MAX;
    for (auto h : hIdx)
      best = std::min(best, G.mul_idx(h, x));
    rep[x] = best;
  }
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < n; ++x)
    if (rep[x] == x)
      reps.push_back(x);
  std::sort(reps.begin(), reps.end());
  // Coset H contains the identity (index 0), so it sorts first and gets
  // label 0 automatically; the rest are ordered by minimal element.
  std::vector<std::uint32_t> labels(n);
  std::vector<std::uint32_t> label_of_rep(n, UINT32_MAX);
  for (std::uint32_t l = 0; l < reps.size(); ++l)
    label_of_rep[reps[l]] = l;
  for (std::uint32_t x = 0; x < n; ++x)
    labels[x] = label_of_rep[rep[x]];

  CosetAction act;
  act.degree = static_cast<int>(reps.size());
  act.labels = std::move(labels);
  for (const auto &g : G.gens()) {
    std::uint32_t gi = G.idx(g);
    std::vector<std::uint16_t> img(act.degree);
    for (std::uint32_t l = 0; l < reps.size(); ++l)
      img[l] = static_cast<std::uint16_t>(act.labels[G.mul_idx(reps[l], gi)]);
    act.gen_images.push_back(Perm::from_images(std::move(img)));
  }
  return act;
}

std::vector<int> orbit_of(const std::vector<Perm> &gens, int point) {
  std::vector<bool> seen(gens[0].degree(), false);
  std::vector<int> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto &g : gens) {
      int y = g[out[i]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i)
      parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]]; // path halving
      x = parent[x];
    }
    return x;
  }
};

} // namespace

std::vector<int> minimal_block(const std::vector<Perm> &gens, int a, int b) {
  if (gens.empty())
    throw std::invalid_argument("minimal_block: no generators");
  int n = gens[0].degree();
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw std::invalid_argument("minimal_block: seed out of range");
  if (static_cast<int>(orbit_of(gens, a).size()) != n)
    throw std::invalid_argument("minimal_block: group is not transitive");
  if (a == b)
    return {a};

  UnionFind uf(n);
  std::vector<int> size(n, 1);
  // Queue of merged point pairs still to be propagated through the
  // generators.
  std::vector<std::pair<int, int>> queue;
  auto merge = [&](int x, int y) {
    int rx = uf.find(x), ry = uf.find(y);
    if (rx == ry)
      return;
    if (size[rx] < size[ry])
      std::swap(rx, ry);
    uf.parent[ry] = rx;
    size[rx] += size[ry];
    queue.emplace_back(x, y);
  };
  merge(a, b);
  std::size_t head = 0;
  while (head < queue.size()) {
    auto [x, y] = queue[head++];
    for (const auto &g : gens)
      merge(g[x], g[y]);
    if (size[uf.find(a)] == n)
      break; // block already everything
  }
  int ra = uf.find(a);
  std::vector<int> block;
  for (int i = 0; i < n; ++i)
    if (uf.find(i) == ra)
      block.push_back(i);
  return block;
}

namespace {

/// Deterministic Schreier-Sims stabilizer chain. Generators are stored at
/// the deepest level whose base prefix they fix; the group at level i is
/// generated by all generators stored at levels >= i.
class StabChain {
public:
  explicit StabChain(int degree) : degree_(degree) {}

  bool contains(const Perm &g) const {
    Perm res;
    std::size_t lvl;
    return sift(g, res, lvl);
  }

  void add_generator(const Perm &g) {
    if (g.is_identity())
      return;
    Perm res;
    std::size_t lvl;
    if (sift(g, res, lvl))
      return; // already a member
    insert_at(res, lvl);
  }

  void close() {
    // Complete levels bottom-up; inserting a residue invalidates the
    // levels at and above it (their generator unions changed).
    verified_.assign(levels_.size(), false);
    while (true) {
      int deepest = -1;
      for (int j = static_cast<int>(levels_.size()) - 1; j >= 0; --j)
        if (!verified_[j]) {
          deepest = j;
          break;
        }
      if (deepest < 0)
        return;
      if (complete_pass(static_cast<std::size_t>(deepest)))
        verified_[deepest] = true;
    }
  }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const auto &l : levels_) {
      std::uint64_t s = l.orbit.size();
      if (n > UINT64_MAX / s)
        throw std::overflow_error("StabChain::order: exceeds 64 bits");
      n *= s;
    }
    return n;
  }

  std::vector<std::uint64_t> orbit_sizes() const {
    std::vector<std::uint64_t> out;
    for (const auto &l : levels_)
      out.push_back(l.orbit.size());
    return out;
  }

private:
  struct Level {
    int base = 0;
    std::vector<Perm> gens;        // stored at this level
    std::vector<int> orbit;        // discovery order, orbit[0] == base
    std::vector<int> pos;          // point -> orbit position or -1
    std::vector<Perm> transversal; // per orbit position, maps base -> point
  };

  bool sift(const Perm &g, Perm &residue, std::size_t &level) const {
    Perm cur = g;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const Level &L = levels_[i];
      int image = cur[L.base];
      if (L.pos[image] < 0) {
        residue = cur;
        level = i;
        return false;
      }
      cur = cur.compose(L.transversal[L.pos[image]].inverse());
    }
    residue = cur;
    level = levels_.size();
    return cur.is_identity();
  }

  std::vector<const Perm *> gens_at(std::size_t i) const {
    std::vector<const Perm *> out;
    for (std::size_t j = i; j < levels_.size(); ++j)
      for (const auto &g : levels_[j].gens)
        out.push_back(&g);
    return out;
  }

  void recompute_orbit(std::size_t i) {
    Level &L = levels_[i];
    auto gens = gens_at(i);
    L.orbit.assign(1, L.base);
    L.pos.assign(degree_, -1);
    L.pos[L.base] = 0;
    L.transversal.assign(1, Perm(degree_));
    for (std::size_t k = 0; k < L.orbit.size(); ++k) {
      for (const Perm *g : gens) {
        int y = (*g)[L.orbit[k]];
        if (L.pos[y] < 0) {
          L.pos[y] = static_cast<int>(L.orbit.size());
          L.orbit.push_back(y);
          L.transversal.push_back(L.transversal[k].compose(*g));
        }
      }
    }
  }

  void insert_at(const Perm &residue, std::size_t lvl) {
    if (lvl == levels_.size()) {
      Level L;
      int b = 0;
      while (residue[b] == b)
        ++b; // natural ordering: smallest moved point
      L.base = b;
      levels_.push_back(std::move(L));
    }
    levels_[lvl].gens.push_back(residue);
    for (std::size_t i = 0; i <= lvl && i < levels_.size(); ++i)
      recompute_orbit(i);
    if (verified_.size() < levels_.size())
      verified_.resize(levels_.size(), false);
    for (std::size_t i = 0; i <= lvl && i < verified_.size(); ++i)
      verified_[i] = false;
  }

  /// One Schreier-generator verification pass over level i. Returns true
  /// if every Schreier generator sifted to the identity (level complete).
  bool complete_pass(std::size_t i) {
    recompute_orbit(i);
    Level &L = levels_[i];
    auto gens = gens_at(i);
    for (std::size_t k = 0; k < L.orbit.size(); ++k) {
      for (const Perm *g : gens) {
        int y = (*g)[L.orbit[k]];
        Perm sg = L.transversal[k].compose(*g).compose(
            L.transversal[L.pos[y]].inverse());
        if (sg.is_identity())
          continue;
        Perm res;
        std::size_t lvl;
        // Sift within the chain below this level.
        Perm cur = sg;
        bool ok = true;
        for (std::size_t j = i + 1; j < levels_.size(); ++j) {
          Level &M = levels_[j];
          int image = cur[M.base];
          if (M.pos[image] < 0) {
            res = cur;
            lvl = j;
            ok = false;
            break;
          }
          cur = cur.compose(M.transversal[M.pos[image]].inverse());
        }
        if (ok) {
          if (cur.is_identity())
            continue;
          res = cur;
          lvl = levels_.size();
        }
        insert_at(res, lvl);
        return false;
      }
    }
    return true;
  }

  int degree_;
  std::vector<Level> levels_;
  std::vector<bool> verified_;
};

} // namespace

namespace {

StabChain build_chain(const std::vector<Perm> &gens) {
  if (gens.empty())
    throw std::invalid_argument("ss_order: empty generator list");
  int degree = gens[0].degree();
  for (const auto &g : gens)
    if (g.degree() != degree)
      throw std::invalid_argument("ss_order: degree mismatch");
  StabChain chain(degree);
  for (const auto &g : gens)
    chain.add_generator(g);
  chain.close();
  return chain;
}

} // namespace

std::uint64_t ss_order(const std::vector<Perm> &gens) {
  return build_chain(gens).order();
}

std::vector<std::uint64_t> ss_orbit_sizes(const std::vector<Perm> &gens) {
  return build_chain(gens).orbit_sizes();
}

} // namespace bolforge
