#include "bolforge/loopcore.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "bolforge/rng.hpp"

namespace bolforge {

Certificate verify_folder(const Folder &f) {
  Certificate cert("verify_folder");
  const MulOracle &M = *f.mul;

  bool unit_ok = !f.k.empty() && f.k[0] == M.unit();
  cert.add("unit_first", unit_ok,
           unit_ok ? "" : "K[0] is not the identity");

  bool invol_ok = true;
  std::string invol_witness;
  for (std::size_t i = 1; i < f.k.size() && invol_ok; ++i) {
    std::uint64_t x = f.k[i];
    if (x == M.unit() || M.mul(x, x) != M.unit()) {
      invol_ok = false;
      invol_witness = "K[" + std::to_string(i) + "]";
    }
  }
  cert.add("involutions", invol_ok, invol_witness);

  std::unordered_set<std::uint64_t> kset(f.k.begin(), f.k.end());
  bool conj_ok = true;
  std::string conj_witness;
  for (std::size_t i = 0; i < f.k.size() && conj_ok; ++i)
    for (auto g : f.ambient_gens) {
      if (!kset.count(M.conj(f.k[i], g))) {
        conj_ok = false;
        conj_witness = "K[" + std::to_string(i) + "] escapes under generator";
        break;
      }
    }
  cert.add("conjugation_invariant", conj_ok, conj_witness);

  bool index_ok = f.k.size() * f.hset.size() == M.order();
  cert.add("index_matches", index_ok,
           "|K|=" + std::to_string(f.k.size()) +
               " |H|=" + std::to_string(f.hset.size()) +
               " |G|=" + std::to_string(M.order()));

  bool pair_ok = true;
  std::string pair_witness;
  for (std::size_t i = 0; i < f.k.size() && pair_ok; ++i)
    for (std::size_t j = 0; j < f.k.size(); ++j) {
      if (i == j)
        continue;
      if (f.in_h(M.mul(f.k[i], f.k[j]))) {
        pair_ok = false;
        pair_witness =
            "K[" + std::to_string(i) + "]*K[" + std::to_string(j) + "] in H";
        break;
      }
    }
  cert.add("pairwise_transversal", pair_ok, pair_witness);

  return cert;
}

Perm LoopTable::row_map(std::uint32_t a) const {
  std::vector<std::uint16_t> img(n);
  for (std::uint32_t x = 0; x < n; ++x)
    img[x] = at(a, x);
  return Perm::from_images(std::move(img));
}

Perm LoopTable::column_map(std::uint32_t a) const {
  std::vector<std::uint16_t> img(n);
  for (std::uint32_t x = 0; x < n; ++x)
    img[x] = at(x, a);
  return Perm::from_images(std::move(img));
}

LoopTable build_loop(const Folder &f) {
  const MulOracle &M = *f.mul;
  std::uint64_t order = M.order();
  std::uint32_t n = static_cast<std::uint32_t>(f.k.size());
  // Label every element of the ambient group with the K-index of its coset.
  std::vector<std::uint16_t> label(order, UINT16_MAX);
  for (std::uint32_t zi = 0; zi < n; ++zi)
    for (auto h : f.hset) {
      std::uint64_t e = M.mul(h, f.k[zi]);
      if (label[e] != UINT16_MAX)
        throw std::runtime_error("build_loop: coset overlap (folder not "
                                 "verified?)");
      label[e] = static_cast<std::uint16_t>(zi);
    }
  for (std::uint64_t e = 0; e < order; ++e)
    if (label[e] == UINT16_MAX)
      throw std::runtime_error("build_loop: cosets do not cover the group");

  LoopTable t;
  t.n = n;
  t.cells.resize(std::size_t{n} * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      t.cells[std::size_t{i} * n + j] = label[M.mul(f.k[i], f.k[j])];
  return t;
}

Certificate table_checks(const LoopTable &t) {
  Certificate cert("table_checks");
  std::uint32_t n = t.n;

  bool latin = true;
  std::string latin_witness;
  std::vector<bool> seen(n);
  for (std::uint32_t i = 0; i < n && latin; ++i) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t j = 0; j < n; ++j) {
      std::uint16_t v = t.at(i, j);
      if (v >= n || seen[v]) {
        latin = false;
        latin_witness = "row " + std::to_string(i);
        break;
      }
      seen[v] = true;
    }
  }
  for (std::uint32_t j = 0; j < n && latin; ++j) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint16_t v = t.at(i, j);
      if (seen[v]) {
        latin = false;
        latin_witness = "column " + std::to_string(j);
        break;
      }
      seen[v] = true;
    }
  }
  cert.add("latin_square", latin, latin_witness);

  bool unit = true;
  std::string unit_witness;
  for (std::uint32_t i = 0; i < n; ++i)
    if (t.at(0, i) != i || t.at(i, 0) != i) {
      unit = false;
      unit_witness = "index " + std::to_string(i);
      break;
    }
  cert.add("unit_law", unit, unit_witness);

  bool exp2 = true;
  std::string exp2_witness;
  for (std::uint32_t i = 0; i < n; ++i)
    if (t.at(i, i) != 0) {
      exp2 = false;
      exp2_witness = "x = " + std::to_string(i);
      break;
    }
  cert.add("exponent_2", exp2, exp2_witness);

  return cert;
}

namespace {

struct BolWitness {
  bool found = false;
  std::uint64_t x = 0, y = 0, z = 0;

  void consider(std::uint64_t xx, std::uint64_t yy, std::uint64_t zz) {
    if (!found || std::tuple(xx, yy, zz) < std::tuple(x, y, z)) {
      found = true;
      x = xx;
      y = yy;
      z = zz;
    }
  }
  void merge(const BolWitness &o) {
    if (o.found)
      consider(o.x, o.y, o.z);
  }
};

inline bool bol_holds(const LoopTable &t, std::uint32_t x, std::uint32_t y,
                      std::uint32_t z) {
  // ((xy)z)y == x((yz)y)
  std::uint16_t lhs = t.at(t.at(t.at(x, y), z), y);
  std::uint16_t rhs = t.at(x, t.at(t.at(y, z), y));
  return lhs == rhs;
}

} // namespace

Certificate check_bol(const LoopTable &t, const BolMode &mode, int workers) {
  Certificate cert("check_bol");
  std::uint32_t n = t.n;
  if (workers < 1)
    workers = 1;

  // Right-inverse smoke test: the z = 1 instance (xy)y = x.
  bool rinv = true;
  std::string rinv_witness;
  for (std::uint32_t x = 0; x < n && rinv; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (t.at(t.at(x, y), y) != x) {
        rinv = false;
        rinv_witness =
            "x=" + std::to_string(x) + " y=" + std::to_string(y);
        break;
      }
  cert.add("right_inverse", rinv, rinv_witness);

  BolWitness witness;
  std::uint64_t checked = 0;
  if (mode.exhaustive) {
    std::vector<BolWitness> results(workers);
    auto run = [&](int w) {
      BolWitness local;
      for (std::uint32_t x = w; x < n; x += workers) {
        if (local.found)
          break;
        for (std::uint32_t y = 0; y < n && !local.found; ++y)
          for (std::uint32_t z = 0; z < n; ++z)
            if (!bol_holds(t, x, y, z)) {
              local.consider(x, y, z);
              break;
            }
      }
      results[w] = local;
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w)
        threads.emplace_back(run, w);
      for (auto &th : threads)
        th.join();
    }
    for (const auto &r : results)
      witness.merge(r);
    checked = std::uint64_t{n} * n * n;
    cert.add("bol_exhaustive", !witness.found,
             witness.found
                 ? "triple (" + std::to_string(witness.x) + "," +
                       std::to_string(witness.y) + "," +
                       std::to_string(witness.z) + ")"
                 : std::to_string(checked) + " triples");
  } else {
    SplitMix64 rng{mode.seed};
    std::vector<BolWitness> results(workers);
    std::uint64_t count = mode.samples;
    auto run = [&](int w) {
      BolWitness local;
      for (std::uint64_t i = w; i < count; i += workers) {
        std::uint32_t x = static_cast<std::uint32_t>(rng.at_mod(3 * i, n));
        std::uint32_t y = static_cast<std::uint32_t>(rng.at_mod(3 * i + 1, n));
        std::uint32_t z = static_cast<std::uint32_t>(rng.at_mod(3 * i + 2, n));
        if (!bol_holds(t, x, y, z))
          local.consider(x, y, z);
      }
      results[w] = local;
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w)
        threads.emplace_back(run, w);
      for (auto &th : threads)
        th.join();
    }
    for (const auto &r : results)
      witness.merge(r);
    checked = count;
    cert.add("bol_sampled", !witness.found,
             witness.found
                 ? "triple (" + std::to_string(witness.x) + "," +
                       std::to_string(witness.y) + "," +
                       std::to_string(witness.z) + ")"
                 : std::to_string(checked) + " samples, seed " +
                       std::to_string(mode.seed));
  }
  return cert;
}

namespace {

std::vector<Perm> translation_gens(const LoopTable &t) {
  std::vector<Perm> gens;
  gens.reserve(2 * t.n);
  for (std::uint32_t a = 0; a < t.n; ++a)
    gens.push_back(t.row_map(a));
  for (std::uint32_t a = 0; a < t.n; ++a)
    gens.push_back(t.column_map(a));
  return gens;
}

} // namespace

std::vector<int> normal_closure_block(const LoopTable &t, int x) {
  if (x == 0)
    return {0};
  return minimal_block(translation_gens(t), 0, x);
}

SimplicityReport is_simple(const LoopTable &t, int workers) {
  std::vector<Perm> gens = translation_gens(t);
  if (workers < 1)
    workers = 1;
  int n = static_cast<int>(t.n);
  std::vector<int> found(workers, -1);
  std::vector<std::size_t> sizes(workers, 0);
  auto run = [&](int w) {
    for (int x = 1 + w; x < n; x += workers) {
      std::vector<int> block = minimal_block(gens, 0, x);
      if (static_cast<int>(block.size()) != n) {
        found[w] = x;
        sizes[w] = block.size();
        return;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
      threads.emplace_back(run, w);
    for (auto &th : threads)
      th.join();
  }
  SimplicityReport rep;
  rep.simple = true;
  for (int w = 0; w < workers; ++w)
    if (found[w] >= 0 && (rep.simple || found[w] < rep.witness)) {
      rep.simple = false;
      rep.witness = found[w];
      rep.block_size = sizes[w];
    }
  return rep;
}

QuotientResult quotient_induce(const LoopTable &t,
                               const std::vector<std::uint16_t> &fiber_map) {
  if (fiber_map.size() != t.n)
    throw std::invalid_argument("quotient_induce: fiber map size mismatch");
  std::uint16_t m = 0;
  for (auto v : fiber_map)
    m = std::max<std::uint16_t>(m, static_cast<std::uint16_t>(v + 1));
  // Surjectivity and equal fiber sizes.
  std::vector<std::uint32_t> fiber_size(m, 0);
  std::vector<int> rep(m, -1);
  for (std::uint32_t i = 0; i < t.n; ++i) {
    ++fiber_size[fiber_map[i]];
    if (rep[fiber_map[i]] < 0)
      rep[fiber_map[i]] = static_cast<int>(i);
  }
  for (std::uint16_t f = 0; f < m; ++f)
    if (fiber_size[f] == 0 || fiber_size[f] != fiber_size[0])
      throw std::invalid_argument(
          "quotient_induce: fibers not equal-sized/surjective");

  QuotientResult res;
  res.table.n = m;
  res.table.cells.resize(std::size_t{m} * m);
  for (std::uint16_t a = 0; a < m; ++a)
    for (std::uint16_t b = 0; b < m; ++b)
      res.table.cells[std::size_t{a} * m + b] =
          fiber_map[t.at(rep[a], rep[b])];

  for (std::uint32_t i = 0; i < t.n; ++i)
    for (std::uint32_t j = 0; j < t.n; ++j) {
      std::uint16_t expect = res.table.at(fiber_map[i], fiber_map[j]);
      if (fiber_map[t.at(i, j)] != expect) {
        res.well_defined = false;
        res.witness = {static_cast<int>(i), static_cast<int>(j)};
        return res;
      }
    }
  res.well_defined = true;
  return res;
}

namespace {

std::vector<Perm> mult_gens(const LoopTable &t, MultKind kind) {
  std::vector<Perm> gens;
  for (std::uint32_t a = 0; a < t.n; ++a)
    gens.push_back(t.column_map(a));
  if (kind == MultKind::Full)
    for (std::uint32_t a = 0; a < t.n; ++a)
      gens.push_back(t.row_map(a));
  return gens;
}

} // namespace

std::uint64_t mult_group_order(const LoopTable &t, MultKind kind) {
  return ss_order(mult_gens(t, kind));
}

std::vector<std::uint64_t> mult_group_orbit_sizes(const LoopTable &t,
                                                  MultKind kind) {
  return ss_orbit_sizes(mult_gens(t, kind));
}

} // namespace bolforge
