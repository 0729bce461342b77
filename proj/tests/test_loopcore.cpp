#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "bolforge/baseg.hpp"
#include "bolforge/io.hpp"
#include "bolforge/loopcore.hpp"

using namespace bolforge;

static const GroupG &the_group() {
  static GroupG gg = build_g();
  return gg;
}

static LoopTable xor_table(std::uint32_t n) {
  LoopTable t;
  t.n = n;
  t.cells.resize(std::size_t{n} * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      t.cells[i * n + j] = static_cast<std::uint16_t>(i ^ j);
  return t;
}

static LoopTable cyclic_table(std::uint32_t n) {
  LoopTable t;
  t.n = n;
  t.cells.resize(std::size_t{n} * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      t.cells[i * n + j] = static_cast<std::uint16_t>((i + j) % n);
  return t;
}

TEST_CASE("Klein four-group table passes everything") {
  LoopTable t = xor_table(4);
  CHECK(table_checks(t).pass());
  BolMode mode;
  CHECK(check_bol(t, mode).pass()); // groups satisfy the identity
  CHECK(mult_group_order(t, MultKind::Right) == 4); // regular representation
  CHECK(is_simple(t).simple == false);
  CHECK(normal_closure_block(t, 0) == std::vector<int>{0});
}

TEST_CASE("cyclic group of order 4: Latin passes, exponent 2 fails") {
  LoopTable t = cyclic_table(4);
  Certificate cert = table_checks(t);
  CHECK(cert.find("latin_square")->pass);
  CHECK(cert.find("unit_law")->pass);
  CHECK_FALSE(cert.find("exponent_2")->pass);
}

TEST_CASE("base loop end to end") {
  const GroupG &gg = the_group();
  EnumOracle oracle(gg.G);
  Folder f = base_folder(gg, oracle, nullptr);
  Certificate v = verify_folder(f);
  CHECK(v.pass());
  LoopTable t = build_loop(f);
  CHECK(t.n == 96);
  CHECK(table_checks(t).pass()); // always true after a verified folder
  BolMode mode;
  mode.exhaustive = true;
  Certificate bol = check_bol(t, mode);
  CHECK(bol.pass());
  // parallel run returns the identical verdict
  CHECK(check_bol(t, mode, 3).pass());
  SimplicityReport rep = is_simple(t);
  CHECK(rep.simple);
  CHECK(normal_closure_block(t, 17).size() == 96);
  CHECK(mult_group_order(t, MultKind::Right) == 3840);
  // worker count does not change the verdict
  SimplicityReport rep3 = is_simple(t, 3);
  CHECK(rep3.simple == rep.simple);
  CHECK(rep3.witness == rep.witness);
}

TEST_CASE("planted violation is caught with a witness") {
  const GroupG &gg = the_group();
  EnumOracle oracle(gg.G);
  Folder f = base_folder(gg, oracle, nullptr);
  // replace a K-element by its product with a nontrivial H-element
  std::uint64_t h5 = gg.G.idx(gg.c.compose(gg.d)); // cd, order 5, in H
  Folder broken = f;
  broken.k[1] = oracle.mul(h5, f.k[1]);
  Certificate v = verify_folder(broken);
  CHECK_FALSE(v.pass());
  CHECK_FALSE(v.find("pairwise_transversal")->pass);
  CHECK_FALSE(v.find("pairwise_transversal")->witness.empty());
  // replacing by the H-involution keeps transversality but breaks the
  // conjugation closure instead
  Folder broken2 = f;
  broken2.k[1] = oracle.mul(gg.zIdx, f.k[1]);
  Certificate v2 = verify_folder(broken2);
  CHECK_FALSE(v2.pass());
  CHECK_FALSE(v2.find("conjugation_invariant")->pass);
}

TEST_CASE("build_loop refuses a non-transversal") {
  const GroupG &gg = the_group();
  EnumOracle oracle(gg.G);
  Folder f = base_folder(gg, oracle, nullptr);
  Folder broken = f;
  broken.k[1] = f.k[2]; // duplicate element: cosets collide
  CHECK_THROWS_AS(build_loop(broken), std::runtime_error);
}

TEST_CASE("sampled Bol is deterministic in the seed and worker count") {
  LoopTable t = xor_table(8);
  BolMode mode;
  mode.exhaustive = false;
  mode.samples = 5000;
  mode.seed = 9;
  Certificate a = check_bol(t, mode, 1);
  Certificate b = check_bol(t, mode, 4);
  REQUIRE(a.checks().size() == b.checks().size());
  for (std::size_t i = 0; i < a.checks().size(); ++i) {
    CHECK(a.checks()[i].pass == b.checks()[i].pass);
    CHECK(a.checks()[i].witness == b.checks()[i].witness);
  }
}

TEST_CASE("quotient induce: identity map reproduces the table") {
  LoopTable t = xor_table(4);
  std::vector<std::uint16_t> fiber{0, 1, 2, 3};
  QuotientResult qr = quotient_induce(t, fiber);
  CHECK(qr.well_defined);
  CHECK(qr.table.cells == t.cells);
  // collapsing along a subgroup gives the quotient group
  std::vector<std::uint16_t> collapse{0, 0, 1, 1}; // mod <e1>
  QuotientResult qr2 = quotient_induce(t, collapse);
  CHECK(qr2.well_defined);
  CHECK(qr2.table.n == 2);
  // non-equal fibers are rejected
  std::vector<std::uint16_t> bad{0, 0, 0, 1};
  CHECK_THROWS_AS(quotient_induce(t, bad), std::invalid_argument);
}

TEST_CASE("right mult order divides full mult order (prime multisets)") {
  const GroupG &gg = the_group();
  EnumOracle oracle(gg.G);
  Folder f = base_folder(gg, oracle, nullptr);
  LoopTable t = build_loop(f);
  auto factor_exponents = [](const std::vector<std::uint64_t> &orbits) {
    std::map<std::uint64_t, int> exp;
    for (auto n : orbits)
      for (std::uint64_t p = 2; n > 1; ++p)
        while (n % p == 0) {
          ++exp[p];
          n /= p;
        }
    return exp;
  };
  auto r = factor_exponents(mult_group_orbit_sizes(t, MultKind::Right));
  auto fu = factor_exponents(mult_group_orbit_sizes(t, MultKind::Full));
  for (const auto &[p, e] : r)
    CHECK(fu[p] >= e);
}

TEST_CASE("minimal block of the loop translations obeys the block law") {
  LoopTable t = xor_table(8);
  auto block = normal_closure_block(t, 3);
  std::vector<Perm> gens;
  for (std::uint32_t a = 0; a < t.n; ++a) {
    gens.push_back(t.row_map(a));
    gens.push_back(t.column_map(a));
  }
  for (const auto &g : gens) {
    std::vector<int> img;
    for (int b : block)
      img.push_back(g[b]);
    std::sort(img.begin(), img.end());
    std::vector<int> inter;
    std::set_intersection(img.begin(), img.end(), block.begin(), block.end(),
                          std::back_inserter(inter));
    CHECK((img == block || inter.empty()));
  }
}

TEST_CASE("ltab round trip") {
  LoopTable t = xor_table(4);
  std::string path = "test_roundtrip.ltab";
  ltab_write(t, path);
  LoopTable back = ltab_read(path);
  CHECK(back.n == t.n);
  CHECK(back.cells == t.cells);
  CHECK(ltab_to_string(t) == "ltab 1\n4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n");
  CHECK_THROWS(ltab_read("does_not_exist.ltab"));
  std::remove(path.c_str());
}
