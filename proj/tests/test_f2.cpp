#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bolforge/f2.hpp"

using namespace bolforge;

TEST_CASE("vector basics: xor, self-inverse, lex order") {
  F2Vec a = F2Vec::from_bits(5, 0b10110);
  F2Vec b = F2Vec::from_bits(5, 0b00011);
  CHECK((a ^ a).is_zero());
  CHECK((a ^ b) == F2Vec::from_bits(5, 0b10101));
  CHECK(a.popcount() == 3);
  // lex: coordinate 0 first; 0 sorts before 1
  CHECK(F2Vec::from_bits(3, 0b010).lex_less(F2Vec::from_bits(3, 0b011)));
  CHECK(F2Vec::from_bits(3, 0b100).lex_less(F2Vec::from_bits(3, 0b010)));
  CHECK_FALSE(a.lex_less(a));
}

TEST_CASE("linsolve: identity system and inconsistent system") {
  F2Mat id = F2Mat::identity(4);
  F2Vec b = F2Vec::from_bits(4, 0b1010);
  auto res = linsolve(id, b);
  CHECK(res.consistent);
  CHECK(res.particular == b);
  CHECK(res.kernel.empty());

  // rank of the sum-zero basis of F_2^5 is 4
  std::vector<F2Vec> rows;
  for (int i = 0; i < 4; ++i) {
    F2Vec v(5);
    v.set(i, true);
    v.set(4, true);
    rows.push_back(v);
  }
  CHECK(F2Mat::from_rows(rows).rank() == 4);

  // inconsistent: zero matrix, nonzero target -> empty solution set
  F2Mat zero(2, 3);
  auto bad = linsolve(zero, F2Vec::from_bits(3, 0b1));
  CHECK_FALSE(bad.consistent);
  CHECK(static_cast<int>(bad.kernel.size()) == 2);
}

TEST_CASE("kernel is re-checked by definition") {
  F2Mat m(3, 2);
  m.set(0, 0, true);
  m.set(1, 0, true);
  m.set(2, 1, true);
  auto ker = kernel(m);
  CHECK(ker.size() == 1);
  for (const auto &x : ker) {
    // x * m = 0 by definition
    F2Vec out(2);
    for (int i = 0; i < 3; ++i)
      if (x.get(i))
        out ^= m.row(i);
    CHECK(out.is_zero());
  }
}

TEST_CASE("subspace: canonical bases, sum, intersection, lattice") {
  Subspace s = Subspace::span(4, {F2Vec::from_bits(4, 0b0011),
                                  F2Vec::from_bits(4, 0b0110),
                                  F2Vec::from_bits(4, 0b0101)});
  CHECK(s.rank() == 2);
  Subspace t = Subspace::span(
      4, {F2Vec::from_bits(4, 0b0011), F2Vec::from_bits(4, 0b0101),
          F2Vec::from_bits(4, 0b0110)});
  CHECK(s == t); // canonical equality
  Subspace u = Subspace::span(4, {F2Vec::from_bits(4, 0b1001)});
  Subspace sum = s.sum(u);
  Subspace inter = s.intersect(u);
  CHECK(sum.rank() == 3);
  CHECK(inter.rank() == 0);
  // modular-style sanity: dim(sum) + dim(inter) = dim(s) + dim(u)
  CHECK(sum.rank() + inter.rank() == s.rank() + u.rank());
  CHECK(s.enumerate().size() == 4);
  // coords invert the basis combination
  for (const auto &v : s.enumerate()) {
    F2Vec c = s.coords_of(v);
    F2Vec back(4);
    for (int i = 0; i < s.rank(); ++i)
      if (c.get(i))
        back ^= s.basis()[i];
    CHECK(back == v);
  }
}

TEST_CASE("spin: zero seed, monotone, idempotent, invariant") {
  // C4 rotation on F_2^4 by coordinate shift
  F2Mat rot(4, 4);
  for (int i = 0; i < 4; ++i)
    rot.set(i, (i + 1) % 4, true);
  CHECK(spin(4, {F2Vec(4)}, {rot}).rank() == 0);
  Subspace s = spin(4, {F2Vec::from_bits(4, 0b0001)}, {rot});
  CHECK(s.rank() == 4);
  Subspace again = spin(4, s.basis(), {rot});
  CHECK(again == s);
  for (const auto &b : s.basis())
    CHECK(s.contains(rot.apply(b)));
  Subspace diag = spin(4, {F2Vec::from_bits(4, 0b1111)}, {rot});
  CHECK(diag.rank() == 1);
}

TEST_CASE("module action rejects broken relations") {
  F2Mat rot(4, 4);
  for (int i = 0; i < 4; ++i)
    rot.set(i, (i + 1) % 4, true); // order 4
  CHECK_THROWS_AS(ModuleAction::make(GroupTag::C5Single, {rot}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ModuleAction::make(GroupTag::S5Pair, {rot}),
                  std::invalid_argument);
}

TEST_CASE("hom_space: permutation module of C5 decomposes") {
  // C5 acting on F_2^5 by coordinate rotation
  F2Mat rot(5, 5);
  for (int i = 0; i < 5; ++i)
    rot.set(i, (i + 1) % 5, true);
  ModuleAction act = ModuleAction::make(GroupTag::C5Single, {rot});
  auto endo = hom_space(act, act);
  // endomorphism algebra of F_2 C_5 has dimension 5
  CHECK(endo.size() == 5);
  auto diag = module_diagnostics(act);
  CHECK_FALSE(diag.irreducible); // all-ones vector is fixed
}

TEST_CASE("quadratic form on the sum-zero model") {
  CHECK(n_quad(F2Vec(4)) == 0);
  int sing = 0, nonsing = 0;
  for (int bits = 1; bits < 16; ++bits)
    (n_quad(F2Vec::from_bits(4, bits)) == 0 ? sing : nonsing)++;
  CHECK(sing == 5);
  CHECK(nonsing == 10);
  // polar form is symmetric, alternating, and nondegenerate (Gram rank 4)
  F2Mat gram(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      F2Vec ei = F2Vec::from_bits(4, 1 << i);
      F2Vec ej = F2Vec::from_bits(4, 1 << j);
      CHECK(n_bilinear(ei, ei) == 0);
      CHECK(n_bilinear(ei, ej) == n_bilinear(ej, ei));
      gram.set(i, j, n_bilinear(ei, ej));
    }
  CHECK(gram.rank() == 4);
  // Witt index 1: no 2-dimensional totally singular subspace among all 35
  auto planes = all_subspaces_of_rank(4, 2);
  CHECK(planes.size() == 35);
  for (const auto &p : planes) {
    bool totally_singular = true;
    for (const auto &v : p.enumerate())
      if (n_quad(v) != 0)
        totally_singular = false;
    CHECK_FALSE(totally_singular);
  }
  // u_quad is the sum of the copies
  F2Vec v8 = F2Vec::from_bits(8, 0b00110001);
  CHECK(u_quad(v8) == (n_quad(F2Vec::from_bits(4, 0b0001)) ^
                       n_quad(F2Vec::from_bits(4, 0b0011))));
}

TEST_CASE("submodule_scan falls back to full scan in small dimension") {
  // C2 swap action on F_2^2: invariant proper nonzero subspace = diagonal
  F2Mat swap(2, 2);
  swap.set(0, 1, true);
  swap.set(1, 0, true);
  ModuleAction act{2, GroupTag::C5Single, {}};
  act.gens.push_back(swap); // bypass relation check deliberately
  auto subs = submodule_scan(act);
  CHECK(subs.size() == 1);
  CHECK(subs[0].rank() == 1);
  CHECK(subs[0].contains(F2Vec::from_bits(2, 0b11)));
}
