#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bolforge/rng.hpp"
#include "bolforge/s5mod.hpp"

using namespace bolforge;

static const GroupG &the_group() {
  static GroupG gg = build_g();
  return gg;
}

static const USpace &the_uspace() {
  static USpace u = build_u(the_group());
  return u;
}

TEST_CASE("certify_modules passes in full") {
  Certificate cert = certify_modules(the_group());
  for (const auto &c : cert.checks())
    CHECK_MESSAGE(c.pass, c.name, " ", c.witness);
}

TEST_CASE("rho_u is a homomorphism (generator pairs and random pairs)") {
  const GroupG &gg = the_group();
  SplitMix64 rng{11};
  for (int i = 0; i < 200; ++i) {
    std::uint32_t a = static_cast<std::uint32_t>(rng.at_mod(2 * i, 3840));
    std::uint32_t b = static_cast<std::uint32_t>(rng.at_mod(2 * i + 1, 3840));
    F2Mat lhs = rho_u(gg.phi5[a]).mul(rho_u(gg.phi5[b]));
    F2Mat rhs = rho_u(gg.phi5[gg.G.mul_idx(a, b)]);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("the form is invariant under both generator images on N") {
  const USpace &u = the_uspace();
  for (const auto &g : u.n.act.gens)
    for (int bits = 0; bits < 16; ++bits) {
      F2Vec v = F2Vec::from_bits(4, bits);
      CHECK(n_quad(g.apply(v)) == n_quad(v));
    }
}

TEST_CASE("named spins: a weight-2 vector fills N, the diagonal fills W") {
  const USpace &u = the_uspace();
  // weight-2 vector of the sum-zero model has coordinates 1100
  Subspace n = spin(4, {F2Vec::from_bits(4, 0b0011)}, u.n.act.gens);
  CHECK(n.rank() == 4);
  // u + u in the doubled space spins to W under the full S5 action
  Subspace w = spin(8, {F2Vec::from_bits(8, 0b00010001)}, u.uAct.gens);
  CHECK(w == u.W);
}

TEST_CASE("t and tau commute; fixed spaces") {
  const USpace &u = the_uspace();
  CHECK(u.t.mul(u.tau) == u.tau.mul(u.t));
  CHECK(fixed_space({u.tau}) == u.W);
  CHECK(fixed_space({F2Mat::identity(8)}).rank() == 8);
  Subspace cut = fixed_space({u.t});
  CHECK(cut.rank() == 4);
  CHECK(cut.intersect(u.T1).rank() == 0);
  CHECK(cut.intersect(u.T2).rank() == 0); // the labeling is symmetric
}

TEST_CASE("u -> u + u tau is an L-isomorphism from U1 onto W") {
  const USpace &u = the_uspace();
  // the map in coordinates: v -> v + v tau
  auto phi = [&](const F2Vec &v) { return v ^ u.tau.apply(v); };
  Subspace image(8);
  for (const auto &b : u.U1.basis())
    image.insert(phi(b));
  CHECK(image == u.W);
  for (const auto &g : u.lAct.gens)
    for (const auto &b : u.U1.basis())
      CHECK(phi(g.apply(b)) == g.apply(phi(b)));
}

TEST_CASE("every vector of T1 is fixed by some involution of D1") {
  const USpace &u = the_uspace();
  // collect the involutions of the F20 image on U
  std::vector<F2Mat> elements{F2Mat::identity(8)};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const auto &g : u.d1Act.gens) {
      F2Mat m = elements[i].mul(g);
      if (std::find(elements.begin(), elements.end(), m) == elements.end())
        elements.push_back(m);
    }
  CHECK(elements.size() == 20);
  std::vector<F2Mat> involutions;
  for (const auto &m : elements)
    if (!m.is_identity() && m.mul(m).is_identity())
      involutions.push_back(m);
  CHECK(involutions.size() == 5);
  for (const auto &v : u.T1.enumerate()) {
    bool fixed = false;
    for (const auto &m : involutions)
      if (m.apply(v) == v)
        fixed = true;
    CHECK(fixed);
  }
}

TEST_CASE("W is a copy of N as an S5-module") {
  const USpace &u = the_uspace();
  auto restrict_to = [](const Subspace &sp, const F2Mat &m) {
    F2Mat r(sp.rank(), sp.rank());
    for (int i = 0; i < sp.rank(); ++i) {
      F2Vec c = sp.coords_of(m.apply(sp.basis()[i]));
      for (int j = 0; j < sp.rank(); ++j)
        r.set(i, j, c.get(j));
    }
    return r;
  };
  ModuleAction wAct = ModuleAction::make(
      GroupTag::S5Pair,
      {restrict_to(u.W, u.uAct.gens[0]), restrict_to(u.W, u.uAct.gens[1])});
  auto homs = hom_space(u.n.act, wAct);
  CHECK(homs.size() == 1);
  CHECK(homs[0].invertible());
}

TEST_CASE("S complements T2 as well (labeling symmetry)") {
  const USpace &u = the_uspace();
  // x + y outside T2 for distinct x, y in the T2-side analogue of S; the
  // set S itself complements both complements of W
  for (std::size_t i = 0; i < u.S.size(); ++i)
    for (std::size_t j = i + 1; j < u.S.size(); ++j)
      CHECK_FALSE(u.T2.contains(u.S[i] ^ u.S[j]));
}

TEST_CASE("submodule lattice of the L-action is closed under sum/meet") {
  const USpace &u = the_uspace();
  auto subs = submodule_scan(u.lAct);
  subs.push_back(Subspace(8));                      // zero
  subs.push_back(Subspace::span(8, [] {
    std::vector<F2Vec> all;
    for (int i = 0; i < 8; ++i)
      all.push_back(F2Vec::from_bits(8, 1u << i));
    return all;
  }()));                                            // full
  for (const auto &a : subs)
    for (const auto &b : subs) {
      Subspace s = a.sum(b), m = a.intersect(b);
      bool s_found = false, m_found = false;
      for (const auto &c : subs) {
        if (c == s)
          s_found = true;
        if (c == m)
          m_found = true;
      }
      CHECK(s_found);
      CHECK(m_found);
    }
}

TEST_CASE("psi is equivariant after the solve (re-asserted)") {
  const GroupG &gg = the_group();
  const USpace &u = the_uspace();
  PsiMap psi = build_psi(gg, u);
  CHECK(psi.mat.rank() == 4);
  // equivariance on the table: psi(j^h) = psi(j) * rho(h) restricted to T1
  std::uint32_t pp = gg.G.mul_idx(gg.cIdx, gg.dIdx);
  for (auto hIdx : {gg.h8Idx, pp}) {
    F2Mat conj5 = gg.conj_on_j(hIdx);
    F2Mat ru = rho_u(gg.phi5[hIdx]);
    for (int code = 0; code < 16; ++code) {
      F2Vec j5(5);
      for (int b = 0; b < 4; ++b)
        if ((code >> b) & 1)
          j5 ^= [&] {
            F2Vec e(5);
            e.set(b, true);
            e.set(4, true);
            return e;
          }();
      F2Vec jc = conj5.apply(j5);
      int code2 = 0;
      for (int b = 0; b < 4; ++b)
        if (jc.get(b))
          code2 |= 1 << b;
      F2Vec lhs = F2Vec::from_bits(8, psi.tab[code2]);
      F2Vec rhs = ru.apply(F2Vec::from_bits(8, psi.tab[code]));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("errors: wrong degrees and missing order-4 element") {
  CHECK_THROWS_AS(perm5_sumzero_mat(Perm(4)), std::invalid_argument);
  CHECK_THROWS_AS(perm6_mod_center_mat(Perm(5)), std::invalid_argument);
  const USpace &u = the_uspace();
  CHECK_THROWS_AS(module_diagnostics(u.n.act, F2Mat::identity(4)),
                  std::invalid_argument);
}
