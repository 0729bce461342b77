#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bolforge/baseg.hpp"
#include "bolforge/loopcore.hpp"

using namespace bolforge;

static const GroupG &the_group() {
  static GroupG gg = build_g();
  return gg;
}

TEST_CASE("defining relations and orders") {
  const GroupG &gg = the_group();
  Certificate cert = certify_relations(gg);
  for (const auto &c : cert.checks())
    CHECK_MESSAGE(c.pass, c.name);
  CHECK(perm_order(gg.d) == 8);
  CHECK(gg.G.order() == 3840);
  CHECK(ss_order({gg.c, gg.d}) == 3840);
}

TEST_CASE("the induced action on X matches the stated permutations") {
  const GroupG &gg = the_group();
  CHECK(gg.phi6[gg.cIdx] == Perm::from_cycles(6, {{0, 1}, {2, 3}, {4, 5}}));
  CHECK(gg.phi6[gg.dIdx] == Perm::from_cycles(6, {{1, 2, 3, 4}}));
  // X is closed under conjugation and the induced permutations agree
  for (auto gi : {gg.cIdx, gg.dIdx}) {
    const Perm &pi = gg.phi6[gi];
    for (int i = 0; i < 6; ++i)
      CHECK(conjugate(gg.u[i], gg.G.at(gi)) == gg.u[pi[i]]);
  }
}

TEST_CASE("class sizes") {
  const GroupG &gg = the_group();
  CHECK(conj_class(gg.G, gg.u[0]).size() == 6);
  CHECK(conj_class(gg.G, gg.c).size() == 80);
  CHECK(conj_class(gg.G, Perm(40)).size() == 1);
  CHECK_THROWS_AS(conj_class(gg.G, Perm::from_cycles(40, {{0, 1}})),
                  std::invalid_argument);
}

TEST_CASE("star and structure certificates pass") {
  const GroupG &gg = the_group();
  CHECK(certify_star(gg).pass());
  CHECK(certify_24(gg).pass());
}

TEST_CASE("J0 is a minimal normal subgroup (15-element transitivity)") {
  const GroupG &gg = the_group();
  // conjugation closure of any nonidentity element of J0 spans all of J0
  for (auto j : gg.J0idx) {
    if (j == 0)
      continue;
    auto cls = conj_class(gg.G, gg.G.at(j));
    CHECK(cls.size() == 15);
  }
}

TEST_CASE("kernels of phi5 and phi6 both equal J") {
  const GroupG &gg = the_group();
  for (std::uint32_t g = 0; g < gg.G.order(); ++g) {
    CHECK(gg.phi5[g].is_identity() == gg.inJ[g]);
    CHECK(gg.phi6[g].is_identity() == gg.inJ[g]);
  }
}

TEST_CASE("degree-5 image has order 120 and H maps onto F20") {
  const GroupG &gg = the_group();
  GroupEnum img5 = GroupEnum::generate({gg.phi5[gg.cIdx], gg.phi5[gg.dIdx]});
  CHECK(img5.order() == 120);
  CHECK(has_trivial_o2(img5));
  std::vector<Perm> himg;
  for (auto h : gg.Hidx)
    himg.push_back(gg.phi5[h]);
  GroupEnum h5 = GroupEnum::from_elements(himg);
  CHECK(h5.order() == 20);
}

TEST_CASE("presentation witnesses") {
  const GroupG &gg = the_group();
  // S5 witness found by exhaustive pair search in the degree-5 image
  GroupEnum S5 = GroupEnum::generate({Perm::from_cycles(5, {{0, 1, 2, 3, 4}}),
                                      Perm::from_cycles(5, {{0, 1}})});
  Perm t = Perm::from_cycles(5, {{0, 1}});
  bool found = false;
  for (const auto &q : S5.elements())
    if (perm_order(q) == 4 && presentation_witness({t, q}, PresKind::S5) &&
        GroupEnum::generate({t, q}).order() == 120) {
      found = true;
      break;
    }
  CHECK(found);
  // degenerate witness passes the relators but is flagged by order checks
  CHECK(presentation_witness({Perm(5), Perm(5)}, PresKind::S5));
  CHECK(GroupEnum::generate({Perm(5), Perm(5)}).order() == 1);
  // A5 witness: (0 1)(2 3) and (0 2 4) multiply to a 5-cycle
  CHECK(presentation_witness(
      {Perm::from_cycles(5, {{0, 1}, {2, 3}}), Perm::from_cycles(5, {{0, 2, 4}})},
      PresKind::A5));
  // images of (c, d) in G/J0 satisfy the 2.S5 relations
  std::vector<Perm> j0elems;
  for (auto i : gg.J0idx)
    j0elems.push_back(gg.G.at(i));
  GroupEnum J0 = GroupEnum::from_elements(j0elems);
  CosetAction ca = coset_action(gg.G, J0);
  CHECK(ca.degree == 240);
  CHECK(presentation_witness(ca.gen_images, PresKind::TwoS5));
}

TEST_CASE("base folder sizes and certificates") {
  const GroupG &gg = the_group();
  EnumOracle oracle(gg.G);
  Certificate fc("folder");
  Folder f = base_folder(gg, oracle, &fc);
  CHECK(fc.pass());
  CHECK(f.k.size() == 96);
  CHECK(verify_folder(f).pass());
}

TEST_CASE("uniqueness probe") {
  const GroupG &gg = the_group();
  Certificate u = uniqueness_probe(gg);
  CHECK(u.pass());
  CHECK(u.find("index_HJ0_6") != nullptr);
  CHECK(u.find("no_transversal_for_HJ0")->pass);
  CHECK(u.find("unique_transversal_for_H")->pass);
}

TEST_CASE("coset action onto the degree-96 transitive representation") {
  const GroupG &gg = the_group();
  std::vector<Perm> helems;
  for (auto h : gg.Hidx)
    helems.push_back(gg.G.at(h));
  GroupEnum H = GroupEnum::from_elements(helems);
  CosetAction ca = coset_action(gg.G, H);
  CHECK(ca.degree == 96);
  CHECK(orbit_of(ca.gen_images, 0).size() == 96);
}
