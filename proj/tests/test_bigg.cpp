#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bolforge/bigg.hpp"
#include "bolforge/rng.hpp"

using namespace bolforge;

static const GroupG &the_group() {
  static GroupG gg = build_g();
  return gg;
}

static const USpace &the_uspace() {
  static USpace u = build_u(the_group());
  return u;
}

static const PsiMap &the_psi() {
  static PsiMap psi = build_psi(the_group(), the_uspace());
  return psi;
}

static const BigGroup &big1() {
  static BigGroup bg = build_gg(the_group(), the_uspace(), 1);
  return bg;
}

TEST_CASE("semidirect law: unit, squares, inverses, associativity") {
  const BigGroup &bg = big1();
  const SemidirectGroup &sd = bg.sd;
  SplitMix64 rng{5};
  SdElt c{static_cast<std::uint16_t>(bg.gg->cIdx), 0};
  CHECK(sd.is_unit(sd.mul(SdElt{0, 0}, SdElt{0, 0})));
  CHECK(sd.is_unit(sd.square(c))); // c^2 = 1 and 0 (rho(c)+1) = 0
  for (int i = 0; i < 10000; ++i) {
    SdElt x{static_cast<std::uint16_t>(rng.at_mod(6 * i, 3840)),
            static_cast<std::uint32_t>(rng.at(6 * i + 1) & 0xFF)};
    SdElt y{static_cast<std::uint16_t>(rng.at_mod(6 * i + 2, 3840)),
            static_cast<std::uint32_t>(rng.at(6 * i + 3) & 0xFF)};
    SdElt z{static_cast<std::uint16_t>(rng.at_mod(6 * i + 4, 3840)),
            static_cast<std::uint32_t>(rng.at(6 * i + 5) & 0xFF)};
    CHECK(sd.mul(sd.mul(x, y), z) == sd.mul(x, sd.mul(y, z)));
    CHECK(sd.is_unit(sd.mul(x, sd.inv(x))));
    CHECK(sd.is_unit(sd.mul(sd.inv(x), x)));
  }
}

TEST_CASE("mismatched k is rejected") {
  CHECK_THROWS_AS(build_gg(the_group(), the_uspace(), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_gg(the_group(), the_uspace(), 3),
                  std::invalid_argument);
}

TEST_CASE("build invariants and censuses at k = 1 and k = 2") {
  for (int k = 1; k <= 2; ++k) {
    BigGroup bg = build_gg(the_group(), the_uspace(), k);
    CHECK(bg.cert.pass());
    CHECK(bg.sd.order() ==
          std::uint64_t{3840} << (8 * k)); // 3840 * 256^k
    Certificate cc("census");
    InvolutionCensus cen = involution_census(bg, &cc);
    CHECK(cc.pass());
    std::uint64_t sixteen_k = std::uint64_t{1} << (4 * k);
    CHECK(cen.c_u_fixed == sixteen_k);
    CHECK(cen.outside == 80 * sixteen_k);
    CHECK(cen.class_size == cen.outside);
    CHECK(cen.n1_coset == 8 * sixteen_k);
  }
}

TEST_CASE("socle at k = 1") {
  CHECK(socle_check(big1()).pass());
}

TEST_CASE("family folders (both variants, both k)") {
  const PsiMap &psi = the_psi();
  for (int k = 1; k <= 2; ++k) {
    BigGroup bg = build_gg(the_group(), the_uspace(), k);
    std::uint64_t sixteen_k = std::uint64_t{1} << (4 * k);
    for (auto var : {Variant::Split, Variant::Twisted}) {
      FamilyFolder ff = family_folder(bg, var, &psi);
      CHECK(ff.cert.pass());
      CHECK(ff.bigH.size() == 40 * sixteen_k);
      CHECK(ff.K.size() == 96 * sixteen_k);
      CHECK(ff.K0.size() == 16 * sixteen_k);
      CHECK(ff.K.size() * ff.bigH.size() == bg.sd.order());
    }
  }
}

TEST_CASE("twisted folder requires psi") {
  CHECK_THROWS_AS(family_folder(big1(), Variant::Twisted, nullptr),
                  std::invalid_argument);
}

TEST_CASE("general criterion passes for base, split, twisted") {
  const GroupG &gg = the_group();
  SemidirectGroup sd0 = base_as_semidirect(gg);
  Certificate base = check_general(make_context_base(gg, sd0));
  CHECK(base.pass());
  CHECK(base.find("b_n0_equals_2n1")->witness == "n0=16 n1=8");

  const PsiMap &psi = the_psi();
  for (int k = 1; k <= 2; ++k) {
    BigGroup bg = build_gg(the_group(), the_uspace(), k);
    for (auto var : {Variant::Split, Variant::Twisted}) {
      FamilyFolder ff = family_folder(bg, var, &psi);
      Certificate cg = check_general(make_context_family(bg, ff));
      CHECK_MESSAGE(cg.pass(), cg.summary());
    }
  }
}

TEST_CASE("negative control: only hypothesis (e) fails") {
  ControlGroup ctl = build_control(the_group());
  CHECK(ctl.cert.pass());
  Certificate cg = check_general(make_context_control(ctl));
  CHECK_FALSE(cg.pass());
  for (const auto &c : cg.checks()) {
    if (c.name == "e_L_involutions_in_J") {
      CHECK_FALSE(c.pass);
      CHECK_FALSE(c.witness.empty());
    } else {
      CHECK_MESSAGE(c.pass, c.name);
    }
  }
}

TEST_CASE("conjugation of a J-group element is (j^g, w rho(g))") {
  const BigGroup &bg = big1();
  const SemidirectGroup &sd = bg.sd;
  const GroupG &gg = *bg.gg;
  SplitMix64 rng{6};
  for (int i = 0; i < 200; ++i) {
    std::uint32_t j = gg.Jidx[rng.at_mod(3 * i, gg.Jidx.size())];
    SdElt x{static_cast<std::uint16_t>(j),
            static_cast<std::uint32_t>(rng.at(3 * i + 1) & 0xFF)};
    SdElt by{static_cast<std::uint16_t>(rng.at_mod(3 * i + 2, 3840)),
             static_cast<std::uint32_t>(rng.at(3 * i + 2) & 0xFF)};
    SdElt got = sd.conj(x, by);
    SdElt want{
        static_cast<std::uint16_t>(gg.G.conj_idx(j, by.g)),
        sd.rho_apply(by.g, x.v)};
    CHECK(got == want);
  }
}

TEST_CASE("K0 of the split folder is a subgroup; twisted is not") {
  const PsiMap &psi = the_psi();
  FamilyFolder split = family_folder(big1(), Variant::Split, &psi);
  FamilyFolder tw = family_folder(big1(), Variant::Twisted, &psi);
  CHECK(split.cert.find("K0_subgroup")->pass);
  CHECK(tw.cert.find("K0_not_subspace")->pass);
  CHECK(tw.cert.find("wtilde_equals_Sstar_at_k1")->pass);
}
