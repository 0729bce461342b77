#include "bolforge/baseg.hpp"

#include <algorithm>
#include <stdexcept>

namespace bolforge {

namespace {

void require(bool cond, const std::string &msg) {
  if (!cond)
    throw std::runtime_error("build_g: " + msg);
}

// The two degree-40 generators, as 0-based cycles.
Perm generator_c() {
  return Perm::from_cycles(
      40, {{0, 3},   {1, 8},   {2, 9},   {5, 10},  {6, 11},
           {12, 20}, {13, 21}, {14, 23}, {15, 22}, {16, 29},
           {17, 28}, {18, 30}, {19, 31}, {32, 34}, {37, 39}});
}

Perm generator_d() {
  return Perm::from_cycles(40, {{0, 1, 3, 5, 7, 6, 4, 2},
                                {8, 12, 24, 17, 9, 13, 25, 16},
                                {10, 14, 26, 19, 11, 15, 27, 18},
                                {20, 29, 37, 33, 22, 30, 39, 34},
                                {21, 31, 38, 35, 23, 28, 36, 32}});
}

std::vector<std::uint32_t> sorted_idx(const GroupEnum &G,
                                      const std::vector<Perm> &elems) {
  std::vector<std::uint32_t> out;
  out.reserve(elems.size());
  for (const auto &e : elems)
    out.push_back(G.idx(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> idx_mask(std::size_t n, const std::vector<std::uint32_t> &s) {
  std::vector<bool> m(n, false);
  for (auto i : s)
    m[i] = true;
  return m;
}

} // namespace

std::uint32_t GroupG::j0elt(std::uint8_t code4) const {
  std::uint8_t parity = 0;
  for (int i = 0; i < 4; ++i)
    parity ^= (code4 >> i) & 1;
  return jelt[static_cast<std::uint8_t>(code4 | (parity << 4))];
}

F2Mat GroupG::conj_on_j(std::uint32_t gIdx) const {
  F2Mat m(5, 5);
  for (int i = 0; i < 5; ++i) {
    std::uint32_t ui = jelt[1u << i];
    std::uint32_t conj = G.conj_idx(ui, gIdx);
    std::uint8_t code = jcode[conj];
    if (code == 0xFF)
      throw std::runtime_error("conj_on_j: J is not normal?");
    for (int j = 0; j < 5; ++j)
      m.set(i, j, (code >> j) & 1);
  }
  return m;
}

GroupG build_g() {
  GroupG gg;
  gg.c = generator_c();
  gg.d = generator_d();
  const Perm &c = gg.c, &d = gg.d;

  // The defining relations.
  Perm cd = c.compose(d);
  Perm d4 = d.compose(d).compose(d).compose(d);
  require(c.compose(c).is_identity(), "c^2 != 1");
  require(perm_order(d) == 8, "d^8 != 1 or order(d) < 8");
  require(perm_order(cd) == 5, "(cd)^5 != 1 or cd trivial");
  require(perm_order(commutator(c, d)) == 3, "[c,d]^3 != 1");
  require(commutator(d4, c).compose(commutator(d4, c)).is_identity(),
          "[d^4,c]^2 != 1");
  Perm w = c.compose(d).compose(c).compose(d.inverse()).compose(d.inverse())
               .compose(c); // c d c d^-2 c
  require(commutator(d4, w).is_identity(), "[d^4, cdcd^-2c] != 1");

  // u1..u6 by the conjugating words, and their product identity.
  gg.u[0] = d4;
  gg.u[1] = conjugate(gg.u[0], c);
  gg.u[2] = conjugate(gg.u[0], c.compose(d));
  gg.u[3] = conjugate(gg.u[0], c.compose(d).compose(c));
  gg.u[4] = conjugate(gg.u[0], c.compose(d).compose(c).compose(d));
  gg.u[5] = conjugate(gg.u[0], c.compose(d).compose(c).compose(d).compose(c));
  Perm prod(40);
  for (const auto &ui : gg.u)
    prod = prod.compose(ui);
  require(prod.is_identity(), "u1 u2 u3 u4 u5 u6 != 1");
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      require(gg.u[i] != gg.u[j], "u_i not distinct");

  gg.G = GroupEnum::generate({c, d});
  require(gg.G.order() == 3840, "|<c,d>| != 3840");
  gg.cIdx = gg.G.idx(c);
  gg.dIdx = gg.G.idx(d);

  // J = <u1..u6>: elementary abelian of order 32 with basis u1..u5.
  std::vector<Perm> jgens(gg.u.begin(), gg.u.end());
  GroupEnum J = GroupEnum::generate(jgens);
  require(J.order() == 32, "|J| != 32");
  for (const auto &x : J.elements()) {
    require(x.compose(x).is_identity(), "J not elementary abelian");
    for (const auto &y : J.elements())
      require(x.compose(y) == y.compose(x), "J not abelian");
  }
  gg.jcode.assign(gg.G.order(), 0xFF);
  for (std::uint8_t code = 0; code < 32; ++code) {
    Perm e(40);
    for (int i = 0; i < 5; ++i)
      if ((code >> i) & 1)
        e = e.compose(gg.u[i]);
    std::uint32_t idx = gg.G.idx(e);
    require(gg.jcode[idx] == 0xFF, "u1..u5 not independent");
    gg.jcode[idx] = code;
    gg.jelt[code] = idx;
  }
  // u6 = u1 u2 u3 u4 u5 must carry code 11111.
  require(gg.jcode[gg.G.idx(gg.u[5])] == 0x1F, "u6 != u1 u2 u3 u4 u5");
  gg.Jidx = sorted_idx(gg.G, J.elements());
  gg.inJ = idx_mask(gg.G.order(), gg.Jidx);
  // Normality of J.
  for (auto ji : gg.Jidx)
    for (auto gi : {gg.cIdx, gg.dIdx})
      require(gg.inJ[gg.G.conj_idx(ji, gi)], "J not normal");

  // J0 = [G, J]: spin of the commutators [gen, u_i] inside the J
  // coordinates.
  {
    std::vector<F2Vec> seeds;
    for (const auto &gen : {c, d})
      for (const auto &ui : gg.u) {
        Perm com = commutator(gen, ui);
        std::uint8_t code = gg.jcode[gg.G.idx(com)];
        require(code != 0xFF, "[g, u_i] escaped J");
        seeds.push_back(F2Vec::from_bits(5, code));
      }
    std::vector<F2Mat> action{gg.conj_on_j(gg.cIdx), gg.conj_on_j(gg.dIdx)};
    Subspace j0 = spin(5, seeds, action);
    require(j0.rank() == 4, "|J0| != 16");
    std::vector<Perm> j0elems;
    for (const auto &v : j0.enumerate())
      j0elems.push_back(
          gg.G.at(gg.jelt[static_cast<std::uint8_t>(v.low_bits())]));
    GroupEnum J0 = GroupEnum::from_elements(j0elems);
    gg.J0idx = sorted_idx(gg.G, J0.elements());
    gg.inJ0 = idx_mask(gg.G.order(), gg.J0idx);
    // J0 is exactly the sum-zero subspace of the J coordinates.
    for (auto i : gg.J0idx) {
      std::uint8_t code = gg.jcode[i];
      int wt = 0;
      for (int b = 0; b < 5; ++b)
        wt += (code >> b) & 1;
      require(wt % 2 == 0, "J0 is not the sum-zero subspace");
    }
  }

  // G' and G''.
  GroupEnum Gp = derived_subgroup(gg.G);
  require(Gp.order() == 1920, "|G'| != 1920");
  gg.Gpidx = sorted_idx(gg.G, Gp.elements());
  gg.inGp = idx_mask(gg.G.order(), gg.Gpidx);

  // phi6: conjugation action on the ordered list (u1..u6).
  std::vector<std::uint32_t> uIdx(6);
  for (int i = 0; i < 6; ++i)
    uIdx[i] = gg.G.idx(gg.u[i]);
  gg.phi6.resize(gg.G.order());
  for (std::uint32_t g = 0; g < gg.G.order(); ++g) {
    std::vector<std::uint16_t> img(6);
    for (int i = 0; i < 6; ++i) {
      std::uint32_t conj = gg.G.conj_idx(uIdx[i], g);
      int j = 0;
      while (j < 6 && uIdx[j] != conj)
        ++j;
      require(j < 6, "X not closed under conjugation");
      img[i] = static_cast<std::uint16_t>(j);
    }
    gg.phi6[g] = Perm::from_images(std::move(img));
  }
  require(gg.phi6[gg.cIdx] ==
              Perm::from_cycles(6, {{0, 1}, {2, 3}, {4, 5}}),
          "phi6(c) != (u1 u2)(u3 u4)(u5 u6)");
  require(gg.phi6[gg.dIdx] == Perm::from_cycles(6, {{1, 2, 3, 4}}),
          "phi6(d) != (u2 u3 u4 u5)");
  gg.img6 = GroupEnum::generate({gg.phi6[gg.cIdx], gg.phi6[gg.dIdx]});
  require(gg.img6.order() == 120, "|phi6(G)| != 120");

  // phi5: coset action of the image on its lexicographically least
  // order-24 subgroup, composed with phi6.
  {
    const GroupEnum &I = gg.img6;
    std::vector<std::vector<std::uint32_t>> subs;
    for (std::uint32_t a = 0; a < I.order(); ++a)
      for (std::uint32_t b = a; b < I.order(); ++b) {
        auto S = GroupEnum::try_generate({I.at(a), I.at(b)}, 24);
        if (!S || S->order() != 24)
          continue;
        auto key = sorted_idx(I, S->elements());
        if (std::find(subs.begin(), subs.end(), key) == subs.end())
          subs.push_back(key);
      }
    require(!subs.empty(), "no order-24 subgroup in phi6(G)");
    std::sort(subs.begin(), subs.end());
    std::vector<Perm> elems;
    for (auto i : subs[0])
      elems.push_back(I.at(i));
    GroupEnum S24 = GroupEnum::from_elements(elems);
    CosetAction ca = coset_action(I, S24);
    require(ca.degree == 5, "coset action degree != 5");
    // Per-element degree-5 images through phi6.
    std::vector<std::uint32_t> rep_of_label(5, UINT32_MAX);
    for (std::uint32_t x = 0; x < I.order(); ++x)
      if (rep_of_label[ca.labels[x]] == UINT32_MAX)
        rep_of_label[ca.labels[x]] = x;
    gg.phi5.resize(gg.G.order());
    for (std::uint32_t g = 0; g < gg.G.order(); ++g) {
      std::uint32_t gi6 = I.idx(gg.phi6[g]);
      std::vector<std::uint16_t> img(5);
      for (int l = 0; l < 5; ++l)
        img[l] = static_cast<std::uint16_t>(
            ca.labels[I.mul_idx(rep_of_label[l], gi6)]);
      gg.phi5[g] = Perm::from_images(std::move(img));
    }
    GroupEnum img5 =
        GroupEnum::generate({gg.phi5[gg.cIdx], gg.phi5[gg.dIdx]});
    require(img5.order() == 120, "|phi5(G)| != 120");
  }
  // Kernels of both quotients equal J (computed independently).
  for (std::uint32_t g = 0; g < gg.G.order(); ++g) {
    require(gg.phi6[g].is_identity() == gg.inJ[g], "ker(phi6) != J");
    require(gg.phi5[g].is_identity() == gg.inJ[g], "ker(phi5) != J");
  }
  // phi5(c) is a transposition (odd involution on 5 points).
  {
    const Perm &pc = gg.phi5[gg.cIdx];
    int moved = 0;
    for (int i = 0; i < 5; ++i)
      if (pc[i] != i)
        ++moved;
    require(moved == 2, "phi5(c) is not a transposition");
  }

  // P = <cd> and H = N_G(P).
  GroupEnum P = GroupEnum::generate({cd});
  require(P.order() == 5, "|P| != 5");
  gg.Pidx = sorted_idx(gg.G, P.elements());
  GroupEnum H = normalizer(gg.G, P);
  require(H.order() == 40, "|N_G(P)| != 40");
  gg.Hidx = sorted_idx(gg.G, H.elements());
  gg.inH = idx_mask(gg.G.order(), gg.Hidx);
  // Minimal order-8 element of H; its 4th power is the unique involution.
  {
    const Perm *best = nullptr;
    int involutions = 0;
    for (const auto &h : H.elements()) {
      int n = perm_order(h);
      if (n == 8 && (!best || h < *best))
        best = &h;
      if (n == 2)
        ++involutions;
    }
    require(best != nullptr, "H has no element of order 8");
    require(involutions == 1, "H does not have a unique involution");
    gg.h8 = *best;
    gg.h8Idx = gg.G.idx(gg.h8);
    gg.z = gg.h8.compose(gg.h8).compose(gg.h8).compose(gg.h8);
    gg.zIdx = gg.G.idx(gg.z);
    require(perm_order(gg.z) == 2, "h8^4 is not an involution");
    require(gg.inJ[gg.zIdx], "z outside J");
    require(!gg.inJ0[gg.zIdx], "z inside J0");
  }

  // The class of c.
  gg.classC = conj_class(gg.G, c);
  require(gg.classC.size() == 80, "|c^G| != 80");
  for (auto i : gg.classC)
    require(!gg.inJ[i], "c^G meets J");

  // H J0 (used by the uniqueness probe); H cap J0 = 1 so the product has
  // exact size 640.
  {
    std::vector<Perm> prod_elems;
    for (auto hi : gg.Hidx)
      for (auto ji : gg.J0idx)
        prod_elems.push_back(gg.G.at(gg.G.mul_idx(hi, ji)));
    GroupEnum HJ0 = GroupEnum::from_elements(prod_elems);
    require(HJ0.order() == 640, "|H J0| != 640");
    gg.HJ0idx = sorted_idx(gg.G, HJ0.elements());
    gg.inHJ0 = idx_mask(gg.G.order(), gg.HJ0idx);
  }

  return gg;
}

Certificate certify_relations(const GroupG &gg) {
  Certificate cert("certify_relations");
  const Perm &c = gg.c, &d = gg.d;
  Perm d4 = d.compose(d).compose(d).compose(d);
  cert.add("rel_c2", c.compose(c).is_identity());
  cert.add("rel_d8", perm_order(d) == 8);
  cert.add("rel_cd5", perm_order(c.compose(d)) == 5);
  cert.add("rel_comm_cd_3", perm_order(commutator(c, d)) == 3);
  cert.add("rel_comm_d4_c_2",
           commutator(d4, c).compose(commutator(d4, c)).is_identity());
  Perm w = c.compose(d).compose(c).compose(d.inverse()).compose(d.inverse())
               .compose(c);
  cert.add("rel_comm_d4_w", commutator(d4, w).is_identity());
  Perm prod(40);
  for (const auto &ui : gg.u)
    prod = prod.compose(ui);
  cert.add("u_product_identity", prod.is_identity());
  cert.add("group_order_3840", gg.G.order() == 3840,
           std::to_string(gg.G.order()));
  cert.add("J_order_32", gg.Jidx.size() == 32);
  cert.add("J0_order_16", gg.J0idx.size() == 16);
  cert.add("Gprime_order_1920", gg.Gpidx.size() == 1920);
  return cert;
}

Certificate certify_star(const GroupG &gg) {
  Certificate cert("certify_star");
  const GroupEnum &G = gg.G;

  // J elementary abelian of order 32, normal, disjoint from the class of c.
  bool j_ok = gg.Jidx.size() == 32;
  for (auto i : gg.Jidx) {
    const Perm &x = G.at(i);
    if (!x.compose(x).is_identity())
      j_ok = false;
  }
  cert.add("J_elementary_abelian_32", j_ok);
  bool j_normal = true;
  for (auto i : gg.Jidx)
    for (auto gi : {gg.cIdx, gg.dIdx})
      if (!gg.inJ[G.conj_idx(i, gi)])
        j_normal = false;
  cert.add("J_normal", j_normal);
  bool disjoint = true;
  for (auto i : gg.classC)
    if (gg.inJ[i])
      disjoint = false;
  cert.add("J_disjoint_from_classC", disjoint);

  // Quotient of order 120 transitive on 6 points; the induced generator
  // images satisfy the S5 relations.
  bool q_ok = gg.img6.order() == 120 &&
              orbit_of({gg.phi6[gg.cIdx], gg.phi6[gg.dIdx]}, 0).size() == 6;
  cert.add("quotient_120_transitive_deg6", q_ok);
  cert.add("quotient_satisfies_s5_relations",
           presentation_witness({gg.phi6[gg.cIdx], gg.phi6[gg.dIdx]},
                                PresKind::S5));

  // Explicit equivariant isomorphism J -> F_2^6/<all-ones> via u_i -> e_i:
  // conjugation by g on u_i must match the phi6(g) coordinate permutation
  // modulo the all-ones vector.
  {
    bool equi = true;
    // Class representative with zero e6-coordinate.
    auto reduce6 = [](std::uint8_t v6) -> std::uint8_t {
      return (v6 & 0x20) ? static_cast<std::uint8_t>((~v6) & 0x3F) : v6;
    };
    for (std::uint8_t code = 0; code < 32 && equi; ++code) {
      for (auto gi : {gg.cIdx, gg.dIdx}) {
        std::uint8_t lhs = gg.jcode[G.conj_idx(gg.jelt[code], gi)];
        // Permute the 6-dim expansion (code, 0) by phi6(g), reduce mod
        // all-ones.
        const Perm &p = gg.phi6[gi];
        std::uint8_t out = 0;
        for (int i = 0; i < 5; ++i)
          if ((code >> i) & 1)
            out |= static_cast<std::uint8_t>(1u << p[i]);
        if (lhs != reduce6(out)) {
          equi = false;
          break;
        }
      }
    }
    cert.add("J_iso_perm_module_mod_center", equi);
  }

  // G'/J0 has order 120, is perfect, and has a unique involution.
  {
    std::vector<Perm> gp_elems, j0_elems;
    for (auto i : gg.Gpidx)
      gp_elems.push_back(G.at(i));
    for (auto i : gg.J0idx)
      j0_elems.push_back(G.at(i));
    GroupEnum Gp = GroupEnum::from_elements(gp_elems);
    GroupEnum J0 = GroupEnum::from_elements(j0_elems);
    CosetAction ca = coset_action(Gp, J0);
    GroupEnum Q = GroupEnum::generate(ca.gen_images);
    bool order_ok = Q.order() == 120;
    cert.add("Gp_mod_J0_order_120", order_ok,
             "order " + std::to_string(Q.order()));
    cert.add("Gp_mod_J0_perfect", derived_subgroup(Q).order() == Q.order());
    int inv = 0;
    for (const auto &x : Q.elements())
      if (!x.is_identity() && x.compose(x).is_identity())
        ++inv;
    cert.add("Gp_mod_J0_unique_involution", inv == 1,
             std::to_string(inv) + " involutions");
  }

  // J <= G' and c outside G' = G'J, so G splits over G'J.
  bool j_in_gp = true;
  for (auto i : gg.Jidx)
    if (!gg.inGp[i])
      j_in_gp = false;
  cert.add("J_inside_Gprime", j_in_gp);
  cert.add("c_outside_GprimeJ", !gg.inGp[gg.cIdx]);

  // J = O2(G): J is a normal 2-subgroup and the order-120 quotient has
  // trivial O2.
  cert.add("quotient_O2_trivial", has_trivial_o2(gg.img6));

  return cert;
}

Certificate certify_24(const GroupG &gg) {
  Certificate cert("certify_24");
  const GroupEnum &G = gg.G;

  // (i) G'' = G' = G'J and |G : G'| = 2.
  {
    std::vector<Perm> gp_elems;
    for (auto i : gg.Gpidx)
      gp_elems.push_back(G.at(i));
    GroupEnum Gp = GroupEnum::from_elements(gp_elems);
    GroupEnum Gpp = derived_subgroup(Gp);
    cert.add("Gpp_equals_Gp", sorted_idx(G, Gpp.elements()) == gg.Gpidx);
    cert.add("index_Gp_2", G.order() == 2 * Gp.order());
    bool gpj = true;
    for (auto i : gg.Jidx)
      if (!gg.inGp[i])
        gpj = false;
    cert.add("GprimeJ_equals_Gprime", gpj);
  }

  // (ii) involutions outside J: exactly 80, all conjugate to c; none in
  // G' \ J.
  {
    int outside = 0, in_gp_outside_j = 0;
    for (std::uint32_t i = 0; i < G.order(); ++i) {
      const Perm &x = G.at(i);
      if (x.is_identity() || !x.compose(x).is_identity())
        continue;
      if (!gg.inJ[i]) {
        ++outside;
        if (gg.inGp[i])
          ++in_gp_outside_j;
      }
    }
    cert.add("involutions_outside_J_80", outside == 80,
             std::to_string(outside));
    bool all_in_class = outside == static_cast<int>(gg.classC.size());
    for (auto i : gg.classC) {
      const Perm &x = G.at(i);
      if (!x.compose(x).is_identity() || gg.inJ[i])
        all_in_class = false;
    }
    cert.add("involutions_outside_J_single_class", all_in_class);
    cert.add("no_involutions_in_Gp_outside_J", in_gp_outside_j == 0,
             std::to_string(in_gp_outside_j));
  }

  // (iii) N_{J0}(P) = 1 and N_G(P) = C8 x| C5.
  {
    std::vector<Perm> pelems;
    for (auto i : gg.Pidx)
      pelems.push_back(G.at(i));
    GroupEnum P = GroupEnum::from_elements(pelems);
    int normalizing = 0;
    for (auto ji : gg.J0idx) {
      bool norm = true;
      for (const auto &p : P.elements())
        if (!P.contains(conjugate(p, G.at(ji))))
          norm = false;
      if (norm)
        ++normalizing;
    }
    cert.add("N_J0_P_trivial", normalizing == 1,
             std::to_string(normalizing) + " normalizing elements");
    cert.add("N_G_P_order_40", gg.Hidx.size() == 40);
    cert.add("H_has_order_8_element", perm_order(gg.h8) == 8);
    bool p_normal = true;
    for (auto hi : gg.Hidx)
      for (const auto &p : P.elements())
        if (!P.contains(conjugate(p, G.at(hi))))
          p_normal = false;
    cert.add("P_normal_in_H", p_normal);
    // P is the unique Sylow 5-subgroup of H: all order-5 elements lie in P.
    bool unique_sylow = true;
    for (auto hi : gg.Hidx)
      if (perm_order(G.at(hi)) == 5 && !P.contains(G.at(hi)))
        unique_sylow = false;
    cert.add("P_unique_sylow5_in_H", unique_sylow);
  }

  // |C_G(c)| * |c^G| = |G|.
  {
    GroupEnum C = centralizer(G, gg.c);
    cert.add("centralizer_class_product",
             C.order() * gg.classC.size() == G.order(),
             "|C|=" + std::to_string(C.order()));
  }

  return cert;
}

bool presentation_witness(const std::vector<Perm> &elems, PresKind which) {
  auto id = [](const Perm &p) { return p.is_identity(); };
  auto pw = [](const Perm &p, int n) {
    Perm acc(p.degree());
    for (int i = 0; i < n; ++i)
      acc = acc.compose(p);
    return acc;
  };
  switch (which) {
  case PresKind::A5: {
    if (elems.size() != 2)
      return false;
    const Perm &a = elems[0], &b = elems[1];
    return id(pw(a, 2)) && id(pw(b, 3)) && id(pw(a.compose(b), 5));
  }
  case PresKind::S5: {
    if (elems.size() != 2)
      return false;
    const Perm &c = elems[0], &d = elems[1];
    return id(pw(c, 2)) && id(pw(d, 4)) && id(pw(c.compose(d), 5)) &&
           id(pw(commutator(c, d), 3));
  }
  case PresKind::TwoS5: {
    if (elems.size() != 2)
      return false;
    const Perm &C = elems[0], &D = elems[1];
    return id(pw(C, 2)) && id(pw(D, 8)) && id(pw(C.compose(D), 5)) &&
           id(pw(commutator(C, D), 3)) && id(commutator(C, pw(D, 4)));
  }
  }
  return false;
}

Folder base_folder(const GroupG &gg, const EnumOracle &oracle,
                   Certificate *cert) {
  const GroupEnum &G = gg.G;
  Folder f;
  f.mul = &oracle;
  for (auto i : gg.Hidx)
    f.hset.push_back(i);
  f.in_h = [&gg](std::uint64_t e) { return gg.inH[e]; };
  std::vector<std::uint64_t> k;
  for (auto i : gg.J0idx)
    k.push_back(i);
  for (auto i : gg.classC)
    k.push_back(i);
  std::sort(k.begin(), k.end());
  f.k = std::move(k);
  f.ambient_gens = {gg.cIdx, gg.dIdx};

  bool sizes = f.k.size() == 96 && G.order() / gg.Hidx.size() == 96;
  bool hj = gg.inJ[gg.zIdx] && !gg.inJ0[gg.zIdx];
  // H cap J = {1, z}
  int hcapj = 0;
  for (auto i : gg.Hidx)
    if (gg.inJ[i])
      ++hcapj;
  // n1 = |c^G cap cJ|
  int n1 = 0;
  for (auto i : gg.classC)
    if (gg.inJ[G.mul_idx(G.inv_idx(gg.cIdx), i)])
      ++n1;
  if (cert) {
    cert->add("K_size_96", f.k.size() == 96, std::to_string(f.k.size()));
    cert->add("index_G_H_96", G.order() / gg.Hidx.size() == 96);
    cert->add("H_cap_J_order_2", hcapj == 2, std::to_string(hcapj));
    cert->add("z_outside_J0", !gg.inJ0[gg.zIdx]);
    cert->add("n1_equals_8", n1 == 8, std::to_string(n1));
  }
  if (!sizes || !hj || hcapj != 2 || n1 != 8)
    throw std::runtime_error("base_folder: size or containment check failed");
  return f;
}

namespace {

/// All conjugacy classes of involutions of G, each as a sorted index list.
std::vector<std::vector<std::uint32_t>>
involution_classes(const GroupEnum &G) {
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<bool> seen(G.order(), false);
  for (std::uint32_t i = 0; i < G.order(); ++i) {
    if (seen[i])
      continue;
    const Perm &x = G.at(i);
    if (x.is_identity() || !x.compose(x).is_identity())
      continue;
    auto cls = conj_class(G, x);
    for (auto j : cls)
      seen[j] = true;
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool transversal_ok(const GroupEnum &G, const std::vector<bool> &inSub,
                    const std::vector<std::uint32_t> &K) {
  for (std::size_t i = 0; i < K.size(); ++i)
    for (std::size_t j = 0; j < K.size(); ++j) {
      if (i == j)
        continue;
      if (inSub[G.mul_idx(K[i], K[j])])
        return false;
    }
  return true;
}

} // namespace

Certificate uniqueness_probe(const GroupG &gg) {
  Certificate cert("uniqueness_probe");
  const GroupEnum &G = gg.G;

  cert.add("index_HJ0_6", G.order() / gg.HJ0idx.size() == 6,
           std::to_string(G.order() / gg.HJ0idx.size()));

  auto classes = involution_classes(G);
  {
    std::string sizes;
    for (const auto &c : classes)
      sizes += std::to_string(c.size()) + " ";
    cert.add("involution_classes_found", !classes.empty(), sizes);
  }

  // Candidate K* = {1} + union of involution classes, total size = index.
  auto search = [&](const std::vector<bool> &inSub, std::size_t index) {
    std::vector<std::vector<std::uint32_t>> found;
    std::size_t nclasses = classes.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nclasses);
         ++mask) {
      std::size_t total = 1;
      for (std::size_t ci = 0; ci < nclasses; ++ci)
        if ((mask >> ci) & 1)
          total += classes[ci].size();
      if (total != index)
        continue;
      std::vector<std::uint32_t> K{0};
      for (std::size_t ci = 0; ci < nclasses; ++ci)
        if ((mask >> ci) & 1)
          K.insert(K.end(), classes[ci].begin(), classes[ci].end());
      if (transversal_ok(G, inSub, K)) {
        std::sort(K.begin(), K.end());
        found.push_back(std::move(K));
      }
    }
    return found;
  };

  auto forHJ0 = search(gg.inHJ0, 6);
  cert.add("no_transversal_for_HJ0", forHJ0.empty(),
           std::to_string(forHJ0.size()) + " candidates admissible");

  auto forH = search(gg.inH, 96);
  std::vector<std::uint32_t> expected;
  for (auto i : gg.J0idx)
    expected.push_back(i);
  for (auto i : gg.classC)
    expected.push_back(i);
  std::sort(expected.begin(), expected.end());
  bool unique = forH.size() == 1 && forH[0] == expected;
  cert.add("unique_transversal_for_H", unique,
           std::to_string(forH.size()) + " admissible unions");

  return cert;
}

} // namespace bolforge
