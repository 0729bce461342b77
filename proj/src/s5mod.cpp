#include "bolforge/s5mod.hpp"

#include <algorithm>
#include <stdexcept>

namespace bolforge {

namespace {

void require(bool cond, const std::string &msg) {
  if (!cond)
    throw std::runtime_error("s5mod: " + msg);
}

} // namespace

F2Mat perm5_sumzero_mat(const Perm &p5) {
  if (p5.degree() != 5)
    throw std::invalid_argument("perm5_sumzero_mat: degree != 5");
  Perm inv = p5.inverse();
  F2Mat m(4, 4);
  for (int i = 0; i < 4; ++i) {
    bool w[5] = {false, false, false, false, false};
    w[i] = true;
    w[4] = true; // parity fill of the basis vector
    for (int j = 0; j < 4; ++j)
      m.set(i, j, w[inv[j]]);
  }
  return m;
}

F2Mat perm6_mod_center_mat(const Perm &p6) {
  if (p6.degree() != 6)
    throw std::invalid_argument("perm6_mod_center_mat: degree != 6");
  Perm inv = p6.inverse();
  F2Mat m(4, 4);
  for (int i = 0; i < 4; ++i) {
    // basis vector of M: class of e_{i+1} + e_5 (sum-zero, first coord 0)
    bool w[6] = {false, false, false, false, false, false};
    w[i + 1] = true;
    w[5] = true;
    bool out[6];
    for (int j = 0; j < 6; ++j)
      out[j] = w[inv[j]];
    for (int j = 0; j < 4; ++j)
      m.set(i, j, out[0] ^ out[j + 1]);
  }
  return m;
}

F2Mat rho_u(const Perm &p5) {
  F2Mat n = perm5_sumzero_mat(p5);
  bool odd = perm_sign(p5) < 0;
  F2Mat m(8, 8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool v = n.get(i, j);
      if (!odd) {
        m.set(i, j, v);
        m.set(4 + i, 4 + j, v);
      } else {
        m.set(i, 4 + j, v);
        m.set(4 + i, j, v);
      }
    }
  return m;
}

S5Module build_n(const Perm &phi5c, const Perm &phi5d) {
  S5Module mod;
  mod.act = ModuleAction::make(
      GroupTag::S5Pair, {perm5_sumzero_mat(phi5c), perm5_sumzero_mat(phi5d)});
  ModuleDiagnostics d = module_diagnostics(mod.act);
  require(d.irreducible && d.endo_dim == 1,
          "N diagnostics failed (irreducible/endo)");
  return mod;
}

S5Module build_m(const Perm &phi6c, const Perm &phi6d) {
  S5Module mod;
  mod.act = ModuleAction::make(GroupTag::S5Pair, {perm6_mod_center_mat(phi6c),
                                                  perm6_mod_center_mat(phi6d)});
  ModuleDiagnostics d = module_diagnostics(mod.act);
  require(d.irreducible && d.endo_dim == 1,
          "M diagnostics failed (irreducible/endo)");
  return mod;
}

namespace {

/// Orbits of a matrix group (given by generators) on a set of vectors.
std::vector<std::vector<F2Vec>> orbits_on(const std::vector<F2Vec> &vectors,
                                          const std::vector<F2Mat> &gens) {
  std::vector<std::vector<F2Vec>> orbits;
  std::vector<bool> used(vectors.size(), false);
  auto find = [&](const F2Vec &v) -> int {
    for (std::size_t i = 0; i < vectors.size(); ++i)
      if (vectors[i] == v)
        return static_cast<int>(i);
    return -1;
  };
  for (std::size_t s = 0; s < vectors.size(); ++s) {
    if (used[s])
      continue;
    std::vector<int> orb{static_cast<int>(s)};
    used[s] = true;
    for (std::size_t q = 0; q < orb.size(); ++q)
      for (const auto &g : gens) {
        F2Vec w = g.apply(vectors[orb[q]]);
        int j = find(w);
        if (j < 0)
          throw std::runtime_error("orbits_on: set not invariant");
        if (!used[j]) {
          used[j] = true;
          orb.push_back(j);
        }
      }
    std::vector<F2Vec> o;
    for (int i : orb)
      o.push_back(vectors[i]);
    std::sort(o.begin(), o.end(),
              [](const F2Vec &a, const F2Vec &b) { return a.lex_less(b); });
    orbits.push_back(std::move(o));
  }
  return orbits;
}

std::vector<std::size_t> orbit_lengths(const std::vector<F2Vec> &vectors,
                                       const std::vector<F2Mat> &gens) {
  std::vector<std::size_t> lens;
  for (const auto &o : orbits_on(vectors, gens))
    lens.push_back(o.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

} // namespace

USpace build_u(const GroupG &gg) {
  USpace u;
  const Perm &pc = gg.phi5[gg.cIdx];
  const Perm &pd = gg.phi5[gg.dIdx];
  const Perm &ph8 = gg.phi5[gg.h8Idx];
  Perm pp = pc.compose(pd); // phi5(cd), order 5

  u.n = build_n(pc, pd);
  u.uAct = ModuleAction::make(GroupTag::S5Pair, {rho_u(pc), rho_u(pd)});
  u.lAct = ModuleAction::make(
      GroupTag::A5Pair, {rho_u(pd.compose(pd)), rho_u(commutator(pd, pc))});
  u.d1Act = ModuleAction::make(GroupTag::F20Pair, {rho_u(ph8), rho_u(pp)});
  u.pMat = rho_u(pp);
  u.t = rho_u(pc);
  require(perm_sign(pc) < 0, "phi5(c) is not odd");

  u.tau = F2Mat(8, 8);
  for (int i = 0; i < 4; ++i) {
    u.tau.set(i, 4 + i, true);
    u.tau.set(4 + i, i, true);
  }
  require(u.t.mul(u.tau) == u.tau.mul(u.t), "t and tau do not commute");

  {
    std::vector<F2Vec> b1, b2;
    for (int i = 0; i < 4; ++i) {
      b1.push_back(F2Vec::from_bits(8, 1u << i));
      b2.push_back(F2Vec::from_bits(8, 1u << (4 + i)));
    }
    u.U1 = Subspace::span(8, b1);
    u.U2 = Subspace::span(8, b2);
  }
  u.W = fixed_space({u.tau});
  require(u.W.rank() == 4, "dim W != 4");
  for (const auto &b : u.W.basis()) {
    F2Vec lo(4), hi(4);
    for (int i = 0; i < 4; ++i) {
      lo.set(i, b.get(i));
      hi.set(i, b.get(4 + i));
    }
    require(lo == hi, "W is not the diagonal");
  }

  // Submodule inventories.
  auto scanL = submodule_scan(u.lAct);
  require(scanL.size() == 3, "L-submodule count != 3");
  {
    bool found1 = false, found2 = false, foundW = false;
    for (const auto &s : scanL) {
      if (s == u.U1)
        found1 = true;
      if (s == u.U2)
        found2 = true;
      if (s == u.W)
        foundW = true;
    }
    require(found1 && found2 && foundW, "L-submodules are not {U1, U2, W}");
  }
  auto scanD = submodule_scan(u.uAct);
  require(scanD.size() == 1 && scanD[0] == u.W,
          "W is not the unique D-submodule");
  auto scanD1 = submodule_scan(u.d1Act);
  require(scanD1.size() == 3, "D1-submodule count != 3");
  {
    std::vector<Subspace> others;
    for (const auto &s : scanD1)
      if (!(s == u.W))
        others.push_back(s);
    require(others.size() == 2, "W missing from D1-submodules");
    // The scan order is canonical (dimension, then lexicographic basis);
    // T1 is the lexicographically least of the two complements.
    u.T1 = others[0];
    u.T2 = others[1];
  }
  require(u.W.sum(u.T1).rank() == 8 && u.W.intersect(u.T1).rank() == 0,
          "U != W + T1");
  require(u.W.sum(u.T2).rank() == 8 && u.W.intersect(u.T2).rank() == 0,
          "U != W + T2");
  require(u.U1.sum(u.U2).rank() == 8 && u.U1.intersect(u.U2).rank() == 0,
          "U != U1 + U2");
  require(u.T1.sum(u.T2).rank() == 8 && u.T1.intersect(u.T2).rank() == 0,
          "U != T1 + T2");

  // D1-orbit lengths on T1.
  require(orbit_lengths(u.T1.enumerate(),
                        {u.d1Act.gens[0], u.d1Act.gens[1]}) ==
              std::vector<std::size_t>({1, 5, 10}),
          "D1 orbit lengths on T1 != {1,5,10}");

  u.S = build_s(u);
  return u;
}

std::vector<F2Vec> build_s(const USpace &u) {
  std::vector<F2Mat> lgens{u.lAct.gens[0], u.lAct.gens[1]};
  std::vector<F2Vec> S;
  S.push_back(F2Vec(8));
  for (const Subspace *sp : {&u.W, &u.U1, &u.U2}) {
    auto orbs = orbits_on(sp->enumerate(), lgens);
    const std::vector<F2Vec> *five = nullptr;
    for (const auto &o : orbs)
      if (o.size() == 5) {
        require(five == nullptr, "multiple length-5 orbits in a component");
        five = &o;
      }
    require(five != nullptr, "no length-5 orbit");
    for (const auto &v : *five)
      S.push_back(v);
  }
  std::sort(S.begin(), S.end(),
            [](const F2Vec &a, const F2Vec &b) { return a.lex_less(b); });
  require(S.size() == 16, "|S| != 16");
  require(std::unique(S.begin(), S.end()) == S.end(), "S has duplicates");

  // Complement property and S5-invariance.
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      require(!u.T1.contains(S[i] ^ S[j]), "x + y lands in T1");
  for (const auto &g : u.uAct.gens)
    for (const auto &v : S)
      require(std::find(S.begin(), S.end(), g.apply(v)) != S.end(),
              "S not S5-invariant");
  return S;
}

namespace {

F2Mat restrict_to(const Subspace &sp, const F2Mat &m) {
  F2Mat r(sp.rank(), sp.rank());
  for (int i = 0; i < sp.rank(); ++i) {
    F2Vec img = m.apply(sp.basis()[i]);
    F2Vec c = sp.coords_of(img);
    for (int j = 0; j < sp.rank(); ++j)
      r.set(i, j, c.get(j));
  }
  return r;
}

/// Conjugation action on J0 in the 4-bit sum-zero coordinates.
F2Mat j0_conj_mat(const GroupG &gg, std::uint32_t gIdx) {
  F2Mat conj5 = gg.conj_on_j(gIdx);
  F2Mat m(4, 4);
  for (int i = 0; i < 4; ++i) {
    F2Vec e(5);
    e.set(i, true);
    e.set(4, true); // J0 basis vector u_{i+1} u_5
    F2Vec img = conj5.apply(e);
    if (img.popcount() % 2 != 0)
      throw std::runtime_error("j0_conj_mat: image escapes the sum-zero "
                               "subspace");
    for (int j = 0; j < 4; ++j)
      m.set(i, j, img.get(j));
  }
  return m;
}

} // namespace

PsiMap build_psi(const GroupG &gg, const USpace &u) {
  std::uint32_t ppIdx = gg.G.mul_idx(gg.cIdx, gg.dIdx); // cd generates P
  ModuleAction j0act = ModuleAction::make(
      GroupTag::F20Pair,
      {j0_conj_mat(gg, gg.h8Idx), j0_conj_mat(gg, ppIdx)});
  ModuleAction t1act = ModuleAction::make(
      GroupTag::F20Pair, {restrict_to(u.T1, u.d1Act.gens[0]),
                          restrict_to(u.T1, u.d1Act.gens[1])});

  auto homs = hom_space(j0act, t1act);
  require(homs.size() == 1, "hom(J0, T1) dimension != 1");
  require(homs[0].invertible(), "psi is singular");

  PsiMap psi;
  psi.mat = homs[0];
  for (int code = 0; code < 16; ++code) {
    F2Vec c = psi.mat.apply(F2Vec::from_bits(4, code));
    F2Vec v(8);
    for (int j = 0; j < 4; ++j)
      if (c.get(j))
        v ^= u.T1.basis()[j];
    psi.tab[code] = static_cast<std::uint8_t>(v.low_bits());
  }
  require(psi.tab[0] == 0, "psi(0) != 0");
  return psi;
}

Subspace fixed_space(const std::vector<F2Mat> &mats) {
  if (mats.empty())
    throw std::invalid_argument("fixed_space: no matrices");
  int dim = mats[0].nrows();
  F2Mat stacked(dim, dim * static_cast<int>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].nrows() != dim || mats[k].ncols() != dim)
      throw std::invalid_argument("fixed_space: dimension mismatch");
    F2Mat mi = mats[k].plus_identity();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        stacked.set(i, static_cast<int>(k) * dim + j, mi.get(i, j));
  }
  return Subspace::span(dim, kernel(stacked));
}

Certificate certify_modules(const GroupG &gg) {
  Certificate cert("certify_modules");
  const Perm &pc = gg.phi5[gg.cIdx];
  const Perm &pd = gg.phi5[gg.dIdx];
  const Perm &qc = gg.phi6[gg.cIdx];
  const Perm &qd = gg.phi6[gg.dIdx];

  S5Module N = build_n(pc, pd);
  S5Module M = build_m(qc, qd);

  // Singular / nonsingular census of N and the matching orbit split.
  {
    int sing = 0, nonsing = 0;
    for (int bits = 1; bits < 16; ++bits)
      (n_quad(F2Vec::from_bits(4, bits)) == 0 ? sing : nonsing)++;
    cert.add("N_singular_5_nonsingular_10", sing == 5 && nonsing == 10,
             std::to_string(sing) + "/" + std::to_string(nonsing));
    std::vector<F2Vec> nz;
    for (int bits = 1; bits < 16; ++bits)
      nz.push_back(F2Vec::from_bits(4, bits));
    cert.add("N_orbits_5_10", orbit_lengths(nz, N.act.gens) ==
                                  std::vector<std::size_t>({5, 10}));
  }

  // Fixed spaces of an order-3 element ([c,d] has order 3).
  {
    F2Mat x3n = N.act.gens[0].mul(N.act.gens[1].pow(3))
                    .mul(N.act.gens[0])
                    .mul(N.act.gens[1]);
    F2Mat x3m = M.act.gens[0].mul(M.act.gens[1].pow(3))
                    .mul(M.act.gens[0])
                    .mul(M.act.gens[1]);
    cert.add("order3_elements", x3n.order() == 3 && x3m.order() == 3);
    cert.add("C_N_order3_dim_2", fixed_space({x3n}).rank() == 2,
             std::to_string(fixed_space({x3n}).rank()));
    cert.add("C_M_order3_zero", fixed_space({x3m}).rank() == 0,
             std::to_string(fixed_space({x3m}).rank()));
  }

  // Endomorphism dimensions and irreducibility over S5 / A5.
  auto a5_restrict = [](const ModuleAction &act) {
    const F2Mat &c = act.gens[0], &d = act.gens[1];
    F2Mat a = d.mul(d);
    F2Mat b = d.pow(3).mul(c).mul(d).mul(c); // [d, c]
    return ModuleAction::make(GroupTag::A5Pair, {a, b});
  };
  ModuleAction Na5 = a5_restrict(N.act);
  ModuleAction Ma5 = a5_restrict(M.act);
  {
    auto dn = module_diagnostics(N.act);
    auto dm = module_diagnostics(M.act);
    cert.add("N_irreducible_endo1_S5", dn.irreducible && dn.endo_dim == 1);
    cert.add("M_irreducible_endo1_S5", dm.irreducible && dm.endo_dim == 1);
    auto dna = module_diagnostics(Na5);
    auto dma = module_diagnostics(Ma5);
    cert.add("N_abs_irreducible_A5", dna.irreducible && dna.endo_dim == 1);
    cert.add("M_irreducible_endo2_A5", dma.irreducible && dma.endo_dim == 2,
             "endo " + std::to_string(dma.endo_dim));
    cert.add("hom_M_N_over_A5_zero", hom_space(Ma5, Na5).empty());
  }

  // F20 restrictions: M and N become isomorphic; N is free over C4.
  {
    const Perm &ph8 = gg.phi5[gg.h8Idx];
    const Perm &qh8 = gg.phi6[gg.h8Idx];
    Perm pp = pc.compose(pd);
    Perm qp = qc.compose(qd);
    ModuleAction Nf20 = ModuleAction::make(
        GroupTag::F20Pair, {perm5_sumzero_mat(ph8), perm5_sumzero_mat(pp)});
    ModuleAction Mf20 = ModuleAction::make(
        GroupTag::F20Pair,
        {perm6_mod_center_mat(qh8), perm6_mod_center_mat(qp)});
    auto homs = hom_space(Mf20, Nf20);
    cert.add("hom_M_N_over_F20_dim1", homs.size() == 1,
             std::to_string(homs.size()));
    cert.add("hom_M_N_over_F20_invertible",
             homs.size() == 1 && homs[0].invertible());
    auto dn4 = module_diagnostics(N.act, perm5_sumzero_mat(ph8));
    cert.add("N_free_over_C4",
             dn4.free_over_c4.has_value() && *dn4.free_over_c4);
  }

  // J0 with the G-conjugation action is a copy of M.
  {
    ModuleAction j0act = ModuleAction::make(
        GroupTag::S5Pair,
        {j0_conj_mat(gg, gg.cIdx), j0_conj_mat(gg, gg.dIdx)});
    auto homs = hom_space(M.act, j0act);
    cert.add("J0_isomorphic_to_M", homs.size() == 1 && homs[0].invertible());
  }

  // The U space: submodule inventories and the technical facts.
  USpace u = build_u(gg);
  {
    auto c5subs =
        submodule_scan(ModuleAction::make(GroupTag::C5Single, {u.pMat}));
    cert.add("U_C5_submodules_17", c5subs.size() == 17,
             std::to_string(c5subs.size()));
    cert.add("U_L_submodules_3", submodule_scan(u.lAct).size() == 3);
    cert.add("U_D_submodule_unique_W", submodule_scan(u.uAct).size() == 1);
    cert.add("U_D1_submodules_3", submodule_scan(u.d1Act).size() == 3);
    cert.add("T1_orbit_lengths_1_5_10",
             orbit_lengths(u.T1.enumerate(),
                           {u.d1Act.gens[0], u.d1Act.gens[1]}) ==
                 std::vector<std::size_t>({1, 5, 10}));
  }
  {
    Subspace cut = fixed_space({u.t});
    cert.add("C_U_t_dim_4", cut.rank() == 4, std::to_string(cut.rank()));
    cert.add("C_U_t_cap_T1_zero", cut.intersect(u.T1).rank() == 0);
    cert.add("C_U_t_plus_T1_full", cut.sum(u.T1).rank() == 8);
    cert.add("S_size_16", u.S.size() == 16, std::to_string(u.S.size()));
    bool invar = true;
    for (const auto &g : u.uAct.gens)
      for (const auto &v : u.S)
        if (std::find(u.S.begin(), u.S.end(), g.apply(v)) == u.S.end())
          invar = false;
    cert.add("S_invariant_under_S5", invar);
    bool complement = true;
    for (std::size_t i = 0; i < u.S.size() && complement; ++i)
      for (std::size_t j = i + 1; j < u.S.size(); ++j)
        if (u.T1.contains(u.S[i] ^ u.S[j])) {
          complement = false;
          break;
        }
    cert.add("S_complements_T1", complement);
    bool wsing = true;
    for (const auto &v : u.W.enumerate())
      if (u_quad(v) != 0)
        wsing = false;
    cert.add("W_totally_singular", wsing);
  }

  // psi exists, is unique up to scalars, and is invertible.
  {
    PsiMap psi = build_psi(gg, u);
    cert.add("psi_rank_4", psi.mat.rank() == 4);
  }

  return cert;
}

} // namespace bolforge
