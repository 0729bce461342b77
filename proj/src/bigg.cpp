#include "bolforge/bigg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "bolforge/rng.hpp"

namespace bolforge {

namespace {

void require(bool cond, const std::string &msg) {
  if (!cond)
    throw std::runtime_error("bigg: " + msg);
}

std::string sdelt_str(const SemidirectGroup &sd, SdElt a) {
  return "(" + sd.base().at(a.g).cycle_string() + ", v=" +
         std::to_string(a.v) + ")";
}

} // namespace

SemidirectGroup
SemidirectGroup::make(const GroupEnum &base, int mdim,
                      const std::function<F2Mat(std::uint32_t)> &rho_of,
                      int jdim, const std::vector<std::uint8_t> &jcode,
                      const std::vector<std::uint32_t> &jelt) {
  if (mdim < 0 || mdim > 31 || jdim < 0 || jdim > 8)
    throw std::invalid_argument("SemidirectGroup: dimension out of range");
  SemidirectGroup sd;
  sd.base_ = &base;
  sd.mdim_ = mdim;
  sd.jdim_ = jdim;
  sd.vmask_ = mdim ? ((1u << mdim) - 1) : 0;
  sd.jcode_ = jcode;
  sd.jelt_ = jelt;
  sd.rho_.assign(static_cast<std::size_t>(base.order()) * mdim, 0);
  for (std::uint32_t g = 0; g < base.order(); ++g) {
    if (mdim == 0)
      continue;
    F2Mat m = rho_of(g);
    if (m.nrows() != mdim || m.ncols() != mdim)
      throw std::invalid_argument("SemidirectGroup: rho dimension mismatch");
    for (int r = 0; r < mdim; ++r)
      sd.rho_[static_cast<std::size_t>(g) * mdim + r] =
          static_cast<std::uint32_t>(m.row(r).low_bits());
  }
  return sd;
}

std::uint32_t SemidirectGroup::rho_apply(std::uint16_t g,
                                         std::uint32_t v) const {
  const std::uint32_t *rows = rho_rows(g);
  std::uint32_t out = 0;
  while (v) {
    out ^= rows[std::countr_zero(v)];
    v &= v - 1;
  }
  return out;
}

F2Mat SemidirectGroup::conj_on_jspace(std::uint16_t g) const {
  int n = jspace_dim();
  F2Mat m(n, n);
  for (int i = 0; i < jdim_; ++i) {
    std::uint32_t ji = jelt_[1u << i];
    std::uint32_t cj = base_->conj_idx(ji, g);
    std::uint8_t code = jcode_[cj];
    if (code == 0xFF)
      throw std::runtime_error("conj_on_jspace: J-group not normal");
    for (int j = 0; j < jdim_; ++j)
      m.set(i, j, (code >> j) & 1);
  }
  const std::uint32_t *rows = rho_rows(g);
  for (int r = 0; r < mdim_; ++r)
    for (int c = 0; c < mdim_; ++c)
      m.set(jdim_ + r, jdim_ + c, (rows[r] >> c) & 1);
  return m;
}

namespace {

/// 8x8 matrix of rho_U(phi5(g)) expanded blockwise to k copies.
F2Mat expand_blocks(const F2Mat &m8, int k) {
  F2Mat m(8 * k, 8 * k);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (m8.get(i, j))
          m.set(8 * c + i, 8 * c + j, true);
  return m;
}

F2Mat rho_plus_identity(const SemidirectGroup &sd, std::uint16_t g) {
  F2Mat m(sd.mdim(), sd.mdim());
  const std::uint32_t *rows = sd.rho_rows(g);
  for (int r = 0; r < sd.mdim(); ++r) {
    std::uint32_t bits = rows[r] ^ (1u << r);
    for (int c = 0; c < sd.mdim(); ++c)
      if ((bits >> c) & 1)
        m.set(r, c, true);
  }
  return m;
}

/// Enumerate a kernel as packed vectors (sorted lexicographically).
std::vector<std::uint32_t> kernel_vectors(const F2Mat &m) {
  Subspace k = Subspace::span(m.nrows(), kernel(m));
  std::vector<std::uint32_t> out;
  for (const auto &v : k.enumerate())
    out.push_back(static_cast<std::uint32_t>(v.low_bits()));
  return out;
}

} // namespace

BigGroup build_gg(const GroupG &gg, const USpace &u, int k) {
  if (k < 1 || k > 2)
    throw std::invalid_argument("build_gg: k out of supported range {1, 2}");
  BigGroup bg;
  bg.gg = &gg;
  bg.u = &u;
  bg.k = k;
  int mdim = 8 * k;

  std::vector<std::uint8_t> jcode = gg.jcode;
  std::vector<std::uint32_t> jelt(gg.jelt.begin(), gg.jelt.end());
  bg.sd = SemidirectGroup::make(
      gg.G, mdim,
      [&](std::uint32_t idx) { return expand_blocks(rho_u(gg.phi5[idx]), k); },
      5, jcode, jelt);

  // rho factors through J.
  bool trivial_on_j = true;
  for (auto ji : gg.Jidx)
    for (int r = 0; r < mdim; ++r)
      if (bg.sd.rho_rows(static_cast<std::uint16_t>(ji))[r] != (1u << r))
        trivial_on_j = false;
  bg.cert.add("rho_trivial_on_J", trivial_on_j);

  // rho is a homomorphism: generator pairs and 200 seeded random pairs.
  {
    bool hom = true;
    SplitMix64 rng{1};
    auto check_pair = [&](std::uint32_t a, std::uint32_t b) {
      std::uint32_t ab = gg.G.mul_idx(a, b);
      for (int r = 0; r < mdim && hom; ++r) {
        std::uint32_t lhs = bg.sd.rho_apply(
            static_cast<std::uint16_t>(b),
            bg.sd.rho_rows(static_cast<std::uint16_t>(a))[r]);
        if (lhs != bg.sd.rho_rows(static_cast<std::uint16_t>(ab))[r])
          hom = false;
      }
    };
    for (auto a : {gg.cIdx, gg.dIdx})
      for (auto b : {gg.cIdx, gg.dIdx})
        check_pair(a, b);
    for (int i = 0; i < 200; ++i)
      check_pair(static_cast<std::uint32_t>(rng.at_mod(2 * i, gg.G.order())),
                 static_cast<std::uint32_t>(
                     rng.at_mod(2 * i + 1, gg.G.order())));
    bg.cert.add("rho_homomorphism", hom);
  }

  bg.cert.add("order",
              bg.sd.order() == (std::uint64_t{3840} << mdim),
              std::to_string(bg.sd.order()));

  // The J-group is elementary abelian of order 32 * 256^k: squares vanish.
  {
    bool elem = true;
    SplitMix64 rng{2};
    for (auto ji : gg.Jidx)
      for (int s = 0; s < 4; ++s) {
        SdElt x{static_cast<std::uint16_t>(ji),
                static_cast<std::uint32_t>(rng.at(s) &
                                           ((1u << mdim) - 1))};
        if (!bg.sd.is_unit(bg.sd.square(x)))
          elem = false;
      }
    bg.cert.add("jgroup_elementary_abelian", elem);
  }

  // Quotient by the J-group is the order-120 degree-5 image.
  {
    bool kernel_ok = true;
    for (std::uint32_t g = 0; g < gg.G.order(); ++g)
      if (gg.phi5[g].is_identity() != (jcode[g] != 0xFF))
        kernel_ok = false;
    bg.cert.add("quotient_is_s5", kernel_ok);
  }

  if (!bg.cert.pass())
    throw std::runtime_error("build_gg: invariant failed\n" +
                             bg.cert.summary());
  return bg;
}

Certificate socle_check(const BigGroup &bg) {
  Certificate cert("socle_check");
  require(bg.k == 1, "socle_check: k != 1");
  const SemidirectGroup &sd = bg.sd;
  int n = sd.jspace_dim(); // 13
  std::vector<F2Mat> gens{sd.conj_on_jspace(
                              static_cast<std::uint16_t>(bg.gg->cIdx)),
                          sd.conj_on_jspace(
                              static_cast<std::uint16_t>(bg.gg->dIdx))};
  std::map<std::string, Subspace> distinct;
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    Subspace s = spin(n, {F2Vec::from_bits(n, bits)}, gens);
    distinct.emplace(s.to_string(), s);
  }
  std::vector<Subspace> subs;
  for (auto &[key, s] : distinct)
    subs.push_back(s);
  std::vector<Subspace> minimal;
  for (const auto &s : subs) {
    bool is_min = true;
    for (const auto &t : subs)
      if (!(t == s) && s.contains_subspace(t)) {
        is_min = false;
        break;
      }
    if (is_min)
      minimal.push_back(s);
  }
  // Expected: J0 (even-weight J codes) and W (diagonal of the first copy).
  Subspace j0emb(n), wemb(n);
  for (int i = 0; i < 4; ++i)
    j0emb.insert(F2Vec::from_bits(n, (1u << i) | (1u << 4)));
  for (const auto &b : bg.u->W.basis())
    wemb.insert(F2Vec::from_bits(n, static_cast<std::uint32_t>(b.low_bits())
                                        << 5));
  bool match = minimal.size() == 2;
  for (const auto &s : minimal)
    if (!(s == j0emb) && !(s == wemb))
      match = false;
  cert.add("socle_minimal_submodules_J0_W", match,
           std::to_string(minimal.size()) + " minimal submodules");
  return cert;
}

InvolutionCensus involution_census(const BigGroup &bg, Certificate *cert) {
  const SemidirectGroup &sd = bg.sd;
  const GroupG &gg = *bg.gg;
  int mdim = sd.mdim();
  std::uint64_t sixteen_k = std::uint64_t{1} << (4 * bg.k);

  InvolutionCensus cen;
  {
    F2Mat m = rho_plus_identity(sd, static_cast<std::uint16_t>(gg.cIdx));
    cen.c_u_fixed = std::uint64_t{1} << (mdim - m.rank());
  }
  cen.outside = 0;
  for (auto g : gg.classC) {
    F2Mat m = rho_plus_identity(sd, static_cast<std::uint16_t>(g));
    cen.outside += std::uint64_t{1} << (mdim - m.rank());
  }
  // |C(c, 0)| = |C_G(c)| * |C_U(c)| by the structured conjugation formula.
  std::uint64_t cgc = 0;
  for (std::uint32_t g = 0; g < gg.G.order(); ++g)
    if (gg.G.mul_idx(g, gg.cIdx) == gg.G.mul_idx(gg.cIdx, g))
      ++cgc;
  cen.class_size = sd.order() / (cgc * cen.c_u_fixed);
  std::uint64_t base_n1 = 0;
  for (auto x : gg.classC)
    if (gg.jcode[gg.G.mul_idx(gg.G.inv_idx(gg.cIdx), x)] != 0xFF)
      ++base_n1;
  cen.n1_coset = base_n1 * cen.c_u_fixed;

  if (cert) {
    cert->add("census_C_U_c", cen.c_u_fixed == sixteen_k,
              std::to_string(cen.c_u_fixed));
    cert->add("census_involutions_outside", cen.outside == 80 * sixteen_k,
              std::to_string(cen.outside));
    cert->add("census_single_class", cen.class_size == cen.outside,
              "class size " + std::to_string(cen.class_size));
    cert->add("census_n1_coset", cen.n1_coset == 8 * sixteen_k,
              std::to_string(cen.n1_coset));
  }
  return cen;
}

namespace {

/// Sorted module vectors of W^k (all copies in W).
std::vector<std::uint32_t> w_power_set(const USpace &u, int k) {
  std::vector<std::uint32_t> w8;
  for (const auto &v : u.W.enumerate())
    w8.push_back(static_cast<std::uint32_t>(v.low_bits()));
  std::vector<std::uint32_t> out{0};
  for (int c = 0; c < k; ++c) {
    std::vector<std::uint32_t> next;
    for (auto prefix : out)
      for (auto w : w8)
        next.push_back(prefix | (w << (8 * c)));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), vec_lex_less);
  return out;
}

} // namespace

FamilyFolder family_folder(const BigGroup &bg, Variant variant,
                           const PsiMap *psi) {
  const SemidirectGroup &sd = bg.sd;
  const GroupG &gg = *bg.gg;
  const USpace &u = *bg.u;
  int k = bg.k;
  int mdim = sd.mdim();
  std::uint64_t sixteen_k = std::uint64_t{1} << (4 * k);
  if (variant == Variant::Twisted && psi == nullptr)
    throw std::invalid_argument("family_folder: twisted variant needs psi");

  FamilyFolder ff;
  ff.variant = variant;

  // The W-part of K0: W^k for split, (W^k minus W*) union S* for twisted,
  // where W* and S* live in the first copy.
  std::vector<std::uint32_t> wpart = w_power_set(u, k);
  if (variant == Variant::Twisted) {
    std::vector<std::uint32_t> next;
    for (auto w : wpart)
      if ((w & ~0xFFu) != 0) // keep everything not supported on copy 1 alone
        next.push_back(w);
    std::vector<std::uint32_t> sstar;
    for (const auto &v : u.S)
      sstar.push_back(static_cast<std::uint32_t>(v.low_bits()));
    next.insert(next.end(), sstar.begin(), sstar.end());
    std::sort(next.begin(), next.end(), vec_lex_less);
    wpart = std::move(next);
    ff.cert.add("wtilde_size", wpart.size() == sixteen_k,
                std::to_string(wpart.size()));
    if (k == 1) {
      std::sort(sstar.begin(), sstar.end(), vec_lex_less);
      ff.cert.add("wtilde_equals_Sstar_at_k1", wpart == sstar);
    }
  }

  // K = (J0 + wpart) union the involution class of (c, 0).
  std::vector<SdElt> K;
  for (auto j : gg.J0idx)
    for (auto w : wpart)
      K.push_back(SdElt{static_cast<std::uint16_t>(j), w});
  std::size_t k0_size = K.size();
  for (auto g : gg.classC) {
    F2Mat m = rho_plus_identity(sd, static_cast<std::uint16_t>(g));
    for (auto v : kernel_vectors(m))
      K.push_back(SdElt{static_cast<std::uint16_t>(g), v});
  }
  std::sort(K.begin(), K.end(), sdelt_less);
  ff.cert.add("K_size", K.size() == 96 * sixteen_k,
              std::to_string(K.size()));
  ff.cert.add("K0_size", k0_size == 16 * sixteen_k, std::to_string(k0_size));
  ff.cert.add("K_unit_first", sd.is_unit(K[0]));
  ff.K = std::move(K);
  for (const auto &e : ff.K)
    if (sd.in_jgroup(e))
      ff.K0.push_back(sd.jvec(e));
  std::sort(ff.K0.begin(), ff.K0.end(), vec_lex_less);
  ff.cert.add("K_cap_J_size", ff.K0.size() == 16 * sixteen_k,
              std::to_string(ff.K0.size()));

  // T = T1^k (split) or T_psi (twisted), as a subspace of the J-space.
  Subspace tsub(sd.jspace_dim());
  if (variant == Variant::Split) {
    for (int c = 0; c < k; ++c)
      for (const auto &b : u.T1.basis())
        tsub.insert(F2Vec::from_bits(
            sd.jspace_dim(),
            static_cast<std::uint64_t>(b.low_bits()) << (5 + 8 * c)));
  } else {
    for (int i = 0; i < 4; ++i) {
      std::uint64_t jpart = (1u << i) | (1u << 4); // J0 basis u_{i+1} u_5
      std::uint64_t upart = static_cast<std::uint64_t>(psi->tab[1u << i])
                            << 5;
      tsub.insert(F2Vec::from_bits(sd.jspace_dim(), jpart | upart));
    }
    for (int c = 1; c < k; ++c)
      for (const auto &b : u.T1.basis())
        tsub.insert(F2Vec::from_bits(
            sd.jspace_dim(),
            static_cast<std::uint64_t>(b.low_bits()) << (5 + 8 * c)));
  }
  ff.cert.add("T_rank_4k", tsub.rank() == 4 * k,
              std::to_string(tsub.rank()));

  // H normalizes T (checked on H generators and the T basis).
  {
    bool normalizes = true;
    std::uint32_t ppIdx = gg.G.mul_idx(gg.cIdx, gg.dIdx);
    for (auto hi : {gg.h8Idx, ppIdx}) {
      F2Mat cm = sd.conj_on_jspace(static_cast<std::uint16_t>(hi));
      for (const auto &b : tsub.basis())
        if (!tsub.contains(cm.apply(b)))
          normalizes = false;
    }
    ff.cert.add("H_normalizes_T", normalizes);
  }

  // H cap T = 1 and |bigH| = |H| * |T| = 40 * 16^k.
  {
    bool trivial = true;
    for (const auto &tv : tsub.enumerate()) {
      if (tv.is_zero())
        continue;
      SdElt e = sd.from_jvec(static_cast<std::uint32_t>(tv.low_bits()));
      if (e.v == 0 && gg.inH[e.g])
        trivial = false;
    }
    ff.cert.add("H_cap_T_trivial", trivial);
  }
  {
    std::unordered_set<std::uint64_t> seen;
    for (auto hi : gg.Hidx)
      for (const auto &tv : tsub.enumerate()) {
        SdElt t = sd.from_jvec(static_cast<std::uint32_t>(tv.low_bits()));
        SdElt e = sd.mul(SdElt{static_cast<std::uint16_t>(hi), 0}, t);
        require(seen.insert(sd.flat(e)).second, "bigH product collision");
        ff.bigH.push_back(e);
      }
    std::sort(ff.bigH.begin(), ff.bigH.end(), sdelt_less);
    ff.cert.add("bigH_size", ff.bigH.size() == 40 * sixteen_k,
                std::to_string(ff.bigH.size()));
  }

  // H cap J-group = <z> + T.
  ff.HcapJ = tsub;
  ff.HcapJ.insert(F2Vec::from_bits(
      sd.jspace_dim(), sd.jvec(SdElt{static_cast<std::uint16_t>(gg.zIdx), 0})));
  ff.cert.add("HcapJ_rank", ff.HcapJ.rank() == 4 * k + 1,
              std::to_string(ff.HcapJ.rank()));

  // Membership predicate for bigH.
  if (variant == Variant::Split) {
    // (g, v) with g in H and every copy of v in T1.
    std::vector<bool> t1set(256, false);
    for (const auto &v : u.T1.enumerate())
      t1set[v.low_bits()] = true;
    int kk = k;
    const GroupG *pg = &gg;
    ff.in_h = [t1set, kk, pg](SdElt a) {
      if (!pg->inH[a.g])
        return false;
      for (int c = 0; c < kk; ++c)
        if (!t1set[(a.v >> (8 * c)) & 0xFF])
          return false;
      return true;
    };
  } else {
    // (g, v) = (h j, psi(j) + t) with h in H, j in J0, t in 0 + T1^{k-1}.
    std::vector<std::uint8_t> hj(gg.G.order(), 0xFF);
    for (auto hi : gg.Hidx)
      for (auto ji : gg.J0idx) {
        std::uint32_t p = gg.G.mul_idx(hi, ji);
        require(hj[p] == 0xFF, "H J0 decomposition not unique");
        hj[p] = gg.j0code(ji);
      }
    std::vector<bool> t1set(256, false);
    for (const auto &v : u.T1.enumerate())
      t1set[v.low_bits()] = true;
    std::array<std::uint8_t, 16> tab = psi->tab;
    int kk = k;
    ff.in_h = [hj, t1set, tab, kk](SdElt a) {
      std::uint8_t j = hj[a.g];
      if (j == 0xFF)
        return false;
      if ((a.v & 0xFF) != tab[j])
        return false;
      for (int c = 1; c < kk; ++c)
        if (!t1set[(a.v >> (8 * c)) & 0xFF])
          return false;
      return true;
    };
  }
  {
    bool agree = true;
    for (const auto &e : ff.bigH)
      if (!ff.in_h(e))
        agree = false;
    SplitMix64 rng{3};
    std::uint64_t hits = 0;
    for (int i = 0; i < 4096; ++i) {
      SdElt e{static_cast<std::uint16_t>(rng.at_mod(2 * i, gg.G.order())),
              static_cast<std::uint32_t>(rng.at(2 * i + 1) &
                                         ((1u << mdim) - 1))};
      if (ff.in_h(e))
        ++hits;
      bool inlist = std::binary_search(ff.bigH.begin(), ff.bigH.end(), e,
                                       sdelt_less);
      if (ff.in_h(e) != inlist)
        agree = false;
    }
    ff.cert.add("in_h_matches_enumeration", agree,
                std::to_string(hits) + " random hits");
  }

  // K is closed under conjugation by the ambient generators, and K \ {1}
  // consists of involutions.
  {
    std::unordered_set<std::uint64_t> kset;
    for (const auto &e : ff.K)
      kset.insert(sd.flat(e));
    std::vector<SdElt> gens;
    gens.push_back(SdElt{static_cast<std::uint16_t>(gg.cIdx), 0});
    gens.push_back(SdElt{static_cast<std::uint16_t>(gg.dIdx), 0});
    for (int b = 0; b < mdim; ++b)
      gens.push_back(SdElt{0, 1u << b});
    bool closed = true;
    bool involutions = true;
    for (const auto &e : ff.K) {
      if (!sd.is_unit(e) && !sd.is_involution(e))
        involutions = false;
      for (const auto &g : gens)
        if (!kset.count(sd.flat(sd.conj(e, g))))
          closed = false;
    }
    ff.cert.add("K_conjugation_closed", closed);
    ff.cert.add("K_involutions", involutions);
  }

  // K0 is a subgroup for the split variant; for the twisted one it is
  // J0-translation closed but not a subspace.
  {
    std::unordered_set<std::uint32_t> k0set(ff.K0.begin(), ff.K0.end());
    if (variant == Variant::Split) {
      bool closed = true;
      for (auto x : ff.K0)
        for (auto y : ff.K0)
          if (!k0set.count(x ^ y)) {
            closed = false;
            break;
          }
      ff.cert.add("K0_subgroup", closed);
    } else {
      bool translation = true;
      for (int i = 0; i < 4; ++i) {
        std::uint32_t j0b = (1u << i) | (1u << 4);
        for (auto x : ff.K0)
          if (!k0set.count(x ^ j0b))
            translation = false;
      }
      ff.cert.add("K0_J0_translation_closed", translation);
      bool nonlinear = false;
      std::string witness;
      for (auto x : ff.K0) {
        for (auto y : ff.K0)
          if (!k0set.count(x ^ y)) {
            nonlinear = true;
            witness = std::to_string(x) + " + " + std::to_string(y);
            break;
          }
        if (nonlinear)
          break;
      }
      ff.cert.add("K0_not_subspace", nonlinear, witness);
    }
  }

  if (!ff.cert.pass())
    throw std::runtime_error("family_folder: invariant failed\n" +
                             ff.cert.summary());
  return ff;
}

Folder as_folder(const BigGroup &bg, const FamilyFolder &ff,
                 const SdOracle &oracle) {
  const SemidirectGroup &sd = bg.sd;
  Folder f;
  f.mul = &oracle;
  for (const auto &e : ff.bigH)
    f.hset.push_back(sd.flat(e));
  const SemidirectGroup *psd = &sd;
  auto in_h = ff.in_h;
  f.in_h = [psd, in_h](std::uint64_t a) { return in_h(psd->unflat(a)); };
  for (const auto &e : ff.K)
    f.k.push_back(sd.flat(e));
  f.ambient_gens.push_back(
      sd.flat(SdElt{static_cast<std::uint16_t>(bg.gg->cIdx), 0}));
  f.ambient_gens.push_back(
      sd.flat(SdElt{static_cast<std::uint16_t>(bg.gg->dIdx), 0}));
  for (int b = 0; b < sd.mdim(); ++b)
    f.ambient_gens.push_back(sd.flat(SdElt{0, 1u << b}));
  return f;
}

SemidirectGroup base_as_semidirect(const GroupG &gg) {
  std::vector<std::uint32_t> jelt(gg.jelt.begin(), gg.jelt.end());
  return SemidirectGroup::make(
      gg.G, 0, [](std::uint32_t) { return F2Mat(0, 0); }, 5, gg.jcode, jelt);
}

GeneralCheckContext make_context_base(const GroupG &gg,
                                      const SemidirectGroup &sd) {
  GeneralCheckContext ctx;
  ctx.name = "base";
  ctx.sd = &sd;
  ctx.inL = gg.inGp;
  for (auto h : gg.Hidx)
    ctx.Hlist.push_back(SdElt{static_cast<std::uint16_t>(h), 0});
  ctx.HcapJ = Subspace(5);
  ctx.HcapJ.insert(F2Vec::from_bits(5, gg.jcode[gg.zIdx]));
  for (auto j : gg.J0idx)
    ctx.K0.push_back(gg.jcode[j]);
  std::sort(ctx.K0.begin(), ctx.K0.end(), vec_lex_less);
  for (auto x : gg.classC)
    ctx.K1.push_back(SdElt{static_cast<std::uint16_t>(x), 0});
  ctx.gplus_order = gg.G.order() / 32;
  return ctx;
}

GeneralCheckContext make_context_family(const BigGroup &bg,
                                        const FamilyFolder &ff) {
  GeneralCheckContext ctx;
  ctx.name = ff.variant == Variant::Split ? "split" : "twisted";
  ctx.sd = &bg.sd;
  ctx.inL = bg.gg->inGp;
  ctx.Hlist = ff.bigH;
  ctx.HcapJ = ff.HcapJ;
  ctx.K0 = ff.K0;
  for (const auto &e : ff.K)
    if (!bg.sd.in_jgroup(e))
      ctx.K1.push_back(e);
  ctx.gplus_order = bg.sd.order() >> bg.sd.jspace_dim();
  return ctx;
}

Certificate check_general(const GeneralCheckContext &ctx) {
  Certificate cert("check_general_" + ctx.name);
  const SemidirectGroup &sd = *ctx.sd;
  const GroupEnum &B = sd.base();
  int jsd = sd.jspace_dim();

  // (a) (J, H cap J, K0) is a Bol loop folder of exponent 2, via the
  // generic folder verifier over the elementary abelian 2-group.
  {
    XorOracle xo(jsd);
    Folder f;
    f.mul = &xo;
    for (const auto &v : ctx.HcapJ.enumerate())
      f.hset.push_back(v.low_bits());
    const Subspace *hs = &ctx.HcapJ;
    f.in_h = [hs, jsd](std::uint64_t a) {
      return hs->contains(F2Vec::from_bits(jsd, a));
    };
    for (auto v : ctx.K0)
      f.k.push_back(v);
    std::sort(f.k.begin(), f.k.end(), [](std::uint64_t a, std::uint64_t b) {
      return vec_lex_less(static_cast<std::uint32_t>(a),
                          static_cast<std::uint32_t>(b));
    });
    for (int b = 0; b < jsd; ++b)
      f.ambient_gens.push_back(std::uint64_t{1} << b);
    Certificate sub = verify_folder(f);
    cert.add("a_subfolder", sub.pass());
    cert.absorb(sub, "a_subfolder_");
  }

  // K0 is invariant under conjugation by the ambient group.
  {
    std::unordered_set<std::uint32_t> k0set(ctx.K0.begin(), ctx.K0.end());
    bool invariant = true;
    for (const auto &g : B.gens()) {
      F2Mat cm = sd.conj_on_jspace(static_cast<std::uint16_t>(B.idx(g)));
      for (auto v : ctx.K0)
        if (!k0set.count(static_cast<std::uint32_t>(
                cm.apply(F2Vec::from_bits(jsd, v)).low_bits())))
          invariant = false;
    }
    cert.add("K0_G_invariant", invariant);
  }

  // n1 is well defined (two class representatives agree) and n0 = 2 n1.
  std::uint64_t n0 = ctx.K0.size();
  std::uint64_t n1 = 0;
  {
    auto coset_count = [&](const SdElt &a) {
      std::uint64_t n = 0;
      std::uint32_t ai = B.inv_idx(a.g);
      for (const auto &x : ctx.K1)
        if (sd.in_jgroup(SdElt{static_cast<std::uint16_t>(
                             B.mul_idx(ai, x.g)),
                         0}))
          ++n;
      return n;
    };
    require(!ctx.K1.empty(), "check_general: empty K1");
    n1 = coset_count(ctx.K1[0]);
    std::uint64_t n1b = n1;
    for (const auto &x : ctx.K1) {
      std::uint32_t rel = B.mul_idx(B.inv_idx(ctx.K1[0].g), x.g);
      if (!sd.in_jgroup(SdElt{static_cast<std::uint16_t>(rel), 0})) {
        n1b = coset_count(x); // representative from another J-coset
        break;
      }
    }
    cert.add("n1_well_defined", n1 == n1b,
             std::to_string(n1) + " vs " + std::to_string(n1b));
    cert.add("b_n0_equals_2n1", n0 == 2 * n1,
             "n0=" + std::to_string(n0) + " n1=" + std::to_string(n1));
  }

  // (c) |G+ : H+| = 6.
  {
    std::uint64_t jbase_order = std::uint64_t{1} << sd.jdim();
    std::unordered_set<std::uint32_t> hplus;
    for (const auto &h : ctx.Hlist) {
      std::uint32_t best = UINT32_MAX;
      for (std::uint32_t code = 0; code < jbase_order; ++code) {
        SdElt j = sd.from_jvec(code); // module part zero
        best = std::min(best, B.mul_idx(h.g, j.g));
      }
      hplus.insert(best);
    }
    std::uint64_t index = ctx.gplus_order / hplus.size();
    cert.add("c_index_6", index == 6,
             "|G+|=" + std::to_string(ctx.gplus_order) +
                 " |H+|=" + std::to_string(hplus.size()));
  }

  // (d) C_{H cap J}(a) = 1 for every a in K1 (per-element kernel).
  {
    bool ok = true;
    std::string witness;
    int m = ctx.HcapJ.rank();
    for (const auto &a : ctx.K1) {
      F2Mat cm = sd.conj_on_jspace(a.g).plus_identity();
      F2Mat rows(m, jsd);
      for (int i = 0; i < m; ++i)
        rows.row(i) = cm.apply(ctx.HcapJ.basis()[i]);
      if (rows.rank() != m) {
        ok = false;
        witness = "a = " + sdelt_str(sd, a);
        break;
      }
    }
    cert.add("d_centralizer_trivial", ok, witness);
  }

  // (e) every involution of L lies in the J-group; a module coordinate
  // never obstructs membership, so the scan reduces to the base group.
  {
    bool ok = true;
    std::string witness;
    for (std::uint32_t g = 0; g < B.order() && ok; ++g) {
      if (!ctx.inL[g] || sd.in_jgroup(SdElt{static_cast<std::uint16_t>(g), 0}))
        continue;
      if (g != 0 && B.mul_idx(g, g) == 0) {
        ok = false;
        witness = "involution " + B.at(g).cycle_string() + " in L outside J";
      }
    }
    cert.add("e_L_involutions_in_J", ok, witness);
  }

  // Counting conclusion: |K| = 6 n0 = 12 n1.
  {
    std::uint64_t ksize = ctx.K0.size() + ctx.K1.size();
    cert.add("count_K_6n0_12n1", ksize == 6 * n0 && ksize == 12 * n1,
             "|K|=" + std::to_string(ksize));
  }

  return cert;
}

ControlGroup build_control(const GroupG &gg) {
  ControlGroup ctl;
  ctl.gg = &gg;
  const GroupEnum &B = gg.img6;

  // Module: the 6-point permutation module modulo its center, coordinates
  // e_1..e_5 with e_6 = e_1 + ... + e_5.
  auto rho_of = [&B](std::uint32_t idx) {
    const Perm &p = B.at(idx);
    F2Mat m(5, 5);
    for (int i = 0; i < 5; ++i) {
      int img = p[i];
      if (img < 5)
        m.set(i, img, true);
      else
        for (int j = 0; j < 5; ++j)
          m.set(i, j, true);
    }
    return m;
  };
  std::vector<std::uint8_t> jcode(B.order(), 0xFF);
  jcode[0] = 0;
  ctl.sd = SemidirectGroup::make(B, 5, rho_of, 0, jcode, {0});

  GroupEnum D = derived_subgroup(B);
  ctl.cert.add("control_derived_60", D.order() == 60,
               std::to_string(D.order()));
  std::vector<bool> inL(B.order(), false);
  for (const auto &e : D.elements())
    inL[B.idx(e)] = true;

  // P = <p> for the minimal order-5 element; a = its unique fixed vector.
  std::uint32_t pIdx = UINT32_MAX;
  for (std::uint32_t i = 0; i < B.order(); ++i)
    if (perm_order(B.at(i)) == 5) {
      pIdx = i;
      break;
    }
  require(pIdx != UINT32_MAX, "control: no order-5 element");
  std::vector<bool> inP(B.order(), false);
  {
    std::uint32_t x = 0;
    for (int e = 0; e < 5; ++e) {
      inP[x] = true;
      x = B.mul_idx(x, pIdx);
    }
  }
  F2Mat fixp = rho_plus_identity(ctl.sd, static_cast<std::uint16_t>(pIdx));
  auto avecs = kernel_vectors(fixp);
  ctl.cert.add("control_P_fixed_dim1", avecs.size() == 2,
               std::to_string(avecs.size()) + " fixed vectors");
  std::uint32_t a = avecs[0] ? avecs[0] : avecs[1];

  // H = N((p, 0)): conjugate of the generator stays in P with zero module
  // part.
  for (std::uint32_t g = 0; g < B.order(); ++g)
    for (std::uint32_t v = 0; v < 32; ++v) {
      SdElt x{static_cast<std::uint16_t>(g), v};
      SdElt q = ctl.sd.conj(SdElt{static_cast<std::uint16_t>(pIdx), 0}, x);
      if (inP[q.g] && q.v == 0)
        ctl.H.push_back(x);
    }
  ctl.cert.add("control_H_order_40", ctl.H.size() == 40,
               std::to_string(ctl.H.size()));
  {
    bool a_in_h = false;
    for (const auto &h : ctl.H)
      if (h.g == 0 && h.v == a)
        a_in_h = true;
    ctl.cert.add("control_HcapJ_is_a", a_in_h);
  }

  // K0 = the sum-zero submodule (even-weight representatives); check it is
  // the commutator submodule by spinning a weight-2 vector.
  std::vector<std::uint32_t> K0;
  for (std::uint32_t v = 0; v < 32; ++v)
    if (std::popcount(v) % 2 == 0)
      K0.push_back(v);
  {
    std::vector<F2Mat> gens;
    for (const auto &g : B.gens())
      gens.push_back(rho_of(B.idx(g)));
    Subspace j0 = spin(5, {F2Vec::from_bits(5, 0b00011)}, gens);
    bool matches = j0.rank() == 4;
    for (auto v : K0)
      if (!j0.contains(F2Vec::from_bits(5, v)))
        matches = false;
    ctl.cert.add("control_K0_is_commutator_submodule", matches);
  }

  // K1 = involutions outside L = A5-part.
  std::vector<SdElt> K1;
  for (std::uint32_t g = 0; g < B.order(); ++g) {
    if (inL[g] || g == 0 || B.mul_idx(g, g) != 0)
      continue;
    F2Mat m = rho_plus_identity(ctl.sd, static_cast<std::uint16_t>(g));
    for (auto v : kernel_vectors(m))
      K1.push_back(SdElt{static_cast<std::uint16_t>(g), v});
  }
  ctl.cert.add("control_K1_size_80", K1.size() == 80,
               std::to_string(K1.size()));

  for (auto v : K0)
    ctl.K.push_back(SdElt{0, v});
  for (const auto &e : K1)
    ctl.K.push_back(e);
  std::sort(ctl.K.begin(), ctl.K.end(), sdelt_less);

  ctl.inL = std::move(inL);
  ctl.aVec = a;
  ctl.K0 = std::move(K0);
  ctl.K1 = std::move(K1);

  if (!ctl.cert.pass())
    throw std::runtime_error("build_control: failed\n" + ctl.cert.summary());
  return ctl;
}

GeneralCheckContext make_context_control(const ControlGroup &ctl) {
  GeneralCheckContext ctx;
  ctx.name = "control";
  ctx.sd = &ctl.sd;
  ctx.inL = ctl.inL;
  ctx.Hlist = ctl.H;
  ctx.HcapJ = Subspace(5);
  ctx.HcapJ.insert(F2Vec::from_bits(5, ctl.aVec));
  ctx.K0 = ctl.K0;
  ctx.K1 = ctl.K1;
  ctx.gplus_order = 120;
  return ctx;
}

} // namespace bolforge
