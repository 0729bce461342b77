#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bolforge/baseg.hpp"
#include "bolforge/certificate.hpp"
#include "bolforge/loopcore.hpp"
#include "bolforge/s5mod.hpp"

namespace bolforge {

/// Element (g, v) of a semidirect product base x| F_2^mdim with the base
/// acting through per-element matrices: (g1,v1)(g2,v2) =
/// (g1 g2, v1 rho(g2) + v2).
struct SdElt {
  std::uint16_t g = 0;
  std::uint32_t v = 0;

  bool operator==(const SdElt &o) const { return g == o.g && v == o.v; }
};

/// Lexicographic order on packed module vectors, coordinate 0 first.
inline bool vec_lex_less(std::uint32_t a, std::uint32_t b) {
  std::uint32_t diff = a ^ b;
  if (!diff)
    return false;
  std::uint32_t low = diff & (~diff + 1);
  return (a & low) == 0;
}

/// Total order (base index, then module vector lexicographic).
inline bool sdelt_less(const SdElt &a, const SdElt &b) {
  if (a.g != b.g)
    return a.g < b.g;
  return vec_lex_less(a.v, b.v);
}

/// Structured group base x| F_2^mdim. The base group is referenced, not
/// owned. J-space = O_2 coordinates: jdim bits of the base's elementary
/// abelian normal 2-subgroup followed by mdim module bits.
class SemidirectGroup {
public:
  static SemidirectGroup
  make(const GroupEnum &base, int mdim,
       const std::function<F2Mat(std::uint32_t)> &rho_of, int jdim,
       const std::vector<std::uint8_t> &jcode,
       const std::vector<std::uint32_t> &jelt);

  const GroupEnum &base() const { return *base_; }
  int mdim() const { return mdim_; }
  int jdim() const { return jdim_; }
  int jspace_dim() const { return jdim_ + mdim_; }
  std::uint64_t order() const { return base_->order() << mdim_; }

  std::uint32_t rho_apply(std::uint16_t g, std::uint32_t v) const;
  const std::uint32_t *rho_rows(std::uint16_t g) const {
    return rho_.data() + static_cast<std::size_t>(g) * mdim_;
  }

  SdElt mul(SdElt a, SdElt b) const {
    return SdElt{static_cast<std::uint16_t>(base_->mul_idx(a.g, b.g)),
                 rho_apply(b.g, a.v) ^ b.v};
  }
  SdElt inv(SdElt a) const {
    auto gi = static_cast<std::uint16_t>(base_->inv_idx(a.g));
    return SdElt{gi, rho_apply(gi, a.v)};
  }
  SdElt conj(SdElt x, SdElt by) const { return mul(mul(inv(by), x), by); }
  SdElt square(SdElt a) const { return mul(a, a); }
  bool is_unit(SdElt a) const { return a.g == 0 && a.v == 0; }
  bool is_involution(SdElt a) const {
    return !is_unit(a) && is_unit(square(a));
  }

  std::uint64_t flat(SdElt a) const {
    return (static_cast<std::uint64_t>(a.g) << mdim_) | a.v;
  }
  SdElt unflat(std::uint64_t f) const {
    return SdElt{static_cast<std::uint16_t>(f >> mdim_),
                 static_cast<std::uint32_t>(f & vmask_)};
  }

  bool in_jgroup(SdElt a) const { return jcode_[a.g] != 0xFF; }
  std::uint32_t jvec(SdElt a) const {
    return jcode_[a.g] | (a.v << jdim_);
  }
  SdElt from_jvec(std::uint32_t w) const {
    return SdElt{static_cast<std::uint16_t>(jelt_[w & ((1u << jdim_) - 1)]),
                 w >> jdim_};
  }

  /// Conjugation by (g, *) on the J-space: (j, w) -> (j^g, w rho(g)).
  F2Mat conj_on_jspace(std::uint16_t g) const;

private:
  const GroupEnum *base_ = nullptr;
  int mdim_ = 0, jdim_ = 0;
  std::uint32_t vmask_ = 0;
  std::vector<std::uint32_t> rho_;
  std::vector<std::uint8_t> jcode_;
  std::vector<std::uint32_t> jelt_;
};

/// Oracle adapter for loop folders over a semidirect group.
class SdOracle : public MulOracle {
public:
  explicit SdOracle(const SemidirectGroup &sd) : sd_(&sd) {}
  std::uint64_t order() const override { return sd_->order(); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    return sd_->flat(sd_->mul(sd_->unflat(a), sd_->unflat(b)));
  }
  std::uint64_t inv(std::uint64_t a) const override {
    return sd_->flat(sd_->inv(sd_->unflat(a)));
  }

private:
  const SemidirectGroup *sd_;
};

/// The ambient family group G x| U^k with rho = rho_U(phi5(.)) applied
/// blockwise; J acts trivially. Build asserts the structural invariants.
struct BigGroup {
  const GroupG *gg = nullptr;
  const USpace *u = nullptr;
  int k = 1;
  SemidirectGroup sd;
  Certificate cert{"build_gg"};
};

BigGroup build_gg(const GroupG &gg, const USpace &u, int k);

/// Minimal invariant submodules of the 13-dimensional J-space at k = 1,
/// by spinning every nonzero vector: exactly J0 and W.
Certificate socle_check(const BigGroup &bg);

struct InvolutionCensus {
  std::uint64_t c_u_fixed = 0;   // |C_U^k(c)| = 16^k
  std::uint64_t outside = 0;     // involutions outside the J-group
  std::uint64_t class_size = 0;  // |G| / |C(c)| by structured counting
  std::uint64_t n1_coset = 0;    // |c-class  cap  c J-group|
};

InvolutionCensus involution_census(const BigGroup &bg, Certificate *cert);

enum class Variant { Split, Twisted };

/// The family folder data: bigH = H x| T (T = T1^k or T_psi), K = c-class
/// union (J0 + W-part), with the W-part equal to W^k for the split variant
/// and (W^k minus W*) union S* for the twisted one.
struct FamilyFolder {
  Variant variant = Variant::Split;
  std::vector<SdElt> bigH;
  std::vector<SdElt> K;            // canonical order, K[0] = 1
  std::vector<std::uint32_t> K0;   // J-space vectors of K cap J-group
  Subspace HcapJ;                  // subspace of the J-space
  std::function<bool(SdElt)> in_h;
  Certificate cert{"family_folder"};
};

FamilyFolder family_folder(const BigGroup &bg, Variant variant,
                           const PsiMap *psi);

/// Loop folder view of a family folder (handles = flat codes).
Folder as_folder(const BigGroup &bg, const FamilyFolder &ff,
                 const SdOracle &oracle);

/// The data of the general folder criterion: J-group, quotient to S5,
/// L = G'J, K0, K1, H, and the derived counts n0, n1.
struct GeneralCheckContext {
  const SemidirectGroup *sd = nullptr;
  std::vector<bool> inL;              // per base index: in G' J
  std::vector<SdElt> Hlist;
  Subspace HcapJ;                     // in J-space coordinates
  std::vector<std::uint32_t> K0;      // J-space vectors
  std::vector<SdElt> K1;
  std::uint64_t gplus_order = 0;      // |G / J-group|
  std::string name;
};

GeneralCheckContext make_context_base(const GroupG &gg,
                                      const SemidirectGroup &sd);
GeneralCheckContext make_context_family(const BigGroup &bg,
                                        const FamilyFolder &ff);

/// Hypotheses (a)-(e) of the general criterion plus the counting
/// conclusion |K| = 6 n0 = 12 n1. Failed hypotheses name a witness.
Certificate check_general(const GeneralCheckContext &ctx);

/// View of the base group as a semidirect product with trivial module
/// (mdim = 0), for running the general criterion at k = 0.
SemidirectGroup base_as_semidirect(const GroupG &gg);

/// The split extension of the order-120 image by the 6-point permutation
/// module modulo its center, with the analogous H and K. Hypothesis (e)
/// fails here, and so does the pairwise folder check.
struct ControlGroup {
  const GroupG *gg = nullptr;
  SemidirectGroup sd;             // base = gg->img6, mdim = 5, jdim = 0
  std::vector<SdElt> H;           // N(P): order 40
  std::vector<SdElt> K;           // J0 union the odd involutions
  std::vector<bool> inL;          // per base index: in the A5 part
  std::uint32_t aVec = 0;         // the unique nonzero P-fixed vector
  std::vector<std::uint32_t> K0;  // even-weight module vectors
  std::vector<SdElt> K1;          // the 80 odd involutions
  Certificate cert{"control_build"};
};

ControlGroup build_control(const GroupG &gg);
GeneralCheckContext make_context_control(const ControlGroup &ctl);

} // namespace bolforge
