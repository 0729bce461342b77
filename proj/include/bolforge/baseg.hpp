#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bolforge/certificate.hpp"
#include "bolforge/f2.hpp"
#include "bolforge/loopcore.hpp"
#include "bolforge/perm.hpp"

namespace bolforge {

/// The certified group of order 3840 on 40 points, together with its
/// distinguished subsets and the degree-6 / degree-5 quotient maps. All
/// construction-time invariants are asserted in build_g(); the object is
/// immutable afterwards.
struct GroupG {
  GroupEnum G;            // <c, d>, order 3840
  Perm c, d;
  std::array<Perm, 6> u;  // the ordered conjugates u1..u6 of d^4

  std::vector<std::uint32_t> Jidx, J0idx, Gpidx, Hidx, Pidx, HJ0idx;
  std::vector<bool> inJ, inJ0, inGp, inH, inHJ0; // per element index
  std::vector<std::uint32_t> classC;             // the 80 involutions, sorted

  Perm h8; // the minimal order-8 element of H
  Perm z;  // the unique involution of H; H cap J = {1, z}

  std::vector<Perm> phi6; // per element: conjugation action on (u1..u6)
  std::vector<Perm> phi5; // per element: degree-5 quotient
  GroupEnum img6;         // phi6 image, order 120 on 6 points

  std::uint32_t cIdx = 0, dIdx = 0, h8Idx = 0, zIdx = 0;

  /// 5-bit coordinates on J in the basis (u1..u5); u6 = u1+...+u5.
  std::vector<std::uint8_t> jcode;      // element idx -> code, 0xFF outside J
  std::array<std::uint32_t, 32> jelt{}; // code -> element idx
  /// J0 = [G, J] is the sum-zero subspace of the J coordinates; its 4-bit
  /// code is the first four coordinates.
  std::uint8_t j0code(std::uint32_t idx) const {
    return static_cast<std::uint8_t>(jcode[idx] & 0x0F);
  }
  std::uint32_t j0elt(std::uint8_t code4) const;

  /// Conjugation action of element g on J in the u-coordinates.
  F2Mat conj_on_j(std::uint32_t gIdx) const;
};

/// Build and certify the group from the hard-coded degree-40 generators.
/// Throws on any failed invariant (a transcription error of the
/// generators).
GroupG build_g();

/// Re-evaluate the defining relators, the product identity of u1..u6, and
/// the headline orders, as named checks for reports.
Certificate certify_relations(const GroupG &gg);

/// Property (*): J elementary abelian of order 32, normal, quotient of
/// order 120 acting transitively on 6 points; explicit equivariant
/// isomorphism J = F_2^6 / <all-ones>; G'/J0 of order 120, perfect, with a
/// unique involution; c outside G', so G splits over G'J.
Certificate certify_star(const GroupG &gg);

/// Structure facts: G'' = G' of index 2; the involutions outside J form a
/// single class of size 80; G' has no involutions outside J; N_G(P) has
/// order 40 with normal Sylow 5-subgroup and an element of order 8;
/// N_{J0}(P) = 1.
Certificate certify_24(const GroupG &gg);

enum class PresKind { A5, S5, TwoS5 };

/// Witness check: every relator of the named presentation evaluates to the
/// identity on the supplied tuple. Does not prove the presentation defines
/// the group.
bool presentation_witness(const std::vector<Perm> &elems, PresKind which);

/// The folder (G, N_G(P), J0 union c^G) with K ordered canonically.
/// Asserts |K| = 96 = |G : H|, H cap J = {1, z}, z outside J0, and
/// |c^G cap cJ| = 8.
Folder base_folder(const GroupG &gg, const EnumOracle &oracle,
                   Certificate *cert = nullptr);

/// Restricted uniqueness probe: |G : N_G(P) J0| = 6 and, over all unions of
/// involution classes (plus 1) of the right total size, K = J0 union c^G is
/// the unique exponent-2 transversal for H and none exists for N_G(P) J0.
Certificate uniqueness_probe(const GroupG &gg);

} // namespace bolforge
