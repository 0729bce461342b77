#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bolforge/baseg.hpp"
#include "bolforge/certificate.hpp"
#include "bolforge/f2.hpp"
#include "bolforge/perm.hpp"

namespace bolforge {

/// 4x4 matrix of a degree-5 permutation on the sum-zero subspace of F_2^5
/// (coordinates = first four entries; the fifth is the parity fill).
F2Mat perm5_sumzero_mat(const Perm &p5);

/// 4x4 matrix of a degree-6 permutation on (sum-zero of F_2^6)/<all-ones>.
F2Mat perm6_mod_center_mat(const Perm &p6);

/// 8x8 matrix of a degree-5 permutation on U = N + N: block-diagonal for
/// even permutations, block swap composed with the diagonal for odd ones.
F2Mat rho_u(const Perm &p5);

struct S5Module {
  ModuleAction act; // matrices for the images of G's generators (c, d)
};

/// N: sum-zero model of the 5-point permutation module. Asserts the
/// diagnostics (irreducible, endomorphism dimension 1).
S5Module build_n(const Perm &phi5c, const Perm &phi5d);

/// M: 6-point permutation module modulo its center. Same assertions.
S5Module build_m(const Perm &phi6c, const Perm &phi6d);

/// The 8-dimensional doubled space with its distinguished subspaces and
/// group actions. D1 is phi5(H) by construction, so the family subgroup
/// H x| T1 lines up without an identification step.
struct USpace {
  S5Module n;
  ModuleAction uAct;  // S5 pair: rho_u of phi5(c), phi5(d)
  ModuleAction lAct;  // A5 pair: rho_u of phi5(d^2), phi5([d,c])
  ModuleAction d1Act; // F20 pair: rho_u of phi5(h8), phi5(cd)
  F2Mat tau;          // pure block swap
  F2Mat t;            // rho_u of the designated transposition phi5(c)
  F2Mat pMat;         // rho_u of the order-5 element phi5(cd)
  Subspace U1, U2, W, T1, T2;
  std::vector<F2Vec> S; // 16 vectors, sorted lexicographically
};

USpace build_u(const GroupG &gg);

/// The nonlinear S5-invariant complement {0} + S0 + S1 + S2 to T1, where
/// S0, S1, S2 are the length-5 orbits of the even subgroup on W, U1, U2.
/// Asserts |S| = 16, invariance under both S5 generator images, and
/// x + y outside T1 for distinct x, y in S.
std::vector<F2Vec> build_s(const USpace &u);

/// F20-equivariant isomorphism J0 -> T1 (unique up to scalars; the hom
/// space is one-dimensional and its generator is invertible).
struct PsiMap {
  F2Mat mat;                        // 4x4, J0 coordinates -> T1 coordinates
  std::array<std::uint8_t, 16> tab; // J0 code -> 8-bit U vector in T1
};

PsiMap build_psi(const GroupG &gg, const USpace &u);

/// Canonical basis of the common fixed space, the intersection of the
/// kernels of (M + I).
Subspace fixed_space(const std::vector<F2Mat> &mats);

/// The module-theoretic certification suite (module facts, submodule
/// counts, fixed spaces, the set S, and psi).
Certificate certify_modules(const GroupG &gg);

} // namespace bolforge
