#pragma once

#include "aklt/halfint.hpp"
#include "aklt/linalg.hpp"
#include "aklt/sphere.hpp"

namespace aklt {

// Canonical test projector R_r = 1 - |++><++|_r - |--><--|_r on the
// (2S1+1)(2S2+1)-dimensional pair space.
Matrix canonical_test(Spin s1, Spin s2, const Vec3& r);

struct BondOperator {
    Spin s1, s2;
    Matrix omega;     // weighted average of canonical tests
    double gap = 0;   // nu = 1 - ||P_S omega P_S||
};

// Omega_{S1,S2}(mu); the isotropic distribution is rejected here (it has no
// finite test set) -- use nu_S or the mu32 realization at protocol level.
BondOperator bond_operator(Spin s1, Spin s2, const SphereDistribution& mu);

// The (2S+1)-dimensional reduction: Omega_S(mu) = 1 - 2 int |S><S|_r dmu_sym.
// For the isotropic distribution this is (2S-1)/(2S+1) times the identity.
Matrix omega_reduced(Spin s_total, const SphereDistribution& mu);

// nu_S(mu) = 1 - ||Omega_S(mu)|| = lambda_min(2 int |S><S|_r dmu_sym);
// analytic 2/(2S+1) for the isotropic distribution.
double nu_S(Spin s_total, const SphereDistribution& mu);

}  // namespace aklt
