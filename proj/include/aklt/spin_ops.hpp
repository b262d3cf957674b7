#pragma once

#include <array>

#include "aklt/halfint.hpp"
#include "aklt/linalg.hpp"

namespace aklt {

// Spin operators (S_x, S_y, S_z) of dimension 2S+1, built from the ladder
// operators in the S_z eigenbasis ordered m = S, S-1, ..., -S.
std::array<Matrix, 3> spin_operators(Spin s);

// The component pieces; S_x and S_z are real, S_y purely imaginary.
RealMatrix spin_x_real(Spin s);
RealMatrix spin_y_imag(Spin s);  // S_y = i * spin_y_imag
RealMatrix spin_z_real(Spin s);

// S_r = r . S for a unit vector r.
Matrix spin_along(Spin s, const Vec3& r);

// Rank-1 projector |m><m|_r via the product over (S_r - k)/(m - k).
Matrix spin_eigenprojector(Spin s, int twice_m, const Vec3& r);

// |m>_r as a vector with deterministic phase (first sizable entry real > 0).
Vector spin_eigenvector(Spin s, int twice_m, const Vec3& r);

// |<sign_r|sign_s>|^2 between extremal eigenstates along r and s:
// ((1 +- r.s)/2)^(2S), + for equal signs, - for opposite.
double eigenstate_fidelity(Spin s, const Vec3& r, const Vec3& t, int sign_r, int sign_s);

// (S_1 + S_2)^2 on the pair space; real in this basis.
RealMatrix pair_casimir(Spin s1, Spin s2);

// Projector onto the maximal-total-spin subspace (spin S1+S2) of a pair,
// built by the product formula over lower total-spin sectors.
RealMatrix max_spin_projector(Spin s1, Spin s2);

// || P_S |S1,m1; S2,m2>_{r,s} ||^2 with P_S the max-spin projector.
double pair_outcome_probability(Spin s1, int twice_m1, Spin s2, int twice_m2, const Vec3& r,
                                const Vec3& t);

}  // namespace aklt
