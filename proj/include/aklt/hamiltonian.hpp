#pragma once

#include <string>

#include "aklt/graphs.hpp"
#include "aklt/linalg.hpp"
#include "aklt/spin_ops.hpp"

namespace aklt {

constexpr std::int64_t kDenseDimGuard = 7000;
constexpr std::int64_t kSparseDimGuard = 100000;
constexpr double kZeroEnergyTol = 1e-8;  // "strictly above zero" threshold

// Sum of two-site projector terms on a product space, applied matrix-free.
// Everything is real in the S_z product basis.
struct LocalTermOperator {
    std::vector<int> dims;
    struct Term {
        int i, j;
        RealMatrix op;
    };
    std::vector<Term> terms;

    std::int64_t dim() const { return product_dim(dims); }
    void apply(const double* x, double* y) const;  // y += H x
    RealOperator as_operator() const;
    RealMatrix dense() const;  // guarded at kDenseDimGuard
};

// H_G = sum over edges of the max-spin projector, spins deg(j)/2 or overrides.
LocalTermOperator aklt_operator(const Graph& g);

struct GroundSpace {
    double energy = 0;
    std::vector<RealVector> basis;  // orthonormal zero-energy eigenvectors
    int degeneracy = 0;
};

// Smallest eigenvalue strictly above kZeroEnergyTol. Dense path for
// dim <= kDenseDimGuard, Lanczos with ground-space deflation above.
double spectral_gap(const LocalTermOperator& h);
double spectral_gap(const Graph& g);

// All eigenvectors with eigenvalue <= kZeroEnergyTol.
GroundSpace ground_space(const LocalTermOperator& h);
GroundSpace ground_space(const Graph& g);

// Knabe: c~_k = ((k-1)/(k-2)) (gamma(H11(k)) - 1/(k-1)), valid for n > k > 2.
double knabe_bound(double gamma_open, int k);

// Gosset-Mozgunov: c_k = (5/6)((k^2+k)/(k^2-4)) (gamma(H11(k)) - 6/(k(k+1))),
// valid for n > 2k, k > 2.
double gosset_mozgunov_bound(double gamma_open, int k);

// The four 1D chain families: closed ring, open (1/2,1/2), (1/2,1), (1,1).
enum class ChainKind { Closed, OpenHalfHalf, OpenHalfOne, OpenOneOne };
ChainKind parse_chain_kind(const std::string& name);  // closed|open|openh1|open11
std::string chain_kind_name(ChainKind kind);
Graph chain_graph(ChainKind kind, int n);

}  // namespace aklt
