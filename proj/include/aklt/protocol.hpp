#pragma once

#include <cstdint>
#include <optional>

#include "aklt/bond.hpp"
#include "aklt/graphs.hpp"
#include "aklt/hamiltonian.hpp"
#include "aklt/sphere.hpp"

namespace aklt {

// A full verification protocol: (distribution mu, matching cover, probability
// vector over the cover).
struct ProtocolSpec {
    Graph graph;
    SphereDistribution mu;
    MatchingCover cover;
    std::vector<double> p;

    void validate() const;  // simplex p, matchings valid, cover unions to E
};

// Omega(mu, M, p) = sum_l p_l prod_{e in M_l} Omega_e(mu), applied without
// densifying. An isotropic mu is realized exactly by mu32 (valid for
// S_E <= 9/2 since only moments of order <= 2 S_E enter).
class ProtocolOperator {
  public:
    ProtocolOperator(const Graph& g, const SphereDistribution& mu, MatchingCover cover,
                     std::vector<double> p);

    std::int64_t dim() const { return product_dim(dims_); }
    int cover_size() const { return static_cast<int>(cover_.size()); }
    const MatchingCover& cover() const { return cover_; }
    const std::vector<double>& probabilities() const { return p_; }
    void set_probabilities(std::vector<double> p);

    void apply(const Complex* x, Complex* y) const;               // y = Omega x
    void apply_matching(int l, const Complex* x, Complex* y) const;  // y = T_l x
    ComplexOperator deflated(const Vector& psi) const;            // Omega - |psi><psi|
    Matrix dense() const;                                          // guarded
    Matrix matching_test_dense(int l) const;                       // guarded

  private:
    std::vector<int> dims_;
    std::vector<Edge> edges_;
    std::vector<Matrix> bond_;  // per edge of the graph
    std::vector<std::vector<int>> cover_edges_;  // edge indices per matching
    MatchingCover cover_;
    std::vector<double> p_;
};

// T_M(mu) as a dense operator on the full space (guarded).
Matrix matching_test(const Graph& g, const SphereDistribution& mu, const Matching& m);

// Unique AKLT ground state of the graph Hamiltonian.
Vector aklt_ground_state(const Graph& g);

// nu(Omega) = 1 - ||Omega - |Psi><Psi||| for the given protocol.
double protocol_gap(const ProtocolSpec& spec);
double protocol_gap(const ProtocolOperator& op, const Vector& psi);

struct OptimizeResult {
    std::vector<double> p;
    double nu = 0;
    bool converged = false;
    int iterations = 0;
};

// min_p ||sum_l p_l (T_l - |Psi><Psi|)|| over the probability simplex, by a
// cutting-plane method on eigenvector certificates; deterministic, objective
// tolerance 1e-6 (internally 1e-8), ties broken toward the uniform vector.
OptimizeResult optimize_probabilities(const Graph& g, const SphereDistribution& mu,
                                      const MatchingCover& cover);

// Largest singular value of P_12 P_23 on the 1-2-3 path that is not 1.
double s_of_triple(Spin s1, Spin s2, Spin s3);
// s(G) = max over adjacent edge pairs; 0 when no two edges share a vertex.
double s_of_graph(const Graph& g);

// Matching-protocol lower bound (uniform probabilities over m matchings).
struct Theorem4Bound {
    bool applicable = false;   // needs m >= 2, g > 0, s > 0
    double main = 0;           // (nu_SE / m) f(gamma / (s^2 g^2))
    double weak = 0;           // nu_SE gamma / (24 m (S_E - 1)^2)
    double design_main = 0;    // valid when mu_sym is a 2 S_E design
    double design_weak = 0;
};
Theorem4Bound theorem4_bound(double nu_se, double gamma, double s, double g_overlap, int m);

// Coloring-protocol lower bound with p proportional to matching sizes.
struct Theorem5Bound {
    double main = 0;    // nu_SE gamma / |E|
    double design = 0;  // 2 gamma / ((2 S_E + 1) |E|), under the design hypothesis
    bool saturating = false;  // uniform S_e and trivial coloring
};
Theorem5Bound theorem5_bound(double nu_se, double gamma, int edge_count, Spin s_e,
                             const std::vector<int>& class_sizes);

bool is_edge_coloring(const Graph& g, const MatchingCover& cover);

// N = ceil(ln(delta) / ln(1 - nu eps)); nullopt when nu = 0 (never verifies).
std::optional<std::uint64_t> sample_count(double nu, double epsilon, double delta);

// Is Omega = |Psi><Psi| + lambda (1 - |Psi><Psi|)? Returns (flag, lambda).
std::pair<bool, double> homogeneity_check(const Matrix& omega, const Vector& psi,
                                          double tol = 1e-8);

// Cover selection used by the CLI: "trivial", "optimal" (edge coloring),
// "maximal" (all maximal matchings, guarded at 17), "Mn" or "M<k>" (cyclic
// covers of odd cycles).
MatchingCover resolve_cover(const Graph& g, const std::string& kind);

constexpr int kMaximalCoverGuard = 17;

}  // namespace aklt
