#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "aklt/protocol.hpp"

namespace aklt {

// Counter-based generator (philox4x32-10): draws are a pure function of
// (seed, run index, draw index), so runs can be distributed and merged.
class Philox {
  public:
    Philox(std::uint64_t seed, std::uint64_t stream);
    double uniform();                 // [0, 1)
    std::uint32_t next_u32();
    static constexpr const char* name() { return "philox4x32-10"; }

  private:
    void refill();
    std::uint32_t key_[2];
    std::uint32_t counter_[4];
    std::uint32_t out_[4];
    int have_ = 0;
};

struct NoisyStateModel {
    enum class Kind { Target, Depolarized, RankTwoWorst, Custom };
    Kind kind = Kind::Target;
    double epsilon = 0;   // mixing weight for the noise part
    Matrix custom;        // density matrix for Kind::Custom

    static NoisyStateModel target();
    static NoisyStateModel depolarized(double eps);
    static NoisyStateModel rank_two_worst(double eps);
    static NoisyStateModel custom_state(Matrix sigma);  // validated PSD, trace 1
    // "target" | "depolarize:EPS" | "ranktwo:EPS"
    static NoisyStateModel parse(const std::string& text);
    std::string describe() const;
};

struct RunResult {
    std::uint64_t n_runs = 0;
    std::uint64_t n_pass = 0;
    std::uint64_t seed = 0;
    double pass_rate = 0;
    double std_error = 0;  // binomial
};

// Prepared simulation context: protocol operator, ground state, the state
// model resolved into a pure-state mixture, and per-site measurement data.
class Simulator {
  public:
    Simulator(const ProtocolSpec& spec, const NoisyStateModel& state);

    RunResult run(std::uint64_t n_runs, std::uint64_t seed) const;

    // Exact tr(Omega sigma); the oracle the sampled pass rate converges to.
    double exact_pass_probability() const;

    const Vector& ground_state() const { return psi_; }
    double lambda_homogeneous() const;  // throws unless protocol is homogeneous

  private:
    bool single_run(Philox& rng) const;

    Graph graph_;
    SphereDistribution mu_;
    ProtocolOperator op_;
    Vector psi_;
    Matrix sigma_;
    // mixture decomposition of sigma: weights + pure states
    std::vector<double> mix_w_;
    std::vector<Vector> mix_state_;
    std::vector<int> dims_;
    std::vector<double> axis_weights_;
    // measurement-basis rotations per spin value and axis index
    std::map<int, std::vector<Matrix>> rotation_store_;
    std::vector<const std::vector<Matrix>*> site_rotations_;
};

// F = (pass_rate - lambda) / nu for a homogeneous protocol.
double estimate_fidelity_homogeneous(double pass_rate, double lambda, double nu);

}  // namespace aklt
