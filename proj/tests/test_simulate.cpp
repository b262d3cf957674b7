#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "aklt/simulate.hpp"

using namespace aklt;

namespace {

ProtocolSpec make_spec(const std::string& graph_name, const std::string& mu_name,
                       const std::string& cover_kind) {
    Graph g = catalog(graph_name);
    auto cover = resolve_cover(g, cover_kind);
    return {g, builtin_distribution(mu_name), cover,
            std::vector<double>(cover.size(), 1.0 / cover.size())};
}

}  // namespace

TEST_CASE("philox streams are deterministic and independent") {
    Philox a(42, 0), b(42, 0), c(42, 1);
    std::vector<std::uint32_t> xs, ys;
    for (int i = 0; i < 8; ++i) {
        xs.push_back(a.next_u32());
        ys.push_back(b.next_u32());
    }
    CHECK(xs == ys);
    bool differs = false;
    for (int i = 0; i < 8; ++i)
        if (c.next_u32() != xs[i]) differs = true;
    CHECK(differs);
    // uniforms live in [0, 1)
    Philox d(7, 3);
    for (int i = 0; i < 1000; ++i) {
        double u = d.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(std::string(Philox::name()) == "philox4x32-10");
}

TEST_CASE("noise model parsing") {
    CHECK(NoisyStateModel::parse("target").kind == NoisyStateModel::Kind::Target);
    auto dep = NoisyStateModel::parse("depolarize:0.1");
    CHECK(dep.kind == NoisyStateModel::Kind::Depolarized);
    CHECK(dep.epsilon == doctest::Approx(0.1));
    CHECK(NoisyStateModel::parse("ranktwo:0.2").epsilon == doctest::Approx(0.2));
    CHECK_THROWS_AS(NoisyStateModel::parse("gauss:0.1"), validation_error);
    CHECK_THROWS_AS(NoisyStateModel::parse("depolarize:1.5"), validation_error);
}

TEST_CASE("target state always passes") {
    Simulator sim(make_spec("atlas-3", "mu32", "trivial"), NoisyStateModel::target());
    auto res = sim.run(10000, 7);
    CHECK(res.n_pass == res.n_runs);
    CHECK(res.pass_rate == 1.0);
    CHECK(sim.exact_pass_probability() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("identical seeds reproduce bit-identical results") {
    Simulator sim(make_spec("atlas-2", "octahedron", "optimal"),
                  NoisyStateModel::depolarized(0.3));
    auto a = sim.run(2000, 99);
    auto b = sim.run(2000, 99);
    CHECK(a.n_pass == b.n_pass);
    auto c = sim.run(2000, 100);
    CHECK(a.n_pass != c.n_pass);  // astronomically unlikely to tie exactly
}

TEST_CASE("pass rates track the exact trace within three binomial errors") {
    struct Case { const char* graph; const char* mu; const char* cover; NoisyStateModel noise; };
    const Case cases[] = {
        {"atlas-1", "octahedron", "trivial", NoisyStateModel::depolarized(0.2)},
        {"atlas-3", "mu32", "trivial", NoisyStateModel::depolarized(0.15)},
        {"atlas-5", "dodecahedron", "optimal", NoisyStateModel::rank_two_worst(0.1)},
        {"chain-closed-5", "icosahedron", "Mn", NoisyStateModel::depolarized(0.1)},
    };
    int idx = 0;
    for (const auto& c : cases) {
        Simulator sim(make_spec(c.graph, c.mu, c.cover), c.noise);
        double exact = sim.exact_pass_probability();
        auto res = sim.run(30000, 1234 + idx++);
        double sigma = std::max(res.std_error, 1e-6);
        CAPTURE(c.graph);
        CHECK(std::abs(res.pass_rate - exact) <= 3 * sigma);
    }
}

TEST_CASE("rank-two worst-case noise saturates 1 - nu eps") {
    auto spec = make_spec("atlas-3", "mu32", "trivial");
    const double eps = 0.25;
    Simulator sim(spec, NoisyStateModel::rank_two_worst(eps));
    double nu = protocol_gap(spec);
    CHECK(sim.exact_pass_probability() == doctest::Approx(1 - nu * eps).epsilon(1e-9));
}

TEST_CASE("block pass frequency obeys the N-test bound") {
    // (1 - nu eps)^N bounds the all-pass probability of N-test blocks
    auto spec = make_spec("atlas-1", "icosahedron", "trivial");
    const double eps = 0.3;
    Simulator sim(spec, NoisyStateModel::rank_two_worst(eps));
    double nu = protocol_gap(spec);
    const int block = 8;
    const int blocks = 4000;
    Philox seeds(5, 0);
    int all_pass = 0;
    for (int b = 0; b < blocks; ++b) {
        auto res = sim.run(block, 777 + b);
        if (res.n_pass == block) ++all_pass;
    }
    double freq = static_cast<double>(all_pass) / blocks;
    double bound = std::pow(1 - nu * eps, block);
    double sigma = std::sqrt(bound * (1 - bound) / blocks);
    CHECK(freq <= bound + 3 * sigma);
}

TEST_CASE("homogeneous fidelity estimation") {
    auto spec = make_spec("atlas-1", "octahedron", "trivial");
    Simulator sim(spec, NoisyStateModel::target());
    double lambda = sim.lambda_homogeneous();
    CHECK(lambda == doctest::Approx(1.0 / 3).epsilon(1e-9));
    double nu = protocol_gap(spec);
    CHECK(estimate_fidelity_homogeneous(1.0, lambda, nu) == doctest::Approx(1.0));
    CHECK(estimate_fidelity_homogeneous(1.0 - nu * 0.2, lambda, nu) ==
          doctest::Approx(0.8).epsilon(1e-9));

    // a depolarized singlet estimated from simulation
    const double eps = 0.4;
    Simulator noisy(spec, NoisyStateModel::depolarized(eps));
    auto res = noisy.run(50000, 31);
    double fid_true = 1 - eps + eps / 4;  // <psi|sigma|psi> for the 4-dim depolarized state
    double fid_est = estimate_fidelity_homogeneous(res.pass_rate, lambda, nu);
    CHECK(std::abs(fid_est - fid_true) <= 3 * res.std_error / nu + 1e-9);

    // inhomogeneous protocols are rejected
    Simulator tri(make_spec("atlas-3", "mu32", "trivial"), NoisyStateModel::target());
    CHECK_THROWS_AS(tri.lambda_homogeneous(), validation_error);
}

TEST_CASE("custom density matrices are validated") {
    Matrix bad = Matrix::Identity(4, 4);  // trace 4
    CHECK_THROWS_AS(NoisyStateModel::custom_state(bad), validation_error);
    Matrix ok = Matrix::Identity(4, 4) / 4;
    auto model = NoisyStateModel::custom_state(ok);
    Simulator sim(make_spec("atlas-1", "octahedron", "trivial"), model);
    // tr(Omega I/4) = (1 + 3 lambda)/4 = (1 + 1)/4 = 1/2 for lambda = 1/3
    CHECK(sim.exact_pass_probability() == doctest::Approx(0.5).epsilon(1e-9));
}
