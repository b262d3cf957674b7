#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aklt/hamiltonian.hpp"

using namespace aklt;

TEST_CASE("two-vertex AKLT Hamiltonian is the triplet projector with gap 1") {
    Graph g = catalog("atlas-1");
    auto h = aklt_operator(g);
    CHECK(h.dim() == 4);
    RealMatrix dense = h.dense();
    CHECK(std::abs(dense.trace() - 3.0) < 1e-12);
    CHECK(spectral_gap(g) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("open chain n=3 gaps") {
    // H_{1/2,1/2}(3): gap 2/3
    CHECK(spectral_gap(chain_graph(ChainKind::OpenHalfHalf, 3)) ==
          doctest::Approx(2.0 / 3).epsilon(1e-9));
    // ring n=3: gap 5/6
    CHECK(spectral_gap(chain_graph(ChainKind::Closed, 3)) ==
          doctest::Approx(5.0 / 6).epsilon(1e-9));
    // H_{1,1}(3): gap 1/2
    CHECK(spectral_gap(chain_graph(ChainKind::OpenOneOne, 3)) ==
          doctest::Approx(0.5).epsilon(1e-9));
    // K5: gap 3/5
    CHECK(spectral_gap(catalog("complete-5")) == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("ground space degeneracies of the chain families") {
    CHECK(ground_space(chain_graph(ChainKind::Closed, 5)).degeneracy == 1);
    CHECK(ground_space(chain_graph(ChainKind::OpenHalfHalf, 5)).degeneracy == 1);
    CHECK(ground_space(chain_graph(ChainKind::OpenHalfOne, 4)).degeneracy == 2);
    CHECK(ground_space(chain_graph(ChainKind::OpenOneOne, 4)).degeneracy == 4);
}

TEST_CASE("ground states are annihilated by every edge projector") {
    for (const char* name : {"chain-closed-5", "atlas-6", "star-4"}) {
        Graph g = catalog(name);
        auto h = aklt_operator(g);
        auto gs = ground_space(h);
        CHECK(gs.energy <= kZeroEnergyTol);
        std::vector<int> dims = g.site_dims();
        for (const auto& v : gs.basis) {
            for (const auto& term : h.terms) {
                RealVector out = RealVector::Zero(v.size());
                apply_two_site(term.op, dims, term.i, term.j, v.data(), out.data(), 1.0);
                CHECK(out.norm() <= 1e-8);
            }
        }
    }
}

TEST_CASE("gap orderings across chain families") {
    for (int n = 3; n <= 6; ++n) {
        double hh = spectral_gap(chain_graph(ChainKind::OpenHalfHalf, n));
        double h1 = spectral_gap(chain_graph(ChainKind::OpenHalfOne, n));
        double h11 = spectral_gap(chain_graph(ChainKind::OpenOneOne, n));
        CHECK(hh >= h1 - 1e-9);
        CHECK(h1 >= h11 - 1e-9);
        if (n >= 4 && n != 5)
            CHECK(hh >= spectral_gap(chain_graph(ChainKind::Closed, n)) - 1e-9);
    }
}

TEST_CASE("Knabe and Gosset-Mozgunov bounds at the printed points") {
    // gamma(H11(3)) = 1/2 makes both k=3 bounds vanish
    CHECK(knabe_bound(0.5, 3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gosset_mozgunov_bound(0.5, 3) == doctest::Approx(0.0).epsilon(1e-12));
    double g5 = spectral_gap(chain_graph(ChainKind::OpenOneOne, 5));
    CHECK(knabe_bound(g5, 5) == doctest::Approx(0.218).epsilon(2e-3));
    CHECK(gosset_mozgunov_bound(g5, 5) == doctest::Approx(0.254).epsilon(2e-3));
    double g4 = spectral_gap(chain_graph(ChainKind::OpenOneOne, 4));
    CHECK(gosset_mozgunov_bound(g4, 4) == doctest::Approx(0.207).epsilon(2e-3));
    CHECK_THROWS_AS(knabe_bound(0.5, 2), validation_error);
}

TEST_CASE("iterative path agrees with the dense path on a mid-size chain") {
    // ring n=8 (dim 6561) exercises the dense path; compare its gap against
    // a deflated-Lanczos run of the same operator
    Graph g = chain_graph(ChainKind::Closed, 7);
    auto h = aklt_operator(g);
    double dense_gap = spectral_gap(h);
    // matrix-free lowest eigenpair with ground state deflated by hand
    auto gs = ground_space(h);
    const auto n = h.dim();
    RealOperator op{n, [&](const double* x, double* y) {
        h.apply(x, y);
        Eigen::Map<const RealVector> xm(x, n);
        Eigen::Map<RealVector> ym(y, n);
        for (const auto& b : gs.basis) ym += 20.0 * b.dot(xm) * b;
    }};
    auto pair = lanczos_extreme(op, /*largest=*/false, 900, 1e-10);
    CHECK(pair.value == doctest::Approx(dense_gap).epsilon(1e-8));
}

TEST_CASE("frustration-free check rejects shifted operators") {
    Graph g = catalog("chain-open-3");
    auto h = aklt_operator(g);
    LocalTermOperator shifted = h;
    // add a constant through an identity-looking two-site term
    shifted.terms.push_back({0, 1, RealMatrix::Identity(6, 6)});
    CHECK_THROWS_AS(spectral_gap(shifted), validation_error);
}

TEST_CASE("dimension guards") {
    // a closed chain of 11 spin-1 sites exceeds the sparse guard (3^11)
    CHECK_THROWS_AS(aklt_operator(catalog("chain-closed-11")), guard_error);
    // dense request above the dense guard
    Graph g9 = catalog("chain-closed-9");
    CHECK_THROWS_AS(aklt_operator(g9).dense(), guard_error);
}
