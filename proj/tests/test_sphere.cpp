#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aklt/bond.hpp"
#include "aklt/sphere.hpp"

using namespace aklt;

TEST_CASE("builtin distributions have the right support and weights") {
    auto oct = builtin_distribution("octahedron");
    CHECK(oct.points.size() == 6);
    for (const auto& p : oct.points) CHECK(p.w == doctest::Approx(1.0 / 6));

    auto m24 = builtin_distribution("mu24");
    CHECK(m24.points.size() == 24);
    for (const auto& p : m24.points) {
        CHECK(p.w == doctest::Approx(1.0 / 24));
        CHECK(p.v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    // mu24 is not center symmetric: symmetrization doubles the support
    CHECK(symmetrize(m24).points.size() == 48);
    CHECK(distinct_test_count(m24) == 24);

    auto m32 = builtin_distribution("mu32");
    CHECK(m32.points.size() == 32);
    double ico_weight = 0;
    for (std::size_t i = 0; i < 12; ++i) ico_weight += m32.points[i].w;
    CHECK(ico_weight == doctest::Approx(5.0 / 14));
    CHECK(symmetrize(m32).points.size() == 32);  // already center symmetric
    CHECK(distinct_test_count(m32) == 16);

    CHECK_THROWS_AS(builtin_distribution("pyramid"), validation_error);
}

TEST_CASE("symmetrized tetrahedron is the cube") {
    auto sym = symmetrize(builtin_distribution("tetrahedron"));
    CHECK(sym.points.size() == 8);
    for (const auto& p : sym.points) {
        CHECK(p.w == doctest::Approx(1.0 / 8));
        CHECK(std::abs(std::abs(p.v.x) - 1 / std::sqrt(3.0)) < 1e-12);
    }
    auto oct = symmetrize(builtin_distribution("octahedron"));
    CHECK(oct.points.size() == 6);
}

TEST_CASE("frame potentials") {
    auto tet = builtin_distribution("tetrahedron");
    CHECK(frame_potential(tet, 0) == doctest::Approx(1.0));
    CHECK(frame_potential(tet, 2) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    auto oct = builtin_distribution("octahedron");
    CHECK(frame_potential(oct, 2) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK_THROWS_AS(frame_potential(oct, 3), validation_error);

    // f_t(mu) = f_t(mu_sym) for even t, f_t >= 1/(t+1)
    for (const auto& name : builtin_distribution_names()) {
        auto mu = builtin_distribution(name);
        if (mu.isotropic) continue;
        auto sym = symmetrize(mu);
        for (int t : {2, 4, 6}) {
            CHECK(frame_potential(mu, t) ==
                  doctest::Approx(frame_potential(sym, t)).epsilon(1e-12));
            CHECK(frame_potential(mu, t) >= 1.0 / (t + 1) - 1e-12);
        }
    }
}

TEST_CASE("design strengths of the builtins") {
    CHECK(design_strength(builtin_distribution("tetrahedron")) == 2);
    CHECK(design_strength(builtin_distribution("octahedron")) == 3);
    CHECK(design_strength(builtin_distribution("cube")) == 3);
    CHECK(design_strength(builtin_distribution("icosahedron")) == 5);
    CHECK(design_strength(builtin_distribution("dodecahedron")) == 5);
    CHECK(design_strength(builtin_distribution("mu24")) == 7);
    CHECK(design_strength(builtin_distribution("mu32")) == 9);
    CHECK(design_strength(builtin_distribution("isotropic")) == kDesignStrengthUnbounded);
    // symmetrization rounds even strengths up to the next odd
    CHECK(design_strength(symmetrize(builtin_distribution("tetrahedron"))) == 3);
}

TEST_CASE("frame-potential lower bound of the squared bond operator trace") {
    // tr[Omega_S(mu)^2] >= (2S-1)^2 / (2S+1), equality iff strength >= 2S
    for (const auto& name : builtin_distribution_names()) {
        auto mu = builtin_distribution(name);
        if (mu.isotropic) continue;
        int strength_sym = design_strength(symmetrize(mu));
        for (int ts = 2; ts <= 8; ++ts) {
            Matrix omega = omega_reduced(Spin(ts), mu);
            double tr2 = std::real((omega * omega).trace());
            double bound = static_cast<double>((ts - 1) * (ts - 1)) / (ts + 1);
            CAPTURE(name);
            CAPTURE(ts);
            CHECK(tr2 >= bound - 1e-10);
            bool saturated = std::abs(tr2 - bound) <= 1e-10;
            CHECK(saturated == (strength_sym >= ts));
        }
    }
}

TEST_CASE("custom distribution files rescale weights") {
    std::string text = R"([{"v":[1,0,0],"w":2},{"v":[0,1,0],"w":2},{"v":[0,0,1],"w":2}])";
    bool rescaled = false;
    auto mu = distribution_from_json_text(text, &rescaled);
    CHECK(rescaled);
    CHECK(mu.points.size() == 3);
    CHECK(mu.points[0].w == doctest::Approx(1.0 / 3));
    CHECK_THROWS_AS(distribution_from_json_text("[{\"v\":[2,0,0],\"w\":1}]"), validation_error);
    CHECK_THROWS_AS(distribution_from_json_text("[]"), validation_error);
}
