#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aklt/bond.hpp"
#include "aklt/spin_ops.hpp"

using namespace aklt;

TEST_CASE("canonical test projector basics") {
    // two qubits along z: diag(0, 1, 1, 0)
    Matrix r = canonical_test(Spin::half(), Spin::half(), {0, 0, 1});
    Matrix want = Matrix::Zero(4, 4);
    want(1, 1) = want(2, 2) = 1;
    CHECK(max_abs(r - want) < 1e-12);

    // projector property for random-ish axes and a rank check
    Vec3 axis = Vec3{0.3, -1.2, 0.4}.normalized();
    for (auto [t1, t2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {2, 4}, {3, 3}}) {
        Matrix rr = canonical_test(Spin(t1), Spin(t2), axis);
        CHECK(max_abs(rr * rr - rr) < 1e-10);
        CHECK(is_hermitian(rr, 1e-12));
        int dim = (t1 + 1) * (t2 + 1);
        CHECK(std::abs(std::real(rr.trace()) - (dim - 2)) < 1e-10);
    }
    // R_r = R_{-r}
    Matrix a = canonical_test(Spin::one(), Spin::one(), axis);
    Matrix b = canonical_test(Spin::one(), Spin::one(), {-axis.x, -axis.y, -axis.z});
    CHECK(max_abs(a - b) < 1e-10);
}

TEST_CASE("bond operator gaps reproduce the published spot values") {
    CHECK(bond_operator(Spin::half(), Spin::half(), builtin_distribution("tetrahedron")).gap ==
          doctest::Approx(2.0 / 3).epsilon(1e-10));
    CHECK(bond_operator(Spin::one(), Spin::one(), builtin_distribution("icosahedron")).gap ==
          doctest::Approx(0.4).epsilon(1e-10));
    CHECK(bond_operator(Spin(3), Spin(3), builtin_distribution("octahedron")).gap ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("bond operator fixes the complement of the max-spin subspace") {
    auto mu = builtin_distribution("cube");
    for (auto [t1, t2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
        auto bo = bond_operator(Spin(t1), Spin(t2), mu);
        Matrix q = Matrix::Identity(bo.omega.rows(), bo.omega.cols()) -
                   max_spin_projector(Spin(t1), Spin(t2)).cast<Complex>();
        CHECK(max_abs(bo.omega * q - q) < 1e-10);  // Omega Q = Q
    }
}

TEST_CASE("nu_S equals the bond gap for every split of the total spin") {
    for (const char* name : {"tetrahedron", "icosahedron", "mu24"}) {
        auto mu = builtin_distribution(name);
        for (int ts = 2; ts <= 6; ++ts) {
            double reference = nu_S(Spin(ts), mu);
            for (int t1 = 1; t1 < ts; ++t1) {
                double split = bond_operator(Spin(t1), Spin(ts - t1), mu).gap;
                CAPTURE(name);
                CAPTURE(ts);
                CAPTURE(t1);
                CHECK(split == doctest::Approx(reference).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("nu_{1/2} is 1 for every distribution") {
    for (const auto& name : builtin_distribution_names())
        CHECK(nu_S(Spin::half(), builtin_distribution(name)) ==
              doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("nu_S monotonicity and the ratio inequality") {
    for (const auto& name : builtin_distribution_names()) {
        auto mu = builtin_distribution(name);
        std::vector<double> nu;
        for (int ts = 1; ts <= 8; ++ts) nu.push_back(nu_S(Spin(ts), mu));
        for (std::size_t i = 0; i + 1 < nu.size(); ++i)
            CHECK(nu[i] >= nu[i + 1] - 1e-10);  // nonincreasing in S
        // nu_{S1} >= ((2 S2 + 1)/(2 S1 + 1)) nu_{S2} for S1 <= S2
        for (int t1 = 1; t1 <= 8; ++t1)
            for (int t2 = t1; t2 <= 8; ++t2) {
                double lhs = nu[t1 - 1];
                double rhs = (static_cast<double>(t2) + 1) / (t1 + 1) * nu[t2 - 1];
                CAPTURE(name);
                CHECK(lhs >= rhs - 1e-10);
            }
        // cap nu_S <= 2/(2S+1)
        for (int ts = 1; ts <= 8; ++ts)
            CHECK(nu[ts - 1] <= 2.0 / (ts + 1) + 1e-10);
    }
}

TEST_CASE("optimality iff the symmetrized distribution is a 2S-design") {
    for (const auto& name : builtin_distribution_names()) {
        auto mu = builtin_distribution(name);
        int strength = design_strength(mu.isotropic ? mu : symmetrize(mu));
        for (int ts = 2; ts <= 8; ++ts) {
            bool optimal = std::abs(nu_S(Spin(ts), mu) - 2.0 / (ts + 1)) <= 1e-10;
            CAPTURE(name);
            CAPTURE(ts);
            CHECK(optimal == (strength >= ts));
        }
    }
}

TEST_CASE("trace identity tr Omega_S = 2S - 1") {
    for (const char* name : {"octahedron", "mu24", "mu32"}) {
        auto mu = builtin_distribution(name);
        for (int ts = 1; ts <= 8; ++ts) {
            Matrix omega = omega_reduced(Spin(ts), mu);
            CHECK(std::abs(std::real(omega.trace()) - (ts - 1)) < 1e-10);
        }
    }
}

TEST_CASE("minimum support: too few points give a vanishing gap") {
    // ceil(S + 1/2) points are needed; fewer force nu_S = 0
    SphereDistribution two_points;
    two_points.name = "two";
    two_points.points = {{Vec3{0, 0, 1}, 0.5}, {Vec3{1, 0, 0}.normalized(), 0.5}};
    // S = 2 needs ceil(2.5) = 3 points
    CHECK(nu_S(Spin(4), two_points) == doctest::Approx(0.0).epsilon(1e-10));
    // S = 3/2 needs exactly 2: a generic 2-point set keeps the gap positive
    SphereDistribution skew = two_points;
    skew.points[1].v = Vec3{1, 0.2, 0.3}.normalized();
    CHECK(nu_S(Spin(3), skew) > 1e-6);
    CHECK(nu_S(Spin(4), skew) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("isotropic distribution handled analytically") {
    auto iso = builtin_distribution("isotropic");
    for (int ts = 1; ts <= 8; ++ts)
        CHECK(nu_S(Spin(ts), iso) == doctest::Approx(2.0 / (ts + 1)).epsilon(1e-15));
    CHECK_THROWS_AS(bond_operator(Spin::one(), Spin::one(), iso), validation_error);
    // mu32 realizes the isotropic value exactly through S = 9/2
    auto m32 = builtin_distribution("mu32");
    for (int ts = 1; ts <= 9; ++ts)
        CHECK(nu_S(Spin(ts), m32) == doctest::Approx(2.0 / (ts + 1)).epsilon(1e-10));
}
