#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aklt/spin_ops.hpp"
#include "oracles.hpp"

using namespace aklt;

namespace {

Vec3 unit_from(double a, double b, double c) { return Vec3{a, b, c}.normalized(); }

std::vector<Vec3> random_units(int count, std::uint64_t salt) {
    std::vector<double> raw(3 * count);
    fill_deterministic(raw, salt);
    std::vector<Vec3> out;
    for (int i = 0; i < count; ++i)
        out.push_back(unit_from(raw[3 * i] + 0.01, raw[3 * i + 1], raw[3 * i + 2]));
    return out;
}

}  // namespace

TEST_CASE("spin operators for S=1/2 are the Pauli matrices over two") {
    auto [sx, sy, sz] = spin_operators(Spin::half());
    CHECK(std::abs(sz(0, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(sz(1, 1).real() + 0.5) < 1e-15);
    CHECK(std::abs(sx(0, 1).real() - 0.5) < 1e-15);
    CHECK(std::abs(sx(1, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(sy(0, 1) - Complex(0, -0.5)) < 1e-15);
}

TEST_CASE("spin-1 operators match their printed matrix representations") {
    auto [sx, sy, sz] = spin_operators(Spin::one());
    const double r = 1.0 / std::sqrt(2.0);
    Matrix ex(3, 3), ey(3, 3), ez(3, 3);
    ex << 0, r, 0, r, 0, r, 0, r, 0;
    ey << 0, Complex(0, -r), 0, Complex(0, r), 0, Complex(0, -r), 0, Complex(0, r), 0;
    ez << 1, 0, 0, 0, 0, 0, 0, 0, -1;
    CHECK(max_abs(sx - ex) < 1e-14);
    CHECK(max_abs(sy - ey) < 1e-14);
    CHECK(max_abs(sz - ez) < 1e-14);
}

TEST_CASE("angular momentum commutators close for S up to 3") {
    for (int ts = 1; ts <= 6; ++ts) {
        auto [sx, sy, sz] = spin_operators(Spin(ts));
        CHECK(max_abs(sx * sy - sy * sx - Complex(0, 1) * sz) < 1e-12);
        CHECK(max_abs(sy * sz - sz * sy - Complex(0, 1) * sx) < 1e-12);
        CHECK(max_abs(sz * sx - sx * sz - Complex(0, 1) * sy) < 1e-12);
    }
}

TEST_CASE("spin_along reduces to axis operators and keeps the spectrum") {
    CHECK(max_abs(spin_along(Spin::one(), {0, 0, 1}) - spin_operators(Spin::one())[2]) < 1e-14);
    CHECK(max_abs(spin_along(Spin::half(), {1, 0, 0}) - spin_operators(Spin::half())[0]) < 1e-14);

    Matrix sr = spin_along(Spin::one(), unit_from(1, 1, 1));
    RealVector w = eigenvalues_herm(sr);
    CHECK(std::abs(w(0) + 1) < 1e-10);
    CHECK(std::abs(w(1)) < 1e-10);
    CHECK(std::abs(w(2) - 1) < 1e-10);

    CHECK_THROWS_AS(spin_along(Spin::one(), {1, 1, 0}), validation_error);
}

TEST_CASE("eigenprojectors: closed forms, idempotence, completeness") {
    auto rs = random_units(4, 11);
    for (const auto& r : rs) {
        Matrix proj0 = spin_eigenprojector(Spin::one(), 0, r);
        Matrix sr = spin_along(Spin::one(), r);
        CHECK(max_abs(proj0 - (Matrix::Identity(3, 3) - sr * sr)) < 1e-10);

        Matrix plus = spin_eigenprojector(Spin::half(), 1, r);
        Matrix expected = 0.5 * Matrix::Identity(2, 2) + spin_along(Spin::half(), r);
        CHECK(max_abs(plus - expected) < 1e-10);

        // idempotence and completeness across a few spins
        for (int ts : {1, 2, 3, 4}) {
            Matrix sum = Matrix::Zero(ts + 1, ts + 1);
            for (int tm = -ts; tm <= ts; tm += 2) {
                Matrix p = spin_eigenprojector(Spin(ts), tm, r);
                CHECK(max_abs(p * p - p) < 1e-10);
                CHECK(is_hermitian(p, 1e-10));
                sum += p;
            }
            CHECK(max_abs(sum - Matrix::Identity(ts + 1, ts + 1)) < 1e-10);
        }
    }
    CHECK(max_abs(spin_eigenprojector(Spin::one(), 2, {0, 0, 1}) -
                  Matrix(Eigen::Vector3cd(1, 0, 0).asDiagonal())) < 1e-12);
    CHECK_THROWS_AS(spin_eigenprojector(Spin::one(), 4, {0, 0, 1}), validation_error);
    CHECK_THROWS_AS(spin_eigenprojector(Spin::one(), 1, {0, 0, 1}), validation_error);
}

TEST_CASE("extremal eigenstate fidelities follow the (1 +- r.s)/2 powers") {
    auto rs = random_units(6, 23);
    CHECK(eigenstate_fidelity(Spin(4), rs[0], rs[0], +1, +1) == doctest::Approx(1.0));
    // orthogonal axes, S = 1/2
    Vec3 x{1, 0, 0}, z{0, 0, 1};
    CHECK(eigenstate_fidelity(Spin::half(), x, z, +1, +1) == doctest::Approx(0.5));
    // r.s = 1/2, S = 2, opposite signs: ((1 - 1/2)/2)^4 = 1/256
    Vec3 r{0, 0, 1};
    Vec3 s{std::sqrt(3.0) / 2, 0, 0.5};
    CHECK(eigenstate_fidelity(Spin(4), r, s, +1, -1) == doctest::Approx(1.0 / 256).epsilon(1e-12));

    // cross-check against overlap of projectors: tr(P+ Q+) etc.
    for (int ts : {1, 2, 3}) {
        const Vec3 &a = rs[2], &b = rs[3];
        Matrix pa = spin_eigenprojector(Spin(ts), ts, a);
        Matrix pb = spin_eigenprojector(Spin(ts), ts, b);
        Matrix mb = spin_eigenprojector(Spin(ts), -ts, b);
        CHECK(std::abs((pa * pb).trace().real() - eigenstate_fidelity(Spin(ts), a, b, 1, 1)) <
              1e-10);
        CHECK(std::abs((pa * mb).trace().real() - eigenstate_fidelity(Spin(ts), a, b, 1, -1)) <
              1e-10);
    }
}

TEST_CASE("max-spin projector matches the printed polynomials") {
    // S1 = S2 = 1: P_2 = S.S/2 + (S.S)^2/6 + 1/3
    {
        RealMatrix p = max_spin_projector(Spin::one(), Spin::one());
        RealMatrix sdots = RealMatrix::Zero(9, 9);
        RealMatrix sx = spin_x_real(Spin::one()), sy = spin_y_imag(Spin::one()),
                   sz = spin_z_real(Spin::one());
        auto kron = [](const RealMatrix& a, const RealMatrix& b) {
            RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j)
                    out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
            return out;
        };
        sdots = kron(sx, sx) - kron(sy, sy) + kron(sz, sz);
        RealMatrix expected = sdots / 2 + sdots * sdots / 6 + RealMatrix::Identity(9, 9) / 3;
        CHECK((p - expected).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(p.trace() - 5.0) < 1e-10);  // rank 2(S1+S2)+1
    }
    // S1 = S2 = 3/2: P_3 = 27/160 S.S + 29/360 (S.S)^2 + 1/90 (S.S)^3 + 11/128
    {
        Spin s(3);
        RealMatrix p = max_spin_projector(s, s);
        RealMatrix sx = spin_x_real(s), sy = spin_y_imag(s), sz = spin_z_real(s);
        auto kron = [](const RealMatrix& a, const RealMatrix& b) {
            RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j)
                    out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
            return out;
        };
        RealMatrix sdots = kron(sx, sx) - kron(sy, sy) + kron(sz, sz);
        RealMatrix expected = 27.0 / 160 * sdots + 29.0 / 360 * sdots * sdots +
                              1.0 / 90 * sdots * sdots * sdots +
                              11.0 / 128 * RealMatrix::Identity(16, 16);
        CHECK((p - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
    // two qubits: the triplet projector, rank 3
    {
        RealMatrix p = max_spin_projector(Spin::half(), Spin::half());
        CHECK(std::abs(p.trace() - 3.0) < 1e-12);
        CHECK(std::abs(p(1, 1) - 0.5) < 1e-12);
        CHECK(std::abs(p(1, 2) - 0.5) < 1e-12);
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
    }
    // commutes with the total spin components
    {
        Spin s1(2), s2(3);
        Matrix p = max_spin_projector(s1, s2).cast<Complex>();
        auto o1 = spin_operators(s1);
        auto o2 = spin_operators(s2);
        for (int axis = 0; axis < 3; ++axis) {
            Matrix total = Matrix::Zero(p.rows(), p.cols());
            Matrix i1 = Matrix::Identity(s1.dim(), s1.dim());
            Matrix i2 = Matrix::Identity(s2.dim(), s2.dim());
            for (int a = 0; a < s1.dim(); ++a)
                for (int b = 0; b < s1.dim(); ++b)
                    for (int c = 0; c < s2.dim(); ++c)
                        for (int d = 0; d < s2.dim(); ++d)
                            total(a * s2.dim() + c, b * s2.dim() + d) =
                                o1[axis](a, b) * (c == d ? 1.0 : 0.0) +
                                (a == b ? 1.0 : 0.0) * o2[axis](c, d);
            CHECK(max_abs(p * total - total * p) < 1e-10);
        }
    }
}

TEST_CASE("pair outcome probabilities: saturation cases and oracles") {
    auto rs = random_units(8, 37);
    Vec3 z{0, 0, 1};

    // Lemma-1 saturation (r = s, top-top) across several spin pairs
    for (auto [t1, t2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 2}, {4, 4}}) {
        double p = pair_outcome_probability(Spin(t1), t1, Spin(t2), t2, rs[0], rs[0]);
        CHECK(p == doctest::Approx(1.0).epsilon(1e-10));
    }
    // triplet projector on |up down>
    CHECK(pair_outcome_probability(Spin::half(), 1, Spin::half(), -1, z, z) ==
          doctest::Approx(0.5));
    // antiparallel axes with aligned extremal outcomes stay below 1
    CHECK(pair_outcome_probability(Spin::half(), 1, Spin::half(), 1, z, -z) ==
          doctest::Approx(0.5));

    // independent Clebsch-Gordan recursion, r = s = z
    for (auto [t1, t2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 1}, {4, 3}}) {
        for (int tm1 = -t1; tm1 <= t1; tm1 += 2)
            for (int tm2 = -t2; tm2 <= t2; tm2 += 2) {
                double got = pair_outcome_probability(Spin(t1), tm1, Spin(t2), tm2, z, z);
                double cg = oracles::cg_max_spin(Spin(t1), tm1, Spin(t2), tm2);
                CHECK(got == doctest::Approx(cg * cg).epsilon(1e-10));
            }
    }

    // eigen-decomposition oracle on random axis pairs
    for (int k = 0; k < 3; ++k) {
        const Vec3 &r = rs[2 * k], &s = rs[2 * k + 1];
        double got = pair_outcome_probability(Spin::one(), 0, Spin(3), 1, r, s);
        double want = oracles::pair_probability_eig(Spin::one(), 0, Spin(3), 1, r, s);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }

    // inversion symmetry p_{r,s}(m1, m2) = p_{r,-s}(m1, -m2)
    for (int k = 0; k < 3; ++k) {
        const Vec3 &r = rs[k], &s = rs[k + 3];
        for (int tm2 : {-2, 0, 2}) {
            double lhs = pair_outcome_probability(Spin(2), 0, Spin(2), tm2, r, s);
            double rhs = pair_outcome_probability(Spin(2), 0, Spin(2), -tm2, r, Vec3{-s.x, -s.y, -s.z});
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("spin parsing round-trips") {
    CHECK(parse_spin("3/2").twice == 3);
    CHECK(parse_spin("2").twice == 4);
    CHECK(parse_spin("0.5").twice == 1);
    CHECK(spin_to_string(Spin(5)) == "5/2");
    CHECK(spin_to_string(Spin(4)) == "2");
    CHECK_THROWS_AS(parse_spin("0.3"), validation_error);
    CHECK_THROWS_AS(parse_spin("-1"), validation_error);
}
