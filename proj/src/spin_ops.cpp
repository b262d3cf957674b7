#include "aklt/spin_ops.hpp"

#include <cmath>

namespace aklt {

namespace {

// S+ in the m = S..-S ordering: raises m, so it sits on the superdiagonal.
RealMatrix ladder_plus(Spin s) {
    const int d = s.dim();
    RealMatrix sp = RealMatrix::Zero(d, d);
    const double S = s.value();
    for (int col = 1; col < d; ++col) {
        double m = S - col;  // S+ |m> -> |m+1>, row col-1
        sp(col - 1, col) = std::sqrt(S * (S + 1) - m * (m + 1));
    }
    return sp;
}

}  // namespace

RealMatrix spin_x_real(Spin s) {
    RealMatrix sp = ladder_plus(s);
    return (sp + sp.transpose()) / 2.0;
}

RealMatrix spin_y_imag(Spin s) {
    // S_y = (S+ - S-)/(2i) = -i (S+ - S-)/2, so S_y = i * [-(S+ - S-)/2]
    RealMatrix sp = ladder_plus(s);
    return (sp.transpose() - sp) / 2.0;
}

RealMatrix spin_z_real(Spin s) {
    const int d = s.dim();
    RealMatrix sz = RealMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) sz(i, i) = (s.twice - 2 * i) / 2.0;
    return sz;
}

std::array<Matrix, 3> spin_operators(Spin s) {
    Matrix sx = spin_x_real(s).cast<Complex>();
    Matrix sy = Complex(0, 1) * spin_y_imag(s).cast<Complex>();
    Matrix sz = spin_z_real(s).cast<Complex>();
    return {sx, sy, sz};
}

Matrix spin_along(Spin s, const Vec3& r) {
    require_unit(r);
    Matrix m = r.x * spin_x_real(s).cast<Complex>();
    m += Complex(0, r.y) * spin_y_imag(s).cast<Complex>();
    m += r.z * spin_z_real(s).cast<Complex>();
    return m;
}

Matrix spin_eigenprojector(Spin s, int twice_m, const Vec3& r) {
    if (!valid_projection(s, twice_m))
        throw validation_error("projection m outside {-S..S} for S=" + spin_to_string(s));
    const int d = s.dim();
    Matrix sr = spin_along(s, r);
    Matrix p = Matrix::Identity(d, d);
    for (int tk = -s.twice; tk <= s.twice; tk += 2) {
        if (tk == twice_m) continue;
        p = p * (sr - (tk / 2.0) * Matrix::Identity(d, d)) / ((twice_m - tk) / 2.0);
    }
    return p;
}

Vector spin_eigenvector(Spin s, int twice_m, const Vec3& r) {
    Matrix p = spin_eigenprojector(s, twice_m, r);
    int best = 0;
    double bestn = -1;
    for (int c = 0; c < p.cols(); ++c) {
        double n = p.col(c).norm();
        if (n > bestn) { bestn = n; best = c; }
    }
    Vector v = p.col(best) / bestn;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-8) {
            v *= std::abs(v(i)) / v(i);
            break;
        }
    }
    return v;
}

double eigenstate_fidelity(Spin s, const Vec3& r, const Vec3& t, int sign_r, int sign_s) {
    require_unit(r);
    require_unit(t);
    double c = r.dot(t);
    double base = (sign_r * sign_s > 0) ? (1 + c) / 2 : (1 - c) / 2;
    return std::pow(base, s.twice);
}

RealMatrix pair_casimir(Spin s1, Spin s2) {
    const int d1 = s1.dim(), d2 = s2.dim();
    RealMatrix i1 = RealMatrix::Identity(d1, d1), i2 = RealMatrix::Identity(d2, d2);
    auto kron = [](const RealMatrix& a, const RealMatrix& b) {
        RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    };
    RealMatrix total = RealMatrix::Zero(d1 * d2, d1 * d2);
    {
        RealMatrix t = kron(spin_x_real(s1), i2) + kron(i1, spin_x_real(s2));
        total += t * t;
    }
    {
        // (i A + i B)^2 = -(A + B)^2 with A, B the imaginary parts
        RealMatrix t = kron(spin_y_imag(s1), i2) + kron(i1, spin_y_imag(s2));
        total -= t * t;
    }
    {
        RealMatrix t = kron(spin_z_real(s1), i2) + kron(i1, spin_z_real(s2));
        total += t * t;
    }
    return total;
}

RealMatrix max_spin_projector(Spin s1, Spin s2) {
    RealMatrix k = pair_casimir(s1, s2);
    const int d = static_cast<int>(k.rows());
    const int t_top = s1.twice + s2.twice;
    const double top = t_top * (t_top + 2) / 4.0;  // S_e(S_e+1)
    RealMatrix p = RealMatrix::Identity(d, d);
    for (int tl = std::abs(s1.twice - s2.twice); tl <= t_top - 2; tl += 2) {
        double ll = tl * (tl + 2) / 4.0;  // l(l+1)
        p = p * (k - ll * RealMatrix::Identity(d, d)) / (top - ll);
    }
    return p;
}

double pair_outcome_probability(Spin s1, int twice_m1, Spin s2, int twice_m2, const Vec3& r,
                                const Vec3& t) {
    if (!valid_projection(s1, twice_m1) || !valid_projection(s2, twice_m2))
        throw validation_error("projection out of range");
    Vector v1 = spin_eigenvector(s1, twice_m1, r);
    Vector v2 = spin_eigenvector(s2, twice_m2, t);
    Vector prod(v1.size() * v2.size());
    for (int a = 0; a < v1.size(); ++a)
        for (int b = 0; b < v2.size(); ++b) prod(a * v2.size() + b) = v1(a) * v2(b);
    Matrix p = max_spin_projector(s1, s2).cast<Complex>();
    return std::real(Complex(prod.dot(p * prod)));
}

}  // namespace aklt
