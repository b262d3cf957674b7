#include "aklt/bond.hpp"

#include "aklt/spin_ops.hpp"

namespace aklt {

namespace {

Vector pair_top_state(Spin s1, Spin s2, const Vec3& r, int sign) {
    Vec3 dir = sign >= 0 ? r : -r;
    Vector v1 = spin_eigenvector(s1, s1.twice, dir);
    Vector v2 = spin_eigenvector(s2, s2.twice, dir);
    Vector prod(v1.size() * v2.size());
    for (int a = 0; a < v1.size(); ++a)
        for (int b = 0; b < v2.size(); ++b) prod(a * v2.size() + b) = v1(a) * v2(b);
    return prod;
}

}  // namespace

Matrix canonical_test(Spin s1, Spin s2, const Vec3& r) {
    require_unit(r);
    const int d = s1.dim() * s2.dim();
    Vector plus = pair_top_state(s1, s2, r, +1);
    Vector minus = pair_top_state(s1, s2, r, -1);
    Matrix m = Matrix::Identity(d, d);
    m -= plus * plus.adjoint();
    m -= minus * minus.adjoint();
    return m;
}

BondOperator bond_operator(Spin s1, Spin s2, const SphereDistribution& mu) {
    if (mu.isotropic)
        throw validation_error(
            "the isotropic distribution has no finite bond operator; use nu_S "
            "or realize it with mu32");
    mu.validate();
    BondOperator bo;
    bo.s1 = s1;
    bo.s2 = s2;
    const int d = s1.dim() * s2.dim();
    bo.omega = Matrix::Identity(d, d);
    // R_r = R_{-r}: fold mu through its symmetrization once
    for (const auto& p : symmetrize(mu).points) {
        Vector top = pair_top_state(s1, s2, p.v, +1);
        bo.omega -= 2 * p.w * (top * top.adjoint()).eval();
    }
    Matrix ps = max_spin_projector(s1, s2).cast<Complex>();
    Matrix sandwich = ps * bo.omega * ps;
    RealVector w = eigenvalues_herm(sandwich);
    bo.gap = 1.0 - w(w.size() - 1);
    return bo;
}

Matrix omega_reduced(Spin s_total, const SphereDistribution& mu) {
    const int d = s_total.dim();
    if (mu.isotropic) {
        double lam = static_cast<double>(s_total.twice - 1) / (s_total.twice + 1);
        return lam * Matrix::Identity(d, d);
    }
    mu.validate();
    Matrix m = Matrix::Identity(d, d);
    for (const auto& p : symmetrize(mu).points) {
        Vector v = spin_eigenvector(s_total, s_total.twice, p.v);
        m -= 2 * p.w * (v * v.adjoint()).eval();
    }
    return m;
}

double nu_S(Spin s_total, const SphereDistribution& mu) {
    if (s_total.twice == 0) throw validation_error("total spin must be positive");
    if (mu.isotropic) return 2.0 / (s_total.twice + 1);
    Matrix omega = omega_reduced(s_total, mu);
    // nu = lambda_min(1 - Omega) = 1 - lambda_max(Omega)
    RealVector w = eigenvalues_herm(omega);
    return 1.0 - w(w.size() - 1);
}

}  // namespace aklt
