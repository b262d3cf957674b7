#include "aklt/linalg.hpp"

#include <algorithm>
#include <cmath>

#ifdef AKLT_WITH_LAPACKE
#include <lapacke.h>
#endif

namespace aklt {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
    double n = norm();
    if (n < 1e-300) throw validation_error("cannot normalize zero vector");
    return {x / n, y / n, z / n};
}

void require_unit(const Vec3& r, double tol) {
    if (std::abs(r.norm() - 1.0) > tol)
        throw validation_error("direction vector is not normalized");
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol;
}

std::int64_t product_dim(std::span<const int> dims) {
    std::int64_t d = 1;
    for (int x : dims) d *= x;
    return d;
}

// ---------------------------------------------------------------- dense eig

RealVector eigenvalues_sym(const RealMatrix& h) {
#ifdef AKLT_WITH_LAPACKE
    RealMatrix a = h;
    RealVector w(h.rows());
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<int>(h.rows()),
                              a.data(), static_cast<int>(h.rows()), w.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
    return w;
#else
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
#endif
}

RealVector eigenvalues_herm(const Matrix& h) {
#ifdef AKLT_WITH_LAPACKE
    Matrix a = h;
    RealVector w(h.rows());
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<int>(h.rows()),
                              reinterpret_cast<lapack_complex_double*>(a.data()),
                              static_cast<int>(h.rows()), w.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    return w;
#else
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
#endif
}

void eigh_sym(const RealMatrix& h, RealVector& evals, RealMatrix& evecs) {
#ifdef AKLT_WITH_LAPACKE
    evecs = h;
    evals.resize(h.rows());
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<int>(h.rows()),
                              evecs.data(), static_cast<int>(h.rows()), evals.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
#else
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
    evals = es.eigenvalues();
    evecs = es.eigenvectors();
#endif
}

void eigh_herm(const Matrix& h, RealVector& evals, Matrix& evecs) {
#ifdef AKLT_WITH_LAPACKE
    evecs = h;
    evals.resize(h.rows());
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<int>(h.rows()),
                              reinterpret_cast<lapack_complex_double*>(evecs.data()),
                              static_cast<int>(h.rows()), evals.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
#else
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    evals = es.eigenvalues();
    evecs = es.eigenvectors();
#endif
}

// ---------------------------------------------------------------- lanczos

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

template <class Scalar>
void deterministic_start(Eigen::Vector<Scalar, Eigen::Dynamic>& v, std::uint64_t salt);

template <>
void deterministic_start(RealVector& v, std::uint64_t salt) {
    std::uint64_t s = 0x5eed0000u ^ salt ^ (static_cast<std::uint64_t>(v.size()) << 20);
    for (auto& x : v) x = (splitmix64(s) >> 11) * (1.0 / 9007199254740992.0) - 0.5;
}

template <>
void deterministic_start(Vector& v, std::uint64_t salt) {
    std::uint64_t s = 0x5eed0001u ^ salt ^ (static_cast<std::uint64_t>(v.size()) << 20);
    for (auto& x : v) {
        double re = (splitmix64(s) >> 11) * (1.0 / 9007199254740992.0) - 0.5;
        double im = (splitmix64(s) >> 11) * (1.0 / 9007199254740992.0) - 0.5;
        x = Complex(re, im);
    }
}

}  // namespace

void fill_deterministic(std::span<double> out, std::uint64_t salt) {
    std::uint64_t s = 0x5eed0002u ^ salt ^ (static_cast<std::uint64_t>(out.size()) << 20);
    for (auto& x : out) x = (splitmix64(s) >> 11) * (1.0 / 9007199254740992.0) - 0.5;
}

template <class Scalar>
EigenPair<Scalar> lanczos_extreme(const LinearOperator<Scalar>& op, bool largest, int max_iter,
                                  double tol, std::uint64_t salt,
                                  const Eigen::Vector<Scalar, Eigen::Dynamic>* start) {
    using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
    const std::int64_t n = op.dim;
    if (n <= 0) throw validation_error("operator dimension must be positive");
    max_iter = static_cast<int>(std::min<std::int64_t>(max_iter, n));

    std::vector<Vec> basis;
    basis.reserve(max_iter);
    Vec v(n);
    if (start && start->size() == n && start->norm() > 1e-8) {
        v = *start;
        // a dash of noise so a stale guess cannot trap the iteration
        Vec noise(n);
        deterministic_start(noise, salt);
        v += Scalar(1e-6) * noise;
    } else {
        deterministic_start(v, salt);
    }
    v.normalize();
    basis.push_back(v);

    std::vector<double> alpha, beta;  // tridiagonal entries
    Vec w(n);
    Eigen::SelfAdjointEigenSolver<RealMatrix> tde;

    auto ritz_update = [&](double& theta, RealVector& s) {
        int k = static_cast<int>(alpha.size());
        RealMatrix t = RealMatrix::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        tde.compute(t);
        int idx = largest ? k - 1 : 0;
        theta = tde.eigenvalues()(idx);
        s = tde.eigenvectors().col(idx);
    };

    double theta = 0;
    RealVector s;
    for (int it = 0; it < max_iter; ++it) {
        w.setZero();
        op.apply(basis.back().data(), w.data());
        double a = std::real(Scalar(basis.back().dot(w)));
        alpha.push_back(a);
        w -= Scalar(a) * basis.back();
        if (basis.size() >= 2) w -= Scalar(beta.back()) * basis[basis.size() - 2];
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) w -= b.dot(w) * b;
        double bnorm = w.norm();

        ritz_update(theta, s);
        double resid = bnorm * std::abs(s(s.size() - 1));
        if (resid <= tol || bnorm <= 1e-14 || static_cast<std::int64_t>(basis.size()) == n) {
            Vec x = Vec::Zero(n);
            for (int i = 0; i < s.size(); ++i) x += Scalar(s(i)) * basis[i];
            x.normalize();
            return {theta, x};
        }
        beta.push_back(bnorm);
        basis.push_back(w / bnorm);
    }
    // best effort at iteration cap
    Vec x = Vec::Zero(n);
    ritz_update(theta, s);
    for (int i = 0; i < s.size(); ++i) x += Scalar(s(i)) * basis[i];
    x.normalize();
    return {theta, x};
}

template EigenPair<double> lanczos_extreme(const RealOperator&, bool, int, double, std::uint64_t,
                                           const RealVector*);
template EigenPair<Complex> lanczos_extreme(const ComplexOperator&, bool, int, double,
                                            std::uint64_t, const Vector*);

// ----------------------------------------------------- two-site application

template <class Scalar, class OpScalar>
void apply_two_site(const Eigen::Matrix<OpScalar, Eigen::Dynamic, Eigen::Dynamic>& op,
                    std::span<const int> dims, int i, int j, const Scalar* x, Scalar* y,
                    Scalar coeff) {
    const int nsites = static_cast<int>(dims.size());
    if (i >= j || i < 0 || j >= nsites) throw validation_error("bad site pair");
    std::int64_t pre = 1, mid = 1, post = 1;
    for (int k = 0; k < i; ++k) pre *= dims[k];
    for (int k = i + 1; k < j; ++k) mid *= dims[k];
    for (int k = j + 1; k < nsites; ++k) post *= dims[k];
    const int di = dims[i], dj = dims[j], dd = di * dj;

    std::vector<Scalar> in(dd), out(dd);
    for (std::int64_t p = 0; p < pre; ++p)
        for (std::int64_t m = 0; m < mid; ++m)
            for (std::int64_t q = 0; q < post; ++q) {
                const std::int64_t base = ((p * di) * mid + m) * dj * post + q;
                const std::int64_t stride_a = mid * dj * post;
                const std::int64_t stride_b = post;
                for (int a = 0; a < di; ++a)
                    for (int b = 0; b < dj; ++b)
                        in[a * dj + b] = x[base + a * stride_a + b * stride_b];
                for (int r = 0; r < dd; ++r) {
                    Scalar acc{};
                    for (int c = 0; c < dd; ++c) acc += Scalar(op(r, c)) * in[c];
                    out[r] = acc;
                }
                for (int a = 0; a < di; ++a)
                    for (int b = 0; b < dj; ++b)
                        y[base + a * stride_a + b * stride_b] += coeff * out[a * dj + b];
            }
}

template void apply_two_site<double, double>(const RealMatrix&, std::span<const int>, int, int,
                                             const double*, double*, double);
template void apply_two_site<Complex, double>(const RealMatrix&, std::span<const int>, int, int,
                                              const Complex*, Complex*, Complex);
template void apply_two_site<Complex, Complex>(const Matrix&, std::span<const int>, int, int,
                                               const Complex*, Complex*, Complex);

namespace {

template <class Mat>
Mat embed_impl(const Mat& op, std::span<const int> dims, int i, int j) {
    const std::int64_t d = product_dim(dims);
    Mat full = Mat::Zero(d, d);
    Eigen::Vector<typename Mat::Scalar, Eigen::Dynamic> e(d), col(d);
    for (std::int64_t c = 0; c < d; ++c) {
        e.setZero();
        e(c) = 1;
        col.setZero();
        apply_two_site(op, dims, i, j, e.data(), col.data(),
                       typename Mat::Scalar(1));
        full.col(c) = col;
    }
    return full;
}

}  // namespace

Matrix embed_two_site(const Matrix& op, std::span<const int> dims, int i, int j) {
    return embed_impl(op, dims, i, j);
}

RealMatrix embed_two_site(const RealMatrix& op, std::span<const int> dims, int i, int j) {
    return embed_impl(op, dims, i, j);
}

// ---------------------------------------------------------------- rationals

std::optional<RationalMatch> detect_rational(double x, long long max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    // continued-fraction convergents
    double v = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 1e17 || fl < -1e17) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = v - fl;
        if (rem < 1e-15) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    if (std::abs(x - static_cast<double>(p1) / q1) <= tol) return RationalMatch{p1, q1};
    return std::nullopt;
}

}  // namespace aklt
