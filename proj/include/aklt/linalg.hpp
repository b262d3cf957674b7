#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aklt/errors.hpp"

namespace aklt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;   // general Hermitian-operator carrier
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// A real unit vector in dimension 3.
struct Vec3 {
    double x = 0, y = 0, z = 1;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 normalized() const;
};

// Throws validation_error unless |r| = 1 within tol.
void require_unit(const Vec3& r, double tol = 1e-12);

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-12);

// --- dense Hermitian eigensolvers (LAPACKE when available, Eigen otherwise) ---

RealVector eigenvalues_sym(const RealMatrix& h);
RealVector eigenvalues_herm(const Matrix& h);
// Full decompositions; eigenvalues ascending, columns are eigenvectors.
void eigh_sym(const RealMatrix& h, RealVector& evals, RealMatrix& evecs);
void eigh_herm(const Matrix& h, RealVector& evals, Matrix& evecs);

// --- matrix-free Lanczos -----------------------------------------------------

// Abstract Hermitian operator given by its action on a vector.
template <class Scalar>
struct LinearOperator {
    std::int64_t dim = 0;
    // y = A x. y is zero-initialized by the caller.
    std::function<void(const Scalar*, Scalar*)> apply;
};

using RealOperator = LinearOperator<double>;
using ComplexOperator = LinearOperator<Complex>;

template <class Scalar>
struct EigenPair {
    double value = 0;
    Eigen::Vector<Scalar, Eigen::Dynamic> vector;
};

// Extremal eigenpair by Lanczos with full reorthogonalization. Deterministic
// (fixed start vector derived from the dimension, or the caller's `start`
// warm-start guess). `largest` selects which end of the spectrum; `tol` is the
// absolute residual tolerance on the eigenpair.
template <class Scalar>
EigenPair<Scalar> lanczos_extreme(const LinearOperator<Scalar>& op, bool largest,
                                  int max_iter = 700, double tol = 1e-10,
                                  std::uint64_t salt = 0,
                                  const Eigen::Vector<Scalar, Eigen::Dynamic>* start = nullptr);

extern template EigenPair<double> lanczos_extreme(const RealOperator&, bool, int, double,
                                                  std::uint64_t, const RealVector*);
extern template EigenPair<Complex> lanczos_extreme(const ComplexOperator&, bool, int, double,
                                                   std::uint64_t, const Vector*);

// --- two-site operator application -------------------------------------------

// Applies `op` (acting on sites i<j of a product space with the given site
// dimensions; site 0 varies slowest, kron convention) to x, accumulating
// coeff * result into y.
template <class Scalar, class OpScalar>
void apply_two_site(const Eigen::Matrix<OpScalar, Eigen::Dynamic, Eigen::Dynamic>& op,
                    std::span<const int> dims, int i, int j, const Scalar* x, Scalar* y,
                    Scalar coeff);

// Dense embedding of a two-site operator into the full product space.
Matrix embed_two_site(const Matrix& op, std::span<const int> dims, int i, int j);
RealMatrix embed_two_site(const RealMatrix& op, std::span<const int> dims, int i, int j);

std::int64_t product_dim(std::span<const int> dims);

// --- misc ---------------------------------------------------------------------

// Detects x ~ p/q with q <= max_den and |x - p/q| <= tol. Used for reporting.
struct RationalMatch {
    long long num = 0, den = 1;
};
std::optional<RationalMatch> detect_rational(double x, long long max_den = 200,
                                             double tol = 1e-9);

// Deterministic pseudo-random unit vector (splitmix64 stream); used to seed
// iterative solvers reproducibly.
void fill_deterministic(std::span<double> out, std::uint64_t salt);

}  // namespace aklt
