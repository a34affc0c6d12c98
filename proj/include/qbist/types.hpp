#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qbist {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Hilbert-space dimensions handled by this library. Searches are capped
/// separately (see search_fiducial / subspace enumeration budgets).
constexpr int kMinDim = 2;
constexpr int kMaxSearchDim = 7;

inline void check_dim(int d) {
    if (d < kMinDim)
        throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
}

inline void check_same_dim(int a, int b) {
    if (a != b)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                    " vs " + std::to_string(b));
}

/// Max-norm of the anti-Hermitian part, ||M - M^dagger||_max.
inline double hermiticity_error(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// (M + M^dagger)/2
inline Matrix hermitize(const Matrix& m) {
    return 0.5 * (m + m.adjoint());
}

}  // namespace qbist
