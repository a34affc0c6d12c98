#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qbist/types.hpp"

namespace qbist {

/// splitmix64 step; used to derive independent stream seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic RNG: mt19937_64 bit stream, explicit Box-Muller for normals
/// so that sequences do not depend on the standard library's distribution
/// implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Cx gauss_cx() { return Cx(gauss(), gauss()); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling to stay unbiased
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-random unit vector in C^d.
inline Vector haar_state(int d, Rng& rng) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.gauss_cx();
    v /= v.norm();
    return v;
}

/// Ginibre matrix: iid standard complex Gaussian entries.
inline Matrix ginibre(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.gauss_cx();
    return m;
}

/// Random density matrix of the given rank, A A^dagger normalized to unit trace.
inline Matrix random_density_entries(int d, int rank, Rng& rng) {
    Matrix a = ginibre(d, rank, rng);
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return hermitize(rho);
}

/// Random n-outcome measurement: Gaussian positive pieces A_j = G_j G_j^dagger
/// symmetrized by the total, F_j = S^{-1/2} A_j S^{-1/2} with S = sum A_j.
/// The effects are positive semidefinite and sum to the identity by
/// construction.
inline std::vector<Matrix> random_povm(int d, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("a measurement needs at least one outcome");
    std::vector<Matrix> parts;
    parts.reserve(static_cast<std::size_t>(n));
    Matrix total = Matrix::Zero(d, d);
    for (int j = 0; j < n; ++j) {
        Matrix g = ginibre(d, d, rng);
        parts.push_back(g * g.adjoint());
        total += parts.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(total);
    Matrix root_inv = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
    for (Matrix& f : parts) f = hermitize(root_inv * f * root_inv);
    return parts;
}

/// Haar-random unitary via QR with the standard phase fix.
inline Matrix haar_unitary(int d, Rng& rng) {
    Matrix a = ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        Cx rjj = r(j, j);
        Cx phase = (std::abs(rjj) > 0) ? rjj / std::abs(rjj) : Cx(1, 0);
        q.col(j) *= phase;
    }
    return q;
}

}  // namespace qbist
