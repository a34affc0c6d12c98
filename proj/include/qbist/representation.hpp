#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "qbist/sic_system.hpp"
#include "qbist/types.hpp"

namespace qbist {

/// Validated density matrix: Hermitian within 1e-12, unit trace within 1e-12,
/// smallest eigenvalue >= -1e-10. Stores the Hermitized matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Matrix& m) {
        if (m.rows() != m.cols())
            throw std::invalid_argument("density matrix must be square");
        check_dim(static_cast<int>(m.rows()));
        if (hermiticity_error(m) > 1e-12)
            throw std::invalid_argument("density matrix is not Hermitian");
        if (std::abs(m.trace() - Cx(1.0, 0.0)) > 1e-12)
            throw std::invalid_argument("density matrix trace is not 1");
        matrix_ = hermitize(m);
        Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("density matrix has a negative eigenvalue");
    }

    static DensityMatrix pure(const Vector& psi) {
        const double n2 = psi.squaredNorm();
        if (n2 <= 0.0) throw std::invalid_argument("zero state vector");
        return DensityMatrix(psi * psi.adjoint() / n2);
    }

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    double purity() const { return std::real((matrix_ * matrix_).trace()); }

  private:
    Matrix matrix_;
};

/// Probability vector over the d^2 reference outcomes. Entries in [-1e-12, 0)
/// are clamped to zero; anything more negative, or a total off 1 by more than
/// 1e-12, is rejected.
class ProbabilityVector {
  public:
    explicit ProbabilityVector(RealVector p) : p_(std::move(p)) {
        const int n = static_cast<int>(p_.size());
        const int d = static_cast<int>(std::lround(std::sqrt(double(n))));
        if (d * d != n)
            throw std::invalid_argument("probability vector length must be a square d^2");
        check_dim(d);
        dim_ = d;
        for (int i = 0; i < n; ++i) {
            if (p_(i) < -1e-12)
                throw std::invalid_argument("probability entry below zero at index " +
                                            std::to_string(i));
            if (p_(i) < 0.0) p_(i) = 0.0;
        }
        if (std::abs(p_.sum() - 1.0) > 1e-12)
            throw std::invalid_argument("probabilities do not sum to 1");
    }

    int dim() const { return dim_; }
    int size() const { return dim_ * dim_; }
    const RealVector& values() const { return p_; }
    double operator()(int i) const { return p_(i); }

  private:
    RealVector p_;
    int dim_ = 0;
};

/// Forward map: p_i = tr(rho P_i) / d, the Born probabilities of the
/// reference measurement E_i = P_i / d.
inline ProbabilityVector state_to_probs(const SicSystem& sic, const DensityMatrix& rho) {
    check_same_dim(sic.dim(), rho.dim());
    const int n = sic.size();
    RealVector p(n);
    for (int i = 0; i < n; ++i)
        p(i) = std::real((rho.matrix() * sic.projector(i)).trace()) / sic.dim();
    return ProbabilityVector(p);
}

/// Affine inverse on the whole simplex: rho = (d+1) sum_i p_i P_i - I.
/// Hermitian with unit trace by construction; positivity is not implied.
inline Matrix probs_to_state_raw(const SicSystem& sic, const RealVector& p) {
    const int d = sic.dim();
    if (static_cast<int>(p.size()) != d * d)
        throw std::invalid_argument("probability vector length does not match the projector set");
    Matrix rho = Matrix::Zero(d, d);
    for (int i = 0; i < d * d; ++i) rho += p(i) * sic.projector(i);
    rho = (d + 1.0) * rho - Matrix::Identity(d, d);
    return hermitize(rho);
}

/// Positivity check for a reconstructed operator: decides whether a Hermitian
/// matrix is a valid state up to eigenvalue tolerance.
struct PositivityReport {
    bool is_state = false;    ///< min eigenvalue >= -tol
    double min_eigenvalue = 0.0;
};

inline PositivityReport positivity_check(const Matrix& m, double tol = 1e-10) {
    if (hermiticity_error(m) > 1e-10)
        throw std::invalid_argument("positivity check requires a Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    PositivityReport rep;
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.is_state = rep.min_eigenvalue >= -tol;
    return rep;
}

/// Inverse map with validation: reconstruct and require a genuine state.
inline DensityMatrix probs_to_state(const SicSystem& sic, const ProbabilityVector& p) {
    check_same_dim(sic.dim(), p.dim());
    return DensityMatrix(probs_to_state_raw(sic, p.values()));
}

/// Hilbert-Schmidt inner product of two states straight from their
/// probability vectors: tr(rho sigma) = d(d+1) p.q - 1.
inline double trace_inner_from_probs(int d, const RealVector& p, const RealVector& q) {
    check_dim(d);
    if (p.size() != q.size() || static_cast<int>(p.size()) != d * d)
        throw std::invalid_argument("probability vectors must both have length d^2");
    return d * (d + 1.0) * p.dot(q) - 1.0;
}

/// One pure term of a convex decomposition.
struct PureTerm {
    double weight = 0.0;
    Vector state;            ///< unit vector
    RealVector probs;        ///< its probability vector under the same reference
};

/// Spectral (Caratheodory-style) decomposition of a state into at most d pure
/// terms: rho = sum_k w_k |psi_k><psi_k| with w_k > 0 summing to 1. Each
/// term's probability vector is returned alongside, so mixtures can be formed
/// directly in probability space. Weights below 1e-12 are dropped.
inline std::vector<PureTerm> caratheodory_decompose(const SicSystem& sic,
                                                    const DensityMatrix& rho) {
    check_same_dim(sic.dim(), rho.dim());
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const int d = rho.dim();
    std::vector<PureTerm> terms;
    for (int k = d - 1; k >= 0; --k) {  // descending eigenvalues
        double w = es.eigenvalues()(k);
        if (w <= 1e-12) continue;
        PureTerm term;
        term.weight = w;
        term.state = es.eigenvectors().col(k);
        // fix the global phase: largest-magnitude component real positive
        int pivot = 0;
        double best = 0.0;
        for (int j = 0; j < d; ++j) {
            if (std::abs(term.state(j)) > best + 1e-12) {
                best = std::abs(term.state(j));
                pivot = j;
            }
        }
        term.state *= std::conj(term.state(pivot)) / std::abs(term.state(pivot));
        term.probs = state_to_probs(sic, DensityMatrix::pure(term.state)).values();
        terms.push_back(std::move(term));
    }
    // renormalize the kept weights (guards against clipped spectrum tails)
    double total = 0.0;
    for (const auto& t : terms) total += t.weight;
    for (auto& t : terms) t.weight /= total;
    return terms;
}

}  // namespace qbist
