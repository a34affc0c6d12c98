#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "qbist/types.hpp"
#include "qbist/weyl_heisenberg.hpp"

namespace qbist {

/// Verification tolerances for an equiangular projector set.
struct SicTolerances {
    double equiangle = 1e-9;    ///< |tr(P_k P_l) - 1/(d+1)| for k != l
    double idempotency = 1e-10; ///< |P^2 - P| and |tr P - 1| per element
    double resolution = 1e-10;  ///< |sum_i P_i - d*I| entrywise
};

/// What verification measured, with the worst offenders pinpointed.
struct GramReport {
    bool passed = false;
    double max_offdiag_error = 0.0;    ///< worst |tr(P_k P_l) - 1/(d+1)|
    int worst_pair_k = -1;
    int worst_pair_l = -1;
    double max_idempotency_error = 0.0; ///< worst of |P^2-P|_max and |tr P - 1|
    int worst_projector = -1;
    double resolution_error = 0.0;     ///< max entry of |sum P_i - d*I|
};

/// Check that d^2 projectors form an equiangular resolving set:
/// rank-one idempotents with tr(P_k P_l) = 1/(d+1) and sum_i P_i = d*I.
inline GramReport verify_sic(const std::vector<Matrix>& projectors,
                             const SicTolerances& tol = {}) {
    if (projectors.empty())
        throw std::invalid_argument("no projectors to verify");
    const int d = static_cast<int>(projectors.front().rows());
    check_dim(d);
    const std::size_t n = static_cast<std::size_t>(d) * d;
    if (projectors.size() != n)
        throw std::invalid_argument("expected d^2 projectors");

    GramReport report;
    Matrix total = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < n; ++k) {
        const Matrix& p = projectors[k];
        if (p.rows() != d || p.cols() != d)
            throw std::invalid_argument("projectors must share one dimension");
        double err = (p * p - p).cwiseAbs().maxCoeff();
        err = std::max(err, std::abs(p.trace() - Cx(1.0, 0.0)));
        err = std::max(err, hermiticity_error(p));
        if (err > report.max_idempotency_error) {
            report.max_idempotency_error = err;
            report.worst_projector = static_cast<int>(k);
        }
        total += p;
    }
    const double target = 1.0 / (d + 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            const double overlap = std::real((projectors[k] * projectors[l]).trace());
            const double err = std::abs(overlap - target);
            if (err > report.max_offdiag_error) {
                report.max_offdiag_error = err;
                report.worst_pair_k = static_cast<int>(k);
                report.worst_pair_l = static_cast<int>(l);
            }
        }
    }
    report.resolution_error =
        (total - double(d) * Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    report.passed = report.max_offdiag_error <= tol.equiangle &&
                    report.max_idempotency_error <= tol.idempotency &&
                    report.resolution_error <= tol.resolution;
    return report;
}

/// Single-tolerance variant: accept iff every error field is at most tol.
inline GramReport verify_sic(const std::vector<Matrix>& projectors, double tol) {
    return verify_sic(projectors, SicTolerances{tol, tol, tol});
}

/// A verified equiangular projector set with its derived reference measurement
/// E_i = P_i / d. Construction from a fiducial verifies the orbit and throws
/// if it fails; construction from explicit projectors does the same.
class SicSystem {
  public:
    static SicSystem from_fiducial(const Fiducial& fiducial,
                                   const SicTolerances& tol = {}) {
        return SicSystem(orbit(fiducial), tol);
    }

    SicSystem(std::vector<Matrix> projectors, const SicTolerances& tol = {})
        : projectors_(std::move(projectors)) {
        report_ = verify_sic(projectors_, tol);
        if (!report_.passed)
            throw std::invalid_argument("projector set fails equiangularity verification");
        dim_ = static_cast<int>(projectors_.front().rows());
    }

    int dim() const { return dim_; }
    int size() const { return dim_ * dim_; }
    const std::vector<Matrix>& projectors() const { return projectors_; }
    const Matrix& projector(int i) const { return projectors_.at(static_cast<std::size_t>(i)); }
    Matrix effect(int i) const { return projector(i) / double(dim_); }
    const GramReport& report() const { return report_; }

  private:
    std::vector<Matrix> projectors_;
    GramReport report_;
    int dim_ = 0;
};

/// Exact fiducial for d = 2: the Bloch vector (1,1,1)/sqrt(3).
inline Fiducial fiducial_d2() {
    const double s = 1.0 / std::sqrt(3.0);
    Vector v(2);
    v(0) = Cx(std::sqrt((1.0 + s) / 2.0), 0.0);
    v(1) = std::exp(Cx(0.0, M_PI / 4.0)) * std::sqrt((1.0 - s) / 2.0);
    return Fiducial(v);
}

/// One-parameter fiducial family for d = 3: (0, 1, -e^{it}) / sqrt(2).
/// Every t yields a valid fiducial.
inline Fiducial fiducial_d3(double t) {
    Vector v(3);
    v(0) = Cx(0.0, 0.0);
    v(1) = Cx(1.0 / std::sqrt(2.0), 0.0);
    v(2) = -std::exp(Cx(0.0, t)) / std::sqrt(2.0);
    return Fiducial(v);
}

/// Closed-form fiducial where one is known here: d = 2 (t ignored) and the
/// d = 3 family at parameter t. Other dimensions require a numerical search.
inline Fiducial known_fiducial(int d, double t = 0.0) {
    check_dim(d);
    if (d == 2) return fiducial_d2();
    if (d == 3) return fiducial_d3(t);
    throw std::invalid_argument("no closed-form fiducial stored for this dimension");
}

/// Recover unit vectors from rank-one projectors, fixing the global phase so
/// the first component of largest magnitude is real and positive.
inline std::vector<Vector> sic_vectors(const SicSystem& sic) {
    std::vector<Vector> vecs;
    vecs.reserve(static_cast<std::size_t>(sic.size()));
    for (const Matrix& p : sic.projectors()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(p);
        Vector v = es.eigenvectors().col(p.rows() - 1);  // largest eigenvalue
        int pivot = 0;
        double best = 0.0;
        for (int j = 0; j < v.size(); ++j) {
            if (std::abs(v(j)) > best + 1e-12) {
                best = std::abs(v(j));
                pivot = j;
            }
        }
        v *= std::conj(v(pivot)) / std::abs(v(pivot));
        vecs.push_back(std::move(v));
    }
    return vecs;
}

}  // namespace qbist
