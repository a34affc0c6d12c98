#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "qbist/sic_system.hpp"
#include "qbist/types.hpp"

namespace qbist {

/// Validated measurement: Hermitian positive-semidefinite effects summing to
/// the identity. `tol` bounds the completeness defect; Hermiticity is held to
/// 1e-12 and eigenvalues to >= -1e-10 like the state-side checks.
class PovmMeasurement {
  public:
    explicit PovmMeasurement(std::vector<Matrix> effects, double tol = 1e-10)
        : effects_(std::move(effects)) {
        if (effects_.empty()) throw std::invalid_argument("measurement has no effects");
        dim_ = static_cast<int>(effects_.front().rows());
        check_dim(dim_);
        Matrix total = Matrix::Zero(dim_, dim_);
        for (std::size_t j = 0; j < effects_.size(); ++j) {
            Matrix& f = effects_[j];
            if (f.rows() != dim_ || f.cols() != dim_)
                throw std::invalid_argument("effects must share one dimension");
            if (hermiticity_error(f) > 1e-12)
                throw std::invalid_argument("effect " + std::to_string(j) +
                                            " is not Hermitian");
            f = hermitize(f);
            Eigen::SelfAdjointEigenSolver<Matrix> es(f, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-10)
                throw std::invalid_argument("effect " + std::to_string(j) +
                                            " has a negative eigenvalue");
            total += f;
        }
        const double defect =
            (total - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
        if (defect > tol)
            throw std::invalid_argument("effects do not sum to the identity");
    }

    /// Projective measurement onto an orthonormal basis given as matrix columns.
    static PovmMeasurement from_basis(const Matrix& basis) {
        std::vector<Matrix> effects;
        for (int j = 0; j < basis.cols(); ++j)
            effects.push_back(basis.col(j) * basis.col(j).adjoint());
        return PovmMeasurement(std::move(effects));
    }

    int dim() const { return dim_; }
    int outcomes() const { return static_cast<int>(effects_.size()); }
    const Matrix& effect(int j) const { return effects_.at(static_cast<std::size_t>(j)); }
    const std::vector<Matrix>& effects() const { return effects_; }

  private:
    std::vector<Matrix> effects_;
    int dim_ = 0;
};

/// Conditional outcome probabilities r(j|i) = tr(P_i F_j): row j is outcome j
/// given reference outcome i across the columns. Rows of a valid measurement
/// sum columnwise to 1 for each i (since sum_j F_j = I and tr P_i = 1).
inline RealMatrix conditional_matrix(const SicSystem& sic, const PovmMeasurement& povm) {
    check_same_dim(sic.dim(), povm.dim());
    RealMatrix r(povm.outcomes(), sic.size());
    for (int j = 0; j < povm.outcomes(); ++j)
        for (int i = 0; i < sic.size(); ++i)
            r(j, i) = std::real((sic.projector(i) * povm.effect(j)).trace());
    return r;
}

/// Outcome probabilities of an arbitrary measurement straight from the
/// reference probabilities:
///   Pr(j) = sum_i [(d+1) p_i - 1/d] r(j|i).
inline RealVector born_rule(int d, const RealVector& p, const RealMatrix& r) {
    check_dim(d);
    if (static_cast<int>(p.size()) != d * d)
        throw std::invalid_argument("reference probability vector must have length d^2");
    if (r.cols() != p.size())
        throw std::invalid_argument("conditional matrix has the wrong number of columns");
    RealVector w(p.size());
    for (int i = 0; i < p.size(); ++i) w(i) = (d + 1.0) * p(i) - 1.0 / d;
    return r * w;
}

/// The classical law of total probability, Pr(j) = sum_i p_i r(j|i). Kept for
/// contrast with born_rule: the two differ for non-uniform p because the
/// reference measurement is counterfactual, not actually performed.
inline RealVector total_probability(const RealVector& p, const RealMatrix& r) {
    if (r.cols() != p.size())
        throw std::invalid_argument("conditional matrix has the wrong number of columns");
    return r * p;
}

/// Rebuild effects from their conditional probabilities:
///   F_j = (d+1) sum_i r(j|i) E_i - (sum_i r(j|i)/d) I,  E_i = P_i/d.
/// Returns raw matrices; wrap in PovmMeasurement to validate physicality.
inline std::vector<Matrix> effects_from_conditional(const SicSystem& sic, const RealMatrix& r) {
    const int d = sic.dim();
    if (r.cols() != d * d)
        throw std::invalid_argument("conditional matrix has the wrong number of columns");
    std::vector<Matrix> effects;
    effects.reserve(static_cast<std::size_t>(r.rows()));
    for (int j = 0; j < r.rows(); ++j) {
        Matrix f = Matrix::Zero(d, d);
        for (int i = 0; i < d * d; ++i) f += r(j, i) * sic.projector(i);
        f = (d + 1.0) / d * f - (r.row(j).sum() / d) * Matrix::Identity(d, d);
        effects.push_back(hermitize(f));
    }
    return effects;
}

}  // namespace qbist
