#pragma once

#include <cmath>
#include <vector>

#include "qbist/representation.hpp"
#include "qbist/sic_system.hpp"
#include "qbist/types.hpp"

namespace qbist {

/// Expansion coefficients alpha_{ijk} of projector products in the projector
/// basis: P_i P_j = sum_k alpha_{ijk} P_k. Obtained by solving the Gram
/// system G alpha = t with G_{kl} = tr(P_k P_l) (symmetric positive definite,
/// Cholesky) and t_l = tr(P_i P_j P_l). Triple traces reduce to products of
/// pairwise vector overlaps because every P is rank one.
class StructureConstants {
  public:
    explicit StructureConstants(const SicSystem& sic) : d_(sic.dim()) {
        const int n = sic.size();
        const std::vector<Vector> v = sic_vectors(sic);
        Matrix s(n, n);  // s(i,j) = <v_i|v_j>
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s(i, j) = v[i].dot(v[j]);
        RealMatrix gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gram(i, j) = std::norm(s(i, j));
        Eigen::LLT<RealMatrix> llt(gram);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("Gram matrix is not positive definite");

        slices_.assign(static_cast<std::size_t>(n), Matrix(n, n));
        RealVector re(n), im(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int l = 0; l < n; ++l) {
                    const Cx t = s(i, j) * s(j, l) * s(l, i);  // tr(P_i P_j P_l)
                    re(l) = t.real();
                    im(l) = t.imag();
                }
                const RealVector are = llt.solve(re);
                const RealVector aim = llt.solve(im);
                for (int k = 0; k < n; ++k)
                    slices_[static_cast<std::size_t>(k)](i, j) = Cx(are(k), aim(k));
            }
        }
    }

    int dim() const { return d_; }
    int size() const { return d_ * d_; }
    Cx alpha(int i, int j, int k) const {
        return slices_.at(static_cast<std::size_t>(k))(i, j);
    }
    /// Slice A_k with (A_k)_{ij} = alpha_{ijk}.
    const Matrix& slice(int k) const { return slices_.at(static_cast<std::size_t>(k)); }

    /// q_k = sum_{ij} alpha_{ijk} p_i p_j. Exactly real in principle (the
    /// tensor obeys alpha_{jik} = conj(alpha_{ijk})); returned as complex so
    /// callers can watch the numerical imaginary residue.
    Vector quadratic_form(const RealVector& p) const {
        const int n = size();
        if (static_cast<int>(p.size()) != n)
            throw std::invalid_argument("probability vector length does not match");
        const Vector pc = p.cast<Cx>();
        Vector q(n);
        for (int k = 0; k < n; ++k) q(k) = pc.dot(slices_[static_cast<std::size_t>(k)] * pc);
        return q;
    }

  private:
    int d_;
    std::vector<Matrix> slices_;
};

inline StructureConstants structure_constants(const SicSystem& sic) {
    return StructureConstants(sic);
}

/// The two scalar conditions singling out pure states inside the probability
/// simplex: sum_i p_i^2 = 2/(d(d+1)) and
/// Re sum_{ijk} alpha_{ijk} p_i p_j p_k = 4/(d(d+1)^2).
struct PurityReport {
    double quadratic_lhs = 0.0;
    double quadratic_target = 0.0;
    double cubic_lhs = 0.0;            ///< real part of the triple sum
    double cubic_target = 0.0;
    double cubic_imag_magnitude = 0.0; ///< |imaginary part|, a numerics witness
    bool is_pure = false;
};

inline PurityReport purity_conditions(const StructureConstants& sc, const RealVector& p,
                                      double tol = 1e-9) {
    const int d = sc.dim();
    PurityReport rep;
    rep.quadratic_lhs = p.squaredNorm();
    rep.quadratic_target = 2.0 / (d * (d + 1.0));
    const Vector q = sc.quadratic_form(p);
    Cx cubic(0.0, 0.0);
    for (int k = 0; k < q.size(); ++k) cubic += q(k) * p(k);
    rep.cubic_lhs = cubic.real();
    rep.cubic_imag_magnitude = std::abs(cubic.imag());
    rep.cubic_target = 4.0 / (d * (d + 1.0) * (d + 1.0));
    rep.is_pure = std::abs(rep.quadratic_lhs - rep.quadratic_target) <= tol &&
                  std::abs(rep.cubic_lhs - rep.cubic_target) <= tol;
    return rep;
}

/// Residual of the coupled quadratic fixed-point equations
///   p_k = (d+1)/3 * Re sum_{ij} alpha_{ijk} p_i p_j + 2/(3d(d+1)).
/// Zero (to numerics) exactly on pure states; at the simplex center every
/// component equals (d-1)/(3d^3(d+1)).
inline RealVector quadratic_fixed_point(const StructureConstants& sc, const RealVector& p) {
    const int d = sc.dim();
    const Vector q = sc.quadratic_form(p);
    const double shift = 2.0 / (3.0 * d * (d + 1.0));
    RealVector r(p.size());
    for (int k = 0; k < p.size(); ++k)
        r(k) = p(k) - (d + 1.0) / 3.0 * q(k).real() - shift;
    return r;
}

}  // namespace qbist
