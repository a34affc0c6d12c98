#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "qbist/random.hpp"
#include "qbist/sic_system.hpp"
#include "qbist/types.hpp"
#include "qbist/weyl_heisenberg.hpp"

namespace qbist {

namespace detail {

/// Least-squares residuals for the equiangularity conditions. The unknown is
/// an unnormalized vector psi in R^{2d} (real and imaginary parts); residuals
/// are |<psi|D_delta|psi>|^2 / ||psi||^4 - 1/(d+1) over the d^2 - 1 nonzero
/// displacements delta, plus (||psi||^2 - 1) to pin the scale.
struct EquiangleFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum {
        InputsAtCompileTime = Eigen::Dynamic,
        ValuesAtCompileTime = Eigen::Dynamic
    };

    int d;
    std::vector<Matrix> displacements;  // the d^2 - 1 with (a,b) != (0,0)

    explicit EquiangleFunctor(int dim) : d(dim) {
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (a != 0 || b != 0) displacements.push_back(wh_displacement(d, a, b));
    }

    int inputs() const { return 2 * d; }
    int values() const { return d * d; }  // (d^2 - 1) overlaps + 1 norm pin

    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
        Vector psi(d);
        for (int j = 0; j < d; ++j) psi(j) = Cx(x(j), x(d + j));
        const double n2 = psi.squaredNorm();
        const double target = 1.0 / (d + 1.0);
        for (std::size_t k = 0; k < displacements.size(); ++k) {
            const Cx ov = psi.dot(displacements[k] * psi);  // <psi|D|psi>
            fvec(static_cast<int>(k)) = std::norm(ov) / (n2 * n2) - target;
        }
        fvec(d * d - 1) = n2 - 1.0;
        return 0;
    }
};

}  // namespace detail

struct FiducialSearchResult {
    bool found = false;
    Vector amplitudes;       ///< normalized candidate (valid only if found)
    double objective = 0.0;  ///< pairwise objective at the optimum (see below)
    int restarts_used = 0;   ///< restarts consumed, counting the winning one
};

/// The search's figure of merit over a whole orbit:
/// sum_{k<l} (|<psi_k|psi_l>|^2 - 1/(d+1))^2.
inline double pairwise_objective(int d, const Vector& psi) {
    Fiducial f(psi / psi.norm());
    const auto vecs = wh_orbit_vectors(f);
    const double target = 1.0 / (d + 1.0);
    double obj = 0.0;
    for (std::size_t k = 0; k < vecs.size(); ++k) {
        for (std::size_t l = k + 1; l < vecs.size(); ++l) {
            const double dev = std::norm(vecs[k].dot(vecs[l])) - target;
            obj += dev * dev;
        }
    }
    return obj;
}

/// Random-restart Levenberg-Marquardt search for a fiducial vector whose
/// displacement orbit is equiangular. A restart succeeds when the residual
/// sum of squares drops below 1e-18; the best candidate over all restarts is
/// returned. Deterministic for a fixed (seed, restarts) pair.
inline FiducialSearchResult search_fiducial(int d, std::uint64_t seed, int restarts = 50) {
    check_dim(d);
    if (d > kMaxSearchDim)
        throw std::invalid_argument("fiducial search supports dimensions up to " +
                                    std::to_string(kMaxSearchDim));
    if (restarts < 1) throw std::invalid_argument("need at least one restart");

    detail::EquiangleFunctor functor(d);
    Eigen::NumericalDiff<detail::EquiangleFunctor> diff(functor);
    constexpr double kSuccess = 1e-18;

    FiducialSearchResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
        Vector psi = haar_state(d, rng);
        Eigen::VectorXd x(2 * d);
        for (int j = 0; j < d; ++j) {
            x(j) = psi(j).real();
            x(d + j) = psi(j).imag();
        }

        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::EquiangleFunctor>> lm(diff);
        lm.parameters.xtol = 1e-15;
        lm.parameters.ftol = 1e-15;
        lm.parameters.gtol = 1e-15;
        lm.parameters.maxfev = 20000;
        lm.minimize(x);

        Vector candidate(d);
        for (int j = 0; j < d; ++j) candidate(j) = Cx(x(j), x(d + j));
        if (candidate.norm() < 1e-6) continue;  // optimizer collapsed; try again
        const double obj = pairwise_objective(d, candidate);
        if (obj < best.objective) {
            best.objective = obj;
            best.amplitudes = candidate / candidate.norm();
            best.restarts_used = r + 1;
            if (obj < kSuccess) {
                best.found = true;
                break;
            }
        }
    }
    return best;
}

/// Fiducial for any supported dimension: the stored closed forms where
/// available, otherwise a seeded numerical search. Throws if the search
/// exhausts its restarts without converging.
inline Fiducial find_fiducial(int d, std::uint64_t seed = 20260819ULL, int restarts = 50) {
    if (d == 2 || d == 3) return known_fiducial(d);
    FiducialSearchResult res = search_fiducial(d, seed, restarts);
    if (!res.found)
        throw std::runtime_error("fiducial search did not converge in " +
                                 std::to_string(restarts) + " restarts");
    return Fiducial(res.amplitudes);
}

}  // namespace qbist
