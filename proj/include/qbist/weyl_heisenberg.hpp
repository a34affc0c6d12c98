#pragma once

#include <cmath>
#include <vector>

#include "qbist/types.hpp"

namespace qbist {

/// Fiducial vector: a unit vector in C^d whose group orbit yields the d^2
/// equiangular projectors. Inputs farther than 1e-8 from unit norm are
/// rejected; within that, the stored amplitudes are normalized. A vector
/// already unit-length to machine precision is kept bit for bit, so writing
/// and re-reading a fiducial file is lossless.
class Fiducial {
  public:
    explicit Fiducial(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
        check_dim(static_cast<int>(amplitudes_.size()));
        const double nrm = amplitudes_.norm();
        if (std::abs(nrm - 1.0) > 1e-8)
            throw std::invalid_argument("fiducial norm deviates from 1 by more than 1e-8");
        if (std::abs(nrm - 1.0) > 1e-14) amplitudes_ /= nrm;
    }

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }

  private:
    Vector amplitudes_;
};

/// Displacement D(a,b) = tau^{ab} X^a Z^b with tau = -exp(i*pi/d),
/// X|j> = |j+1 mod d>, Z|j> = exp(2*pi*i*j/d)|j>.
inline Matrix wh_displacement(int d, int a, int b) {
    check_dim(d);
    if (a < 0 || a >= d || b < 0 || b >= d)
        throw std::invalid_argument("displacement labels must satisfy 0 <= a,b < d");
    // tau^{ab} with tau = -exp(i*pi/d), computed directly to avoid the
    // branch-cut ambiguity of complex pow
    const double sign = (a * b) % 2 == 0 ? 1.0 : -1.0;
    const Cx phase = sign * std::exp(Cx(0.0, M_PI * a * b / d));
    Matrix m = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        // column j carries exp(2*pi*i*b*j/d), shifted up by a rows
        const Cx zj = std::exp(Cx(0.0, 2.0 * M_PI * b * j / d));
        m((j + a) % d, j) = phase * zj;
    }
    return m;
}

/// Orbit of a fiducial under all d^2 displacements, in lexicographic (a,b)
/// order; index i = a*d + b. Returns unit vectors, not projectors.
inline std::vector<Vector> wh_orbit_vectors(const Fiducial& fiducial) {
    const int d = fiducial.dim();
    std::vector<Vector> vecs;
    vecs.reserve(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            vecs.push_back(wh_displacement(d, a, b) * fiducial.amplitudes());
    return vecs;
}

/// Projector orbit: candidate list of d^2 rank-one projectors (unverified).
inline std::vector<Matrix> orbit(const Fiducial& fiducial) {
    std::vector<Matrix> projs;
    const auto vecs = wh_orbit_vectors(fiducial);
    projs.reserve(vecs.size());
    for (const auto& v : vecs) projs.push_back(v * v.adjoint());
    return projs;
}

}  // namespace qbist
