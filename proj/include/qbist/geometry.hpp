#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbist/random.hpp"
#include "qbist/representation.hpp"
#include "qbist/sic_system.hpp"
#include "qbist/types.hpp"

namespace qbist {

/// The uniform distribution c = (1/d^2, ..., 1/d^2), midpoint of the simplex
/// and image of the maximally mixed state.
inline RealVector simplex_center(int d) {
    check_dim(d);
    return RealVector::Constant(d * d, 1.0 / (d * d));
}

inline int dim_from_length(Eigen::Index n) {
    const int d = static_cast<int>(std::lround(std::sqrt(double(n))));
    if (static_cast<Eigen::Index>(d) * d != n)
        throw std::invalid_argument("vector length must be a square d^2");
    check_dim(d);
    return d;
}

/// p' = p - c. Centered vectors sum to zero; all sphere statements below are
/// about these.
inline RealVector center(const RealVector& p) {
    const int d = dim_from_length(p.size());
    return (p.array() - 1.0 / (d * d)).matrix();
}

inline RealVector uncenter(const RealVector& pp) {
    const int d = dim_from_length(pp.size());
    return (pp.array() + 1.0 / (d * d)).matrix();
}

/// Squared radius of the circumscribed sphere holding every pure-state image:
/// r'^2 = (d-1)/(d^2(d+1)).
inline double circumscribed_radius(int d) {
    check_dim(d);
    return (d - 1.0) / (double(d) * d * (d + 1.0));
}

/// Basis distribution e_k: the image of the k-th reference projector itself,
/// with component 1/d at k and 1/(d(d+1)) elsewhere.
inline RealVector basis_distribution(int d, int k) {
    check_dim(d);
    if (k < 0 || k >= d * d) throw std::invalid_argument("basis index out of range");
    RealVector e = RealVector::Constant(d * d, 1.0 / (d * (d + 1.0)));
    e(k) = 1.0 / d;
    return e;
}

inline std::vector<RealVector> basis_distributions(int d) {
    std::vector<RealVector> out;
    out.reserve(static_cast<std::size_t>(d) * d);
    for (int k = 0; k < d * d; ++k) out.push_back(basis_distribution(d, k));
    return out;
}

/// Scalar products among basis distributions: e_k.e_k = 2/(d(d+1)) (the upper
/// consistency bound) and e_k.e_l = (d+2)/(d(d+1)^2) for k != l.
inline double basis_product_same(int d) {
    check_dim(d);
    return 2.0 / (d * (d + 1.0));
}

inline double basis_product_other(int d) {
    check_dim(d);
    return (d + 2.0) / (d * (d + 1.0) * (d + 1.0));
}

/// Consistency bounds on scalar products of state images:
/// 1/(d(d+1)) <= p.q <= 2/(d(d+1)).
inline double lower_consistency_bound(int d) {
    check_dim(d);
    return 1.0 / (d * (d + 1.0));
}

inline double upper_consistency_bound(int d) {
    check_dim(d);
    return 2.0 / (d * (d + 1.0));
}

struct PairClassification {
    double product = 0.0;
    bool in_bounds = false;
    bool at_lower = false;  ///< maximally distant pair
    bool at_upper = false;  ///< p = q on the sphere
};

/// Classify one scalar product against both consistency bounds at tolerance tol.
inline PairClassification consistency_pair(int d, const RealVector& p, const RealVector& q,
                                           double tol = 1e-10) {
    check_dim(d);
    check_same_dim(dim_from_length(p.size()), d);
    check_same_dim(dim_from_length(q.size()), d);
    PairClassification c;
    c.product = p.dot(q);
    const double lo = lower_consistency_bound(d);
    const double hi = upper_consistency_bound(d);
    c.in_bounds = c.product >= lo - tol && c.product <= hi + tol;
    c.at_lower = std::abs(c.product - lo) <= tol;
    c.at_upper = std::abs(c.product - hi) <= tol;
    return c;
}

struct SphereMembership {
    double norm2_centered = 0.0;
    bool on_sphere = false;  ///< |norm2 - r'^2| <= tol
    bool inside = false;     ///< norm2 < r'^2 - tol
};

inline SphereMembership sphere_membership(const RealVector& p, double tol = 1e-10) {
    const int d = dim_from_length(p.size());
    SphereMembership m;
    m.norm2_centered = center(p).squaredNorm();
    const double r2 = circumscribed_radius(d);
    m.on_sphere = std::abs(m.norm2_centered - r2) <= tol;
    m.inside = m.norm2_centered < r2 - tol;
    return m;
}

struct MaxComponentReport {
    double max_value = 0.0;
    int argmax = -1;
    bool max_ok = false;        ///< max component <= 1/d + tol
    int forced_basis = -1;      ///< k when p_k is within value_tol of 1/d, else -1
    double basis_deviation = 0.0;  ///< max |p - e_k| when forced_basis = k
};

/// The largest-probability argument: any vector inside or on the sphere has
/// max p_i <= 1/d, and hitting 1/d forces p = e_k (Schwarz equality).
/// Requires the vector not to lie outside the sphere (throws otherwise).
inline MaxComponentReport max_component_check(const RealVector& p, double tol = 1e-10,
                                              double value_tol = 1e-10) {
    const int d = dim_from_length(p.size());
    const SphereMembership m = sphere_membership(p, tol);
    if (m.norm2_centered > circumscribed_radius(d) + tol)
        throw std::invalid_argument("vector lies outside the circumscribed sphere");
    MaxComponentReport rep;
    rep.max_value = p.maxCoeff(&rep.argmax);
    rep.max_ok = rep.max_value <= 1.0 / d + tol;
    if (std::abs(rep.max_value - 1.0 / d) <= value_tol) {
        rep.forced_basis = rep.argmax;
        rep.basis_deviation = (p - basis_distribution(d, rep.argmax)).cwiseAbs().maxCoeff();
    }
    return rep;
}

/// Cosine of the angle between any two of m pairwise maximally distant
/// centered vectors: -1/(m-1), the opening angle of a regular simplex with m
/// vertices. At m = d this matches the centered-product computation.
inline double opening_angle(int m) {
    if (m < 2) throw std::invalid_argument("opening angle needs at least two points");
    return -1.0 / (m - 1.0);
}

/// ||sum of m centered maximally distant vectors||^2 by the closed formula:
/// m(d-m)/(d^2(d+1)). Negative at m = d+1, certifying that no more than d
/// such points exist.
inline double gram_vector_norm2_formula(int d, int m) {
    check_dim(d);
    return m * (d - m) / (double(d) * d * (d + 1.0));
}

/// Target scalar product of a maximally distant set: p_k.p_l = (delta_kl + 1)/(d(d+1)).
inline double distant_target(int d, bool same) {
    check_dim(d);
    return (same ? 2.0 : 1.0) / (d * (d + 1.0));
}

struct MaxDistantSet {
    int dim = 0;
    std::vector<RealVector> members;
    double gram_residual = 0.0;  ///< worst |p_k.p_l - (delta_kl+1)/(d(d+1))|
};

/// Validate a candidate maximally distant set: every pairwise product at the
/// lower consistency bound, every member on the sphere (self-product at the
/// upper bound), and no more than d members. Throws naming the first
/// offending pair.
inline MaxDistantSet verify_max_distant(const std::vector<RealVector>& set,
                                        double tol = 1e-10) {
    if (set.empty()) throw std::invalid_argument("empty candidate set");
    const int d = dim_from_length(set.front().size());
    if (static_cast<int>(set.size()) > d)
        throw std::invalid_argument("a maximally distant set can have at most d = " +
                                    std::to_string(d) + " members, got " +
                                    std::to_string(set.size()));
    MaxDistantSet out;
    out.dim = d;
    for (std::size_t k = 0; k < set.size(); ++k) {
        if (set[k].size() != set.front().size())
            throw std::invalid_argument("members must share one dimension");
        for (std::size_t l = k; l < set.size(); ++l) {
            const double target = distant_target(d, k == l);
            const double dev = std::abs(set[k].dot(set[l]) - target);
            out.gram_residual = std::max(out.gram_residual, dev);
            if (dev > tol)
                throw std::invalid_argument(
                    "pair (" + std::to_string(k) + ", " + std::to_string(l) +
                    ") misses the maximally distant product by " + std::to_string(dev));
        }
    }
    out.members = set;
    return out;
}

/// ||sum_k center(p_k)||^2 for a verified maximally distant set; equals
/// m(d-m)/(d^2(d+1)) up to the verification tolerance.
inline double gram_vector_norm2(const std::vector<RealVector>& set, double tol = 1e-10) {
    verify_max_distant(set, tol);  // throws with the offending pair
    RealVector g = RealVector::Zero(set.front().size());
    for (const auto& p : set) g += center(p);
    return g.squaredNorm();
}

/// Map an orthonormal basis through the reference measurement; the images
/// form a maximally distant set with m = d members.
inline MaxDistantSet orthobasis_to_distant(const SicSystem& sic,
                                           const std::vector<Vector>& basis,
                                           double tol = 1e-9) {
    const int d = sic.dim();
    if (static_cast<int>(basis.size()) != d)
        throw std::invalid_argument("expected exactly d basis vectors");
    for (std::size_t a = 0; a < basis.size(); ++a) {
        if (basis[a].size() != d) throw std::invalid_argument("basis vector has wrong dimension");
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const double target = a == b ? 1.0 : 0.0;
            if (std::abs(std::abs(basis[a].dot(basis[b])) - target) > 1e-10)
                throw std::invalid_argument("basis is not orthonormal at pair (" +
                                            std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    }
    std::vector<RealVector> images;
    images.reserve(basis.size());
    for (const auto& b : basis)
        images.push_back(state_to_probs(sic, DensityMatrix::pure(b)).values());
    return verify_max_distant(images, tol);
}

/// Squared distance from the center to a face with n components forced to
/// zero: n/(d^2(d^2-n)).
inline double face_distance2(int d, int n) {
    check_dim(d);
    if (n < 0 || n >= d * d)
        throw std::invalid_argument("zero count must satisfy 0 <= n < d^2");
    return n / (double(d) * d * (double(d) * d - n));
}

/// Maximal number of zero components of any state image: d(d-1)/2.
inline int zero_bound(int d) {
    check_dim(d);
    return d * (d - 1) / 2;
}

/// The extremal two-level vector: zeros exactly on the given d(d-1)/2
/// positions and the uniform value 2/(d(d+1)) elsewhere. Lies on the sphere
/// and touches its simplex face at the face midpoint.
inline RealVector max_zero_vector(int d, const std::vector<int>& zero_positions) {
    check_dim(d);
    const int n = zero_bound(d);
    if (static_cast<int>(zero_positions.size()) != n)
        throw std::invalid_argument("expected exactly d(d-1)/2 = " + std::to_string(n) +
                                    " zero positions");
    RealVector p = RealVector::Constant(d * d, 2.0 / (d * (d + 1.0)));
    std::vector<bool> seen(static_cast<std::size_t>(d) * d, false);
    for (int idx : zero_positions) {
        if (idx < 0 || idx >= d * d) throw std::invalid_argument("zero position out of range");
        if (seen[static_cast<std::size_t>(idx)])
            throw std::invalid_argument("duplicate zero position");
        seen[static_cast<std::size_t>(idx)] = true;
        p(idx) = 0.0;
    }
    return p;
}

/// Count components below the zero-detection threshold.
inline int zero_count(const RealVector& p, double thresh = 1e-10) {
    int n = 0;
    for (int i = 0; i < p.size(); ++i)
        if (p(i) < thresh) ++n;
    return n;
}

struct OverlapStats {
    int s0 = 0;  ///< shared zero positions
    int s1 = 0;  ///< shared nonzero positions
    int s = 0;   ///< s0 + s1
    bool consistent = false;  ///< p.q >= 1/(d(d+1)), i.e. 4 s1 >= d(d+1) exactly
};

/// Overlap combinatorics of two max-zero patterns. Both inputs must be
/// two-level vectors taking only the values 0 and 2/(d(d+1)), with exactly
/// d(d-1)/2 zeros each; consistency is decided by integer arithmetic.
inline OverlapStats overlap_stats(const RealVector& p, const RealVector& q) {
    const int d = dim_from_length(p.size());
    if (q.size() != p.size()) throw std::invalid_argument("pattern dimensions differ");
    const double level = 2.0 / (d * (d + 1.0));
    auto classify = [&](const RealVector& v, int i) {
        if (std::abs(v(i)) <= 1e-12) return 0;
        if (std::abs(v(i) - level) <= 1e-12) return 1;
        throw std::invalid_argument("input is not a two-level max-zero pattern");
    };
    OverlapStats st;
    int zp = 0, zq = 0;
    for (int i = 0; i < p.size(); ++i) {
        const int a = classify(p, i);
        const int b = classify(q, i);
        zp += 1 - a;
        zq += 1 - b;
        if (a == 0 && b == 0) ++st.s0;
        if (a == 1 && b == 1) ++st.s1;
    }
    if (zp != zero_bound(d) || zq != zero_bound(d))
        throw std::invalid_argument("pattern does not have exactly d(d-1)/2 zeros");
    st.s = st.s0 + st.s1;
    st.consistent = 4 * st.s1 >= d * (d + 1);
    return st;
}

/// A point of the circumscribed sphere lying beyond the face whose first n
/// coordinates vanish: walk from the center toward the face midpoint out to
/// the sphere radius. For n below d(d-1)/2 the sphere radius exceeds the face
/// distance, so the zeroed coordinates go negative — the sphere pokes out of
/// the simplex. (At d = 2, n = 1 the two distances agree and the point lands
/// exactly on the facet.)
inline RealVector sphere_point_beyond_face(int d, int n) {
    check_dim(d);
    if (n < 1 || n >= d * d)
        throw std::invalid_argument("zero count must satisfy 1 <= n < d^2");
    const int nn = d * d;
    RealVector mid = RealVector::Zero(nn);
    for (int i = n; i < nn; ++i) mid(i) = 1.0 / (nn - n);
    const RealVector dir = center(mid);
    const double scale = std::sqrt(circumscribed_radius(d)) / dir.norm();
    return uncenter(RealVector(dir * scale));
}

/// Uniform random point of the circumscribed sphere (inside the sum-one
/// hyperplane; components may be negative for d >= 3).
inline RealVector sphere_point(int d, Rng& rng) {
    check_dim(d);
    const int n = d * d;
    RealVector g(n);
    for (int i = 0; i < n; ++i) g(i) = rng.gauss();
    g.array() -= g.mean();  // project onto the sum-zero hyperplane
    g *= std::sqrt(circumscribed_radius(d)) / g.norm();
    return uncenter(g);
}

/// Batch evaluation of the consistency criteria over a set of probability
/// vectors: every pairwise (and self) product against the bounds, sphere
/// membership, maximal components, and zero counts.
struct ConsistencyReport {
    int dim = 0;
    RealMatrix pair_products;                            ///< symmetric, with diagonal
    std::vector<std::pair<int, int>> lower_violations;   ///< product < lower - tol
    std::vector<std::pair<int, int>> upper_violations;   ///< product > upper + tol
    std::vector<bool> on_sphere;
    RealVector max_components;
    std::vector<int> zero_counts;
    bool consistent() const { return lower_violations.empty() && upper_violations.empty(); }
};

inline ConsistencyReport evaluate_consistency(const std::vector<RealVector>& vectors,
                                              double tol = 1e-10) {
    if (vectors.empty()) throw std::invalid_argument("no vectors to evaluate");
    const int d = dim_from_length(vectors.front().size());
    const int m = static_cast<int>(vectors.size());
    ConsistencyReport rep;
    rep.dim = d;
    rep.pair_products.resize(m, m);
    rep.max_components.resize(m);
    for (int k = 0; k < m; ++k) {
        if (vectors[k].size() != vectors.front().size())
            throw std::invalid_argument("vectors must share one dimension");
        rep.on_sphere.push_back(sphere_membership(vectors[k], tol).on_sphere);
        rep.max_components(k) = vectors[k].maxCoeff();
        rep.zero_counts.push_back(zero_count(vectors[k]));
        for (int l = k; l < m; ++l) {
            const double prod = vectors[k].dot(vectors[l]);
            rep.pair_products(k, l) = prod;
            rep.pair_products(l, k) = prod;
            if (prod < lower_consistency_bound(d) - tol) rep.lower_violations.push_back({k, l});
            if (prod > upper_consistency_bound(d) + tol) rep.upper_violations.push_back({k, l});
        }
    }
    return rep;
}

}  // namespace qbist
