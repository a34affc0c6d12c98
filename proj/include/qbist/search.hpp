#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include <Eigen/SVD>

#include "qbist/geometry.hpp"
#include "qbist/random.hpp"
#include "qbist/representation.hpp"
#include "qbist/sic_system.hpp"
#include "qbist/types.hpp"

namespace qbist {

/// A combinatorial search whose enumeration size exceeds the allowed budget.
/// Mapped to its own exit status by the command-line tool.
struct InfeasibleSearch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using Support = std::uint64_t;  // bitmask of nonzero positions, d^2 <= 64 bits

inline int popcount(Support s) { return std::popcount(s); }

/// Exact scalar product of two max-zero patterns sharing s1 nonzero
/// positions: s1 * (2/(d(d+1)))^2 as a rational number.
inline boost::rational<long long> pattern_product(int d, int s1) {
    const long long dd1 = static_cast<long long>(d) * (d + 1);
    return boost::rational<long long>(4 * s1, dd1 * dd1);
}

/// Exact lower consistency bound 1/(d(d+1)).
inline boost::rational<long long> lower_bound_exact(int d) {
    return boost::rational<long long>(1, static_cast<long long>(d) * (d + 1));
}

/// Next bitmask with the same popcount (Gosper's hack); 0 when exhausted.
inline Support next_support(Support v, int total_bits) {
    const Support limit = total_bits >= 64 ? ~Support(0) : (Support(1) << total_bits);
    const Support c = v & (~v + 1);
    const Support r = v + c;
    if (r >= limit) return 0;
    return (((r ^ v) >> 2) / c) | r;
}

inline Support first_support(int bits) { return (Support(1) << bits) - 1; }

inline std::vector<int> support_to_indices(Support s, int total_bits) {
    std::vector<int> idx;
    for (int i = 0; i < total_bits; ++i)
        if (s & (Support(1) << i)) idx.push_back(i);
    return idx;
}

}  // namespace detail

/// Classification of all pairs of max-zero supports at dimension d. By
/// permutation symmetry one member of the pair is fixed to the canonical
/// support {0, ..., d(d+1)/2 - 1}; the partner ranges over all supports
/// (exhaustively for d <= 5, by fixed-seed sampling plus the analytically
/// minimal-overlap construction for d = 6).
struct PermutationClassification {
    bool all_consistent = false;
    int min_s1_observed = 0;
    long long pairs_checked = 0;
    bool exhaustive = false;
};

inline PermutationClassification permutation_consistency_classify(int d) {
    check_dim(d);
    if (d > 6) throw InfeasibleSearch("support enumeration is capped at d = 6");
    const int n = d * d;
    const int m = d * (d + 1) / 2;  // nonzero positions per pattern
    const detail::Support canonical = detail::first_support(m);

    PermutationClassification out;
    out.min_s1_observed = m + 1;
    auto take = [&](detail::Support s) {
        const int s1 = detail::popcount(s & canonical);
        out.min_s1_observed = std::min(out.min_s1_observed, s1);
        ++out.pairs_checked;
    };

    if (d <= 5) {
        out.exhaustive = true;
        for (detail::Support s = canonical; s != 0; s = detail::next_support(s, n)) take(s);
    } else {
        // Deterministic witness with the smallest possible overlap
        // s1 = 2m - d^2: all non-canonical positions filled first.
        detail::Support worst = ~detail::Support(0) << m;
        worst &= detail::first_support(n);
        worst |= detail::first_support(2 * m - n);
        take(worst);
        Rng rng(mix_seed(7, 0));
        for (int trial = 0; trial < 200000; ++trial) {
            // random support: shuffle positions, keep the first m
            std::vector<int> pos(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(i)] = i;
            for (int i = n - 1; i > 0; --i)
                std::swap(pos[static_cast<std::size_t>(i)],
                          pos[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
            detail::Support s = 0;
            for (int i = 0; i < m; ++i) s |= detail::Support(1) << pos[static_cast<std::size_t>(i)];
            take(s);
        }
    }
    out.all_consistent = 4 * out.min_s1_observed >= d * (d + 1);
    return out;
}

/// Result of the maximally-distant clique search over max-zero supports.
struct CliqueResult {
    int dim = 0;
    std::string pattern;                     ///< human-readable support description
    int max_clique_size = 0;
    std::vector<std::vector<int>> witness;   ///< supports as sorted nonzero-index lists
};

namespace detail {

/// Branch-and-bound maximum clique on an adjacency list (small graphs).
inline void max_clique_extend(const std::vector<std::vector<char>>& adj,
                              std::vector<int>& current, std::vector<int>& candidates,
                              std::vector<int>& best) {
    if (current.size() + candidates.size() <= best.size()) return;  // bound
    if (candidates.empty()) {
        if (current.size() > best.size()) best = current;
        return;
    }
    while (!candidates.empty()) {
        if (current.size() + candidates.size() <= best.size()) return;
        const int v = candidates.back();
        candidates.pop_back();
        std::vector<int> next;
        for (int u : candidates)
            if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) next.push_back(u);
        current.push_back(v);
        max_clique_extend(adj, current, next, best);
        current.pop_back();
    }
}

}  // namespace detail

/// Exhaustive search for the largest set of pairwise maximally distant
/// max-zero vectors. Vertices are the zero/nonzero supports; an edge requires
/// the pairwise scalar product to equal 1/(d(d+1)) exactly, decided in
/// rational arithmetic (s1 nonzero overlaps give product 4 s1/(d(d+1))^2).
/// Permutation covariance lets us fix the canonical support as a member.
inline CliqueResult distant_clique_search(int d) {
    check_dim(d);
    if (d > 5) throw InfeasibleSearch("distant clique search supports d <= 5");
    const int n = d * d;
    const int m = d * (d + 1) / 2;
    const detail::Support canonical = detail::first_support(m);

    CliqueResult res;
    res.dim = d;
    res.pattern = std::to_string(zero_bound(d)) + " zeros, value 2/(d(d+1)) on " +
                  std::to_string(m) + " positions";

    // Edge condition: product == 1/(d(d+1))  <=>  4*s1 == d*(d+1).
    const boost::rational<long long> bound = detail::lower_bound_exact(d);
    auto maximally_distant = [&](detail::Support a, detail::Support b) {
        return detail::pattern_product(d, detail::popcount(a & b)) == bound;
    };

    // Neighbors of the canonical support; any maximum clique can be permuted
    // to contain it, so the search runs inside its neighborhood.
    std::vector<detail::Support> nodes;
    for (detail::Support s = canonical; s != 0; s = detail::next_support(s, n))
        if (s != canonical && maximally_distant(canonical, s)) nodes.push_back(s);

    std::vector<int> best;
    if (!nodes.empty()) {
        const std::size_t nn = nodes.size();
        std::vector<std::vector<char>> adj(nn, std::vector<char>(nn, 0));
        for (std::size_t a = 0; a < nn; ++a)
            for (std::size_t b = a + 1; b < nn; ++b)
                adj[a][b] = adj[b][a] = maximally_distant(nodes[a], nodes[b]) ? 1 : 0;
        std::vector<int> current, candidates;
        for (int i = static_cast<int>(nn) - 1; i >= 0; --i) candidates.push_back(i);
        detail::max_clique_extend(adj, current, candidates, best);
    }

    res.max_clique_size = static_cast<int>(best.size()) + 1;  // + canonical
    res.witness.push_back(detail::support_to_indices(canonical, n));
    for (int idx : best)
        res.witness.push_back(
            detail::support_to_indices(nodes[static_cast<std::size_t>(idx)], n));
    std::sort(res.witness.begin() + 1, res.witness.end());
    return res;
}

/// A subset of reference vectors confined to a proper subspace.
struct SubspaceHit {
    std::vector<int> subset;               ///< 0-based indices into the SIC
    int rank = 0;
    std::vector<double> singular_values;   ///< all |subset| values, descending
};

namespace detail {

inline long long binomial_capped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    long long c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);
        if (c > cap) return cap + 1;
    }
    return c;
}

/// Numerical rank with a gap certificate: singular values below
/// 1e-8 * sigma_max count as zero, and a genuine hit needs a factor >= 1e3
/// between the smallest kept and the largest dropped value.
struct RankCertificate {
    int rank = 0;
    bool certified = true;
};

inline RankCertificate certified_rank(const Eigen::VectorXd& sv) {
    RankCertificate rc;
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cut = 1e-8 * smax;
    while (rc.rank < sv.size() && sv(rc.rank) >= cut) ++rc.rank;
    if (rc.rank < sv.size() && rc.rank > 0)
        rc.certified = sv(rc.rank - 1) >= 1e3 * sv(rc.rank);
    return rc;
}

}  // namespace detail

/// Enumerate k-subsets of the d^2 reference vectors and report every subset
/// whose span has dimension <= d-1 (equivalently, a dependent subset when
/// k <= d). Enumeration over C(d^2, k) subsets is refused above `budget`
/// unless `exhaustive` forces it.
inline std::vector<SubspaceHit> subspace_dependence_search(const SicSystem& sic, int k,
                                                           long long budget = 2000000,
                                                           bool exhaustive = false) {
    const int n = sic.size();
    const int d = sic.dim();
    if (k < 2 || k > n) throw std::invalid_argument("subset size must satisfy 2 <= k <= d^2");
    if (!exhaustive) {
        const long long count = detail::binomial_capped(n, k, budget);
        if (count > budget)
            throw InfeasibleSearch("C(" + std::to_string(n) + ", " + std::to_string(k) +
                                   ") exceeds the enumeration budget of " +
                                   std::to_string(budget));
    }

    const std::vector<Vector> vecs = sic_vectors(sic);
    std::vector<SubspaceHit> hits;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    Matrix a(d, k);
    while (true) {
        for (int c = 0; c < k; ++c) a.col(c) = vecs[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])];
        Eigen::JacobiSVD<Matrix> svd(a);
        const Eigen::VectorXd sv = svd.singularValues();
        const detail::RankCertificate rc = detail::certified_rank(sv);
        if (rc.certified && rc.rank <= d - 1 && rc.rank < k) {
            SubspaceHit hit;
            hit.subset = idx;
            hit.rank = rc.rank;
            hit.singular_values.assign(sv.data(), sv.data() + sv.size());
            hits.push_back(std::move(hit));
        }
        // next combination in lexicographic order
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int c = pos + 1; c < k; ++c)
            idx[static_cast<std::size_t>(c)] = idx[static_cast<std::size_t>(c - 1)] + 1;
    }
    return hits;
}

/// A pure state orthogonal to the chosen reference vectors: the singular
/// vector of the smallest singular value of the subset matrix, with the
/// global phase fixed (largest-magnitude component real positive). Its image
/// has zeros at every subset index. Throws if the subset spans the whole
/// space.
inline DensityMatrix orthogonal_complement_state(const SicSystem& sic,
                                                 const std::vector<int>& subset) {
    const int d = sic.dim();
    if (subset.empty()) throw std::invalid_argument("empty index subset");
    std::vector<bool> seen(static_cast<std::size_t>(sic.size()), false);
    for (int i : subset) {
        if (i < 0 || i >= sic.size()) throw std::invalid_argument("index out of range");
        if (seen[static_cast<std::size_t>(i)]) throw std::invalid_argument("duplicate index");
        seen[static_cast<std::size_t>(i)] = true;
    }
    const std::vector<Vector> vecs = sic_vectors(sic);
    Matrix a(d, static_cast<int>(subset.size()));
    for (std::size_t c = 0; c < subset.size(); ++c)
        a.col(static_cast<Eigen::Index>(c)) = vecs[static_cast<std::size_t>(subset[c])];
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
    const detail::RankCertificate rc = detail::certified_rank(svd.singularValues());
    if (rc.rank >= d)
        throw std::invalid_argument("subset spans the full space; no orthogonal state exists");
    Vector psi = svd.matrixU().col(d - 1);  // orthogonal to the span
    int pivot = 0;
    double bestmag = 0.0;
    for (int j = 0; j < d; ++j) {
        if (std::abs(psi(j)) > bestmag + 1e-12) {
            bestmag = std::abs(psi(j));
            pivot = j;
        }
    }
    psi *= std::conj(psi(pivot)) / std::abs(psi(pivot));
    return DensityMatrix::pure(psi);
}

}  // namespace qbist
