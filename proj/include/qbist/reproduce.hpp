#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "qbist/fiducial_search.hpp"
#include "qbist/geometry.hpp"
#include "qbist/io.hpp"
#include "qbist/measurement.hpp"
#include "qbist/random.hpp"
#include "qbist/report.hpp"
#include "qbist/representation.hpp"
#include "qbist/search.hpp"
#include "qbist/sic_system.hpp"
#include "qbist/structure_constants.hpp"
#include "qbist/types.hpp"

namespace qbist {

/// One named, quantitative claim checked end-to-end, with the measured values.
struct ClaimOutcome {
    std::string id;
    bool passed = false;
    Report report;
};

/// Shared state for running claims: reference systems and structure constants
/// are built once per dimension and reused (fiducial searches dominate the
/// setup cost). Deterministic for a fixed seed.
class ClaimContext {
  public:
    explicit ClaimContext(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    const SicSystem& sic(int d) {
        auto it = sics_.find(d);
        if (it == sics_.end()) {
            Fiducial f = d <= 3 ? known_fiducial(d)
                                : find_fiducial(d, mix_seed(seed_, static_cast<std::uint64_t>(d)), 50);
            it = sics_.emplace(d, SicSystem::from_fiducial(f)).first;
        }
        return it->second;
    }

    const StructureConstants& constants(int d) {
        auto it = constants_.find(d);
        if (it == constants_.end()) it = constants_.emplace(d, StructureConstants(sic(d))).first;
        return it->second;
    }

    /// Stream-seeded generator: stable per (claim, purpose) tag.
    Rng rng(std::uint64_t tag) const { return Rng(mix_seed(seed_, tag)); }

  private:
    std::uint64_t seed_;
    std::map<int, SicSystem> sics_;
    std::map<int, StructureConstants> constants_;
};

namespace claims {

inline void note(Report& r, const std::string& key, double measured, double allowed,
                 bool& passed) {
    r.put(key, measured);
    if (!(measured <= allowed)) passed = false;
}

/// Equiangularity of the reference systems: known constructions at d = 2 and
/// across the d = 3 family, searched systems at d = 4..6, all with Gram error
/// at most 1e-9.
inline ClaimOutcome sic_verify(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "sic-verify";
    out.passed = true;
    const double tol = 1e-9;
    out.report.put("tolerance", tol);

    const GramReport r2 = verify_sic(orbit(known_fiducial(2)), tol);
    note(out.report, "d2.max_offdiag_error", r2.max_offdiag_error, tol, out.passed);

    const std::vector<double> ts{0.0, 0.3, 0.7, 1.1, 2.0, M_PI / 2};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const GramReport r3 = verify_sic(orbit(known_fiducial(3, ts[i])), tol);
        const std::string key = "d3.family." + std::to_string(i);
        out.report.put(key + ".t", ts[i]);
        note(out.report, key + ".max_offdiag_error", r3.max_offdiag_error, tol, out.passed);
    }

    for (int d = 4; d <= 6; ++d) {
        const GramReport r = ctx.sic(d).report();
        const std::string key = "d" + std::to_string(d);
        note(out.report, key + ".max_offdiag_error", r.max_offdiag_error, tol, out.passed);
        note(out.report, key + ".resolution_error", r.resolution_error, 1e-10, out.passed);
    }
    return out;
}

/// Bijection round trip: rho -> p -> rho reproduces every matrix entry to
/// 1e-12 over 100 random mixed states per dimension up to 6.
inline ClaimOutcome round_trip(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "round-trip";
    out.passed = true;
    const double tol = 1e-12;
    out.report.put("tolerance", tol);
    for (int d = 2; d <= 6; ++d) {
        const SicSystem& sic = ctx.sic(d);
        Rng rng = ctx.rng(200 + static_cast<std::uint64_t>(d));
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            const DensityMatrix rho(random_density_entries(d, rank, rng));
            const ProbabilityVector p = state_to_probs(sic, rho);
            const Matrix back = probs_to_state_raw(sic, p.values());
            worst = std::max(worst, (back - rho.matrix()).cwiseAbs().maxCoeff());
        }
        note(out.report, "d" + std::to_string(d) + ".max_entry_error", worst, tol, out.passed);
    }
    return out;
}

/// Born rule in probability form vs the direct trace tr(rho F_j), over random
/// states and random measurements with 2..d^2 outcomes.
inline ClaimOutcome born_rule_claim(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "born-rule";
    out.passed = true;
    const double tol = 1e-10;
    out.report.put("tolerance", tol);
    for (int d = 2; d <= 5; ++d) {
        const SicSystem& sic = ctx.sic(d);
        Rng rng = ctx.rng(300 + static_cast<std::uint64_t>(d));
        double worst = 0.0;
        double worst_total = 0.0;
        double worst_negative = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 2 + trial % (d * d - 1);
            const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            const DensityMatrix rho(random_density_entries(d, rank, rng));
            const PovmMeasurement povm(random_povm(d, n, rng));
            const RealMatrix r = conditional_matrix(sic, povm);
            const RealVector pr = born_rule(d, state_to_probs(sic, rho).values(), r);
            for (int j = 0; j < n; ++j) {
                const double direct = std::real((rho.matrix() * povm.effect(j)).trace());
                worst = std::max(worst, std::abs(pr(j) - direct));
                worst_negative = std::min(worst_negative, pr(j));
            }
            worst_total = std::max(worst_total, std::abs(pr.sum() - 1.0));
        }
        const std::string key = "d" + std::to_string(d);
        note(out.report, key + ".max_deviation", worst, tol, out.passed);
        note(out.report, key + ".max_total_probability_error", worst_total, tol, out.passed);
        out.report.put(key + ".min_outcome_probability", worst_negative);
        if (worst_negative < -1e-12) out.passed = false;
    }
    return out;
}

/// Purity conditions: both scalar equations hold to 1e-9 on Haar-random pure
/// states and fail (quadratic strictly below its bound) on random mixed
/// states of rank at least 2.
inline ClaimOutcome purity(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "purity";
    out.passed = true;
    const double tol = 1e-9;
    out.report.put("tolerance", tol);
    for (int d = 2; d <= 4; ++d) {
        const SicSystem& sic = ctx.sic(d);
        const StructureConstants& sc = ctx.constants(d);
        Rng rng = ctx.rng(400 + static_cast<std::uint64_t>(d));
        double worst_quad = 0.0, worst_cubic = 0.0, worst_imag = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Vector psi = haar_state(d, rng);
            const RealVector p = state_to_probs(sic, DensityMatrix::pure(psi)).values();
            const PurityReport rep = purity_conditions(sc, p, tol);
            worst_quad = std::max(worst_quad, std::abs(rep.quadratic_lhs - rep.quadratic_target));
            worst_cubic = std::max(worst_cubic, std::abs(rep.cubic_lhs - rep.cubic_target));
            worst_imag = std::max(worst_imag, rep.cubic_imag_magnitude);
            if (!rep.is_pure) out.passed = false;
        }
        int mixed_detected = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int rank = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
            const DensityMatrix rho(random_density_entries(d, rank, rng));
            const RealVector p = state_to_probs(sic, rho).values();
            const PurityReport rep = purity_conditions(sc, p, tol);
            if (!rep.is_pure && rep.quadratic_lhs < rep.quadratic_target - tol) ++mixed_detected;
        }
        const std::string key = "d" + std::to_string(d);
        note(out.report, key + ".max_quadratic_deviation", worst_quad, tol, out.passed);
        note(out.report, key + ".max_cubic_deviation", worst_cubic, tol, out.passed);
        note(out.report, key + ".max_cubic_imag", worst_imag, 1e-10, out.passed);
        out.report.put(key + ".mixed_detected", mixed_detected);
        if (mixed_detected != 100) out.passed = false;
    }
    return out;
}

/// The coupled quadratic fixed-point equations: residual at most 1e-9 on pure
/// states, and exactly (d-1)/(3d^3(d+1)) per component at the center.
inline ClaimOutcome fixed_point(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "fixed-point";
    out.passed = true;
    const double tol = 1e-9;
    out.report.put("tolerance", tol);
    for (int d = 2; d <= 4; ++d) {
        const SicSystem& sic = ctx.sic(d);
        const StructureConstants& sc = ctx.constants(d);
        Rng rng = ctx.rng(500 + static_cast<std::uint64_t>(d));
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Vector psi = haar_state(d, rng);
            const RealVector p = state_to_probs(sic, DensityMatrix::pure(psi)).values();
            worst = std::max(worst, quadratic_fixed_point(sc, p).cwiseAbs().maxCoeff());
        }
        const std::string key = "d" + std::to_string(d);
        note(out.report, key + ".max_pure_residual", worst, tol, out.passed);

        const RealVector rc = quadratic_fixed_point(sc, simplex_center(d));
        const double expected = (d - 1.0) / (3.0 * d * d * d * (d + 1.0));
        out.report.put(key + ".center_residual", rc.maxCoeff());
        out.report.put(key + ".center_residual_expected", expected);
        if (std::abs(rc.maxCoeff() - expected) > 1e-12 ||
            std::abs(rc.minCoeff() - expected) > 1e-12)
            out.passed = false;
    }
    return out;
}

/// At d = 2 the circumscribed sphere is also the insphere: its radius equals
/// the facet distance and every sphere point stays inside the simplex. From
/// d = 3 on the sphere pokes out of the simplex.
inline ClaimOutcome d2_insphere(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "d2-insphere";
    out.passed = true;
    const double r2 = circumscribed_radius(2);
    const double f2 = face_distance2(2, 1);
    out.report.put("radius2", r2);
    out.report.put("facet_distance2", f2);
    if (std::abs(r2 - f2) > 1e-16) out.passed = false;
    if (std::abs(r2 - 1.0 / 12.0) > 1e-16) out.passed = false;

    Rng rng = ctx.rng(600);
    double min_component = 1.0;
    for (int trial = 0; trial < 10000; ++trial)
        min_component = std::min(min_component, sphere_point(2, rng).minCoeff());
    out.report.put("d2.min_sphere_component", min_component);
    if (min_component < -1e-12) out.passed = false;

    for (int d = 3; d <= 4; ++d) {
        const RealVector poke = sphere_point_beyond_face(d, 1);
        const std::string key = "d" + std::to_string(d);
        out.report.put(key + ".poke_min_component", poke.minCoeff());
        out.report.put(key + ".poke_on_sphere", sphere_membership(poke).on_sphere);
        if (!(poke.minCoeff() < -1e-4) || !sphere_membership(poke).on_sphere)
            out.passed = false;
    }
    return out;
}

/// Consistency bounds on scalar products of state images, with the upper
/// bound strict for distinct states.
inline ClaimOutcome product_bounds(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "product-bounds";
    out.passed = true;
    out.report.put("tolerance", 1e-12);
    for (int d = 2; d <= 5; ++d) {
        const SicSystem& sic = ctx.sic(d);
        Rng rng = ctx.rng(700 + static_cast<std::uint64_t>(d));
        const double lo = lower_consistency_bound(d);
        const double hi = upper_consistency_bound(d);
        double min_prod = 1.0, max_prod = 0.0, max_distinct_prod = 0.0;
        for (int trial = 0; trial < 10000; ++trial) {
            // alternate pure/pure, pure/mixed, and mixed/mixed pairs
            auto draw = [&](bool pure) {
                if (pure) return state_to_probs(sic, DensityMatrix::pure(haar_state(d, rng))).values();
                const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
                return state_to_probs(sic, DensityMatrix(random_density_entries(d, rank, rng))).values();
            };
            const RealVector p = draw(trial % 2 == 0);
            const RealVector q = draw(trial % 3 == 0);
            const double prod = p.dot(q);
            min_prod = std::min(min_prod, prod);
            max_prod = std::max(max_prod, prod);
            if ((p - q).cwiseAbs().maxCoeff() > 1e-12)
                max_distinct_prod = std::max(max_distinct_prod, prod);
        }
        const std::string key = "d" + std::to_string(d);
        out.report.put(key + ".min_product", min_prod);
        out.report.put(key + ".max_product", max_prod);
        out.report.put(key + ".lower_bound", lo);
        out.report.put(key + ".upper_bound", hi);
        if (min_prod < lo - 1e-12 || max_prod > hi + 1e-12) out.passed = false;
        if (!(max_distinct_prod < hi)) out.passed = false;  // strictness for p != q
        // the self-product of a basis distribution sits exactly at the bound
        const double self = basis_distribution(d, 0).squaredNorm();
        out.report.put(key + ".basis_self_product", self);
        if (std::abs(self - hi) > 1e-15) out.passed = false;
    }
    return out;
}

/// Maximal allowed component 1/d, attained exactly by the basis
/// distributions, which are the only on-sphere vectors reaching it.
inline ClaimOutcome max_component(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "max-component";
    out.passed = true;
    out.report.put("tolerance", 1e-12);
    for (int d = 2; d <= 5; ++d) {
        const SicSystem& sic = ctx.sic(d);
        Rng rng = ctx.rng(800 + static_cast<std::uint64_t>(d));
        double worst = 0.0;
        double worst_forced_dev = 0.0;
        for (int trial = 0; trial < 10000; ++trial) {
            const RealVector p = state_to_probs(sic, DensityMatrix::pure(haar_state(d, rng))).values();
            const MaxComponentReport rep = max_component_check(p, 1e-9, 1e-10);
            worst = std::max(worst, rep.max_value);
            if (rep.forced_basis >= 0)
                worst_forced_dev = std::max(worst_forced_dev, rep.basis_deviation);
        }
        // the images of the reference projectors themselves
        for (int k = 0; k < d * d; ++k) {
            const RealVector ek =
                state_to_probs(sic, DensityMatrix(sic.projector(k))).values();
            const MaxComponentReport rep = max_component_check(ek, 1e-9, 1e-10);
            if (rep.forced_basis != k) out.passed = false;
            worst_forced_dev = std::max(worst_forced_dev, rep.basis_deviation);
        }
        const std::string key = "d" + std::to_string(d);
        out.report.put(key + ".max_component", worst);
        out.report.put(key + ".bound", 1.0 / d);
        note(out.report, key + ".max_forced_basis_deviation", worst_forced_dev, 1e-8,
             out.passed);
        if (worst > 1.0 / d + 1e-12) out.passed = false;
        const double exact = basis_distribution(d, 0).maxCoeff();
        if (exact != 1.0 / d) out.passed = false;  // constructed e_k attains 1/d exactly
    }
    return out;
}

/// Orthonormal bases map to maximally distant sets of m = d points whose
/// centered sum vanishes; the closed formula goes negative at m = d+1,
/// certifying that no larger set exists.
inline ClaimOutcome max_distant(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "max-distant";
    out.passed = true;
    for (int d = 2; d <= 5; ++d) {
        const SicSystem& sic = ctx.sic(d);
        std::vector<Vector> basis;
        for (int j = 0; j < d; ++j) {
            Vector b = Vector::Zero(d);
            b(j) = Cx(1.0, 0.0);
            basis.push_back(b);
        }
        const std::string key = "d" + std::to_string(d);
        const MaxDistantSet set = orthobasis_to_distant(sic, basis, 1e-9);
        out.report.put(key + ".members", static_cast<long long>(set.members.size()));
        out.report.put(key + ".gram_residual", set.gram_residual);
        if (static_cast<int>(set.members.size()) != d || set.gram_residual > 1e-9)
            out.passed = false;

        const double g2 = gram_vector_norm2(set.members, 1e-9);
        note(out.report, key + ".gram_vector_norm2", g2, 1e-10, out.passed);

        RealVector mix = RealVector::Zero(d * d);
        for (const auto& p : set.members) mix += p / d;
        const double mix_dev = (mix - simplex_center(d)).cwiseAbs().maxCoeff();
        note(out.report, key + ".uniform_mixture_deviation", mix_dev, 1e-12, out.passed);

        const double beyond = gram_vector_norm2_formula(d, d + 1);
        out.report.put(key + ".formula_at_m_plus_1", beyond);
        if (!(beyond < 0.0)) out.passed = false;

        // a Haar-random basis behaves the same way
        Rng rng = ctx.rng(900 + static_cast<std::uint64_t>(d));
        const Matrix u = haar_unitary(d, rng);
        std::vector<Vector> rndbasis;
        for (int j = 0; j < d; ++j) rndbasis.push_back(u.col(j));
        const MaxDistantSet rset = orthobasis_to_distant(sic, rndbasis, 1e-9);
        note(out.report, key + ".random_basis_gram_residual", rset.gram_residual, 1e-9,
             out.passed);
    }
    return out;
}

/// Zero-count bounds: the cap d(d-1)/2, never exceeded by random or
/// constructed states, and at least d-1 zeros from orthogonal-complement
/// constructions.
inline ClaimOutcome zero_bounds(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "zero-bounds";
    out.passed = true;
    const std::vector<int> expected{1, 3, 6, 10};
    for (int d = 2; d <= 5; ++d) {
        const std::string key = "d" + std::to_string(d);
        const int zb = zero_bound(d);
        out.report.put(key + ".zero_bound", zb);
        if (zb != expected[static_cast<std::size_t>(d - 2)]) out.passed = false;

        const SicSystem& sic = ctx.sic(d);
        Rng rng = ctx.rng(1000 + static_cast<std::uint64_t>(d));
        int worst_random = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            const RealVector p =
                state_to_probs(sic, DensityMatrix::pure(haar_state(d, rng))).values();
            worst_random = std::max(worst_random, zero_count(p));
        }
        out.report.put(key + ".max_random_zero_count", worst_random);
        if (worst_random > zb) out.passed = false;

        {
            int min_constructed = d * d, max_constructed = 0;
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<int> subset;
                while (static_cast<int>(subset.size()) < d - 1) {
                    const int idx = static_cast<int>(rng.below(static_cast<std::uint64_t>(d * d)));
                    if (std::find(subset.begin(), subset.end(), idx) == subset.end())
                        subset.push_back(idx);
                }
                const DensityMatrix psi = orthogonal_complement_state(sic, subset);
                const RealVector p = state_to_probs(sic, psi).values();
                for (int i : subset)
                    if (p(i) > 1e-10) out.passed = false;
                const int z = zero_count(p);
                min_constructed = std::min(min_constructed, z);
                max_constructed = std::max(max_constructed, z);
            }
            out.report.put(key + ".min_constructed_zero_count", min_constructed);
            out.report.put(key + ".max_constructed_zero_count", max_constructed);
            if (min_constructed < d - 1 || max_constructed > zb) out.passed = false;
        }
    }
    return out;
}

/// At d = 3 every pair of max-zero patterns is consistent, and
/// disjoint-support pairs sit exactly at the lower bound — checked over all
/// C(9,3) = 84 supports in exact rational arithmetic.
inline ClaimOutcome d3_permutations(ClaimContext&) {
    ClaimOutcome out;
    out.id = "d3-permutations";
    out.passed = true;
    using Rat = boost::rational<long long>;
    const Rat bound(1, 12);   // 1/(d(d+1)) at d = 3
    const Rat level(1, 6);    // nonzero component value 2/(d(d+1))

    // enumerate all supports of 6 nonzero positions among 9
    std::vector<unsigned> supports;
    for (unsigned mask = 0; mask < (1u << 9); ++mask)
        if (std::popcount(mask) == 6) supports.push_back(mask);
    out.report.put("supports", static_cast<long long>(supports.size()));
    if (supports.size() != 84) out.passed = false;

    long long inconsistent = 0, at_bound = 0, disjoint_zero_pairs = 0;
    for (std::size_t a = 0; a < supports.size(); ++a) {
        for (std::size_t b = a + 1; b < supports.size(); ++b) {
            const int s1 = std::popcount(supports[a] & supports[b]);
            const Rat prod = Rat(s1) * level * level;
            if (prod < bound) ++inconsistent;
            if (prod == bound) ++at_bound;
            const bool disjoint_zeros = ((~supports[a] & ~supports[b]) & 0x1FFu) == 0;
            if (disjoint_zeros) {
                ++disjoint_zero_pairs;
                if (prod != bound) out.passed = false;
            }
        }
    }
    out.report.put("inconsistent_pairs", inconsistent);
    out.report.put("pairs_at_lower_bound", at_bound);
    out.report.put("disjoint_zero_pairs", disjoint_zero_pairs);
    if (inconsistent != 0 || at_bound == 0 || disjoint_zero_pairs == 0) out.passed = false;

    const PermutationClassification cls = permutation_consistency_classify(3);
    out.report.put("classify.all_consistent", cls.all_consistent);
    out.report.put("classify.min_s1", cls.min_s1_observed);
    if (!cls.all_consistent || cls.min_s1_observed != 3) out.passed = false;
    return out;
}

/// The d = 4 clique bound: no more than three pairwise maximally distant
/// max-zero patterns, strictly below the geometric cap m = d = 4.
inline ClaimOutcome d4_clique(ClaimContext&) {
    ClaimOutcome out;
    out.id = "d4-clique";
    out.passed = true;
    const CliqueResult res = distant_clique_search(4);
    out.report.put("max_clique_size", res.max_clique_size);
    out.report.put("geometric_cap", 4);
    if (res.max_clique_size != 3) out.passed = false;

    // the witness really is pairwise maximally distant
    std::vector<RealVector> vecs;
    for (const auto& support : res.witness) {
        std::vector<int> zeros;
        std::vector<bool> nonzero(16, false);
        for (int i : support) nonzero[static_cast<std::size_t>(i)] = true;
        for (int i = 0; i < 16; ++i)
            if (!nonzero[static_cast<std::size_t>(i)]) zeros.push_back(i);
        vecs.push_back(max_zero_vector(4, zeros));
    }
    const MaxDistantSet set = verify_max_distant(vecs, 1e-10);
    out.report.put("witness_gram_residual", set.gram_residual);
    if (static_cast<int>(set.members.size()) != 3) out.passed = false;
    return out;
}

/// Rank-deficient subsets of reference vectors: none of size d at d = 4, 5;
/// dependent triples exist in the d = 3 family.
inline ClaimOutcome subspace_search(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "subspace-search";
    out.passed = true;
    const SicSystem sic3 = SicSystem::from_fiducial(known_fiducial(3, 0.0));
    const auto hits3 = subspace_dependence_search(sic3, 3);
    out.report.put("d3.t", 0.0);
    out.report.put("d3.dependent_triples", static_cast<long long>(hits3.size()));
    if (hits3.empty()) out.passed = false;

    for (int d = 4; d <= 5; ++d) {
        const auto hits = subspace_dependence_search(ctx.sic(d), d);
        const std::string key = "d" + std::to_string(d);
        out.report.put(key + ".subsets",
                       static_cast<long long>(d == 4 ? 1820 : 53130));
        out.report.put(key + ".hits", static_cast<long long>(hits.size()));
        if (!hits.empty()) out.passed = false;
    }
    return out;
}

/// Every state decomposes into at most d pure, pairwise maximally distant
/// probability vectors that reproduce it as a mixture.
inline ClaimOutcome caratheodory(ClaimContext& ctx) {
    ClaimOutcome out;
    out.id = "caratheodory";
    out.passed = true;
    const double tol = 1e-10;
    out.report.put("tolerance", tol);
    for (int d = 2; d <= 5; ++d) {
        const SicSystem& sic = ctx.sic(d);
        Rng rng = ctx.rng(1400 + static_cast<std::uint64_t>(d));
        double worst_mix = 0.0, worst_gram = 0.0;
        int max_terms = 0;
        for (int trial = 0; trial < 50; ++trial) {
            const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            const DensityMatrix rho(random_density_entries(d, rank, rng));
            const RealVector p = state_to_probs(sic, rho).values();
            const auto terms = caratheodory_decompose(sic, rho);
            max_terms = std::max(max_terms, static_cast<int>(terms.size()));
            if (static_cast<int>(terms.size()) > d) out.passed = false;

            RealVector mix = RealVector::Zero(d * d);
            std::vector<RealVector> members;
            for (const auto& t : terms) {
                mix += t.weight * t.probs;
                members.push_back(t.probs);
            }
            worst_mix = std::max(worst_mix, (mix - p).cwiseAbs().maxCoeff());
            const MaxDistantSet set = verify_max_distant(members, 1e-9);
            worst_gram = std::max(worst_gram, set.gram_residual);
        }
        const std::string key = "d" + std::to_string(d);
        note(out.report, key + ".max_mixture_error", worst_mix, tol, out.passed);
        note(out.report, key + ".max_gram_residual", worst_gram, 1e-9, out.passed);
        out.report.put(key + ".max_terms", max_terms);
    }
    return out;
}

}  // namespace claims

inline const std::vector<std::string>& claim_ids() {
    static const std::vector<std::string> ids{
        "sic-verify",   "round-trip",  "born-rule",       "purity",
        "fixed-point",  "d2-insphere", "product-bounds",  "max-component",
        "max-distant",  "zero-bounds", "d3-permutations", "d4-clique",
        "subspace-search", "caratheodory"};
    return ids;
}

inline ClaimOutcome run_claim(ClaimContext& ctx, const std::string& id) {
    if (id == "sic-verify") return claims::sic_verify(ctx);
    if (id == "round-trip") return claims::round_trip(ctx);
    if (id == "born-rule") return claims::born_rule_claim(ctx);
    if (id == "purity") return claims::purity(ctx);
    if (id == "fixed-point") return claims::fixed_point(ctx);
    if (id == "d2-insphere") return claims::d2_insphere(ctx);
    if (id == "product-bounds") return claims::product_bounds(ctx);
    if (id == "max-component") return claims::max_component(ctx);
    if (id == "max-distant") return claims::max_distant(ctx);
    if (id == "zero-bounds") return claims::zero_bounds(ctx);
    if (id == "d3-permutations") return claims::d3_permutations(ctx);
    if (id == "d4-clique") return claims::d4_clique(ctx);
    if (id == "subspace-search") return claims::subspace_search(ctx);
    if (id == "caratheodory") return claims::caratheodory(ctx);
    throw std::invalid_argument("unknown claim id: " + id);
}

inline std::vector<ClaimOutcome> run_all_claims(ClaimContext& ctx) {
    std::vector<ClaimOutcome> outcomes;
    for (const std::string& id : claim_ids()) outcomes.push_back(run_claim(ctx, id));
    return outcomes;
}

}  // namespace qbist
