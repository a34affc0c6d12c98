// State <-> probability bijection, structure constants, purity conditions,
// and the convex decomposition into maximally distant pure terms.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <qbist/fiducial_search.hpp>
#include <qbist/geometry.hpp>
#include <qbist/random.hpp>
#include <qbist/representation.hpp>
#include <qbist/sic_system.hpp>
#include <qbist/structure_constants.hpp>

using namespace qbist;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SicSystem make_sic(int d, double t = 0.0) {
    return SicSystem::from_fiducial(known_fiducial(d, t));
}

DensityMatrix random_mixed(int d, Rng& rng) { return DensityMatrix(random_density_entries(d, d, rng)); }

}  // namespace

TEST_CASE("density matrix validation") {
    Matrix bad(2, 2);
    bad << Cx(0.5), Cx(0.3, 0.1), Cx(0.3, 0.2), Cx(0.5);
    REQUIRE_THROWS_AS(DensityMatrix(bad), std::invalid_argument);  // not Hermitian

    Matrix scaled = 2.0 * Matrix::Identity(2, 2);
    REQUIRE_THROWS_AS(DensityMatrix(scaled), std::invalid_argument);  // trace 4

    Matrix indefinite(2, 2);
    indefinite << Cx(1.5), Cx(0), Cx(0), Cx(-0.5);
    REQUIRE_THROWS_AS(DensityMatrix(indefinite), std::invalid_argument);

    Vector unnormalized(2);
    unnormalized << Cx(3.0), Cx(4.0, 1.0);
    const DensityMatrix rho = DensityMatrix::pure(unnormalized);
    REQUIRE(std::abs(rho.matrix().trace().real() - 1.0) < 1e-14);
    REQUIRE(rho.purity() == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("maximally mixed state maps to the simplex center") {
    for (int d : {2, 3}) {
        const SicSystem sic = make_sic(d);
        const DensityMatrix rho(Matrix(Matrix::Identity(d, d) / double(d)));
        const RealVector p = state_to_probs(sic, rho).values();
        REQUIRE((p - simplex_center(d)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("a reference projector maps to its basis distribution") {
    const SicSystem sic = make_sic(3, 0.3);
    for (int k = 0; k < sic.size(); ++k) {
        const RealVector p = state_to_probs(sic, DensityMatrix(sic.projector(k))).values();
        REQUIRE((p - basis_distribution(3, k)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("the map to probabilities is affine") {
    const SicSystem sic = make_sic(3);
    Rng rng(11);
    const DensityMatrix rho = random_mixed(3, rng);
    const DensityMatrix sigma = random_mixed(3, rng);
    const double lam = 0.3;
    const Matrix blend = lam * rho.matrix() + (1.0 - lam) * sigma.matrix();
    const RealVector lhs = state_to_probs(sic, DensityMatrix(blend)).values();
    const RealVector rhs = lam * state_to_probs(sic, rho).values() +
                           (1.0 - lam) * state_to_probs(sic, sigma).values();
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("state and probability round trips are tight in both directions") {
    Rng rng(23);
    for (int d = 2; d <= 6; ++d) {
        const SicSystem sic = d <= 3 ? make_sic(d) : SicSystem::from_fiducial(find_fiducial(d, 7));
        for (int trial = 0; trial < 3; ++trial) {
            const DensityMatrix rho = random_mixed(d, rng);
            const ProbabilityVector p = state_to_probs(sic, rho);
            const DensityMatrix back = probs_to_state(sic, p);
            REQUIRE(max_abs(back.matrix() - rho.matrix()) < 1e-12);
            const RealVector p2 = state_to_probs(sic, back).values();
            REQUIRE((p2 - p.values()).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("probability vector validation") {
    RealVector p = simplex_center(2);
    p(0) += 0.1;  // sums to 1.1
    REQUIRE_THROWS_AS(ProbabilityVector(p), std::invalid_argument);

    RealVector q = simplex_center(2);
    q(0) = -0.01;
    q(1) = 0.5 + 0.01;
    REQUIRE_THROWS_AS(ProbabilityVector(q), std::invalid_argument);

    RealVector r = simplex_center(2);
    r(0) = -1e-13;  // numerically zero: clamped, deficit is within the sum tolerance
    r(1) = 0.5 + 1e-13;
    REQUIRE(ProbabilityVector(r).values()(0) == 0.0);
}

TEST_CASE("simplex vertices are not quantum states") {
    const SicSystem sic = make_sic(2);
    RealVector vertex = RealVector::Zero(4);
    vertex(0) = 1.0;
    const Matrix rho = probs_to_state_raw(sic, vertex);
    const PositivityReport rep = positivity_check(rho);
    REQUIRE_FALSE(rep.is_state);
    REQUIRE(rep.min_eigenvalue == Catch::Approx(-1.0).margin(1e-12));
    REQUIRE_THROWS_AS(probs_to_state(sic, ProbabilityVector(vertex)), std::invalid_argument);
}

TEST_CASE("trace inner products come straight from probability vectors") {
    const SicSystem sic = make_sic(3, 0.7);
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_mixed(3, rng);
        const DensityMatrix sigma = random_mixed(3, rng);
        const RealVector p = state_to_probs(sic, rho).values();
        const RealVector q = state_to_probs(sic, sigma).values();
        const double direct = (rho.matrix() * sigma.matrix()).trace().real();
        REQUIRE(trace_inner_from_probs(3, p, q) == Catch::Approx(direct).margin(1e-12));
        REQUIRE(trace_inner_from_probs(3, p, p) == Catch::Approx(rho.purity()).margin(1e-12));
    }
}

TEST_CASE("structure constants satisfy the algebraic identities") {
    for (int d : {2, 3}) {
        const SicSystem sic = make_sic(d);
        const StructureConstants sc = structure_constants(sic);
        const int n = d * d;
        const auto vectors = sic_vectors(sic);

        // diagonal pairs reproduce the projectors themselves
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Cx expected = (i == k) ? Cx(1.0) : Cx(0.0);
                REQUIRE(std::abs(sc.alpha(i, i, k) - expected) < 1e-12);
            }

        Cx total(0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Cx row_sum(0.0);
                for (int k = 0; k < n; ++k) {
                    // swapping the first two labels conjugates the constants
                    REQUIRE(std::abs(sc.alpha(j, i, k) - std::conj(sc.alpha(i, j, k))) < 1e-12);
                    row_sum += sc.alpha(i, j, k);
                    total += sc.alpha(i, j, k);
                }
                const double overlap = (i == j) ? 1.0 : 1.0 / (d + 1.0);
                REQUIRE(std::abs(row_sum - overlap) < 1e-11);

                // closed form via triple overlaps of the defining unit vectors
                for (int k = 0; k < n; ++k) {
                    const Cx triple = vectors[i].dot(vectors[j]) * vectors[j].dot(vectors[k]) *
                                      vectors[k].dot(vectors[i]);
                    const Cx closed = (d + 1.0) / d * triple - overlap / d;
                    REQUIRE(std::abs(sc.alpha(i, j, k) - closed) < 1e-12);
                }
            }
        // (sum of all projectors)^2 = d^2 I forces the grand total to d^3
        REQUIRE(std::abs(total - Cx(double(d) * d * d)) < 1e-9);
    }
}

TEST_CASE("structure constants reconstruct every projector product") {
    const SicSystem sic = make_sic(3, 0.0);
    const StructureConstants sc = structure_constants(sic);
    const int n = 9;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Matrix expansion = Matrix::Zero(3, 3);
            for (int k = 0; k < n; ++k) expansion += sc.alpha(i, j, k) * sic.projector(k);
            REQUIRE(max_abs(sic.projector(i) * sic.projector(j) - expansion) < 1e-12);
        }
}

TEST_CASE("purity conditions hold exactly for pure states and fail for mixed ones") {
    Rng rng(41);
    for (int d : {2, 3, 4}) {
        const SicSystem sic = d <= 3 ? make_sic(d) : SicSystem::from_fiducial(find_fiducial(d, 7));
        const StructureConstants sc = structure_constants(sic);
        const double q_target = 2.0 / (d * (d + 1.0));
        const double c_target = 4.0 / (d * (d + 1.0) * (d + 1.0));

        for (int trial = 0; trial < 5; ++trial) {
            const DensityMatrix rho = DensityMatrix::pure(haar_state(d, rng));
            const RealVector p = state_to_probs(sic, rho).values();
            const PurityReport rep = purity_conditions(sc, p);
            REQUIRE(rep.is_pure);
            REQUIRE(rep.quadratic_lhs == Catch::Approx(q_target).margin(1e-12));
            REQUIRE(rep.cubic_lhs == Catch::Approx(c_target).margin(1e-12));
            REQUIRE(std::abs(rep.cubic_imag_magnitude) < 1e-12);
        }

        for (int trial = 0; trial < 5; ++trial) {
            const DensityMatrix rho = random_mixed(d, rng);
            if (rho.purity() > 1.0 - 1e-6) continue;  // essentially pure draw
            const RealVector p = state_to_probs(sic, rho).values();
            const PurityReport rep = purity_conditions(sc, p);
            REQUIRE_FALSE(rep.is_pure);
            REQUIRE(rep.quadratic_lhs < q_target);

            // independent oracle: the cubic sum equals a pure trace expression
            const Matrix& m = rho.matrix();
            const double tr2 = (m * m).trace().real();
            const double tr3 = (m * m * m).trace().real();
            const double oracle = (tr3 + 2.0 * tr2 + 1.0) / (d * (d + 1.0) * (d + 1.0));
            REQUIRE(rep.cubic_lhs == Catch::Approx(oracle).margin(1e-12));
        }
    }
}

TEST_CASE("the quadratic fixed point singles out pure states") {
    const SicSystem sic = make_sic(3, 0.3);
    const StructureConstants sc = structure_constants(sic);
    Rng rng(43);

    for (int trial = 0; trial < 5; ++trial) {
        const RealVector p =
            state_to_probs(sic, DensityMatrix::pure(haar_state(3, rng))).values();
        REQUIRE(quadratic_fixed_point(sc, p).cwiseAbs().maxCoeff() < 1e-12);
    }

    const int d = 3;
    const RealVector residual = quadratic_fixed_point(sc, simplex_center(d));
    const double expected = (d - 1.0) / (3.0 * d * d * d * (d + 1.0));
    REQUIRE(residual.maxCoeff() == Catch::Approx(expected).margin(1e-14));
    REQUIRE(residual.minCoeff() == Catch::Approx(expected).margin(1e-14));
}

TEST_CASE("every state splits into at most d maximally distant pure terms") {
    Rng rng(47);
    for (int d : {2, 3, 4}) {
        const SicSystem sic = d <= 3 ? make_sic(d) : SicSystem::from_fiducial(find_fiducial(d, 7));
        for (int trial = 0; trial < 5; ++trial) {
            const DensityMatrix rho = random_mixed(d, rng);
            const auto terms = caratheodory_decompose(sic, rho);
            REQUIRE(static_cast<int>(terms.size()) <= d);

            double weight_sum = 0.0;
            RealVector mix = RealVector::Zero(d * d);
            std::vector<RealVector> members;
            for (const PureTerm& term : terms) {
                REQUIRE(term.weight > 0.0);
                weight_sum += term.weight;
                mix += term.weight * term.probs;
                members.push_back(term.probs);
                REQUIRE(sphere_membership(term.probs).on_sphere);
            }
            REQUIRE(weight_sum == Catch::Approx(1.0).margin(1e-12));
            const RealVector p = state_to_probs(sic, rho).values();
            REQUIRE((mix - p).cwiseAbs().maxCoeff() < 1e-10);
            REQUIRE_NOTHROW(verify_max_distant(members, 1e-9));
        }
    }

    // a pure input decomposes into itself
    const SicSystem sic = make_sic(2);
    const DensityMatrix psi = DensityMatrix::pure(haar_state(2, rng));
    const auto terms = caratheodory_decompose(sic, psi);
    REQUIRE(terms.size() == 1);
    REQUIRE((terms.front().probs - state_to_probs(sic, psi).values()).cwiseAbs().maxCoeff() <
            1e-13);
}
