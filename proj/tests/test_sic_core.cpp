// Displacement operators, fiducial orbits, and SIC verification.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <qbist/fiducial_search.hpp>
#include <qbist/random.hpp>
#include <qbist/sic_system.hpp>
#include <qbist/weyl_heisenberg.hpp>

using namespace qbist;

namespace {

Matrix identity(int d) { return Matrix::Identity(d, d); }

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("displacement operators act as shift and clock") {
    const int d = 3;
    const Matrix X = wh_displacement(d, 1, 0);
    const Matrix Z = wh_displacement(d, 0, 1);
    const Cx omega = std::exp(Cx(0.0, 2.0 * M_PI / d));

    for (int j = 0; j < d; ++j) {
        Vector ej = Vector::Zero(d);
        ej(j) = 1.0;
        const Vector shifted = X * ej;
        REQUIRE(std::abs(shifted((j + 1) % d) - 1.0) < 1e-15);
        const Vector phased = Z * ej;
        REQUIRE(std::abs(phased(j) - std::pow(omega, j)) < 1e-14);
    }
    REQUIRE(max_abs(wh_displacement(d, 0, 0) - identity(d)) < 1e-15);
}

TEST_CASE("qubit displacement with both labels set is minus the Pauli Y matrix") {
    // the tau = -exp(i pi / d) phase convention lands on -Y; the overall
    // phase is irrelevant to the projectors the orbit produces
    Matrix y(2, 2);
    y << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
    REQUIRE(max_abs(wh_displacement(2, 1, 1) + y) < 1e-15);
}

TEST_CASE("displacements are unitary and compose up to a phase") {
    for (int d = 2; d <= 5; ++d) {
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const Matrix D = wh_displacement(d, a, b);
                REQUIRE(max_abs(D.adjoint() * D - identity(d)) < 1e-14);
            }
        // group law: D(a,b) D(c,e) is a phase times D(a+c, b+e)
        for (int trial = 0; trial < 8; ++trial) {
            const int a = trial % d, b = (trial + 1) % d;
            const int c = (trial + 2) % d, e = (3 * trial) % d;
            const Matrix lhs = wh_displacement(d, a, b) * wh_displacement(d, c, e);
            const Matrix rhs = wh_displacement(d, (a + c) % d, (b + e) % d);
            const Cx phase = (rhs.adjoint() * lhs).trace() / static_cast<double>(d);
            REQUIRE(std::abs(std::abs(phase) - 1.0) < 1e-13);
            REQUIRE(max_abs(lhs - phase * rhs) < 1e-13);
        }
    }
}

TEST_CASE("displacement labels are range checked") {
    REQUIRE_THROWS_AS(wh_displacement(3, 3, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(wh_displacement(3, 0, -1), std::invalid_argument);
    REQUIRE_THROWS_AS(wh_displacement(1, 0, 0), std::invalid_argument);
}

TEST_CASE("fiducial wrapper normalizes and rejects far-from-unit vectors") {
    Vector v(2);
    v << 1.0, 1.0;  // norm sqrt(2): not close to one
    REQUIRE_THROWS_AS(Fiducial(v), std::invalid_argument);

    Vector w(2);
    w << (1.0 + 1e-10) / std::sqrt(2.0), (1.0 + 1e-10) / std::sqrt(2.0);
    const Fiducial f(w);
    REQUIRE(std::abs(f.amplitudes().norm() - 1.0) < 1e-15);
}

TEST_CASE("known qubit fiducial generates a SIC") {
    const SicSystem sic = SicSystem::from_fiducial(known_fiducial(2));
    REQUIRE(sic.dim() == 2);
    REQUIRE(sic.size() == 4);
    const GramReport rep = sic.report();
    REQUIRE(rep.passed);
    REQUIRE(rep.max_offdiag_error < 1e-13);
    REQUIRE(rep.max_idempotency_error < 1e-13);
    REQUIRE(rep.resolution_error < 1e-13);
    // the family parameter is meaningless for d = 2 and must be ignored
    const SicSystem again = SicSystem::from_fiducial(known_fiducial(2, 0.9));
    for (int i = 0; i < 4; ++i)
        REQUIRE(max_abs(again.projector(i) - sic.projector(i)) < 1e-15);
}

TEST_CASE("qutrit fiducial family works for every tested parameter") {
    for (const double t : {0.0, 0.3, 0.7, 1.1, 2.0, M_PI / 2}) {
        const SicSystem sic = SicSystem::from_fiducial(known_fiducial(3, t));
        REQUIRE(sic.report().passed);
        REQUIRE(sic.report().max_offdiag_error < 1e-13);
    }
    REQUIRE_THROWS_AS(known_fiducial(5), std::invalid_argument);
}

TEST_CASE("orbit yields rank-one projectors resolving the identity") {
    const SicSystem sic = SicSystem::from_fiducial(known_fiducial(3, 0.7));
    const int d = sic.dim();
    Matrix accum = Matrix::Zero(d, d);
    Matrix effect_sum = Matrix::Zero(d, d);
    for (int i = 0; i < sic.size(); ++i) {
        const Matrix& p = sic.projector(i);
        REQUIRE(max_abs(p - p.adjoint()) < 1e-14);
        REQUIRE(max_abs(p * p - p) < 1e-13);
        REQUIRE(std::abs(p.trace().real() - 1.0) < 1e-13);
        accum += p;
        effect_sum += sic.effect(i);
    }
    REQUIRE(max_abs(accum - double(d) * identity(d)) < 1e-13);
    REQUIRE(max_abs(effect_sum - identity(d)) < 1e-13);
}

TEST_CASE("a basis vector is not a fiducial and the failure names a pair") {
    Vector e0 = Vector::Zero(3);
    e0(0) = 1.0;
    const auto projectors = orbit(Fiducial(e0));
    const GramReport rep = verify_sic(projectors, SicTolerances{});
    REQUIRE_FALSE(rep.passed);
    // overlaps of a basis orbit are 0 or 1, so the worst error is 1 - 1/(d+1)
    REQUIRE(rep.max_offdiag_error == Catch::Approx(0.75).epsilon(1e-12));
    REQUIRE(rep.worst_pair_k >= 0);
    REQUIRE(rep.worst_pair_l > rep.worst_pair_k);
}

TEST_CASE("verification tolerance semantics on a perturbed projector set") {
    auto projectors = orbit(known_fiducial(2));
    Rng rng(5);
    Matrix noise(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) noise(r, c) = rng.gauss_cx();
    noise = Matrix(0.5 * (noise + noise.adjoint()));
    projectors[1] += 1e-6 * noise / noise.norm();

    REQUIRE_FALSE(verify_sic(projectors, 1e-9).passed);
    REQUIRE(verify_sic(projectors, 1e-3).passed);
    REQUIRE_THROWS_AS(SicSystem(projectors), std::invalid_argument);
}

TEST_CASE("numerical search finds fiducials beyond the stored dimensions") {
    for (int d = 4; d <= 5; ++d) {
        const FiducialSearchResult res = search_fiducial(d, 1, 50);
        REQUIRE(res.found);
        REQUIRE(res.objective < 1e-18);
        const SicSystem sic = SicSystem::from_fiducial(Fiducial(res.amplitudes));
        REQUIRE(sic.report().max_offdiag_error <= 1e-9);
    }
}

TEST_CASE("projector eigenvectors recover equiangular unit vectors") {
    const SicSystem sic = SicSystem::from_fiducial(known_fiducial(3, 0.0));
    const auto vectors = sic_vectors(sic);
    REQUIRE(vectors.size() == 9);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        REQUIRE(std::abs(vectors[i].norm() - 1.0) < 1e-13);
        const Matrix p = vectors[i] * vectors[i].adjoint();
        REQUIRE(max_abs(p - sic.projector(static_cast<int>(i))) < 1e-12);
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            const double overlap2 = std::norm(vectors[i].dot(vectors[j]));
            REQUIRE(overlap2 == Catch::Approx(0.25).margin(1e-12));
        }
    }
}

TEST_CASE("system construction rejects a wrong-sized projector list") {
    auto projectors = orbit(known_fiducial(2));
    projectors.pop_back();
    REQUIRE_THROWS_AS(SicSystem(projectors), std::invalid_argument);
}
