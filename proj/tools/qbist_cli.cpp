// Command-line surface for the SIC probability representation: build and
// verify reference systems, move between states and probability vectors,
// evaluate the Born rule and the simplex geometry, run the combinatorial
// searches, and reproduce every named quantitative claim.
//
// Exit codes: 0 success / all checks passed, 1 verification failure,
// 2 parse or usage error, 3 infeasible search.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qbist/qbist.hpp>

namespace {

using namespace qbist;

/// Parsed command-line configuration shared by all subcommands.
struct RunConfig {
    std::string format = "text";
    int dim = 0;
    double t = 0.0;
    double tol = -1.0;  // negative = use the per-command default
    std::uint64_t seed = 0;
    int restarts = 50;
    int size = 0;
    long long budget = 2000000;
    bool exhaustive = false;
    std::string sic_path;
    std::string state_path;
    std::vector<std::string> probs_paths;
    std::string povm_path;
    std::string indices;
    std::string claim;
};

void emit(const Report& rep, const RunConfig& cfg) {
    if (cfg.format == "structured")
        std::cout << rep.to_json();
    else
        std::cout << rep.to_text();
}

void put_complex_vector(Report& rep, const std::string& prefix, const Vector& v) {
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(v.size()));
    im.reserve(static_cast<std::size_t>(v.size()));
    for (int j = 0; j < v.size(); ++j) {
        re.push_back(v(j).real());
        im.push_back(v(j).imag());
    }
    rep.put(prefix + ".re", std::move(re));
    rep.put(prefix + ".im", std::move(im));
}

void put_matrix(Report& rep, const std::string& prefix, const Matrix& m) {
    std::vector<double> re, im;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    rep.put(prefix + ".re", std::move(re));
    rep.put(prefix + ".im", std::move(im));
}

void put_gram_report(Report& rep, const GramReport& g) {
    rep.put("max_offdiag_error", g.max_offdiag_error);
    rep.put("worst_pair_k", g.worst_pair_k);
    rep.put("worst_pair_l", g.worst_pair_l);
    rep.put("max_idempotency_error", g.max_idempotency_error);
    rep.put("worst_projector", g.worst_projector);
    rep.put("resolution_error", g.resolution_error);
    rep.put("passed", g.passed);
}

SicSystem load_sic(const RunConfig& cfg) {
    auto in = io::open_input(cfg.sic_path);
    auto [d, projs] = io::read_projectors(in);
    return SicSystem(std::move(projs));
}

std::vector<int> parse_indices(const std::string& text) {
    std::vector<int> out;
    std::string tok;
    std::istringstream ss(text);
    while (std::getline(ss, tok, ','))
        out.push_back(static_cast<int>(io::parse_int(tok)));
    if (out.empty()) throw io::ParseError("no indices given");
    return out;
}

int cmd_build_sic(const RunConfig& cfg) {
    Report rep;
    rep.put("dim", cfg.dim);
    Fiducial f = [&] {
        if (cfg.dim <= 3) {
            rep.put("source", "closed-form");
            if (cfg.dim == 3) rep.put("t", cfg.t);
            return known_fiducial(cfg.dim, cfg.t);
        }
        rep.put("source", "search");
        rep.put("seed", static_cast<long long>(cfg.seed));
        rep.put("restarts", cfg.restarts);
        const FiducialSearchResult res = search_fiducial(cfg.dim, cfg.seed, cfg.restarts);
        rep.put("search.objective", res.objective);
        rep.put("search.restarts_used", res.restarts_used);
        if (!res.found) {
            rep.put("search.found", false);
            emit(rep, cfg);
            throw std::invalid_argument("fiducial search did not converge");
        }
        rep.put("search.found", true);
        return Fiducial(res.amplitudes);
    }();
    const SicSystem sic = SicSystem::from_fiducial(f);
    put_complex_vector(rep, "fiducial", f.amplitudes());
    put_gram_report(rep, sic.report());
    if (!cfg.sic_path.empty()) {
        auto out = io::open_output(cfg.sic_path);
        io::write_sic(out, sic);
        rep.put("written", cfg.sic_path);
    }
    emit(rep, cfg);
    return 0;
}

int cmd_verify_sic(const RunConfig& cfg) {
    auto in = io::open_input(cfg.sic_path);
    auto [d, projs] = io::read_projectors(in);
    const GramReport g = cfg.tol > 0 ? verify_sic(projs, cfg.tol)
                                     : verify_sic(projs, SicTolerances{});
    Report rep;
    rep.put("dim", d);
    put_gram_report(rep, g);
    emit(rep, cfg);
    return g.passed ? 0 : 1;
}

int cmd_represent(const RunConfig& cfg) {
    const SicSystem sic = load_sic(cfg);
    auto in = io::open_input(cfg.state_path);
    auto [d, m] = io::read_state_matrix(in);
    check_same_dim(sic.dim(), d);
    const DensityMatrix rho(m);
    const ProbabilityVector p = state_to_probs(sic, rho);
    Report rep;
    rep.put("dim", d);
    rep.put("probabilities", p.values());
    const SphereMembership sm = sphere_membership(p.values());
    rep.put("sphere.norm2_centered", sm.norm2_centered);
    rep.put("sphere.radius2", circumscribed_radius(d));
    rep.put("sphere.on_sphere", sm.on_sphere);
    rep.put("sphere.inside", sm.inside);
    rep.put("max_component", p.values().maxCoeff());
    rep.put("zero_count", zero_count(p.values()));
    if (!cfg.probs_paths.empty()) {
        auto out = io::open_output(cfg.probs_paths.front());
        io::write_probs(out, p.values());
        rep.put("written", cfg.probs_paths.front());
    }
    emit(rep, cfg);
    return 0;
}

int cmd_reconstruct(const RunConfig& cfg) {
    const SicSystem sic = load_sic(cfg);
    auto in = io::open_input(cfg.probs_paths.front());
    const ProbabilityVector p(io::read_probs_raw(in));
    check_same_dim(sic.dim(), p.dim());
    const Matrix rho = probs_to_state_raw(sic, p.values());
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
    const PositivityReport pos = positivity_check(rho, tol);
    Report rep;
    rep.put("dim", sic.dim());
    put_matrix(rep, "state", rho);
    rep.put("trace", rho.trace().real());
    rep.put("min_eigenvalue", pos.min_eigenvalue);
    rep.put("is_state", pos.is_state);
    if (!cfg.state_path.empty()) {
        auto out = io::open_output(cfg.state_path);
        io::write_state(out, rho);
        rep.put("written", cfg.state_path);
    }
    emit(rep, cfg);
    return pos.is_state ? 0 : 1;
}

int cmd_born(const RunConfig& cfg) {
    const SicSystem sic = load_sic(cfg);
    auto pin = io::open_input(cfg.probs_paths.front());
    const ProbabilityVector p(io::read_probs_raw(pin));
    check_same_dim(sic.dim(), p.dim());
    auto min = io::open_input(cfg.povm_path);
    auto [d, effects] = io::read_povm_matrices(min);
    check_same_dim(sic.dim(), d);
    const PovmMeasurement povm(std::move(effects));
    const RealMatrix r = conditional_matrix(sic, povm);
    const RealVector born = born_rule(d, p.values(), r);
    const RealVector classical = total_probability(p.values(), r);
    Report rep;
    rep.put("dim", d);
    rep.put("outcomes", povm.outcomes());
    rep.put("born", born);
    rep.put("born_sum", born.sum());
    rep.put("total_probability", classical);
    rep.put("max_coherence_correction", (born - classical).cwiseAbs().maxCoeff());
    emit(rep, cfg);
    return 0;
}

int cmd_geometry(const RunConfig& cfg) {
    std::vector<RealVector> vectors;
    for (const std::string& path : cfg.probs_paths) {
        auto in = io::open_input(path);
        vectors.push_back(ProbabilityVector(io::read_probs_raw(in)).values());
    }
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-10;
    const ConsistencyReport rc = evaluate_consistency(vectors, tol);
    Report rep;
    rep.put("dim", rc.dim);
    rep.put("vectors", static_cast<long long>(vectors.size()));
    rep.put("lower_bound", lower_consistency_bound(rc.dim));
    rep.put("upper_bound", upper_consistency_bound(rc.dim));
    std::vector<double> products;
    for (int k = 0; k < rc.pair_products.rows(); ++k)
        for (int l = k; l < rc.pair_products.cols(); ++l)
            products.push_back(rc.pair_products(k, l));
    rep.put("pair_products", std::move(products));
    std::vector<long long> lows, highs;
    for (const auto& [k, l] : rc.lower_violations) {
        lows.push_back(k);
        lows.push_back(l);
    }
    for (const auto& [k, l] : rc.upper_violations) {
        highs.push_back(k);
        highs.push_back(l);
    }
    rep.put("lower_violations", std::move(lows));
    rep.put("upper_violations", std::move(highs));
    std::vector<long long> sphere_flags;
    for (const bool b : rc.on_sphere) sphere_flags.push_back(b ? 1 : 0);
    rep.put("on_sphere", std::move(sphere_flags));
    rep.put("max_components", rc.max_components);
    rep.put("zero_counts", rc.zero_counts);
    rep.put("consistent", rc.consistent());
    emit(rep, cfg);
    return rc.consistent() ? 0 : 1;
}

int cmd_basis(const RunConfig& cfg) {
    const int d = cfg.dim;
    Report rep;
    rep.put("dim", d);
    rep.put("radius2", circumscribed_radius(d));
    rep.put("basis_self_product", basis_product_same(d));
    rep.put("basis_cross_product", basis_product_other(d));
    rep.put("lower_bound", lower_consistency_bound(d));
    rep.put("upper_bound", upper_consistency_bound(d));
    rep.put("zero_bound", zero_bound(d));
    rep.put("max_zero_value", 2.0 / (d * (d + 1.0)));
    rep.put("face_distance2_at_zero_bound", face_distance2(d, zero_bound(d)));
    rep.put("opening_angle_at_d", opening_angle(d));
    rep.put("e0", basis_distribution(d, 0));
    const SphereMembership sm = sphere_membership(basis_distribution(d, 0));
    rep.put("e0_on_sphere", sm.on_sphere);
    emit(rep, cfg);
    return 0;
}

int cmd_search_distant(const RunConfig& cfg) {
    const CliqueResult res = distant_clique_search(cfg.dim);
    Report rep;
    rep.put("dim", res.dim);
    rep.put("pattern", res.pattern);
    rep.put("max_clique_size", res.max_clique_size);
    for (std::size_t i = 0; i < res.witness.size(); ++i)
        rep.put("witness." + std::to_string(i), res.witness[i]);
    emit(rep, cfg);
    return 0;
}

int cmd_search_subspace(const RunConfig& cfg) {
    const SicSystem sic = load_sic(cfg);
    const auto hits = subspace_dependence_search(sic, cfg.size, cfg.budget, cfg.exhaustive);
    Report rep;
    rep.put("dim", sic.dim());
    rep.put("subset_size", cfg.size);
    rep.put("hits", static_cast<long long>(hits.size()));
    for (std::size_t i = 0; i < hits.size(); ++i) {
        const std::string key = "hit." + std::to_string(i);
        rep.put(key + ".subset", hits[i].subset);
        rep.put(key + ".rank", hits[i].rank);
        rep.put(key + ".singular_values", hits[i].singular_values);
    }
    emit(rep, cfg);
    return 0;
}

int cmd_complement(const RunConfig& cfg) {
    const SicSystem sic = load_sic(cfg);
    const std::vector<int> subset = parse_indices(cfg.indices);
    const DensityMatrix psi = orthogonal_complement_state(sic, subset);
    const ProbabilityVector p = state_to_probs(sic, psi);
    Report rep;
    rep.put("dim", sic.dim());
    rep.put("subset", subset);
    put_matrix(rep, "state", psi.matrix());
    rep.put("probabilities", p.values());
    rep.put("zero_count", zero_count(p.values()));
    double worst = 0.0;
    for (int i : subset) worst = std::max(worst, p.values()(i));
    rep.put("max_subset_probability", worst);
    emit(rep, cfg);
    return 0;
}

int cmd_reproduce(const RunConfig& cfg) {
    ClaimContext ctx(cfg.seed);
    Report rep;
    bool all_passed = true;
    if (!cfg.claim.empty()) {
        ClaimOutcome out = run_claim(ctx, cfg.claim);
        rep = std::move(out.report);
        rep.put("result", out.passed ? "PASS" : "FAIL");
        all_passed = out.passed;
    } else {
        for (const std::string& id : claim_ids()) {
            ClaimOutcome out = run_claim(ctx, id);
            for (const auto& [key, value] : out.report.entries())
                rep.put_value(id + "." + key, value);
            rep.put(id + ".result", out.passed ? "PASS" : "FAIL");
            all_passed = all_passed && out.passed;
        }
    }
    emit(rep, cfg);
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIC probability representation of quantum states: construction, "
                 "verification, geometry, and claim reproduction"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    auto* build = app.add_subcommand("build-sic", "Construct a reference system and write it");
    build->add_option("--dim", cfg.dim, "Hilbert-space dimension")->required();
    build->add_option("--t", cfg.t, "Family parameter for d = 3");
    build->add_option("--seed", cfg.seed, "Search seed (d >= 4)");
    build->add_option("--restarts", cfg.restarts, "Search restarts (d >= 4)");
    build->add_option("--sic", cfg.sic_path, "Output path for the projector file");

    auto* verify = app.add_subcommand("verify-sic", "Verify a projector file");
    verify->add_option("--sic", cfg.sic_path, "Projector file")->required();
    verify->add_option("--tol", cfg.tol, "Tolerance for all error fields");

    auto* represent = app.add_subcommand("represent", "State file -> probability vector");
    represent->add_option("--sic", cfg.sic_path, "Projector file")->required();
    represent->add_option("--state", cfg.state_path, "State file")->required();
    represent->add_option("--probs", cfg.probs_paths, "Output probability file");

    auto* reconstruct = app.add_subcommand("reconstruct", "Probability file -> state");
    reconstruct->add_option("--sic", cfg.sic_path, "Projector file")->required();
    reconstruct->add_option("--probs", cfg.probs_paths, "Probability file")->required();
    reconstruct->add_option("--state", cfg.state_path, "Output state file");
    reconstruct->add_option("--tol", cfg.tol, "Positivity tolerance");

    auto* born = app.add_subcommand("born", "Outcome probabilities of a measurement");
    born->add_option("--sic", cfg.sic_path, "Projector file")->required();
    born->add_option("--probs", cfg.probs_paths, "Reference probability file")->required();
    born->add_option("--povm", cfg.povm_path, "Measurement file")->required();

    auto* geometry = app.add_subcommand("geometry", "Consistency report over probability files");
    geometry->add_option("--probs", cfg.probs_paths, "Probability files")->required();
    geometry->add_option("--tol", cfg.tol, "Geometric tolerance");

    auto* basis = app.add_subcommand("basis", "Basis distributions and sphere constants");
    basis->add_option("--dim", cfg.dim, "Hilbert-space dimension")->required();

    auto* sdistant = app.add_subcommand("search-distant",
                                        "Maximally distant cliques among max-zero patterns");
    sdistant->add_option("--dim", cfg.dim, "Hilbert-space dimension")->required();

    auto* ssub = app.add_subcommand("search-subspace", "Rank-deficient subsets of SIC vectors");
    ssub->add_option("--sic", cfg.sic_path, "Projector file")->required();
    ssub->add_option("--size", cfg.size, "Subset size")->required();
    ssub->add_option("--budget", cfg.budget, "Enumeration budget")->capture_default_str();
    ssub->add_flag("--exhaustive", cfg.exhaustive, "Ignore the enumeration budget");

    auto* comp = app.add_subcommand("complement", "Pure state orthogonal to chosen SIC vectors");
    comp->add_option("--sic", cfg.sic_path, "Projector file")->required();
    comp->add_option("--indices", cfg.indices, "Comma-separated 0-based indices")->required();

    auto* reproduce = app.add_subcommand("reproduce", "Run named quantitative claims");
    reproduce->add_option("--claim", cfg.claim, "Claim id (all claims when omitted)")
        ->check(CLI::IsMember(claim_ids()));
    reproduce->add_option("--seed", cfg.seed, "Base seed for sampled checks");

    // Let global options such as --format appear after the subcommand name.
    for (CLI::App* sub : {build, verify, represent, reconstruct, born, geometry, basis, sdistant,
                          ssub, comp, reproduce}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
        if (build->parsed()) return cmd_build_sic(cfg);
        if (verify->parsed()) return cmd_verify_sic(cfg);
        if (represent->parsed()) return cmd_represent(cfg);
        if (reconstruct->parsed()) return cmd_reconstruct(cfg);
        if (born->parsed()) return cmd_born(cfg);
        if (geometry->parsed()) return cmd_geometry(cfg);
        if (basis->parsed()) return cmd_basis(cfg);
        if (sdistant->parsed()) return cmd_search_distant(cfg);
        if (ssub->parsed()) return cmd_search_subspace(cfg);
        if (comp->parsed()) return cmd_complement(cfg);
        if (reproduce->parsed()) return cmd_reproduce(cfg);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qbist::io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const qbist::InfeasibleSearch& e) {
        std::cerr << "infeasible search: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    }
}
