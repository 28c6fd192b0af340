#include "orbithull/factorize.hpp"
#include "orbithull/hilbsep.hpp"
#include "orbithull/json_io.hpp"
#include "orbithull/majorization.hpp"
#include "orbithull/matrix.hpp"
#include "orbithull/metric.hpp"
#include "orbithull/orbit.hpp"
#include "orbithull/random.hpp"
#include "orbithull/states.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace orbithull;
using json_io::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUndecided = 3;

struct RunConfig {
    std::uint64_t seed = 0;
    double tol = 1e-5;
    int restarts = 20;
    int max_iter = 2000;
    int trials = 50;
    std::string output; // empty = stdout
    std::string orbit = "conj";
    std::string state; // density matrix file for weighted duels
};

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(json report, const RunConfig& cfg) {
    report["timestamp"] = timestamp_utc();
    json_io::write_report(report, cfg.output);
}

orbit::LmoOptions lmo_options(const RunConfig& cfg) {
    orbit::LmoOptions opts;
    opts.restarts = cfg.restarts;
    opts.seed = cfg.seed;
    opts.max_iter = cfg.max_iter;
    return opts;
}

int cmd_check_majorization(const std::string& file_a, const std::string& file_b, const RunConfig& cfg) {
    const Tolerances tol;
    const HermitianMatrix a{json_io::load_matrix(file_a), tol};
    const HermitianMatrix b{json_io::load_matrix(file_b), tol};

    const std::vector<double> sa = spectrum(a.matrix(), tol);
    const std::vector<double> sb = spectrum(b.matrix(), tol);
    const majorization::SpectrumVector va{sa}, vb{sb};
    const bool partial = majorization::majorizes_partial_sums(va, vb, 1e-11);
    const bool levelsets = majorization::majorizes_levelsets(a, b, 1e-11);

    // Worst prefix slack (negative = violated) and the trace gap.
    double slack = 0.0;
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k + 1 < sa.size(); ++k) {
        pa += sa[k];
        pb += sb[k];
        const double s = pb - pa;
        if (k == 0 || s < slack) slack = s;
    }
    double ta = 0.0, tb = 0.0;
    for (double v : sa) ta += v;
    for (double v : sb) tb += v;

    emit(json{{"majorizes_partial_sums", partial},
              {"majorizes_levelsets", levelsets},
              {"partial_sum_slack", slack},
              {"trace_gap", tb - ta},
              {"spectrum_a", sa},
              {"spectrum_b", sb}},
         cfg);
    std::cerr << (partial ? "majorizes" : "does not majorize") << " (worst prefix slack " << slack
              << ", trace gap " << tb - ta << ")\n";
    return partial ? kExitYes : kExitNo;
}

int cmd_certify(const std::string& file_a, const std::string& file_b, const RunConfig& cfg) {
    const Tolerances tol;
    const HermitianMatrix a{json_io::load_matrix(file_a), tol};
    const HermitianMatrix b{json_io::load_matrix(file_b), tol};

    const std::vector<double> sa = spectrum(a.matrix(), tol);
    const std::vector<double> sb = spectrum(b.matrix(), tol);
    if (!majorization::majorizes_partial_sums(majorization::SpectrumVector{sa},
                                              majorization::SpectrumVector{sb}, 1e-11)) {
        // Report the first failing prefix.
        std::size_t failing = sa.size();
        double pa = 0.0, pb = 0.0;
        for (std::size_t k = 0; k < sa.size(); ++k) {
            pa += sa[k];
            pb += sb[k];
            const bool last = k + 1 == sa.size();
            if ((last && std::abs(pa - pb) > 1e-11 * (1.0 + std::abs(pb))) ||
                (!last && pa > pb + 1e-11 * (1.0 + std::abs(pb)))) {
                failing = k + 1;
                break;
            }
        }
        emit(json{{"error", "majorization fails"}, {"failing_prefix", failing}}, cfg);
        std::cerr << "majorization fails at prefix " << failing << "\n";
        return kExitNo;
    }

    const majorization::MixingCertificate cert = majorization::unitary_mixing_certificate(a, b, tol);
    const majorization::CertificateReport report = majorization::verify_certificate(cert, cfg.tol);
    json out = json_io::certificate_to_json(cert);
    out["valid"] = report.valid;
    emit(out, cfg);
    std::cerr << "certificate with " << cert.weights.size() << " terms, residual " << cert.residual
              << (report.valid ? " (verified)" : " (verification FAILED)") << "\n";
    return report.valid ? kExitYes : kExitNo;
}

int cmd_verify(const std::string& file_cert, const RunConfig& cfg) {
    const majorization::MixingCertificate cert =
        json_io::certificate_from_json(json_io::load_json_file(file_cert));
    const majorization::CertificateReport report = majorization::verify_certificate(cert, cfg.tol);
    emit(json{{"valid", report.valid},
              {"residual", report.residual},
              {"weight_defect", report.weight_defect},
              {"max_unitarity_defect", report.max_unitarity_defect}},
         cfg);
    std::cerr << (report.valid ? "certificate valid" : "certificate INVALID") << ", residual "
              << report.residual << "\n";
    return report.valid ? kExitYes : kExitNo;
}

int cmd_membership(const std::string& file_a, const std::string& file_b, const RunConfig& cfg) {
    const Tolerances tol;
    const ComplexMatrix a = json_io::load_matrix(file_a);
    const ComplexMatrix b = json_io::load_matrix(file_b);

    orbit::OrbitType type = orbit::OrbitType::UnitaryConjugation;
    if (cfg.orbit == "contr") type = orbit::OrbitType::ContractionConjugation;
    if (cfg.orbit == "twosided") type = orbit::OrbitType::TwoSided;

    const orbit::OrbitKind kind{type, b, tol};
    const orbit::MembershipVerdict verdict =
        orbit::frank_wolfe_project(a, kind, cfg.tol, cfg.max_iter, lmo_options(cfg), tol);
    emit(json_io::verdict_to_json(verdict), cfg);

    const char* status = verdict.status == orbit::MembershipStatus::Inside    ? "inside"
                         : verdict.status == orbit::MembershipStatus::Outside ? "outside"
                                                                              : "undecided";
    std::cerr << status << ", distance estimate " << verdict.distance_estimate << " ("
              << (verdict.lmo_exact ? "exact oracle" : "heuristic oracle") << ")\n";
    switch (verdict.status) {
        case orbit::MembershipStatus::Inside: return kExitYes;
        case orbit::MembershipStatus::Outside: return kExitNo;
        default: return kExitUndecided;
    }
}

int cmd_duel(const std::string& file_a, const std::string& file_b, const std::string& file_c,
             const RunConfig& cfg) {
    const Tolerances tol;
    const ComplexMatrix a = json_io::load_matrix(file_a);
    const ComplexMatrix b = json_io::load_matrix(file_b);
    const ComplexMatrix c = json_io::load_matrix(file_c);
    std::optional<DensityMatrix> weight;
    if (!cfg.state.empty()) weight = DensityMatrix{json_io::load_matrix(cfg.state), tol};

    const metric::DuelOutcome out = metric::duel(a, b, c, weight, lmo_options(cfg), tol);
    emit(json_io::duel_to_json(out), cfg);
    std::cerr << (out.success ? "success" : "failure") << (out.certified ? " (certified)" : "")
              << ", lhs " << out.lhs << " vs rhs " << out.rhs << "\n";
    if (out.success) return kExitYes;
    return out.certified ? kExitNo : kExitUndecided;
}

int demo_c2(const RunConfig& cfg) {
    const metric::CounterexampleReport report = metric::counterexample_c2();
    const bool pass = report.separates_conditions &&
                      std::abs(report.hull_distance - std::sqrt(0.5)) <= 1e-8;
    emit(json{{"norm_x_minus_a_phi", report.norm_x_minus_a_phi},
              {"norm_x_minus_b_psi", report.norm_x_minus_b_psi},
              {"hull_distance", report.hull_distance},
              {"per_state_condition_holds", report.per_state_condition_holds},
              {"hull_member", report.hull_member},
              {"separates_conditions", report.separates_conditions},
              {"pass", pass}},
         cfg);
    std::cerr << "per-state seminorms " << report.norm_x_minus_a_phi << ", " << report.norm_x_minus_b_psi
              << "; hull distance " << report.hull_distance << (pass ? " [ok]" : " [FAILED]") << "\n";
    return pass ? kExitYes : kExitNo;
}

int demo_halfspace(const RunConfig& cfg) {
    const Tolerances tol;
    std::size_t checked = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    Rng rng(mix_seed(cfg.seed, 404));
    for (std::size_t dim = 2; dim <= 3; ++dim) {
        hilbsep::EuclideanVector xi(dim, 0.0);
        xi[0] = 1.0;
        for (int t = 0; t < cfg.trials; ++t) {
            hilbsep::EuclideanVector eta(dim);
            double off_axis = 0.0;
            do {
                for (auto& x : eta) x = rng.gaussian();
                off_axis = 0.0;
                for (std::size_t i = 1; i < dim; ++i) off_axis += eta[i] * eta[i];
            } while (std::sqrt(off_axis) <= 1e-6);
            const hilbsep::EuclideanVector zeta = hilbsep::halfspace_scenario(dim, eta, tol);
            const double margin = hilbsep::distance(eta, zeta) - hilbsep::distance(xi, zeta);
            worst_margin = std::min(worst_margin, margin);
            if (margin > 0.0 && std::abs(zeta[0]) <= 1e-9) ++checked;
        }
    }
    const std::size_t total = 2 * static_cast<std::size_t>(cfg.trials);
    const bool pass = checked == total;
    emit(json{{"trials", total}, {"strict", checked}, {"worst_margin", worst_margin}, {"pass", pass}},
         cfg);
    std::cerr << checked << "/" << total << " challengers strictly closer on the boundary, worst margin "
              << worst_margin << (pass ? " [ok]" : " [FAILED]") << "\n";
    return pass ? kExitYes : kExitNo;
}

int demo_inclusion_chain(const RunConfig& cfg) {
    const Tolerances tol;
    orbit::LmoOptions opts = lmo_options(cfg);
    opts.max_iter = std::min(opts.max_iter, 500);

    // Identity base: conjugation is stuck at the full trace, contractions
    // reach the positive part, two-sided factors reach the trace norm.
    const ComplexMatrix c0 = ComplexMatrix::diag(std::vector<double>{1.0, -1.0});
    const orbit::ChainReport pinned =
        orbit::inclusion_chain_check(ComplexMatrix::identity(2), {c0}, opts, tol);
    const orbit::ChainEntry& e = pinned.entries.front();
    bool pass = !pinned.any_hard_violation && std::abs(e.h1 - 0.0) <= 1e-8 &&
                std::abs(e.h2 - 1.0) <= 1e-5 && std::abs(e.h3 - 2.0) <= 1e-8;

    Rng rng(mix_seed(cfg.seed, 505));
    json entries = json::array();
    entries.push_back(json{{"h1", e.h1}, {"h2", e.h2}, {"h3", e.h3}});
    bool any_hard = pinned.any_hard_violation;
    for (int t = 0; t < cfg.trials; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.integer(2));
        const ComplexMatrix base = t % 2 == 0 ? hermitian_part(ginibre(n, rng)) : ginibre(n, rng);
        std::vector<ComplexMatrix> dirs;
        for (int k = 0; k < 4; ++k) dirs.push_back(t % 2 == 0 ? hermitian_part(ginibre(n, rng)) : ginibre(n, rng));
        const orbit::ChainReport rep = orbit::inclusion_chain_check(base, dirs, opts, tol);
        any_hard = any_hard || rep.any_hard_violation;
        for (const auto& entry : rep.entries)
            entries.push_back(json{{"h1", entry.h1}, {"h2", entry.h2}, {"h3", entry.h3}});
    }
    pass = pass && !any_hard;
    emit(json{{"entries", entries}, {"any_hard_violation", any_hard}, {"pass", pass}}, cfg);
    std::cerr << "chain entries " << entries.size() << ", identity-base levels (" << e.h1 << ", " << e.h2
              << ", " << e.h3 << ")" << (pass ? " [ok]" : " [FAILED]") << "\n";
    return pass ? kExitYes : kExitNo;
}

int demo_equivalence(const RunConfig& cfg) {
    const metric::EquivalenceSummary summary =
        metric::equivalence_suite(4, static_cast<std::size_t>(cfg.trials), cfg.seed);
    json records = json::array();
    for (const auto& r : summary.records) {
        const char* membership = r.membership == orbit::MembershipStatus::Inside    ? "inside"
                                 : r.membership == orbit::MembershipStatus::Outside ? "outside"
                                                                                    : "undecided";
        const char* scan = r.scan == metric::CriterionVerdict::ConsistentWithMembership ? "consistent"
                           : r.scan == metric::CriterionVerdict::Refuted               ? "refuted"
                                                                                       : "inconclusive";
        records.push_back(json{{"positive", r.positive_instance},
                               {"majorizes", r.majorizes},
                               {"membership", membership},
                               {"scan", scan},
                               {"agree", r.agree}});
    }
    const bool pass = summary.disagreements == 0;
    emit(json{{"trials_each", cfg.trials},
              {"agreements", summary.agreements},
              {"disagreements", summary.disagreements},
              {"records", records},
              {"pass", pass}},
         cfg);
    std::cerr << summary.agreements << " agreements, " << summary.disagreements << " disagreements"
              << (pass ? " [ok]" : " [FAILED]") << "\n";
    return pass ? kExitYes : kExitNo;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unitary orbit hulls, majorization certificates, and metric duels"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "Random seed (all randomness derives from it)");
    app.add_option("--tol", cfg.tol, "Decision tolerance")->check(CLI::PositiveNumber);
    app.add_option("--restarts", cfg.restarts, "Ascent restarts")->check(CLI::Range(1, 10000));
    app.add_option("--max-iter", cfg.max_iter, "Iteration cap")->check(CLI::Range(1, 10000000));
    app.add_option("--trials", cfg.trials, "Trial count for demos")->check(CLI::Range(1, 1000000));
    app.add_option("--output", cfg.output, "Write the JSON report here instead of stdout");

    std::string file_a, file_b, file_c, demo_name;

    CLI::App* check = app.add_subcommand("check-majorization", "Spectral partial-sum order of two Hermitian matrices");
    check->add_option("fileA", file_a)->required();
    check->add_option("fileB", file_b)->required();

    CLI::App* certify = app.add_subcommand("certify", "Produce a unitary mixing certificate");
    certify->add_option("fileA", file_a)->required();
    certify->add_option("fileB", file_b)->required();

    CLI::App* verify = app.add_subcommand("verify", "Re-verify a certificate file");
    verify->add_option("fileCert", file_a)->required();

    CLI::App* membership = app.add_subcommand("membership", "Hull membership via conditional gradient");
    membership->add_option("fileA", file_a)->required();
    membership->add_option("fileB", file_b)->required();
    membership->add_option("--orbit", cfg.orbit, "Orbit kind")
        ->check(CLI::IsMember({"conj", "contr", "twosided"}));

    CLI::App* duel_cmd = app.add_subcommand("duel", "Two-norm duel against a challenger");
    duel_cmd->add_option("fileA", file_a)->required();
    duel_cmd->add_option("fileB", file_b)->required();
    duel_cmd->add_option("fileC", file_c)->required();
    duel_cmd->add_option("--state", cfg.state, "Density matrix weighting the seminorm");

    CLI::App* demo = app.add_subcommand("demo", "Packaged scenarios");
    demo->add_option("name", demo_name, "c2-counterexample | halfspace | inclusion-chain | equivalence-suite")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (check->parsed()) return cmd_check_majorization(file_a, file_b, cfg);
        if (certify->parsed()) return cmd_certify(file_a, file_b, cfg);
        if (verify->parsed()) return cmd_verify(file_a, cfg);
        if (membership->parsed()) return cmd_membership(file_a, file_b, cfg);
        if (duel_cmd->parsed()) return cmd_duel(file_a, file_b, file_c, cfg);
        if (demo->parsed()) {
            if (demo_name == "c2-counterexample") return demo_c2(cfg);
            if (demo_name == "halfspace") return demo_halfspace(cfg);
            if (demo_name == "inclusion-chain") return demo_inclusion_chain(cfg);
            if (demo_name == "equivalence-suite") return demo_equivalence(cfg);
            std::cerr << "unknown demo: " << demo_name << "\n";
            return kExitInputError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
