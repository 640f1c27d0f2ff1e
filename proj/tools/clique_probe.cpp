// Command-line front end: detection, recovery, marked-set formulas,
// phase-diagram sweeps, clique-number sampling, region classification.
// Exit codes: 0 success, 2 parameter error, 3 budget exhaustion.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cliqueprobe/harness.hpp"
#include "cliqueprobe/max_clique.hpp"
#include "cliqueprobe/variant.hpp"

namespace {

using namespace cliqueprobe;

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw parameter_error("bad pair '" + item +
                                  "', expected i-j (e.g. 1-2,3-4)");
        out.emplace_back(std::stoi(item.substr(0, dash)),
                         std::stoi(item.substr(dash + 1)));
    }
    if (out.empty()) throw parameter_error("empty pair list");
    return out;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw parameter_error("empty list");
    return out;
}

// Resolved-config log line so every run can be replayed exactly.
void log_config(
    const std::string& command,
    std::initializer_list<std::pair<std::string, std::string>> kv) {
    std::cerr << "{\"command\":\"" << command << "\"";
    for (const auto& [k, v] : kv) std::cerr << ",\"" << k << "\":" << v;
    std::cerr << "}\n";
}

std::string jstr(const std::string& s) { return "\"" + s + "\""; }

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw parameter_error("cannot open output file: " + path);
    return file;
}

struct DetectArgs {
    int n = 0, k = 0;
    double eps0 = 4.0;
    std::uint64_t seed = 0;
    std::int64_t budget = -1;  // -1 = unlimited
    std::string hypothesis = "planted";
    std::string s_mode = "first";
    std::string output;
};

std::optional<std::uint64_t> budget_opt(std::int64_t b) {
    if (b < 0) return std::nullopt;
    return static_cast<std::uint64_t>(b);
}

int run_detect(const DetectArgs& a, bool also_recover) {
    const Hypothesis h = a.hypothesis == "null" ? Hypothesis::Null
                                                : Hypothesis::Planted;
    const SMode mode =
        a.s_mode == "random" ? SMode::RandomSeeded : SMode::FirstM;
    DetectionParams params = derive_params(a.n, a.k, a.eps0, mode, a.seed);
    PlantedInstance inst = sample_instance(a.n, a.k, h, a.seed);
    EdgeOracle oracle(std::move(inst), budget_opt(a.budget));
    log_config(also_recover ? "recover" : "detect",
               {{"n", std::to_string(a.n)},
                {"k", std::to_string(a.k)},
                {"eps0", std::to_string(a.eps0)},
                {"seed", std::to_string(a.seed)},
                {"budget", std::to_string(a.budget)},
                {"hypothesis", jstr(a.hypothesis)},
                {"s_mode", jstr(a.s_mode)}});
    std::ofstream file;
    std::ostream& os = open_output(file, a.output);
    if (also_recover) {
        RecoveryOutcome out = recover(oracle, params, a.eps0);
        const bool success =
            h == Hypothesis::Planted &&
            verify_estimate(out, oracle.instance());
        os << "{\"outcome\":";
        out.write_json(os);
        os << ",\"success\":" << (success ? "true" : "false") << "}\n";
    } else {
        DetectionOutcome out = detect(oracle, params);
        os << "{\"outcome\":";
        out.write_json(os);
        os << "}\n";
    }
    return 0;
}

void print_rational(std::ostream& os, const Rational& r,
                    const std::string& format) {
    if (format == "json") {
        os << "{\"value\":\"" << to_fraction_string(r) << "\",\"decimal\":"
           << to_decimal_string(r) << "}\n";
    } else {
        os << to_fraction_string(r) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"query-budgeted planted-clique toolkit"};
    app.require_subcommand(1);
    app.set_config("--config")->description(
        "flat key=value config file (dotted keys, e.g. classify.gamma=0.6); "
        "flags override it");

    // classify
    double gamma = 0, delta = 0;
    auto* classify = app.add_subcommand(
        "classify", "map (gamma, delta) to a phase-diagram region");
    classify->add_option("--gamma", gamma, "clique exponent, k = n^gamma")
        ->required();
    classify->add_option("--delta", delta, "budget exponent, q = n^delta")
        ->required();

    // detect / recover share parameters
    DetectArgs da;
    auto add_detect_opts = [&](CLI::App* cmd) {
        cmd->add_option("--n", da.n, "vertex count")->required();
        cmd->add_option("--k", da.k, "planted clique size")->required();
        cmd->add_option("--eps0", da.eps0, "slack parameter, > 0");
        cmd->add_option("--seed", da.seed, "base seed")
            ->envname("CLIQUE_PROBE_SEED");
        cmd->add_option("--budget", da.budget,
                        "query budget, -1 for unlimited");
        cmd->add_option("--s-mode", da.s_mode, "first | random")
            ->check(CLI::IsMember({"first", "random"}));
        cmd->add_option("--output", da.output, "write result here");
    };
    auto* detect_cmd = app.add_subcommand(
        "detect", "nonadaptive clique-threshold detection on one instance");
    add_detect_opts(detect_cmd);
    detect_cmd
        ->add_option("--hypothesis", da.hypothesis, "planted | null")
        ->check(CLI::IsMember({"planted", "null"}));
    auto* recover_cmd = app.add_subcommand(
        "recover", "two-step exact-set recovery on one planted instance");
    add_detect_opts(recover_cmd);

    // variant group
    auto* variant = app.add_subcommand(
        "variant", "marked-set game: exact formulas and strategies");
    variant->require_subcommand(1);
    int vn = 0, vk = 0, vq = 0;
    long long vtrials = 100000;
    std::uint64_t vseed = 0;
    std::string vpairs, vformat = "text";
    auto* all_false = variant->add_subcommand(
        "exact-all-false", "exact P(all pair queries false)");
    all_false->add_option("--n", vn)->required();
    all_false->add_option("--k", vk)->required();
    all_false->add_option("--pairs", vpairs, "e.g. 1-2,3-4")->required();
    all_false->add_option("--format", vformat)
        ->check(CLI::IsMember({"text", "json"}));
    auto* exact_rec = variant->add_subcommand(
        "exact-recovery", "exact success of the optimal strong-query "
                          "estimator");
    exact_rec->add_option("--n", vn)->required();
    exact_rec->add_option("--k", vk)->required();
    exact_rec->add_option("--q", vq)->required();
    exact_rec->add_option("--format", vformat)
        ->check(CLI::IsMember({"text", "json"}));
    auto* strategy = variant->add_subcommand(
        "strategy", "Monte Carlo success of the canonical strong strategy");
    strategy->add_option("--n", vn)->required();
    strategy->add_option("--k", vk)->required();
    strategy->add_option("--q", vq)->required();
    strategy->add_option("--trials", vtrials);
    strategy->add_option("--seed", vseed)->envname("CLIQUE_PROBE_SEED");

    // sweep
    SweepGrid grid;
    std::string gammas_text, deltas_text, mode_text = "detection";
    std::string sweep_output;
    grid.trials = 200;
    auto* sweep = app.add_subcommand(
        "sweep", "phase-diagram Monte Carlo sweep over (gamma, delta)");
    sweep->add_option("--n", grid.n)->required();
    sweep->add_option("--gammas", gammas_text, "e.g. 0.6,0.75")->required();
    sweep->add_option("--deltas", deltas_text, "e.g. 0.4,0.8,1.2")
        ->required();
    sweep->add_option("--trials", grid.trials, "trials per arm per cell");
    sweep->add_option("--eps0", grid.eps0);
    sweep->add_option("--seed", grid.base_seed)
        ->envname("CLIQUE_PROBE_SEED");
    sweep->add_option("--mode", mode_text)
        ->check(CLI::IsMember({"detection", "recovery"}));
    sweep->add_option("--workers", grid.workers, "harness worker pool size");
    sweep->add_option("--output", sweep_output, "write CSV here");

    // clique-number
    int cn = 0, csamples = 50;
    std::uint64_t cseed = 0;
    auto* cnum = app.add_subcommand(
        "clique-number", "sample max-clique sizes of density-1/2 graphs");
    cnum->add_option("--n", cn)->required();
    cnum->add_option("--samples", csamples);
    cnum->add_option("--seed", cseed)->envname("CLIQUE_PROBE_SEED");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (classify->parsed()) {
            log_config("classify", {{"gamma", std::to_string(gamma)},
                                    {"delta", std::to_string(delta)}});
            std::cout << region_name(classify_region(gamma, delta)) << "\n";
            return 0;
        }
        if (detect_cmd->parsed()) return run_detect(da, false);
        if (recover_cmd->parsed()) {
            da.hypothesis = "planted";
            return run_detect(da, true);
        }
        if (all_false->parsed()) {
            QuerySet qs;
            qs.pairs = parse_pairs(vpairs);
            log_config("variant exact-all-false",
                       {{"n", std::to_string(vn)},
                        {"k", std::to_string(vk)},
                        {"pairs", jstr(vpairs)}});
            print_rational(std::cout, exact_prob_all_false(vn, vk, qs),
                           vformat);
            return 0;
        }
        if (exact_rec->parsed()) {
            log_config("variant exact-recovery",
                       {{"n", std::to_string(vn)},
                        {"k", std::to_string(vk)},
                        {"q", std::to_string(vq)}});
            print_rational(std::cout, exact_recovery_success(vn, vk, vq),
                           vformat);
            return 0;
        }
        if (strategy->parsed()) {
            log_config("variant strategy",
                       {{"n", std::to_string(vn)},
                        {"k", std::to_string(vk)},
                        {"q", std::to_string(vq)},
                        {"trials", std::to_string(vtrials)},
                        {"seed", std::to_string(vseed)}});
            long long hits = 0;
            for (long long t = 0; t < vtrials; ++t) {
                const std::uint64_t s =
                    derive_seed(vseed, 0x73747261ULL,
                                static_cast<std::uint64_t>(t));
                const MarkedInstance inst = sample_marked_instance(vn, vk, s);
                if (canonical_strong_strategy(inst, vq, derive_seed(s, 1)) ==
                    inst.marked)
                    ++hits;
            }
            const double rate = static_cast<double>(hits) / vtrials;
            std::cout << "{\"success_rate\":" << rate << ",\"trials\":"
                      << vtrials << ",\"exact\":\""
                      << to_fraction_string(
                             exact_recovery_success(vn, vk, vq))
                      << "\"}\n";
            return 0;
        }
        if (sweep->parsed()) {
            grid.gammas = parse_doubles(gammas_text);
            grid.deltas = parse_doubles(deltas_text);
            grid.mode = mode_text == "recovery" ? SweepMode::Recovery
                                                : SweepMode::Detection;
            log_config("sweep", {{"n", std::to_string(grid.n)},
                                 {"gammas", jstr(gammas_text)},
                                 {"deltas", jstr(deltas_text)},
                                 {"trials", std::to_string(grid.trials)},
                                 {"eps0", std::to_string(grid.eps0)},
                                 {"seed", std::to_string(grid.base_seed)},
                                 {"mode", jstr(mode_text)},
                                 {"workers", std::to_string(grid.workers)}});
            const auto rows = run_sweep(grid);
            std::ofstream file;
            write_sweep_csv(open_output(file, sweep_output), rows);
            return 0;
        }
        if (cnum->parsed()) {
            log_config("clique-number",
                       {{"n", std::to_string(cn)},
                        {"samples", std::to_string(csamples)},
                        {"seed", std::to_string(cseed)}});
            const auto [omega_n, cap] = omega_reference(cn);
            int within = 0;
            std::cout << "{\"n\":" << cn << ",\"omega_n\":" << omega_n
                      << ",\"cap\":" << cap << ",\"sizes\":[";
            for (int s = 0; s < csamples; ++s) {
                const std::uint64_t gseed =
                    derive_seed(cseed, 0x676e7068ULL,
                                static_cast<std::uint64_t>(s));
                PlantedInstance inst =
                    sample_instance(cn, 1, Hypothesis::Null, gseed);
                EdgeOracle oracle(std::move(inst));
                std::vector<int> all(static_cast<std::size_t>(cn));
                for (int i = 0; i < cn; ++i)
                    all[static_cast<std::size_t>(i)] = i + 1;
                const int omega =
                    max_clique_size(build_from_oracle(all, oracle));
                if (static_cast<double>(omega) <= cap) ++within;
                std::cout << (s ? "," : "") << omega;
            }
            std::cout << "],\"fraction_within_cap\":"
                      << static_cast<double>(within) / csamples << "}\n";
            return 0;
        }
    } catch (const budget_exhausted_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const enumeration_infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
