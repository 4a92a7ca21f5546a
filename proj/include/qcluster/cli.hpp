#ifndef QCLUSTER_CLI_HPP
#define QCLUSTER_CLI_HPP

// Command-line surface. run_command() is the whole program minus main(), so
// tests can drive it in-process.
//
// Exit codes: 0 success, 1 property violation, 2 parse or validation failure.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bounds.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "parse.hpp"
#include "seed.hpp"
#include "seed_io.hpp"
#include "torus.hpp"

namespace qcluster::cli {

enum exit_code : int { success = 0, violation = 1, failure = 2 };

struct Report {
    std::string command;
    std::vector<std::string> lines;
    std::vector<Finding> findings;
    nlohmann::json result = nlohmann::json::object();

    void say(std::string line) { lines.push_back(std::move(line)); }
};

namespace detail {

inline Word to_word(const std::vector<std::size_t>& one_based, std::size_t n)
{
    Word out;
    for (auto k : one_based) {
        if (k < 1 || k > n)
            throw error(errc::invalid_direction, "direction " + std::to_string(k) + " outside [1," +
                                                     std::to_string(n) + "]");
        out.push_back(k - 1);
    }
    return out;
}

inline std::vector<std::string> read_elements(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw error(errc::invalid_seed_file, "cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        out.push_back(line.substr(first));
    }
    return out;
}

inline std::string render(const TorusElement& e, bool ordered) { return ordered ? ordered_form(e) : to_string(e); }

inline nlohmann::json findings_json(const std::vector<Finding>& findings)
{
    auto out = nlohmann::json::array();
    for (const auto& f : findings)
        out.push_back({{"kind", f.kind}, {"word", f.word}, {"detail", f.detail}});
    return out;
}

inline void add_exploration(Report& report, const ExplorationReport& explored)
{
    report.findings.insert(report.findings.end(), explored.findings.begin(), explored.findings.end());
    report.result["mutations"] = explored.mutations;
    report.result["distinct_seeds"] = explored.distinct_seeds();
    report.result["laurent_violations"] = explored.laurent_violations;
    report.say("mutations: " + std::to_string(explored.mutations));
    report.say("distinct seeds: " + std::to_string(explored.distinct_seeds()));
    report.say("laurent violations: " + std::to_string(explored.laurent_violations));
    if (explored.cycle) {
        report.result["cycle"] = word_to_string(*explored.cycle);
        report.say("cycle of length " + std::to_string(explored.cycle->size()) + ": " +
                   word_to_string(*explored.cycle));
    }
}

} // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generalized quantum cluster algebras: mutation, Laurent checks and upper bounds", "qcluster"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable report");

    std::string seed_path;
    std::vector<std::size_t> word;
    std::optional<std::size_t> var;
    std::string out_path;
    bool ordered = false;
    std::size_t depth = 0;
    std::optional<std::string> element;
    std::optional<std::string> element_file;
    bool assume_coprime = false;
    std::optional<std::size_t> direction;
    std::optional<std::int64_t> power;

    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("seed", seed_path, "Seed JSON file")->required()->check(CLI::ExistingFile);
    };
    auto add_word = [&](CLI::App* sub) {
        sub->add_option("--word", word, "Mutation directions (1-based), e.g. 1,2,1")->delimiter(',');
    };

    auto* verify = app.add_subcommand("verify", "Validate a seed file and print derived data");
    add_seed(verify);

    auto* mutate = app.add_subcommand("mutate", "Apply a mutation word");
    add_seed(mutate);
    add_word(mutate);
    mutate->add_option("--var", var, "Print only this variable (1-based)");
    mutate->add_option("--out", out_path, "Write the resulting seed (re-rooted) to this file");
    mutate->add_flag("--ordered", ordered, "Print ordered monomials X1^a*X2^b");

    auto* expand = app.add_subcommand("expand", "Print cluster variables or an element in the initial torus");
    add_seed(expand);
    add_word(expand);
    expand->add_option("--var", var, "Print only this variable (1-based)");
    expand->add_option("--element", element, "Element expression to normalize");
    expand->add_flag("--ordered", ordered, "Print ordered monomials X1^a*X2^b");

    auto* laurent = app.add_subcommand("laurent-check", "Explore mutations and verify exact divisions");
    add_seed(laurent);
    laurent->add_option("--depth", depth, "Maximum word length")->required();

    auto* periodic = app.add_subcommand("periodic", "Search for a cycle returning to a visited seed");
    add_seed(periodic);
    periodic->add_option("--max-depth", depth, "Maximum word length")->required();

    auto* ub = app.add_subcommand("ub-member", "Upper-bound membership of an element");
    add_seed(ub);
    auto* element_opt = ub->add_option("--element", element, "Element expression in the initial torus");
    auto* file_opt = ub->add_option("--element-file", element_file, "File with one element per line");
    element_opt->excludes(file_opt);
    ub->add_flag("--assume-coprime", assume_coprime, "Run the mutation-invariance check without a certificate");

    auto* positivity = app.add_subcommand("positivity", "Check coefficient positivity of explored variables");
    add_seed(positivity);
    positivity->add_option("--depth", depth, "Maximum word length")->required();

    auto* factor = app.add_subcommand("factorization-check", "Check (X'_i)^s against the V and W factorizations");
    add_seed(factor);
    factor->add_option("--i", direction, "Direction (1-based); all when omitted");
    factor->add_option("--s", power, "Power s >= 1; 1..4 when omitted");
    factor->add_option("--depth", depth, "Also check every seed within this depth");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return e.get_exit_code() == 0 ? success : failure;
    }

    Report report;
    const auto started = std::chrono::steady_clock::now();
    int code = success;
    std::string status = "ok";
    try {
        const QuantumSeed seed = read_seed_file(seed_path);
        auto* chosen = app.get_subcommands().front();
        report.command = chosen->get_name();

        if (chosen == verify) {
            const auto& dt = seed.pair().dtilde();
            report.say("m = " + std::to_string(seed.m()) + ", n = " + std::to_string(seed.n()));
            report.say("dtilde = " + to_string(dt));
            report.say("d = " + to_string(seed.exchange().degrees()));
            for (std::size_t k = 0; k < seed.n(); ++k) {
                std::string family;
                for (const auto& c : seed.exchange().family(k))
                    family += (family.empty() ? "" : ", ") + to_string(c);
                report.say("h_" + std::to_string(k + 1) + " = [" + family + "]");
            }
            report.result["dtilde"] = dt;
            report.result["d"] = seed.exchange().degrees();
            if (seed.n() == 2) {
                const auto c = coprime_check_rank2(seed);
                report.say("coprimality: " + to_string(c));
                report.result["coprimality"] = to_string(c);
            }
        } else if (chosen == mutate || chosen == expand) {
            const QuantumSeed current = apply_word(seed, detail::to_word(word, seed.n()));
            if (element) {
                const auto value = parse_element(*element, seed.initial_context());
                report.say(detail::render(value, ordered));
                report.result["element"] = detail::render(value, ordered);
            } else {
                std::size_t first = 0;
                std::size_t last = current.m();
                if (var) {
                    if (*var < 1 || *var > current.m())
                        throw error(errc::invalid_direction, "variable index outside [1,m]");
                    first = *var - 1;
                    last = *var;
                }
                auto vars = nlohmann::json::array();
                for (std::size_t k = first; k < last; ++k) {
                    const auto text = detail::render(current.var(k), ordered);
                    report.say(var ? text : "X" + std::to_string(k + 1) + " = " + text);
                    vars.push_back(text);
                }
                report.result["word"] = word_to_string(current.history());
                report.result["variables"] = std::move(vars);
            }
            if (chosen == mutate && !out_path.empty()) {
                write_seed_file(current, out_path);
                report.say("wrote " + out_path);
            }
        } else if (chosen == laurent) {
            ExplorationOptions options;
            options.depth = depth;
            options.check_invariants = true;
            detail::add_exploration(report, bfs_explore(seed, options));
        } else if (chosen == periodic) {
            const auto explored = bfs_explore(seed, depth);
            detail::add_exploration(report, explored);
            if (explored.cycle) {
                const bool returns = seed_equal(apply_word(seed, *explored.cycle), seed);
                report.say(std::string("cycle word returns to the initial seed: ") + (returns ? "yes" : "no"));
                report.result["period"] = explored.cycle->size();
                if (!returns)
                    report.findings.push_back({"periodicity", word_to_string(*explored.cycle),
                                               "closed walk does not return to the initial seed"});
            } else {
                report.say("no cycle within depth " + std::to_string(depth));
            }
            if (seed.n() == 2) {
                const auto sequence = alternating_sequence(seed, 2 * depth + 2);
                if (const auto p = sequence_period(sequence)) {
                    report.say("variable sequence period: " + std::to_string(*p));
                    report.result["variable_period"] = *p;
                }
            }
        } else if (chosen == ub) {
            std::vector<std::string> texts;
            if (element)
                texts.push_back(*element);
            else if (element_file)
                texts = detail::read_elements(*element_file);
            else
                throw error(errc::syntax_error, "ub-member needs --element or --element-file");
            std::vector<TorusElement> elements;
            for (const auto& t : texts)
                elements.push_back(parse_element(t, seed.initial_context()));
            auto verdicts = nlohmann::json::array();
            for (const auto& y : elements) {
                std::string local;
                for (std::size_t i = 0; i < seed.n(); ++i)
                    local += std::string(i == 0 ? "" : " ") + (ub_local_member(seed, y, i) ? "1" : "0");
                const bool member = ub_member(seed, y);
                report.say((member ? "member     " : "not member ") + to_string(y) + "   [local: " + local + "]");
                verdicts.push_back({{"element", to_string(y)}, {"member", member}});
            }
            report.result["verdicts"] = std::move(verdicts);

            const auto coprime = coprime_check_rank2(seed);
            report.result["coprimality"] = to_string(coprime);
            if (coprime == Coprimality::coprime || assume_coprime) {
                auto sample = invariance_sample(seed);
                sample.insert(sample.end(), elements.begin(), elements.end());
                const auto invariance = upper_bound_invariance(seed, sample);
                report.say("invariance: " + std::to_string(invariance.comparisons) + " comparisons, " +
                           std::to_string(invariance.mismatches.size()) + " mismatches");
                report.result["invariance_mismatches"] = invariance.mismatches.size();
                for (const auto& mm : invariance.mismatches)
                    report.findings.push_back({"ub-invariance", std::to_string(mm.direction + 1),
                                               mm.element + (mm.here ? " member here, not after mutation"
                                                                     : " member after mutation only")});
            } else {
                report.say("coprimality " + to_string(coprime) +
                           "; invariance check skipped (use --assume-coprime)");
            }
        } else if (chosen == positivity) {
            ExplorationOptions options;
            options.depth = depth;
            options.check_positivity = true;
            detail::add_exploration(report, bfs_explore(seed, options));
        } else if (chosen == factor) {
            std::vector<std::size_t> directions;
            if (direction) {
                directions = detail::to_word({*direction}, seed.n());
            } else {
                for (std::size_t i = 0; i < seed.n(); ++i)
                    directions.push_back(i);
            }
            std::int64_t lo = 1;
            std::int64_t hi = 4;
            if (power) {
                if (*power < 1)
                    throw error(errc::dimension_mismatch, "--s must be at least 1");
                lo = hi = *power;
            }
            const auto explored = bfs_explore(seed, depth);
            std::size_t checks = 0;
            for (const auto& node : explored.seeds)
                for (auto i : directions)
                    for (auto s = lo; s <= hi; ++s) {
                        ++checks;
                        if (!power_factorization_check(node.seed, i, s))
                            report.findings.push_back({"factorization", word_to_string(node.word),
                                                       "direction " + std::to_string(i + 1) + ", s = " +
                                                           std::to_string(s)});
                    }
            report.say("factorization checks: " + std::to_string(checks) + ", failures: " +
                       std::to_string(report.findings.size()));
            report.result["checks"] = checks;
        }
        if (!report.findings.empty()) {
            code = violation;
            status = "violation";
        }
    } catch (const error& e) {
        const bool property = e.code() == errc::laurent_violation || e.code() == errc::epsilon_mismatch;
        code = property ? violation : failure;
        status = property ? "violation" : "error";
        report.findings.push_back({std::string(errc_name(e.code())), "", e.what()});
        if (!as_json)
            err << "error: " << e.what() << '\n';
    }
    const auto elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

    if (as_json) {
        nlohmann::json j{{"command", report.command},
                         {"status", status},
                         {"findings", detail::findings_json(report.findings)},
                         {"timings", {{"total_ms", elapsed}}},
                         {"result", report.result}};
        out << j.dump(2) << '\n';
    } else {
        for (const auto& line : report.lines)
            out << line << '\n';
        for (const auto& f : report.findings)
            if (status != "error")
                out << "FINDING " << f.kind << " [" << f.word << "] " << f.detail << '\n';
        out << "status: " << status << '\n';
    }
    return code;
}

} // namespace qcluster::cli

#endif // QCLUSTER_CLI_HPP
