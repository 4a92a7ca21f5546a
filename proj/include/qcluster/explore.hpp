#ifndef QCLUSTER_EXPLORE_HPP
#define QCLUSTER_EXPLORE_HPP

// Breadth-first exploration of the exchange graph with per-seed checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "error.hpp"
#include "seed.hpp"
#include "torus.hpp"

namespace qcluster {

using Word = std::vector<std::size_t>;

/// One-based, dash separated ("1-2-1"); "()" for the empty word.
inline std::string word_to_string(const Word& w)
{
    if (w.empty())
        return "()";
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k != 0)
            out += '-';
        out += std::to_string(w[k] + 1);
    }
    return out;
}

struct Finding {
    std::string kind;
    std::string word;
    std::string detail;
};

/// Structural checks on one seed: compatibility, divisibility of columns by
/// d_k, frozen variables, pairwise quasi-commutation by Lambda_t, involutivity
/// at pair and seed level, and the exchange relation X_i X'_i.
inline std::vector<Finding> check_seed_invariants(const QuantumSeed& seed)
{
    std::vector<Finding> out;
    const auto word = word_to_string(seed.history());
    auto report = [&](std::string kind, std::string detail) {
        out.push_back({std::move(kind), word, std::move(detail)});
    };
    try {
        const auto dt = check_compatible(seed.pair().lambda(), seed.pair().btilde());
        if (dt != seed.pair().dtilde())
            report("compatibility", "D changed under mutation");
        seed.exchange().validate_against(seed.pair().btilde());
    } catch (const error& e) {
        report("compatibility", e.what());
    }

    for (std::size_t l = seed.n(); l < seed.m(); ++l)
        if (!(seed.var(l) == TorusElement::generator(seed.initial_context(), l)))
            report("frozen", "variable " + std::to_string(l + 1) + " changed");

    const auto& lambda = seed.pair().lambda();
    for (std::size_t k = 0; k < seed.m(); ++k)
        for (std::size_t l = k + 1; l < seed.m(); ++l) {
            const auto t = q_commutation_exponent(seed.var(k), seed.var(l));
            if (!t || *t != lambda(k, l))
                report("q-commutation", "X" + std::to_string(k + 1) + "*X" + std::to_string(l + 1) +
                                            " does not commute as q^" + std::to_string(lambda(k, l)));
        }

    for (std::size_t i = 0; i < seed.n(); ++i) {
        try {
            if (!(mutate_pair(mutate_pair(seed.pair(), i), i) == seed.pair()))
                report("involution", "pair mutation " + std::to_string(i + 1) + " is not an involution");
            const auto once = mutate_seed(seed, i);
            if (!seed_equal(mutate_seed(once, i), seed))
                report("involution", "seed mutation " + std::to_string(i + 1) + " is not an involution");
            if (!(seed.var(i) * once.var(i) == exchange_product(seed, i)))
                report("exchange-relation", "X_i X'_i mismatch in direction " + std::to_string(i + 1));
        } catch (const error& e) {
            report(e.code() == errc::laurent_violation ? "laurent" : "involution", e.what());
        }
    }
    return out;
}

struct ExplorationOptions {
    std::size_t depth = 0;
    bool check_invariants = false;
    /// Check the power factorizations for s = 1..max_power (0 disables).
    std::int64_t max_power = 0;
    bool check_positivity = false;
};

struct VisitedSeed {
    QuantumSeed seed;
    Word word;
};

struct ExplorationReport {
    std::size_t mutations = 0;
    std::size_t laurent_violations = 0;
    std::vector<VisitedSeed> seeds;
    /// Shortest closed walk detected (two words reaching the same seed).
    std::optional<Word> cycle;
    std::vector<Finding> findings;

    std::size_t distinct_seeds() const { return seeds.size(); }
    bool ok() const { return laurent_violations == 0 && findings.empty(); }
};

namespace detail {

inline Word closed_walk(const Word& a, const Word& b)
{
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common])
        ++common;
    Word out(a.begin() + static_cast<std::ptrdiff_t>(common), a.end());
    for (auto it = b.rbegin(); it != b.rend() - static_cast<std::ptrdiff_t>(common); ++it)
        out.push_back(*it);
    // Mutations are involutions, so the reversed walk closes as well.
    Word reversed(out.rbegin(), out.rend());
    return std::min(out, reversed);
}

inline void run_seed_checks(const VisitedSeed& node, const ExplorationOptions& options, ExplorationReport& report)
{
    if (options.check_invariants)
        for (auto& f : check_seed_invariants(node.seed))
            report.findings.push_back(std::move(f));
    const auto word = word_to_string(node.word);
    for (std::size_t i = 0; i < node.seed.n() && options.max_power > 0; ++i)
        for (std::int64_t s = 1; s <= options.max_power; ++s)
            if (!power_factorization_check(node.seed, i, s))
                report.findings.push_back({"factorization", word,
                                           "direction " + std::to_string(i + 1) + ", s = " + std::to_string(s)});
    if (options.check_positivity)
        for (std::size_t k = 0; k < node.seed.m(); ++k)
            if (!node.seed.var(k).is_nonneg())
                report.findings.push_back({"positivity", word, "variable " + std::to_string(k + 1)});
}

} // namespace detail

/// Visits every seed reachable by words of length <= depth that never repeat
/// the preceding direction. Seeds are deduplicated by strict equality; a
/// repeated seed closes a cycle of the exchange graph.
inline ExplorationReport bfs_explore(const QuantumSeed& start, const ExplorationOptions& options)
{
    ExplorationReport report;
    std::map<std::string, std::size_t> index;
    index.emplace(seed_key(start), 0);
    report.seeds.push_back({start, {}});
    detail::run_seed_checks(report.seeds.front(), options, report);

    std::vector<std::size_t> frontier{0};
    for (std::size_t level = 0; level < options.depth && !frontier.empty(); ++level) {
        std::vector<std::size_t> next;
        for (const auto parent : frontier) {
            // Copies: the seed list grows inside the loop.
            const Word parent_word = report.seeds[parent].word;
            const QuantumSeed parent_seed = report.seeds[parent].seed;
            for (std::size_t i = 0; i < start.n(); ++i) {
                if (!parent_word.empty() && parent_word.back() == i)
                    continue;
                Word word = parent_word;
                word.push_back(i);
                ++report.mutations;
                std::optional<QuantumSeed> child;
                try {
                    child = mutate_seed(parent_seed, i);
                } catch (const error& e) {
                    if (e.code() != errc::laurent_violation)
                        throw;
                    ++report.laurent_violations;
                    report.findings.push_back({"laurent", word_to_string(word), e.what()});
                    continue;
                }
                auto key = seed_key(*child);
                auto found = index.find(key);
                if (found != index.end()) {
                    auto walk = detail::closed_walk(word, report.seeds[found->second].word);
                    if (!walk.empty() && (!report.cycle || walk.size() < report.cycle->size()))
                        report.cycle = std::move(walk);
                    continue;
                }
                index.emplace(std::move(key), report.seeds.size());
                next.push_back(report.seeds.size());
                report.seeds.push_back({std::move(*child), std::move(word)});
                detail::run_seed_checks(report.seeds.back(), options, report);
            }
        }
        frontier = std::move(next);
    }
    return report;
}

inline ExplorationReport bfs_explore(const QuantumSeed& start, std::size_t depth)
{
    ExplorationOptions options;
    options.depth = depth;
    return bfs_explore(start, options);
}

/// X_1, X_2, X_3, ... for a rank-2 seed: X_{k+2} replaces X_k under the
/// alternating word starting with direction 1.
inline std::vector<TorusElement> alternating_sequence(const QuantumSeed& seed, std::size_t count)
{
    if (seed.n() != 2)
        throw error(errc::invalid_direction, "alternating sequences need exactly two mutable directions");
    std::vector<TorusElement> out{seed.var(0), seed.var(1)};
    QuantumSeed current = seed;
    for (std::size_t k = 0; out.size() < count; ++k) {
        current = mutate_seed(current, k % 2);
        out.push_back(current.var(k % 2));
    }
    if (out.size() > count)
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(count), out.end());
    return out;
}

/// Smallest p with x[k+p] == x[k] for every k, provided the sequence covers
/// at least two periods.
inline std::optional<std::size_t> sequence_period(const std::vector<TorusElement>& xs)
{
    for (std::size_t p = 1; 2 * p <= xs.size(); ++p) {
        bool periodic = true;
        for (std::size_t k = 0; k + p < xs.size() && periodic; ++k)
            periodic = xs[k] == xs[k + p];
        if (periodic)
            return p;
    }
    return std::nullopt;
}

} // namespace qcluster

#endif // QCLUSTER_EXPLORE_HPP
