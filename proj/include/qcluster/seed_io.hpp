#ifndef QCLUSTER_SEED_IO_HPP
#define QCLUSTER_SEED_IO_HPP

// Seed files:
//   { "m": int, "n": int, "lambda": [[int]], "btilde": [[int]],
//     "d": [int] (optional), "h": { "k": [coeff-string, ...] } (optional) }
// Keys of "h" are one-based directions. Missing families default to formal
// palindromic symbols; a missing "d" defaults to column gcds.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "coeff.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "parse.hpp"
#include "seed.hpp"

namespace qcluster {

namespace detail {

inline IntMatrix matrix_from_json(const nlohmann::json& j, const char* name, std::size_t rows, std::size_t cols)
{
    if (!j.is_array() || j.size() != rows)
        throw error(errc::invalid_seed_file, std::string(name) + " must have " + std::to_string(rows) + " rows");
    IntMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw error(errc::invalid_seed_file,
                        std::string(name) + " row " + std::to_string(r + 1) + " must have " + std::to_string(cols) +
                            " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number_integer())
                throw error(errc::invalid_seed_file, std::string(name) + " entries must be integers");
            out(r, c) = row[c].get<std::int64_t>();
        }
    }
    return out;
}

} // namespace detail

inline QuantumSeed seed_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw error(errc::invalid_seed_file, "seed file must be a JSON object");
    for (const char* key : {"m", "n", "lambda", "btilde"})
        if (!j.contains(key))
            throw error(errc::invalid_seed_file, std::string("missing field \"") + key + "\"");
    if (!j["m"].is_number_integer() || !j["n"].is_number_integer())
        throw error(errc::invalid_seed_file, "m and n must be integers");
    const auto m = j["m"].get<std::int64_t>();
    const auto n = j["n"].get<std::int64_t>();
    if (n < 1 || m < n)
        throw error(errc::invalid_seed_file, "need 1 <= n <= m");
    const auto um = static_cast<std::size_t>(m);
    const auto un = static_cast<std::size_t>(n);

    CompatiblePair pair(detail::matrix_from_json(j["lambda"], "lambda", um, um),
                        detail::matrix_from_json(j["btilde"], "btilde", um, un));

    IntVector degrees;
    if (j.contains("d")) {
        const auto& d = j["d"];
        if (!d.is_array() || d.size() != un)
            throw error(errc::invalid_seed_file, "d must list n integers");
        for (const auto& x : d) {
            if (!x.is_number_integer())
                throw error(errc::invalid_seed_file, "d entries must be integers");
            degrees.push_back(x.get<std::int64_t>());
        }
    } else {
        degrees = default_degrees(pair.btilde());
    }

    std::vector<std::vector<QCoefficient>> h;
    const nlohmann::json* families = nullptr;
    if (j.contains("h")) {
        if (!j["h"].is_object())
            throw error(errc::invalid_seed_file, "h must be an object keyed by direction");
        families = &j["h"];
        for (const auto& [key, value] : families->items()) {
            std::size_t k = 0;
            try {
                std::size_t used = 0;
                k = static_cast<std::size_t>(std::stoul(key, &used));
                if (used != key.size())
                    throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw error(errc::invalid_seed_file, "h key \"" + key + "\" is not a direction");
            }
            if (k < 1 || k > un)
                throw error(errc::invalid_seed_file, "h key \"" + key + "\" outside [1,n]");
            if (!value.is_array())
                throw error(errc::invalid_seed_file, "h[\"" + key + "\"] must be a list of strings");
        }
    }
    for (std::size_t k = 0; k < un; ++k) {
        const auto key = std::to_string(k + 1);
        if (families == nullptr || !families->contains(key)) {
            h.push_back(ExchangeData::formal_family(static_cast<std::int64_t>(k) + 1, degrees[k]));
            continue;
        }
        std::vector<QCoefficient> family;
        for (const auto& entry : (*families)[key]) {
            if (entry.is_string())
                family.push_back(parse_coefficient(entry.get<std::string>()));
            else if (entry.is_number_integer())
                family.emplace_back(entry.get<long long>());
            else
                throw error(errc::invalid_seed_file, "h entries must be coefficient strings");
        }
        h.push_back(std::move(family));
    }
    return QuantumSeed::initial(std::move(pair), ExchangeData(std::move(degrees), std::move(h)));
}

/// Serializes the seed's current pair and exchange data, i.e. the seed
/// re-rooted as an initial seed.
inline nlohmann::json seed_to_json(const QuantumSeed& seed)
{
    nlohmann::json j;
    j["m"] = seed.m();
    j["n"] = seed.n();
    j["lambda"] = seed.pair().lambda().to_rows();
    j["btilde"] = seed.pair().btilde().to_rows();
    j["d"] = seed.exchange().degrees();
    nlohmann::json h = nlohmann::json::object();
    for (std::size_t k = 0; k < seed.n(); ++k) {
        auto family = nlohmann::json::array();
        for (const auto& coef : seed.exchange().family(k))
            family.push_back(to_string(coef));
        h[std::to_string(k + 1)] = std::move(family);
    }
    j["h"] = std::move(h);
    return j;
}

inline QuantumSeed read_seed_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw error(errc::invalid_seed_file, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::invalid_seed_file, path + ": " + e.what());
    }
    return seed_from_json(j);
}

inline void write_seed_file(const QuantumSeed& seed, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw error(errc::invalid_seed_file, "cannot write " + path);
    out << seed_to_json(seed).dump(2) << '\n';
}

} // namespace qcluster

#endif // QCLUSTER_SEED_IO_HPP
