#ifndef QCLUSTER_TESTS_SUPPORT_HPP
#define QCLUSTER_TESTS_SUPPORT_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/qcluster.hpp"

namespace qtest {

using namespace qcluster;

inline std::string sample_path(const std::string& relative) { return std::string(QCLUSTER_SAMPLES) + "/" + relative; }

inline QuantumSeed load_seed(const std::string& name) { return read_seed_file(sample_path("seeds/" + name)); }

inline ContextPtr plane() { return make_context(IntMatrix{{0, 1}, {-1, 0}}); }

inline const Symbol h11{1, 1};

/// Principal-coefficient seed of type A3: B~ = [B; I], Lambda = [[0,-I],[I,-B]].
inline QuantumSeed a3_principal()
{
    const IntMatrix b{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};
    IntMatrix btilde(6, 3);
    IntMatrix lambda(6, 6);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            btilde(r, c) = b(r, c);
            lambda(3 + r, 3 + c) = -b(r, c);
        }
        btilde(3 + r, r) = 1;
        lambda(r, 3 + r) = -1;
        lambda(3 + r, r) = 1;
    }
    return make_seed(lambda, btilde);
}

/// {(exponent, coefficient)} pairs for a hand-written classical Laurent polynomial.
using ClassicalPoly = std::map<IntVector, long long>;

inline TorusElement from_classical(const ContextPtr& ctx, const ClassicalPoly& p)
{
    TorusElement out(ctx);
    for (const auto& [c, v] : p)
        out.add_term(c, QCoefficient(v));
    return out;
}

struct Random {
    std::mt19937_64 engine;

    explicit Random(std::uint64_t seed) : engine(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine);
    }

    QCoefficient coefficient(int max_terms = 3)
    {
        QCoefficient out;
        const auto terms = uniform(1, max_terms);
        for (std::int64_t t = 0; t < terms; ++t) {
            auto v = uniform(-3, 3);
            if (v == 0)
                v = 1;
            out += QCoefficient(v) * QCoefficient::q_power(uniform(-3, 3)) *
                   QCoefficient::symbol(h11, uniform(0, 2)) * QCoefficient::symbol(Symbol{2, 1}, uniform(0, 1));
        }
        return out.is_zero() ? QCoefficient(1) : out;
    }

    TorusElement element(const ContextPtr& ctx, int max_terms = 3, std::int64_t radius = 2)
    {
        TorusElement out(ctx);
        const auto terms = uniform(1, max_terms);
        for (std::int64_t t = 0; t < terms; ++t) {
            IntVector c(ctx->dim());
            for (auto& x : c)
                x = uniform(-radius, radius);
            out.add_term(c, coefficient(2));
        }
        return out.is_zero() ? TorusElement::constant(ctx, 1) : out;
    }

    IntVector vector(std::size_t m, std::int64_t radius = 3)
    {
        IntVector out(m);
        for (auto& x : out)
            x = uniform(-radius, radius);
        return out;
    }
};

/// Evaluation at q = 1 in Z/p with every symbol h[k,r] sent to a fixed
/// residue. Independent of the torus division code.
class ModularPoint {
public:
    static constexpr std::int64_t p = 1000000007;

    ModularPoint(std::vector<std::int64_t> x, std::int64_t h_base) : x_(std::move(x)), h_base_(h_base) {}

    static std::int64_t mul(std::int64_t a, std::int64_t b) { return static_cast<std::int64_t>((__int128)a * b % p); }

    static std::int64_t power(std::int64_t a, std::int64_t e)
    {
        a %= p;
        if (a < 0)
            a += p;
        if (e < 0)
            return power(power(a, p - 2), -e);
        std::int64_t out = 1;
        for (; e > 0; e >>= 1, a = mul(a, a))
            if (e & 1)
                out = mul(out, a);
        return out;
    }

    std::int64_t symbol(const Symbol& s) const { return (h_base_ + 7 * s.family + 13 * s.index) % p; }

    std::int64_t eval(const QCoefficient& c) const
    {
        std::int64_t out = 0;
        for (const auto& [mono, v] : c.terms()) {
            const integer reduced = ((v % p) + p) % p;
            auto t = static_cast<std::int64_t>(reduced);
            for (const auto& [s, e] : mono.powers)
                t = mul(t, power(symbol(s), e));
            out = (out + t) % p;
        }
        return out;
    }

    std::int64_t eval(const TorusElement& e) const
    {
        std::int64_t out = 0;
        for (const auto& [c, coef] : e.terms()) {
            auto t = eval(coef);
            for (std::size_t k = 0; k < c.size(); ++k)
                t = mul(t, power(x_[k], c[k]));
            out = (out + t) % p;
        }
        return out;
    }

private:
    std::vector<std::int64_t> x_;
    std::int64_t h_base_;
};

/// Classical exchange relation at q = 1 from the current matrix alone:
/// x_i x'_i = sum_r h_{i,r} prod_l x_l^{r[beta_l]_+ + (d-r)[-beta_l]_+}.
inline std::int64_t classical_exchange_rhs(const QuantumSeed& seed, std::size_t i, const ModularPoint& pt)
{
    const auto d = seed.exchange().degree(i);
    const auto column = seed.pair().b_column(i);
    std::vector<std::int64_t> values;
    for (const auto& v : seed.vars())
        values.push_back(pt.eval(v));
    std::int64_t out = 0;
    for (std::int64_t r = 0; r <= d; ++r) {
        auto t = pt.eval(seed.exchange().h(i, static_cast<std::size_t>(r)));
        for (std::size_t l = 0; l < seed.m(); ++l) {
            const auto beta = column[l] / d;
            const auto e = r * std::max<std::int64_t>(beta, 0) + (d - r) * std::max<std::int64_t>(-beta, 0);
            t = ModularPoint::mul(t, ModularPoint::power(values[l], e));
        }
        out = (out + t) % ModularPoint::p;
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> read_golden(const std::string& relative)
{
    std::ifstream in(sample_path(relative));
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos)
            out.emplace_back("", line);
        else
            out.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return out;
}

} // namespace qtest

#endif // QCLUSTER_TESTS_SUPPORT_HPP
