#ifndef CONFSPACE_MONOMIAL_HPP
#define CONFSPACE_MONOMIAL_HPP

#include "confspace/generators.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace confspace {

/// Monomial in Sym(V) (x) Sym(W), stored as exponent vectors over v_gens and w_gens.
/// Equality and order depend on the exponents only; degree, weight and v_length are cached.
struct Monomial {
    std::vector<std::uint16_t> v_exp;
    std::vector<std::uint16_t> w_exp;
    int degree = 0;
    int weight = 0;
    int v_length = 0;

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.v_exp == b.v_exp && a.w_exp == b.w_exp;
    }
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (auto c = a.v_exp <=> b.v_exp; c != 0)
            return c;
        return a.w_exp <=> b.w_exp;
    }

    std::uint16_t exponent(const GeneratorSet& g, std::size_t id) const
    {
        return g.is_w(id) ? w_exp[id - g.nv()] : v_exp[id];
    }
};

inline Monomial make_monomial(const GeneratorSet& g, std::vector<std::uint16_t> v_exp, std::vector<std::uint16_t> w_exp)
{
    if (v_exp.size() != g.nv() || w_exp.size() != g.nw())
        throw std::invalid_argument("monomial exponent vectors do not match the generator set");
    Monomial x{std::move(v_exp), std::move(w_exp)};
    for (std::size_t id = 0; id < g.total(); ++id) {
        const int e = x.exponent(g, id);
        if (e > 1 && g.odd(id))
            throw std::invalid_argument("odd generator " + g.at(id).name + " with exponent > 1");
        x.degree += e * g.degree(id);
        if (g.is_w(id))
            x.weight += e;
        else
            x.v_length += e;
    }
    return x;
}

/// The monomial written as a product of generators in canonical order: v-factors then
/// w-factors, each by (degree, name), repeated factors adjacent.
inline std::vector<std::size_t> factors(const GeneratorSet& g, const Monomial& x)
{
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < g.total(); ++id)
        for (int e = 0; e < x.exponent(g, id); ++e)
            out.push_back(id);
    return out;
}

struct SignedMonomial {
    int sign;
    Monomial mono;
};

/// Brings a product of generators into canonical order. The sign is the Koszul sign of the
/// permutation restricted to odd factors; a repeated odd factor makes the product zero.
inline std::optional<SignedMonomial> canonicalize(const GeneratorSet& g, std::vector<std::size_t> fs)
{
    int sign = 1;
    for (std::size_t i = 1; i < fs.size(); ++i)
        for (std::size_t j = i; j > 0 && fs[j - 1] > fs[j]; --j) {
            if (g.odd(fs[j - 1]) && g.odd(fs[j]))
                sign = -sign;
            std::swap(fs[j - 1], fs[j]);
        }
    std::vector<std::uint16_t> v(g.nv(), 0), w(g.nw(), 0);
    for (std::size_t id : fs) {
        auto& e = g.is_w(id) ? w[id - g.nv()] : v[id];
        if (e > 0 && g.odd(id))
            return std::nullopt;
        ++e;
    }
    return SignedMonomial{sign, make_monomial(g, std::move(v), std::move(w))};
}

inline std::string to_string(const GeneratorSet& g, const Monomial& x)
{
    std::string out;
    for (std::size_t id = 0; id < g.total(); ++id) {
        const int e = x.exponent(g, id);
        if (e == 0)
            continue;
        if (!out.empty())
            out += ' ';
        out += g.at(id).name;
        if (e > 1)
            out += '^' + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

/// Parses "v_2^3 v_4 w_5" (or "1") back into a monomial, in any factor order. The factor
/// order is not used for a sign; this is a lookup helper.
inline Monomial parse_monomial(const GeneratorSet& g, const std::string& text)
{
    std::vector<std::uint16_t> v(g.nv(), 0), w(g.nw(), 0);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(' ', pos);
        if (end == std::string::npos)
            end = text.size();
        std::string tok = text.substr(pos, end - pos);
        pos = end + 1;
        if (tok.empty() || tok == "1")
            continue;
        int e = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
            e = std::stoi(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
        }
        bool found = false;
        for (std::size_t id = 0; id < g.total() && !found; ++id)
            if (g.at(id).name == tok) {
                (g.is_w(id) ? w[id - g.nv()] : v[id]) += static_cast<std::uint16_t>(e);
                found = true;
            }
        if (!found)
            throw std::invalid_argument("unknown generator '" + tok + "'");
    }
    return make_monomial(g, std::move(v), std::move(w));
}

} // namespace confspace

#endif // CONFSPACE_MONOMIAL_HPP
