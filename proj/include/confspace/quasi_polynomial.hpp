#ifndef CONFSPACE_QUASI_POLYNOMIAL_HPP
#define CONFSPACE_QUASI_POLYNOMIAL_HPP

#include "confspace/errors.hpp"
#include "confspace/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace confspace {

struct Sample {
    long long k;
    std::int64_t value;
};

/// For k >= onset, f(k) = sum_j coefficients[k mod period][j] * k^j.
struct QuasiPolynomial {
    int period = 1;
    long long onset = 0;
    int degree = 0; // bound used by the certificate; each class may have lower actual degree
    std::vector<std::vector<Rational>> coefficients;

    Rational evaluate(long long k) const
    {
        const auto r = static_cast<std::size_t>(((k % period) + period) % period);
        Rational acc = 0;
        const Rational x(Integer(std::to_string(k), 10));
        for (auto it = coefficients[r].rbegin(); it != coefficients[r].rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    bool is_zero() const
    {
        for (const auto& c : coefficients)
            if (!c.empty())
                return false;
        return true;
    }
};

class UnderDeterminedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Rational as_rational(long long v)
{
    return Rational(Integer(std::to_string(v), 10));
}

// Coefficients (low to high, trailing zeros trimmed) of the polynomial through the points.
inline std::vector<Rational> interpolate(const std::vector<long long>& xs, const std::vector<std::int64_t>& ys)
{
    const std::size_t n = xs.size();
    std::vector<Rational> dd(n);
    for (std::size_t i = 0; i < n; ++i)
        dd[i] = as_rational(ys[i]);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            dd[i] = (dd[i] - dd[i - 1]) / as_rational(xs[i] - xs[i - j]);
    // Newton form to monomial basis, Horner from the top.
    std::vector<Rational> poly{dd[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        const Rational x = as_rational(xs[i]);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= x * poly[j];
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    while (!poly.empty() && poly.back() == 0)
        poly.pop_back();
    return poly;
}

// (order)-th forward differences of an equally spaced sequence all vanish.
inline bool differences_vanish(std::vector<std::int64_t> seq, int order)
{
    for (int o = 0; o < order; ++o) {
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            seq[i] = seq[i + 1] - seq[i];
        seq.pop_back();
    }
    for (auto v : seq)
        if (v != 0)
            return false;
    return true;
}

} // namespace detail

/// Searches for the smallest certificate (period, then onset, then degree) that explains
/// a contiguous run of samples. A candidate (p, onset) is admissible only when at least
/// (deg_max + 2) * p samples lie at or beyond the onset, so every residue class keeps
/// deg_max + 2 points whatever degree fits. nullopt means nothing fits within the bounds.
inline std::optional<QuasiPolynomial> detect_quasi_polynomial(std::span<const Sample> samples, int p_max = 6,
                                                              int deg_max = 4)
{
    if (p_max < 1 || deg_max < 0)
        throw InvalidParameter("detector bounds must satisfy p_max >= 1 and deg_max >= 0");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].k != samples[i - 1].k + 1)
            throw InvalidParameter("samples must cover a contiguous increasing range of k");
    if (samples.size() < static_cast<std::size_t>(deg_max) + 2)
        throw UnderDeterminedError("need at least " + std::to_string(deg_max + 2) + " samples for degree bound " +
                                   std::to_string(deg_max) + ", got " + std::to_string(samples.size()));

    for (int p = 1; p <= p_max; ++p)
        for (std::size_t start = 0; start < samples.size(); ++start) {
            const std::size_t tail = samples.size() - start;
            if (tail < static_cast<std::size_t>(deg_max + 2) * static_cast<std::size_t>(p))
                break;
            for (int deg = 0; deg <= deg_max; ++deg) {
                QuasiPolynomial q;
                q.period = p;
                q.onset = samples[start].k;
                q.degree = deg;
                q.coefficients.resize(static_cast<std::size_t>(p));
                bool fits = true;
                for (int r = 0; r < p && fits; ++r) {
                    std::vector<long long> xs;
                    std::vector<std::int64_t> ys;
                    for (std::size_t i = start + static_cast<std::size_t>(r); i < samples.size();
                         i += static_cast<std::size_t>(p)) {
                        xs.push_back(samples[i].k);
                        ys.push_back(samples[i].value);
                    }
                    if (!detail::differences_vanish(ys, deg + 1)) {
                        fits = false;
                        break;
                    }
                    xs.resize(static_cast<std::size_t>(deg) + 1);
                    ys.resize(static_cast<std::size_t>(deg) + 1);
                    const auto cls = static_cast<std::size_t>(((q.onset + r) % p + p) % p);
                    q.coefficients[cls] = detail::interpolate(xs, ys);
                }
                if (!fits)
                    continue;
                for (std::size_t i = start; i < samples.size(); ++i)
                    if (q.evaluate(samples[i].k) != detail::as_rational(samples[i].value))
                        throw std::logic_error("quasi-polynomial certificate does not reproduce its samples");
                return q;
            }
        }
    return std::nullopt;
}

inline nlohmann::ordered_json quasi_polynomial_to_json(const QuasiPolynomial& q)
{
    nlohmann::ordered_json doc;
    doc["period"] = q.period;
    doc["onset"] = q.onset;
    doc["degree"] = q.degree;
    doc["classes"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < q.coefficients.size(); ++r) {
        nlohmann::ordered_json cs = nlohmann::ordered_json::array();
        for (const auto& c : q.coefficients[r])
            cs.push_back(to_string(c));
        doc["classes"].push_back({{"residue", r}, {"coefficients", cs}});
    }
    return doc;
}

/// "k/2 - 1/2" style rendering of one residue class polynomial.
inline std::string polynomial_to_string(const std::vector<Rational>& coeffs)
{
    if (coeffs.empty())
        return "0";
    std::string out;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        const Rational& c = coeffs[j];
        if (c == 0)
            continue;
        std::string term;
        const Rational a = abs(c);
        const std::string mono = j == 0 ? "" : j == 1 ? "k" : "k^" + std::to_string(j);
        if (j == 0)
            term = to_string(a);
        else
            term = (a == 1 ? "" : to_string(a) + "*") + mono;
        if (out.empty())
            out = (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? " - " : " + ") + term;
    }
    return out;
}

} // namespace confspace

#endif // CONFSPACE_QUASI_POLYNOMIAL_HPP
