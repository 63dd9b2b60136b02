#ifndef CONFSPACE_RATIONAL_HPP
#define CONFSPACE_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace confspace {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". No decimals, no whitespace, q != 0.
inline std::optional<Rational> parse_rational(std::string_view text)
{
    auto digits = [](std::string_view s) {
        if (s.empty())
            return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+'))
        body.remove_prefix(1);
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den))
        return std::nullopt;
    Integer d(std::string(den), 10);
    if (d == 0)
        return std::nullopt;
    Integer n(std::string(num), 10);
    if (!text.empty() && text.front() == '-')
        n = -n;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

/// Canonical "p/q" (or "p" when integral).
inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline std::string to_string(const Integer& z)
{
    return z.get_str();
}

} // namespace confspace

#endif // CONFSPACE_RATIONAL_HPP
