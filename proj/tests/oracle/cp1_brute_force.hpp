#ifndef CONFSPACE_TESTS_ORACLE_CP1_BRUTE_FORCE_HPP
#define CONFSPACE_TESTS_ORACLE_CP1_BRUTE_FORCE_HPP

// Hand-written complex for C_k(CP^1) = C_k(S^2), independent of the engine.
//
// Monomials v0^a v2^b w1^e w3^f with a + b = k - 2(e + f), e, f in {0, 1}, written in the
// order v0 v2 w1 w3. With P a polynomial in v0, v2:
//   d(P w1)    = 2 P v0 v2
//   d(P w3)    = P v2^2
//   d(P w1 w3) = 2 P v0 v2 w3 - P v2^2 w1
// Cohomology per total degree from dense ranks, ignoring the weight grading.

#include "oracle/dense_rank.hpp"

#include <array>
#include <map>
#include <vector>

namespace confspace::oracle {

inline std::map<int, long long> cp1_betti_brute_force(int k)
{
    using Mono = std::array<int, 4>; // a, b, e, f
    std::vector<Mono> basis;
    for (int e = 0; e <= 1; ++e)
        for (int f = 0; f <= 1; ++f) {
            const int len = k - 2 * (e + f);
            if (len < 0)
                continue;
            for (int b = 0; b <= len; ++b)
                basis.push_back({len - b, b, e, f});
        }
    auto degree = [](const Mono& x) { return 2 * x[1] + x[2] + 3 * x[3]; };
    std::map<int, std::vector<Mono>> by_degree;
    int top = 0;
    for (const auto& x : basis) {
        by_degree[degree(x)].push_back(x);
        top = std::max(top, degree(x));
    }

    auto boundary = [](const Mono& x) {
        std::vector<std::pair<Mono, int>> out;
        const auto [a, b, e, f] = x;
        if (e == 1 && f == 0)
            out.push_back({{a + 1, b + 1, 0, 0}, 2});
        if (e == 0 && f == 1)
            out.push_back({{a, b + 2, 0, 0}, 1});
        if (e == 1 && f == 1) {
            out.push_back({{a + 1, b + 1, 0, 1}, 2});
            out.push_back({{a, b + 2, 1, 0}, -1});
        }
        return out;
    };

    std::map<int, std::size_t> rank_out;
    for (int i = 0; i <= top; ++i) {
        const auto& src = by_degree[i];
        const auto& tgt = by_degree[i + 1];
        DenseMatrix m(tgt.size(), std::vector<mpq_class>(src.size(), 0));
        for (std::size_t c = 0; c < src.size(); ++c)
            for (const auto& [y, coeff] : boundary(src[c]))
                for (std::size_t r = 0; r < tgt.size(); ++r)
                    if (tgt[r] == y)
                        m[r][c] += coeff;
        rank_out[i] = tgt.empty() || src.empty() ? 0 : dense_rank(m);
    }
    std::map<int, long long> betti;
    for (int i = 0; i <= top; ++i) {
        const long long dim = static_cast<long long>(by_degree[i].size());
        betti[i] = dim - static_cast<long long>(rank_out[i]) - (i > 0 ? static_cast<long long>(rank_out[i - 1]) : 0);
    }
    return betti;
}

} // namespace confspace::oracle

#endif // CONFSPACE_TESTS_ORACLE_CP1_BRUTE_FORCE_HPP
