#ifndef CONFSPACE_EXACT_LINALG_HPP
#define CONFSPACE_EXACT_LINALG_HPP

#include "confspace/rational.hpp"
#include "confspace/sparse_matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace confspace {

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>; // sorted by column

// Scales every column by the lcm of its denominators so all entries become integers.
// Column scaling by nonzero constants leaves the rank unchanged.
inline std::vector<IntRow> integral_rows(const SparseExactMatrix& a)
{
    std::vector<Integer> scale(a.cols(), Integer(1));
    a.for_each([&](std::size_t, std::size_t c, const Rational& v) {
        mpz_lcm(scale[c].get_mpz_t(), scale[c].get_mpz_t(), v.get_den_mpz_t());
    });
    std::vector<IntRow> rows(a.rows());
    a.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
        Integer z = v.get_num() * (scale[c] / v.get_den());
        rows[r].emplace_back(c, std::move(z));
    });
    return rows;
}

inline void make_primitive(IntRow& row)
{
    if (row.empty())
        return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            return;
    }
    for (auto& [c, v] : row)
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// ft * target - fp * pivot, zeros dropped.
inline IntRow combine(const IntRow& target, const Integer& ft, const IntRow& pivot, const Integer& fp)
{
    IntRow out;
    out.reserve(target.size() + pivot.size());
    auto t = target.begin();
    auto p = pivot.begin();
    while (t != target.end() || p != pivot.end()) {
        if (p == pivot.end() || (t != target.end() && t->first < p->first)) {
            out.emplace_back(t->first, ft * t->second);
            ++t;
        } else if (t == target.end() || p->first < t->first) {
            out.emplace_back(p->first, -fp * p->second);
            ++p;
        } else {
            Integer v = ft * t->second - fp * p->second;
            if (v != 0)
                out.emplace_back(t->first, std::move(v));
            ++t;
            ++p;
        }
    }
    return out;
}

inline const Integer* find_in_row(const IntRow& row, std::size_t col)
{
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

} // namespace detail

/// Exact rank over Q.
///
/// Denominators are cleared column by column, then the integer matrix is reduced by
/// fraction-free row elimination. Each step picks the pivot with the smallest Markowitz
/// cost (row_len - 1) * (col_count - 1), breaking ties by pivot size and then position,
/// and divides each updated row by its content to keep entries small.
inline std::size_t rank(const SparseExactMatrix& a)
{
    std::vector<detail::IntRow> rows = detail::integral_rows(a);
    std::vector<std::size_t> active;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!rows[r].empty())
            active.push_back(r);

    std::size_t rk = 0;
    std::vector<std::size_t> col_count(a.cols());
    while (!active.empty()) {
        std::fill(col_count.begin(), col_count.end(), 0);
        for (std::size_t r : active)
            for (const auto& [c, v] : rows[r])
                ++col_count[c];

        // (cost, pivot bits, row, col)
        std::tuple<std::size_t, std::size_t, std::size_t, std::size_t> best{SIZE_MAX, SIZE_MAX, 0, 0};
        for (std::size_t r : active) {
            const std::size_t len = rows[r].size();
            for (const auto& [c, v] : rows[r]) {
                std::tuple cand{(len - 1) * (col_count[c] - 1), mpz_sizeinbase(v.get_mpz_t(), 2), r, c};
                if (cand < best)
                    best = cand;
            }
        }
        const auto [cost, bits, prow, pcol] = best;
        const Integer pivot = *detail::find_in_row(rows[prow], pcol);

        std::vector<std::size_t> next;
        next.reserve(active.size());
        for (std::size_t r : active) {
            if (r == prow)
                continue;
            if (const Integer* v = detail::find_in_row(rows[r], pcol)) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), v->get_mpz_t());
                Integer ft = pivot / g;
                Integer fp = *v / g;
                rows[r] = detail::combine(rows[r], ft, rows[prow], fp);
                detail::make_primitive(rows[r]);
            }
            if (!rows[r].empty())
                next.push_back(r);
        }
        active = std::move(next);
        ++rk;
    }
    return rk;
}

inline std::size_t kernel_dim(const SparseExactMatrix& a)
{
    return a.cols() - rank(a);
}

/// Basis of the right null space {x : a x = 0}, by Gauss-Jordan elimination over Q.
/// One vector per free column, with a 1 in that column.
inline std::vector<std::vector<Rational>> kernel_basis(const SparseExactMatrix& a)
{
    std::vector<std::map<std::size_t, Rational>> rows(a.rows());
    a.for_each([&](std::size_t r, std::size_t c, const Rational& v) { rows[r].emplace(c, v); });

    std::vector<bool> used(rows.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (col, row)
    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::size_t pr = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!used[r] && rows[r].contains(c)) {
                pr = r;
                break;
            }
        if (pr == rows.size())
            continue;
        used[pr] = true;
        const Rational inv = 1 / rows[pr].at(c);
        for (auto& [cc, v] : rows[pr])
            v *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pr)
                continue;
            auto it = rows[r].find(c);
            if (it == rows[r].end())
                continue;
            const Rational f = it->second;
            for (const auto& [cc, v] : rows[pr]) {
                Rational& t = rows[r][cc];
                t -= f * v;
                if (t == 0)
                    rows[r].erase(cc);
            }
        }
        pivots.emplace_back(c, pr);
    }

    std::vector<bool> is_pivot(a.cols(), false);
    for (const auto& [c, r] : pivots)
        is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(a.cols(), Rational(0));
        v[f] = 1;
        for (const auto& [c, r] : pivots) {
            auto it = rows[r].find(f);
            if (it != rows[r].end())
                v[c] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// a * x for a dense vector x.
inline std::vector<Rational> apply(const SparseExactMatrix& a, const std::vector<Rational>& x)
{
    std::vector<Rational> y(a.rows(), Rational(0));
    a.for_each([&](std::size_t r, std::size_t c, const Rational& v) { y[r] += v * x.at(c); });
    return y;
}

} // namespace confspace

#endif // CONFSPACE_EXACT_LINALG_HPP
