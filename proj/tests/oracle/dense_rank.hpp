#ifndef CONFSPACE_TESTS_ORACLE_DENSE_RANK_HPP
#define CONFSPACE_TESTS_ORACLE_DENSE_RANK_HPP

// Naive dense Gaussian elimination over Q. Test-only reference for the sparse path.

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace confspace::oracle {

using DenseMatrix = std::vector<std::vector<mpq_class>>;

inline std::size_t dense_rank(DenseMatrix a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0)
                continue;
            const mpq_class f = a[r][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j)
                a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace confspace::oracle

#endif // CONFSPACE_TESTS_ORACLE_DENSE_RANK_HPP
