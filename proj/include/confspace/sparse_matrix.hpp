#ifndef CONFSPACE_SPARSE_MATRIX_HPP
#define CONFSPACE_SPARSE_MATRIX_HPP

#include "confspace/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace confspace {

/// Sparse matrix over Q. Entries are kept sorted by (row, col); zeros are never stored.
class SparseExactMatrix {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        Rational value;
    };

    SparseExactMatrix() = default;
    SparseExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Builds from triplets. Duplicate positions and out-of-range indices are rejected;
    /// zero values are dropped.
    static SparseExactMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Entry>& triplets)
    {
        SparseExactMatrix m(rows, cols);
        for (const auto& e : triplets) {
            m.check_index(e.row, e.col);
            if (m.entries_.contains({e.row, e.col}))
                throw std::invalid_argument("duplicate matrix entry");
            if (e.value != 0)
                m.entries_.emplace(std::pair{e.row, e.col}, e.value);
        }
        return m;
    }

    static SparseExactMatrix identity(std::size_t n)
    {
        SparseExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.entries_.emplace(std::pair{i, i}, Rational(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    Rational at(std::size_t r, std::size_t c) const
    {
        check_index(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const Rational& v)
    {
        check_index(r, c);
        if (v == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    void add(std::size_t r, std::size_t c, const Rational& v)
    {
        check_index(r, c);
        auto [it, inserted] = entries_.try_emplace({r, c}, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0)
                entries_.erase(it);
        }
    }

    std::vector<Entry> entries() const
    {
        std::vector<Entry> out;
        out.reserve(entries_.size());
        for (const auto& [rc, v] : entries_)
            out.push_back({rc.first, rc.second, v});
        return out;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (const auto& [rc, v] : entries_)
            f(rc.first, rc.second, v);
    }

    SparseExactMatrix transpose() const
    {
        SparseExactMatrix t(cols_, rows_);
        for (const auto& [rc, v] : entries_)
            t.entries_.emplace(std::pair{rc.second, rc.first}, v);
        return t;
    }

    friend bool operator==(const SparseExactMatrix& a, const SparseExactMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    void check_index(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

/// Exact product a * b.
inline SparseExactMatrix multiply(const SparseExactMatrix& a, const SparseExactMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimensions differ");
    std::vector<std::vector<std::pair<std::size_t, Rational>>> b_rows(b.rows());
    b.for_each([&](std::size_t r, std::size_t c, const Rational& v) { b_rows[r].emplace_back(c, v); });
    SparseExactMatrix out(a.rows(), b.cols());
    a.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
        for (const auto& [bc, bv] : b_rows[c])
            out.add(r, bc, v * bv);
    });
    return out;
}

} // namespace confspace

#endif // CONFSPACE_SPARSE_MATRIX_HPP
