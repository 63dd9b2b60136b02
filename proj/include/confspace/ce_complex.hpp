#ifndef CONFSPACE_CE_COMPLEX_HPP
#define CONFSPACE_CE_COMPLEX_HPP

#include "confspace/errors.hpp"
#include "confspace/exact_linalg.hpp"
#include "confspace/generators.hpp"
#include "confspace/monomial.hpp"
#include "confspace/rational.hpp"
#include "confspace/sparse_matrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace confspace {

struct Bidegree {
    int degree = 0;
    int weight = 0;
    auto operator<=>(const Bidegree&) const = default;
};

/// The ideal generated by v_{2m}^2 and w_{4m-1} in the complex of CP^m (generator ids).
struct ReductionIdeal {
    std::size_t v_top;
    std::size_t w_top;

    bool contains(const GeneratorSet& g, const Monomial& x) const
    {
        return x.exponent(g, v_top) >= 2 || x.exponent(g, w_top) >= 1;
    }
};

inline ReductionIdeal reduction_ideal(const GeneratorSet& g)
{
    if (!g.cpm)
        throw UnsupportedMode("reduced complex is only defined for the built-in CP^m rings, not '" + g.ring_id + "'");
    const int m = *g.cpm;
    auto v = g.find_v(2 * m);
    auto w = g.find_w(4 * m - 1);
    if (!v || !w)
        throw ConsistencyError("CP^m generator set lacks v_{2m} or w_{4m-1}");
    return {*v, g.nv() + *w};
}

/// Monomial basis of the weight-graded complex for k points, split into (degree, weight)
/// slices. Each slice is sorted by Monomial order.
struct BigradedBasis {
    int k = 0;
    std::map<Bidegree, std::vector<Monomial>> slices;
    std::optional<ReductionIdeal> quotient_by;

    const std::vector<Monomial>& slice(Bidegree b) const
    {
        static const std::vector<Monomial> empty;
        auto it = slices.find(b);
        return it == slices.end() ? empty : it->second;
    }

    std::optional<std::size_t> index_of(Bidegree b, const Monomial& x) const
    {
        const auto& s = slice(b);
        auto it = std::lower_bound(s.begin(), s.end(), x);
        if (it == s.end() || *it != x)
            return std::nullopt;
        return static_cast<std::size_t>(it - s.begin());
    }

    std::size_t size() const
    {
        std::size_t n = 0;
        for (const auto& [b, s] : slices)
            n += s.size();
        return n;
    }

    int top_degree() const
    {
        int top = std::numeric_limits<int>::min();
        for (const auto& [b, s] : slices)
            if (!s.empty())
                top = std::max(top, b.degree);
        return top;
    }

    /// Alternating sum of slice dimensions.
    long long euler_characteristic() const
    {
        long long chi = 0;
        for (const auto& [b, s] : slices)
            chi += (b.degree % 2 == 0 ? 1 : -1) * static_cast<long long>(s.size());
        return chi;
    }
};

namespace detail {

// Every exponent vector over gens[first, last) with total `len`, odd generators capped at 1.
inline void exponent_vectors(const GeneratorSet& g, std::size_t first, std::size_t last, int len,
                             std::vector<std::uint16_t>& cur, std::vector<std::vector<std::uint16_t>>& out)
{
    const std::size_t pos = cur.size();
    if (first + pos == last) {
        if (len == 0)
            out.push_back(cur);
        return;
    }
    const int cap = g.odd(first + pos) ? std::min(len, 1) : len;
    for (int e = 0; e <= cap; ++e) {
        cur.push_back(static_cast<std::uint16_t>(e));
        exponent_vectors(g, first, last, len - e, cur, out);
        cur.pop_back();
    }
}

// Coefficients of sum_n dim Sym^n(gens) t^n up to t^max_n, saturating at uint64 max.
inline std::vector<std::uint64_t> sym_dimensions(const std::vector<Generator>& gens, int max_n)
{
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> series(static_cast<std::size_t>(max_n) + 1, 0);
    series[0] = 1;
    for (const auto& gen : gens) {
        std::vector<std::uint64_t> next(series.size(), 0);
        for (std::size_t n = 0; n < series.size(); ++n) {
            const std::size_t top = gen.parity == Parity::odd ? std::min<std::size_t>(n, 1) : n;
            for (std::size_t e = 0; e <= top; ++e) {
                const auto add = series[n - e];
                next[n] = next[n] > cap - add ? cap : next[n] + add;
            }
        }
        series = std::move(next);
    }
    return series;
}

} // namespace detail

/// Number of monomials in the complex for k points, computed without enumerating them.
inline std::uint64_t count_monomials(const GeneratorSet& g, int k)
{
    if (k < 0)
        throw InvalidParameter("k must be >= 0");
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    const auto sv = detail::sym_dimensions(g.v_gens, k);
    const auto sw = detail::sym_dimensions(g.w_gens, k / 2);
    std::uint64_t total = 0;
    for (int w = 0; w <= k / 2; ++w) {
        const auto a = sv[static_cast<std::size_t>(k - 2 * w)];
        const auto b = sw[static_cast<std::size_t>(w)];
        const auto prod = (a != 0 && b > cap / a) ? cap : a * b;
        total = total > cap - prod ? cap : total + prod;
    }
    return total;
}

/// All monomials with v_length = k - 2w and weight w, 0 <= w <= floor(k/2).
inline BigradedBasis enumerate_basis(const GeneratorSet& g, int k)
{
    if (k < 0)
        throw InvalidParameter("k must be >= 0, got " + std::to_string(k));
    BigradedBasis basis;
    basis.k = k;
    for (int w = 0; w <= k / 2; ++w) {
        std::vector<std::vector<std::uint16_t>> vs, ws;
        std::vector<std::uint16_t> cur;
        detail::exponent_vectors(g, 0, g.nv(), k - 2 * w, cur, vs);
        cur.clear();
        detail::exponent_vectors(g, g.nv(), g.total(), w, cur, ws);
        for (const auto& ve : vs)
            for (const auto& we : ws) {
                Monomial x = make_monomial(g, ve, we);
                basis.slices[{x.degree, x.weight}].push_back(std::move(x));
            }
    }
    for (auto& [b, s] : basis.slices)
        std::sort(s.begin(), s.end());
    return basis;
}

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Boundary of a monomial by the graded Leibniz rule
///   d(a b) = d(a) b + (-1)^{deg a} a d(b),
/// applied factor by factor to the canonical product. Each term is re-sorted into canonical
/// order with its Koszul sign; like terms are merged and zeros dropped.
inline std::vector<Term> differential_of_monomial(const GeneratorSet& g, const Monomial& x)
{
    std::map<Monomial, Rational> acc;
    const auto fs = factors(g, x);
    int prefix_degree = 0;
    for (std::size_t pos = 0; pos < fs.size(); ++pos) {
        const std::size_t id = fs[pos];
        if (g.is_w(id)) {
            const int leibniz = prefix_degree % 2 == 0 ? 1 : -1;
            for (const auto& t : g.boundary_on_w[id - g.nv()]) {
                std::vector<std::size_t> prod;
                prod.reserve(fs.size() + 1);
                prod.insert(prod.end(), fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(pos));
                prod.push_back(t.left);
                prod.push_back(t.right);
                prod.insert(prod.end(), fs.begin() + static_cast<std::ptrdiff_t>(pos) + 1, fs.end());
                if (auto s = canonicalize(g, std::move(prod))) {
                    auto& c = acc[s->mono];
                    c += leibniz * s->sign * t.coeff;
                }
            }
        }
        prefix_degree += g.degree(id);
    }
    std::vector<Term> out;
    for (auto& [m, c] : acc)
        if (c != 0)
            out.push_back({m, c});
    return out;
}

/// Matrix of d: slice(source) -> slice(target); rows index the target basis, columns the source.
struct DifferentialBlock {
    Bidegree source;
    Bidegree target;
    SparseExactMatrix matrix;
};

/// One block per nonempty slice of positive weight. For a reduced basis, terms lying in the
/// ideal are dropped (the induced differential on the quotient).
inline std::vector<DifferentialBlock> assemble_blocks(const GeneratorSet& g, const BigradedBasis& basis)
{
    std::vector<DifferentialBlock> blocks;
    for (const auto& [src, mons] : basis.slices) {
        if (src.weight == 0 || mons.empty())
            continue;
        const Bidegree tgt{src.degree + 1, src.weight - 1};
        const auto& tgt_mons = basis.slice(tgt);
        DifferentialBlock block{src, tgt, SparseExactMatrix(tgt_mons.size(), mons.size())};
        for (std::size_t col = 0; col < mons.size(); ++col)
            for (const auto& t : differential_of_monomial(g, mons[col])) {
                if (basis.quotient_by && basis.quotient_by->contains(g, t.mono))
                    continue;
                auto row = basis.index_of(tgt, t.mono);
                if (!row)
                    throw ConsistencyError("boundary term " + to_string(g, t.mono) + " of " + to_string(g, mons[col]) +
                                           " lies outside slice (" + std::to_string(tgt.degree) + ", " +
                                           std::to_string(tgt.weight) + ")");
                block.matrix.add(*row, col, t.coeff);
            }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

/// Basis of the quotient by the ideal (v_{2m}^2, w_{4m-1}): monomials divisible by neither.
inline BigradedBasis reduce_complex(const GeneratorSet& g, const BigradedBasis& basis)
{
    const auto ideal = reduction_ideal(g);
    BigradedBasis out;
    out.k = basis.k;
    out.quotient_by = ideal;
    for (const auto& [b, mons] : basis.slices) {
        std::vector<Monomial> kept;
        for (const auto& x : mons)
            if (!ideal.contains(g, x))
                kept.push_back(x);
        if (!kept.empty())
            out.slices.emplace(b, std::move(kept));
    }
    return out;
}

struct HomotopyResult {
    bool ok = true;
    std::size_t checked = 0;
    std::optional<Monomial> witness;
    std::string detail;
};

/// The contracting homotopy on the ideal I = (v_{2m}^2, w_{4m-1}):
///   h(v_{2m}^2 A) = w_{4m-1} A  when the monomial has no w_{4m-1},  h(B w_{4m-1}) = 0.
inline std::vector<Term> ideal_homotopy(const GeneratorSet& g, const ReductionIdeal& ideal, const Monomial& x)
{
    if (x.exponent(g, ideal.w_top) > 0 || x.exponent(g, ideal.v_top) < 2)
        return {};
    auto fs = factors(g, x);
    auto it = std::find(fs.begin(), fs.end(), ideal.v_top);
    fs.erase(it, it + 2);
    fs.insert(fs.begin(), ideal.w_top);
    auto s = canonicalize(g, std::move(fs));
    if (!s)
        return {};
    return {Term{s->mono, Rational(s->sign)}};
}

/// Checks (d h + h d)(x) = x for every monomial x of the ideal in the k-point complex of CP^m.
inline HomotopyResult homotopy_check(const GeneratorSet& g, int k)
{
    const auto ideal = reduction_ideal(g);
    HomotopyResult result;
    if (k < 2)
        return result;
    const auto basis = enumerate_basis(g, k);
    for (const auto& [b, mons] : basis.slices)
        for (const auto& x : mons) {
            if (!ideal.contains(g, x))
                continue;
            ++result.checked;
            std::map<Monomial, Rational> acc;
            for (const auto& t : ideal_homotopy(g, ideal, x))
                for (const auto& u : differential_of_monomial(g, t.mono))
                    acc[u.mono] += t.coeff * u.coeff;
            for (const auto& t : differential_of_monomial(g, x)) {
                if (!ideal.contains(g, t.mono))
                    throw ConsistencyError("ideal is not closed under d at " + to_string(g, x));
                for (const auto& u : ideal_homotopy(g, ideal, t.mono))
                    acc[u.mono] += t.coeff * u.coeff;
            }
            acc[x] -= 1;
            for (const auto& [m, c] : acc)
                if (c != 0) {
                    result.ok = false;
                    result.witness = x;
                    result.detail = "(dh + hd)(" + to_string(g, x) + ") differs from the identity at " +
                                    to_string(g, m) + " by " + to_string(c);
                    return result;
                }
        }
    return result;
}

enum class ComplexMode { full, reduced };

inline std::string to_string(ComplexMode mode)
{
    return mode == ComplexMode::full ? "full" : "reduced";
}

/// Basis plus differential blocks for one (ring, k, mode).
class ChainComplex {
public:
    ChainComplex(std::shared_ptr<const GeneratorSet> gens, int k, ComplexMode mode)
        : gens_(std::move(gens)), mode_(mode)
    {
        basis_ = enumerate_basis(*gens_, k);
        if (mode == ComplexMode::reduced)
            basis_ = reduce_complex(*gens_, basis_);
        for (auto& b : assemble_blocks(*gens_, basis_)) {
            const Bidegree src = b.source;
            blocks_.emplace(src, std::move(b));
        }
    }

    const GeneratorSet& generators() const { return *gens_; }
    const BigradedBasis& basis() const { return basis_; }
    ComplexMode mode() const { return mode_; }
    int k() const { return basis_.k; }
    const std::map<Bidegree, DifferentialBlock>& blocks() const { return blocks_; }

    const DifferentialBlock* block_from(Bidegree src) const
    {
        auto it = blocks_.find(src);
        return it == blocks_.end() ? nullptr : &it->second;
    }

    /// First source bidegree where two consecutive blocks compose to a nonzero matrix.
    std::optional<Bidegree> d_squared_failure() const
    {
        for (const auto& [src, first] : blocks_) {
            const auto* second = block_from(first.target);
            if (second && !multiply(second->matrix, first.matrix).is_zero())
                return src;
        }
        return std::nullopt;
    }

private:
    std::shared_ptr<const GeneratorSet> gens_;
    ComplexMode mode_;
    BigradedBasis basis_;
    std::map<Bidegree, DifferentialBlock> blocks_;
};

/// Thread-safe memo of chain complexes keyed by (ring id, k, mode). Ring ids must be
/// unique among the rings passed to one cache.
class ComplexCache {
public:
    std::shared_ptr<const ChainComplex> get(const std::shared_ptr<const GeneratorSet>& gens, int k, ComplexMode mode)
    {
        const Key key{gens->ring_id, k, mode};
        {
            std::lock_guard lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end())
                return it->second;
        }
        auto built = std::make_shared<const ChainComplex>(gens, k, mode);
        std::lock_guard lock(mutex_);
        return entries_.try_emplace(key, std::move(built)).first->second;
    }

private:
    using Key = std::tuple<std::string, int, ComplexMode>;
    std::mutex mutex_;
    std::map<Key, std::shared_ptr<const ChainComplex>> entries_;
};

inline nlohmann::ordered_json complex_to_json(const ChainComplex& cx)
{
    const auto& g = cx.generators();
    nlohmann::ordered_json doc;
    doc["ring"] = g.ring_id;
    doc["k"] = cx.k();
    doc["mode"] = to_string(cx.mode());
    doc["slices"] = nlohmann::ordered_json::array();
    for (const auto& [b, mons] : cx.basis().slices) {
        nlohmann::ordered_json names = nlohmann::ordered_json::array();
        for (const auto& x : mons)
            names.push_back(to_string(g, x));
        doc["slices"].push_back({{"degree", b.degree}, {"weight", b.weight}, {"monomials", names}});
    }
    doc["blocks"] = nlohmann::ordered_json::array();
    for (const auto& [src, blk] : cx.blocks()) {
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        blk.matrix.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
            entries.push_back({r, c, to_string(v)});
        });
        doc["blocks"].push_back({{"source", {src.degree, src.weight}},
                                 {"target", {blk.target.degree, blk.target.weight}},
                                 {"rows", blk.matrix.rows()},
                                 {"cols", blk.matrix.cols()},
                                 {"entries", entries}});
    }
    return doc;
}

} // namespace confspace

#endif // CONFSPACE_CE_COMPLEX_HPP
