#ifndef CONFSPACE_GRADED_RING_HPP
#define CONFSPACE_GRADED_RING_HPP

#include "confspace/errors.hpp"
#include "confspace/exact_linalg.hpp"
#include "confspace/rational.hpp"
#include "confspace/sparse_matrix.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace confspace {

struct ProductTerm {
    std::size_t basis;
    Rational coeff;
};

/// Finite-dimensional graded-commutative ring H^*(M; Q) of a closed oriented
/// manifold of even dimension, given on a homogeneous basis.
///
/// structure_constants[{i, j}] lists e_i * e_j = sum c_ij^l e_l. Missing pairs are zero.
struct RingPresentation {
    std::string id;
    std::vector<std::string> basis_names;
    std::vector<int> degrees;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<ProductTerm>> structure_constants;
    int manifold_dimension = 0;
    std::size_t unit_index = 0;
    std::size_t top_index = 0;
    /// Set only by make_cpm; reduced-mode computations require it.
    std::optional<int> cpm;

    std::size_t size() const { return basis_names.size(); }

    /// Dense coefficient vector of e_i * e_j (duplicate terms are summed).
    std::vector<Rational> product(std::size_t i, std::size_t j) const
    {
        std::vector<Rational> out(size(), Rational(0));
        auto it = structure_constants.find({i, j});
        if (it != structure_constants.end())
            for (const auto& t : it->second)
                if (t.basis < out.size())
                    out[t.basis] += t.coeff;
        return out;
    }

    /// Bilinear extension of the product to dense vectors.
    std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const
    {
        std::vector<Rational> out(size(), Rational(0));
        for (std::size_t i = 0; i < size(); ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < size(); ++j) {
                if (b[j] == 0)
                    continue;
                auto p = product(i, j);
                for (std::size_t l = 0; l < size(); ++l)
                    if (p[l] != 0)
                        out[l] += a[i] * b[j] * p[l];
            }
        }
        return out;
    }

    /// P_ij = coefficient of the top class in e_i * e_j.
    SparseExactMatrix pairing_matrix() const
    {
        SparseExactMatrix p(size(), size());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) {
                auto prod = product(i, j);
                if (top_index < prod.size())
                    p.set(i, j, prod[top_index]);
            }
        return p;
    }
};

struct RingViolation {
    std::string rule;
    std::vector<std::size_t> indices;
    std::string message;
};

struct RingDiagnostics {
    std::vector<RingViolation> violations;

    bool valid() const { return violations.empty(); }
    bool has(const std::string& rule) const
    {
        for (const auto& v : violations)
            if (v.rule == rule)
                return true;
        return false;
    }
};

/// H^*(CP^m; Q) = Q[x]/(x^{m+1}), deg x = 2, basis 1, x, ..., x^m with x^m the top class.
inline RingPresentation make_cpm(int m)
{
    if (m < 1)
        throw InvalidParameter("make_cpm: m must be >= 1, got " + std::to_string(m));
    RingPresentation r;
    r.id = "CP^" + std::to_string(m);
    r.manifold_dimension = 2 * m;
    r.cpm = m;
    for (int a = 0; a <= m; ++a) {
        r.basis_names.push_back(a == 0 ? "1" : a == 1 ? "x" : "x^" + std::to_string(a));
        r.degrees.push_back(2 * a);
    }
    for (int a = 0; a <= m; ++a)
        for (int b = 0; a + b <= m; ++b)
            r.structure_constants[{static_cast<std::size_t>(a), static_cast<std::size_t>(b)}] = {
                ProductTerm{static_cast<std::size_t>(a + b), Rational(1)}};
    r.unit_index = 0;
    r.top_index = static_cast<std::size_t>(m);
    return r;
}

/// Checks every structural invariant of a ring presentation and reports all failures.
inline RingDiagnostics validate_ring(const RingPresentation& r)
{
    RingDiagnostics diag;
    auto fail = [&](std::string rule, std::vector<std::size_t> idx, std::string msg) {
        diag.violations.push_back({std::move(rule), std::move(idx), std::move(msg)});
    };
    auto name = [&](std::size_t i) { return i < r.basis_names.size() ? r.basis_names[i] : "#" + std::to_string(i); };
    auto prod_name = [&](std::size_t i, std::size_t j) { return name(i) + "*" + name(j); };

    const std::size_t n = r.size();
    const int d = r.manifold_dimension;
    if (d <= 0 || d % 2 != 0)
        fail("dimension", {}, "manifold dimension must be even and positive, got " + std::to_string(d));
    if (n == 0 || r.degrees.size() != n) {
        fail("basis-shape", {}, "basis names and degrees must be nonempty and of equal length");
        return diag;
    }
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < n; ++i)
            if (!seen.insert(r.basis_names[i]).second)
                fail("names-unique", {i}, "duplicate basis name '" + r.basis_names[i] + "'");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (r.degrees[i] < 0 || r.degrees[i] > d)
            fail("degree-range", {i}, "degree of " + name(i) + " outside [0, " + std::to_string(d) + "]");

    bool indices_ok = true;
    if (r.unit_index >= n || r.top_index >= n) {
        fail("index-range", {}, "unit or top index out of range");
        indices_ok = false;
    }
    for (const auto& [ij, terms] : r.structure_constants) {
        bool bad = ij.first >= n || ij.second >= n;
        for (const auto& t : terms)
            bad = bad || t.basis >= n;
        if (bad) {
            fail("index-range", {ij.first, ij.second}, "structure constant refers to an index out of range");
            indices_ok = false;
        }
    }
    if (!indices_ok)
        return diag;

    std::vector<std::size_t> deg0, degd;
    for (std::size_t i = 0; i < n; ++i) {
        if (r.degrees[i] == 0)
            deg0.push_back(i);
        if (r.degrees[i] == d)
            degd.push_back(i);
    }
    if (deg0.size() != 1)
        fail("connected", deg0, "expected exactly one basis element of degree 0, found " + std::to_string(deg0.size()));
    else if (deg0.front() != r.unit_index)
        fail("connected", {r.unit_index}, "unit index does not point at the degree-0 element");
    if (degd.size() != 1)
        fail("orientation", degd, "expected exactly one basis element of degree " + std::to_string(d) + ", found " +
                                      std::to_string(degd.size()));
    else if (degd.front() != r.top_index)
        fail("orientation", {r.top_index}, "top index does not point at the degree-d element");

    // Unit.
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> ej(n, Rational(0));
        ej[j] = 1;
        if (r.product(r.unit_index, j) != ej || r.product(j, r.unit_index) != ej)
            fail("unit", {r.unit_index, j}, "unit does not act as identity on " + name(j));
    }

    // Grading and graded commutativity.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto p = r.product(i, j);
            for (std::size_t l = 0; l < n; ++l)
                if (p[l] != 0 && r.degrees[l] != r.degrees[i] + r.degrees[j])
                    fail("grading", {i, j, l},
                         "product " + prod_name(i, j) + " has a term " + name(l) + " of degree " +
                             std::to_string(r.degrees[l]) + ", expected " + std::to_string(r.degrees[i] + r.degrees[j]));
            if (j < i)
                continue;
            auto q = r.product(j, i);
            const bool odd = (r.degrees[i] * r.degrees[j]) % 2 != 0;
            for (auto& c : q)
                if (odd)
                    c = -c;
            if (p != q)
                fail("graded-commutativity", {i, j},
                     "products " + prod_name(i, j) + " and " + prod_name(j, i) + " violate graded commutativity");
        }

    // Associativity on basis triples.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
                std::vector<Rational> ei(n, Rational(0)), el(n, Rational(0));
                ei[i] = 1;
                el[l] = 1;
                if (r.multiply(r.product(i, j), el) != r.multiply(ei, r.product(j, l)))
                    fail("associativity", {i, j, l},
                         "(" + prod_name(i, j) + ")*" + name(l) + " != " + name(i) + "*(" + prod_name(j, l) + ")");
            }

    const std::size_t pairing_rank = rank(r.pairing_matrix());
    if (pairing_rank != n)
        fail("pairing-nondegenerate", {}, "Poincare pairing matrix is degenerate (rank " +
                                              std::to_string(pairing_rank) + " < " + std::to_string(n) + ")");
    return diag;
}

inline void require_valid(const RingPresentation& r)
{
    auto diag = validate_ring(r);
    if (!diag.valid())
        throw RingValidationError("ring '" + r.id + "' is invalid: " + diag.violations.front().rule + ": " +
                                  diag.violations.front().message);
}

struct CoproductTerm {
    std::size_t left;
    std::size_t right;
    Rational coeff;
};

/// Diagonal comultiplication on H_*(M; Q), dual to the cup product.
///
/// Homology is given the basis dual to the cohomology basis under the Kronecker pairing
/// (so the top class pairs to 1 with [M]). In that basis <Delta(h_c), e_a (x) e_b> =
/// <h_c, e_a e_b> = c_ab^c, and Delta(h_c) is a sum over ordered pairs (a, b).
/// Entry c of the result lists the nonzero terms of Delta(h_c) ordered by (a, b).
inline std::vector<std::vector<CoproductTerm>> diagonal_comultiplication(const RingPresentation& r)
{
    require_valid(r);
    std::vector<std::vector<CoproductTerm>> delta(r.size());
    for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = 0; b < r.size(); ++b) {
            auto p = r.product(a, b);
            for (std::size_t c = 0; c < r.size(); ++c)
                if (p[c] != 0)
                    delta[c].push_back({a, b, p[c]});
        }
    return delta;
}

} // namespace confspace

#endif // CONFSPACE_GRADED_RING_HPP
