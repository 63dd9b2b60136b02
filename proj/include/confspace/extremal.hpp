#ifndef CONFSPACE_EXTREMAL_HPP
#define CONFSPACE_EXTREMAL_HPP

#include "confspace/ce_complex.hpp"
#include "confspace/errors.hpp"
#include "confspace/exact_linalg.hpp"
#include "confspace/graded_ring.hpp"
#include "confspace/homology.hpp"
#include "confspace/monomial.hpp"
#include "confspace/parallel.hpp"
#include "confspace/quasi_polynomial.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace confspace {

/// k -> dim H^{k(d-2)+i}(C_k(M)) sampled on a contiguous range of k.
struct HilbertRay {
    std::string ring;
    int dimension = 0;
    int offset = 0;
    ComplexMode mode = ComplexMode::full;
    std::vector<Sample> samples;
};

inline int extremal_degree(int dimension, int k, int offset)
{
    return k * (dimension - 2) + offset;
}

inline HilbertRay hilbert_ray(const RingPresentation& ring, int offset, int k_min, int k_max, ComplexMode mode,
                              unsigned jobs = 1, ComplexCache* cache = nullptr)
{
    if (offset < 0)
        throw InvalidParameter("ray offset i must be >= 0");
    if (k_min < 0 || k_max < k_min)
        throw InvalidParameter("k-range must be nonempty with k_min >= 0");
    if (mode == ComplexMode::reduced && k_min < 2)
        throw UnsupportedMode("reduced mode requires k_min >= 2");
    HilbertRay ray{ring.id, ring.manifold_dimension, offset, mode, {}};
    const auto n = static_cast<std::size_t>(k_max - k_min + 1);
    auto dims = parallel_map(n, jobs, [&](std::size_t idx) {
        const int k = k_min + static_cast<int>(idx);
        return betti(ring, k, mode, cache).at(extremal_degree(ring.manifold_dimension, k, offset));
    });
    for (std::size_t idx = 0; idx < n; ++idx)
        ray.samples.push_back({k_min + static_cast<long long>(idx), dims[idx]});
    return ray;
}

/// Ranks of the three reduced-complex maps that govern offsets 1..3 near the top degree
/// of C_k(CP^m), with base = k(2m-2):
///   (base+2, 2) -> (base+3, 1), (base+1, 1) -> (base+2, 0), (base, 2) -> (base+1, 1).
struct StructuralFacts {
    int m = 0;
    int k = 0;
    std::size_t top_slice_dim = 0;      // dim of slice (base+3, 1)
    std::size_t top_incoming_rank = 0;  // rank (base+2, 2) -> (base+3, 1)
    std::size_t mid_rank = 0;           // rank (base+1, 1) -> (base+2, 0)
    std::size_t mid_kernel = 0;
    std::size_t low_rank = 0;           // rank (base, 2) -> (base+1, 1)

    bool top_exact() const { return top_slice_dim == 1 && top_incoming_rank == 1; }
    bool mid_holds() const { return mid_rank == 1 && mid_kernel == 2; }
    bool low_holds() const { return low_rank == 2; }
};

inline StructuralFacts structural_facts(int m, int k, ComplexCache* cache = nullptr)
{
    if (m < 2)
        throw InvalidParameter("structural facts need m >= 2");
    if (k < 2)
        throw InvalidParameter("structural facts need k >= 2");
    auto gens = std::make_shared<const GeneratorSet>(build_generators(make_cpm(m)));
    ComplexCache local;
    const auto cx = (cache ? *cache : local).get(gens, k, ComplexMode::reduced);
    const int base = k * (2 * m - 2);

    auto block_rank = [&](Bidegree src) -> std::size_t {
        const auto* b = cx->block_from(src);
        return b ? rank(b->matrix) : 0;
    };
    StructuralFacts f;
    f.m = m;
    f.k = k;
    f.top_slice_dim = cx->basis().slice({base + 3, 1}).size();
    f.top_incoming_rank = block_rank({base + 2, 2});
    f.mid_rank = block_rank({base + 1, 1});
    f.mid_kernel = cx->basis().slice({base + 1, 1}).size() - f.mid_rank;
    f.low_rank = block_rank({base, 2});
    return f;
}

struct Claim {
    std::string id;
    std::string statement;
    std::string range;
    std::string status; // pass | fail | sharper | info | skipped
    std::optional<long long> onset;
    std::string detail;
};

struct RayReport {
    int offset = 0;
    std::vector<Sample> samples;
    std::optional<QuasiPolynomial> certificate;
    std::string note;
};

struct VerifyReport {
    int m = 0;
    int k_max = 0;
    std::vector<Claim> claims;
    std::vector<RayReport> rays;

    bool passed() const
    {
        for (const auto& c : claims)
            if (c.status == "fail")
                return false;
        return true;
    }
};

namespace detail {

// Smallest k0 such that pred(k) holds for every sampled k >= k0; nullopt if pred(k_max) fails.
template <typename Pred>
std::optional<long long> vanishing_onset(int k_lo, int k_hi, Pred pred)
{
    std::optional<long long> onset;
    for (int k = k_hi; k >= k_lo && pred(k); --k)
        onset = k;
    return onset;
}

inline std::string status_for(bool ok, std::optional<long long> onset, int bound)
{
    if (!ok)
        return "fail";
    return onset && *onset < bound ? "sharper" : "pass";
}

} // namespace detail

/// Recomputes the extremal vanishing statements for C_k(CP^m), k = 2..k_max:
///  - reduced and full complexes have the same cohomology (k >= 2);
///  - the reduced complex tops out at degree k(2m-2)+3 (k >= 4);
///  - dim H^{k(2m-2)+i} = 0 for i >= 4, k >= 4;
///  - for m >= 2, dim H^{k(2m-2)+i} = 0 for i = 1, 2, 3, k >= 8, plus the three rank facts at k_max.
/// Offset rays 0..5 are reported with their quasi-polynomial certificates.
inline VerifyReport verify_extremal_ranges(int m, int k_max, unsigned jobs = 1, int p_max = 6, int deg_max = 4)
{
    if (m < 1)
        throw InvalidParameter("m must be >= 1");
    if (k_max < 8)
        throw InvalidParameter("k_max must be >= 8");

    const auto ring = make_cpm(m);
    auto gens = std::make_shared<const GeneratorSet>(build_generators(ring));
    ComplexCache cache;
    const int k_lo = 2;
    const auto n = static_cast<std::size_t>(k_max - k_lo + 1);

    struct PerK {
        ConsistencyReport consistency;
        int full_top = 0;
        int reduced_top = 0;
        bool top_monomial_ok = false;
    };
    auto per_k = parallel_map(n, jobs, [&](std::size_t idx) {
        const int k = k_lo + static_cast<int>(idx);
        PerK r;
        r.consistency = consistency_report(ring, k, &cache);
        r.full_top = cache.get(gens, k, ComplexMode::full)->basis().top_degree();
        const auto& rb = cache.get(gens, k, ComplexMode::reduced)->basis();
        r.reduced_top = rb.top_degree();
        if (k >= 3) {
            const auto top = parse_monomial(*gens, "v_" + std::to_string(2 * m - 2) + "^" + std::to_string(k - 3) +
                                                       " v_" + std::to_string(2 * m) + " w_" + std::to_string(4 * m - 3));
            const auto& s = rb.slice({r.reduced_top, 1});
            r.top_monomial_ok = rb.slice({r.reduced_top, 0}).empty() && s.size() == 1 && s.front() == top;
            for (const auto& [b, mons] : rb.slices)
                if (b.degree == r.reduced_top && b.weight > 1)
                    r.top_monomial_ok = false;
        }
        return r;
    });
    auto at = [&](int k) -> const PerK& { return per_k[static_cast<std::size_t>(k - k_lo)]; };
    auto dim = [&](int k, int i) { return at(k).consistency.full.at(extremal_degree(2 * m, k, i)); };
    const std::string range_all = "k = " + std::to_string(k_lo) + ".." + std::to_string(k_max);

    VerifyReport rep;
    rep.m = m;
    rep.k_max = k_max;

    {
        Claim c{"reduced-matches-full",
                "the quotient by (v_{2m}^2, w_{4m-1}) has the same cohomology as the full complex", range_all, "pass",
                std::nullopt, ""};
        for (int k = k_lo; k <= k_max; ++k)
            if (!at(k).consistency.ok) {
                c.status = "fail";
                c.detail = "k = " + std::to_string(k) + ": " + at(k).consistency.message;
                break;
            }
        rep.claims.push_back(c);
    }
    {
        Claim c{"reduced-top-degree",
                "the reduced complex has top degree k(2m-2)+3, spanned by v_{2m-2}^{k-3} v_{2m} w_{4m-3}",
                "k = 4.." + std::to_string(k_max), "pass", std::nullopt, ""};
        for (int k = 4; k <= k_max; ++k)
            if (at(k).reduced_top != extremal_degree(2 * m, k, 3) || !at(k).top_monomial_ok) {
                c.status = "fail";
                c.detail = "k = " + std::to_string(k) + ": top degree " + std::to_string(at(k).reduced_top);
                break;
            }
        rep.claims.push_back(c);
    }
    {
        auto vanishes = [&](int k) {
            for (int i = 4; extremal_degree(2 * m, k, i) <= at(k).full_top; ++i)
                if (dim(k, i) != 0)
                    return false;
            return true;
        };
        bool ok = true;
        std::string detail;
        for (int k = 4; k <= k_max && ok; ++k)
            if (!vanishes(k)) {
                ok = false;
                detail = "nonzero cohomology above offset 3 at k = " + std::to_string(k);
            }
        const auto onset = detail::vanishing_onset(k_lo, k_max, vanishes);
        rep.claims.push_back({"vanish-offset-ge-4", "dim H^{k(2m-2)+i} = 0 for every i >= 4",
                              "k = 4.." + std::to_string(k_max), detail::status_for(ok, onset, 4), onset, detail});
    }

    for (int i = 1; i <= 3; ++i) {
        const std::string id = "vanish-offset-" + std::to_string(i);
        const std::string stmt = "dim H^{k(2m-2)+" + std::to_string(i) + "} = 0";
        if (m < 2) {
            rep.claims.push_back({id, stmt, "k = 8.." + std::to_string(k_max), "skipped", std::nullopt,
                                  "stated for m >= 2 only"});
            continue;
        }
        bool ok = true;
        std::string detail;
        for (int k = 8; k <= k_max && ok; ++k)
            if (dim(k, i) != 0) {
                ok = false;
                detail = "k = " + std::to_string(k) + ": dim = " + std::to_string(dim(k, i));
            }
        const auto onset = detail::vanishing_onset(k_lo, k_max, [&](int k) { return dim(k, i) == 0; });
        rep.claims.push_back({id, stmt, "k = 8.." + std::to_string(k_max), detail::status_for(ok, onset, 8), onset,
                              detail});
    }

    if (m >= 2) {
        const auto f = structural_facts(m, k_max, &cache);
        const std::string at_k = "k = " + std::to_string(k_max);
        auto blk = [&](int off, int w) {
            return "(" + std::to_string(extremal_degree(2 * m, k_max, off)) + ", " + std::to_string(w) + ")";
        };
        rep.claims.push_back({"exact-top-pair",
                              "slice (k(2m-2)+3, 1) is one-dimensional and hit by (k(2m-2)+2, 2)", at_k,
                              f.top_exact() ? "pass" : "fail", std::nullopt,
                              "block " + blk(2, 2) + " -> " + blk(3, 1) + ": dim target " +
                                  std::to_string(f.top_slice_dim) + ", rank " + std::to_string(f.top_incoming_rank)});
        rep.claims.push_back({"offset-1-map", "d: (k(2m-2)+1, 1) -> (k(2m-2)+2, 0) has rank 1 and kernel 2", at_k,
                              f.mid_holds() ? "pass" : "fail", std::nullopt,
                              "block " + blk(1, 1) + " -> " + blk(2, 0) + ": rank " + std::to_string(f.mid_rank) +
                                  ", kernel " + std::to_string(f.mid_kernel)});
        rep.claims.push_back({"offset-0-map", "d: (k(2m-2), 2) -> (k(2m-2)+1, 1) has rank 2", at_k,
                              f.low_holds() ? "pass" : "fail", std::nullopt,
                              "block " + blk(0, 2) + " -> " + blk(1, 1) + ": rank " + std::to_string(f.low_rank)});
    }

    for (int i = 0; i <= 5; ++i) {
        RayReport ray;
        ray.offset = i;
        for (int k = k_lo; k <= k_max; ++k)
            ray.samples.push_back({k, dim(k, i)});
        try {
            ray.certificate = detect_quasi_polynomial(ray.samples, p_max, deg_max);
        } catch (const UnderDeterminedError& e) {
            ray.note = e.what();
        }
        if (i == 0)
            ray.note = "reported without a claim";
        rep.rays.push_back(std::move(ray));
    }
    return rep;
}

inline nlohmann::ordered_json verify_report_to_json(const VerifyReport& rep)
{
    nlohmann::ordered_json doc;
    doc["ring"] = "CP^" + std::to_string(rep.m);
    doc["m"] = rep.m;
    doc["k_max"] = rep.k_max;
    doc["claims"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.claims) {
        nlohmann::ordered_json j;
        j["id"] = c.id;
        j["statement"] = c.statement;
        j["range"] = c.range;
        j["status"] = c.status;
        j["observed_onset"] = c.onset ? nlohmann::ordered_json(*c.onset) : nlohmann::ordered_json(nullptr);
        j["detail"] = c.detail;
        doc["claims"].push_back(j);
    }
    doc["rays"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.rays) {
        nlohmann::ordered_json j;
        j["offset"] = r.offset;
        j["samples"] = nlohmann::ordered_json::array();
        for (const auto& s : r.samples)
            j["samples"].push_back({s.k, s.value});
        j["quasi_polynomial"] = r.certificate ? quasi_polynomial_to_json(*r.certificate) : nlohmann::ordered_json(nullptr);
        if (!r.note.empty())
            j["note"] = r.note;
        doc["rays"].push_back(j);
    }
    std::size_t pass = 0, fail = 0, sharper = 0;
    for (const auto& c : rep.claims) {
        pass += c.status == "pass";
        fail += c.status == "fail";
        sharper += c.status == "sharper";
    }
    doc["summary"] = {{"pass", pass}, {"sharper", sharper}, {"fail", fail}, {"ok", rep.passed()}};
    return doc;
}

inline std::string verify_report_to_text(const VerifyReport& rep)
{
    std::ostringstream out;
    out << "Extremal checks for C_k(CP^" << rep.m << "), k <= " << rep.k_max << "\n";
    for (const auto& c : rep.claims) {
        out << "  [" << c.status << "] " << c.id << ": " << c.statement << " (" << c.range << ")";
        if (c.onset)
            out << "; observed onset k = " << *c.onset;
        if (!c.detail.empty())
            out << "; " << c.detail;
        out << '\n';
    }
    for (const auto& r : rep.rays) {
        out << "  ray i = " << r.offset << ":";
        for (const auto& s : r.samples)
            out << ' ' << s.value;
        if (r.certificate) {
            out << "  -> period " << r.certificate->period << ", onset " << r.certificate->onset << ", f = ";
            for (std::size_t c = 0; c < r.certificate->coefficients.size(); ++c)
                out << (c ? " | " : "") << polynomial_to_string(r.certificate->coefficients[c]);
        } else {
            out << "  -> no quasi-polynomial within bounds";
        }
        if (!r.note.empty())
            out << " (" << r.note << ")";
        out << '\n';
    }
    out << (rep.passed() ? "all claims hold\n" : "some claims FAILED\n");
    return out.str();
}

} // namespace confspace

#endif // CONFSPACE_EXTREMAL_HPP
