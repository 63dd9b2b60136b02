#ifndef CONFSPACE_HOMOLOGY_HPP
#define CONFSPACE_HOMOLOGY_HPP

#include "confspace/ce_complex.hpp"
#include "confspace/errors.hpp"
#include "confspace/exact_linalg.hpp"
#include "confspace/generators.hpp"
#include "confspace/graded_ring.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace confspace {

enum class Indexing { cohomological, homological };

/// dim H^i(C_k(M); Q) for every degree 0..top of the complex.
struct BettiTable {
    int k = 0;
    std::string ring;
    ComplexMode mode = ComplexMode::full;
    Indexing indexing = Indexing::cohomological;
    std::map<int, std::int64_t> dims;
    std::int64_t euler = 0;

    std::int64_t at(int degree) const
    {
        auto it = dims.find(degree);
        return it == dims.end() ? 0 : it->second;
    }

    /// Degreewise equality; degrees missing from one table count as 0.
    bool same_dims(const BettiTable& other) const
    {
        for (const auto& [i, h] : dims)
            if (other.at(i) != h)
                return false;
        for (const auto& [i, h] : other.dims)
            if (at(i) != h)
                return false;
        return true;
    }
};

/// Cohomology of an assembled complex, computed per (degree, weight) slice and summed:
/// dim H^{i,w} = dim slice - rank(d out of (i, w)) - rank(d into (i, w)).
/// Re-verifies d^2 = 0 first.
inline BettiTable betti_of(const ChainComplex& cx)
{
    if (auto bad = cx.d_squared_failure())
        throw ConsistencyError("d^2 != 0 on the block out of (" + std::to_string(bad->degree) + ", " +
                               std::to_string(bad->weight) + ")");
    std::map<Bidegree, std::int64_t> out_rank;
    for (const auto& [src, blk] : cx.blocks())
        out_rank[src] = static_cast<std::int64_t>(rank(blk.matrix));

    BettiTable table;
    table.k = cx.k();
    table.ring = cx.generators().ring_id;
    table.mode = cx.mode();
    const auto& basis = cx.basis();
    for (int i = 0; i <= basis.top_degree(); ++i)
        table.dims[i] = 0;
    for (const auto& [b, mons] : basis.slices) {
        std::int64_t h = static_cast<std::int64_t>(mons.size());
        if (auto it = out_rank.find(b); it != out_rank.end())
            h -= it->second;
        if (auto it = out_rank.find({b.degree - 1, b.weight + 1}); it != out_rank.end())
            h -= it->second;
        table.dims[b.degree] += h;
    }
    for (const auto& [i, h] : table.dims)
        table.euler += (i % 2 == 0 ? h : -h);
    return table;
}

/// Betti table of C_k(M) in full or reduced mode. Reduced mode needs a built-in CP^m and k >= 2.
inline BettiTable betti(const RingPresentation& ring, int k, ComplexMode mode, ComplexCache* cache = nullptr)
{
    if (k < 0)
        throw InvalidParameter("k must be >= 0, got " + std::to_string(k));
    if (mode == ComplexMode::reduced) {
        if (!ring.cpm)
            throw UnsupportedMode("reduced mode is only available for the built-in CP^m rings, not '" + ring.id + "'");
        if (k < 2)
            throw UnsupportedMode("reduced mode requires k >= 2");
    }
    auto gens = std::make_shared<const GeneratorSet>(build_generators(ring));
    if (cache)
        return betti_of(*cache->get(gens, k, mode));
    return betti_of(ChainComplex(gens, k, mode));
}

struct ConsistencyReport {
    bool ok = true;
    BettiTable full;
    BettiTable reduced;
    long long full_chain_euler = 0;
    long long reduced_chain_euler = 0;
    std::optional<int> first_discrepancy;
    std::string message;
};

/// Compares the full and reduced Betti tables of C_k(CP^m) degree by degree and checks
/// both Euler characteristics against the chain-level alternating sums.
inline ConsistencyReport consistency_report(const RingPresentation& ring, int k, ComplexCache* cache = nullptr)
{
    auto gens = std::make_shared<const GeneratorSet>(build_generators(ring));
    if (!ring.cpm || k < 2)
        throw UnsupportedMode("consistency report needs a built-in CP^m ring and k >= 2");
    ComplexCache local;
    ComplexCache& c = cache ? *cache : local;
    const auto full = c.get(gens, k, ComplexMode::full);
    const auto reduced = c.get(gens, k, ComplexMode::reduced);

    ConsistencyReport rep;
    rep.full = betti_of(*full);
    rep.reduced = betti_of(*reduced);
    rep.full_chain_euler = full->basis().euler_characteristic();
    rep.reduced_chain_euler = reduced->basis().euler_characteristic();

    const int top = std::max(rep.full.dims.rbegin()->first, rep.reduced.dims.rbegin()->first);
    for (int i = 0; i <= top; ++i)
        if (rep.full.at(i) != rep.reduced.at(i)) {
            rep.ok = false;
            rep.first_discrepancy = i;
            rep.message = "degree " + std::to_string(i) + ": full " + std::to_string(rep.full.at(i)) + " vs reduced " +
                          std::to_string(rep.reduced.at(i));
            return rep;
        }
    if (rep.full_chain_euler != rep.full.euler || rep.reduced_chain_euler != rep.reduced.euler) {
        rep.ok = false;
        rep.message = "Euler characteristic of the chains differs from that of the Betti table";
    }
    return rep;
}

inline std::string betti_to_csv(const BettiTable& t)
{
    std::ostringstream out;
    out << "degree,dim\n";
    for (const auto& [i, h] : t.dims)
        out << i << ',' << h << '\n';
    return out.str();
}

inline nlohmann::ordered_json betti_to_json(const BettiTable& t)
{
    nlohmann::ordered_json doc;
    doc["ring"] = t.ring;
    doc["k"] = t.k;
    doc["mode"] = to_string(t.mode);
    doc["indexing"] = t.indexing == Indexing::cohomological ? "cohomological" : "homological";
    doc["dims"] = nlohmann::ordered_json::array();
    for (const auto& [i, h] : t.dims)
        doc["dims"].push_back({{"degree", i}, {"dim", h}});
    doc["euler"] = t.euler;
    return doc;
}

inline std::string betti_to_text(const BettiTable& t)
{
    std::ostringstream out;
    const char* h = t.indexing == Indexing::cohomological ? "H^" : "H_";
    out << "C_" << t.k << "(" << t.ring << "), " << to_string(t.mode) << " complex\n";
    for (const auto& [i, d] : t.dims)
        out << "  " << h << i << " = " << d << '\n';
    out << "  euler = " << t.euler << '\n';
    return out.str();
}

} // namespace confspace

#endif // CONFSPACE_HOMOLOGY_HPP
