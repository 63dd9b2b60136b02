#ifndef CONFSPACE_GENERATORS_HPP
#define CONFSPACE_GENERATORS_HPP

#include "confspace/graded_ring.hpp"
#include "confspace/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace confspace {

enum class Parity { even, odd };

inline Parity parity_of(int degree)
{
    return degree % 2 == 0 ? Parity::even : Parity::odd;
}

struct Generator {
    std::string name;
    int degree = 0;
    Parity parity = Parity::even;
    int homology_source_degree = 0;
    std::size_t ring_index = 0; // cohomology basis element whose dual homology class this is
};

/// One term coeff * v_left v_right of the boundary of a w-generator (indices into v_gens).
struct BoundaryTerm {
    std::size_t left;
    std::size_t right;
    Rational coeff;
};

/// Generators of V = H_{-*}(M)[d] and W = H_{-*}(M)[2d-1], d = dim M, together with the
/// boundary on W. The boundary on V is zero.
///
/// v_gens and w_gens are each sorted by (degree, name). A monomial refers to generators
/// by a global id: v-generators are 0..nv-1, w-generators nv..nv+nw-1.
struct GeneratorSet {
    std::string ring_id;
    std::optional<int> cpm;
    int dimension = 0;
    std::vector<Generator> v_gens;
    std::vector<Generator> w_gens;
    std::vector<std::vector<BoundaryTerm>> boundary_on_w;

    std::size_t nv() const { return v_gens.size(); }
    std::size_t nw() const { return w_gens.size(); }
    std::size_t total() const { return nv() + nw(); }
    bool is_w(std::size_t id) const { return id >= nv(); }
    const Generator& at(std::size_t id) const { return is_w(id) ? w_gens[id - nv()] : v_gens[id]; }
    int degree(std::size_t id) const { return at(id).degree; }
    bool odd(std::size_t id) const { return at(id).parity == Parity::odd; }

    std::optional<std::size_t> find_v(int degree) const
    {
        for (std::size_t i = 0; i < nv(); ++i)
            if (v_gens[i].degree == degree)
                return i;
        return std::nullopt;
    }
    std::optional<std::size_t> find_w(int degree) const
    {
        for (std::size_t j = 0; j < nw(); ++j)
            if (w_gens[j].degree == degree)
                return j;
        return std::nullopt;
    }
};

namespace detail {

// Names generators "<prefix>_<degree>", adding ",<j>" when a degree repeats, then sorts.
inline std::vector<Generator> name_and_sort(std::vector<Generator> gens, const std::string& prefix)
{
    std::stable_sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
    std::map<int, int> multiplicity;
    for (const auto& g : gens)
        ++multiplicity[g.degree];
    std::map<int, int> seen;
    for (auto& g : gens) {
        g.name = prefix + "_" + std::to_string(g.degree);
        if (multiplicity[g.degree] > 1)
            g.name += "," + std::to_string(++seen[g.degree]);
    }
    return gens;
}

} // namespace detail

/// Regrades the homology of M into v- and w-generators and fills in the boundary of each
/// w-generator from the diagonal comultiplication.
inline GeneratorSet build_generators(const RingPresentation& r)
{
    const auto delta = diagonal_comultiplication(r); // validates
    const int d = r.manifold_dimension;

    std::vector<Generator> v, w;
    for (std::size_t c = 0; c < r.size(); ++c) {
        const int j = r.degrees[c];
        v.push_back({"", d - j, parity_of(d - j), j, c});
        w.push_back({"", 2 * d - 1 - j, parity_of(2 * d - 1 - j), j, c});
    }

    GeneratorSet g;
    g.ring_id = r.id;
    g.cpm = r.cpm;
    g.dimension = d;
    g.v_gens = detail::name_and_sort(std::move(v), "v");
    g.w_gens = detail::name_and_sort(std::move(w), "w");

    std::vector<std::size_t> v_of(r.size());
    for (std::size_t i = 0; i < g.nv(); ++i)
        v_of[g.v_gens[i].ring_index] = i;

    g.boundary_on_w.resize(g.nw());
    for (std::size_t j = 0; j < g.nw(); ++j)
        for (const auto& t : delta[g.w_gens[j].ring_index])
            g.boundary_on_w[j].push_back({v_of[t.left], v_of[t.right], t.coeff});
    return g;
}

inline nlohmann::ordered_json generators_to_json(const GeneratorSet& g)
{
    auto gen_json = [](const Generator& x) {
        return nlohmann::ordered_json{{"name", x.name},
                                      {"degree", x.degree},
                                      {"parity", x.parity == Parity::odd ? "odd" : "even"},
                                      {"homology_source_degree", x.homology_source_degree}};
    };
    nlohmann::ordered_json doc;
    doc["ring"] = g.ring_id;
    doc["dimension"] = g.dimension;
    doc["v"] = nlohmann::ordered_json::array();
    for (const auto& x : g.v_gens)
        doc["v"].push_back(gen_json(x));
    doc["w"] = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < g.nw(); ++j) {
        auto gj = gen_json(g.w_gens[j]);
        gj["boundary"] = nlohmann::ordered_json::array();
        for (const auto& t : g.boundary_on_w[j])
            gj["boundary"].push_back({g.v_gens[t.left].name, g.v_gens[t.right].name, to_string(t.coeff)});
        doc["w"].push_back(gj);
    }
    return doc;
}

} // namespace confspace

#endif // CONFSPACE_GENERATORS_HPP
