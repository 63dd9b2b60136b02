#include "confspace/ce_complex.hpp"
#include "test_rings.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace confspace;

namespace {

std::set<std::string> names(const GeneratorSet& g, const std::vector<Monomial>& mons)
{
    std::set<std::string> out;
    for (const auto& x : mons)
        out.insert(to_string(g, x));
    return out;
}

std::set<std::string> all_names(const GeneratorSet& g, const BigradedBasis& b, int weight)
{
    std::set<std::string> out;
    for (const auto& [bd, mons] : b.slices)
        if (bd.weight == weight)
            for (const auto& x : mons)
                out.insert(to_string(g, x));
    return out;
}

std::map<std::string, Rational> as_map(const GeneratorSet& g, const std::vector<Term>& terms)
{
    std::map<std::string, Rational> out;
    for (const auto& t : terms)
        out[to_string(g, t.mono)] = t.coeff;
    return out;
}

std::string v(int deg, int e = 1)
{
    if (e == 0)
        return "";
    return "v_" + std::to_string(deg) + (e > 1 ? "^" + std::to_string(e) : "");
}

std::string join(std::initializer_list<std::string> parts)
{
    std::string out;
    for (const auto& p : parts)
        if (!p.empty())
            out += (out.empty() ? "" : " ") + p;
    return out;
}

long long binom(long long n, long long r)
{
    if (r < 0 || r > n)
        return 0;
    long long c = 1;
    for (long long i = 1; i <= r; ++i)
        c = c * (n - r + i) / i;
    return c;
}

} // namespace

TEST(EnumerateBasis, Cp1TwoPoints)
{
    const auto g = build_generators(make_cpm(1));
    const auto b = enumerate_basis(g, 2);
    EXPECT_EQ(all_names(g, b, 0), (std::set<std::string>{"v_0^2", "v_0 v_2", "v_2^2"}));
    EXPECT_EQ(all_names(g, b, 1), (std::set<std::string>{"w_1", "w_3"}));
    EXPECT_EQ(b.size(), 5u);
}

TEST(EnumerateBasis, ZeroAndOnePoint)
{
    for (int m = 1; m <= 3; ++m) {
        const auto g = build_generators(make_cpm(m));
        const auto b0 = enumerate_basis(g, 0);
        ASSERT_EQ(b0.size(), 1u);
        const auto& only = b0.slice({0, 0});
        ASSERT_EQ(only.size(), 1u);
        EXPECT_EQ(to_string(g, only[0]), "1");

        const auto b1 = enumerate_basis(g, 1);
        std::set<std::string> expected;
        for (const auto& x : g.v_gens)
            expected.insert(x.name);
        EXPECT_EQ(all_names(g, b1, 0), expected);
        EXPECT_EQ(b1.size(), g.nv());
    }
    EXPECT_THROW(enumerate_basis(build_generators(make_cpm(1)), -1), InvalidParameter);
}

TEST(EnumerateBasis, CpmCountingFormula)
{
    for (int m = 1; m <= 3; ++m) {
        const auto g = build_generators(make_cpm(m));
        for (int k = 0; k <= 8; ++k) {
            const auto b = enumerate_basis(g, k);
            long long total = 0;
            for (int w = 0; w <= k / 2; ++w) {
                std::size_t n = 0;
                for (const auto& [bd, mons] : b.slices)
                    if (bd.weight == w)
                        n += mons.size();
                const long long expected = binom(k - 2 * w + m, m) * binom(m + 1, w);
                EXPECT_EQ(static_cast<long long>(n), expected) << "m = " << m << ", k = " << k << ", w = " << w;
                total += expected;
            }
            EXPECT_EQ(static_cast<long long>(count_monomials(g, k)), total);
        }
    }
}

TEST(EnumerateBasis, SlicesPartitionAndAreSorted)
{
    for (const auto& r : {make_cpm(2), fixtures::torus()}) {
        const auto g = build_generators(r);
        for (int k = 0; k <= 6; ++k) {
            const auto b = enumerate_basis(g, k);
            std::set<Monomial> seen;
            for (const auto& [bd, mons] : b.slices) {
                EXPECT_TRUE(std::is_sorted(mons.begin(), mons.end()));
                for (const auto& x : mons) {
                    EXPECT_TRUE(seen.insert(x).second);
                    EXPECT_EQ(x.degree, bd.degree);
                    EXPECT_EQ(x.weight, bd.weight);
                    EXPECT_EQ(x.v_length, k - 2 * x.weight);
                    for (std::size_t id = 0; id < g.total(); ++id)
                        if (g.odd(id)) {
                            EXPECT_LE(x.exponent(g, id), 1);
                        }
                }
            }
            EXPECT_EQ(seen.size(), count_monomials(g, k));
        }
    }
}

TEST(Differential, VanishesOnV)
{
    const auto g = build_generators(make_cpm(3));
    for (const auto& x : g.v_gens)
        EXPECT_TRUE(differential_of_monomial(g, parse_monomial(g, x.name)).empty());
}

TEST(Differential, PowerTimesSecondToTopW)
{
    // d(v_{2m-2}^{k-2} w_{4m-3}) = 2 v_{2m-2}^{k-1} v_{2m}
    for (int m = 2; m <= 3; ++m) {
        const auto g = build_generators(make_cpm(m));
        for (int k = 3; k <= 7; ++k) {
            const auto x = parse_monomial(g, join({v(2 * m - 2, k - 2), "w_" + std::to_string(4 * m - 3)}));
            const auto dx = as_map(g, differential_of_monomial(g, x));
            const std::map<std::string, Rational> expected{{join({v(2 * m - 2, k - 1), v(2 * m)}), 2}};
            EXPECT_EQ(dx, expected) << "m = " << m << ", k = " << k;
        }
    }
}

TEST(Differential, ProductOfTwoW)
{
    // d(w_{4m-5} w_{4m-3}) = (2 v_{2m-4} v_{2m} + v_{2m-2}^2) w_{4m-3} - 2 v_{2m-2} v_{2m} w_{4m-5}
    for (int m = 2; m <= 4; ++m) {
        const auto g = build_generators(make_cpm(m));
        const std::string wa = "w_" + std::to_string(4 * m - 5), wb = "w_" + std::to_string(4 * m - 3);
        const auto x = parse_monomial(g, wa + " " + wb);
        const auto dx = differential_of_monomial(g, x);
        const std::map<std::string, Rational> expected{
            {join({v(2 * m - 4), v(2 * m), wb}), 2},
            {join({v(2 * m - 2, 2), wb}), 1},
            {join({v(2 * m - 2), v(2 * m), wa}), -2},
        };
        EXPECT_EQ(as_map(g, dx), expected) << "m = " << m;

        // Oracle: d(dx) = 0.
        std::map<Monomial, Rational> ddx;
        for (const auto& t : dx)
            for (const auto& u : differential_of_monomial(g, t.mono))
                ddx[u.mono] += t.coeff * u.coeff;
        for (const auto& [mono, c] : ddx)
            EXPECT_EQ(c, 0) << to_string(g, mono);
    }
}

TEST(Differential, GradingOfTerms)
{
    for (const auto& r : {make_cpm(2), make_cpm(3), fixtures::torus(), fixtures::s2_times_s2()}) {
        const auto g = build_generators(r);
        for (int k = 0; k <= 6; ++k)
            for (const auto& [bd, mons] : enumerate_basis(g, k).slices)
                for (const auto& x : mons)
                    for (const auto& t : differential_of_monomial(g, x)) {
                        EXPECT_EQ(t.mono.degree, x.degree + 1);
                        EXPECT_EQ(t.mono.weight, x.weight - 1);
                        EXPECT_NE(t.coeff, 0);
                    }
    }
}

TEST(Canonicalize, KoszulSigns)
{
    const auto g = build_generators(fixtures::torus());
    // v_1,1 and v_1,2 are odd: swapping them costs a sign, repeating one kills the product.
    const std::size_t a = 1, b = 2, v0 = 0;
    auto ab = canonicalize(g, {a, b});
    auto ba = canonicalize(g, {b, a});
    ASSERT_TRUE(ab && ba);
    EXPECT_EQ(ab->mono, ba->mono);
    EXPECT_EQ(ab->sign, -ba->sign);
    EXPECT_FALSE(canonicalize(g, {a, v0, a}));
    auto bv = canonicalize(g, {b, v0, a});
    ASSERT_TRUE(bv);
    EXPECT_EQ(bv->sign, -1);
}

TEST(AssembleBlocks, TopBlockOfCp2)
{
    const auto g = build_generators(make_cpm(2));
    const auto b = enumerate_basis(g, 2);
    const auto blocks = assemble_blocks(g, b);
    const DifferentialBlock* top = nullptr;
    for (const auto& blk : blocks)
        if (blk.source == Bidegree{7, 1})
            top = &blk;
    ASSERT_NE(top, nullptr);
    EXPECT_EQ(top->target, (Bidegree{8, 0}));
    ASSERT_EQ(top->matrix.rows(), 1u);
    ASSERT_EQ(top->matrix.cols(), 1u);
    EXPECT_EQ(top->matrix.at(0, 0), 1);
    for (const auto& blk : blocks) {
        EXPECT_GE(blk.source.weight, 1);
        EXPECT_FALSE(b.slice(blk.source).empty());
    }
}

TEST(AssembleBlocks, MissingTargetIsAnError)
{
    const auto g = build_generators(make_cpm(1));
    auto b = enumerate_basis(g, 2);
    b.slices.erase({2, 0}); // v_0 v_2, the boundary of w_1
    EXPECT_THROW(assemble_blocks(g, b), ConsistencyError);
}

TEST(ChainComplex, DifferentialSquaresToZero)
{
    for (const auto& r : {make_cpm(1), make_cpm(2), make_cpm(3), fixtures::torus(), fixtures::s2_times_s2()}) {
        auto g = std::make_shared<const GeneratorSet>(build_generators(r));
        for (int k = 0; k <= 7; ++k) {
            EXPECT_FALSE(ChainComplex(g, k, ComplexMode::full).d_squared_failure()) << r.id << " k = " << k;
            if (r.cpm) {
                EXPECT_FALSE(ChainComplex(g, k, ComplexMode::reduced).d_squared_failure()) << r.id << " k = " << k;
            }
        }
    }
}

TEST(ReduceComplex, Cp1TwoPoints)
{
    const auto g = build_generators(make_cpm(1));
    const auto red = reduce_complex(g, enumerate_basis(g, 2));
    std::set<std::string> all;
    for (int w = 0; w <= 1; ++w)
        for (const auto& n : all_names(g, red, w))
            all.insert(n);
    EXPECT_EQ(all, (std::set<std::string>{"v_0^2", "v_0 v_2", "w_1"}));
}

TEST(ReduceComplex, TopDegreeMonomial)
{
    for (int m = 1; m <= 3; ++m) {
        const auto g = build_generators(make_cpm(m));
        for (int k = 4; k <= 9; ++k) {
            const auto red = reduce_complex(g, enumerate_basis(g, k));
            const int top = (2 * m - 2) * k + 3;
            EXPECT_EQ(red.top_degree(), top) << "m = " << m << ", k = " << k;
            EXPECT_EQ(names(g, red.slice({top, 1})),
                      (std::set<std::string>{join({v(2 * m - 2, k - 3), v(2 * m), "w_" + std::to_string(4 * m - 3)})}));
            // Full complex is strictly larger at the top.
            EXPECT_GT(enumerate_basis(g, k).top_degree(), top);
        }
    }
}

TEST(ReduceComplex, SliceAboveBaseDegree)
{
    for (int m = 2; m <= 3; ++m) {
        const auto g = build_generators(make_cpm(m));
        for (int k = 8; k <= 10; ++k) {
            const auto red = reduce_complex(g, enumerate_basis(g, k));
            const int base = k * (2 * m - 2);
            const std::string w3 = "w_" + std::to_string(4 * m - 3), w5 = "w_" + std::to_string(4 * m - 5);
            const std::string e1 = join({v(2 * m - 4), v(2 * m - 2, k - 4), v(2 * m), w3});
            const std::string e2 = join({v(2 * m - 2, k - 3), v(2 * m), w5});
            const std::string e3 = join({v(2 * m - 2, k - 2), w3});
            EXPECT_EQ(names(g, red.slice({base + 1, 1})), (std::set<std::string>{e1, e2, e3}));

            // The block to (base+2, 0) in the order e1, e2, e3 is (0, 1, 2).
            const auto blocks = assemble_blocks(g, red);
            for (const auto& blk : blocks)
                if (blk.source == Bidegree{base + 1, 1}) {
                    ASSERT_EQ(blk.matrix.rows(), 1u);
                    const std::vector<std::string> order{e1, e2, e3};
                    const std::vector<int> expected{0, 1, 2};
                    for (std::size_t i = 0; i < 3; ++i) {
                        const auto col = red.index_of({base + 1, 1}, parse_monomial(g, order[i]));
                        ASSERT_TRUE(col);
                        EXPECT_EQ(blk.matrix.at(0, *col), expected[i]);
                    }
                }
        }
    }
}

TEST(ReduceComplex, RejectsCustomRings)
{
    const auto g = build_generators(fixtures::torus());
    EXPECT_THROW(reduce_complex(g, enumerate_basis(g, 2)), UnsupportedMode);
    EXPECT_THROW(homotopy_check(g, 2), UnsupportedMode);
}

TEST(ReduceComplex, IdealClosedUnderDifferential)
{
    for (int m = 1; m <= 3; ++m) {
        const auto g = build_generators(make_cpm(m));
        const auto ideal = reduction_ideal(g);
        for (int k = 2; k <= 7; ++k)
            for (const auto& [bd, mons] : enumerate_basis(g, k).slices)
                for (const auto& x : mons)
                    if (ideal.contains(g, x)) {
                        for (const auto& t : differential_of_monomial(g, x))
                            EXPECT_TRUE(ideal.contains(g, t.mono)) << to_string(g, x);
                    }
    }
}

TEST(Homotopy, SquareOfTopV)
{
    for (int m = 1; m <= 3; ++m) {
        const auto g = build_generators(make_cpm(m));
        const auto ideal = reduction_ideal(g);
        const auto x = parse_monomial(g, v(2 * m, 2));
        const auto hx = ideal_homotopy(g, ideal, x);
        ASSERT_EQ(hx.size(), 1u);
        EXPECT_EQ(to_string(g, hx[0].mono), "w_" + std::to_string(4 * m - 1));
        const auto dhx = differential_of_monomial(g, hx[0].mono);
        ASSERT_EQ(dhx.size(), 1u);
        EXPECT_EQ(dhx[0].mono, x);
        EXPECT_EQ(hx[0].coeff * dhx[0].coeff, 1);
        EXPECT_TRUE(homotopy_check(g, 2).ok);
    }
}

TEST(Homotopy, VacuousBelowTwoPoints)
{
    const auto g = build_generators(make_cpm(2));
    for (int k = 0; k < 2; ++k) {
        const auto res = homotopy_check(g, k);
        EXPECT_TRUE(res.ok);
        EXPECT_EQ(res.checked, 0u);
    }
}

TEST(Homotopy, MixedElementFourPoints)
{
    // x = v_0 v_2 w_7 in CP^2: h(x) = 0 and h(dx) = h(v_0 v_2 v_4^2) = w_7 v_0 v_2 = x.
    const auto g = build_generators(make_cpm(2));
    const auto ideal = reduction_ideal(g);
    const auto x = parse_monomial(g, "v_0 v_2 w_7");
    EXPECT_TRUE(ideal_homotopy(g, ideal, x).empty());
    std::map<Monomial, Rational> acc;
    for (const auto& t : differential_of_monomial(g, x))
        for (const auto& u : ideal_homotopy(g, ideal, t.mono))
            acc[u.mono] += t.coeff * u.coeff;
    ASSERT_EQ(acc.size(), 1u);
    EXPECT_EQ(acc.begin()->first, x);
    EXPECT_EQ(acc.begin()->second, 1);

    const auto res = homotopy_check(g, 4);
    EXPECT_TRUE(res.ok) << res.detail;
    EXPECT_GT(res.checked, 0u);
}

TEST(ComplexJson, DumpShape)
{
    auto g = std::make_shared<const GeneratorSet>(build_generators(make_cpm(1)));
    const auto doc = complex_to_json(ChainComplex(g, 2, ComplexMode::full));
    EXPECT_EQ(doc["k"], 2);
    EXPECT_EQ(doc["mode"], "full");
    std::size_t mons = 0;
    for (const auto& s : doc["slices"])
        mons += s["monomials"].size();
    EXPECT_EQ(mons, 5u);
    bool found_w1 = false;
    for (const auto& blk : doc["blocks"])
        if (blk["source"] == nlohmann::ordered_json{1, 1}) {
            found_w1 = true;
            EXPECT_EQ(blk["entries"], (nlohmann::ordered_json{{0, 0, "2"}}));
        }
    EXPECT_TRUE(found_w1);
}

TEST(ComplexCache, ReturnsSameInstance)
{
    auto g = std::make_shared<const GeneratorSet>(build_generators(make_cpm(2)));
    ComplexCache cache;
    const auto a = cache.get(g, 4, ComplexMode::full);
    const auto b = cache.get(g, 4, ComplexMode::full);
    const auto c = cache.get(g, 4, ComplexMode::reduced);
    EXPECT_EQ(a.get(), b.get());
    EXPECT_NE(a.get(), c.get());
}
