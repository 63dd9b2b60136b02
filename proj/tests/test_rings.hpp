#ifndef CONFSPACE_TESTS_TEST_RINGS_HPP
#define CONFSPACE_TESTS_TEST_RINGS_HPP

#include "confspace/graded_ring.hpp"

namespace confspace::fixtures {

// H^*(T^2): 1, a, b (degree 1), ab (degree 2); ab = -ba.
inline RingPresentation torus()
{
    RingPresentation r;
    r.id = "T^2";
    r.manifold_dimension = 2;
    r.basis_names = {"1", "a", "b", "ab"};
    r.degrees = {0, 1, 1, 2};
    for (std::size_t i = 0; i < 4; ++i) {
        r.structure_constants[{0, i}] = {{i, Rational(1)}};
        r.structure_constants[{i, 0}] = {{i, Rational(1)}};
    }
    r.structure_constants[{1, 2}] = {{3, Rational(1)}};
    r.structure_constants[{2, 1}] = {{3, Rational(-1)}};
    r.unit_index = 0;
    r.top_index = 3;
    return r;
}

// H^*(S^2 x S^2): 1, x, y (degree 2), xy (degree 4); x^2 = y^2 = 0.
inline RingPresentation s2_times_s2()
{
    RingPresentation r;
    r.id = "S2xS2";
    r.manifold_dimension = 4;
    r.basis_names = {"1", "x", "y", "xy"};
    r.degrees = {0, 2, 2, 4};
    for (std::size_t i = 0; i < 4; ++i) {
        r.structure_constants[{0, i}] = {{i, Rational(1)}};
        r.structure_constants[{i, 0}] = {{i, Rational(1)}};
    }
    r.structure_constants[{1, 2}] = {{3, Rational(1)}};
    r.structure_constants[{2, 1}] = {{3, Rational(1)}};
    r.unit_index = 0;
    r.top_index = 3;
    return r;
}

} // namespace confspace::fixtures

#endif // CONFSPACE_TESTS_TEST_RINGS_HPP
