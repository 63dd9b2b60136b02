#ifndef CONFSPACE_CONFSPACE_HPP
#define CONFSPACE_CONFSPACE_HPP

#include "confspace/ce_complex.hpp"
#include "confspace/errors.hpp"
#include "confspace/exact_linalg.hpp"
#include "confspace/extremal.hpp"
#include "confspace/generators.hpp"
#include "confspace/graded_ring.hpp"
#include "confspace/homology.hpp"
#include "confspace/monomial.hpp"
#include "confspace/parallel.hpp"
#include "confspace/quasi_polynomial.hpp"
#include "confspace/rational.hpp"
#include "confspace/ring_json.hpp"
#include "confspace/sparse_matrix.hpp"

#endif // CONFSPACE_CONFSPACE_HPP
