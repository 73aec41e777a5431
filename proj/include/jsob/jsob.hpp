#ifndef JSOB_JSOB_HPP
#define JSOB_JSOB_HPP

#include "jsob/counterexamples.hpp"
#include "jsob/error.hpp"
#include "jsob/goncharov.hpp"
#include "jsob/jacobi.hpp"
#include "jsob/measure.hpp"
#include "jsob/polynomial.hpp"
#include "jsob/quadrature.hpp"
#include "jsob/rational.hpp"
#include "jsob/regions.hpp"
#include "jsob/sobolev.hpp"
#include "jsob/special.hpp"
#include "jsob/svg.hpp"
#include "jsob/test_functions.hpp"

#endif  // JSOB_JSOB_HPP
