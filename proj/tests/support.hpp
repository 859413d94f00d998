// Random samplers shared by the property tests.
#pragma once

#include "eqlef/sampling.hpp"

namespace eqlef::testing {

using sampling::random_monomial;
using sampling::random_op;
using sampling::random_poly;
using sampling::random_scalar;

}  // namespace eqlef::testing
