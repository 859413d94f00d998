// Umbrella header.
#pragma once

#include "eqlef/cyclotomic.hpp"
#include "eqlef/geometry.hpp"
#include "eqlef/gtrace.hpp"
#include "eqlef/heat.hpp"
#include "eqlef/hochschild.hpp"
#include "eqlef/lefschetz.hpp"
#include "eqlef/linalg.hpp"
#include "eqlef/matrix.hpp"
#include "eqlef/orbifold.hpp"
#include "eqlef/parser.hpp"
#include "eqlef/weyl.hpp"
