#pragma once

// Umbrella header for the finite-dimensional commutative algebra library.

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "algebra.hpp"
#include "ideals.hpp"
#include "characters.hpp"
#include "maximal_ideals.hpp"
#include "semigroup.hpp"
#include "norms.hpp"
#include "io.hpp"
#include "check.hpp"
