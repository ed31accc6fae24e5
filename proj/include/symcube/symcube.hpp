#pragma once

// Umbrella header: exact Hecke-eigensystem arithmetic for the cube
// transfer GL2 -> GSp4, with the matrix oracle every formula is tested
// against.

#include "classify.hpp"
#include "congruence.hpp"
#include "dirichlet.hpp"
#include "eigensystem.hpp"
#include "hecke.hpp"
#include "identity_suite.hpp"
#include "levels.hpp"
#include "matrix.hpp"
#include "padic.hpp"
#include "poly.hpp"
#include "quadext.hpp"
#include "rational.hpp"
#include "weights.hpp"
