#pragma once

#include "pellpoly/numeric.hpp"
#include "pellpoly/poly.hpp"
#include "pellpoly/factor.hpp"
#include "pellpoly/pell.hpp"
#include "pellpoly/psi.hpp"
#include "pellpoly/newfactors.hpp"
#include "pellpoly/reproots.hpp"
#include "pellpoly/builder.hpp"
