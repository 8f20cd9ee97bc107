#pragma once

// Umbrella header for the whole library.

#include "biharm/config.hpp"
#include "biharm/expr.hpp"
#include "biharm/field.hpp"
#include "biharm/geometry.hpp"
#include "biharm/harmonics.hpp"
#include "biharm/jets.hpp"
#include "biharm/punctured.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/radial.hpp"
#include "biharm/report.hpp"
#include "biharm/separable.hpp"
#include "biharm/sphere.hpp"
#include "biharm/verify.hpp"
