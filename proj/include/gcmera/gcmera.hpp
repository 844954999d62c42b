#pragma once

// Umbrella header for the gcmera library.

#include "gcmera/alpha_models.hpp"
#include "gcmera/bessel.hpp"
#include "gcmera/correlators.hpp"
#include "gcmera/diagnostics.hpp"
#include "gcmera/flow.hpp"
#include "gcmera/hamiltonians.hpp"
#include "gcmera/lattice_oracle.hpp"
#include "gcmera/params.hpp"
#include "gcmera/quadrature.hpp"
#include "gcmera/transforms.hpp"
