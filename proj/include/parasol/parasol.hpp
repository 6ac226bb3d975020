#pragma once

// Umbrella header for the parasol library: a maximum-principle-preserving
// implicit solver for the coupled quasilinear parabolic system
//   m u^{m-1} u_t + A u = alpha v,   p v^{p-1} v_t + A v = alpha u
// on a box with Dirichlet boundaries, 0 < p <= m < 1, together with its
// blow-up/decay diagnostics and validation oracles.

#include "parasol/config.hpp"
#include "parasol/emit.hpp"
#include "parasol/errors.hpp"
#include "parasol/functionals.hpp"
#include "parasol/grid.hpp"
#include "parasol/model.hpp"
#include "parasol/operator.hpp"
#include "parasol/oracle.hpp"
#include "parasol/report.hpp"
#include "parasol/run.hpp"
#include "parasol/step.hpp"
