#pragma once

// Umbrella header: calibrated evidence for binomial hypothesis contrasts.

#include "evid/analysis.hpp"
#include "evid/binomial.hpp"
#include "evid/equation_of_state.hpp"
#include "evid/output.hpp"
#include "evid/quadrature.hpp"
#include "evid/state_functions.hpp"
#include "evid/verification.hpp"
