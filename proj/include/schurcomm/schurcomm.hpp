#pragma once

// Umbrella header: finite-dimensional verification of commutator-norm
// inequalities obtained through Schur products — spectral binning, scalar
// multipliers with analytic row bounds, block-matrix norms, per-theorem
// inequality checkers, and reproducible randomized campaigns.

#include "schurcomm/block_schur.hpp"
#include "schurcomm/campaign.hpp"
#include "schurcomm/errors.hpp"
#include "schurcomm/fourier_testbed.hpp"
#include "schurcomm/functions.hpp"
#include "schurcomm/inequalities.hpp"
#include "schurcomm/multipliers.hpp"
#include "schurcomm/operator_core.hpp"
#include "schurcomm/quadrature.hpp"
#include "schurcomm/random_instances.hpp"
#include "schurcomm/report.hpp"
#include "schurcomm/serialize.hpp"
#include "schurcomm/spectral_binning.hpp"
