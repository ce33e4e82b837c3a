#ifndef RELCON_RELCON_HPP
#define RELCON_RELCON_HPP

// Everything except the JSON-dependent cli_io.hpp.

#include "relcon/baseline.hpp"
#include "relcon/errors.hpp"
#include "relcon/monotone_fn.hpp"
#include "relcon/numeric.hpp"
#include "relcon/oracle.hpp"
#include "relcon/payoff_env.hpp"
#include "relcon/retirement.hpp"
#include "relcon/solver_config.hpp"
#include "relcon/verifier.hpp"

#endif  // RELCON_RELCON_HPP
