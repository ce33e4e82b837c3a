#ifndef RELCON_SOLVER_CONFIG_HPP
#define RELCON_SOLVER_CONFIG_HPP

#include <cstddef>

namespace relcon {

/// Numerical knobs shared by the solvers, the verifier and the oracle.
struct SolverConfig {
  std::size_t scan_points = 100001;   // argmax / level-crossing grid
  std::size_t shoot_points = 20001;   // s1 grid for the retirement shooting method
  double eps_step = 1e-10;            // stop the break-even recursion below this step
  double eps_root = 1e-12;            // inverse / residual tolerance
  double eps_val = 1e-11;             // plateau band for smallest-maximizer ties
  double eps_mono = 1e-12;            // strictness margin for monotonicity checks
  std::size_t max_periods = 10000;    // prefix length cap for infinite paths
  std::size_t cap = 5000000;          // oracle enumeration cap
  std::size_t validation_grid = 10001;

  bool operator==(const SolverConfig&) const = default;
};

}  // namespace relcon

#endif  // RELCON_SOLVER_CONFIG_HPP
