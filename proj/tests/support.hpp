#pragma once

#include "nematicon/groundstate.hpp"

#include <stdexcept>

// Shared fixtures for the unit suites. The small ground state is computed
// once per test binary run; suites that need a converged pair reuse it
// instead of re-running the flow.
namespace nematicon::testing {

inline const groundstate::GroundState& small_ground_state() {
  static const groundstate::GroundState gs = [] {
    const auto grid = RadialGrid::make(30.0, 512);
    auto res = groundstate::minimize_charge(grid, 6.0, energy::Params{1.0, 1.0});
    if (!res.state)
      throw std::runtime_error("fixture: expected a ground state at a = 6, got " +
                               res.diag.verdict);
    return *std::move(res.state);
  }();
  return gs;
}

}  // namespace nematicon::testing
