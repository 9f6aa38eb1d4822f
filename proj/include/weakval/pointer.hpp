// Copyright 2026 The weakval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "weakval/core.hpp"

namespace weakval {

/// Uniform position grid holding a Gaussian pointer wave of width sigma
/// (standard deviation of position; the momentum spread is 1/(2 sigma)).
///
/// Points run from -extent to +extent inclusive. Construction verifies the
/// grid resolves the wave: the discrete norm of the initial Gaussian must
/// equal 1 within 1e-8.
struct PointerGrid {
  Index num_points;
  double extent;
  double spacing;
  double sigma;

  /// Throws PreconditionFailed for fewer than 64 points, non-positive
  /// sigma, an extent under 6 sigma, or a grid too coarse for the wave.
  /// An extent of 0 selects the default 10 sigma.
  static PointerGrid make(Index num_points = 1024, double sigma = 1.0,
                          double extent = 0.0);

  double position(Index i) const { return -extent + spacing * i; }
};

/// Pointer statistics after coupling a system observable to the pointer
/// momentum with strength g and post-selecting the system.
///
/// To first order in g the pointer means read off the weak value:
/// mean_position tracks g * Re(w) and mean_momentum tracks
/// g * Im(w) / (2 sigma^2), with O(g^3) corrections.
struct PointerStats {
  double coupling;
  double post_selection_probability;
  double mean_position;
  double mean_momentum;
};

/// Runs one impulsive measurement: the system-pointer coupling translates
/// the pointer by g times each eigenvalue of `a`, entangling the branches,
/// and the system is then projected onto |post>. The surviving pointer
/// wave is a coherent sum of shifted Gaussians, evaluated in closed form
/// on the grid; the momentum mean comes from the discrete Fourier
/// transform of that wave. Throws PostSelectionVanished when the surviving
/// norm drops below 1e-14.
PointerStats simulate(const Operator& a, const StateVector& pre,
                      const StateVector& post, double g,
                      const PointerGrid& grid);

/// Weak value recovered from a sweep of couplings.
struct WeakValueEstimate {
  Complex estimate;
  std::vector<PointerStats> per_g;
  double fit_residual;  // rms misfit of the g^2 extrapolation model
};

/// Reads the weak value off pointer statistics for each coupling in
/// `g_sweep` (strictly decreasing, all positive) and extrapolates g -> 0
/// with a least-squares fit linear in g^2. A single coupling skips the
/// extrapolation. Throws FitUnstable when the residual exceeds one tenth
/// of the estimate magnitude (with an absolute floor of 1e-9).
WeakValueEstimate extract_weak_value(const Operator& a, const StateVector& pre,
                                     const StateVector& post,
                                     const std::vector<double>& g_sweep,
                                     const PointerGrid& grid);

}  // namespace weakval
