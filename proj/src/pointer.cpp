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

#include "weakval/pointer.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace weakval {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gaussian(double x, double sigma) {
  return std::pow(kTwoPi * sigma * sigma, -0.25) *
         std::exp(-x * x / (4.0 * sigma * sigma));
}

// Signed momentum for DFT bin n of N: frequencies above the midpoint wrap
// to negative momenta.
double bin_momentum(Index n, Index num_points, double spacing) {
  Index f = 2 * n < num_points ? n : n - num_points;
  return kTwoPi * static_cast<double>(f) /
         (static_cast<double>(num_points) * spacing);
}

}  // namespace

PointerGrid PointerGrid::make(Index num_points, double sigma, double extent) {
  if (num_points < 64) {
    throw PreconditionFailed("pointer grid needs at least 64 points");
  }
  if (!(sigma > 0.0)) {
    throw PreconditionFailed("pointer width sigma must be positive");
  }
  if (extent == 0.0) extent = 10.0 * sigma;
  if (extent < 6.0 * sigma) {
    throw PreconditionFailed("pointer grid extent must be at least 6 sigma");
  }
  PointerGrid grid{num_points, extent, 2.0 * extent / (num_points - 1), sigma};

  double norm = 0.0;
  for (Index i = 0; i < num_points; ++i) {
    double x = grid.position(i);
    norm += gaussian(x, sigma) * gaussian(x, sigma);
  }
  norm *= grid.spacing;
  if (std::abs(norm - 1.0) > 1e-8) {
    throw PreconditionFailed(
        "pointer grid does not resolve the wave; discrete norm " +
        std::to_string(norm));
  }
  return grid;
}

PointerStats simulate(const Operator& a, const StateVector& pre,
                      const StateVector& post, double g,
                      const PointerGrid& grid) {
  if (!a.is_hermitian()) {
    throw NotHermitian("simulate requires a Hermitian observable");
  }
  if (a.dim() != pre.dim() || a.dim() != post.dim()) {
    throw DimMismatch("simulate: observable and state dimensions differ");
  }

  // Branch amplitude and pointer shift per eigenspace. The coupling acts as
  // exp(-i g a p), which translates the pointer by g times the eigenvalue.
  SpectralDecomposition spec = eig_hermitian(a);
  size_t branches = spec.eigenvalues.size();
  std::vector<Complex> amplitude(branches);
  std::vector<double> shift(branches);
  for (size_t k = 0; k < branches; ++k) {
    amplitude[k] = matrix_element(post, spec.eigenprojectors[k], pre);
    shift[k] = g * spec.eigenvalues[k];
  }

  Index n = grid.num_points;
  Vector wave(n);
  for (Index m = 0; m < n; ++m) {
    double x = grid.position(m);
    Complex acc = 0.0;
    for (size_t k = 0; k < branches; ++k) {
      acc += amplitude[k] * gaussian(x - shift[k], grid.sigma);
    }
    wave(m) = acc;
  }

  double survival = wave.squaredNorm() * grid.spacing;
  if (survival < 1e-14) {
    throw PostSelectionVanished(
        "post-selected pointer wave has vanishing norm " +
        std::to_string(survival));
  }

  double mean_x = 0.0;
  for (Index m = 0; m < n; ++m) {
    mean_x += grid.position(m) * std::norm(wave(m));
  }
  mean_x *= grid.spacing / survival;

  // Momentum statistics from the plain O(N^2) transform; the grids in use
  // are small enough that no fast transform is warranted.
  double weight_sum = 0.0;
  double mean_p = 0.0;
  for (Index bin = 0; bin < n; ++bin) {
    Complex f = 0.0;
    for (Index m = 0; m < n; ++m) {
      double phase = -kTwoPi * static_cast<double>(bin) *
                     static_cast<double>(m) / static_cast<double>(n);
      f += wave(m) * Complex(std::cos(phase), std::sin(phase));
    }
    double weight = std::norm(f);
    weight_sum += weight;
    mean_p += bin_momentum(bin, n, grid.spacing) * weight;
  }
  mean_p /= weight_sum;

  return PointerStats{g, survival, mean_x, mean_p};
}

WeakValueEstimate extract_weak_value(const Operator& a, const StateVector& pre,
                                     const StateVector& post,
                                     const std::vector<double>& g_sweep,
                                     const PointerGrid& grid) {
  if (g_sweep.empty()) {
    throw PreconditionFailed("extract_weak_value needs at least one coupling");
  }
  for (size_t i = 0; i < g_sweep.size(); ++i) {
    if (!(g_sweep[i] > 0.0)) {
      throw PreconditionFailed("couplings must be positive");
    }
    if (i > 0 && !(g_sweep[i] < g_sweep[i - 1])) {
      throw PreconditionFailed("couplings must be strictly decreasing");
    }
  }

  size_t n = g_sweep.size();
  std::vector<PointerStats> stats;
  stats.reserve(n);
  Eigen::MatrixXcd design(n, 2);
  Eigen::VectorXcd reading(n);
  for (size_t i = 0; i < n; ++i) {
    double g = g_sweep[i];
    PointerStats s = simulate(a, pre, post, g, grid);
    stats.push_back(s);
    double re = s.mean_position / g;
    double im = 2.0 * grid.sigma * grid.sigma * s.mean_momentum / g;
    design(i, 0) = 1.0;
    design(i, 1) = g * g;
    reading(i) = Complex(re, im);
  }

  Complex estimate;
  double residual = 0.0;
  if (n == 1) {
    estimate = reading(0);
  } else {
    // Leading corrections to both pointer readings are quadratic in g, so
    // the intercept of a fit linear in g^2 is the g -> 0 limit.
    Eigen::VectorXcd coef = design.colPivHouseholderQr().solve(reading);
    estimate = coef(0);
    residual = std::sqrt((design * coef - reading).squaredNorm() /
                         static_cast<double>(n));
  }
  if (residual > std::max(0.1 * std::abs(estimate), 1e-9)) {
    throw FitUnstable("coupling sweep does not extrapolate; rms residual " +
                      std::to_string(residual));
  }
  return WeakValueEstimate{estimate, std::move(stats), residual};
}

}  // namespace weakval
