/*
 * Copyright 2026 The routefilter Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace routefilter {

/// P(cos2(probe, y) >= c) for a probe with i.i.d. standard normal
/// components in a d-dimensional residual space. The squared cosine of such
/// a probe with any fixed direction is Beta(1/2, (d-1)/2) distributed, so
/// this is the regularized upper incomplete beta 1 - I_c(1/2, (d-1)/2).
///
/// Throws DataError for d < 2 or c outside [0, 1].
double probe_exceedance(double c, std::int64_t d);

/// Seeded Monte-Carlo counterpart of probe_exceedance. Each probe's cos2 is
/// drawn as z^2 / (z^2 + chi2(d-1)), which has the same law as an explicit
/// d-dimensional Gaussian vector against a fixed axis.
class MonteCarloProbe {
 public:
  MonteCarloProbe(std::size_t probes, std::uint64_t seed);

  double exceedance(double c, std::int64_t d);

 private:
  std::size_t probes_;
  std::mt19937_64 engine_;
};

}  // namespace routefilter
