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

#include "routefilter/probe.hpp"

#include <algorithm>

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

void check_arguments(double c, std::int64_t d) {
  if (d < 2) throw DataError(fmt::format("probe dimension must be >= 2, got {}", d));
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DataError(fmt::format("squared cosine {} outside [0, 1]", c));
  }
}

}  // namespace

double probe_exceedance(double c, std::int64_t d) {
  check_arguments(c, d);
  if (c == 0.0) return 1.0;
  if (c == 1.0) return 0.0;
  const double b = 0.5 * static_cast<double>(d - 1);
  return std::clamp(boost::math::ibetac(0.5, b, c), 0.0, 1.0);
}

MonteCarloProbe::MonteCarloProbe(std::size_t probes, std::uint64_t seed)
    : probes_(probes), engine_(seed) {
  if (probes_ == 0) throw UsageError("Monte-Carlo probe count must be positive");
}

double MonteCarloProbe::exceedance(double c, std::int64_t d) {
  check_arguments(c, d);
  std::normal_distribution<double> normal;
  std::chi_squared_distribution<double> rest(static_cast<double>(d - 1));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < probes_; ++i) {
    const double z = normal(engine_);
    const double along = z * z;
    const double value = along / (along + rest(engine_));
    if (value >= c) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(probes_);
}

}  // namespace routefilter
