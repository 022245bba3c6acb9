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

#include <cstdint>

#include "routefilter/qrels.hpp"

namespace routefilter {

/// Independent random streams derived from one master seed.
enum class SeedStream : std::uint64_t {
  negative_sampling = 1,
  probe = 2,
  weight_init = 3,
  synthetic_train = 4,
  synthetic_test = 5,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// seed = mix(mix(mix(master) ^ topic) ^ stream). Each topic and stream gets
/// its own generator, so results do not depend on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, TopicId topic,
                                    SeedStream stream) noexcept {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(topic)));
  return mix64(h ^ static_cast<std::uint64_t>(stream));
}

}  // namespace routefilter
