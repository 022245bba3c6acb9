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

#include <iosfwd>
#include <string>

#include "routefilter/classifier.hpp"

namespace routefilter {

/// Text form: a header with the topic, the training configuration, the
/// vocabulary in order and the loss trajectory, then `weights N` followed by
/// one weight per line. Reals are printed with 17 significant digits, so a
/// write/read cycle reproduces the model exactly.
void write_model(std::ostream& out, const FilterModel& model);
FilterModel read_model(std::istream& in);

void save_model(const std::string& path, const FilterModel& model);
FilterModel load_model(const std::string& path);

}  // namespace routefilter
