// Copyright 2026 The netsir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace netsir::svg
{
struct Series
{
    std::string label;
    std::vector<double> values;
};

/// 800×500 line chart with linear auto-scaled axes, one polyline per series.
std::string line_chart(const std::string& title, std::span<const double> t, std::span<const Series> series);
}  // namespace netsir::svg
