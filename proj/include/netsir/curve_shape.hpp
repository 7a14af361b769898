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

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace netsir
{
namespace shape
{
struct Constant
{
    bool operator==(const Constant&) const = default;
};
struct MonotoneDecreasing
{
    bool operator==(const MonotoneDecreasing&) const = default;
};
struct Unimodal
{
    std::optional<double> peak_time;
    bool operator==(const Unimodal&) const = default;
};
/// Decrease to a local minimum, rise to a peak, then decay.
struct Bimodal
{
    std::optional<double> min_time;
    std::optional<double> peak_time;
    bool operator==(const Bimodal&) const = default;
};
/// Prediction only: initial data admit either a monotone decay or a bimodal curve.
struct Undetermined
{
    bool operator==(const Undetermined&) const = default;
};
/// Observation only: more than two interior monotonicity changes. Impossible
/// for rank-1 interactions, expected for some full-rank ones.
struct Multimodal
{
    std::vector<double> peak_times;
    std::vector<double> min_times;
    bool operator==(const Multimodal&) const = default;
};
}  // namespace shape

using CurveShape = std::variant<shape::Constant, shape::MonotoneDecreasing, shape::Unimodal, shape::Bimodal,
                                shape::Undetermined, shape::Multimodal>;

/// Short tag such as "Bimodal", used in CSV columns and reports.
std::string shape_tag(const CurveShape& s);
}  // namespace netsir
