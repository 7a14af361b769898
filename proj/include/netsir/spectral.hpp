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

#include "netsir/model.hpp"

namespace netsir
{
/// Perron root and left Perron vector of a nonnegative matrix.
struct DominantPair
{
    double lambda_max = 0.0;
    Vector v_max;  ///< left eigenvector, 1ᵀv = 1
    bool irreducible = true;  ///< false means the pair may not be unique
    std::size_t iterations = 0;
};

/// Power iteration on (M + I)ᵀ from the uniform vector; the shift removes
/// periodicity. Throws NoConvergence after 1e6 iterations.
DominantPair dominant_eig(const Matrix& M);

/// True iff λ_max([x*]A) > gamma + kClassifyBand.
bool instability_check(const EpidemicParams& p, const Vector& x_star);

/// β(x + y) − γ log x. Throws NonpositiveSusceptibles for x <= 0.
double scalar_invariant(double beta, double gamma, double x, double y);

/// Limit susceptible fraction of the scalar SIR model: the root in (0, γ/β]
/// of βr − γ log r = β(x0 + y0) − γ log x0. Throws InvalidInitialState.
double scalar_final_size(double beta, double gamma, double x0, double y0);
}  // namespace netsir
