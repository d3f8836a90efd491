// Copyright 2026 The cvmbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVMBQC_GKP_H
#define CVMBQC_GKP_H

#include "cvmbqc/gates.h"
#include "cvmbqc/reduction.h"
#include "cvmbqc/symplectic.h"

namespace cvmbqc {

struct GkpBudget {
    double delta = 0;
    Vec sigma2;
    Vec delta_prime;
    double perr = 1;
};

// Spike variance of GKP states prepared with the resource squeezing, e^{-2r}/2.
double spike_variance(double r);

// delta' = delta * sum_j G_ij^2 + sigma2_i.
Vec propagate_spikes(const Mat &G, const Vec &sigma2, double delta);

// 1 - prod_i erf(sqrt(pi) / (2 sqrt(2 (delta'_i + delta)))).
double error_probability(const Vec &delta_prime, double delta);

// Displacement that moves an outcome m onto the nearest point of the sqrt(pi) lattice.
double correction_shift(double m);

GkpBudget gate_budget(const GateResult &result, double r);
GkpBudget gate_budget(const GatePlan &plan);

// P_err of a plan at its own squeezing. At r = 0 the edge weights vanish, the gate noise
// diverges and the limiting value 1 is returned.
double gate_error_probability(const GatePlan &plan);

// Same gate with the gate noise switched off: only the propagated spikes contribute.
double zero_noise_error_probability(const Mat &G, double r);

}  // namespace cvmbqc

#endif
