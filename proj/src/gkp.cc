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

#include "cvmbqc/gkp.h"

#include <cmath>

#include "cvmbqc/errors.h"
#include "cvmbqc/lattice.h"

namespace cvmbqc {

double spike_variance(double r) {
    effective_epsilon(r);
    return std::exp(-2 * r) / 2;
}

Vec propagate_spikes(const Mat &G, const Vec &sigma2, double delta) {
    if (G.rows() != sigma2.size()) {
        throw DimensionError("gate and noise vector sizes differ");
    }
    if (!(delta >= 0)) {
        throw DomainError("spike variance must be non-negative");
    }
    return G.rowwise().squaredNorm() * delta + sigma2;
}

double error_probability(const Vec &delta_prime, double delta) {
    // P = 1 - prod(1 - erfc_i), accumulated in log space to keep small probabilities accurate.
    double log_success = 0;
    for (Eigen::Index i = 0; i < delta_prime.size(); i++) {
        double v = delta_prime(i) + delta;
        if (!(delta_prime(i) > 0) || !(v > 0)) {
            throw DomainError("spike variances must be positive");
        }
        if (std::isinf(v)) {
            return 1.0;
        }
        double c = std::erfc(std::sqrt(M_PI) / (2 * std::sqrt(2 * v)));
        log_success += std::log1p(-c);
    }
    return -std::expm1(log_success);
}

double correction_shift(double m) {
    const double s = std::sqrt(M_PI);
    double u = std::fmod(m, s);
    if (u < 0) {
        u += s;
    }
    if (u >= s) {
        u = 0;
    }
    return (u < s / 2) ? -u : s - u;
}

GkpBudget gate_budget(const GateResult &result, double r) {
    GkpBudget b;
    b.delta = spike_variance(r);
    b.sigma2 = noise_factors(result) * (effective_epsilon(r) / 2);
    b.delta_prime = propagate_spikes(result.G, b.sigma2, b.delta);
    b.perr = error_probability(b.delta_prime, b.delta);
    return b;
}

GkpBudget gate_budget(const GatePlan &plan) {
    return gate_budget(run_plan(plan), plan.r);
}

double gate_error_probability(const GatePlan &plan) {
    if (plan.r == 0) {
        return 1.0;
    }
    return gate_budget(plan).perr;
}

double zero_noise_error_probability(const Mat &G, double r) {
    double delta = spike_variance(r);
    Vec dp = propagate_spikes(G, Vec::Zero(G.rows()), delta);
    return error_probability(dp, delta);
}

}  // namespace cvmbqc
