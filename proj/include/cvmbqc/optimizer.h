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

#ifndef CVMBQC_OPTIMIZER_H
#define CVMBQC_OPTIMIZER_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvmbqc/lattice.h"
#include "cvmbqc/symplectic.h"

namespace cvmbqc {

struct OptimizerConfig {
    std::vector<double> weight_grid = default_weight_grid();
    int restarts = 200;
    double residual_tol = 1e-5;
    // Simplex size at which the derivative-free stage stops.
    double local_tol = 1e-8;
    int simplex_max_evals = 1500;
    // Iterations of the gradient stage that lowers P_err while keeping G = T.
    int refine_iters = 200;
    std::uint64_t seed = 1;
    // Optimizes the control basis theta_c together with the free angles.
    bool variable_theta_c = false;
    // Starting points tried before the random ones; each holds the free angles, plus theta_c last
    // when variable_theta_c is set.
    std::vector<std::vector<double>> warm_starts;
    bool verbose = false;

    static std::vector<double> default_weight_grid();
    void validate() const;
};

OptimizerConfig optimizer_config_from_json(const nlohmann::json &j);
nlohmann::json optimizer_config_to_json(const OptimizerConfig &config);

struct OptResult {
    std::vector<double> angles;
    double theta_c = 0;
    double residual = 0;
    double perr = 1;
    bool accepted = false;
    int restarts_used = 0;
};

// The steps are chained and share one angle vector, concatenated in step order.
struct SearchProblem {
    std::vector<ComputationGraph> steps;
    Mat target;
    double r = 0;

    int n_angles() const;
    // Returns false when a step is measurement-degenerate.
    bool evaluate(const std::vector<double> &angles, double theta_c, Mat *G, double *perr) const;
};

// ||G - T||_1 + w log P_err; +infinity for a degenerate basis.
double objective(const SearchProblem &problem, const std::vector<double> &angles, double theta_c, double w);
double objective(const std::vector<double> &angles, const ComputationGraph &graph, const Mat &target, double w,
                 double r);

OptResult search(const SearchProblem &problem, const OptimizerConfig &config);
OptResult search(const ComputationGraph &graph, const Mat &target, double r, const OptimizerConfig &config);

// Wraps an angle into [-pi, pi).
double wrap_angle(double a);

}  // namespace cvmbqc

#endif
