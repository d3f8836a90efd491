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

#ifndef CVMBQC_ORACLE_H
#define CVMBQC_ORACLE_H

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvmbqc/gates.h"
#include "cvmbqc/lattice.h"
#include "cvmbqc/symplectic.h"

namespace cvmbqc {

struct GaussianState {
    int n_modes = 0;
    Vec mean;
    Mat cov;

    static GaussianState vacuum(int n);
    // Mode with Var(x) = vx and Var(p) = vp.
    static GaussianState squeezed(double vx, double vp);
    static GaussianState product(const std::vector<GaussianState> &parts);
    // cov + i Omega / 2 is positive semidefinite within tol.
    bool is_physical(double tol = 1e-9) const;
};

GaussianState evolve(const GaussianState &state, const Mat &S);

// Measures x cos(theta) + p sin(theta) of `mode`, conditions on `outcome` and removes the mode.
GaussianState condition_homodyne(const GaussianState &state, int mode, double theta, double outcome = 0.0);

// The pre-measurement circuit of a graph built from the elementary gates: CZ network, then the
// mixing beam splitters in order, then the phase rotations of the measured modes.
Mat circuit_symplectic(const ComputationGraph &graph, const std::map<int, double> &angles);

// Runs one graph with all measured x quadratures post-selected at zero and returns the state of
// the output modes. Cluster modes start with Var(p) = epsilon/2; their antisqueezed x quadratures
// have Var(x) = 1/(2 epsilon) when `physical` is set and are otherwise flat (the infinite-
// antisqueezing idealization the gate-noise model assumes).
GaussianState run_graph(const ComputationGraph &graph, const std::map<int, double> &angles,
                        const GaussianState &input, bool physical);

struct VerifyReport {
    std::string plan;
    double r = 0;
    // Oracle against the reduction: probe-mean transport versus G, output covariance versus
    // G cov G^T + N N^T epsilon / 2.
    double max_mean_dev = 0;
    double max_cov_dev = 0;
    // ||G - target||_1 of the plan itself, held to the optimizer acceptance tolerance.
    double target_residual = 0;
    bool pass = false;
};

nlohmann::json report_to_json(const VerifyReport &report);

// Passes when both oracle deviations are within tol and the plan meets its target to 1e-5.
VerifyReport verify_plan(const GatePlan &plan, double tol);

// tol scaled by the plan's largest added variance when that exceeds 1. Weakly squeezed
// coupling regions add variances far above unity, where an absolute tol is below rounding.
double scaled_tolerance(const GatePlan &plan, double tol);

struct WignerGrid {
    int points = 4096;
    // Half-width of the grid in units of the widest intermediate standard deviation.
    double sigmas = 10;
};

struct WignerReport {
    Lattice lattice = Lattice::DBSL;
    double r = 0;
    double grid_var_x = 0;
    double grid_var_p = 0;
    double oracle_var_x = 0;
    double oracle_var_p = 0;
    double max_rel_dev = 0;
    double t0_var_x = 0;
    double t0_var_p = 0;
    double t0_rel_dev = 0;
    bool pass = false;
};

nlohmann::json report_to_json(const WignerReport &report);

// Output second moments of the one-step identity gate from the Wigner convolution/envelope chain,
// evaluated on a grid for a diagonal Gaussian probe. t = 0 gives the unentangled limit.
std::pair<double, double> wigner_identity_moments(Lattice lattice, double t, double epsilon, double probe_vx,
                                                  double probe_vp, const WignerGrid &grid);

WignerReport wigner_limit_check(Lattice lattice, double r, const WignerGrid &grid, double tol = 1e-4);

}  // namespace cvmbqc

#endif
