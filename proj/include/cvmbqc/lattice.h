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

#ifndef CVMBQC_LATTICE_H
#define CVMBQC_LATTICE_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cvmbqc/symplectic.h"

namespace cvmbqc {

enum class Lattice { TELEPORT, DBSL, BSL, MBSL, QRL };

std::string lattice_name(Lattice lattice);
Lattice parse_lattice(const std::string &name);

struct LatticeParams {
    Lattice lattice;
    double r;
    double t;
    double epsilon;
};

double effective_epsilon(double r);
double edge_weight(Lattice lattice, double r);
double db_to_r(double squeezing_db);
double r_to_db(double r);

// For TELEPORT the edge weight is caller-supplied in (0, 1]; pass teleport_t < 0 to use tanh(2r).
LatticeParams make_params(Lattice lattice, double r, double teleport_t = -1.0);

// Default control-mode basis: pi/4 on DBSL and BSL, pi/2 on MBSL, unused elsewhere.
double default_theta_c(Lattice lattice);

struct ComputationGraph {
    Lattice lattice = Lattice::TELEPORT;
    double r = 0;
    double t = 0;
    double epsilon = 1;
    int parity = 0;
    int n_modes = 0;
    Mat adjacency;
    // Inputs are measured jointly with ancillas; measured_modes lists the measured ancillas only,
    // so the three lists partition the modes.
    std::vector<int> input_modes;
    std::vector<int> measured_modes;
    std::vector<int> output_modes;
    std::vector<std::pair<int, int>> mixing_pairs;
    std::vector<std::string> labels;
    // Measured modes (inputs included) whose angles form the basis vector, in basis order.
    std::vector<int> free_modes;
    // Control modes measured at sign * theta_c.
    std::map<int, double> control_signs;
    double theta_c = 0;

    std::map<int, double> angles(const std::vector<double> &free_angles) const;
    std::map<int, double> angles(const std::vector<double> &free_angles, double theta_c_override) const;
    std::vector<int> ancilla_modes() const;
};

ComputationGraph single_step_graph(const LatticeParams &params, int parity, double theta_c);
ComputationGraph single_step_graph(const LatticeParams &params, int parity = 0);

// The region coupling two neighbouring wires over two computation steps. DBSL, BSL and MBSL
// return one graph; QRL returns the coupling step followed by the compensation step.
std::vector<ComputationGraph> cz_region_graphs(const LatticeParams &params, int parity, double theta_c);
std::vector<ComputationGraph> cz_region_graphs(const LatticeParams &params, int parity = 0);

nlohmann::json graph_to_json(const ComputationGraph &graph);

}  // namespace cvmbqc

#endif
