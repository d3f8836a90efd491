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

#ifndef CVMBQC_REDUCTION_H
#define CVMBQC_REDUCTION_H

#include <map>
#include <vector>

#include "cvmbqc/lattice.h"
#include "cvmbqc/symplectic.h"

namespace cvmbqc {

// Output quadratures (x_out..., p_out...) = G (x_in..., p_in...) + N p_anc + D m, where p_anc are
// the squeezed ancilla momenta (listed in contributing_modes) and m are the homodyne outcomes.
struct GateResult {
    Mat G;
    Mat N;
    Mat D;
    std::vector<int> contributing_modes;
};

// Full symplectic matrix S_R S_BS S_CZ of the graph before measurement.
Mat graph_symplectic(const ComputationGraph &graph, const std::map<int, double> &angles);

GateResult reduce(const ComputationGraph &graph, const std::map<int, double> &angles);
GateResult reduce(const ComputationGraph &graph, const std::vector<double> &free_angles);
GateResult reduce(const ComputationGraph &graph, const std::vector<double> &free_angles, double theta_c);

// Sequential composition: the outputs of step i feed the inputs of step i + 1.
GateResult chain(const std::vector<GateResult> &steps);

// Restricts a product gate to the wire at output/input position `wire`.
GateResult restrict_to_wire(const GateResult &result, int wire);

// Row sums of N squared; the added variance of output quadrature i is epsilon/2 times entry i.
Vec noise_factors(const GateResult &result);

}  // namespace cvmbqc

#endif
