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

#ifndef CVMBQC_GATES_H
#define CVMBQC_GATES_H

#include <string>
#include <vector>

#include "cvmbqc/lattice.h"
#include "cvmbqc/reduction.h"

namespace cvmbqc {

enum class GateId { I, F, P1, CZ, FFCZ, SWAP, S_INV_T };

std::string gate_name(GateId gate);
GateId parse_gate(const std::string &name);
bool is_two_mode(GateId gate);

// Fourier exponents (n, m) apply to FFCZ as (F^n x F^m) C_Z(1); `t` is used by S_INV_T only.
Mat target_symplectic(GateId gate, int n = 1, int m = 1, double t = 1.0);

struct PlanStep {
    ComputationGraph graph;
    std::vector<double> angles;
    double theta_c = 0;
};

struct GatePlan {
    Lattice lattice = Lattice::TELEPORT;
    GateId gate = GateId::I;
    double r = 0;
    int parity = 0;
    std::vector<PlanStep> steps;
    // Wire kept when a multi-wire step implements a single-mode gate; -1 keeps all wires.
    int wire = -1;
    Mat target;
    Mat byproduct;
};

GateResult run_plan(const GatePlan &plan);
double plan_residual(const GatePlan &plan);
double plan_residual(const GatePlan &plan, const GateResult &result);
// Added variance per output quadrature: noise factors times epsilon / 2.
Vec plan_noise_variances(const GatePlan &plan);

// Effective edge weight t' of one single-mode step, so that the step implements
// S(t') R(theta_+/2) S(tan(theta_-/2)) R(theta_+/2).
double single_step_gain(Lattice lattice, double r, int parity, double theta_c);
double single_step_gain(Lattice lattice, double r, int parity = 0);

// Expands (theta_+, theta_-) of one step into the graph's free-angle vector.
std::vector<double> step_angles(Lattice lattice, double theta_plus, double theta_minus);

GatePlan basis_for(Lattice lattice, GateId gate, double r, int parity, double theta_c);
GatePlan basis_for(Lattice lattice, GateId gate, double r, int parity = 0);

// Two-mode region plan for the (F^n x F^m) C_Z(1) target with the lattice's by-product exponents.
GatePlan cz_plan(Lattice lattice, double r, int parity, const std::vector<double> &angles, double theta_c);
GatePlan cz_plan(Lattice lattice, double r, int parity, const std::vector<double> &angles);
std::pair<int, int> ffcz_exponents(Lattice lattice, int parity);

// Maps region angles optimized for even parity onto the odd-parity region.
std::vector<double> flip_parity(Lattice lattice, const std::vector<double> &angles);

// Infinite-squeezing DBSL coupling angles, implementing (R(pi/4) x R(pi/4)) C_Z(g) as t -> 1/2.
std::vector<double> dbsl_ideal_cz_angles(double g, int parity);

GatePlan qrl_cz_plan(double r);
GatePlan qrl_compensation_plan(double r);
GatePlan dbsl_swap_plan(double r);

// Every closed-form plan: I, F, P1 on all lattices (both parities where they differ), QRL FFCZ,
// QRL compensation and the DBSL swap.
std::vector<GatePlan> closed_form_plans(double r);

std::string plan_name(const GatePlan &plan);

}  // namespace cvmbqc

#endif
