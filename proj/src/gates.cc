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

#include "cvmbqc/gates.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvmbqc/errors.h"

namespace cvmbqc {

namespace {

// Exact integer powers of F = [[0, 1], [-1, 0]], avoiding cos(pi/2) round-off.
Mat fourier_power(int n) {
    int k = ((n % 4) + 4) % 4;
    Mat F(2, 2);
    F << 0, 1, -1, 0;
    Mat out = Mat::Identity(2, 2);
    for (int i = 0; i < k; i++) {
        out = F * out;
    }
    return out;
}

bool near(double a, double b) {
    return std::abs(a - b) <= 1e-14;
}

void require_positive_r(double r) {
    if (!(r > 0) || !std::isfinite(r)) {
        throw DomainError("closed-form plans need r > 0");
    }
}

GatePlan single_mode_plan(Lattice lattice, GateId gate, double r, int parity, double theta_c,
                          const std::vector<std::pair<double, double>> &pm) {
    LatticeParams params = make_params(lattice, r);
    ComputationGraph g = single_step_graph(params, parity, theta_c);
    GatePlan plan;
    plan.lattice = lattice;
    plan.gate = gate;
    plan.r = r;
    plan.parity = parity;
    for (const auto &[tp, tm] : pm) {
        plan.steps.push_back({g, step_angles(lattice, tp, tm), theta_c});
    }
    plan.wire = (lattice == Lattice::QRL) ? 0 : -1;
    plan.target = target_symplectic(gate);
    plan.byproduct = Mat::Identity(2, 2);
    return plan;
}

}  // namespace

std::string gate_name(GateId gate) {
    switch (gate) {
        case GateId::I:
            return "I";
        case GateId::F:
            return "F";
        case GateId::P1:
            return "P1";
        case GateId::CZ:
            return "CZ";
        case GateId::FFCZ:
            return "FFCZ";
        case GateId::SWAP:
            return "SWAP";
        case GateId::S_INV_T:
            return "S_INV_T";
    }
    throw InvalidParameter("unknown gate");
}

GateId parse_gate(const std::string &name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return std::toupper(ch); });
    for (GateId g : {GateId::I, GateId::F, GateId::P1, GateId::CZ, GateId::FFCZ, GateId::SWAP, GateId::S_INV_T}) {
        if (gate_name(g) == up) {
            return g;
        }
    }
    throw InvalidParameter("unknown gate '" + name + "'");
}

bool is_two_mode(GateId gate) {
    return gate == GateId::CZ || gate == GateId::FFCZ || gate == GateId::SWAP;
}

Mat target_symplectic(GateId gate, int n, int m, double t) {
    switch (gate) {
        case GateId::I:
            return Mat::Identity(2, 2);
        case GateId::F:
            return fourier_power(1);
        case GateId::P1:
            return shear(1.0);
        case GateId::CZ:
            return cz(1.0);
        case GateId::FFCZ:
            return compose({cz(1.0), direct_sum({fourier_power(n), fourier_power(m)})});
        case GateId::SWAP: {
            Mat P = Mat::Zero(4, 4);
            P(0, 1) = P(1, 0) = P(2, 3) = P(3, 2) = 1;
            return P;
        }
        case GateId::S_INV_T:
            return squeeze(1.0 / t);
    }
    throw InvalidParameter("unknown gate");
}

GateResult run_plan(const GatePlan &plan) {
    if (plan.steps.empty()) {
        throw InvalidParameter("plan has no steps");
    }
    std::vector<GateResult> results;
    for (const auto &s : plan.steps) {
        results.push_back(reduce(s.graph, s.angles, s.theta_c));
    }
    GateResult out = chain(results);
    if (plan.wire >= 0) {
        out = restrict_to_wire(out, plan.wire);
    }
    return out;
}

double plan_residual(const GatePlan &plan, const GateResult &result) {
    Mat expected = plan.byproduct * plan.target;
    if (expected.rows() != result.G.rows() || expected.cols() != result.G.cols()) {
        throw DimensionError("plan target does not match implemented gate size");
    }
    return entrywise_l1(result.G - expected);
}

double plan_residual(const GatePlan &plan) {
    return plan_residual(plan, run_plan(plan));
}

Vec plan_noise_variances(const GatePlan &plan) {
    return noise_factors(run_plan(plan)) * (effective_epsilon(plan.r) / 2);
}

double single_step_gain(Lattice lattice, double r, int parity, double theta_c) {
    LatticeParams p = make_params(lattice, r);
    double s = (parity % 2 == 0) ? 1.0 : -1.0;
    switch (lattice) {
        case Lattice::TELEPORT:
        case Lattice::QRL:
            return p.t;
        case Lattice::DBSL:
            return s * 4 * p.t * p.t * std::tan(theta_c);
        case Lattice::BSL:
            if (near(theta_c, M_PI / 4)) {
                return -s * 2 * p.t * p.t;
            }
            break;
        case Lattice::MBSL:
            if (near(theta_c, M_PI / 2)) {
                return 2 * p.t;
            }
            if (near(theta_c, 0.0)) {
                return p.t;
            }
            break;
    }
    throw InvalidParameter("no single-mode closed form for this control basis on " + lattice_name(lattice));
}

double single_step_gain(Lattice lattice, double r, int parity) {
    return single_step_gain(lattice, r, parity, default_theta_c(lattice));
}

std::vector<double> step_angles(Lattice lattice, double theta_plus, double theta_minus) {
    double first = (theta_plus + theta_minus) / 2;
    double second = (theta_plus - theta_minus) / 2;
    if (lattice == Lattice::QRL) {
        return {first, first, second, second};
    }
    return {first, second};
}

GatePlan basis_for(Lattice lattice, GateId gate, double r, int parity, double theta_c) {
    require_positive_r(r);
    double tp = single_step_gain(lattice, r, parity, theta_c);
    switch (gate) {
        case GateId::I:
            return single_mode_plan(lattice, gate, r, parity, theta_c, {{0.0, 2 * std::atan(1 / tp)}});
        case GateId::F:
            return single_mode_plan(lattice, gate, r, parity, theta_c,
                                    {{M_PI / 2, M_PI / 2}, {0.0, 2 * std::atan(1 / (tp * tp))}});
        case GateId::P1:
            return single_mode_plan(lattice, gate, r, parity, theta_c,
                                    {{std::atan(2.0), -std::atan(2.0)}, {M_PI / 2, M_PI / 2}});
        default:
            break;
    }
    throw InvalidParameter("basis_for covers I, F and P1 only, got " + gate_name(gate));
}

GatePlan basis_for(Lattice lattice, GateId gate, double r, int parity) {
    return basis_for(lattice, gate, r, parity, default_theta_c(lattice));
}

std::pair<int, int> ffcz_exponents(Lattice lattice, int parity) {
    int s = (parity % 2 == 0) ? 1 : -1;
    switch (lattice) {
        case Lattice::DBSL:
            return {1, s};
        case Lattice::BSL:
            return {1, -s};
        case Lattice::MBSL:
        case Lattice::QRL:
            return {1, 1};
        case Lattice::TELEPORT:
            break;
    }
    throw UnsupportedLattice("no two-mode gate on " + lattice_name(lattice));
}

GatePlan cz_plan(Lattice lattice, double r, int parity, const std::vector<double> &angles, double theta_c) {
    if (lattice == Lattice::QRL) {
        throw UnsupportedLattice("QRL coupling uses qrl_cz_plan");
    }
    LatticeParams params = make_params(lattice, r);
    std::vector<ComputationGraph> graphs = cz_region_graphs(params, parity, theta_c);
    GatePlan plan;
    plan.lattice = lattice;
    plan.gate = GateId::FFCZ;
    plan.r = r;
    plan.parity = parity;
    plan.steps.push_back({graphs.front(), angles, theta_c});
    auto [n, m] = ffcz_exponents(lattice, parity);
    plan.target = target_symplectic(GateId::FFCZ, n, m);
    plan.byproduct = Mat::Identity(4, 4);
    return plan;
}

GatePlan cz_plan(Lattice lattice, double r, int parity, const std::vector<double> &angles) {
    return cz_plan(lattice, r, parity, angles, default_theta_c(lattice));
}

std::vector<double> flip_parity(Lattice lattice, const std::vector<double> &angles) {
    std::vector<double> out = angles;
    switch (lattice) {
        case Lattice::DBSL:
            for (int i : {2, 3, 5, 6, 7, 9}) {
                out.at(i) = -out.at(i);
            }
            break;
        case Lattice::BSL:
            for (double &a : out) {
                a = -a;
            }
            break;
        default:
            break;
    }
    return out;
}

std::vector<double> dbsl_ideal_cz_angles(double g, int parity) {
    double s = (parity % 2 == 0) ? 1.0 : -1.0;
    double a = std::atan(g / 2);
    return {s * 3 * M_PI / 8, -s * M_PI / 8, s * 3 * M_PI / 8, -s * M_PI / 8, s * M_PI / 4 - a,
            -s * M_PI / 4,    s * M_PI / 4 + a, s * M_PI / 4 + a, s * M_PI / 4 - a, -s * M_PI / 4};
}

GatePlan qrl_cz_plan(double r) {
    require_positive_r(r);
    LatticeParams params = make_params(Lattice::QRL, r);
    std::vector<ComputationGraph> graphs = cz_region_graphs(params, 0);
    double a = std::atan(0.5);
    // Free modes are ordered (C, B, A, D).
    std::vector<double> coupling = {-(M_PI / 2 + a), 0.0, -(M_PI / 2 - a), 0.0};
    double tt = params.t * params.t;
    GatePlan plan;
    plan.lattice = Lattice::QRL;
    plan.gate = GateId::FFCZ;
    plan.r = r;
    plan.steps.push_back({graphs[0], coupling, 0.0});
    plan.steps.push_back({graphs[1], step_angles(Lattice::QRL, 0.0, 2 * std::atan(1 / tt)), 0.0});
    plan.target = target_symplectic(GateId::FFCZ, 1, 1);
    plan.byproduct = Mat::Identity(4, 4);
    return plan;
}

GatePlan qrl_compensation_plan(double r) {
    require_positive_r(r);
    LatticeParams params = make_params(Lattice::QRL, r);
    GatePlan plan;
    plan.lattice = Lattice::QRL;
    plan.gate = GateId::S_INV_T;
    plan.r = r;
    double tt = params.t * params.t;
    plan.steps.push_back({single_step_graph(params, 0), step_angles(Lattice::QRL, 0.0, 2 * std::atan(1 / tt)), 0.0});
    Mat s = target_symplectic(GateId::S_INV_T, 1, 1, params.t);
    plan.target = direct_sum({s, s});
    plan.byproduct = Mat::Identity(4, 4);
    return plan;
}

GatePlan dbsl_swap_plan(double r) {
    LatticeParams params = make_params(Lattice::DBSL, r);
    GatePlan plan;
    plan.lattice = Lattice::DBSL;
    plan.gate = GateId::SWAP;
    plan.r = r;
    double q = M_PI / 4;
    double h = M_PI / 2;
    std::vector<double> angles = {q, -q, q, -q, h, 0, h, 0, h, 0};
    plan.steps.push_back({cz_region_graphs(params, 0).front(), angles, default_theta_c(Lattice::DBSL)});
    plan.target = target_symplectic(GateId::SWAP);
    plan.byproduct = direct_sum({fourier_power(1), fourier_power(1)});
    return plan;
}

std::vector<GatePlan> closed_form_plans(double r) {
    std::vector<GatePlan> out;
    for (Lattice l : {Lattice::TELEPORT, Lattice::DBSL, Lattice::BSL, Lattice::MBSL, Lattice::QRL}) {
        int parities = (l == Lattice::DBSL || l == Lattice::BSL) ? 2 : 1;
        for (int p = 0; p < parities; p++) {
            for (GateId g : {GateId::I, GateId::F, GateId::P1}) {
                out.push_back(basis_for(l, g, r, p));
            }
        }
    }
    for (GateId g : {GateId::I, GateId::F, GateId::P1}) {
        out.push_back(basis_for(Lattice::MBSL, g, r, 0, 0.0));
    }
    out.push_back(qrl_cz_plan(r));
    out.push_back(qrl_compensation_plan(r));
    out.push_back(dbsl_swap_plan(r));
    return out;
}

std::string plan_name(const GatePlan &plan) {
    std::ostringstream os;
    os << lattice_name(plan.lattice) << "/" << gate_name(plan.gate) << "/p" << plan.parity;
    if (!plan.steps.empty() && !plan.steps.front().graph.control_signs.empty() &&
        !near(plan.steps.front().theta_c, default_theta_c(plan.lattice))) {
        os << "/tc=" << plan.steps.front().theta_c;
    }
    return os.str();
}

}  // namespace cvmbqc
