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

#include "gtest/gtest.h"

#include "cvmbqc/errors.h"

using namespace cvmbqc;

namespace {

// erfc by composite Simpson quadrature of 2/sqrt(pi) exp(-s^2) over [z, z + 12].
double erfc_quadrature(double z) {
    const int n = 200000;
    const double h = 12.0 / n;
    double acc = 0;
    for (int i = 0; i <= n; i++) {
        double s = z + i * h;
        double w = (i == 0 || i == n) ? 1 : (i % 2 == 1 ? 4 : 2);
        acc += w * std::exp(-s * s);
    }
    return acc * h / 3 * 2 / std::sqrt(M_PI);
}

Vec vec(std::initializer_list<double> v) {
    Vec out(v.size());
    int i = 0;
    for (double x : v) {
        out(i++) = x;
    }
    return out;
}

}  // namespace

TEST(gkp, spike_propagation_examples) {
    const double d = 0.0137;
    EXPECT_EQ(propagate_spikes(Mat::Identity(2, 2), Vec::Zero(2), d), vec({d, d}));
    Vec f = propagate_spikes(fourier(), Vec::Zero(2), d);
    EXPECT_NEAR(f(0), d, 1e-18);
    EXPECT_NEAR(f(1), d, 1e-18);
    EXPECT_EQ(propagate_spikes(shear(1), Vec::Zero(2), d), vec({d, 2 * d}));
    EXPECT_EQ(propagate_spikes(cz(1), Vec::Zero(4), d), vec({d, d, 2 * d, 2 * d}));
    EXPECT_EQ(propagate_spikes(Mat::Identity(2, 2), vec({0.1, 0.2}), d), vec({d + 0.1, d + 0.2}));
    EXPECT_THROW(propagate_spikes(Mat::Identity(2, 2), Vec::Zero(3), d), DimensionError);
}

TEST(gkp, spike_variance_definition) {
    EXPECT_EQ(spike_variance(0), 0.5);
    EXPECT_NEAR(spike_variance(1.3), std::exp(-2.6) / 2, 1e-17);
    EXPECT_THROW(spike_variance(-1), DomainError);
}

TEST(gkp, single_quadrature_probability) {
    double p = error_probability(vec({0.03}), 0.02);
    double z = std::sqrt(M_PI) / (2 * std::sqrt(0.1));
    EXPECT_NEAR(p / erfc_quadrature(z), 1, 1e-10);
    EXPECT_NEAR(p, 1 - std::erf(z), 1e-15);
}

TEST(gkp, probability_combines_quadratures) {
    double a = error_probability(vec({0.03}), 0.02);
    double b = error_probability(vec({0.05}), 0.02);
    EXPECT_NEAR(error_probability(vec({0.03, 0.05}), 0.02), 1 - (1 - a) * (1 - b), 1e-15);
}

TEST(gkp, probability_limits) {
    EXPECT_LT(error_probability(vec({1e-6, 1e-6}), 1e-6), 1e-300);
    EXPECT_GT(error_probability(vec({1e6, 1e6}), 1e6), 0.999);
    EXPECT_EQ(error_probability(vec({INFINITY}), 0.1), 1.0);
    EXPECT_THROW(error_probability(vec({0.0}), 0.1), DomainError);
    EXPECT_THROW(error_probability(vec({-0.1}), 0.1), DomainError);
}

TEST(gkp, probability_is_monotone) {
    double prev = 0;
    for (double v = 0.005; v < 3; v *= 1.2) {
        double p = error_probability(vec({v, 0.01}), 0.01);
        EXPECT_GE(p, prev);
        EXPECT_LE(p, 1.0);
        prev = p;
    }
    prev = 0;
    for (double d = 0.001; d < 3; d *= 1.2) {
        double p = error_probability(vec({0.02, 0.01}), d);
        EXPECT_GE(p, prev);
        prev = p;
    }
}

TEST(gkp, small_probabilities_keep_precision) {
    double v = 0.004;
    double p = error_probability(vec({v, v}), v);
    double c = std::erfc(std::sqrt(M_PI) / (2 * std::sqrt(4 * v)));
    EXPECT_GT(p, 0);
    EXPECT_NEAR(p / (2 * c - c * c), 1, 1e-12);
}

TEST(gkp, correction_shift_examples) {
    const double s = std::sqrt(M_PI);
    EXPECT_EQ(correction_shift(0), 0.0);
    EXPECT_NEAR(correction_shift(s / 4), -s / 4, 1e-15);
    EXPECT_NEAR(correction_shift(0.9 * s), 0.1 * s, 1e-15);
    EXPECT_NEAR(correction_shift(3 * s + 0.2), -0.2, 1e-12);
    EXPECT_NEAR(correction_shift(-0.2), 0.2, 1e-15);
}

TEST(gkp, gate_budget_consistency) {
    double r = db_to_r(12);
    GatePlan plan = basis_for(Lattice::DBSL, GateId::P1, r);
    GkpBudget b = gate_budget(plan);
    EXPECT_EQ(b.delta, spike_variance(r));
    for (int i = 0; i < 2; i++) {
        EXPECT_GE(b.delta_prime(i), b.sigma2(i));
        EXPECT_GE(b.sigma2(i), 0);
    }
    EXPECT_NEAR(b.delta_prime(1) - b.sigma2(1), 2 * b.delta, 1e-15);
    EXPECT_EQ(b.perr, gate_error_probability(plan));
}

TEST(gkp, gate_probability_limits_and_ordering) {
    EXPECT_EQ(gate_error_probability(basis_for(Lattice::DBSL, GateId::I, 1.0)), gate_budget(basis_for(Lattice::DBSL, GateId::I, 1.0)).perr);
    GatePlan zero = basis_for(Lattice::DBSL, GateId::I, 1.0);
    zero.r = 0;
    EXPECT_EQ(gate_error_probability(zero), 1.0);
    EXPECT_GT(gate_error_probability(basis_for(Lattice::DBSL, GateId::I, 1e-3)), 0.99);
    EXPECT_LT(gate_error_probability(basis_for(Lattice::DBSL, GateId::I, db_to_r(40))), 1e-12);
    for (double db : {8.0, 12.0, 16.0, 20.0}) {
        double r = db_to_r(db);
        double pi = gate_error_probability(basis_for(Lattice::DBSL, GateId::I, r));
        double pf = gate_error_probability(basis_for(Lattice::DBSL, GateId::F, r));
        double pp = gate_error_probability(basis_for(Lattice::DBSL, GateId::P1, r));
        EXPECT_LT(pi, pf);
        EXPECT_LT(pi, pp);
        double pq = gate_error_probability(basis_for(Lattice::QRL, GateId::P1, r));
        EXPECT_LT(pq, gate_error_probability(qrl_cz_plan(r)));
    }
}

TEST(gkp, zero_noise_baseline_is_a_lower_bound) {
    for (double db : {5.0, 10.0, 15.0}) {
        double r = db_to_r(db);
        GatePlan plan = basis_for(Lattice::MBSL, GateId::I, r);
        EXPECT_LT(zero_noise_error_probability(plan.target, r), gate_error_probability(plan));
    }
}
