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


#include "cvmbqc/reduction.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "cvmbqc/errors.h"
#include "cvmbqc/oracle.h"

using namespace cvmbqc;

namespace {

double max_abs(const Mat &A) {
    return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

Mat teleport_G(double t, double t1, double t2) {
    double tp = t1 + t2;
    double tm = t1 - t2;
    Mat G(2, 2);
    G << (std::cos(tp) + std::cos(tm)) / t, std::sin(tp) / t, -t * std::sin(tp), t * (std::cos(tp) - std::cos(tm));
    return G / std::sin(tm);
}

std::vector<double> random_angles(std::mt19937 &rng, size_t n) {
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    std::vector<double> a(n);
    for (double &x : a) {
        x = u(rng);
    }
    return a;
}

// Mean transport and output covariance for an identity input covariance, from the information-form oracle.
void oracle_map(const ComputationGraph &g, const std::map<int, double> &angles, Mat *G, Mat *cov) {
    int d = 2 * static_cast<int>(g.input_modes.size());
    GaussianState base = GaussianState::vacuum(d / 2);
    base.cov = Mat::Identity(d, d);
    GaussianState zero = run_graph(g, angles, base, false);
    *G = Mat(d, d);
    for (int k = 0; k < d; k++) {
        GaussianState in = base;
        in.mean(k) = 1;
        G->col(k) = run_graph(g, angles, in, false).mean - zero.mean;
    }
    *cov = zero.cov;
}

}  // namespace

TEST(reduction, teleport_matches_closed_forms) {
    for (double r : {0.3, 1.0}) {
        ComputationGraph g = single_step_graph(make_params(Lattice::TELEPORT, r));
        double t = g.t;
        for (auto [t1, t2] : {std::pair{0.4, -0.9}, std::pair{1.3, 0.2}, std::pair{-2.0, 0.7}}) {
            GateResult res = reduce(g, std::vector<double>{t1, t2});
            EXPECT_LT(max_abs(res.G - teleport_G(t, t1, t2)), 1e-12);
            Mat N(2, 2);
            N << -1 / t, 0, 0, 1;
            EXPECT_LT(max_abs(res.N - N), 1e-12);
            Mat D(2, 2);
            D << -std::cos(t2) / t, -std::cos(t1) / t, t * std::sin(t2), t * std::sin(t1);
            D *= std::sqrt(2.0) / std::sin(t1 - t2);
            EXPECT_LT(max_abs(res.D - D), 1e-12);
        }
    }
}

TEST(reduction, teleport_gate_decomposition) {
    double r = 0.6;
    ComputationGraph g = single_step_graph(make_params(Lattice::TELEPORT, r));
    double tp = 0.8;
    double tm = 1.9;
    GateResult res = reduce(g, std::vector<double>{(tp + tm) / 2, (tp - tm) / 2});
    Mat U = squeeze(g.t) * rotation(tp / 2) * squeeze(std::tan(tm / 2)) * rotation(tp / 2);
    EXPECT_LT(max_abs(res.G - U), 1e-12);
}

TEST(reduction, equal_angles_are_degenerate) {
    ComputationGraph g = single_step_graph(make_params(Lattice::TELEPORT, 1));
    EXPECT_THROW(reduce(g, std::vector<double>{0.4, 0.4}), MeasurementDegenerate);
}

TEST(reduction, rejects_malformed_input) {
    ComputationGraph g = single_step_graph(make_params(Lattice::TELEPORT, 1));
    EXPECT_THROW(reduce(g, std::map<int, double>{{0, 0.1}}), InvalidParameter);
    ComputationGraph bad = g;
    bad.adjacency(0, 1) = 0.5;
    EXPECT_THROW(reduce(bad, std::vector<double>{0.1, 0.5}), InvalidParameter);
    bad = g;
    bad.output_modes = {1};
    EXPECT_THROW(reduce(bad, std::vector<double>{0.1, 0.5}), InvalidParameter);
    bad = g;
    bad.mixing_pairs = {{0, 5}};
    EXPECT_THROW(reduce(bad, std::vector<double>{0.1, 0.5}), IndexError);
}

TEST(reduction, gate_is_symplectic_for_random_bases) {
    std::mt19937 rng(11);
    for (Lattice l : {Lattice::TELEPORT, Lattice::DBSL, Lattice::BSL, Lattice::MBSL, Lattice::QRL}) {
        ComputationGraph g = single_step_graph(make_params(l, 0.8), 0);
        for (int trial = 0; trial < 20; trial++) {
            try {
                GateResult res = reduce(g, random_angles(rng, g.free_modes.size()));
                EXPECT_TRUE(check_symplectic(res.G, 1e-8 * std::max(1.0, max_abs(res.G) * max_abs(res.G))));
            } catch (const MeasurementDegenerate &) {
            }
        }
    }
}

TEST(reduction, agrees_with_oracle_for_random_bases) {
    std::mt19937 rng(5);
    for (Lattice l : {Lattice::TELEPORT, Lattice::DBSL, Lattice::BSL, Lattice::MBSL, Lattice::QRL}) {
        std::vector<ComputationGraph> graphs = {single_step_graph(make_params(l, 0.7), 0),
                                                single_step_graph(make_params(l, 0.7), 1)};
        if (l != Lattice::TELEPORT) {
            for (const auto &g : cz_region_graphs(make_params(l, 0.7), 0)) {
                graphs.push_back(g);
            }
        }
        for (const auto &g : graphs) {
            for (int trial = 0; trial < 3; trial++) {
                auto angles = g.angles(random_angles(rng, g.free_modes.size()));
                GateResult res = reduce(g, angles);
                if (max_abs(res.G) > 50) {
                    // Near-degenerate bases amplify rounding in both engines alike.
                    continue;
                }
                Mat G;
                Mat cov;
                oracle_map(g, angles, &G, &cov);
                double scale = std::max(1.0, max_abs(res.G));
                EXPECT_LT(max_abs(G - res.G), 1e-9 * scale) << lattice_name(l);
                Mat expected = res.G * res.G.transpose() + res.N * res.N.transpose() * (g.epsilon / 2);
                EXPECT_LT(max_abs(cov - expected), 1e-9 * std::max(1.0, max_abs(expected))) << lattice_name(l);
            }
        }
    }
}

TEST(reduction, published_noise_matrices) {
    for (double r : {0.5, 1.0, 2.0}) {
        {
            auto g = single_step_graph(make_params(Lattice::DBSL, r), 0);
            double t = g.t;
            GateResult res = reduce(g, std::vector<double>{0.3, -1.1});
            // Columns: p of A[k-1], A[k], A[k+1], B[k+N-1], B[k+N], B[k+N+1].
            std::vector<int> order = {2, 1, 4, 3, 6, 5};
            std::vector<std::string> expect_labels = {"A[k-1]", "A[k]", "A[k+1]", "B[k+N-1]", "B[k+N]", "B[k+N+1]"};
            Mat N(2, 6);
            for (int c = 0; c < 6; c++) {
                int mode = order[c];
                EXPECT_EQ(g.labels[mode], expect_labels[c]);
                auto it = std::find(res.contributing_modes.begin(), res.contributing_modes.end(), mode);
                ASSERT_NE(it, res.contributing_modes.end());
                N.col(c) = res.N.col(it - res.contributing_modes.begin());
            }
            Mat expected(2, 6);
            expected << 1 / (4 * t), -1 / (4 * t * t), -1 / (4 * t), 1 / (4 * t), 0, 1 / (4 * t), t, 0, t, t, 1, -t;
            EXPECT_LT(max_abs(N - expected), 1e-12) << "r=" << r;
        }
        {
            auto g = single_step_graph(make_params(Lattice::BSL, r), 0);
            double t = g.t;
            GateResult res = reduce(g, std::vector<double>{0.3, -1.1});
            Mat expected(2, 4);
            expected << 1 / (2 * t * t), 1 / (2 * t), -1 / (2 * t), 0, 0, -t, -t, 1;
            EXPECT_LT(max_abs(res.N - expected), 1e-12) << "r=" << r;
        }
        {
            auto g = single_step_graph(make_params(Lattice::MBSL, r), 0);
            double t = g.t;
            GateResult res = reduce(g, std::vector<double>{0.3, -1.1});
            Mat expected(2, 4);
            expected << -1 / (2 * t), -1 / (2 * t), 0, 0, 0, 0, -1, 1;
            EXPECT_LT(max_abs(res.N - expected), 1e-12) << "r=" << r;
            GateResult res0 = reduce(g, std::vector<double>{0.3, -1.1}, 0.0);
            Mat expected0(2, 4);
            expected0 << -1 / t, 0, 0, 0, 0, 0, 0, 1;
            EXPECT_LT(max_abs(res0.N - expected0), 1e-12) << "r=" << r;
        }
    }
}

TEST(reduction, noise_matrix_is_basis_independent_for_one_step) {
    for (Lattice l : {Lattice::TELEPORT, Lattice::DBSL, Lattice::BSL, Lattice::MBSL}) {
        auto g = single_step_graph(make_params(l, 0.9), 0);
        GateResult a = reduce(g, std::vector<double>{0.3, -1.1});
        GateResult b = reduce(g, std::vector<double>{2.0, 0.4});
        EXPECT_LT(max_abs(a.N - b.N), 1e-12) << lattice_name(l);
    }
}

TEST(reduction, chain_formula) {
    auto g = single_step_graph(make_params(Lattice::TELEPORT, 0.7));
    GateResult s1 = reduce(g, std::vector<double>{0.4, -0.9});
    GateResult s2 = reduce(g, std::vector<double>{1.3, 0.2});
    GateResult c = chain({s1, s2});
    EXPECT_LT(max_abs(c.G - s2.G * s1.G), 1e-13);
    ASSERT_EQ(c.N.cols(), 4);
    EXPECT_LT(max_abs(c.N.leftCols(2) - s2.G * s1.N), 1e-13);
    EXPECT_LT(max_abs(c.N.rightCols(2) - s2.N), 1e-13);
    EXPECT_LT(max_abs(c.D.leftCols(2) - s2.G * s1.D), 1e-13);
    EXPECT_LT(max_abs(c.D.rightCols(2) - s2.D), 1e-13);
    EXPECT_EQ(chain({s1}).G, s1.G);

    GateResult ident{Mat::Identity(2, 2), Mat::Zero(2, 0), Mat::Zero(2, 0), {}};
    GateResult c2 = chain({ident, s2});
    EXPECT_EQ(c2.G, s2.G);
    EXPECT_EQ(c2.N, s2.N);
    EXPECT_THROW(chain({}), DimensionError);
}

TEST(reduction, two_step_teleport_fourier_has_equal_noise) {
    double r = 0.9;
    auto g = single_step_graph(make_params(Lattice::TELEPORT, r));
    double t = g.t;
    auto bases = [](double tp, double tm) { return std::vector<double>{(tp + tm) / 2, (tp - tm) / 2}; };
    GateResult c = chain({reduce(g, bases(M_PI / 2, M_PI / 2)), reduce(g, bases(0, 2 * std::atan(1 / (t * t))))});
    EXPECT_LT(max_abs(c.G - fourier()), 1e-12);
    Vec nf = noise_factors(c);
    double nx = 1 / (t * t);
    double np = 1;
    EXPECT_NEAR(nf(0), nx + np, 1e-12);
    EXPECT_NEAR(nf(1), nx + np, 1e-12);
}

TEST(reduction, single_step_noise_factors) {
    for (double r : {0.4, 1.0, 2.5}) {
        double th = std::tanh(2 * r);
        auto g = single_step_graph(make_params(Lattice::DBSL, r), 0);
        double t = g.t;
        Vec nf = noise_factors(reduce(g, std::vector<double>{0, -2 * std::atan(1 / (4 * t * t))}));
        EXPECT_NEAR(nf(0) / (std::pow(th, -4) + std::pow(th, -2)), 1, 1e-12);
        EXPECT_NEAR(nf(1) / (th * th + 1), 1, 1e-12);

        auto q = single_step_graph(make_params(Lattice::QRL, r), 0);
        Vec qf = noise_factors(reduce(q, std::vector<double>{0.2, 0.2, -0.3, -0.3}));
        // Per computation mode: 1/tanh^2 in x and 1 in p.
        EXPECT_NEAR(qf(0) * th * th, 1, 1e-12);
        EXPECT_NEAR(qf(1) * th * th, 1, 1e-12);
        EXPECT_NEAR(qf(2), 1, 1e-12);
        EXPECT_NEAR(qf(3), 1, 1e-12);
    }
    auto g = single_step_graph(make_params(Lattice::DBSL, 12), 0);
    Vec nf = noise_factors(reduce(g, std::vector<double>{0, -M_PI / 2}));
    EXPECT_NEAR(nf(0), 2, 1e-9);
    EXPECT_NEAR(nf(1), 2, 1e-9);
}

TEST(reduction, restrict_to_wire_keeps_one_mode) {
    auto q = single_step_graph(make_params(Lattice::QRL, 1), 0);
    GateResult full = reduce(q, std::vector<double>{0.2, 0.2, -0.3, -0.3});
    GateResult w0 = restrict_to_wire(full, 0);
    ASSERT_EQ(w0.G.rows(), 2);
    EXPECT_EQ(w0.G(0, 0), full.G(0, 0));
    EXPECT_EQ(w0.G(1, 1), full.G(2, 2));
    EXPECT_EQ(w0.N.row(1), full.N.row(2));
    EXPECT_THROW(restrict_to_wire(full, 2), IndexError);
}
