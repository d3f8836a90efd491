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

#include <algorithm>
#include <cmath>
#include <string>

#include "cvmbqc/errors.h"

namespace cvmbqc {

namespace {

constexpr double kMinRcond = 1e-12;

bool contains(const std::vector<int> &v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

Mat select(const Mat &S, const std::vector<int> &rows, const std::vector<int> &cols) {
    Mat out(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t j = 0; j < cols.size(); j++) {
            out(i, j) = S(rows[i], cols[j]);
        }
    }
    return out;
}

void validate(const ComputationGraph &g) {
    int n = g.n_modes;
    if (g.adjacency.rows() != n || g.adjacency.cols() != n) {
        throw DimensionError("adjacency does not match mode count");
    }
    if (!g.adjacency.isApprox(g.adjacency.transpose(), 0.0) || g.adjacency.diagonal().cwiseAbs().maxCoeff() != 0) {
        throw InvalidParameter("adjacency must be symmetric with zero diagonal");
    }
    std::vector<int> seen(n, 0);
    for (const auto *list : {&g.input_modes, &g.measured_modes, &g.output_modes}) {
        for (int m : *list) {
            if (m < 0 || m >= n) {
                throw IndexError("mode index " + std::to_string(m) + " out of range");
            }
            seen[m]++;
        }
    }
    for (int m = 0; m < n; m++) {
        if (seen[m] != 1) {
            throw InvalidParameter("input, measured and output modes must partition the graph");
        }
    }
    if (g.input_modes.size() != g.output_modes.size()) {
        throw DimensionError("input and output mode counts differ");
    }
    for (const auto &[a, b] : g.mixing_pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw IndexError("mixing pair out of range");
        }
        if (a == b) {
            throw InvalidParameter("mixing pair must join two distinct modes");
        }
    }
}

}  // namespace

Mat graph_symplectic(const ComputationGraph &g, const std::map<int, double> &angles) {
    validate(g);
    int n = g.n_modes;
    Mat I = Mat::Identity(n, n);
    Mat Scz = Mat::Identity(2 * n, 2 * n);
    Scz.bottomLeftCorner(n, n) = g.adjacency;

    Mat B = I;
    const double h = 1.0 / std::sqrt(2.0);
    for (const auto &[i, j] : g.mixing_pairs) {
        Mat b = I;
        b(i, i) = h;
        b(i, j) = -h;
        b(j, i) = h;
        b(j, j) = h;
        B = b * B;
    }
    Mat Sbs = Mat::Zero(2 * n, 2 * n);
    Sbs.topLeftCorner(n, n) = B;
    Sbs.bottomRightCorner(n, n) = B;

    Vec c = Vec::Ones(n);
    Vec s = Vec::Zero(n);
    for (int m = 0; m < n; m++) {
        if (contains(g.output_modes, m)) {
            continue;
        }
        auto it = angles.find(m);
        if (it == angles.end()) {
            throw InvalidParameter("missing measurement angle for mode " + std::to_string(m));
        }
        if (!std::isfinite(it->second)) {
            throw InvalidParameter("measurement angles must be finite");
        }
        c(m) = std::cos(it->second);
        s(m) = std::sin(it->second);
    }
    Mat Sr = Mat::Zero(2 * n, 2 * n);
    Sr.topLeftCorner(n, n) = c.asDiagonal();
    Sr.topRightCorner(n, n) = s.asDiagonal();
    Sr.bottomLeftCorner(n, n) = -Mat(s.asDiagonal());
    Sr.bottomRightCorner(n, n) = c.asDiagonal();
    return Sr * Sbs * Scz;
}

GateResult reduce(const ComputationGraph &g, const std::map<int, double> &angles) {
    Mat S = graph_symplectic(g, angles);
    int n = g.n_modes;
    std::vector<int> anc = g.ancilla_modes();
    std::vector<int> qin;
    for (int m : g.input_modes) {
        qin.push_back(m);
    }
    for (int m : g.input_modes) {
        qin.push_back(n + m);
    }
    for (int m : anc) {
        qin.push_back(n + m);
    }
    std::vector<int> rows_meas;
    for (int m = 0; m < n; m++) {
        if (!contains(g.output_modes, m)) {
            rows_meas.push_back(m);
        }
    }
    std::vector<int> rows_out;
    for (int m : g.output_modes) {
        rows_out.push_back(m);
    }
    for (int m : g.output_modes) {
        rows_out.push_back(n + m);
    }

    Mat U = select(S, rows_meas, anc);
    Mat V = select(S, rows_meas, qin);
    Mat Y = select(S, rows_out, anc);
    Mat Z = select(S, rows_out, qin);

    Eigen::PartialPivLU<Mat> lu(U);
    if (!(lu.rcond() >= kMinRcond)) {
        throw MeasurementDegenerate("homodyne outcomes do not determine the ancilla x quadratures");
    }
    Mat D = lu.solve(Mat::Identity(U.rows(), U.rows()));
    D = Y * D;
    Mat M = Z - D * V;
    int k = 2 * static_cast<int>(g.input_modes.size());
    GateResult out;
    out.G = M.leftCols(k);
    out.N = M.rightCols(M.cols() - k);
    out.D = D;
    out.contributing_modes = anc;
    return out;
}

GateResult reduce(const ComputationGraph &g, const std::vector<double> &free_angles) {
    return reduce(g, g.angles(free_angles));
}

GateResult reduce(const ComputationGraph &g, const std::vector<double> &free_angles, double theta_c) {
    return reduce(g, g.angles(free_angles, theta_c));
}

GateResult chain(const std::vector<GateResult> &steps) {
    if (steps.empty()) {
        throw DimensionError("chain needs at least one step");
    }
    GateResult acc = steps.front();
    for (size_t i = 1; i < steps.size(); i++) {
        const GateResult &s = steps[i];
        if (s.G.cols() != acc.G.rows()) {
            throw DimensionError("step mode counts do not match");
        }
        GateResult next;
        next.G = s.G * acc.G;
        next.N.resize(s.G.rows(), acc.N.cols() + s.N.cols());
        next.N << s.G * acc.N, s.N;
        next.D.resize(s.G.rows(), acc.D.cols() + s.D.cols());
        next.D << s.G * acc.D, s.D;
        next.contributing_modes = acc.contributing_modes;
        next.contributing_modes.insert(next.contributing_modes.end(), s.contributing_modes.begin(),
                                       s.contributing_modes.end());
        acc = next;
    }
    return acc;
}

GateResult restrict_to_wire(const GateResult &r, int wire) {
    int n = static_cast<int>(r.G.rows() / 2);
    if (wire < 0 || wire >= n) {
        throw IndexError("wire index out of range");
    }
    std::vector<int> rows = {wire, n + wire};
    GateResult out;
    out.G = select(r.G, rows, rows);
    out.N = r.N(rows, Eigen::all);
    out.D = r.D(rows, Eigen::all);
    out.contributing_modes = r.contributing_modes;
    return out;
}

Vec noise_factors(const GateResult &r) {
    return r.N.rowwise().squaredNorm();
}

}  // namespace cvmbqc
