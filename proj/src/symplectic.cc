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

#include "cvmbqc/symplectic.h"

#include <cmath>
#include <set>
#include <string>

#include "cvmbqc/errors.h"

namespace cvmbqc {

Mat rotation(double theta) {
    Mat R(2, 2);
    R << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return R;
}

Mat squeeze(double s) {
    if (s == 0.0) {
        throw InvalidParameter("squeeze parameter must be nonzero");
    }
    Mat S = Mat::Zero(2, 2);
    S(0, 0) = 1.0 / s;
    S(1, 1) = s;
    return S;
}

Mat shear(double p) {
    Mat P = Mat::Identity(2, 2);
    P(1, 0) = p;
    return P;
}

Mat cz(double g) {
    Mat C = Mat::Identity(4, 4);
    C(2, 1) = g;
    C(3, 0) = g;
    return C;
}

Mat beamsplitter() {
    const double h = 1.0 / std::sqrt(2.0);
    Mat B = Mat::Zero(4, 4);
    B(0, 0) = h;
    B(0, 1) = -h;
    B(1, 0) = h;
    B(1, 1) = h;
    B(2, 2) = h;
    B(2, 3) = -h;
    B(3, 2) = h;
    B(3, 3) = h;
    return B;
}

Mat fourier() {
    return rotation(M_PI / 2);
}

Mat gaussian_unitary(GateKind kind, double param) {
    switch (kind) {
        case GateKind::identity:
            return Mat::Identity(2, 2);
        case GateKind::rotation:
            return rotation(param);
        case GateKind::squeeze:
            return squeeze(param);
        case GateKind::shear:
            return shear(param);
        case GateKind::cz:
            return cz(param);
        case GateKind::beamsplitter:
            return beamsplitter();
    }
    throw InvalidParameter("unknown gate kind");
}

int mode_count(const Mat &S) {
    if (S.rows() != S.cols() || S.rows() % 2 != 0) {
        throw DimensionError("expected a square 2n x 2n matrix");
    }
    return static_cast<int>(S.rows() / 2);
}

Mat omega(int n) {
    Mat W = Mat::Zero(2 * n, 2 * n);
    W.topRightCorner(n, n) = Mat::Identity(n, n);
    W.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return W;
}

Mat embed(const Mat &small, const std::vector<int> &target_modes, int n_total) {
    int k = mode_count(small);
    if (static_cast<int>(target_modes.size()) != k) {
        throw DimensionError("target mode count does not match matrix size");
    }
    std::set<int> seen;
    for (int m : target_modes) {
        if (m < 0 || m >= n_total) {
            throw IndexError("mode index " + std::to_string(m) + " out of range");
        }
        if (!seen.insert(m).second) {
            throw IndexError("duplicate mode index " + std::to_string(m));
        }
    }
    Mat S = Mat::Identity(2 * n_total, 2 * n_total);
    for (int a = 0; a < 2 * k; a++) {
        int ia = (a < k) ? target_modes[a] : n_total + target_modes[a - k];
        for (int b = 0; b < 2 * k; b++) {
            int ib = (b < k) ? target_modes[b] : n_total + target_modes[b - k];
            S(ia, ib) = small(a, b);
        }
    }
    return S;
}

Mat direct_sum(const std::vector<Mat> &blocks) {
    int n = 0;
    for (const auto &b : blocks) {
        n += mode_count(b);
    }
    Mat S = Mat::Zero(2 * n, 2 * n);
    int offset = 0;
    for (const auto &b : blocks) {
        int k = mode_count(b);
        S.block(offset, offset, k, k) = b.topLeftCorner(k, k);
        S.block(offset, n + offset, k, k) = b.topRightCorner(k, k);
        S.block(n + offset, offset, k, k) = b.bottomLeftCorner(k, k);
        S.block(n + offset, n + offset, k, k) = b.bottomRightCorner(k, k);
        offset += k;
    }
    return S;
}

Mat compose(const std::vector<Mat> &factors) {
    if (factors.empty()) {
        throw DimensionError("compose needs at least one factor");
    }
    Mat S = factors.front();
    for (size_t i = 1; i < factors.size(); i++) {
        if (factors[i].rows() != S.rows() || factors[i].cols() != S.cols()) {
            throw DimensionError("compose factors must share dimension");
        }
        S = factors[i] * S;
    }
    return S;
}

bool check_symplectic(const Mat &S, double tol) {
    int n = mode_count(S);
    Mat W = omega(n);
    return (S * W * S.transpose() - W).cwiseAbs().maxCoeff() <= tol;
}

Mat symplectic_inverse(const Mat &S) {
    Mat W = omega(mode_count(S));
    return -W * S.transpose() * W;
}

double entrywise_l1(const Mat &A) {
    return A.cwiseAbs().sum();
}

}  // namespace cvmbqc
