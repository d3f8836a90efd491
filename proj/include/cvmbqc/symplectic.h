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

#ifndef CVMBQC_SYMPLECTIC_H
#define CVMBQC_SYMPLECTIC_H

#include <vector>

#include <Eigen/Dense>

namespace cvmbqc {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// All phase-space matrices use xxpp ordering: (x_1..x_n, p_1..p_n), hbar = 1.
enum class GateKind { identity, rotation, squeeze, shear, cz, beamsplitter };

Mat gaussian_unitary(GateKind kind, double param = 0.0);

Mat rotation(double theta);
Mat squeeze(double s);
Mat shear(double p);
Mat cz(double g);
Mat beamsplitter();
Mat fourier();

// Number of modes of a 2n x 2n matrix; throws DimensionError for odd or non-square input.
int mode_count(const Mat &S);

Mat omega(int n);

// Acts as `small` on target_modes (0-based, in order) and as identity elsewhere.
Mat embed(const Mat &small, const std::vector<int> &target_modes, int n_total);

// Tensor product of independent blocks, modes concatenated in order.
Mat direct_sum(const std::vector<Mat> &blocks);

// The first listed factor acts first: compose({A, B}) = B * A.
Mat compose(const std::vector<Mat> &factors);

bool check_symplectic(const Mat &S, double tol = 1e-10);

// Inverse of a symplectic matrix via -Omega S^T Omega.
Mat symplectic_inverse(const Mat &S);

// Entrywise 1-norm sum |A_ij|.
double entrywise_l1(const Mat &A);

}  // namespace cvmbqc

#endif
