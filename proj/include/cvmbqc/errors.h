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

#ifndef CVMBQC_ERRORS_H
#define CVMBQC_ERRORS_H

#include <stdexcept>
#include <string>

namespace cvmbqc {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnsupportedLattice : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when the measured x quadratures do not determine the antisqueezed ancilla
// quadratures, e.g. sin(theta_-) = 0 in a teleportation step.
struct MeasurementDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CacheMiss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorruptCache : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cvmbqc

#endif
