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


#ifndef CVMBQC_SWEEPS_H
#define CVMBQC_SWEEPS_H

#include <ostream>
#include <string>
#include <vector>

#include "cvmbqc/basis_table.h"
#include "cvmbqc/gates.h"
#include "cvmbqc/lattice.h"

namespace cvmbqc {

struct SweepSpec {
    double db_min = 0;
    double db_max = 25;
    double step_db = 0.25;
    std::vector<Lattice> lattices = {Lattice::DBSL, Lattice::BSL, Lattice::MBSL, Lattice::QRL};
    std::vector<GateId> gates = {GateId::I, GateId::F, GateId::P1, GateId::FFCZ};

    void validate() const;
    // Inclusive grid db_min, db_min + step, ..., db_max.
    std::vector<double> grid() const;
};

// Plan used by the sweeps: closed forms for single-mode gates, the swap and QRL, the basis
// table for coupling regions of the other lattices.
GatePlan sweep_plan(Lattice lattice, GateId gate, double squeezing_db, const BasisTable &table);

struct NoiseRow {
    std::string lattice;
    std::string gate;
    double squeezing_db = 0;
    std::string quadrature;
    double noise_variance_db = 0;
};

struct ErrorRow {
    std::string lattice;
    std::string gate;
    double squeezing_db = 0;
    double perr = 1;
};

struct CompareRow {
    std::string lattice;
    double squeezing_db = 0;
    double perr_ratio_vs_dbsl = 1;
};

// Added variance per output quadrature in dB relative to vacuum, plus rows for e^{-2r} and
// sech(2r) under lattice "reference".
std::vector<NoiseRow> noise_curve(const SweepSpec &spec, const BasisTable &table);

// P_err per gate, plus zero-gate-noise rows under lattice "baseline". Coupling points flagged
// infeasible in the table are skipped.
std::vector<ErrorRow> error_curve(const SweepSpec &spec, const BasisTable &table);

// CZ P_err of every lattice relative to DBSL at the same squeezing.
std::vector<CompareRow> compare_curve(const SweepSpec &spec, const BasisTable &table);

void write_csv(std::ostream &out, const std::vector<NoiseRow> &rows);
void write_csv(std::ostream &out, const std::vector<ErrorRow> &rows);
void write_csv(std::ostream &out, const std::vector<CompareRow> &rows);

}  // namespace cvmbqc

#endif
