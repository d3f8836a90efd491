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


#include "cvmbqc/sweeps.h"

#include <cmath>
#include <cstdio>
#include <limits>

#include "cvmbqc/errors.h"
#include "cvmbqc/gkp.h"

namespace cvmbqc {

namespace {

std::string fmt(const char *spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string db_str(double db) {
    return fmt("%.2f", db);
}

bool coupling_infeasible(const BasisTable &table, Lattice lattice, GateId gate, double db) {
    if (gate != GateId::FFCZ || lattice == Lattice::QRL) {
        return false;
    }
    const BasisRow *row = table.find(lattice, db, 0);
    return row != nullptr && !row->accepted;
}

std::vector<std::string> quadrature_labels(int n_modes) {
    if (n_modes == 1) {
        return {"x", "p"};
    }
    std::vector<std::string> out;
    for (const char *q : {"x", "p"}) {
        for (int m = 1; m <= n_modes; m++) {
            out.push_back(q + std::to_string(m));
        }
    }
    return out;
}

}  // namespace

void SweepSpec::validate() const {
    if (!(db_min >= 0) || !(db_min < db_max) || !(step_db > 0)) {
        throw InvalidParameter("need 0 <= db-min < db-max and db-step > 0");
    }
    if (lattices.empty() || gates.empty()) {
        throw InvalidParameter("lattice and gate lists must be nonempty");
    }
}

std::vector<double> SweepSpec::grid() const {
    validate();
    int n = static_cast<int>(std::floor((db_max - db_min) / step_db + 1e-9));
    std::vector<double> out;
    for (int i = 0; i <= n; i++) {
        // Rounded to the 1e-9 dB used for table lookups so repeated sums do not drift.
        out.push_back(std::round((db_min + i * step_db) * 1e9) / 1e9);
    }
    return out;
}

GatePlan sweep_plan(Lattice lattice, GateId gate, double squeezing_db, const BasisTable &table) {
    double r = db_to_r(squeezing_db);
    switch (gate) {
        case GateId::I:
        case GateId::F:
        case GateId::P1:
            return basis_for(lattice, gate, r, 0);
        case GateId::FFCZ:
            return cached_cz_plan(table, lattice, squeezing_db, 0);
        case GateId::SWAP:
            if (lattice == Lattice::DBSL) {
                return dbsl_swap_plan(r);
            }
            break;
        case GateId::S_INV_T:
            if (lattice == Lattice::QRL) {
                return qrl_compensation_plan(r);
            }
            break;
        default:
            break;
    }
    throw UnsupportedLattice(gate_name(gate) + " is not available on " + lattice_name(lattice));
}

std::vector<NoiseRow> noise_curve(const SweepSpec &spec, const BasisTable &table) {
    std::vector<NoiseRow> rows;
    const auto grid = spec.grid();
    for (Lattice lattice : spec.lattices) {
        for (GateId gate : spec.gates) {
            int n_modes = is_two_mode(gate) ? 2 : 1;
            auto labels = quadrature_labels(n_modes);
            for (double db : grid) {
                if (coupling_infeasible(table, lattice, gate, db)) {
                    continue;
                }
                std::vector<double> values(labels.size(), std::numeric_limits<double>::infinity());
                if (db > 0) {
                    Vec var = plan_noise_variances(sweep_plan(lattice, gate, db, table));
                    for (int i = 0; i < var.size(); i++) {
                        values[i] = 10 * std::log10(2 * var(i));
                    }
                }
                for (size_t i = 0; i < labels.size(); i++) {
                    rows.push_back({lattice_name(lattice), gate_name(gate), db, labels[i], values[i]});
                }
            }
        }
    }
    for (double db : grid) {
        double r = db_to_r(db);
        rows.push_back({"reference", "e^-2r", db, "-", 10 * std::log10(std::exp(-2 * r))});
        rows.push_back({"reference", "sech(2r)", db, "-", 10 * std::log10(effective_epsilon(r))});
    }
    return rows;
}

std::vector<ErrorRow> error_curve(const SweepSpec &spec, const BasisTable &table) {
    std::vector<ErrorRow> rows;
    const auto grid = spec.grid();
    for (Lattice lattice : spec.lattices) {
        for (GateId gate : spec.gates) {
            for (double db : grid) {
                if (coupling_infeasible(table, lattice, gate, db)) {
                    std::fprintf(stderr, "skipping %s %s at %.2f dB: flagged infeasible\n",
                                 lattice_name(lattice).c_str(), gate_name(gate).c_str(), db);
                    continue;
                }
                double perr = db > 0 ? gate_error_probability(sweep_plan(lattice, gate, db, table)) : 1.0;
                rows.push_back({lattice_name(lattice), gate_name(gate), db, perr});
            }
        }
    }
    for (GateId gate : spec.gates) {
        Mat G = target_symplectic(gate);
        for (double db : grid) {
            double perr = db > 0 ? zero_noise_error_probability(G, db_to_r(db)) : 1.0;
            rows.push_back({"baseline", gate_name(gate), db, perr});
        }
    }
    return rows;
}

std::vector<CompareRow> compare_curve(const SweepSpec &spec, const BasisTable &table) {
    std::vector<CompareRow> rows;
    const auto grid = spec.grid();
    for (Lattice lattice : spec.lattices) {
        for (double db : grid) {
            if (coupling_infeasible(table, lattice, GateId::FFCZ, db) ||
                coupling_infeasible(table, Lattice::DBSL, GateId::FFCZ, db)) {
                continue;
            }
            double ratio = 1.0;
            if (db > 0) {
                double ref = gate_error_probability(sweep_plan(Lattice::DBSL, GateId::FFCZ, db, table));
                ratio = gate_error_probability(sweep_plan(lattice, GateId::FFCZ, db, table)) / ref;
            }
            rows.push_back({lattice_name(lattice), db, ratio});
        }
    }
    return rows;
}

void write_csv(std::ostream &out, const std::vector<NoiseRow> &rows) {
    out << "lattice,gate,squeezing_db,quadrature,noise_variance_db\n";
    for (const auto &r : rows) {
        out << r.lattice << "," << r.gate << "," << db_str(r.squeezing_db) << "," << r.quadrature << ","
            << fmt("%.10g", r.noise_variance_db) << "\n";
    }
}

void write_csv(std::ostream &out, const std::vector<ErrorRow> &rows) {
    out << "lattice,gate,squeezing_db,perr\n";
    for (const auto &r : rows) {
        out << r.lattice << "," << r.gate << "," << db_str(r.squeezing_db) << "," << fmt("%.9e", r.perr) << "\n";
    }
}

void write_csv(std::ostream &out, const std::vector<CompareRow> &rows) {
    out << "lattice,squeezing_db,perr_ratio_vs_dbsl\n";
    for (const auto &r : rows) {
        out << r.lattice << "," << db_str(r.squeezing_db) << "," << fmt("%.10g", r.perr_ratio_vs_dbsl) << "\n";
    }
}

}  // namespace cvmbqc
