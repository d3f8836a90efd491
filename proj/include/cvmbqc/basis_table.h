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


#ifndef CVMBQC_BASIS_TABLE_H
#define CVMBQC_BASIS_TABLE_H

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvmbqc/gates.h"
#include "cvmbqc/lattice.h"
#include "cvmbqc/optimizer.h"

namespace cvmbqc {

// One optimized coupling-region basis.
struct BasisRow {
    Lattice lattice = Lattice::DBSL;
    double squeezing_db = 0;
    int parity = 0;
    std::vector<double> angles;
    double theta_c = 0;
    bool variable_theta_c = false;
    double residual = 0;
    double perr = 1;
    bool accepted = false;
};

nlohmann::json row_to_json(const BasisRow &row);
BasisRow row_from_json(const nlohmann::json &j);

class BasisTable {
   public:
    static constexpr int kVersion = 1;

    // Throws CacheMiss when the file does not exist and CorruptCache when it is malformed.
    static BasisTable load(const std::string &path);
    void save(const std::string &path) const;

    // Replaces a row with the same lattice, squeezing, parity and theta_c mode.
    void upsert(const BasisRow &row);
    const BasisRow *find(Lattice lattice, double squeezing_db, int parity, bool variable_theta_c = false) const;
    const std::vector<BasisRow> &rows() const {
        return rows_;
    }

   private:
    std::vector<BasisRow> rows_;
};

// CVMBQC_CACHE_DIR when set, else the data directory of the source tree.
std::string cache_dir();
std::string default_table_path();

// The shipped table, loaded once on first use.
const BasisTable &default_table();

// Shell command that regenerates a missing entry.
std::string optimize_command(Lattice lattice, double squeezing_db, int parity, bool variable_theta_c = false);

// Coupling-region CZ plan. QRL is closed form; other lattices read the table. An odd-parity
// request without its own row maps the even-parity angles through flip_parity and keeps them
// only if the flipped plan still meets the acceptance residual. Throws CacheMiss otherwise.
GatePlan cached_cz_plan(const BasisTable &table, Lattice lattice, double squeezing_db, int parity = 0,
                        bool variable_theta_c = false);

// The search problem behind a coupling-region row.
SearchProblem cz_search_problem(Lattice lattice, double r, int parity, double theta_c);

// Optimizes one row per squeezing value. With `continuation` each point is warm-started from
// the previous accepted solution in addition to the configured starts. `on_row` sees each row as
// soon as it is finished.
std::vector<BasisRow> optimize_rows(Lattice lattice, const std::vector<double> &squeezing_db, int parity,
                                    const OptimizerConfig &config, bool continuation = true,
                                    const std::function<void(const BasisRow &)> &on_row = {});

}  // namespace cvmbqc

#endif
