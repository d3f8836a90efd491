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


#include "cvmbqc/basis_table.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include "cvmbqc/errors.h"
#include "cvmbqc/gkp.h"

namespace cvmbqc {

namespace {

constexpr double kDbMatch = 1e-9;
constexpr double kFlipTol = 1e-5;

}  // namespace

nlohmann::json row_to_json(const BasisRow &row) {
    return {{"lattice", lattice_name(row.lattice)},
            {"squeezing_dB", row.squeezing_db},
            {"parity", row.parity},
            {"angles", row.angles},
            {"theta_c", row.theta_c},
            {"variable_theta_c", row.variable_theta_c},
            {"residual", std::isfinite(row.residual) ? nlohmann::json(row.residual) : nlohmann::json(nullptr)},
            {"perr", row.perr},
            {"accepted", row.accepted}};
}

BasisRow row_from_json(const nlohmann::json &j) {
    BasisRow row;
    row.lattice = parse_lattice(j.at("lattice").get<std::string>());
    row.squeezing_db = j.at("squeezing_dB").get<double>();
    row.parity = j.value("parity", 0);
    row.angles = j.at("angles").get<std::vector<double>>();
    row.theta_c = j.value("theta_c", default_theta_c(row.lattice));
    row.variable_theta_c = j.value("variable_theta_c", false);
    const auto &res = j.at("residual");
    row.residual = res.is_null() ? std::numeric_limits<double>::infinity() : res.get<double>();
    row.perr = j.at("perr").get<double>();
    row.accepted = j.value("accepted", true);
    if (row.parity != 0 && row.parity != 1) {
        throw InvalidParameter("parity must be 0 or 1");
    }
    return row;
}

BasisTable BasisTable::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CacheMiss("basis table not found at " + path);
    }
    BasisTable table;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("version").get<int>() != kVersion) {
            throw CorruptCache("unsupported basis table version in " + path);
        }
        for (const auto &r : j.at("rows")) {
            table.rows_.push_back(row_from_json(r));
        }
    } catch (const std::exception &e) {
        if (dynamic_cast<const CorruptCache *>(&e) != nullptr) {
            throw;
        }
        throw CorruptCache("malformed basis table " + path + ": " + e.what());
    }
    return table;
}

void BasisTable::save(const std::string &path) const {
    std::vector<BasisRow> sorted = rows_;
    std::sort(sorted.begin(), sorted.end(), [](const BasisRow &a, const BasisRow &b) {
        return std::make_tuple(lattice_name(a.lattice), a.variable_theta_c, a.parity, a.squeezing_db) <
               std::make_tuple(lattice_name(b.lattice), b.variable_theta_c, b.parity, b.squeezing_db);
    });
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : sorted) {
        rows.push_back(row_to_json(r));
    }
    nlohmann::json j = {{"version", kVersion}, {"rows", rows}};
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw InvalidParameter("cannot write " + path);
    }
    out << j.dump(1) << "\n";
}

void BasisTable::upsert(const BasisRow &row) {
    for (auto &r : rows_) {
        if (r.lattice == row.lattice && r.parity == row.parity && r.variable_theta_c == row.variable_theta_c &&
            std::abs(r.squeezing_db - row.squeezing_db) < kDbMatch) {
            r = row;
            return;
        }
    }
    rows_.push_back(row);
}

const BasisRow *BasisTable::find(Lattice lattice, double squeezing_db, int parity, bool variable_theta_c) const {
    for (const auto &r : rows_) {
        if (r.lattice == lattice && r.parity == parity && r.variable_theta_c == variable_theta_c &&
            std::abs(r.squeezing_db - squeezing_db) < kDbMatch) {
            return &r;
        }
    }
    return nullptr;
}

std::string cache_dir() {
    const char *env = std::getenv("CVMBQC_CACHE_DIR");
    if (env != nullptr && *env != '\0') {
        return env;
    }
    return CVMBQC_DEFAULT_CACHE_DIR;
}

std::string default_table_path() {
    return (std::filesystem::path(cache_dir()) / "cz_basis_table.json").string();
}

const BasisTable &default_table() {
    static const BasisTable table = BasisTable::load(default_table_path());
    return table;
}

std::string optimize_command(Lattice lattice, double squeezing_db, int parity, bool variable_theta_c) {
    std::ostringstream s;
    s << "cvmbqc optimize --lattice " << lattice_name(lattice) << " --db-min " << squeezing_db << " --db-max "
      << squeezing_db << " --parity " << parity;
    if (variable_theta_c) {
        s << " --variable-theta-c";
    }
    s << " --out " << default_table_path();
    return s.str();
}

GatePlan cached_cz_plan(const BasisTable &table, Lattice lattice, double squeezing_db, int parity,
                        bool variable_theta_c) {
    double r = db_to_r(squeezing_db);
    if (lattice == Lattice::QRL) {
        return qrl_cz_plan(r);
    }
    if (lattice == Lattice::TELEPORT) {
        throw UnsupportedLattice("TELEPORT has no coupling region");
    }
    auto miss = [&](const std::string &why) {
        return CacheMiss(why + "; run: " + optimize_command(lattice, squeezing_db, parity, variable_theta_c));
    };
    const BasisRow *row = table.find(lattice, squeezing_db, parity, variable_theta_c);
    if (row != nullptr) {
        if (!row->accepted) {
            throw miss("cached basis for " + lattice_name(lattice) + " is flagged infeasible");
        }
        return cz_plan(lattice, r, parity, row->angles, row->theta_c);
    }
    if (parity == 1) {
        const BasisRow *even = table.find(lattice, squeezing_db, 0, variable_theta_c);
        if (even != nullptr && even->accepted) {
            GatePlan plan = cz_plan(lattice, r, 1, flip_parity(lattice, even->angles), even->theta_c);
            if (plan_residual(plan) < kFlipTol) {
                return plan;
            }
        }
    }
    std::ostringstream why;
    why << "no cached " << lattice_name(lattice) << " CZ basis at " << squeezing_db << " dB, parity " << parity;
    throw miss(why.str());
}

SearchProblem cz_search_problem(Lattice lattice, double r, int parity, double theta_c) {
    LatticeParams params = make_params(lattice, r);
    auto [n, m] = ffcz_exponents(lattice, parity);
    return SearchProblem{{cz_region_graphs(params, parity, theta_c).front()}, target_symplectic(GateId::FFCZ, n, m),
                         r};
}

std::vector<BasisRow> optimize_rows(Lattice lattice, const std::vector<double> &squeezing_db, int parity,
                                    const OptimizerConfig &config, bool continuation,
                                    const std::function<void(const BasisRow &)> &on_row) {
    if (lattice == Lattice::QRL || lattice == Lattice::TELEPORT) {
        throw UnsupportedLattice("only DBSL, BSL and MBSL coupling regions are optimized");
    }
    std::vector<BasisRow> out;
    std::vector<double> previous;
    for (double db : squeezing_db) {
        double r = db_to_r(db);
        BasisRow row;
        row.lattice = lattice;
        row.squeezing_db = db;
        row.parity = parity;
        row.variable_theta_c = config.variable_theta_c;
        row.theta_c = default_theta_c(lattice);
        if (r <= 0) {
            // Unentangled limit: the coupling region cannot act, so the point is infeasible.
            row.residual = std::numeric_limits<double>::infinity();
            row.perr = 1;
            row.accepted = false;
            if (on_row) {
                on_row(row);
            }
            out.push_back(row);
            continue;
        }
        OptimizerConfig c = config;
        if (continuation && !previous.empty()) {
            c.warm_starts.insert(c.warm_starts.begin(), previous);
        }
        if (lattice == Lattice::DBSL) {
            c.warm_starts.push_back(dbsl_ideal_cz_angles(1.0, parity));
        }
        if (static_cast<int>(c.warm_starts.size()) > c.restarts) {
            c.restarts = static_cast<int>(c.warm_starts.size());
        }
        OptResult res = search(cz_search_problem(lattice, r, parity, row.theta_c), c);
        row.angles = res.angles;
        row.theta_c = res.theta_c;
        row.residual = res.residual;
        row.perr = res.perr;
        row.accepted = res.accepted;
        if (config.verbose) {
            std::fprintf(stderr, "%s %.2f dB parity %d: perr=%.6e residual=%.2e%s\n", lattice_name(lattice).c_str(), db,
                         parity, row.perr, row.residual, row.accepted ? "" : " (infeasible)");
        }
        if (row.accepted) {
            previous = row.angles;
            if (config.variable_theta_c) {
                previous.push_back(row.theta_c);
            }
        }
        if (on_row) {
            on_row(row);
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace cvmbqc
