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


#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cvmbqc/basis_table.h"
#include "cvmbqc/errors.h"
#include "cvmbqc/gates.h"
#include "cvmbqc/gkp.h"
#include "cvmbqc/lattice.h"
#include "cvmbqc/optimizer.h"
#include "cvmbqc/oracle.h"
#include "cvmbqc/sweeps.h"

using namespace cvmbqc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCacheMiss = 3;

struct SweepArgs {
    std::vector<std::string> lattices;
    std::vector<std::string> gates;
    double db_min = 0;
    double db_max = 25;
    double db_step = 0.25;
    std::string out;
};

void add_sweep_options(CLI::App *cmd, SweepArgs *a, bool with_gates) {
    cmd->add_option("--lattice", a->lattices, "Lattices (repeat or comma-separate)")->delimiter(',');
    if (with_gates) {
        cmd->add_option("--gate", a->gates, "Gates (repeat or comma-separate)")->delimiter(',');
    }
    cmd->add_option("--db-min", a->db_min, "Lowest squeezing in dB");
    cmd->add_option("--db-max", a->db_max, "Highest squeezing in dB");
    cmd->add_option("--db-step", a->db_step, "Squeezing step in dB");
    cmd->add_option("--out", a->out, "Output path (stdout when omitted)");
}

SweepSpec to_spec(const SweepArgs &a) {
    SweepSpec spec;
    spec.db_min = a.db_min;
    spec.db_max = a.db_max;
    spec.step_db = a.db_step;
    if (!a.lattices.empty()) {
        spec.lattices.clear();
        for (const auto &l : a.lattices) {
            spec.lattices.push_back(parse_lattice(l));
        }
    }
    if (!a.gates.empty()) {
        spec.gates.clear();
        for (const auto &g : a.gates) {
            spec.gates.push_back(parse_gate(g));
        }
    }
    spec.validate();
    return spec;
}

// Writes through a temporary file so a failed run leaves no partial output.
template <typename Rows>
void emit(const std::string &path, const Rows &rows) {
    if (path.empty()) {
        write_csv(std::cout, rows);
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write " + path);
        }
        write_csv(out, rows);
    }
    std::filesystem::rename(tmp, path);
}

bool needs_table(const SweepSpec &spec, bool always_cz) {
    bool cz = always_cz;
    for (GateId g : spec.gates) {
        cz = cz || g == GateId::FFCZ;
    }
    if (!cz) {
        return false;
    }
    for (Lattice l : spec.lattices) {
        if (l != Lattice::QRL) {
            return true;
        }
    }
    return always_cz;
}

const BasisTable &table_or_empty(bool needed) {
    static const BasisTable empty;
    return needed ? default_table() : empty;
}

int run_verify(double tol) {
    nlohmann::json plans = nlohmann::json::array();
    bool pass = true;
    for (double r : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        for (const auto &plan : closed_form_plans(r)) {
            VerifyReport rep = verify_plan(plan, tol);
            pass = pass && rep.pass;
            plans.push_back(report_to_json(rep));
        }
    }
    nlohmann::json cached = nlohmann::json::array();
    const BasisTable &table = default_table();
    for (const auto &row : table.rows()) {
        if (!row.accepted) {
            continue;
        }
        GatePlan plan = cz_plan(row.lattice, db_to_r(row.squeezing_db), row.parity, row.angles, row.theta_c);
        VerifyReport rep = verify_plan(plan, scaled_tolerance(plan, tol));
        double perr = gate_error_probability(plan);
        bool ok = rep.pass && std::abs(perr - row.perr) <= 1e-9 * row.perr;
        pass = pass && ok;
        nlohmann::json j = report_to_json(rep);
        j["squeezing_dB"] = row.squeezing_db;
        j["perr"] = perr;
        j["pass"] = ok;
        cached.push_back(j);
    }
    nlohmann::json wigner = nlohmann::json::array();
    for (Lattice l : {Lattice::DBSL, Lattice::BSL, Lattice::MBSL}) {
        for (double r : {0.5, 1.5}) {
            WignerReport rep = wigner_limit_check(l, r, WignerGrid{});
            pass = pass && rep.pass;
            wigner.push_back(report_to_json(rep));
        }
    }
    nlohmann::json out = {{"tol", tol}, {"plans", plans}, {"cached", cached}, {"wigner", wigner}, {"pass", pass}};
    std::cout << out.dump(1) << "\n";
    return pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Gate noise and GKP error budgets for measurement-based computation on CV cluster states"};
    app.require_subcommand(1);

    SweepArgs noise_args;
    auto *noise = app.add_subcommand("noise-curve", "Added quadrature noise per gate versus squeezing");
    add_sweep_options(noise, &noise_args, true);

    SweepArgs error_args;
    auto *error = app.add_subcommand("error-curve", "GKP error probability per gate versus squeezing");
    add_sweep_options(error, &error_args, true);

    SweepArgs compare_args;
    auto *compare = app.add_subcommand("compare", "CZ error probability relative to the DBSL");
    add_sweep_options(compare, &compare_args, false);

    SweepArgs opt_args;
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int parity = 0;
    bool variable_tc = false;
    bool no_continuation = false;
    auto *optimize = app.add_subcommand("optimize", "Optimize coupling-region bases into the basis table");
    optimize->add_option("--lattice", opt_args.lattices, "DBSL, BSL or MBSL")->required()->expected(1);
    optimize->add_option("--db-min", opt_args.db_min, "Lowest squeezing in dB");
    optimize->add_option("--db-max", opt_args.db_max, "Highest squeezing in dB");
    optimize->add_option("--db-step", opt_args.db_step, "Squeezing step in dB");
    optimize->add_option("--out", opt_args.out, "Basis table to update (default: the shipped table)");
    optimize->add_option("--config", config_path, "Optimizer configuration JSON");
    auto *seed_opt = optimize->add_option("--seed", seed, "Random seed (overrides the configuration)");
    optimize->add_option("--parity", parity, "Region parity (0 or 1)")->check(CLI::Range(0, 1));
    optimize->add_flag("--variable-theta-c", variable_tc, "Optimize the control basis as well");
    optimize->add_flag("--no-continuation", no_continuation, "Do not warm-start from the previous point");

    double tol = 1e-9;
    auto *verify = app.add_subcommand("verify", "Check every cataloged plan against the Gaussian oracle");
    verify->add_option("--tol", tol, "Absolute tolerance for the oracle comparison");

    std::string graph_lattice = "DBSL";
    std::string graph_gate = "I";
    double graph_db = 15;
    int graph_parity = 0;
    auto *dump = app.add_subcommand("dump-graph", "Print the computation graph of a gate as JSON");
    dump->add_option("--lattice", graph_lattice, "Lattice");
    dump->add_option("--gate", graph_gate, "I, F, P1 (one step) or FFCZ (coupling region)");
    dump->add_option("--db", graph_db, "Squeezing in dB");
    dump->add_option("--parity", graph_parity, "Step parity")->check(CLI::Range(0, 1));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    seed_set = seed_opt->count() > 0;

    try {
        if (*noise) {
            SweepSpec spec = to_spec(noise_args);
            emit(noise_args.out, noise_curve(spec, table_or_empty(needs_table(spec, false))));
        } else if (*error) {
            SweepSpec spec = to_spec(error_args);
            emit(error_args.out, error_curve(spec, table_or_empty(needs_table(spec, false))));
        } else if (*compare) {
            SweepSpec spec = to_spec(compare_args);
            spec.gates = {GateId::FFCZ};
            emit(compare_args.out, compare_curve(spec, table_or_empty(true)));
        } else if (*optimize) {
            OptimizerConfig config;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) {
                    throw InvalidParameter("cannot read " + config_path);
                }
                config = optimizer_config_from_json(nlohmann::json::parse(in));
            }
            if (seed_set) {
                config.seed = seed;
            }
            config.variable_theta_c = config.variable_theta_c || variable_tc;
            Lattice lattice = parse_lattice(opt_args.lattices.front());
            std::vector<double> grid = {opt_args.db_min};
            if (opt_args.db_max != opt_args.db_min) {
                SweepSpec spec;
                spec.db_min = opt_args.db_min;
                spec.db_max = opt_args.db_max;
                spec.step_db = opt_args.db_step;
                grid = spec.grid();
            }
            std::string path = opt_args.out.empty() ? default_table_path() : opt_args.out;
            BasisTable table;
            if (std::filesystem::exists(path)) {
                table = BasisTable::load(path);
            }
            int infeasible = 0;
            auto on_row = [&](const BasisRow &row) {
                table.upsert(row);
                infeasible += row.accepted ? 0 : 1;
                std::printf("%s,%.2f,%d,%.9e,%.3e,%s\n", lattice_name(row.lattice).c_str(), row.squeezing_db,
                            row.parity, row.perr, row.residual, row.accepted ? "accepted" : "infeasible");
                std::fflush(stdout);
                // Saved after every point so an interrupted run keeps its finished rows.
                table.save(path);
            };
            optimize_rows(lattice, grid, parity, config, !no_continuation, on_row);
            if (infeasible > 0) {
                std::fprintf(stderr, "%d point(s) flagged infeasible\n", infeasible);
            }
        } else if (*verify) {
            return run_verify(tol);
        } else if (*dump) {
            LatticeParams params = make_params(parse_lattice(graph_lattice), db_to_r(graph_db));
            GateId gate = parse_gate(graph_gate);
            nlohmann::json out = nlohmann::json::array();
            if (gate == GateId::FFCZ) {
                for (const auto &g : cz_region_graphs(params, graph_parity)) {
                    out.push_back(graph_to_json(g));
                }
            } else {
                for (const auto &step : basis_for(params.lattice, gate, params.r, graph_parity).steps) {
                    nlohmann::json j = graph_to_json(step.graph);
                    j["free_angles"] = step.angles;
                    out.push_back(j);
                }
            }
            std::cout << out.dump(1) << "\n";
        }
    } catch (const CacheMiss &e) {
        std::cerr << "cache miss: " << e.what() << "\n";
        return kExitCacheMiss;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitOk;
}
