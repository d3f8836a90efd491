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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "cvmbqc/errors.h"
#include "cvmbqc/gkp.h"
#include "cvmbqc/sweeps.h"

using namespace cvmbqc;

namespace {

std::filesystem::path temp_dir(const std::string &name) {
    auto p = std::filesystem::temp_directory_path() / ("cvmbqc_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

BasisRow sample_row(double db, int parity, bool accepted) {
    BasisRow row;
    row.lattice = Lattice::BSL;
    row.squeezing_db = db;
    row.parity = parity;
    row.angles = {0.1, -0.2, 0.3};
    row.theta_c = M_PI / 4;
    row.residual = accepted ? 1e-12 : INFINITY;
    row.perr = accepted ? 0.25 : 1.0;
    row.accepted = accepted;
    return row;
}

// One DBSL row, shared by the lookup tests.
const BasisTable &optimized_table() {
    static const BasisTable table = [] {
        OptimizerConfig cfg;
        cfg.restarts = 2;
        BasisTable t;
        for (const auto &row : optimize_rows(Lattice::DBSL, {0.0, 14.5, 15.0}, 0, cfg)) {
            t.upsert(row);
        }
        return t;
    }();
    return table;
}

}  // namespace

TEST(basis_table, json_round_trip) {
    for (bool accepted : {true, false}) {
        BasisRow row = sample_row(12.5, 1, accepted);
        nlohmann::json j = row_to_json(row);
        if (!accepted) {
            EXPECT_TRUE(j["residual"].is_null());
        }
        BasisRow back = row_from_json(nlohmann::json::parse(j.dump()));
        EXPECT_EQ(back.lattice, row.lattice);
        EXPECT_EQ(back.squeezing_db, row.squeezing_db);
        EXPECT_EQ(back.parity, row.parity);
        EXPECT_EQ(back.angles, row.angles);
        EXPECT_EQ(back.theta_c, row.theta_c);
        EXPECT_EQ(back.residual, row.residual);
        EXPECT_EQ(back.perr, row.perr);
        EXPECT_EQ(back.accepted, row.accepted);
    }
}

TEST(basis_table, upsert_and_find) {
    BasisTable t;
    t.upsert(sample_row(10, 0, true));
    t.upsert(sample_row(10.25, 0, true));
    BasisRow replaced = sample_row(10, 0, true);
    replaced.perr = 0.125;
    t.upsert(replaced);
    EXPECT_EQ(t.rows().size(), 2u);
    ASSERT_NE(t.find(Lattice::BSL, 10 + 1e-12, 0), nullptr);
    EXPECT_EQ(t.find(Lattice::BSL, 10, 0)->perr, 0.125);
    EXPECT_EQ(t.find(Lattice::BSL, 10, 1), nullptr);
    EXPECT_EQ(t.find(Lattice::BSL, 10, 0, true), nullptr);
    EXPECT_EQ(t.find(Lattice::DBSL, 10, 0), nullptr);
}

TEST(basis_table, save_and_load) {
    auto dir = temp_dir("save");
    std::string path = (dir / "nested" / "table.json").string();
    BasisTable t;
    t.upsert(sample_row(11, 0, true));
    t.upsert(sample_row(3, 0, false));
    t.save(path);
    BasisTable back = BasisTable::load(path);
    ASSERT_EQ(back.rows().size(), 2u);
    EXPECT_EQ(back.rows()[0].squeezing_db, 3.0);
    EXPECT_FALSE(back.rows()[0].accepted);
    EXPECT_EQ(back.rows()[1].angles, t.find(Lattice::BSL, 11, 0)->angles);
    std::filesystem::remove_all(dir);
}

TEST(basis_table, load_errors) {
    auto dir = temp_dir("errors");
    EXPECT_THROW(BasisTable::load((dir / "missing.json").string()), CacheMiss);
    std::string bad = (dir / "bad.json").string();
    std::ofstream(bad) << "{\"version\": 1, \"rows\": [";
    EXPECT_THROW(BasisTable::load(bad), CorruptCache);
    std::ofstream(bad) << "{\"version\": 99, \"rows\": []}";
    EXPECT_THROW(BasisTable::load(bad), CorruptCache);
    std::filesystem::remove_all(dir);
}

TEST(basis_table, cache_dir_override) {
    const char *old = std::getenv("CVMBQC_CACHE_DIR");
    std::string saved = old == nullptr ? "" : old;
    setenv("CVMBQC_CACHE_DIR", "/tmp/somewhere", 1);
    EXPECT_EQ(cache_dir(), "/tmp/somewhere");
    EXPECT_EQ(default_table_path(), "/tmp/somewhere/cz_basis_table.json");
    if (old == nullptr) {
        unsetenv("CVMBQC_CACHE_DIR");
    } else {
        setenv("CVMBQC_CACHE_DIR", saved.c_str(), 1);
    }
}

TEST(basis_table, qrl_needs_no_table) {
    BasisTable empty;
    GatePlan plan = cached_cz_plan(empty, Lattice::QRL, 12, 0);
    EXPECT_LT(plan_residual(plan), 1e-10);
    EXPECT_THROW(cached_cz_plan(empty, Lattice::TELEPORT, 12, 0), UnsupportedLattice);
}

TEST(basis_table, miss_names_regeneration_command) {
    BasisTable empty;
    try {
        cached_cz_plan(empty, Lattice::MBSL, 17.5, 0);
        FAIL() << "expected CacheMiss";
    } catch (const CacheMiss &e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("cvmbqc optimize --lattice MBSL"), std::string::npos) << msg;
        EXPECT_NE(msg.find("17.5"), std::string::npos) << msg;
    }
}

TEST(basis_table, optimize_rows_and_lookup) {
    const BasisTable &t = optimized_table();
    const BasisRow *zero = t.find(Lattice::DBSL, 0, 0);
    ASSERT_NE(zero, nullptr);
    EXPECT_FALSE(zero->accepted);
    EXPECT_THROW(cached_cz_plan(t, Lattice::DBSL, 0, 0), CacheMiss);

    const BasisRow *row = t.find(Lattice::DBSL, 15, 0);
    ASSERT_NE(row, nullptr);
    ASSERT_TRUE(row->accepted);
    EXPECT_LT(row->residual, 1e-5);
    GatePlan plan = cached_cz_plan(t, Lattice::DBSL, 15, 0);
    EXPECT_LT(plan_residual(plan), 1e-5);
    EXPECT_NEAR(gate_error_probability(plan), row->perr, 1e-9 * row->perr);
}

TEST(basis_table, odd_parity_flip_is_verified) {
    const BasisTable &t = optimized_table();
    const BasisRow *row = t.find(Lattice::DBSL, 15, 0);
    ASSERT_NE(row, nullptr);
    double r = db_to_r(15);
    GatePlan flipped = cz_plan(Lattice::DBSL, r, 1, flip_parity(Lattice::DBSL, row->angles), row->theta_c);
    if (plan_residual(flipped) < 1e-5) {
        GatePlan plan = cached_cz_plan(t, Lattice::DBSL, 15, 1);
        EXPECT_LT(plan_residual(plan), 1e-5);
    } else {
        EXPECT_THROW(cached_cz_plan(t, Lattice::DBSL, 15, 1), CacheMiss);
    }
}

TEST(basis_table, sweeps_are_deterministic) {
    const BasisTable &t = optimized_table();
    SweepSpec spec;
    spec.db_min = 14.5;
    spec.db_max = 15;
    spec.step_db = 0.5;
    spec.lattices = {Lattice::DBSL, Lattice::QRL};
    spec.gates = {GateId::I, GateId::FFCZ};
    auto first = [&] {
        std::ostringstream out;
        write_csv(out, error_curve(spec, t));
        return out.str();
    };
    std::string a = first();
    EXPECT_EQ(a, first());
    EXPECT_EQ(a.substr(0, a.find('\n')), "lattice,gate,squeezing_db,perr");
    // Without a table the DBSL coupling point is missing.
    EXPECT_THROW(error_curve(spec, BasisTable{}), CacheMiss);

    spec.gates = {GateId::I};
    std::ostringstream noise;
    write_csv(noise, noise_curve(spec, t));
    std::string n = noise.str();
    EXPECT_EQ(n.substr(0, n.find('\n')), "lattice,gate,squeezing_db,quadrature,noise_variance_db");
    EXPECT_NE(n.find("reference,e^-2r,15.00"), std::string::npos);
}
