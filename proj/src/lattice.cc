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

#include "cvmbqc/lattice.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cvmbqc/errors.h"

namespace cvmbqc {

namespace {

// Temporal offset between the two rails of a wire; only its parity matters.
constexpr int kRailOffset = 100;

std::string time_label(int offset, int n_multiple) {
    std::string s = "k";
    if (n_multiple == 1) {
        s += "+N";
    } else if (n_multiple > 1) {
        s += "+" + std::to_string(n_multiple) + "N";
    }
    if (offset > 0) {
        s += "+" + std::to_string(offset);
    } else if (offset < 0) {
        s += std::to_string(offset);
    }
    return s;
}

struct Node {
    std::string kind;
    int offset;
    int n_multiple;
    std::string label() const {
        return kind + "[" + time_label(offset, n_multiple) + "]";
    }
    int time(int k) const {
        return k + offset + n_multiple * kRailOffset;
    }
};

class GraphBuilder {
   public:
    GraphBuilder(const LatticeParams &params, int parity) {
        g_.lattice = params.lattice;
        g_.r = params.r;
        g_.t = params.t;
        g_.epsilon = params.epsilon;
        g_.parity = parity;
    }

    int add(const std::string &label) {
        labels_.push_back(label);
        return static_cast<int>(labels_.size()) - 1;
    }

    void edge(int a, int b, double sign) {
        edges_.push_back({a, b, sign});
    }

    ComputationGraph finish(std::vector<int> inputs, std::vector<int> outputs, std::vector<std::pair<int, int>> pairs,
                            std::vector<int> free_modes, std::map<int, double> control_signs, double theta_c) {
        int n = static_cast<int>(labels_.size());
        g_.n_modes = n;
        g_.labels = labels_;
        g_.adjacency = Mat::Zero(n, n);
        for (const auto &e : edges_) {
            g_.adjacency(e.a, e.b) = e.sign * g_.t;
            g_.adjacency(e.b, e.a) = e.sign * g_.t;
        }
        g_.input_modes = std::move(inputs);
        g_.output_modes = std::move(outputs);
        for (int m = 0; m < n; m++) {
            bool io = std::find(g_.input_modes.begin(), g_.input_modes.end(), m) != g_.input_modes.end() ||
                      std::find(g_.output_modes.begin(), g_.output_modes.end(), m) != g_.output_modes.end();
            if (!io) {
                g_.measured_modes.push_back(m);
            }
        }
        g_.mixing_pairs = std::move(pairs);
        g_.free_modes = std::move(free_modes);
        g_.control_signs = std::move(control_signs);
        g_.theta_c = theta_c;
        return g_;
    }

   private:
    struct Edge {
        int a;
        int b;
        double sign;
    };
    ComputationGraph g_;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
};

double parity_sign(int parity) {
    return (parity % 2 == 0) ? 1.0 : -1.0;
}

void check_parity(int parity) {
    if (parity != 0 && parity != 1) {
        throw InvalidParameter("parity must be 0 or 1");
    }
}

// Dual-rail edge rule between rail A and the delayed rail B' (B'_j = B_{j+N}).
double dual_rail_sign(const Node &u, const Node &v) {
    int i = u.offset;
    int j = v.offset;
    if (std::abs(i - j) != 1) {
        return 0;
    }
    const Node &lo = (i < j) ? u : v;
    const Node &hi = (i < j) ? v : u;
    if (lo.kind == "A" && hi.kind == "A") {
        return 1;
    }
    if (lo.kind == "B'" && hi.kind == "B'") {
        return -1;
    }
    if (lo.kind == "A") {
        return -1;
    }
    return 1;
}

ComputationGraph teleport_step(const LatticeParams &p) {
    GraphBuilder b(p, 0);
    int in = b.add("in");
    int anc = b.add("anc");
    int out = b.add("out");
    b.edge(anc, out, 1);
    return b.finish({in}, {out}, {{in, anc}}, {in, anc}, {}, 0);
}

ComputationGraph dbsl_step(const LatticeParams &p, int parity, double theta_c) {
    GraphBuilder b(p, parity);
    int in = b.add("B[k]");
    int a = b.add("A[k]");
    int c1 = b.add("A[k-1]");
    int c2 = b.add("B[k+N-1]");
    int c3 = b.add("A[k+1]");
    int c4 = b.add("B[k+N+1]");
    int out = b.add("B[k+N]");
    const double wa[4] = {1, 1, 1, -1};
    const double wo[4] = {-1, -1, 1, -1};
    const int ctrl[4] = {c1, c2, c3, c4};
    for (int i = 0; i < 4; i++) {
        b.edge(a, ctrl[i], wa[i]);
        b.edge(out, ctrl[i], wo[i]);
    }
    double s = parity_sign(parity);
    std::map<int, double> signs = {{c1, s}, {c2, s}, {c3, -s}, {c4, -s}};
    return b.finish({in}, {out}, {{in, a}}, {in, a}, signs, theta_c);
}

ComputationGraph bsl_step(const LatticeParams &p, int parity, double theta_c) {
    GraphBuilder b(p, parity);
    int in = b.add("D[k]");
    int a = b.add("A[k]");
    int bb = b.add("B[k]");
    int c = b.add("C[k+1]");
    int out = b.add("D[k+N]");
    b.edge(a, bb, 1);
    b.edge(a, c, 1);
    b.edge(out, bb, -1);
    b.edge(out, c, 1);
    double s = parity_sign(parity);
    return b.finish({in}, {out}, {{in, a}}, {in, a}, {{bb, -s}, {c, s}}, theta_c);
}

ComputationGraph mbsl_step(const LatticeParams &p, int parity, double theta_c) {
    GraphBuilder b(p, parity);
    int in = b.add("C[k]");
    int d = b.add("D[k]");
    int a = b.add("A[k]");
    int bb = b.add("B[k+1]");
    int out = b.add("C[k+N]");
    b.edge(d, bb, -1);
    b.edge(d, out, 1);
    b.edge(a, bb, 1);
    b.edge(a, out, 1);
    return b.finish({in}, {out}, {{in, d}}, {in, d}, {{a, 1.0}, {bb, 1.0}}, theta_c);
}

ComputationGraph qrl_step(const LatticeParams &p, int parity) {
    GraphBuilder b(p, parity);
    int c = b.add("C[k]");
    int bb = b.add("B[k]");
    int a = b.add("A[k]");
    int d = b.add("D[k]");
    int c_out = b.add("C[k+N]");
    int b_out = b.add("B[k+1]");
    b.edge(a, c_out, 1);
    b.edge(d, b_out, 1);
    return b.finish({c, bb}, {c_out, b_out}, {{a, d}, {bb, c}, {c, d}, {a, bb}}, {c, bb, a, d}, {}, 0);
}

ComputationGraph dbsl_region(const LatticeParams &p, int parity, double theta_c) {
    // Nodes on rails A and B' by temporal offset from k; inputs carry no edges.
    std::vector<std::optional<Node>> nodes = {
        Node{"A", -2, 0},
        std::nullopt,
        Node{"A", 0, 0},
        std::nullopt,
        Node{"A", kRailOffset - 2, 0},
        Node{"B'", -2, 0},
        Node{"A", kRailOffset - 1, 0},
        Node{"B'", -1, 0},
        Node{"A", kRailOffset, 0},
        Node{"B'", 0, 0},
        Node{"B'", kRailOffset - 2, 0},
        Node{"B'", kRailOffset, 0},
        Node{"A", -3, 0},
        Node{"B'", -3, 0},
        Node{"A", -1, 0},
        Node{"A", 1, 0},
        Node{"B'", 1, 0},
        Node{"A", kRailOffset - 3, 0},
        Node{"B'", kRailOffset - 3, 0},
        Node{"B'", kRailOffset - 1, 0},
        Node{"A", kRailOffset + 1, 0},
        Node{"B'", kRailOffset + 1, 0},
    };
    GraphBuilder b(p, parity);
    for (size_t i = 0; i < nodes.size(); i++) {
        if (!nodes[i]) {
            b.add(i == 1 ? "in_a" : "in_b");
            continue;
        }
        const Node &nd = *nodes[i];
        int off = nd.offset;
        int nm = 0;
        if (off > kRailOffset / 2) {
            off -= kRailOffset;
            nm = 1;
        }
        std::string kind = nd.kind == "B'" ? "B" : nd.kind;
        if (nd.kind == "B'") {
            nm += 1;
        }
        b.add(kind + "[" + time_label(off, nm) + "]");
    }
    for (size_t i = 0; i < nodes.size(); i++) {
        for (size_t j = i + 1; j < nodes.size(); j++) {
            if (nodes[i] && nodes[j]) {
                double s = dual_rail_sign(*nodes[i], *nodes[j]);
                if (s != 0) {
                    b.edge(static_cast<int>(i), static_cast<int>(j), s);
                }
            }
        }
    }
    double s = parity_sign(parity);
    std::map<int, double> signs = {{12, -s}, {13, -s}, {14, s}, {15, -s}, {16, -s},
                                   {17, -s}, {18, -s}, {19, s}, {20, -s}, {21, -s}};
    std::vector<int> free_modes;
    for (int i = 0; i < 10; i++) {
        free_modes.push_back(i);
    }
    return b.finish({1, 3}, {10, 11}, {{1, 0}, {3, 2}, {5, 4}, {9, 8}, {7, 6}}, free_modes, signs, theta_c);
}

struct NamedNodes {
    std::vector<Node> nodes;
    int index(const std::string &kind, int offset, int n_multiple) const {
        for (size_t i = 0; i < nodes.size(); i++) {
            if (nodes[i].kind == kind && nodes[i].offset == offset && nodes[i].n_multiple == n_multiple) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }
};

// Adds an edge between (ka, oa, na) and (kb, ob, nb) when both nodes are present.
void maybe_edge(GraphBuilder &b, const NamedNodes &nn, const Node &u, const Node &v, double sign) {
    int i = nn.index(u.kind, u.offset, u.n_multiple);
    int j = nn.index(v.kind, v.offset, v.n_multiple);
    if (i >= 0 && j >= 0) {
        b.edge(i, j, sign);
    }
}

ComputationGraph bsl_region(const LatticeParams &p, int parity, double theta_c) {
    const int k = parity;
    NamedNodes nn;
    nn.nodes = {
        {"D", -1, 0}, {"A", -1, 0}, {"D", 0, 0}, {"A", 0, 0}, {"B", 0, 0}, {"C", 0, 0},
        {"D", -1, 1}, {"A", -1, 1}, {"D", 0, 1}, {"A", 0, 1}, {"B", 0, 1}, {"C", 0, 1},
        {"D", -1, 2}, {"D", 0, 2},
        {"B", -1, 0}, {"C", 1, 0}, {"B", -1, 1}, {"C", 1, 1},
    };
    GraphBuilder b(p, parity);
    for (const auto &nd : nn.nodes) {
        b.add(nd.label());
    }
    for (int nm = 0; nm <= 1; nm++) {
        for (int off = -1; off <= 0; off++) {
            maybe_edge(b, nn, {"A", off, nm}, {"B", off, nm}, 1);
            maybe_edge(b, nn, {"A", off, nm}, {"C", off + 1, nm}, 1);
            maybe_edge(b, nn, {"D", off, nm + 1}, {"B", off, nm}, -1);
            maybe_edge(b, nn, {"D", off, nm + 1}, {"C", off + 1, nm}, 1);
        }
    }
    std::map<int, double> signs;
    for (int i = 14; i < 18; i++) {
        signs[i] = -parity_sign(nn.nodes[i].time(k));
    }
    std::vector<int> free_modes;
    for (int i = 0; i < 12; i++) {
        free_modes.push_back(i);
    }
    return b.finish({0, 2}, {12, 13}, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}}, free_modes, signs, theta_c);
}

ComputationGraph mbsl_region(const LatticeParams &p, int parity, double theta_c) {
    NamedNodes nn;
    nn.nodes = {
        {"C", -1, 0}, {"D", -1, 0}, {"C", 0, 0}, {"D", 0, 0}, {"A", 0, 0}, {"B", 0, 0},
        {"C", -1, 1}, {"D", -1, 1}, {"C", 0, 1}, {"D", 0, 1}, {"A", 0, 1}, {"B", 0, 1},
        {"C", -1, 2}, {"C", 0, 2},
        {"A", -1, 0}, {"B", 1, 0}, {"A", -1, 1}, {"B", 1, 1},
    };
    GraphBuilder b(p, parity);
    for (const auto &nd : nn.nodes) {
        b.add(nd.label());
    }
    for (int nm = 0; nm <= 1; nm++) {
        for (int off = -1; off <= 0; off++) {
            maybe_edge(b, nn, {"D", off, nm}, {"B", off + 1, nm}, -1);
            maybe_edge(b, nn, {"D", off, nm}, {"C", off, nm + 1}, 1);
            maybe_edge(b, nn, {"A", off, nm}, {"B", off + 1, nm}, 1);
            maybe_edge(b, nn, {"A", off, nm}, {"C", off, nm + 1}, 1);
        }
    }
    std::map<int, double> signs = {{14, 1.0}, {15, 1.0}, {16, 1.0}, {17, 1.0}};
    std::vector<int> free_modes;
    for (int i = 0; i < 12; i++) {
        free_modes.push_back(i);
    }
    return b.finish({0, 2}, {12, 13}, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}}, free_modes, signs, theta_c);
}

}  // namespace

std::string lattice_name(Lattice lattice) {
    switch (lattice) {
        case Lattice::TELEPORT:
            return "TELEPORT";
        case Lattice::DBSL:
            return "DBSL";
        case Lattice::BSL:
            return "BSL";
        case Lattice::MBSL:
            return "MBSL";
        case Lattice::QRL:
            return "QRL";
    }
    throw UnsupportedLattice("unknown lattice");
}

Lattice parse_lattice(const std::string &name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return std::toupper(ch); });
    for (Lattice l : {Lattice::TELEPORT, Lattice::DBSL, Lattice::BSL, Lattice::MBSL, Lattice::QRL}) {
        if (lattice_name(l) == up) {
            return l;
        }
    }
    throw UnsupportedLattice("unknown lattice '" + name + "'");
}

double effective_epsilon(double r) {
    if (!(r >= 0) || !std::isfinite(r)) {
        throw DomainError("squeezing parameter must be finite and non-negative");
    }
    return 1.0 / std::cosh(2 * r);
}

double edge_weight(Lattice lattice, double r) {
    effective_epsilon(r);
    double th = std::tanh(2 * r);
    switch (lattice) {
        case Lattice::TELEPORT:
        case Lattice::QRL:
            return th;
        case Lattice::DBSL:
            return th / 2;
        case Lattice::BSL:
        case Lattice::MBSL:
            return th / std::sqrt(2.0);
    }
    throw UnsupportedLattice("unknown lattice");
}

double db_to_r(double squeezing_db) {
    if (!(squeezing_db >= 0) || !std::isfinite(squeezing_db)) {
        throw DomainError("squeezing in dB must be finite and non-negative");
    }
    return squeezing_db / 20.0 * std::log(10.0);
}

double r_to_db(double r) {
    effective_epsilon(r);
    return 20.0 * r / std::log(10.0);
}

LatticeParams make_params(Lattice lattice, double r, double teleport_t) {
    LatticeParams p{lattice, r, edge_weight(lattice, r), effective_epsilon(r)};
    if (lattice == Lattice::TELEPORT && teleport_t >= 0) {
        if (!(teleport_t > 0 && teleport_t <= 1)) {
            throw InvalidParameter("teleportation edge weight must lie in (0, 1]");
        }
        p.t = teleport_t;
    }
    return p;
}

double default_theta_c(Lattice lattice) {
    switch (lattice) {
        case Lattice::DBSL:
        case Lattice::BSL:
            return M_PI / 4;
        case Lattice::MBSL:
            return M_PI / 2;
        default:
            return 0;
    }
}

std::map<int, double> ComputationGraph::angles(const std::vector<double> &free_angles) const {
    return angles(free_angles, theta_c);
}

std::map<int, double> ComputationGraph::angles(const std::vector<double> &free_angles, double theta_c_override) const {
    if (free_angles.size() != free_modes.size()) {
        throw DimensionError("expected " + std::to_string(free_modes.size()) + " basis angles, got " +
                             std::to_string(free_angles.size()));
    }
    std::map<int, double> out;
    for (size_t i = 0; i < free_modes.size(); i++) {
        if (!std::isfinite(free_angles[i])) {
            throw InvalidParameter("basis angles must be finite");
        }
        out[free_modes[i]] = free_angles[i];
    }
    for (const auto &[m, s] : control_signs) {
        out[m] = s * theta_c_override;
    }
    return out;
}

std::vector<int> ComputationGraph::ancilla_modes() const {
    std::vector<int> out;
    for (int m = 0; m < n_modes; m++) {
        if (std::find(input_modes.begin(), input_modes.end(), m) == input_modes.end()) {
            out.push_back(m);
        }
    }
    return out;
}

ComputationGraph single_step_graph(const LatticeParams &params, int parity, double theta_c) {
    check_parity(parity);
    switch (params.lattice) {
        case Lattice::TELEPORT:
            return teleport_step(params);
        case Lattice::DBSL:
            return dbsl_step(params, parity, theta_c);
        case Lattice::BSL:
            return bsl_step(params, parity, theta_c);
        case Lattice::MBSL:
            return mbsl_step(params, parity, theta_c);
        case Lattice::QRL:
            return qrl_step(params, parity);
    }
    throw UnsupportedLattice("unknown lattice");
}

ComputationGraph single_step_graph(const LatticeParams &params, int parity) {
    return single_step_graph(params, parity, default_theta_c(params.lattice));
}

std::vector<ComputationGraph> cz_region_graphs(const LatticeParams &params, int parity, double theta_c) {
    check_parity(parity);
    switch (params.lattice) {
        case Lattice::DBSL:
            return {dbsl_region(params, parity, theta_c)};
        case Lattice::BSL:
            return {bsl_region(params, parity, theta_c)};
        case Lattice::MBSL:
            return {mbsl_region(params, parity, theta_c)};
        case Lattice::QRL: {
            ComputationGraph first = qrl_step(params, parity);
            std::swap(first.output_modes[0], first.output_modes[1]);
            return {first, qrl_step(params, parity)};
        }
        case Lattice::TELEPORT:
            break;
    }
    throw UnsupportedLattice("no two-mode region on " + lattice_name(params.lattice));
}

std::vector<ComputationGraph> cz_region_graphs(const LatticeParams &params, int parity) {
    return cz_region_graphs(params, parity, default_theta_c(params.lattice));
}

nlohmann::json graph_to_json(const ComputationGraph &g) {
    nlohmann::json j;
    j["lattice"] = lattice_name(g.lattice);
    j["r"] = g.r;
    j["t"] = g.t;
    j["epsilon"] = g.epsilon;
    j["parity"] = g.parity;
    j["n_modes"] = g.n_modes;
    j["labels"] = g.labels;
    j["input_modes"] = g.input_modes;
    j["measured_modes"] = g.measured_modes;
    j["output_modes"] = g.output_modes;
    j["free_modes"] = g.free_modes;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto &[a, b] : g.mixing_pairs) {
        pairs.push_back({a, b});
    }
    j["mixing_pairs"] = pairs;
    nlohmann::json edges = nlohmann::json::array();
    for (int a = 0; a < g.n_modes; a++) {
        for (int b = a + 1; b < g.n_modes; b++) {
            if (g.adjacency(a, b) != 0) {
                edges.push_back({{"a", a}, {"b", b}, {"weight", g.adjacency(a, b)}});
            }
        }
    }
    j["edges"] = edges;
    nlohmann::json adj = nlohmann::json::array();
    for (int a = 0; a < g.n_modes; a++) {
        std::vector<double> row(g.n_modes);
        for (int b = 0; b < g.n_modes; b++) {
            row[b] = g.adjacency(a, b);
        }
        adj.push_back(row);
    }
    j["adjacency"] = adj;
    nlohmann::json ctrl = nlohmann::json::array();
    for (const auto &[m, s] : g.control_signs) {
        ctrl.push_back({{"mode", m}, {"angle", s * g.theta_c}});
    }
    j["controls"] = ctrl;
    return j;
}

}  // namespace cvmbqc
