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

#include "cvmbqc/oracle.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "cvmbqc/errors.h"
#include "cvmbqc/reduction.h"

namespace cvmbqc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTargetTol = 1e-5;

Mat select(const Mat &M, const std::vector<int> &rows, const std::vector<int> &cols) {
    return M(rows, cols);
}

Vec select(const Vec &v, const std::vector<int> &idx) {
    return v(idx);
}

}  // namespace

GaussianState GaussianState::vacuum(int n) {
    GaussianState s;
    s.n_modes = n;
    s.mean = Vec::Zero(2 * n);
    s.cov = Mat::Identity(2 * n, 2 * n) / 2;
    return s;
}

GaussianState GaussianState::squeezed(double vx, double vp) {
    if (!(vx > 0) || !(vp > 0)) {
        throw InvalidParameter("variances must be positive");
    }
    GaussianState s;
    s.n_modes = 1;
    s.mean = Vec::Zero(2);
    s.cov = Mat::Zero(2, 2);
    s.cov(0, 0) = vx;
    s.cov(1, 1) = vp;
    return s;
}

GaussianState GaussianState::product(const std::vector<GaussianState> &parts) {
    int n = 0;
    for (const auto &p : parts) {
        n += p.n_modes;
    }
    GaussianState s;
    s.n_modes = n;
    s.mean = Vec::Zero(2 * n);
    s.cov = Mat::Zero(2 * n, 2 * n);
    int off = 0;
    for (const auto &p : parts) {
        int k = p.n_modes;
        for (int a = 0; a < 2 * k; a++) {
            int ia = (a < k) ? off + a : n + off + a - k;
            s.mean(ia) = p.mean(a);
            for (int b = 0; b < 2 * k; b++) {
                int ib = (b < k) ? off + b : n + off + b - k;
                s.cov(ia, ib) = p.cov(a, b);
            }
        }
        off += k;
    }
    return s;
}

bool GaussianState::is_physical(double tol) const {
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    using C = std::complex<double>;
    Eigen::MatrixXcd H = cov.cast<C>() + C(0, 0.5) * omega(n_modes).cast<C>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    return es.eigenvalues().minCoeff() >= -tol;
}

GaussianState evolve(const GaussianState &state, const Mat &S) {
    if (S.rows() != state.cov.rows() || S.cols() != state.cov.cols()) {
        throw DimensionError("symplectic matrix does not match the state");
    }
    GaussianState out = state;
    out.mean = S * state.mean;
    out.cov = S * state.cov * S.transpose();
    return out;
}

GaussianState condition_homodyne(const GaussianState &state, int mode, double theta, double outcome) {
    int n = state.n_modes;
    if (mode < 0 || mode >= n) {
        throw IndexError("mode index out of range");
    }
    Vec h = Vec::Zero(2 * n);
    h(mode) = std::cos(theta);
    h(n + mode) = std::sin(theta);
    double var = h.dot(state.cov * h);
    if (!(var >= 1e-14)) {
        throw MeasurementDegenerate("measured quadrature has vanishing variance");
    }
    Vec c = state.cov * h;
    Vec mean = state.mean + c * ((outcome - h.dot(state.mean)) / var);
    Mat cov = state.cov - c * c.transpose() / var;
    std::vector<int> keep;
    for (int i = 0; i < 2 * n; i++) {
        if (i != mode && i != n + mode) {
            keep.push_back(i);
        }
    }
    GaussianState out;
    out.n_modes = n - 1;
    out.mean = select(mean, keep);
    out.cov = select(cov, keep, keep);
    return out;
}

Mat circuit_symplectic(const ComputationGraph &g, const std::map<int, double> &angles) {
    int n = g.n_modes;
    std::vector<Mat> factors;
    for (int a = 0; a < n; a++) {
        for (int b = a + 1; b < n; b++) {
            if (g.adjacency(a, b) != 0) {
                factors.push_back(embed(cz(g.adjacency(a, b)), {a, b}, n));
            }
        }
    }
    for (const auto &[i, j] : g.mixing_pairs) {
        factors.push_back(embed(beamsplitter(), {i, j}, n));
    }
    for (const auto &[m, theta] : angles) {
        if (std::find(g.output_modes.begin(), g.output_modes.end(), m) == g.output_modes.end()) {
            factors.push_back(embed(rotation(theta), {m}, n));
        }
    }
    if (factors.empty()) {
        return Mat::Identity(2 * n, 2 * n);
    }
    return compose(factors);
}

GaussianState run_graph(const ComputationGraph &g, const std::map<int, double> &angles, const GaussianState &input,
                        bool physical) {
    int n = g.n_modes;
    int n_in = static_cast<int>(g.input_modes.size());
    if (input.n_modes != n_in) {
        throw DimensionError("input state does not match the graph inputs");
    }
    const double eps = g.epsilon;
    Mat S = circuit_symplectic(g, angles);
    std::vector<int> non_output;
    for (int m = 0; m < n; m++) {
        if (std::find(g.output_modes.begin(), g.output_modes.end(), m) == g.output_modes.end()) {
            non_output.push_back(m);
        }
    }
    auto full_index = [&](int local, int n_local, const std::vector<int> &modes) {
        return local < n_local ? modes[local] : n + modes[local - n_local];
    };

    if (physical) {
        // Covariance form: prepare, evolve, then condition the measured modes one at a time.
        GaussianState s;
        s.n_modes = n;
        s.mean = Vec::Zero(2 * n);
        s.cov = Mat::Zero(2 * n, 2 * n);
        for (int m = 0; m < n; m++) {
            s.cov(m, m) = 1 / (2 * eps);
            s.cov(n + m, n + m) = eps / 2;
        }
        for (int a = 0; a < 2 * n_in; a++) {
            int ia = full_index(a, n_in, g.input_modes);
            s.cov(ia, ia) = 0;
        }
        for (int a = 0; a < 2 * n_in; a++) {
            int ia = full_index(a, n_in, g.input_modes);
            s.mean(ia) = input.mean(a);
            for (int b = 0; b < 2 * n_in; b++) {
                s.cov(ia, full_index(b, n_in, g.input_modes)) = input.cov(a, b);
            }
        }
        s = evolve(s, S);
        std::vector<int> remaining;
        for (int m = 0; m < n; m++) {
            remaining.push_back(m);
        }
        for (auto it = non_output.rbegin(); it != non_output.rend(); ++it) {
            s = condition_homodyne(s, *it, 0.0, 0.0);
            remaining.erase(std::find(remaining.begin(), remaining.end(), *it));
        }
        int n_out = static_cast<int>(g.output_modes.size());
        std::vector<int> order;
        for (int o : g.output_modes) {
            order.push_back(static_cast<int>(std::find(remaining.begin(), remaining.end(), o) - remaining.begin()));
        }
        for (int o = 0; o < n_out; o++) {
            order.push_back(n_out + order[o]);
        }
        GaussianState out;
        out.n_modes = n_out;
        out.mean = select(s.mean, order);
        out.cov = select(s.cov, order, order);
        return out;
    }

    // Information form with a flat prior on the antisqueezed x quadratures of the cluster modes.
    Mat L = Mat::Zero(2 * n, 2 * n);
    Vec eta = Vec::Zero(2 * n);
    for (int m = 0; m < n; m++) {
        if (std::find(g.input_modes.begin(), g.input_modes.end(), m) == g.input_modes.end()) {
            L(n + m, n + m) = 2 / eps;
        }
    }
    Eigen::LDLT<Mat> in_ldlt(input.cov);
    Mat P_in = in_ldlt.solve(Mat::Identity(2 * n_in, 2 * n_in));
    Vec h_in = P_in * input.mean;
    for (int a = 0; a < 2 * n_in; a++) {
        int ia = full_index(a, n_in, g.input_modes);
        eta(ia) = h_in(a);
        for (int b = 0; b < 2 * n_in; b++) {
            L(ia, full_index(b, n_in, g.input_modes)) = P_in(a, b);
        }
    }
    Mat Sinv = symplectic_inverse(S);
    Mat Lp = Sinv.transpose() * L * Sinv;
    Vec etap = Sinv.transpose() * eta;

    std::vector<int> keep;
    for (int o : g.output_modes) {
        keep.push_back(o);
    }
    for (int o : g.output_modes) {
        keep.push_back(n + o);
    }
    std::vector<int> marg;
    for (int m : non_output) {
        marg.push_back(n + m);
    }
    Mat Lkk = select(Lp, keep, keep);
    Mat Lkm = select(Lp, keep, marg);
    Mat Lmm = select(Lp, marg, marg);
    Eigen::LDLT<Mat> mm(Lmm);
    Mat Lk = Lkk - Lkm * mm.solve(Lkm.transpose());
    Vec ek = select(etap, keep) - Lkm * mm.solve(select(etap, marg));
    Lk = (Lk + Lk.transpose()) / 2;
    Eigen::LDLT<Mat> kk(Lk);
    GaussianState out;
    out.n_modes = static_cast<int>(g.output_modes.size());
    out.cov = kk.solve(Mat::Identity(Lk.rows(), Lk.cols()));
    out.cov = (out.cov + out.cov.transpose()) / 2;
    out.mean = out.cov * ek;
    return out;
}

nlohmann::json report_to_json(const VerifyReport &r) {
    return {{"plan", r.plan},
            {"r", r.r},
            {"max_mean_dev", r.max_mean_dev},
            {"max_cov_dev", r.max_cov_dev},
            {"target_residual", r.target_residual},
            {"pass", r.pass}};
}

double scaled_tolerance(const GatePlan &plan, double tol) {
    return tol * std::max(1.0, plan_noise_variances(plan).maxCoeff());
}

VerifyReport verify_plan(const GatePlan &plan, double tol) {
    std::vector<GateResult> steps;
    for (const auto &s : plan.steps) {
        steps.push_back(reduce(s.graph, s.angles, s.theta_c));
    }
    GateResult res = chain(steps);
    const double eps = effective_epsilon(plan.r);
    const int d = static_cast<int>(res.G.cols());
    const int n_in = d / 2;
    Mat noise = res.N * res.N.transpose() * (eps / 2);

    // Four probes with distinct covariances and linearly independent means.
    const int n_probes = 4;
    Mat means_in(d, n_probes);
    Mat means_out(d, n_probes);
    double max_cov = 0;
    for (int k = 0; k < n_probes; k++) {
        std::vector<GaussianState> parts;
        for (int m = 0; m < n_in; m++) {
            GaussianState p;
            switch (k) {
                case 0:
                    p = GaussianState::vacuum(1);
                    break;
                case 1:
                    p = GaussianState::squeezed(2.0, 0.125);
                    break;
                case 2:
                    p = evolve(GaussianState::squeezed(3.0, 1.0 / 12), rotation(0.7 + 0.4 * m));
                    break;
                default:
                    p = GaussianState::squeezed(0.9 + 0.3 * m, 0.6);
                    break;
            }
            parts.push_back(p);
        }
        GaussianState in = GaussianState::product(parts);
        for (int j = 0; j < d; j++) {
            in.mean(j) = std::cos(1.3 * (k + 1) * (j + 1)) + 0.25 * (j == k);
        }
        GaussianState s = in;
        for (const auto &step : plan.steps) {
            s = run_graph(step.graph, step.graph.angles(step.angles, step.theta_c), s, false);
        }
        Mat expected = res.G * in.cov * res.G.transpose() + noise;
        max_cov = std::max(max_cov, (s.cov - expected).cwiseAbs().maxCoeff());
        means_in.col(k) = in.mean;
        means_out.col(k) = s.mean;
    }
    Mat G_est = means_out * means_in.completeOrthogonalDecomposition().pseudoInverse();
    double max_mean = std::max((G_est - res.G).cwiseAbs().maxCoeff(),
                               (means_out - res.G * means_in).cwiseAbs().maxCoeff());
    VerifyReport rep;
    rep.plan = plan_name(plan);
    rep.r = plan.r;
    rep.max_mean_dev = max_mean;
    rep.max_cov_dev = max_cov;
    rep.target_residual = plan_residual(plan);
    rep.pass = std::isfinite(max_mean) && std::isfinite(max_cov) && max_mean <= tol && max_cov <= tol &&
               rep.target_residual < kTargetTol;
    return rep;
}

namespace {

// One-dimensional density on a uniform grid. Delta and Flat stand for the zero- and
// infinite-width limits that appear at t = 0.
struct Density {
    enum Kind { Normal, Delta, Flat };
    Kind kind = Normal;
    std::vector<double> f;
};

class Grid1D {
   public:
    Grid1D(int points, double half_width) : n_(points), dx_(2 * half_width / (points - 1)), x0_(-half_width) {}

    double x(int i) const {
        return x0_ + i * dx_;
    }

    Density gaussian(double var) const {
        Density d;
        d.f.resize(n_);
        for (int i = 0; i < n_; i++) {
            d.f[i] = std::exp(-x(i) * x(i) / (2 * var));
        }
        normalize(&d);
        return d;
    }

    // Convolution with G_d, a Gaussian of variance d/2.
    Density conv(const Density &in, double d) const {
        if (d == 0) {
            return in;
        }
        if (std::isinf(d) || in.kind == Density::Flat) {
            return Density{Density::Flat, {}};
        }
        if (in.kind == Density::Delta) {
            return gaussian(d / 2);
        }
        double sigma = std::sqrt(d / 2);
        int half = std::min(n_ - 1, static_cast<int>(std::ceil(12 * sigma / dx_)));
        std::vector<double> k(2 * half + 1);
        for (int m = -half; m <= half; m++) {
            double u = m * dx_;
            k[m + half] = std::exp(-u * u / d);
        }
        Density out;
        out.f.assign(n_, 0.0);
        for (int i = 0; i < n_; i++) {
            double acc = 0;
            int lo = std::max(0, i - half);
            int hi = std::min(n_ - 1, i + half);
            for (int j = lo; j <= hi; j++) {
                acc += k[i - j + half] * in.f[j];
            }
            out.f[i] = acc;
        }
        normalize(&out);
        return out;
    }

    // Multiplication by the envelope G_d(x).
    Density env(const Density &in, double d) const {
        if (std::isinf(d)) {
            return in;
        }
        if (d == 0 || in.kind == Density::Delta) {
            return Density{Density::Delta, {}};
        }
        if (in.kind == Density::Flat) {
            return gaussian(d / 2);
        }
        Density out = in;
        for (int i = 0; i < n_; i++) {
            out.f[i] *= std::exp(-x(i) * x(i) / d);
        }
        normalize(&out);
        return out;
    }

    // f(x) = int G_a(x - u) G_b(2u - x) h(u) du.
    Density skew_kernel(const Density &h, double a, double b) const {
        if (h.kind == Density::Flat || std::isinf(a)) {
            return Density{Density::Flat, {}};
        }
        if (h.kind == Density::Delta) {
            return gaussian(1 / (2 / a + 2 / b));
        }
        Density out;
        out.f.assign(n_, 0.0);
        for (int i = 0; i < n_; i++) {
            double acc = 0;
            for (int j = 0; j < n_; j++) {
                double u = x(j);
                double e1 = x(i) - u;
                double e2 = 2 * u - x(i);
                acc += std::exp(-e1 * e1 / a - e2 * e2 / b) * h.f[j];
            }
            out.f[i] = acc;
        }
        normalize(&out);
        return out;
    }

    double variance(const Density &d) const {
        if (d.kind == Density::Delta) {
            return 0;
        }
        if (d.kind == Density::Flat) {
            return kInf;
        }
        double m = 0;
        for (int i = 0; i < n_; i++) {
            m += x(i) * d.f[i];
        }
        double v = 0;
        for (int i = 0; i < n_; i++) {
            v += (x(i) - m) * (x(i) - m) * d.f[i];
        }
        return v;
    }

   private:
    void normalize(Density *d) const {
        double s = 0;
        for (double v : d->f) {
            s += v;
        }
        if (!(s > 0)) {
            throw DomainError("density vanished on the grid");
        }
        for (double &v : d->f) {
            v /= s;
        }
    }

    int n_;
    double dx_;
    double x0_;
};

// Variance algebra of the same chains, used only to size the grid.
double conv_var(double v, double d) {
    return v + d / 2;
}

double env_var(double v, double d) {
    if (std::isinf(d)) {
        return v;
    }
    if (std::isinf(v)) {
        return d / 2;
    }
    return 1 / (1 / v + 2 / d);
}

double skew_var(double v, double a, double b) {
    double alpha = 1 / a + 1 / b;
    double beta = 1 / a + 4 / b + 1 / (2 * v);
    double gamma = -2 / a - 4 / b;
    return 2 * beta / (4 * alpha * beta - gamma * gamma);
}

struct Op {
    enum Kind { Conv, Env, Skew };
    Kind kind;
    double d;
    double b = 0;
};

std::pair<std::vector<Op>, std::vector<Op>> identity_chain(Lattice lattice, double t, double eps) {
    double t2 = t * t;
    double t4 = t2 * t2;
    switch (lattice) {
        case Lattice::DBSL:
            return {{{Op::Conv, eps / (16 * t4)}, {Op::Env, 1 / (4 * t2 * eps)}, {Op::Conv, eps / (4 * t2)},
                     {Op::Env, 1 / eps}},
                    {{Op::Env, 16 * t4 / eps}, {Op::Conv, 4 * t2 * eps}, {Op::Env, 4 * t2 / eps}, {Op::Conv, eps}}};
        case Lattice::BSL:
            return {{{Op::Conv, eps / (4 * t4)}, {Op::Env, 1 / (2 * t2 * eps)}, {Op::Conv, eps / (2 * t2)},
                     {Op::Env, 1 / eps}},
                    {{Op::Env, 4 * t4 / eps}, {Op::Conv, 2 * t2 * eps}, {Op::Env, 2 * t2 / eps}, {Op::Conv, eps}}};
        case Lattice::MBSL:
            return {{{Op::Conv, eps / (4 * t2)}, {Op::Skew, eps / (4 * t2), 1 / eps}, {Op::Env, 1 / eps}},
                    {{Op::Env, 4 * t2 / eps}, {Op::Conv, 2 * eps}, {Op::Env, 2 * eps + 4 * t2 / eps}}};
        default:
            break;
    }
    throw UnsupportedLattice("Wigner chains exist for DBSL, BSL and MBSL only");
}

double run_chain(const std::vector<Op> &ops, double v0, const WignerGrid &grid) {
    double vmax = v0;
    double v = v0;
    for (const auto &op : ops) {
        switch (op.kind) {
            case Op::Conv:
                v = conv_var(v, op.d);
                break;
            case Op::Env:
                v = env_var(v, op.d);
                break;
            case Op::Skew:
                v = std::isinf(op.d) ? kInf : skew_var(v, op.d, op.b);
                break;
        }
        if (std::isfinite(v)) {
            vmax = std::max(vmax, v);
        }
    }
    Grid1D g(grid.points, grid.sigmas * std::sqrt(vmax));
    Density d = g.gaussian(v0);
    for (const auto &op : ops) {
        switch (op.kind) {
            case Op::Conv:
                d = g.conv(d, op.d);
                break;
            case Op::Env:
                d = g.env(d, op.d);
                break;
            case Op::Skew:
                d = g.skew_kernel(d, op.d, op.b);
                break;
        }
    }
    return g.variance(d);
}

}  // namespace

std::pair<double, double> wigner_identity_moments(Lattice lattice, double t, double epsilon, double probe_vx,
                                                  double probe_vp, const WignerGrid &grid) {
    if (grid.points < 256 || grid.sigmas < 6) {
        throw InvalidParameter("Wigner grid needs at least 256 points covering 6 standard deviations");
    }
    if (!(t >= 0) || !(epsilon > 0)) {
        throw DomainError("need t >= 0 and epsilon > 0");
    }
    auto [xs, ps] = identity_chain(lattice, t, epsilon);
    return {run_chain(xs, probe_vx, grid), run_chain(ps, probe_vp, grid)};
}

nlohmann::json report_to_json(const WignerReport &r) {
    return {{"lattice", lattice_name(r.lattice)},
            {"r", r.r},
            {"grid_var_x", r.grid_var_x},
            {"grid_var_p", r.grid_var_p},
            {"oracle_var_x", r.oracle_var_x},
            {"oracle_var_p", r.oracle_var_p},
            {"max_rel_dev", r.max_rel_dev},
            {"t0_var_x", r.t0_var_x},
            {"t0_var_p", r.t0_var_p},
            {"t0_rel_dev", r.t0_rel_dev},
            {"pass", r.pass}};
}

WignerReport wigner_limit_check(Lattice lattice, double r, const WignerGrid &grid, double tol) {
    const double vx = 0.8;
    const double vp = 0.3125;
    LatticeParams params = make_params(lattice, r);
    WignerReport rep;
    rep.lattice = lattice;
    rep.r = r;
    std::tie(rep.grid_var_x, rep.grid_var_p) = wigner_identity_moments(lattice, params.t, params.epsilon, vx, vp, grid);

    GatePlan plan = basis_for(lattice, GateId::I, r, 0);
    const PlanStep &step = plan.steps.front();
    GaussianState out = run_graph(step.graph, step.graph.angles(step.angles, step.theta_c),
                                  GaussianState::squeezed(vx, vp), true);
    rep.oracle_var_x = out.cov(0, 0);
    rep.oracle_var_p = out.cov(1, 1);
    rep.max_rel_dev = std::max(std::abs(rep.grid_var_x - rep.oracle_var_x) / rep.oracle_var_x,
                               std::abs(rep.grid_var_p - rep.oracle_var_p) / rep.oracle_var_p);

    std::tie(rep.t0_var_x, rep.t0_var_p) = wigner_identity_moments(lattice, 0.0, params.epsilon, vx, vp, grid);
    double ex = 1 / (2 * params.epsilon);
    double ep = params.epsilon / 2;
    rep.t0_rel_dev = std::max(std::abs(rep.t0_var_x - ex) / ex, std::abs(rep.t0_var_p - ep) / ep);
    rep.pass = rep.max_rel_dev <= tol && rep.t0_rel_dev <= tol;
    return rep;
}

}  // namespace cvmbqc
