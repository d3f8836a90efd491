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

#include "cvmbqc/optimizer.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multifit_nlinear.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "cvmbqc/errors.h"
#include "cvmbqc/gkp.h"
#include "cvmbqc/reduction.h"

namespace cvmbqc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Residual at which a point counts as lying on the solution manifold during refinement.
constexpr double kOnManifold = 1e-9;
constexpr double kFailedResidual = 1e3;
constexpr double kFiniteDiffStep = 1e-6;

struct Evaluator {
    const SearchProblem &problem;
    int n_angles;
    bool variable_theta_c;
    double fixed_theta_c;

    int dim() const {
        return n_angles + (variable_theta_c ? 1 : 0);
    }

    void split(const Vec &x, std::vector<double> *angles, double *theta_c) const {
        angles->assign(x.data(), x.data() + n_angles);
        *theta_c = variable_theta_c ? x(n_angles) : fixed_theta_c;
    }

    bool eval(const Vec &x, Mat *G, double *perr) const {
        std::vector<double> angles;
        double tc;
        split(x, &angles, &tc);
        return problem.evaluate(angles, tc, G, perr);
    }

    Vec residual(const Vec &x) const {
        Mat G;
        double perr;
        Eigen::Index m = problem.target.size();
        if (!eval(x, &G, &perr)) {
            return Vec::Constant(m, kFailedResidual);
        }
        Mat d = G - problem.target;
        return Eigen::Map<Vec>(d.data(), m);
    }

    double l1(const Vec &x) const {
        return residual(x).cwiseAbs().sum();
    }

    double log_perr(const Vec &x) const {
        Mat G;
        double perr;
        if (!eval(x, &G, &perr) || !(perr > 0)) {
            return 1e9;
        }
        return std::log(perr);
    }

    double objective(const Vec &x, double w) const {
        Mat G;
        double perr;
        if (!eval(x, &G, &perr) || !(perr > 0)) {
            return kInf;
        }
        return entrywise_l1(G - problem.target) + w * std::log(perr);
    }

    Mat jacobian(const Vec &x) const {
        Mat J(problem.target.size(), dim());
        for (int k = 0; k < dim(); k++) {
            Vec a = x;
            Vec b = x;
            a(k) += kFiniteDiffStep;
            b(k) -= kFiniteDiffStep;
            J.col(k) = (residual(a) - residual(b)) / (2 * kFiniteDiffStep);
        }
        return J;
    }

    Vec log_perr_gradient(const Vec &x) const {
        Vec g(dim());
        for (int k = 0; k < dim(); k++) {
            Vec a = x;
            Vec b = x;
            a(k) += kFiniteDiffStep;
            b(k) -= kFiniteDiffStep;
            g(k) = (log_perr(a) - log_perr(b)) / (2 * kFiniteDiffStep);
        }
        return g;
    }
};

Vec to_vec(const gsl_vector *v) {
    Vec out(v->size);
    for (size_t i = 0; i < v->size; i++) {
        out(i) = gsl_vector_get(v, i);
    }
    return out;
}

struct SimplexContext {
    const Evaluator *ev;
    double w;
};

double simplex_f(const gsl_vector *v, void *params) {
    auto *ctx = static_cast<SimplexContext *>(params);
    double f = ctx->ev->objective(to_vec(v), ctx->w);
    return std::isfinite(f) ? f : 1e12;
}

Vec simplex_descent(const Evaluator &ev, const Vec &x0, double w, const OptimizerConfig &config) {
    int n = ev.dim();
    SimplexContext ctx{&ev, w};
    gsl_multimin_function fn{&simplex_f, static_cast<size_t>(n), &ctx};
    gsl_vector *x = gsl_vector_alloc(n);
    gsl_vector *step = gsl_vector_alloc(n);
    for (int i = 0; i < n; i++) {
        gsl_vector_set(x, i, x0(i));
    }
    gsl_vector_set_all(step, 0.5);
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    for (int it = 0; it < config.simplex_max_evals; it++) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) {
            break;
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), config.local_tol) == GSL_SUCCESS) {
            break;
        }
    }
    Vec out = to_vec(gsl_multimin_fminimizer_x(s));
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(x);
    gsl_vector_free(step);
    return out;
}

int lsq_f(const gsl_vector *v, void *params, gsl_vector *f) {
    auto *ev = static_cast<const Evaluator *>(params);
    Vec r = ev->residual(to_vec(v));
    for (Eigen::Index i = 0; i < r.size(); i++) {
        gsl_vector_set(f, i, r(i));
    }
    return GSL_SUCCESS;
}

// Levenberg-Marquardt projection onto G = T.
Vec project(const Evaluator &ev, const Vec &x0) {
    int p = ev.dim();
    int n = static_cast<int>(ev.problem.target.size());
    gsl_multifit_nlinear_parameters params = gsl_multifit_nlinear_default_parameters();
    params.scale = gsl_multifit_nlinear_scale_levenberg;
    gsl_multifit_nlinear_workspace *w = gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust, &params, n, p);
    gsl_multifit_nlinear_fdf fdf;
    fdf.f = &lsq_f;
    fdf.df = nullptr;
    fdf.fvv = nullptr;
    fdf.n = n;
    fdf.p = p;
    fdf.params = const_cast<Evaluator *>(&ev);
    gsl_vector *x = gsl_vector_alloc(p);
    for (int i = 0; i < p; i++) {
        gsl_vector_set(x, i, x0(i));
    }
    gsl_multifit_nlinear_init(x, &fdf, w);
    int info = 0;
    gsl_multifit_nlinear_driver(300, 1e-15, 1e-15, 1e-15, nullptr, nullptr, &info, w);
    Vec out = to_vec(gsl_multifit_nlinear_position(w));
    gsl_multifit_nlinear_free(w);
    gsl_vector_free(x);
    return out;
}

// Projected-gradient descent of log P_err along the null space of the residual Jacobian,
// re-projecting onto G = T after every step.
Vec refine(const Evaluator &ev, Vec x, int iters) {
    double f0 = ev.log_perr(x);
    double step = 0.1;
    for (int it = 0; it < iters; it++) {
        Mat J = ev.jacobian(x);
        Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeFullV);
        const Vec &sv = svd.singularValues();
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); i++) {
            if (sv(i) > 1e-8 * sv(0)) {
                rank++;
            }
        }
        int nullity = ev.dim() - rank;
        if (nullity <= 0) {
            break;
        }
        Mat basis = svd.matrixV().rightCols(nullity);
        Vec pg = basis * (basis.transpose() * ev.log_perr_gradient(x));
        double norm = pg.norm();
        if (norm < 1e-9) {
            break;
        }
        bool moved = false;
        while (step > 1e-10) {
            Vec xn = project(ev, x - step * pg / norm);
            double fn = ev.log_perr(xn);
            if (ev.l1(xn) < kOnManifold && fn < f0) {
                x = xn;
                f0 = fn;
                step *= 1.5;
                moved = true;
                break;
            }
            step /= 2;
        }
        if (!moved) {
            break;
        }
    }
    return x;
}

bool better(const OptResult &a, const OptResult &b) {
    if (a.accepted != b.accepted) {
        return a.accepted;
    }
    if (a.accepted) {
        if (a.perr != b.perr) {
            return a.perr < b.perr;
        }
        if (a.residual != b.residual) {
            return a.residual < b.residual;
        }
    } else {
        if (a.residual != b.residual) {
            return a.residual < b.residual;
        }
        if (a.perr != b.perr) {
            return a.perr < b.perr;
        }
    }
    if (a.angles != b.angles) {
        return a.angles < b.angles;
    }
    return a.theta_c < b.theta_c;
}

struct GslErrorsOff {
    GslErrorsOff() {
        gsl_set_error_handler_off();
    }
};

}  // namespace

std::vector<double> OptimizerConfig::default_weight_grid() {
    std::vector<double> w;
    for (int e = -8; e <= 0; e++) {
        w.push_back(std::pow(10.0, e));
    }
    return w;
}

void OptimizerConfig::validate() const {
    if (weight_grid.empty()) {
        throw InvalidParameter("weight grid must be nonempty");
    }
    for (double w : weight_grid) {
        if (!(w > 0)) {
            throw InvalidParameter("weights must be positive");
        }
    }
    if (restarts < 1) {
        throw InvalidParameter("restarts must be positive");
    }
    if (!(residual_tol > 0) || !(local_tol > 0)) {
        throw InvalidParameter("tolerances must be positive");
    }
}

OptimizerConfig optimizer_config_from_json(const nlohmann::json &j) {
    OptimizerConfig c;
    c.weight_grid = j.value("weight_grid", c.weight_grid);
    c.restarts = j.value("restarts", c.restarts);
    c.residual_tol = j.value("residual_tol", c.residual_tol);
    c.local_tol = j.value("local_tol", c.local_tol);
    c.simplex_max_evals = j.value("simplex_max_evals", c.simplex_max_evals);
    c.refine_iters = j.value("refine_iters", c.refine_iters);
    c.seed = j.value("seed", c.seed);
    c.variable_theta_c = j.value("variable_theta_c", c.variable_theta_c);
    c.warm_starts = j.value("warm_starts", c.warm_starts);
    c.verbose = j.value("verbose", c.verbose);
    c.validate();
    return c;
}

nlohmann::json optimizer_config_to_json(const OptimizerConfig &c) {
    return {{"weight_grid", c.weight_grid},   {"restarts", c.restarts},
            {"residual_tol", c.residual_tol}, {"local_tol", c.local_tol},
            {"simplex_max_evals", c.simplex_max_evals}, {"refine_iters", c.refine_iters},
            {"seed", c.seed},                 {"variable_theta_c", c.variable_theta_c},
            {"warm_starts", c.warm_starts},   {"verbose", c.verbose}};
}

int SearchProblem::n_angles() const {
    int n = 0;
    for (const auto &g : steps) {
        n += static_cast<int>(g.free_modes.size());
    }
    return n;
}

bool SearchProblem::evaluate(const std::vector<double> &angles, double theta_c, Mat *G, double *perr) const {
    std::vector<GateResult> results;
    size_t offset = 0;
    try {
        for (const auto &g : steps) {
            std::vector<double> a(angles.begin() + offset, angles.begin() + offset + g.free_modes.size());
            offset += g.free_modes.size();
            results.push_back(reduce(g, a, theta_c));
        }
    } catch (const MeasurementDegenerate &) {
        return false;
    }
    GateResult res = chain(results);
    *G = res.G;
    *perr = gate_budget(res, r).perr;
    return std::isfinite(*perr) && res.G.allFinite();
}

double objective(const SearchProblem &problem, const std::vector<double> &angles, double theta_c, double w) {
    if (!(w > 0)) {
        throw InvalidParameter("weight must be positive");
    }
    Mat G;
    double perr;
    if (!problem.evaluate(angles, theta_c, &G, &perr) || !(perr > 0)) {
        return kInf;
    }
    return entrywise_l1(G - problem.target) + w * std::log(perr);
}

double objective(const std::vector<double> &angles, const ComputationGraph &graph, const Mat &target, double w,
                 double r) {
    SearchProblem p{{graph}, target, r};
    return objective(p, angles, graph.theta_c, w);
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2 * M_PI);
    if (w >= M_PI) {
        w -= 2 * M_PI;
    }
    return w;
}

OptResult search(const SearchProblem &problem, const OptimizerConfig &config) {
    static GslErrorsOff gsl_errors_off;
    config.validate();
    if (problem.steps.empty()) {
        throw InvalidParameter("search needs at least one graph");
    }
    const ComputationGraph &first = problem.steps.front();
    double tc0 = first.theta_c;
    if (config.variable_theta_c && tc0 == 0) {
        tc0 = default_theta_c(first.lattice);
    }
    Evaluator ev{problem, problem.n_angles(), config.variable_theta_c, first.theta_c};
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uniform(-M_PI, M_PI);
    std::normal_distribution<double> normal(0.0, 1.0);

    OptResult best;
    best.residual = kInf;
    for (int i = 0; i < config.restarts; i++) {
        Vec x0(ev.dim());
        if (i < static_cast<int>(config.warm_starts.size())) {
            const auto &ws = config.warm_starts[i];
            if (static_cast<int>(ws.size()) != ev.n_angles && static_cast<int>(ws.size()) != ev.dim()) {
                throw DimensionError("warm start has the wrong number of angles");
            }
            for (int k = 0; k < ev.dim(); k++) {
                x0(k) = (k < static_cast<int>(ws.size())) ? ws[k] : tc0;
            }
        } else {
            for (int k = 0; k < ev.n_angles; k++) {
                x0(k) = uniform(rng);
            }
            if (config.variable_theta_c) {
                x0(ev.n_angles) = tc0 + 0.2 * normal(rng);
            }
        }
        double w = config.weight_grid[i % config.weight_grid.size()];
        Vec x = simplex_descent(ev, x0, w, config);
        if (!std::isfinite(ev.objective(x, w))) {
            x = x0;
        }
        x = project(ev, x);
        if (ev.l1(x) < kOnManifold) {
            x = refine(ev, x, config.refine_iters);
        }
        OptResult cand;
        for (int k = 0; k < ev.n_angles; k++) {
            cand.angles.push_back(wrap_angle(x(k)));
        }
        cand.theta_c = config.variable_theta_c ? wrap_angle(x(ev.n_angles)) : first.theta_c;
        Mat G;
        double perr;
        if (problem.evaluate(cand.angles, cand.theta_c, &G, &perr)) {
            cand.residual = entrywise_l1(G - problem.target);
            cand.perr = perr;
        } else {
            cand.residual = kInf;
            cand.perr = 1;
        }
        cand.accepted = cand.residual < config.residual_tol;
        if (config.verbose) {
            std::fprintf(stderr, "  restart %d w=%.0e residual=%.2e perr=%.6e%s\n", i, w, cand.residual, cand.perr,
                         cand.accepted ? "" : " (rejected)");
        }
        if (i == 0 || better(cand, best)) {
            best = cand;
        }
    }
    best.restarts_used = config.restarts;
    return best;
}

OptResult search(const ComputationGraph &graph, const Mat &target, double r, const OptimizerConfig &config) {
    return search(SearchProblem{{graph}, target, r}, config);
}

}  // namespace cvmbqc
