/*
 * fcm: convex polyhedral Fuchsian cone-manifolds
 * Copyright 2026 the fcm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fcm/io.hpp"
#include "fcm/variational.hpp"

namespace {

using namespace fcm;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitContinuation = 4;
constexpr int kExitBudget = 5;

struct JobConfig {
    std::string input, output, trace;
    double tol = 1e-10;
    double volTol = 1e-9;
    int maxIter = 200;
    unsigned seed = 1;
    std::vector<int> W;
    double tau = 0.1;
    int steps = 16;
    double budgetDelta = 0.5;
};

int cmdValidate(const JobConfig& cfg) {
    io::SurfaceFile sf = io::read_surface(cfg.input);
    const ConeMetric& m = sf.metric;
    int violations = 0;
    auto report = [&](const std::string& what) {
        std::cout << "violation: " << what << "\n";
        ++violations;
    };
    double gb = m.gaussBonnetResidual();
    if (std::fabs(gb) > 1e-10)
        report("gauss-bonnet residual " + std::to_string(gb));
    auto lam = m.vertexAngles();
    for (size_t v = 0; v < lam.size(); ++v)
        if (lam[v] > 2.0 * kPi + 1e-12)
            report("not convex: vertex " + std::to_string(v) + " has angle " +
                   std::to_string(lam[v]));
    if (sf.heights) {
        const auto& s = m.surface();
        for (int e = 0; e < s.nEdges(); ++e) {
            auto [a, b] = s.edgeHalfedges(e);
            double du = (*sf.heights)[s.origin(a)], dv = (*sf.heights)[s.origin(b)];
            if (std::fabs(du - dv) >= m.length(e))
                report("edge " + std::to_string(e) + " violates |h_u - h_v| < l_e");
        }
    }
    if (violations == 0) {
        std::cout << "ok: genus " << m.surface().genus() << ", " << m.surface().nVertices()
                  << " vertices, " << m.surface().nEdges() << " edges, "
                  << m.surface().nFaces() << " faces\n";
        return kExitOk;
    }
    return kExitInvariant;
}

int cmdRealize(const JobConfig& cfg) {
    io::SurfaceFile sf = io::read_surface(cfg.input);
    RealizeOptions opts;
    opts.tol = cfg.tol;
    opts.volTol = cfg.volTol;
    opts.maxIter = cfg.maxIter;
    if (sf.heights) opts.h0 = sf.heights->values;
    RealizeResult res = realize(sf.metric, opts);
    Heights h = res.manifold.heights();
    if (!cfg.output.empty()) io::write_surface(cfg.output, sf.metric, &h);
    if (!cfg.trace.empty()) {
        std::ofstream tr(cfg.trace);
        tr << "# fcm realize trace v1\niter,max_kappa,S,step\n";
        tr.precision(17);
        for (const auto& row : res.trace)
            tr << row.iter << "," << row.maxKappa << "," << row.S << "," << row.step << "\n";
    }
    std::cout.precision(17);
    std::cout << "converged in " << res.iterations << " iterations, max|kappa| = "
              << res.trace.back().maxKappa << ", S = " << res.trace.back().S << "\n";
    return kExitOk;
}

int cmdFlow(const JobConfig& cfg) {
    io::SurfaceFile sf = io::read_surface(cfg.input);
    if (!sf.heights) throw PreconditionViolated("flow: input must carry realized heights");
    FuchsianConeManifold P0 = assemble(sf.metric, *sf.heights);
    FlowOptions fopts;
    fopts.tol = cfg.tol;
    fopts.volTol = cfg.volTol;
    std::vector<int> W = cfg.W;
    if (W.empty()) W.push_back(0);
    GapResult gr = main_lemma_1_gap(P0, W, cfg.tau, cfg.steps, fopts);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        out = &file;
    }
    out->precision(17);
    *out << "# fcm flow trace v1\nt,S";
    for (int w : W) *out << ",kappa_w" << w;
    for (int v = 0; v < sf.metric.surface().nVertices(); ++v) *out << ",h" << v;
    *out << "\n";
    for (const auto& st : gr.flow.states) {
        *out << st.t << "," << st.S;
        for (double k : st.kappaW) *out << "," << k;
        for (double h : st.heights) *out << "," << h;
        *out << "\n";
    }
    std::cout.precision(17);
    std::cout << "gap = " << gr.gap << ", bound = " << gr.bound
              << ", gap >= bound: " << (gr.ok ? "PASS" : "FAIL") << "\n";
    return gr.ok ? kExitOk : kExitInvariant;
}

int cmdSweep(const JobConfig& cfg) {
    ConeTriangle t = io::read_cone_triangle(cfg.input);
    MergeBudget budget = MergeBudget::fromDelta(cfg.budgetDelta);
    SweepOutcome outcome = sweep_in(t, budget);
    for (const auto& st : outcome.log)
        std::cout << "merge " << st.u << "+" << st.v << " -> " << st.w << ": chord "
                  << st.chordLength << " < " << budget.Delta << ", nu_w " << st.nuW
                  << " < budget " << st.nuBudget << ", diam_ub " << st.diamUpperAfter << "\n";
    std::string text = io::swept_to_text(outcome);
    if (!cfg.output.empty()) {
        std::ofstream out(cfg.output);
        out << text;
    } else {
        std::cout << text;
    }
    return kExitOk;
}

/// Deterministic seeded property battery: Schlaefli finite differences,
/// Hessian definiteness, slope report, link inequality.
int cmdCheck(const JobConfig& cfg) {
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int failures = 0;
    auto verdict = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "pass: " : "FAIL: ") << name << "\n";
        if (!ok) ++failures;
    };

    // Schlaefli finite-difference identity on random prisms
    {
        bool ok = true;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            double l = 0.5 + uni(rng), h = 0.3 + uni(rng);
            double l12 = l, l13 = l * (0.9 + 0.2 * uni(rng)), l23 = l * (0.9 + 0.2 * uni(rng));
            double h1 = h, h2 = h * (0.9 + 0.2 * uni(rng)), h3 = h * (0.9 + 0.2 * uni(rng));
            const double eps = 1e-4, quadTol = 1e-12;
            auto at = [&](double dh) { return solve_prism(l12, l13, l23, h1, h2, h3 + dh); };
            PrismSolved pp = at(eps), pm = at(-eps), p0 = at(0);
            if (!pp.ultraparallel || !pm.ultraparallel || !p0.ultraparallel) continue;
            double dvol = (prism_volume(pp, quadTol) - prism_volume(pm, quadTol)) / (2 * eps);
            double rhs = h1 * (pp.om1 - pm.om1) + h2 * (pp.om2 - pm.om2) +
                         h3 * (pp.om3 - pm.om3) + l12 * (pp.phi12 - pm.phi12) +
                         l13 * (pp.phi13 - pm.phi13) + l23 * (pp.phi23 - pm.phi23);
            rhs /= 2 * eps;
            ok = std::fabs(-2.0 * dvol - rhs) < 1e-6;
        }
        verdict("schlaefli finite-difference identity", ok);
    }

    ConeMetric base = build_canonical(2, kPi / 10.0);
    RealizeOptions ropts;
    ropts.volTol = cfg.volTol;
    RealizeResult rr = realize(base, ropts);

    // Hessian definiteness and structure at random convex manifolds
    {
        bool ok = true;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            std::vector<double> h = rr.manifold.heights().values;
            for (double& x : h) x *= 0.8 + 0.4 * uni(rng);
            FuchsianConeManifold P = canonicalize_convex(base, Heights(h)).manifold;
            Eigen::MatrixXd H = hessian(P);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
            ok = es.eigenvalues().maxCoeff() <= 1e-8;
            for (int i = 0; i < H.rows() && ok; ++i) {
                double rowSum = H.row(i).sum();
                ok = rowSum <= 1e-10;
                for (int j = 0; j < H.cols() && ok; ++j)
                    if (i != j) ok = H(i, j) >= -1e-12;
            }
        }
        verdict("hessian non-positive definite with signed structure", ok);
    }

    // slope report and link inequality on the realized manifold
    {
        SlopeReport rep = slope_report(rr.manifold);
        verdict("slope/dihedral/vertex-angle bounds", rep.totalViolations() == 0);
        bool ok = true;
        for (int v = 0; v < base.surface().nVertices(); ++v) {
            SphericalLink link = spherical_link(rr.manifold, v);
            if (link.kappa > 1e-12 || !(link.nu > 1e-12)) continue;
            bool anyStrict = false;
            for (const auto& en : link.entries) anyStrict = anyStrict || en.strict;
            if (!anyStrict) continue;
            auto [lhs, rhs] = link_area_inequality(link);
            ok = ok && lhs >= rhs && rhs > 0;
        }
        verdict("spherical link area inequality", ok);
    }

    return failures == 0 ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fcm: convex polyhedral Fuchsian cone-manifolds"};
    app.require_subcommand(1);
    JobConfig cfg;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "input file")->required();
        sub->add_option("--output", cfg.output, "output file");
        sub->add_option("--tol", cfg.tol, "solver tolerance");
        sub->add_option("--vol-tol", cfg.volTol, "volume quadrature tolerance");
        sub->add_option("--max-iter", cfg.maxIter, "iteration cap");
        sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    };
    CLI::App* validate = app.add_subcommand("validate", "check invariants of an input file");
    addCommon(validate);
    CLI::App* realizeCmd = app.add_subcommand("realize", "realize a convex cone-metric");
    addCommon(realizeCmd);
    realizeCmd->add_option("--trace", cfg.trace, "CSV iteration trace");
    CLI::App* flow = app.add_subcommand("flow", "constrained height flow + gap bound");
    addCommon(flow);
    flow->add_option("--W", cfg.W, "constrained vertex ids")->delimiter(',');
    flow->add_option("--tau", cfg.tau, "flow horizon");
    flow->add_option("--steps", cfg.steps, "grid steps");
    CLI::App* sweep = app.add_subcommand("sweep", "sweep-in a cone triangle");
    addCommon(sweep);
    sweep->add_option("--budget-delta", cfg.budgetDelta, "merge budget Delta");
    CLI::App* check = app.add_subcommand("check", "seeded property battery");
    check->add_option("--seed", cfg.seed, "seed");
    check->add_option("--vol-tol", cfg.volTol, "volume quadrature tolerance");

    CLI11_PARSE(app, argc, argv);
    try {
        if (validate->parsed()) return cmdValidate(cfg);
        if (realizeCmd->parsed()) return cmdRealize(cfg);
        if (flow->parsed()) return cmdFlow(cfg);
        if (sweep->parsed()) return cmdSweep(cfg);
        if (check->parsed()) return cmdCheck(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PreconditionViolated& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ContinuationStalled& e) {
        std::cerr << "continuation: " << e.what() << "\n";
        return kExitContinuation;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const NoBigon& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const LineSearchFailed& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const MaxIterExceeded& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
