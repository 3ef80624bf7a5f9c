#include "graphsl/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "graphsl/error.hpp"

namespace graphsl {

namespace {

constexpr std::size_t kOutside = static_cast<std::size_t>(-1);

// Row index of each vertex in the interior, or kOutside.
std::vector<std::size_t> index_interior(const WeightedGraph& graph,
                                        const std::vector<Vertex>& interior) {
    std::vector<std::size_t> index(graph.size(), kOutside);
    for (std::size_t i = 0; i < interior.size(); ++i) {
        const Vertex x = interior[i];
        if (x >= graph.size())
            throw Error(ErrorCode::InvalidProblem, "interior vertex out of range", x);
        if (index[x] != kOutside)
            throw Error(ErrorCode::InvalidProblem, "interior lists a vertex twice", x);
        if (graph.in_halo(x))
            throw Error(ErrorCode::HaloContamination, "interior touches the halo", x);
        index[x] = i;
    }
    return index;
}

void validate(const WeightedGraph& graph, const DirichletProblem& problem) {
    const std::size_t n = graph.size();
    if (problem.potential.size() != n || problem.f.size() != n || problem.g.size() != n)
        throw Error(ErrorCode::InvalidProblem, "fields must span every vertex");
    std::size_t non_halo = 0;
    for (Vertex x = 0; x < n; ++x) non_halo += graph.in_halo(x) ? 0 : 1;
    if (!problem.interior.empty() && problem.interior.size() >= non_halo)
        throw Error(ErrorCode::InvalidProblem,
                    "interior covers the whole non-halo region; no boundary is left");
    for (Vertex x : problem.interior) {
        if (x >= n) continue;  // reported by index_interior
        const double v = problem.potential[x];
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::InvalidProblem, "potential must be finite and nonnegative", x);
        if (!std::isfinite(problem.f[x]))
            throw Error(ErrorCode::InvalidProblem, "f must be finite on the interior", x);
    }
}

using SymMatrix = Eigen::SparseMatrix<double>;

// -diag(mu) A: symmetric positive definite when some boundary vertex is
// adjacent to each interior component or V > 0 there.
void symmetric_form(const WeightedGraph& graph, const DirichletProblem& problem,
                    const std::vector<std::size_t>& index, SymMatrix& k, Eigen::VectorXd& b) {
    const std::size_t m = problem.interior.size();
    std::vector<Eigen::Triplet<double>> triplets;
    b.resize(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const Vertex x = problem.interior[i];
        const auto ids = static_cast<Eigen::Index>(i);
        triplets.emplace_back(ids, ids, graph.degree(x) + graph.measure(x) * problem.potential[x]);
        double rhs = -graph.measure(x) * problem.f[x];
        const auto nbrs = graph.neighbors(x);
        const auto ws = graph.weights(x);
        for (std::size_t k2 = 0; k2 < nbrs.size(); ++k2) {
            const Vertex y = nbrs[k2];
            if (index[y] != kOutside)
                triplets.emplace_back(ids, static_cast<Eigen::Index>(index[y]), -ws[k2]);
            else
                rhs += ws[k2] * problem.g[y];
        }
        b[ids] = rhs;
    }
    k.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    k.setFromTriplets(triplets.begin(), triplets.end());
}

}  // namespace

LinearSystem assemble(const WeightedGraph& graph, const DirichletProblem& problem) {
    validate(graph, problem);
    const auto index = index_interior(graph, problem.interior);
    const std::size_t m = problem.interior.size();

    LinearSystem sys;
    sys.interior = problem.interior;
    sys.rhs.resize(static_cast<Eigen::Index>(m));
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t i = 0; i < m; ++i) {
        const Vertex x = problem.interior[i];
        const auto row = static_cast<Eigen::Index>(i);
        const double mu = graph.measure(x);
        triplets.emplace_back(row, row, -(graph.weighted_degree(x) + problem.potential[x]));
        double h = problem.f[x];
        const auto nbrs = graph.neighbors(x);
        const auto ws = graph.weights(x);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            const Vertex y = nbrs[k];
            const double p = ws[k] / mu;
            if (index[y] != kOutside)
                triplets.emplace_back(row, static_cast<Eigen::Index>(index[y]), p);
            else
                h -= p * problem.g[y];
        }
        sys.rhs[row] = h;
    }
    sys.matrix.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    return sys;
}

double dirichlet_residual(const WeightedGraph& graph, const DirichletProblem& problem,
                          const VertexField& u) {
    double worst = 0.0;
    for (Vertex x : problem.interior) {
        const double r = schrodinger_residual(graph, problem.potential, u, x) - problem.f[x];
        if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

DirichletSolution solve(const WeightedGraph& graph, const DirichletProblem& problem,
                        const SolveOptions& options) {
    validate(graph, problem);
    const auto index = index_interior(graph, problem.interior);

    DirichletSolution out;
    out.u = problem.g;
    if (problem.interior.empty()) return out;

    SymMatrix k;
    Eigen::VectorXd b;
    symmetric_form(graph, problem, index, k, b);
    const std::size_t m = problem.interior.size();

    SolverKind kind = options.kind;
    if (kind == SolverKind::Auto)
        kind = m <= options.direct_limit ? SolverKind::Direct : SolverKind::Iterative;
    out.used = kind;

    Eigen::VectorXd z;
    if (kind == SolverKind::Direct) {
        Eigen::SimplicialLDLT<SymMatrix> ldlt(k);
        if (ldlt.info() != Eigen::Success)
            throw Error(ErrorCode::SingularSystem, "LDL^T factorization broke down");
        z = ldlt.solve(b);
        if (ldlt.info() != Eigen::Success)
            throw Error(ErrorCode::SingularSystem, "LDL^T solve failed");
    } else {
        Eigen::ConjugateGradient<SymMatrix, Eigen::Lower | Eigen::Upper,
                                 Eigen::DiagonalPreconditioner<double>>
            cg;
        cg.setTolerance(options.iterative_tolerance);
        const auto cap = static_cast<Eigen::Index>(
            std::ceil(options.iteration_factor * std::sqrt(static_cast<double>(m))));
        cg.setMaxIterations(std::max<Eigen::Index>(cap, 1));
        cg.compute(k);
        z = cg.solve(b);
        out.iterations = static_cast<std::size_t>(cg.iterations());
        if (cg.info() != Eigen::Success)
            throw Error(ErrorCode::NonConvergence,
                        "conjugate gradients stopped after " + std::to_string(cg.iterations()) +
                            " iterations at relative residual " + std::to_string(cg.error()));
    }
    for (std::size_t i = 0; i < m; ++i) out.u[problem.interior[i]] = z[static_cast<Eigen::Index>(i)];

    out.max_residual = dirichlet_residual(graph, problem, out.u);
    const double bound = 1e-10 * (1.0 + out.u.max_abs());
    if (!(out.max_residual < bound))
        throw Error(kind == SolverKind::Direct ? ErrorCode::SingularSystem
                                               : ErrorCode::NonConvergence,
                    "plug-in residual " + std::to_string(out.max_residual) +
                        " exceeds the acceptance bound");
    return out;
}

TrialOutcome run_weak_max_trial(const WeightedGraph& graph, const VertexField& potential,
                                const WeakMaxTrial& trial, double tolerance) {
    TrialOutcome outcome;
    std::vector<char> inside(graph.size(), 0);
    for (Vertex x : trial.interior) {
        if (x < graph.size()) inside[x] = 1;
    }
    for (Vertex x : trial.interior) {
        if (x < graph.size() && trial.f[x] > 0.0) {
            outcome.status = TrialStatus::Skipped;
            outcome.note = "f is positive at vertex " + std::to_string(x);
            return outcome;
        }
    }
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (!inside[x] && trial.g[x] < 0.0) {
            outcome.status = TrialStatus::Skipped;
            outcome.note = "g is negative at vertex " + std::to_string(x);
            return outcome;
        }
    }
    const DirichletProblem problem{trial.interior, potential, trial.f, trial.g};
    const auto sol = solve(graph, problem);
    outcome.min_interior = std::numeric_limits<double>::infinity();
    for (Vertex x : trial.interior) {
        if (sol.u[x] < outcome.min_interior) {
            outcome.min_interior = sol.u[x];
            outcome.argmin = x;
        }
    }
    if (outcome.min_interior < -tolerance) {
        outcome.status = TrialStatus::Violated;
        outcome.note = "u < 0 at vertex " + std::to_string(outcome.argmin);
    }
    return outcome;
}

WeakMaxReport verify_weak_max_principle(const WeightedGraph& graph, const VertexField& potential,
                                        std::size_t trials, std::uint64_t seed, double tolerance) {
    const std::size_t r_max = graph.truncation_radius();
    if (r_max < 3)
        throw Error(ErrorCode::InvalidParameter, "truncation radius must be at least 3");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> radius(1, r_max - 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    WeakMaxReport report;
    report.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t r = radius(rng);
        WeakMaxTrial trial;
        trial.f = VertexField(graph.size());
        trial.g = VertexField(graph.size());
        for (Vertex x = 0; x < graph.size(); ++x) {
            const double sample = unit(rng);
            if (graph.hops(x) < r) {
                trial.interior.push_back(x);
                trial.f[x] = -sample;
            } else {
                trial.g[x] = sample;
            }
        }
        const auto outcome = run_weak_max_trial(graph, potential, trial, tolerance);
        ++report.trials;
        switch (outcome.status) {
        case TrialStatus::Passed:
            ++report.passed;
            break;
        case TrialStatus::Skipped:
            ++report.skipped;
            break;
        case TrialStatus::Violated:
            report.violations.emplace_back(t, outcome);
            break;
        }
        if (outcome.status != TrialStatus::Skipped)
            report.min_value = std::min(report.min_value, outcome.min_interior);
    }
    return report;
}

std::string_view to_string(StrongMaxVerdict verdict) {
    switch (verdict) {
    case StrongMaxVerdict::IdenticallyZero:
        return "identically-zero";
    case StrongMaxVerdict::StrictlyPositive:
        return "strictly-positive";
    case StrongMaxVerdict::Violation:
        return "violation";
    }
    return "?";
}

StrongMaxVerdict verify_strong_max_principle(const WeightedGraph& graph,
                                             const VertexField& potential, const VertexField& u,
                                             double zero_tolerance) {
    if (u.size() != graph.size() || potential.size() != graph.size())
        throw Error(ErrorCode::InvalidProblem, "fields must span every vertex");
    const double slack = 1e-10 * (1.0 + u.max_abs());
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x)) continue;
        if (u[x] < -slack)
            throw Error(ErrorCode::NotASupersolution, "u is negative", x);
        if (schrodinger_residual(graph, potential, u, x) > slack)
            throw Error(ErrorCode::NotASupersolution, "(Delta - V) u > 0", x);
    }
    bool any_zero = false, any_positive = false;
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x)) continue;
        (u[x] > zero_tolerance ? any_positive : any_zero) = true;
    }
    if (!any_positive) return StrongMaxVerdict::IdenticallyZero;
    return any_zero ? StrongMaxVerdict::Violation : StrongMaxVerdict::StrictlyPositive;
}

}  // namespace graphsl
