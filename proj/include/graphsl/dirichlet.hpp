#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "graphsl/graph.hpp"

namespace graphsl {

/**
 * Finite Dirichlet problem  (Delta - V) u = f  in Omega,  u = g  outside.
 *
 * All fields span the whole vertex set; f is read on Omega only and g off
 * Omega only. Omega must avoid the halo.
 */
struct DirichletProblem {
    std::vector<Vertex> interior;
    VertexField potential;
    VertexField f;
    VertexField g;
};

/// A u = h on Omega, with
///   A(x,x) = -(Deg(x) + V(x)),  A(x,y) = w(x,y)/mu(x) for y in Omega,
///   h(x)   = f(x) - sum_{y not in Omega} w(x,y)/mu(x) g(y).
struct LinearSystem {
    std::vector<Vertex> interior;  ///< row/column i is vertex interior[i]
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
    Eigen::VectorXd rhs;

    std::size_t dimension() const { return interior.size(); }
};

/// Throws HaloContamination or InvalidProblem.
LinearSystem assemble(const WeightedGraph& graph, const DirichletProblem& problem);

enum class SolverKind { Auto, Direct, Iterative };

struct SolveOptions {
    SolverKind kind = SolverKind::Auto;
    std::size_t direct_limit = 20000;     ///< Auto picks Direct up to this size
    double iterative_tolerance = 1e-12;   ///< relative residual target
    double iteration_factor = 50.0;       ///< cap = factor * sqrt(|Omega|)
};

struct DirichletSolution {
    VertexField u;
    double max_residual = 0.0;  ///< max over Omega of |(Delta - V)u - f|
    SolverKind used = SolverKind::Direct;
    std::size_t iterations = 0;
};

/**
 * Solve the Dirichlet problem. The returned field equals g off Omega exactly.
 * Throws SingularSystem on factorization breakdown and NonConvergence when
 * the iterative path misses its target; both also fire when the plug-in
 * residual exceeds 1e-10 (1 + max|u|).
 */
DirichletSolution solve(const WeightedGraph& graph, const DirichletProblem& problem,
                        const SolveOptions& options = {});

/// Residual of (Delta - V) u = f on Omega, evaluated on the full neighborhood sum.
double dirichlet_residual(const WeightedGraph& graph, const DirichletProblem& problem,
                          const VertexField& u);

struct WeakMaxTrial {
    std::vector<Vertex> interior;
    VertexField f;
    VertexField g;
};

enum class TrialStatus { Passed, Violated, Skipped };

struct TrialOutcome {
    TrialStatus status = TrialStatus::Passed;
    double min_interior = 0.0;
    Vertex argmin = 0;
    std::string note;
};

/// One weak-maximum-principle trial: requires f <= 0 on Omega and g >= 0
/// off it (else Skipped), solves, and checks u >= -tolerance on Omega.
TrialOutcome run_weak_max_trial(const WeightedGraph& graph, const VertexField& potential,
                                const WeakMaxTrial& trial, double tolerance = 1e-12);

struct WeakMaxReport {
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t skipped = 0;
    std::vector<std::pair<std::size_t, TrialOutcome>> violations;
    double min_value = 0.0;  ///< smallest interior value seen over all trials
};

/**
 * Randomized trials: Omega = hop ball about the root of radius uniform in
 * [1, R_max - 2], f uniform in [-1, 0] on Omega, g uniform in [0, 1] off it.
 */
WeakMaxReport verify_weak_max_principle(const WeightedGraph& graph, const VertexField& potential,
                                        std::size_t trials, std::uint64_t seed,
                                        double tolerance = 1e-12);

enum class StrongMaxVerdict { IdenticallyZero, StrictlyPositive, Violation };

std::string_view to_string(StrongMaxVerdict verdict);

/// Dichotomy on non-halo vertices for a nonnegative supersolution.
/// Throws NotASupersolution (with the vertex) when (Delta - V)u <= 0, u >= 0 fail.
StrongMaxVerdict verify_strong_max_principle(const WeightedGraph& graph,
                                             const VertexField& potential, const VertexField& u,
                                             double zero_tolerance = 1e-14);

}  // namespace graphsl
