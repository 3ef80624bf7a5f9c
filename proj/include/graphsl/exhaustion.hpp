#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphsl/dirichlet.hpp"
#include "graphsl/graph.hpp"

namespace graphsl {

enum class ExhaustionMode {
    Decreasing,  ///< u_j with boundary value gamma; u_{j+1} <= u_j
    Increasing,  ///< v_n with exterior data (u - M)_+; v_n <= v_{n+1}
};

enum class TraceStatus { Converged, ExhaustedRadii };

std::string_view to_string(TraceStatus status);

struct TraceStep {
    std::size_t j = 0;
    double root_value = 0.0;      ///< value at the center vertex
    double sup_delta = 0.0;       ///< sup over B_{j_min} of |u_j - u_prev|; NaN at the first step
    double min_over_ball = 0.0;   ///< over B_j
    double max_over_ball = 0.0;
    double bound_excess = 0.0;    ///< largest violation of the pointwise bounds, over all vertices
    double monotone_excess = 0.0; ///< largest violation of the monotonicity claim
    bool bounds_ok = true;        ///< bound_excess <= 1e-12
    bool monotone_ok = true;      ///< monotone_excess <= 1e-12
};

struct IterationTrace {
    ExhaustionMode mode = ExhaustionMode::Decreasing;
    double parameter = 0.0;  ///< gamma, or M
    Vertex center = 0;
    double tolerance = 1e-8;
    std::vector<TraceStep> steps;
    VertexField final_field;  ///< last iterate (or the sign-normalized input)
    TraceStatus status = TraceStatus::ExhaustedRadii;

    bool all_bounds_ok() const;
    bool all_monotone_ok() const;
    double max_bound_excess() const;
    double max_monotone_excess() const;
    const TraceStep* step_at(std::size_t j) const;
};

/// CSV with header `j,root_value,sup_delta,min_over_ball,max_over_ball,monotone_ok`.
std::string trace_csv(const IterationTrace& trace);

struct ExhaustionOptions {
    double tolerance = 1e-8;          ///< convergence threshold on sup_delta
    double check_tolerance = 1e-12;   ///< bounds / monotonicity flags
    double abort_tolerance = 1e-10;   ///< monotonicity violations beyond this throw
    SolveOptions solver{};
};

/**
 * u_j solves (Delta - V) u = 0 in B_j(x0) and u = gamma outside, for each j
 * in `radii`. Requires V > 0 on non-halo vertices and every ball B_{j+s}
 * clear of the halo (TruncationTooShallow otherwise). Throws
 * MonotonicityViolation if u_{j+1} > u_j + abort_tolerance anywhere.
 */
IterationTrace dirichlet_exhaustion(const WeightedGraph& graph, const PseudoMetric& metric,
                                    const VertexField& potential, double gamma,
                                    const std::vector<std::size_t>& radii,
                                    const ExhaustionOptions& options = {});

struct NormalizeOptions {
    ExhaustionOptions exhaustion{};
    /// Run the iteration even when u has constant sign (then applied to sgn(u) u).
    bool force_iteration = false;
};

/**
 * Turn a nontrivial bounded solution (sup |u| <= 1) into one with 0 < v <= 1.
 *
 * Constant sign: v = sgn(u) u, checked strictly positive by the strong
 * maximum principle. Otherwise v_n solves (Delta - V) v = 0 in B_n(p) with
 * exterior data (u - M)_+; the trace records 0 <= v_n <= 1 and v_n <= v_{n+1}.
 * Throws TrivialInput, BadM, InvalidParameter or MonotonicityViolation.
 */
IterationTrace normalize_bounded_solution(const WeightedGraph& graph, const PseudoMetric& metric,
                                          const VertexField& potential, const VertexField& u,
                                          Vertex p, double M, const std::vector<std::size_t>& radii,
                                          const NormalizeOptions& options = {});

/// h(x) = c_hat d(x, x0)^(-beta), meaningful for d > r_hat.
struct Barrier {
    std::size_t branching = 2;
    double alpha = 2.0;
    double c0 = 1.0;       ///< C0 in V <= C0 d^(-alpha)
    double mu_c = 1.0;
    double beta = 1.0;
    double epsilon = 1.0 / 3.0;
    std::size_t r_hat = 0;
    double c_hat = 0.0;
    /// max over the verified levels of (1/V) Delta h + 1 for the worst admissible V
    double verified_slack = 0.0;

    double value(double distance) const;
};

/**
 * Constants of the decay-at-infinity barrier on T_b: beta = alpha - 1,
 * epsilon = (2b - 3)/3, r_hat the least integer above r0 with
 * (1 + 1/r_hat)^(beta + 1) < 1 + epsilon, c_hat = 2 C0 mu_c / (r_hat^(alpha-beta-1) beta).
 * The supersolution inequality is verified radially for V = C0 d^(-alpha)
 * over 64 levels past r_hat. Throws BranchingTooSmall or AlphaNotSupercritical.
 */
Barrier make_barrier(std::size_t branching, double alpha, double c0, double mu_c,
                     std::size_t r0 = 2);

/// h on every vertex with d > 0 (zero at the root).
VertexField barrier_field(const Barrier& barrier, const PseudoMetric& metric, std::size_t size);

struct BarrierCheck {
    double max_slack = -std::numeric_limits<double>::infinity();  ///< max of (1/V) Delta h + 1
    Vertex worst = 0;
    std::size_t vertices = 0;  ///< vertices with r_hat < d, outside the halo
    bool holds(double tol = 1e-10) const { return max_slack <= tol; }
};

/// Direct neighbor summation of (1/V) Delta h at every non-halo vertex with d > r_hat.
BarrierCheck check_barrier(const WeightedGraph& graph, const PseudoMetric& metric,
                           const VertexField& potential, const Barrier& barrier);

struct SandwichReport {
    double c = 0.0;              ///< C = max(gamma, 1)(1 + 1e-6)
    double margin = 0.0;         ///< min of u - (gamma - C h) over the region
    double upper_excess = 0.0;   ///< max of u - gamma over the region
    double lower_bound = 0.0;    ///< min over the region of gamma - C h
    Vertex worst = 0;
    std::size_t vertices = 0;
    bool holds = false;
};

/// Check gamma - C h <= u <= gamma + 1e-12 on non-halo vertices with d > r_hat.
/// Throws RegionEmpty when r_hat >= the truncation depth.
SandwichReport sandwich_check(const WeightedGraph& graph, const PseudoMetric& metric,
                              const VertexField& u, const Barrier& barrier, double gamma);

}  // namespace graphsl
