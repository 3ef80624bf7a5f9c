#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "graphsl/generators.hpp"
#include "graphsl/graph.hpp"

namespace graphsl {

// ---------------------------------------------------------------------------
// Hypotheses on the potential and the volume growth

struct ShellBound {
    double r0 = 0.0;   ///< lower edge of the dyadic shell [r0, 2 r0)
    double min_value = std::numeric_limits<double>::infinity();  ///< min of V d^alpha
    Vertex argmin = 0;
    std::size_t vertices = 0;
};

struct PotentialBoundReport {
    bool ok = false;
    double c0 = 0.0;  ///< largest c0 with V d^alpha >= c0 outside B_{r0}
    double r0 = 0.0;
    std::vector<ShellBound> shells;
    double tail_slope = 0.0;  ///< log-log slope of the shell minima over the last shells
    Vertex witness = 0;       ///< argmin in the outermost shell when the bound fails
};

/**
 * Scan V(x) d(x, x0)^alpha over dyadic shells {1, 2, 4, ...} of non-halo vertices.
 * c0 is the minimum outside B_{r0} for the smallest r0 giving a positive value.
 * The bound is declared failing when the shell minima decay, measured as a
 * log-log slope below -0.1 across the last three shells.
 */
PotentialBoundReport check_potential_bound(const WeightedGraph& graph, const PseudoMetric& metric,
                                           const VertexField& potential, double alpha,
                                           Vertex x0);

enum class SummabilityVerdict { Converges, Diverges, Inconclusive };

std::string_view to_string(SummabilityVerdict verdict);

struct SummabilityReport {
    SummabilityVerdict verdict = SummabilityVerdict::Inconclusive;
    double limit_ratio = std::numeric_limits<double>::quiet_NaN();  ///< lim ratio_n (closed form)
    double sum = std::numeric_limits<double>::quiet_NaN();          ///< S when it converges
    std::vector<double> ratios;        ///< ratio_n for n = 1..
    std::vector<double> partial_sums;  ///< by integer radius n = 1, 2, ...
};

/// sum_{n >= 1} b^n e^(-Lambda n^alpha) c by the ratio test. Throws InvalidLambda.
SummabilityReport check_summability(const ModelTreeSpec& tree, double lambda_cap, double alpha);

/// Partial sums of sum_{x : d >= 1} e^(-Lambda d^alpha) mu(x) by integer radius;
/// always Inconclusive on a finite truncation. Throws InvalidLambda.
SummabilityReport check_summability(const WeightedGraph& graph, const PseudoMetric& metric,
                                    double lambda_cap, double alpha);

// ---------------------------------------------------------------------------
// Test functions

struct TestFunctions {
    double alpha = 0.0;
    double beta = 0.0;
    double c0 = 0.0;
    double r0 = 0.0;
    double lambda = 2.0;
    double s = 0.0;        ///< jump size
    double M = 1.0;        ///< M = T
    double T = 1.0;
    double r = 0.0;        ///< 2 s + R0
    double r1 = 0.0;       ///< 2 r + 8 s + 1
    double defect = 0.0;   ///< intrinsic defect of the metric (warning when > 1)
    bool intrinsic = true;

    double rho(double d) const;                 ///< max(d^beta, r^beta)
    double xi(double d, double t) const;        ///< -M rho / (lambda T - t)
    double xi_t(double d, double t) const;      ///< -M rho / (lambda T - t)^2
    double eta(double d) const;                 ///< min(2 [r1 - s - d]_+ / r1, 1)
};

/// Throws BadLambda (lambda <= 1) or InvalidParameter (alpha outside [0, 1], c0 or R0 <= 0).
TestFunctions make_test_functions(const PseudoMetric& metric, double alpha, double c0, double r0,
                                  double lambda);

/// k T / (count + 1) for k = 1..count: interior points of (0, T).
std::vector<double> time_grid(double T, std::size_t count = 16);

// ---------------------------------------------------------------------------
// Ingredient inequalities

struct VertexSlack {
    Vertex x = 0;
    double t = 0.0;
    double value = 0.0;
};

struct SlackReport {
    double max_slack = -std::numeric_limits<double>::infinity();
    VertexSlack worst{};
    std::size_t samples = 0;
    std::size_t skipped = 0;        ///< samples excluded (crossing set)
    std::size_t flagged = 0;        ///< vertices with V = 0 (hypothesis unmet)
    std::vector<VertexSlack> rows;  ///< per vertex, worst over t

    bool holds(double tol) const { return samples == 0 || max_slack <= tol; }
};

/// LHS of V xi_t mu + 1/2 sum_y w (1 - e^(xi(y) - xi(x)))^2 at every non-halo x
/// and every t sample. Throws InvalidParameter for t outside (0, T).
SlackReport check_lemma51(const WeightedGraph& graph, const PseudoMetric& metric,
                          const VertexField& potential, const TestFunctions& tf,
                          std::span<const double> t_samples);

struct CutoffReport {
    double ratio_gradient = 0.0;  ///< max |grad eta| / ((2/r1) d(x,y) chi(x)); 0/0 counts as 0
    double ratio_energy = 0.0;    ///< max sum (grad eta)^2 w / ((4/r1^2) mu chi)
    bool support_ok = true;       ///< eta = 0 for d >= r1 - s, eta = 1 for d <= r1/2 - s
    bool monotone_ok = true;      ///< eta nonincreasing in d along edges
    std::size_t edges = 0;
    Vertex worst = 0;

    bool holds(double tol = 1e-12) const {
        return ratio_gradient <= 1.0 + tol && ratio_energy <= 1.0 + tol && support_ok &&
               monotone_ok;
    }
};

/// Both cut-off inequalities at every vertex with d <= r1. Throws
/// TruncationTooShallow if any such vertex lies in the halo.
CutoffReport check_lemma52(const WeightedGraph& graph, const PseudoMetric& metric,
                           const TestFunctions& tf);

/**
 * With v = e^t u - 1: evaluates V d_t v_+ - Delta v_+ at each (x, t) with
 * |v(x, t)| > 1e-9, over `domain` (all non-halo vertices when empty).
 * Requires 0 <= u <= 1 and (Delta - V) u = 0 on the domain, else NotASolution.
 */
SlackReport check_subsolution(const WeightedGraph& graph, const VertexField& potential,
                              const VertexField& u, std::span<const double> t_samples,
                              std::span<const Vertex> domain = {});

struct AprioriReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< rhs - lhs
    std::size_t nodes = 0;
    std::size_t support = 0;  ///< |supp eta|
};

/**
 * Both sides of the weighted energy estimate for v = e^t u - 1 on [0, T],
 * time integrals by composite trapezoid on `nodes` points. Throws
 * ConditionViolated (with witness vertex) if the cut-off conditions fail,
 * and NotASolution if u is not a solution in [0, 1] on supp eta.
 */
AprioriReport check_apriori(const WeightedGraph& graph, const PseudoMetric& metric,
                            const VertexField& potential, const VertexField& u,
                            const TestFunctions& tf, std::size_t nodes,
                            std::span<const Vertex> domain = {});

/// `check=<name> status=<pass|fail> max_slack=<value>`
std::string summary_line(std::string_view name, bool pass, double max_slack);

/// One row per vertex: `x,t,value`.
std::string slack_csv(const SlackReport& report);

}  // namespace graphsl
