#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "graphsl/exhaustion.hpp"
#include "graphsl/liouville.hpp"

namespace graphsl {

/// Parameters shared by the experiment commands.
struct ExperimentConfig {
    std::size_t tree_b = 2;
    std::size_t tree_depth = 14;
    double measure_c = 1.0;
    std::vector<double> alpha_grid{0.5, 1.0, 1.5, 2.0};
    double potential_scale = 1.0;  ///< C0 in V = C0 (1 + d)^(-alpha)
    double gamma = 1.0;
    double lambda_cap = 0.8;       ///< Lambda in the volume-growth sum
    double lambda_xi = 2.0;        ///< lambda in the time weight
    std::vector<std::size_t> radii{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    double tol = 1e-8;
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    double normalize_m = 0.5;
    std::size_t quadrature_nodes = 200;
    std::filesystem::path problem_file;
    /// Fault injection for the calculus suite: multiplies the Laplacian.
    double laplacian_sign = 1.0;
};

/// Throws InvalidParameter when a field breaks an operation's precondition.
void validate(const ExperimentConfig& config);

/// "0.5,1,1.5" -> {0.5, 1, 1.5}. Throws InvalidParameter.
std::vector<double> parse_real_list(std::string_view text);
/// "2..12" or "2,4,8" -> radii. Throws InvalidParameter.
std::vector<std::size_t> parse_radii(std::string_view text);

/// Fixed-width rendering used in file names: 0.5 -> "0.5", 2 -> "2".
std::string alpha_tag(double alpha);

// ---------------------------------------------------------------------------
// Verification suites. Each returns one summary line.

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_slack = 0.0;  ///< the quantity compared against the suite's threshold
    std::string detail;

    std::string line() const;
};

/// Random finitely supported pairs on T_b: both identity residuals < 1e-12.
SuiteResult suite_calculus(std::size_t b, std::size_t depth, std::size_t pairs, std::uint64_t seed,
                           double laplacian_sign = 1.0);

/// Randomized weak-maximum-principle trials; slack is -min u.
SuiteResult suite_weak_max(std::size_t b, std::size_t depth, double alpha, std::size_t trials,
                           std::uint64_t seed);

/// Solver against the radial oracle plus sphere spread, over a parameter grid.
SuiteResult suite_oracle(const std::vector<std::size_t>& branchings,
                         const std::vector<std::size_t>& depths, const std::vector<double>& alphas,
                         double measure, double gamma);

/// Barrier supersolution by neighbor summation for every alpha > 1 of the grid.
SuiteResult suite_barrier(const std::vector<std::size_t>& branchings,
                          const std::vector<std::size_t>& depths, const std::vector<double>& alphas,
                          double measure);

/// Closed-form verdicts: at alpha = 1 converges iff Lambda > ln b; alpha > 1 always converges.
SuiteResult suite_summability(const std::vector<std::size_t>& branchings,
                              const std::vector<double>& lambdas, const std::vector<double>& alphas);

/// Exhaustion bounds/monotonicity for each alpha plus the normalized run;
/// strong-maximum verdicts on every output.
SuiteResult suite_exhaustion(std::size_t b, std::size_t depth, double measure,
                             const std::vector<double>& alphas, double gamma,
                             const std::vector<std::size_t>& radii, double normalize_m);

/// Tree, potentials, test functions and a bounded solution for the energy
/// and cut-off checks. The measure is b + 1 so that the hop metric is intrinsic.
struct AnalysisContext {
    WeightedGraph graph;
    PseudoMetric metric;
    VertexField decay_potential;   ///< (1 + d)^(-1): satisfies the lower bound with alpha = 1
    VertexField fast_potential;    ///< (1 + d)^(-2): drives the bounded solution
    PotentialBoundReport bound;
    TestFunctions tf;
    VertexField solution;          ///< exhaustion output in [0, 1]
    std::vector<Vertex> domain;    ///< ball where the solution solves the equation
};

AnalysisContext make_analysis_context(std::size_t b = 2, std::size_t depth = 16,
                                      double lambda_xi = 2.0);

SuiteResult suite_lemma51(const AnalysisContext& ctx);
SuiteResult suite_lemma52(const AnalysisContext& ctx);
SuiteResult suite_subsolution(const AnalysisContext& ctx);
/// Slack at `nodes`, and the observed quadrature order from 24, 48, 96, 192, 384 intervals.
SuiteResult suite_apriori(const AnalysisContext& ctx, std::size_t nodes);

// ---------------------------------------------------------------------------
// Commands. Exit codes: 0 pass, 1 failed check or error.

int cmd_dichotomy(const ExperimentConfig& config, std::ostream& log);
int cmd_verify(const ExperimentConfig& config, std::ostream& log);
int cmd_solve(const ExperimentConfig& config, std::ostream& log);

}  // namespace graphsl
