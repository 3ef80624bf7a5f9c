#include "graphsl/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphsl/error.hpp"
#include "graphsl/io.hpp"

namespace graphsl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_radii(const std::vector<std::size_t>& radii) {
    if (radii.empty()) throw Error(ErrorCode::InvalidParameter, "radii schedule is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] == 0) throw Error(ErrorCode::InvalidParameter, "radii must be positive");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw Error(ErrorCode::InvalidParameter, "radii must be strictly increasing");
    }
}

// Every vertex within j + s of the center must have its full neighborhood.
void require_depth(const WeightedGraph& graph, const PseudoMetric& metric, Vertex center,
                   std::size_t largest) {
    const auto dist = metric.distances_from(center);
    const double reach = static_cast<double>(largest) + metric.jump_size();
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x) && dist[x] < reach)
            throw Error(ErrorCode::TruncationTooShallow,
                        "radius " + std::to_string(largest) +
                            " plus the jump size reaches the halo; deepen the truncation",
                        x);
    }
}

std::vector<Vertex> safe_ball(const WeightedGraph& graph, const PseudoMetric& metric,
                              Vertex center, std::size_t r) {
    try {
        return ball(graph, metric, center, static_cast<double>(r));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::RadiusExceedsTruncation)
            throw Error(ErrorCode::TruncationTooShallow, e.what(), e.vertex());
        throw;
    }
}

// Shared driver: solve for every radius and record the trace.
IterationTrace run_exhaustion(const WeightedGraph& graph, const PseudoMetric& metric,
                              const VertexField& potential, const VertexField& exterior,
                              Vertex center, double upper, ExhaustionMode mode,
                              const std::vector<std::size_t>& radii,
                              const ExhaustionOptions& options) {
    IterationTrace trace;
    trace.mode = mode;
    trace.center = center;
    trace.tolerance = options.tolerance;
    const auto core = safe_ball(graph, metric, center, radii.front());

    VertexField prev;
    for (std::size_t j : radii) {
        const DirichletProblem problem{safe_ball(graph, metric, center, j), potential,
                                       VertexField(graph.size()), exterior};
        VertexField u = solve(graph, problem, options.solver).u;

        TraceStep step;
        step.j = j;
        step.root_value = u[center];
        step.min_over_ball = std::numeric_limits<double>::infinity();
        step.max_over_ball = -std::numeric_limits<double>::infinity();
        for (Vertex x : problem.interior) {
            step.min_over_ball = std::min(step.min_over_ball, u[x]);
            step.max_over_ball = std::max(step.max_over_ball, u[x]);
        }
        for (Vertex x = 0; x < graph.size(); ++x)
            step.bound_excess = std::max({step.bound_excess, -u[x], u[x] - upper});
        step.bounds_ok = step.bound_excess <= options.check_tolerance;

        if (prev.size() == 0) {
            step.sup_delta = kNaN;
        } else {
            for (Vertex x = 0; x < graph.size(); ++x) {
                const double excess =
                    mode == ExhaustionMode::Decreasing ? u[x] - prev[x] : prev[x] - u[x];
                if (excess > step.monotone_excess) step.monotone_excess = excess;
                if (excess > options.abort_tolerance)
                    throw Error(ErrorCode::MonotonicityViolation,
                                "step j = " + std::to_string(j) + " breaks monotonicity by " +
                                    format_real(excess),
                                x);
            }
            for (Vertex x : core) step.sup_delta = std::max(step.sup_delta, std::abs(u[x] - prev[x]));
        }
        step.monotone_ok = step.monotone_excess <= options.check_tolerance;
        trace.steps.push_back(step);
        prev = std::move(u);
    }
    trace.final_field = std::move(prev);
    const double last = trace.steps.back().sup_delta;
    trace.status = (trace.steps.size() > 1 && last < options.tolerance) ? TraceStatus::Converged
                                                                        : TraceStatus::ExhaustedRadii;
    return trace;
}

}  // namespace

std::string_view to_string(TraceStatus status) {
    return status == TraceStatus::Converged ? "converged" : "exhausted-radii";
}

bool IterationTrace::all_bounds_ok() const {
    return std::all_of(steps.begin(), steps.end(), [](const TraceStep& s) { return s.bounds_ok; });
}

bool IterationTrace::all_monotone_ok() const {
    return std::all_of(steps.begin(), steps.end(), [](const TraceStep& s) { return s.monotone_ok; });
}

double IterationTrace::max_bound_excess() const {
    double m = 0.0;
    for (const auto& s : steps) m = std::max(m, s.bound_excess);
    return m;
}

double IterationTrace::max_monotone_excess() const {
    double m = 0.0;
    for (const auto& s : steps) m = std::max(m, s.monotone_excess);
    return m;
}

const TraceStep* IterationTrace::step_at(std::size_t j) const {
    for (const auto& s : steps)
        if (s.j == j) return &s;
    return nullptr;
}

std::string trace_csv(const IterationTrace& trace) {
    std::string out = "j,root_value,sup_delta,min_over_ball,max_over_ball,monotone_ok\n";
    for (const auto& s : trace.steps) {
        out += std::to_string(s.j) + "," + format_real(s.root_value) + "," +
               (std::isnan(s.sup_delta) ? std::string("NA") : format_real(s.sup_delta)) + "," +
               format_real(s.min_over_ball) + "," + format_real(s.max_over_ball) + "," +
               (s.monotone_ok ? "1" : "0") + "\n";
    }
    return out;
}

IterationTrace dirichlet_exhaustion(const WeightedGraph& graph, const PseudoMetric& metric,
                                    const VertexField& potential, double gamma,
                                    const std::vector<std::size_t>& radii,
                                    const ExhaustionOptions& options) {
    validate_radii(radii);
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw Error(ErrorCode::InvalidParameter, "gamma must be finite and nonnegative");
    if (potential.size() != graph.size())
        throw Error(ErrorCode::InvalidProblem, "potential size does not match the graph");
    for (Vertex x = 0; x < graph.size(); ++x)
        if (!graph.in_halo(x) && !(potential[x] > 0.0))
            throw Error(ErrorCode::InvalidProblem, "exhaustion needs V > 0", x);
    require_depth(graph, metric, graph.root(), radii.back());

    auto trace = run_exhaustion(graph, metric, potential, VertexField(graph.size(), gamma),
                                graph.root(), gamma, ExhaustionMode::Decreasing, radii, options);
    trace.parameter = gamma;
    return trace;
}

IterationTrace normalize_bounded_solution(const WeightedGraph& graph, const PseudoMetric& metric,
                                          const VertexField& potential, const VertexField& u,
                                          Vertex p, double M, const std::vector<std::size_t>& radii,
                                          const NormalizeOptions& options) {
    if (u.size() != graph.size() || potential.size() != graph.size())
        throw Error(ErrorCode::InvalidProblem, "field size does not match the graph");
    if (p >= graph.size()) throw Error(ErrorCode::InvalidVertex, "center out of range", p);
    const double sup = u.max_abs();
    if (sup == 0.0) throw Error(ErrorCode::TrivialInput, "u vanishes identically");
    if (sup > 1.0 + 1e-12)
        throw Error(ErrorCode::InvalidParameter, "rescale u so that sup |u| <= 1");

    bool has_pos = false, has_neg = false;
    for (double value : u.values()) {
        has_pos |= value > 0.0;
        has_neg |= value < 0.0;
    }
    const bool constant_sign = !(has_pos && has_neg);
    VertexField w = u;
    if (constant_sign && has_neg)
        for (double& value : w.values()) value = -value;

    if (constant_sign && !options.force_iteration) {
        const auto verdict = verify_strong_max_principle(graph, potential, w);
        if (verdict != StrongMaxVerdict::StrictlyPositive)
            throw Error(ErrorCode::NotASupersolution,
                        "sign-normalized input is not strictly positive: " +
                            std::string(to_string(verdict)));
        IterationTrace trace;
        trace.mode = ExhaustionMode::Increasing;
        trace.parameter = M;
        trace.center = p;
        trace.tolerance = options.exhaustion.tolerance;
        trace.final_field = std::move(w);
        trace.status = TraceStatus::Converged;
        return trace;
    }

    double sup_pos = 0.0;
    for (double value : w.values()) sup_pos = std::max(sup_pos, value);
    if (!(M > 0.0) || !(M < sup_pos))
        throw Error(ErrorCode::BadM, "M = " + format_real(M) + " must lie in (0, " +
                                         format_real(sup_pos) + ")");
    validate_radii(radii);
    require_depth(graph, metric, p, radii.back());

    VertexField exterior(graph.size());
    for (Vertex x = 0; x < graph.size(); ++x) exterior[x] = std::max(w[x] - M, 0.0);
    auto trace = run_exhaustion(graph, metric, potential, exterior, p, 1.0,
                                ExhaustionMode::Increasing, radii, options.exhaustion);
    trace.parameter = M;
    return trace;
}

double Barrier::value(double distance) const {
    return distance > 0.0 ? c_hat * std::pow(distance, -beta) : 0.0;
}

Barrier make_barrier(std::size_t branching, double alpha, double c0, double mu_c,
                     std::size_t r0) {
    if (branching < 2)
        throw Error(ErrorCode::BranchingTooSmall, "barrier needs b >= 2 so that epsilon > 0");
    if (!(alpha > 1.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::AlphaNotSupercritical, "barrier needs alpha > 1");
    if (!(c0 > 0.0) || !(mu_c > 0.0))
        throw Error(ErrorCode::InvalidParameter, "C0 and mu_c must be positive");

    Barrier h;
    h.branching = branching;
    h.alpha = alpha;
    h.c0 = c0;
    h.mu_c = mu_c;
    h.beta = alpha - 1.0;
    h.epsilon = (2.0 * static_cast<double>(branching) - 3.0) / 3.0;
    std::size_t r = std::max<std::size_t>(r0 + 1, 1);
    while (std::pow(1.0 + 1.0 / static_cast<double>(r), h.beta + 1.0) >= 1.0 + h.epsilon) ++r;
    h.r_hat = r;
    h.c_hat = 2.0 * c0 * mu_c / (std::pow(static_cast<double>(r), alpha - h.beta - 1.0) * h.beta);

    // Radial neighbor sum on T_b for the largest admissible V = C0 d^(-alpha).
    const double b = static_cast<double>(branching);
    h.verified_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t n = r + 1; n <= r + 64; ++n) {
        const double d = static_cast<double>(n);
        const double lap = (b * (h.value(d + 1) - h.value(d)) + (h.value(d - 1) - h.value(d))) / mu_c;
        const double v = c0 * std::pow(d, -alpha);
        h.verified_slack = std::max(h.verified_slack, lap / v + 1.0);
    }
    if (h.verified_slack > 1e-10)
        throw Error(ErrorCode::InvalidParameter,
                    "barrier fails the supersolution inequality by " + format_real(h.verified_slack));
    return h;
}

VertexField barrier_field(const Barrier& barrier, const PseudoMetric& metric, std::size_t size) {
    VertexField h(size);
    for (Vertex x = 0; x < size; ++x) h[x] = barrier.value(metric.from_root(x));
    return h;
}

BarrierCheck check_barrier(const WeightedGraph& graph, const PseudoMetric& metric,
                           const VertexField& potential, const Barrier& barrier) {
    const auto h = barrier_field(barrier, metric, graph.size());
    BarrierCheck out;
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x) || !(metric.from_root(x) > static_cast<double>(barrier.r_hat)))
            continue;
        const double slack = laplacian(graph, h, x) / potential[x] + 1.0;
        ++out.vertices;
        if (slack > out.max_slack || std::isnan(slack)) {
            out.max_slack = std::isnan(slack) ? std::numeric_limits<double>::infinity() : slack;
            out.worst = x;
        }
    }
    return out;
}

SandwichReport sandwich_check(const WeightedGraph& graph, const PseudoMetric& metric,
                              const VertexField& u, const Barrier& barrier, double gamma) {
    if (u.size() != graph.size())
        throw Error(ErrorCode::InvalidProblem, "field size does not match the graph");
    if (barrier.r_hat >= graph.truncation_radius())
        throw Error(ErrorCode::RegionEmpty, "r_hat is at or beyond the truncation depth");
    SandwichReport rep;
    rep.c = std::max(gamma, 1.0) * (1.0 + 1e-6);
    rep.margin = std::numeric_limits<double>::infinity();
    rep.lower_bound = std::numeric_limits<double>::infinity();
    rep.upper_excess = -std::numeric_limits<double>::infinity();
    for (Vertex x = 0; x < graph.size(); ++x) {
        const double d = metric.from_root(x);
        if (graph.in_halo(x) || !(d > static_cast<double>(barrier.r_hat))) continue;
        ++rep.vertices;
        const double lower = gamma - rep.c * barrier.value(d);
        rep.lower_bound = std::min(rep.lower_bound, lower);
        rep.upper_excess = std::max(rep.upper_excess, u[x] - gamma);
        if (u[x] - lower < rep.margin) {
            rep.margin = u[x] - lower;
            rep.worst = x;
        }
    }
    if (rep.vertices == 0)
        throw Error(ErrorCode::RegionEmpty, "no non-halo vertex lies beyond r_hat");
    rep.holds = rep.margin >= 0.0 && rep.upper_excess <= 1e-12;
    return rep;
}

}  // namespace graphsl
