#include "graphsl/liouville.hpp"

#include <algorithm>
#include <cmath>

#include "graphsl/error.hpp"
#include "graphsl/io.hpp"

namespace graphsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lambda_cap(double lambda_cap, double alpha) {
    if (!(lambda_cap > 0.0 && lambda_cap < 1.0))
        throw Error(ErrorCode::InvalidLambda, "Lambda must lie in (0, 1)");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::InvalidParameter, "alpha must be >= 0");
}

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

std::vector<Vertex> resolve_domain(const WeightedGraph& graph, std::span<const Vertex> domain) {
    if (!domain.empty()) return {domain.begin(), domain.end()};
    std::vector<Vertex> all;
    for (Vertex x = 0; x < graph.size(); ++x)
        if (!graph.in_halo(x)) all.push_back(x);
    return all;
}

void require_solution(const WeightedGraph& graph, const VertexField& potential,
                      const VertexField& u, std::span<const Vertex> where) {
    if (u.size() != graph.size() || potential.size() != graph.size())
        throw Error(ErrorCode::NotASolution, "field size does not match the graph");
    const double tol = 1e-10 * (1.0 + u.max_abs());
    for (Vertex x = 0; x < graph.size(); ++x)
        if (!graph.in_halo(x) && (u[x] < -1e-12 || u[x] > 1.0 + 1e-12))
            throw Error(ErrorCode::NotASolution, "u must lie in [0, 1]", x);
    for (Vertex x : where) {
        if (graph.in_halo(x))
            throw Error(ErrorCode::NotASolution, "domain reaches the halo", x);
        if (std::abs(schrodinger_residual(graph, potential, u, x)) > tol)
            throw Error(ErrorCode::NotASolution, "(Delta - V) u != 0", x);
    }
}

}  // namespace

// ---------------------------------------------------------------------------

PotentialBoundReport check_potential_bound(const WeightedGraph& graph, const PseudoMetric& metric,
                                           const VertexField& potential, double alpha,
                                           Vertex x0) {
    if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidParameter, "alpha must be >= 0");
    const auto dist = metric.distances_from(x0);
    PotentialBoundReport rep;
    double dmax = 0.0;
    for (Vertex x = 0; x < graph.size(); ++x)
        if (!graph.in_halo(x) && std::isfinite(dist[x])) dmax = std::max(dmax, dist[x]);
    for (double r = 1.0; r <= dmax; r *= 2.0) rep.shells.push_back({r});
    if (rep.shells.empty()) return rep;

    for (Vertex x = 0; x < graph.size(); ++x) {
        const double d = dist[x];
        if (graph.in_halo(x) || !(d >= 1.0)) continue;
        const auto k = std::min(static_cast<std::size_t>(std::floor(std::log2(d))),
                                rep.shells.size() - 1);
        auto& shell = rep.shells[k];
        const double value = potential[x] * std::pow(d, alpha);
        ++shell.vertices;
        if (value < shell.min_value) {
            shell.min_value = value;
            shell.argmin = x;
        }
    }
    std::erase_if(rep.shells, [](const ShellBound& s) { return s.vertices == 0; });

    // c0 for each r0 is the running minimum from the outside in.
    std::vector<double> outside(rep.shells.size());
    double running = kInf;
    for (std::size_t k = rep.shells.size(); k-- > 0;) {
        running = std::min(running, rep.shells[k].min_value);
        outside[k] = running;
    }
    for (std::size_t k = 0; k < rep.shells.size(); ++k) {
        if (outside[k] > 0.0) {
            rep.c0 = outside[k];
            rep.r0 = rep.shells[k].r0;
            break;
        }
    }

    const std::size_t tail = std::min<std::size_t>(3, rep.shells.size());
    bool positive = rep.c0 > 0.0;
    if (tail >= 2) {
        std::vector<double> lx, ly;
        for (std::size_t k = rep.shells.size() - tail; k < rep.shells.size(); ++k) {
            const double m = rep.shells[k].min_value;
            if (!(m > 0.0)) {
                positive = false;
                break;
            }
            lx.push_back(std::log(rep.shells[k].r0));
            ly.push_back(std::log(m));
        }
        if (positive) rep.tail_slope = slope(lx, ly);
    }
    rep.ok = positive && rep.tail_slope >= -0.1;
    if (!rep.ok) rep.witness = rep.shells.back().argmin;
    return rep;
}

std::string_view to_string(SummabilityVerdict verdict) {
    switch (verdict) {
    case SummabilityVerdict::Converges:
        return "converges";
    case SummabilityVerdict::Diverges:
        return "diverges";
    case SummabilityVerdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

SummabilityReport check_summability(const ModelTreeSpec& tree, double lambda_cap, double alpha) {
    require_lambda_cap(lambda_cap, alpha);
    if (tree.branching < 1 || !(tree.measure > 0.0))
        throw Error(ErrorCode::InvalidParameter, "tree needs b >= 1 and c > 0");
    const double b = static_cast<double>(tree.branching);

    SummabilityReport rep;
    if (alpha < 1.0) rep.limit_ratio = b;
    else if (alpha == 1.0) rep.limit_ratio = b * std::exp(-lambda_cap);
    else rep.limit_ratio = 0.0;

    const double gap = rep.limit_ratio - 1.0;
    if (std::abs(gap) <= 1e-12) rep.verdict = SummabilityVerdict::Inconclusive;
    else rep.verdict = gap < 0.0 ? SummabilityVerdict::Converges : SummabilityVerdict::Diverges;

    // Terms in log space: log(c) + n log b - Lambda n^alpha.
    const double logc = std::log(tree.measure), logb = std::log(b);
    double sum = 0.0;
    for (std::size_t n = 1; n <= 100000; ++n) {
        const double dn = static_cast<double>(n);
        const double term = std::exp(logc + dn * logb - lambda_cap * std::pow(dn, alpha));
        rep.ratios.push_back(b * std::exp(-lambda_cap * (std::pow(dn + 1.0, alpha) - std::pow(dn, alpha))));
        sum += term;
        rep.partial_sums.push_back(sum);
        if (!std::isfinite(sum)) break;
        if (rep.verdict == SummabilityVerdict::Converges && rep.ratios.back() < 1.0 &&
            term <= 1e-17 * sum)
            break;
        if (rep.verdict != SummabilityVerdict::Converges && n >= 200) break;
    }
    if (rep.verdict == SummabilityVerdict::Converges) rep.sum = sum;
    return rep;
}

SummabilityReport check_summability(const WeightedGraph& graph, const PseudoMetric& metric,
                                    double lambda_cap, double alpha) {
    require_lambda_cap(lambda_cap, alpha);
    SummabilityReport rep;
    std::vector<double> by_radius;
    for (Vertex x = 0; x < graph.size(); ++x) {
        const double d = metric.from_root(x);
        if (!(d >= 1.0)) continue;
        const auto n = static_cast<std::size_t>(std::ceil(d));
        if (by_radius.size() < n) by_radius.resize(n, 0.0);
        by_radius[n - 1] += std::exp(-lambda_cap * std::pow(d, alpha)) * graph.measure(x);
    }
    double sum = 0.0;
    for (double v : by_radius) {
        sum += v;
        rep.partial_sums.push_back(sum);
    }
    return rep;
}

// ---------------------------------------------------------------------------

double TestFunctions::rho(double d) const {
    return std::max(std::pow(d, beta), std::pow(r, beta));
}

double TestFunctions::xi(double d, double t) const { return -M * rho(d) / (lambda * T - t); }

double TestFunctions::xi_t(double d, double t) const {
    const double den = lambda * T - t;
    return -M * rho(d) / (den * den);
}

double TestFunctions::eta(double d) const {
    return std::min(2.0 * std::max(r1 - s - d, 0.0) / r1, 1.0);
}

TestFunctions make_test_functions(const PseudoMetric& metric, double alpha, double c0, double r0,
                                  double lambda) {
    if (!(lambda > 1.0) || !std::isfinite(lambda))
        throw Error(ErrorCode::BadLambda, "lambda must exceed 1");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(ErrorCode::InvalidParameter, "alpha must lie in [0, 1]");
    if (!(c0 > 0.0) || !(r0 > 0.0))
        throw Error(ErrorCode::InvalidParameter, "c0 and R0 must be positive");
    TestFunctions tf;
    tf.alpha = alpha;
    tf.beta = alpha;
    tf.c0 = c0;
    tf.r0 = r0;
    tf.lambda = lambda;
    tf.s = metric.jump_size();
    tf.defect = metric.max_intrinsic_defect();
    tf.intrinsic = metric.intrinsic();
    if (tf.beta > 0.0) {
        const double b = tf.beta;
        const double bound = 2.0 * c0 * std::pow(r0, 2.0 - 2.0 * b) *
                             std::exp(-2.0 * b * std::pow(r0, b - 1.0) * tf.s / (lambda - 1.0)) /
                             (b * b);
        tf.M = std::min(1.0, bound);
    } else {
        tf.M = 1.0;
    }
    tf.T = tf.M;
    tf.r = 2.0 * tf.s + r0;
    tf.r1 = 2.0 * tf.r + 8.0 * tf.s + 1.0;
    return tf;
}

std::vector<double> time_grid(double T, std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k)
        t[k] = T * static_cast<double>(k + 1) / static_cast<double>(count + 1);
    return t;
}

SlackReport check_lemma51(const WeightedGraph& graph, const PseudoMetric& metric,
                          const VertexField& potential, const TestFunctions& tf,
                          std::span<const double> t_samples) {
    for (double t : t_samples)
        if (!(t > 0.0 && t < tf.T))
            throw Error(ErrorCode::InvalidParameter, "time samples must lie in (0, T)");
    if (potential.size() != graph.size())
        throw Error(ErrorCode::InvalidProblem, "potential size does not match the graph");
    SlackReport rep;
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x)) continue;
        if (potential[x] == 0.0) ++rep.flagged;
        const double dx = metric.from_root(x);
        VertexSlack row{x, 0.0, -kInf};
        for (double t : t_samples) {
            const double xix = tf.xi(dx, t);
            double sum = 0.0;
            const auto nbrs = graph.neighbors(x);
            const auto ws = graph.weights(x);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                const double e = 1.0 - std::exp(tf.xi(metric.from_root(nbrs[k]), t) - xix);
                sum += ws[k] * e * e;
            }
            const double lhs = potential[x] * tf.xi_t(dx, t) * graph.measure(x) + 0.5 * sum;
            ++rep.samples;
            if (lhs > row.value) row = {x, t, lhs};
        }
        if (t_samples.empty()) continue;
        rep.rows.push_back(row);
        if (row.value > rep.max_slack) {
            rep.max_slack = row.value;
            rep.worst = row;
        }
    }
    return rep;
}

CutoffReport check_lemma52(const WeightedGraph& graph, const PseudoMetric& metric,
                           const TestFunctions& tf) {
    CutoffReport rep;
    const double lo = tf.r1 / 2.0 - 2.0 * tf.s;
    for (Vertex x = 0; x < graph.size(); ++x) {
        const double dx = metric.from_root(x);
        if (dx > tf.r1) continue;
        if (graph.in_halo(x))
            throw Error(ErrorCode::TruncationTooShallow,
                        "the cut-off annulus reaches the halo; deepen the truncation", x);
        const double ex = tf.eta(dx);
        if ((dx >= tf.r1 - tf.s && ex != 0.0) || (dx <= tf.r1 / 2.0 - tf.s && ex != 1.0))
            rep.support_ok = false;
        const double chi = (dx >= lo && dx <= tf.r1) ? 1.0 : 0.0;
        double energy = 0.0;
        for (std::size_t slot = graph.slot_begin(x); slot < graph.slot_begin(x + 1); ++slot) {
            const Vertex y = graph.slot_target(slot);
            const double dy = metric.from_root(y);
            const double grad = tf.eta(dy) - ex;
            ++rep.edges;
            if (dx <= dy && grad > 0.0) rep.monotone_ok = false;
            const double bound = 2.0 / tf.r1 * metric.edge_distance(slot) * chi;
            const double ratio = bound > 0.0 ? std::abs(grad) / bound : (grad == 0.0 ? 0.0 : kInf);
            if (ratio > rep.ratio_gradient) {
                rep.ratio_gradient = ratio;
                rep.worst = x;
            }
            energy += grad * grad * graph.slot_weight(slot);
        }
        const double ebound = 4.0 / (tf.r1 * tf.r1) * graph.measure(x) * chi;
        const double eratio = ebound > 0.0 ? energy / ebound : (energy == 0.0 ? 0.0 : kInf);
        if (eratio > rep.ratio_energy) {
            rep.ratio_energy = eratio;
            rep.worst = x;
        }
    }
    return rep;
}

SlackReport check_subsolution(const WeightedGraph& graph, const VertexField& potential,
                              const VertexField& u, std::span<const double> t_samples,
                              std::span<const Vertex> domain) {
    const auto where = resolve_domain(graph, domain);
    require_solution(graph, potential, u, where);
    SlackReport rep;
    for (Vertex x : where) {
        VertexSlack row{x, 0.0, -kInf};
        for (double t : t_samples) {
            const double et = std::exp(t);
            const double vx = et * u[x] - 1.0;
            if (std::abs(vx) <= 1e-9) {
                ++rep.skipped;
                continue;
            }
            const double vpx = std::max(vx, 0.0);
            double lap = 0.0;
            const auto nbrs = graph.neighbors(x);
            const auto ws = graph.weights(x);
            for (std::size_t k = 0; k < nbrs.size(); ++k)
                lap += ws[k] * (std::max(et * u[nbrs[k]] - 1.0, 0.0) - vpx);
            lap /= graph.measure(x);
            const double dt = vx > 0.0 ? et * u[x] : 0.0;
            const double value = potential[x] * dt - lap;
            ++rep.samples;
            if (value > row.value) row = {x, t, value};
        }
        if (row.value == -kInf) continue;
        rep.rows.push_back(row);
        if (row.value > rep.max_slack) {
            rep.max_slack = row.value;
            rep.worst = row;
        }
    }
    return rep;
}

AprioriReport check_apriori(const WeightedGraph& graph, const PseudoMetric& metric,
                            const VertexField& potential, const VertexField& u,
                            const TestFunctions& tf, std::size_t nodes,
                            std::span<const Vertex> domain) {
    if (nodes < 2) throw Error(ErrorCode::InvalidParameter, "need at least two quadrature nodes");
    if (!(tf.lambda > 1.0)) throw Error(ErrorCode::ConditionViolated, "lambda T - t must stay positive");
    const std::size_t n = graph.size();

    std::vector<double> d(n), eta(n), rho(n);
    for (Vertex x = 0; x < n; ++x) {
        d[x] = metric.from_root(x);
        eta[x] = tf.eta(d[x]);
        rho[x] = tf.rho(d[x]);
    }

    // Cut-off: nonnegative, finite support, every neighbor of the support present.
    std::vector<char> in_domain(n, domain.empty() ? 1 : 0);
    for (Vertex x : domain) in_domain[x] = 1;
    std::vector<Vertex> support, active;
    std::vector<char> is_active(n, 0);
    for (Vertex x = 0; x < n; ++x) {
        if (eta[x] < 0.0) throw Error(ErrorCode::ConditionViolated, "eta is negative", x);
        if (eta[x] == 0.0) continue;
        if (graph.in_halo(x) || !in_domain[x])
            throw Error(ErrorCode::ConditionViolated,
                        "supp eta leaves the region where u solves the equation", x);
        support.push_back(x);
        is_active[x] = 1;
        for (Vertex y : graph.neighbors(x)) {
            if (graph.in_halo(y))
                throw Error(ErrorCode::ConditionViolated, "supp eta touches the halo", y);
            is_active[y] = 1;
        }
    }
    for (Vertex x = 0; x < n; ++x)
        if (is_active[x]) active.push_back(x);
    require_solution(graph, potential, u, support);

    const double T = tf.T;
    const double h = T / static_cast<double>(nodes - 1);
    auto time = [&](std::size_t k) { return k + 1 == nodes ? T : h * static_cast<double>(k); };

    auto vplus = [&](Vertex x, double t) { return std::max(std::exp(t) * u[x] - 1.0, 0.0); };
    auto lhs_at = [&](double t) {
        double sum = 0.0;
        for (Vertex x : support) {
            const double v = vplus(x, t);
            sum += potential[x] * eta[x] * eta[x] * v * v * std::exp(tf.xi(d[x], t)) * graph.measure(x);
        }
        return sum;
    };

    std::vector<double> xi(n), exi(n);
    auto integrand = [&](double t) {
        for (Vertex x : active) {
            xi[x] = tf.xi(d[x], t);
            exi[x] = std::exp(xi[x]);
        }
        // Monotone coupling of eta^2 and e^xi along every active edge.
        for (Vertex x : active)
            for (Vertex y : graph.neighbors(x)) {
                if (!is_active[y]) continue;
                const double prod = (eta[y] * eta[y] - eta[x] * eta[x]) * (exi[y] - exi[x]);
                if (prod < -1e-15)
                    throw Error(ErrorCode::ConditionViolated,
                                "[eta^2(y) - eta^2(x)][e^xi(y) - e^xi(x)] < 0", x);
            }
        double first = 0.0, second = 0.0;
        for (Vertex x : active) {
            const double v = vplus(x, t);
            if (v == 0.0) continue;
            const double v2 = v * v;
            const auto nbrs = graph.neighbors(x);
            const auto ws = graph.weights(x);
            if (eta[x] > 0.0) {
                double brace = potential[x] * tf.xi_t(d[x], t) * graph.measure(x);
                for (std::size_t k = 0; k < nbrs.size(); ++k) {
                    const double e = 1.0 - std::exp(xi[nbrs[k]] - xi[x]);
                    brace += 0.5 * ws[k] * e * e;
                }
                first += v2 * eta[x] * eta[x] * exi[x] * brace;
            }
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                const Vertex y = nbrs[k];
                const double de = eta[y] - eta[x];
                second += v2 * exi[y] * de * de * ws[k];
            }
        }
        return first + 2.0 * second;
    };

    AprioriReport rep;
    rep.nodes = nodes;
    rep.support = support.size();
    rep.lhs = lhs_at(T) - lhs_at(0.0);
    double integral = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
        const double w = (k == 0 || k + 1 == nodes) ? 0.5 : 1.0;
        integral += w * integrand(time(k));
    }
    rep.rhs = integral * h;
    rep.slack = rep.rhs - rep.lhs;
    return rep;
}

std::string summary_line(std::string_view name, bool pass, double max_slack) {
    return "check=" + std::string(name) + " status=" + (pass ? "pass" : "fail") +
           " max_slack=" + format_real(max_slack);
}

std::string slack_csv(const SlackReport& report) {
    std::string out = "x,t,value\n";
    for (const auto& row : report.rows)
        out += std::to_string(row.x) + "," + format_real(row.t) + "," + format_real(row.value) + "\n";
    return out;
}

}  // namespace graphsl
