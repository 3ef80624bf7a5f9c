#include "graphsl/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "graphsl/error.hpp"
#include "graphsl/generators.hpp"
#include "graphsl/io.hpp"
#include "graphsl/radial.hpp"

namespace graphsl {

namespace {

[[noreturn]] void invalid(const std::string& message) {
    throw Error(ErrorCode::InvalidParameter, message);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> tokens(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',' || text[i] == ' ' || text[i] == '\t') {
            const auto tok = trim(text.substr(start, i - start));
            if (!tok.empty()) out.push_back(tok);
            start = i + 1;
        }
    }
    return out;
}

template <class T>
T number(std::string_view token, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        invalid(std::string("cannot read ") + what + " from '" + std::string(token) + "'");
    return value;
}

PotentialSpec shifted(double alpha, double scale) {
    return {PotentialForm::ShiftedPower, alpha, scale, 1.0};
}

PseudoMetric hop_metric(const WeightedGraph& graph) {
    return path_metric(graph, unit_lengths(graph));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failure on " + path.string());
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

/// Verdict without throwing; a failed precondition counts as a violation.
StrongMaxVerdict strong_verdict(const WeightedGraph& graph, const VertexField& V,
                                const VertexField& u) {
    try {
        return verify_strong_max_principle(graph, V, u);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotASupersolution) return StrongMaxVerdict::Violation;
        throw;
    }
}

/// Normalization run on u / sup|u|, always iterating so that the monotone
/// claims are exercised. Empty trace when u vanishes.
IterationTrace normalized_run(const WeightedGraph& graph, const PseudoMetric& metric,
                              const VertexField& V, const VertexField& u, double M,
                              const std::vector<std::size_t>& radii, double tol) {
    const double scale = u.max_abs();
    if (scale == 0.0) return {};
    VertexField unit = u;
    for (double& v : unit.values()) v /= scale;
    NormalizeOptions opts;
    opts.exhaustion.tolerance = tol;
    opts.force_iteration = true;
    return normalize_bounded_solution(graph, metric, V, unit, graph.root(), M, radii, opts);
}

SummabilityVerdict expected_summability(std::size_t b, double lambda, double alpha) {
    if (alpha > 1.0) return SummabilityVerdict::Converges;
    if (alpha == 1.0) {
        const double lb = std::log(static_cast<double>(b));
        if (lambda > lb) return SummabilityVerdict::Converges;
        return lambda < lb ? SummabilityVerdict::Diverges : SummabilityVerdict::Inconclusive;
    }
    return b >= 2 ? SummabilityVerdict::Diverges : SummabilityVerdict::Inconclusive;
}

std::string fmt(double v) { return std::isnan(v) ? "NA" : format_real(v); }

}  // namespace

// ---------------------------------------------------------------------------
// Config

void validate(const ExperimentConfig& c) {
    if (c.tree_b < 1) invalid("tree-b must be at least 1");
    if (c.tree_depth < 1) invalid("tree-depth must be at least 1");
    if (!(c.measure_c > 0.0) || !std::isfinite(c.measure_c)) invalid("measure-c must be positive");
    if (c.alpha_grid.empty()) invalid("alpha-grid is empty");
    for (double a : c.alpha_grid)
        if (!(a >= 0.0) || !std::isfinite(a)) invalid("alpha values must be finite and >= 0");
    if (!(c.potential_scale > 0.0) || !std::isfinite(c.potential_scale))
        invalid("potential scale must be positive");
    if (!(c.gamma >= 0.0) || !std::isfinite(c.gamma)) invalid("gamma must be finite and >= 0");
    if (!(c.lambda_cap > 0.0 && c.lambda_cap < 1.0)) invalid("lambda-cap must lie in (0, 1)");
    if (!(c.lambda_xi > 1.0) || !std::isfinite(c.lambda_xi)) invalid("lambda-xi must exceed 1");
    if (c.radii.empty()) invalid("radii schedule is empty");
    for (std::size_t i = 0; i < c.radii.size(); ++i) {
        if (c.radii[i] < 1) invalid("radii must be positive");
        if (i > 0 && c.radii[i] <= c.radii[i - 1]) invalid("radii must be strictly increasing");
    }
    if (!(c.tol > 0.0)) invalid("tol must be positive");
    if (c.trials < 1) invalid("trials must be positive");
    if (!(c.normalize_m > 0.0 && c.normalize_m < 1.0)) invalid("normalize M must lie in (0, 1)");
    if (c.quadrature_nodes < 2) invalid("quadrature needs at least 2 nodes");
    if (!(c.laplacian_sign == 1.0 || c.laplacian_sign == -1.0))
        invalid("laplacian sign must be +1 or -1");
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (auto tok : tokens(text)) out.push_back(number<double>(tok, "a real number"));
    if (out.empty()) invalid("empty list");
    return out;
}

std::vector<std::size_t> parse_radii(std::string_view text) {
    text = trim(text);
    std::vector<std::size_t> out;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const auto lo = number<std::size_t>(trim(text.substr(0, dots)), "a radius");
        const auto hi = number<std::size_t>(trim(text.substr(dots + 2)), "a radius");
        if (lo > hi) invalid("empty radius range");
        for (std::size_t j = lo; j <= hi; ++j) out.push_back(j);
        return out;
    }
    for (auto tok : tokens(text)) out.push_back(number<std::size_t>(tok, "a radius"));
    if (out.empty()) invalid("empty radii schedule");
    return out;
}

std::string alpha_tag(double alpha) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, alpha);
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Suites

std::string SuiteResult::line() const {
    std::string out = summary_line(name, pass, max_slack);
    if (!detail.empty()) out += " " + detail;
    return out;
}

SuiteResult suite_calculus(std::size_t b, std::size_t depth, std::size_t pairs, std::uint64_t seed,
                           double laplacian_sign) {
    const auto t = build_model_tree({b, depth, 1.0});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> radius(1, depth > 1 ? depth - 1 : 1);
    double worst = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        const auto r = radius(rng);
        VertexField f(t.size()), g(t.size());
        for (Vertex x = 0; x < t.size(); ++x) {
            if (t.hops(x) < r) f[x] = value(rng);
            g[x] = value(rng);
        }
        const auto rep = calculus_identities(t, f, g, IdentityOptions{laplacian_sign});
        worst = std::max({worst, rep.relative_ibp(), rep.residual_product});
    }
    return {"calculus", worst < 1e-12, worst, "pairs=" + std::to_string(pairs)};
}

SuiteResult suite_weak_max(std::size_t b, std::size_t depth, double alpha, std::size_t trials,
                           std::uint64_t seed) {
    const auto t = build_model_tree({b, depth, 1.0});
    const auto V = make_potential(t, hop_metric(t), shifted(alpha, 1.0));
    const auto rep = verify_weak_max_principle(t, V, trials, seed);
    return {"weak_max", rep.violations.empty(), -rep.min_value,
            "trials=" + std::to_string(rep.trials) +
                " violations=" + std::to_string(rep.violations.size()) +
                " skipped=" + std::to_string(rep.skipped)};
}

SuiteResult suite_oracle(const std::vector<std::size_t>& branchings,
                         const std::vector<std::size_t>& depths, const std::vector<double>& alphas,
                         double measure, double gamma) {
    double worst_diff = 0.0, worst_spread = 0.0;
    std::size_t cases = 0;
    for (auto b : branchings)
        for (auto depth : depths) {
            if (depth < 2) continue;
            const auto t = build_model_tree({b, depth, measure});
            const auto m = hop_metric(t);
            const auto omega = ball(t, m, t.root(), static_cast<double>(depth - 1));
            for (double alpha : alphas) {
                const auto spec = shifted(alpha, 1.0);
                const auto V = make_potential(t, m, spec);
                const auto sol = solve(t, {omega, V, VertexField(t.size()), VertexField(t.size(), gamma)});
                const auto prof =
                    radial_dirichlet(b, measure, radial_potential(spec, depth - 1), depth - 1, gamma);
                worst_diff = std::max(worst_diff, compare(t, sol.u, lift_radial(prof, t, m)).max_abs);
                worst_spread = std::max(worst_spread, sphere_spread(t, sol.u));
                ++cases;
            }
        }
    const double worst = std::max(worst_diff, worst_spread);
    return {"oracle", worst < 1e-10, worst,
            "cases=" + std::to_string(cases) + " max_diff=" + format_real(worst_diff) +
                " max_spread=" + format_real(worst_spread)};
}

SuiteResult suite_barrier(const std::vector<std::size_t>& branchings,
                          const std::vector<std::size_t>& depths, const std::vector<double>& alphas,
                          double measure) {
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t checked = 0, vacuous = 0, vertices = 0;
    for (auto b : branchings) {
        if (b < 2) continue;
        for (auto depth : depths) {
            const auto t = build_model_tree({b, depth, measure});
            const auto m = hop_metric(t);
            for (double alpha : alphas) {
                if (!(alpha > 1.0)) continue;
                const auto V = make_potential(t, m, shifted(alpha, 1.0));
                const auto h = make_barrier(b, alpha, 1.0, measure);
                const auto rep = check_barrier(t, m, V, h);
                if (rep.vertices == 0) {
                    ++vacuous;
                    continue;
                }
                ++checked;
                vertices += rep.vertices;
                worst = std::max(worst, rep.max_slack);
            }
        }
    }
    const bool pass = checked == 0 || worst <= 1e-10;
    return {"barrier", pass, checked == 0 ? 0.0 : worst,
            "cases=" + std::to_string(checked) + " vacuous=" + std::to_string(vacuous) +
                " vertices=" + std::to_string(vertices)};
}

SuiteResult suite_summability(const std::vector<std::size_t>& branchings,
                              const std::vector<double>& lambdas, const std::vector<double>& alphas) {
    std::size_t cases = 0, mismatches = 0;
    for (auto b : branchings)
        for (double L : lambdas)
            for (double alpha : alphas) {
                const auto expected = expected_summability(b, L, alpha);
                if (expected == SummabilityVerdict::Inconclusive) continue;
                ++cases;
                if (check_summability(ModelTreeSpec{b, 1, 1.0}, L, alpha).verdict != expected)
                    ++mismatches;
            }
    return {"summability", mismatches == 0, static_cast<double>(mismatches),
            "cases=" + std::to_string(cases) + " mismatches=" + std::to_string(mismatches)};
}

SuiteResult suite_exhaustion(std::size_t b, std::size_t depth, double measure,
                             const std::vector<double>& alphas, double gamma,
                             const std::vector<std::size_t>& radii, double normalize_m) {
    const auto t = build_model_tree({b, depth, measure});
    const auto m = hop_metric(t);
    bool pass = true;
    double worst = 0.0;
    std::size_t positive = 0, zero = 0, violations = 0;
    for (double alpha : alphas) {
        const auto V = make_potential(t, m, shifted(alpha, 1.0));
        const auto tr = dirichlet_exhaustion(t, m, V, gamma, radii);
        pass = pass && tr.all_bounds_ok() && tr.all_monotone_ok();
        worst = std::max({worst, tr.max_bound_excess(), tr.max_monotone_excess()});
        switch (strong_verdict(t, V, tr.final_field)) {
            case StrongMaxVerdict::StrictlyPositive: ++positive; break;
            case StrongMaxVerdict::IdenticallyZero: ++zero; break;
            case StrongMaxVerdict::Violation: ++violations; pass = false; break;
        }
        const auto nr = normalized_run(t, m, V, tr.final_field, normalize_m, radii, 1e-8);
        pass = pass && nr.all_bounds_ok() && nr.all_monotone_ok();
        worst = std::max({worst, nr.max_bound_excess(), nr.max_monotone_excess()});
    }
    return {"exhaustion", pass, worst,
            "alphas=" + std::to_string(alphas.size()) + " strictly_positive=" +
                std::to_string(positive) + " identically_zero=" + std::to_string(zero) +
                " violations=" + std::to_string(violations)};
}

AnalysisContext make_analysis_context(std::size_t b, std::size_t depth, double lambda_xi) {
    if (depth < 6) invalid("analysis tree needs depth >= 6");
    AnalysisContext ctx;
    ctx.graph = build_model_tree({b, depth, static_cast<double>(b + 1)});
    ctx.metric = hop_metric(ctx.graph);
    ctx.decay_potential = make_potential(ctx.graph, ctx.metric, shifted(1.0, 1.0));
    ctx.fast_potential = make_potential(ctx.graph, ctx.metric, shifted(2.0, 1.0));
    ctx.bound = check_potential_bound(ctx.graph, ctx.metric, ctx.decay_potential, 1.0,
                                      ctx.graph.root());
    ctx.tf = make_test_functions(ctx.metric, 1.0, ctx.bound.c0, ctx.bound.r0, lambda_xi);
    std::vector<std::size_t> radii(depth - 3);
    std::iota(radii.begin(), radii.end(), std::size_t{2});
    ctx.solution = dirichlet_exhaustion(ctx.graph, ctx.metric, ctx.fast_potential, 1.0, radii)
                       .final_field;
    ctx.domain = ball(ctx.graph, ctx.metric, ctx.graph.root(), static_cast<double>(radii.back()));
    return ctx;
}

SuiteResult suite_lemma51(const AnalysisContext& ctx) {
    const auto rep = check_lemma51(ctx.graph, ctx.metric, ctx.decay_potential, ctx.tf,
                                   time_grid(ctx.tf.T, 16));
    return {"lemma51", rep.holds(1e-10) && rep.flagged == 0, rep.max_slack,
            "samples=" + std::to_string(rep.samples) + " flagged=" + std::to_string(rep.flagged)};
}

SuiteResult suite_lemma52(const AnalysisContext& ctx) {
    const auto rep = check_lemma52(ctx.graph, ctx.metric, ctx.tf);
    return {"lemma52", rep.holds(1e-12), std::max(rep.ratio_gradient, rep.ratio_energy) - 1.0,
            "edges=" + std::to_string(rep.edges) +
                " support_ok=" + std::to_string(rep.support_ok) +
                " monotone_ok=" + std::to_string(rep.monotone_ok)};
}

SuiteResult suite_subsolution(const AnalysisContext& ctx) {
    const auto rep = check_subsolution(ctx.graph, ctx.fast_potential, ctx.solution,
                                       time_grid(ctx.tf.T, 16), ctx.domain);
    return {"subsolution", rep.holds(1e-10), rep.samples == 0 ? 0.0 : rep.max_slack,
            "samples=" + std::to_string(rep.samples) + " skipped=" + std::to_string(rep.skipped)};
}

SuiteResult suite_apriori(const AnalysisContext& ctx, std::size_t nodes) {
    auto run = [&](std::size_t n) {
        return check_apriori(ctx.graph, ctx.metric, ctx.fast_potential, ctx.solution, ctx.tf, n,
                             ctx.domain);
    };
    const auto main = run(nodes);
    // Node counts 1 + 24 * 2^k give exactly halved step sizes.
    std::vector<double> slacks;
    for (std::size_t n : {25u, 49u, 97u, 193u, 385u}) slacks.push_back(run(n).slack);
    double min_order = std::numeric_limits<double>::infinity();
    std::ostringstream orders;
    for (std::size_t k = 0; k + 2 < slacks.size(); ++k) {
        const double d0 = std::abs(slacks[k + 1] - slacks[k]);
        const double d1 = std::abs(slacks[k + 2] - slacks[k + 1]);
        const double p = (d0 > 0.0 && d1 > 0.0) ? std::log2(d0 / d1) : 0.0;
        min_order = std::min(min_order, p);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", p);
        orders << (k ? "," : "") << buf;
    }
    const bool pass = main.slack >= -1e-6 && min_order >= 1.8;
    return {"apriori", pass, -main.slack,
            "nodes=" + std::to_string(nodes) + " lhs=" + format_real(main.lhs) +
                " rhs=" + format_real(main.rhs) + " orders=" + orders.str()};
}

// ---------------------------------------------------------------------------
// Commands

namespace {

template <class Body>
int guarded(std::ostream& log, const char* command, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        log << command << ": error: " << e.what();
        if (e.vertex()) log << " (vertex " << *e.vertex() << ")";
        log << "\n";
        return e.code() == ErrorCode::InvalidParameter ? 2 : 1;
    } catch (const std::exception& e) {
        log << command << ": error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int cmd_dichotomy(const ExperimentConfig& config, std::ostream& log) {
    return guarded(log, "dichotomy", [&] {
        validate(config);
        const auto [lo, hi] = std::minmax_element(config.alpha_grid.begin(), config.alpha_grid.end());
        if (!(*lo <= 1.0 && *hi > 1.0)) invalid("alpha-grid must contain values <= 1 and > 1");
        prepare_dir(config.out_dir);

        const ModelTreeSpec spec{config.tree_b, config.tree_depth, config.measure_c};
        const auto t = build_model_tree(spec);
        const auto m = hop_metric(t);
        const std::size_t jmax = config.radii.back();

        std::string summary = "alpha,u_final_root,sandwich_lower_bound,summability_verdict\n";
        std::string barriers =
            "alpha,beta,epsilon,r_hat,c_hat,barrier_max_slack,barrier_vertices,sandwich_margin,"
            "sandwich_vertices\n";
        std::string summability = "b,alpha,lambda_cap,limit_ratio,verdict\n";
        std::set<double> lambdas{0.5, 0.8, 0.95, config.lambda_cap};
        bool ok = true;

        for (double alpha : config.alpha_grid) {
            const auto tag = alpha_tag(alpha);
            const auto pspec = shifted(alpha, config.potential_scale);
            const auto V = make_potential(t, m, pspec);
            ExhaustionOptions eopts;
            eopts.tolerance = config.tol;
            const auto tr = dirichlet_exhaustion(t, m, V, config.gamma, config.radii, eopts);
            write_text(config.out_dir / ("trace_alpha_" + tag + ".csv"), trace_csv(tr));
            const bool mono = tr.all_bounds_ok() && tr.all_monotone_ok();

            const auto verdict = strong_verdict(t, V, tr.final_field);

            const auto prof = radial_dirichlet(config.tree_b, config.measure_c,
                                               radial_potential(pspec, jmax), jmax, config.gamma);
            write_text(config.out_dir / ("profile_alpha_" + tag + ".csv"), profile_csv(prof));
            const double oracle_gap = compare(t, tr.final_field, lift_radial(prof, t, m)).max_abs;

            const auto nr = normalized_run(t, m, V, tr.final_field, config.normalize_m,
                                           config.radii, config.tol);
            if (!nr.steps.empty())
                write_text(config.out_dir / ("normalize_alpha_" + tag + ".csv"), trace_csv(nr));
            const bool norm_ok = nr.all_bounds_ok() && nr.all_monotone_ok();

            double lower = std::numeric_limits<double>::quiet_NaN();
            bool sandwich_ok = true;
            if (alpha > 1.0 && config.tree_b >= 2) {
                const auto h = make_barrier(config.tree_b, alpha, config.potential_scale,
                                            config.measure_c);
                const auto bc = check_barrier(t, m, V, h);
                double margin = std::numeric_limits<double>::quiet_NaN();
                std::size_t sv = 0;
                try {
                    const auto sw = sandwich_check(t, m, tr.final_field, h, config.gamma);
                    lower = sw.lower_bound;
                    margin = sw.margin;
                    sv = sw.vertices;
                    sandwich_ok = sw.holds;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::RegionEmpty) throw;
                }
                sandwich_ok = sandwich_ok && bc.holds();
                barriers += tag + "," + format_real(h.beta) + "," + format_real(h.epsilon) + "," +
                            std::to_string(h.r_hat) + "," + format_real(h.c_hat) + "," +
                            (bc.vertices ? format_real(bc.max_slack) : "NA") + "," +
                            std::to_string(bc.vertices) + "," + fmt(margin) + "," +
                            std::to_string(sv) + "\n";
            }

            const auto sum = check_summability(spec, config.lambda_cap, alpha);
            for (double L : lambdas) {
                const auto r = check_summability(spec, L, alpha);
                summability += std::to_string(config.tree_b) + "," + tag + "," + format_real(L) +
                               "," + fmt(r.limit_ratio) + "," + std::string(to_string(r.verdict)) +
                               "\n";
            }

            summary += tag + "," + format_real(tr.final_field[t.root()]) + "," + fmt(lower) + "," +
                       std::string(to_string(sum.verdict)) + "\n";

            const bool alpha_ok = mono && norm_ok && sandwich_ok && oracle_gap < 1e-10 &&
                                  verdict != StrongMaxVerdict::Violation;
            log << "alpha=" << tag << " u_root=" << format_real(tr.final_field[t.root()])
                << " status=" << to_string(tr.status) << " monotone=" << (mono ? "ok" : "FAIL")
                << " normalize=" << (nr.steps.empty() ? "skipped" : norm_ok ? "ok" : "FAIL")
                << " sandwich=" << (alpha > 1.0 ? (sandwich_ok ? "ok" : "FAIL") : "n/a")
                << " oracle_gap=" << format_real(oracle_gap) << " strong_max=" << to_string(verdict)
                << "\n";
            ok = ok && alpha_ok;
        }

        write_text(config.out_dir / "summary.csv", summary);
        write_text(config.out_dir / "barrier.csv", barriers);
        write_text(config.out_dir / "summability.csv", summability);
        std::string params = "key,value\n";
        params += "tree_b," + std::to_string(config.tree_b) + "\n";
        params += "tree_depth," + std::to_string(config.tree_depth) + "\n";
        params += "measure_c," + format_real(config.measure_c) + "\n";
        params += "potential_scale," + format_real(config.potential_scale) + "\n";
        params += "gamma," + format_real(config.gamma) + "\n";
        params += "lambda_cap," + format_real(config.lambda_cap) + "\n";
        params += "lambda_xi," + format_real(config.lambda_xi) + "\n";
        params += "tol," + format_real(config.tol) + "\n";
        params += "normalize_m," + format_real(config.normalize_m) + "\n";
        params += "seed," + std::to_string(config.seed) + "\n";
        write_text(config.out_dir / "parameters.csv", params);
        log << "dichotomy: " << (ok ? "pass" : "FAIL") << "\n";
        return ok ? 0 : 1;
    });
}

int cmd_verify(const ExperimentConfig& config, std::ostream& log) {
    return guarded(log, "verify", [&] {
        validate(config);
        std::vector<SuiteResult> results;
        auto record = [&](SuiteResult r) {
            log << r.line() << "\n";
            results.push_back(std::move(r));
        };
        const std::size_t b = config.tree_b;
        const std::size_t shallow = std::min<std::size_t>(config.tree_depth, 8);
        record(suite_calculus(b, shallow, 100, config.seed, config.laplacian_sign));
        record(suite_weak_max(b, shallow, 1.0, config.trials, config.seed));
        record(suite_oracle({b}, {6, std::min<std::size_t>(config.tree_depth, 12)},
                            config.alpha_grid, config.measure_c, config.gamma));
        record(suite_barrier({b}, {config.tree_depth}, config.alpha_grid, config.measure_c));
        record(suite_summability({b}, {config.lambda_cap}, config.alpha_grid));
        record(suite_exhaustion(b, config.tree_depth, config.measure_c, config.alpha_grid,
                                config.gamma, config.radii, config.normalize_m));
        const auto ctx = make_analysis_context(b, 16, config.lambda_xi);
        record(suite_lemma51(ctx));
        record(suite_lemma52(ctx));
        record(suite_subsolution(ctx));
        record(suite_apriori(ctx, config.quadrature_nodes));

        std::string report;
        for (const auto& r : results) report += r.line() + "\n";
        prepare_dir(config.out_dir);
        write_text(config.out_dir / "verify.txt", report);
        for (const auto& r : results)
            if (!r.pass) {
                log << "verify: FAIL (first failing suite: " << r.name << ")\n";
                return 1;
            }
        log << "verify: pass\n";
        return 0;
    });
}

int cmd_solve(const ExperimentConfig& config, std::ostream& log) {
    return guarded(log, "solve", [&] {
        if (config.problem_file.empty()) invalid("solve needs a problem file");
        const auto doc = read_document(config.problem_file);
        const DirichletProblem problem{doc.interior, doc.potential, doc.f, doc.g};
        const auto sol = solve(doc.graph, problem);
        const auto m = hop_metric(doc.graph);
        std::string csv = "vertex,distance,u\n";
        for (Vertex x = 0; x < doc.graph.size(); ++x)
            csv += std::to_string(x) + "," + format_real(m.from_root(x)) + "," +
                   format_real(sol.u[x]) + "\n";
        prepare_dir(config.out_dir);
        write_text(config.out_dir / "solution.csv", csv);
        log << "solve: vertices=" << doc.graph.size() << " interior=" << doc.interior.size()
            << " solver=" << (sol.used == SolverKind::Iterative ? "iterative" : "direct")
            << " iterations=" << sol.iterations << " max_residual=" << format_real(sol.max_residual)
            << "\n";
        return 0;
    });
}

}  // namespace graphsl
