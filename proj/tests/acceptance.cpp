// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 run all ten
//   acceptance --criterion N   run only N (repeatable)

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "graphsl/dirichlet.hpp"
#include "graphsl/error.hpp"
#include "graphsl/exhaustion.hpp"
#include "graphsl/experiment.hpp"
#include "graphsl/generators.hpp"
#include "graphsl/io.hpp"
#include "graphsl/radial.hpp"

using namespace graphsl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string num(double v) { return format_real(v); }

std::string timing(double seconds, double limit) {
    std::ostringstream s;
    s << "runtime=" << std::fixed;
    s.precision(2);
    s << seconds << "s(<" << limit << ")";
    return s.str();
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out(hi - lo + 1);
    std::iota(out.begin(), out.end(), lo);
    return out;
}

const std::vector<double> kAlphas{0.5, 1.0, 1.5, 2.0};
constexpr std::uint64_t kSeed = 20240611;

Outcome criterion1() {
    Stopwatch w;
    const auto r = suite_calculus(2, 8, 100, kSeed);
    const double t = w.seconds();
    return {r.pass && t < 1.0, r.line() + " " + timing(t, 1.0)};
}

Outcome criterion2() {
    Stopwatch w;
    const auto r = suite_oracle({2, 3}, {6, 12}, kAlphas, 1.0, 1.0);
    const double t = w.seconds();
    return {r.pass && t < 10.0, r.line() + " " + timing(t, 10.0)};
}

Outcome criterion3() {
    // Path 0 - 1 - 2, Omega = {1}, g = (0, *, 2), V = 0.
    const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 2, 1.0}};
    const auto path = build_graph(edges, {1.0, 1.0, 1.0}, 0, HaloPolicy::None);
    VertexField g(3);
    g[2] = 2.0;
    const auto u = solve(path, {{1}, VertexField(3), VertexField(3), g}).u;
    const double path_err = std::abs(u[1] - 1.0);

    // T_2, Dirichlet radius R = 1, V(n) = (1 + n)^(-2), gamma = 1. The truncation
    // is one sphere deeper so that the boundary sphere lies outside the halo.
    const auto t = build_model_tree({2, 2, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    const PotentialSpec spec{PotentialForm::ShiftedPower, 2.0, 1.0, 1.0};
    const auto V = make_potential(t, m, spec);
    const auto root = solve(t, {{0}, V, VertexField(t.size()), VertexField(t.size(), 1.0)}).u[0];
    const double root_err = std::abs(root - 2.0 / 3.0);
    const double oracle_err =
        std::abs(radial_dirichlet(2, 1.0, radial_potential(spec, 1), 1, 1.0).values[0] - 2.0 / 3.0);

    const bool pass = path_err == 0.0 && root_err < 1e-12 && oracle_err < 1e-12;
    return {pass, "path_u1=" + num(u[1]) + " tree_root=" + num(root) +
                      " |root-2/3|=" + num(root_err) + " oracle_err=" + num(oracle_err)};
}

Outcome criterion4() {
    const auto weak = suite_weak_max(2, 8, 1.0, 1000, kSeed);
    const auto t = build_model_tree({2, 14, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    std::string verdicts;
    bool strong_ok = true;
    for (double gamma : {1.0, 0.0})
        for (double alpha : kAlphas) {
            const auto V = make_potential(t, m, {PotentialForm::ShiftedPower, alpha, 1.0, 1.0});
            const auto tr = dirichlet_exhaustion(t, m, V, gamma, range(2, 12));
            StrongMaxVerdict v = StrongMaxVerdict::Violation;
            try {
                v = verify_strong_max_principle(t, V, tr.final_field);
            } catch (const Error&) {
            }
            strong_ok = strong_ok && v != StrongMaxVerdict::Violation;
            verdicts += (verdicts.empty() ? "" : ",") + std::string(to_string(v));
        }
    return {weak.pass && strong_ok, weak.line() + " strong_max=" + verdicts};
}

Outcome criterion5() {
    Stopwatch w;
    const auto r = suite_exhaustion(2, 14, 1.0, kAlphas, 1.0, range(2, 12), 0.5);
    const double t = w.seconds();
    return {r.pass && t < 30.0, r.line() + " " + timing(t, 30.0)};
}

Outcome criterion6() {
    const auto radii = range(2, 12);
    const PotentialSpec v2{PotentialForm::ShiftedPower, 2.0, 1.0, 1.0};
    const PotentialSpec v1{PotentialForm::ShiftedPower, 1.0, 1.0, 1.0};

    // Pins from the radial oracle, computed before the graph is built.
    auto pin = [](const PotentialSpec& spec, std::size_t j) {
        return radial_dirichlet(2, 1.0, radial_potential(spec, j), j, 1.0).values[0];
    };
    const double p2_12 = pin(v2, 12), p2_11 = pin(v2, 11);
    const double p1_12 = pin(v1, 12), p1_6 = pin(v1, 6);

    const auto t = build_model_tree({2, 14, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    const auto V2 = make_potential(t, m, v2);
    const auto V1 = make_potential(t, m, v1);
    const auto tr2 = dirichlet_exhaustion(t, m, V2, 1.0, radii);
    const auto tr1 = dirichlet_exhaustion(t, m, V1, 1.0, radii);

    const double u2_12 = tr2.step_at(12)->root_value;
    const double delta2_12 = tr2.step_at(12)->sup_delta;
    const double u1_12 = tr1.step_at(12)->root_value;
    const double u1_6 = tr1.step_at(6)->root_value;
    const double pin_gap = std::max({std::abs(u2_12 - p2_12), std::abs(tr2.step_at(11)->root_value - p2_11),
                                     std::abs(u1_12 - p1_12), std::abs(u1_6 - p1_6)});

    const auto h = make_barrier(2, 2.0, 1.0, 1.0);
    const bool constants = h.beta == 1.0 && std::abs(h.epsilon - 1.0 / 3.0) < 1e-15 &&
                           h.r_hat == 7 && h.c_hat == 2.0;
    const auto sw = sandwich_check(t, m, tr2.final_field, h, 1.0);

    const bool pins_ok = pin_gap < 1e-10;
    const bool positive = u2_12 > 0.0;
    const bool stabilized = delta2_12 < 1e-6;
    const bool decay = u1_12 < u1_6;
    const bool pass = pins_ok && positive && stabilized && decay && constants && sw.holds;
    auto flag = [](bool b) { return b ? "ok" : "FAIL"; };
    return {pass, std::string("oracle_pins=") + flag(pins_ok) + "(gap=" + num(pin_gap) + ")" +
                      " alpha2_root12=" + num(u2_12) + "[" + flag(positive) + "]" +
                      " alpha2_step_delta12=" + num(delta2_12) + "(<1e-6)[" + flag(stabilized) +
                      "]" + " alpha1_root12=" + num(u1_12) + "<root6=" + num(u1_6) + "[" +
                      flag(decay) + "]" + " barrier(beta,eps,R,C)=(" + num(h.beta) + "," +
                      num(h.epsilon) + "," + std::to_string(h.r_hat) + "," + num(h.c_hat) + ")[" +
                      flag(constants) + "]" + " sandwich_vertices=" + std::to_string(sw.vertices) +
                      " margin=" + num(sw.margin) + "[" + flag(sw.holds) + "]"};
}

Outcome criterion7() {
    const auto r = suite_barrier({2, 3}, {6, 12}, {1.5, 2.0}, 1.0);
    return {r.pass, r.line()};
}

Outcome criterion8() {
    const auto r = suite_summability({2, 3}, {0.05, 0.5, 0.8, 0.95, 0.99}, {1.0, 2.0});
    return {r.pass, r.line()};
}

Outcome criterion9() {
    const auto ctx = make_analysis_context(2, 16, 2.0);
    const SuiteResult parts[] = {suite_lemma51(ctx), suite_lemma52(ctx), suite_subsolution(ctx),
                                 suite_apriori(ctx, 200)};
    bool pass = true;
    std::string detail;
    for (const auto& p : parts) {
        pass = pass && p.pass;
        detail += (detail.empty() ? "" : " ; ") + p.line();
    }
    return {pass, detail};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion10() {
    const auto base = std::filesystem::temp_directory_path() /
                      ("graphsl_acceptance_" + std::to_string(::getpid()));
    std::filesystem::remove_all(base);
    ExperimentConfig a;
    a.out_dir = base / "run1";
    ExperimentConfig b = a;
    b.out_dir = base / "run2";

    Stopwatch w;
    std::ostringstream log1, log2;
    const int rc1 = cmd_dichotomy(a, log1);
    const double t = w.seconds();
    const int rc2 = cmd_dichotomy(b, log2);

    const std::vector<std::string> expected{
        "summary.csv", "barrier.csv", "summability.csv", "parameters.csv",
        "trace_alpha_0.5.csv", "trace_alpha_1.csv", "trace_alpha_1.5.csv", "trace_alpha_2.csv",
        "normalize_alpha_0.5.csv", "normalize_alpha_1.csv", "normalize_alpha_1.5.csv",
        "normalize_alpha_2.csv", "profile_alpha_2.csv"};
    std::size_t missing = 0, differing = 0, files = 0;
    for (const auto& name : expected)
        if (!std::filesystem::exists(a.out_dir / name)) ++missing;
    for (const auto& entry : std::filesystem::directory_iterator(a.out_dir)) {
        ++files;
        const auto other = b.out_dir / entry.path().filename();
        if (!std::filesystem::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
    }
    std::filesystem::remove_all(base);
    const bool pass = rc1 == 0 && rc2 == 0 && missing == 0 && differing == 0 && t < 60.0;
    return {pass, "exit=" + std::to_string(rc1) + "," + std::to_string(rc2) +
                      " files=" + std::to_string(files) + " missing=" + std::to_string(missing) +
                      " differing=" + std::to_string(differing) + " " + timing(t, 60.0)};
}

const char* const kTitles[] = {
    "calculus identities",
    "solver vs radial oracle",
    "hand-checkable solves",
    "maximum principles",
    "monotone exhaustion",
    "dichotomy at alpha = 1",
    "barrier supersolution",
    "summability verdicts",
    "ingredient inequalities",
    "end-to-end dichotomy command",
};

const std::function<Outcome()> kCriteria[] = {criterion1, criterion2, criterion3, criterion4,
                                              criterion5, criterion6, criterion7, criterion8,
                                              criterion9, criterion10};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            const int n = std::atoi(argv[++i]);
            if (n < 1 || n > 10) {
                std::cerr << "criterion must be 1..10\n";
                return 2;
            }
            selected.push_back(n);
        } else {
            std::cerr << "usage: acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    int failures = 0;
    for (int n : selected) {
        Outcome o;
        try {
            o = kCriteria[n - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " | " << kTitles[n - 1]
                  << " | " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
