#include <doctest.h>

#include <random>

#include "graphsl/dirichlet.hpp"
#include "graphsl/error.hpp"
#include "graphsl/generators.hpp"
#include "graphsl/radial.hpp"

using namespace graphsl;

namespace {

WeightedGraph path3() {
    const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 2, 1.0}};
    return build_graph(e, {1.0, 1.0, 1.0}, 0, HaloPolicy::None);
}

DirichletProblem path_problem(double v1 = 0.0) {
    DirichletProblem p{{1}, VertexField(3), VertexField(3), VertexField(3)};
    p.potential[1] = v1;
    p.g[2] = 2.0;
    return p;
}

std::vector<Vertex> hop_ball(const WeightedGraph& g, std::size_t r) {
    std::vector<Vertex> out;
    for (Vertex x = 0; x < g.size(); ++x)
        if (g.hops(x) < r) out.push_back(x);
    return out;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::InvalidParameter;
}

}  // namespace

TEST_CASE("assemble the path system by hand") {
    const auto g = path3();
    const auto sys = assemble(g, path_problem());
    REQUIRE(sys.dimension() == 1);
    CHECK(sys.matrix.coeff(0, 0) == -2.0);
    CHECK(sys.rhs[0] == -2.0);
    CHECK(assemble(g, path_problem(3.0)).matrix.coeff(0, 0) == -5.0);
}

TEST_CASE("assembled rows are weakly diagonally dominant") {
    const auto t = build_model_tree({3, 5, 1.5});
    const auto m = path_metric(t, unit_lengths(t));
    const DirichletProblem p{hop_ball(t, 3), make_potential(t, m, {PotentialForm::ShiftedPower, 1.0, 1.0, 1.0}),
                             VertexField(t.size()), VertexField(t.size(), 1.0)};
    const auto sys = assemble(t, p);
    for (Eigen::Index i = 0; i < sys.matrix.rows(); ++i) {
        double diag = 0.0, off = 0.0;
        for (decltype(sys.matrix)::InnerIterator it(sys.matrix, i); it; ++it)
            (it.col() == i ? diag : off) += std::abs(it.value());
        CHECK(diag > off);
    }
}

TEST_CASE("solve the path problem") {
    const auto g = path3();
    const auto sol = solve(g, path_problem());
    CHECK(sol.u[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sol.u[0] == 0.0);
    CHECK(sol.u[2] == 2.0);
}

TEST_CASE("empty interior returns g verbatim") {
    const auto g = path3();
    auto p = path_problem();
    p.interior.clear();
    p.g[1] = 7.25;
    CHECK(solve(g, p).u == p.g);
    CHECK(assemble(g, p).dimension() == 0);
}

TEST_CASE("constants are reproduced when V = 0") {
    const auto t = build_model_tree({2, 7, 1.0});
    const DirichletProblem p{hop_ball(t, 5), VertexField(t.size()), VertexField(t.size()),
                             VertexField(t.size(), 4.5)};
    const auto sol = solve(t, p);
    for (Vertex x = 0; x < t.size(); ++x) CHECK(sol.u[x] == doctest::Approx(4.5).epsilon(1e-13));
}

TEST_CASE("invalid problems") {
    const auto t = build_model_tree({2, 4, 1.0});
    const VertexField zero(t.size());
    std::vector<Vertex> with_halo = hop_ball(t, 2);
    with_halo.push_back(t.size() - 1);
    CHECK(code_of([&] { assemble(t, {with_halo, zero, zero, zero}); }) ==
          ErrorCode::HaloContamination);
    CHECK(code_of([&] { solve(t, {hop_ball(t, 4), zero, zero, zero}); }) ==
          ErrorCode::InvalidProblem);
    VertexField neg(t.size(), -1.0);
    CHECK(code_of([&] { solve(t, {hop_ball(t, 2), neg, zero, zero}); }) ==
          ErrorCode::InvalidProblem);
}

TEST_CASE("direct and iterative paths agree") {
    const auto t = build_model_tree({2, 10, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DirichletProblem p{hop_ball(t, 9), make_potential(t, m, {PotentialForm::ShiftedPower, 1.5, 1.0, 1.0}),
                       VertexField(t.size()), VertexField(t.size())};
    for (Vertex x = 0; x < t.size(); ++x) {
        p.f[x] = -u(rng);
        p.g[x] = u(rng);
    }
    const auto a = solve(t, p, {SolverKind::Direct});
    const auto b = solve(t, p, {SolverKind::Iterative});
    CHECK(a.used == SolverKind::Direct);
    CHECK(b.used == SolverKind::Iterative);
    CHECK(b.iterations > 0);
    CHECK(compare(t, a.u, b.u).max_abs < 1e-10);
    CHECK(a.max_residual < 1e-10);
    CHECK(b.max_residual < 1e-10 * (1.0 + b.u.max_abs()));
}

TEST_CASE("comparison principle") {
    const auto t = build_model_tree({3, 6, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    const auto V = make_potential(t, m, {PotentialForm::ShiftedPower, 1.0, 1.0, 1.0});
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        DirichletProblem p1{hop_ball(t, 4), V, VertexField(t.size()), VertexField(t.size())};
        auto p2 = p1;
        for (Vertex x = 0; x < t.size(); ++x) {
            p2.g[x] = u(rng);
            p1.g[x] = p2.g[x] + u(rng);
            p2.f[x] = -u(rng);
            p1.f[x] = p2.f[x] - u(rng);
        }
        const auto u1 = solve(t, p1).u;
        const auto u2 = solve(t, p2).u;
        for (Vertex x = 0; x < t.size(); ++x) CHECK(u1[x] >= u2[x] - 1e-12);
    }
}

TEST_CASE("weak maximum principle") {
    const auto t = build_model_tree({2, 8, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    const auto V = make_potential(t, m, {PotentialForm::ShiftedPower, 1.0, 1.0, 1.0});
    const auto rep = verify_weak_max_principle(t, V, 200, 42);
    CHECK(rep.trials == 200);
    CHECK(rep.passed == 200);
    CHECK(rep.violations.empty());
    CHECK(rep.min_value >= -1e-12);

    const VertexField zero(t.size());
    const auto z = run_weak_max_trial(t, V, {hop_ball(t, 3), zero, zero});
    CHECK(z.status == TrialStatus::Passed);
    CHECK(z.min_interior == 0.0);

    VertexField f(t.size());
    f[0] = 1.0;
    const auto skipped = run_weak_max_trial(t, V, {hop_ball(t, 3), f, zero});
    CHECK(skipped.status == TrialStatus::Skipped);
}

TEST_CASE("strong maximum principle") {
    const auto t = build_model_tree({2, 6, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    const auto V = make_potential(t, m, {PotentialForm::ShiftedPower, 2.0, 1.0, 1.0});
    CHECK(verify_strong_max_principle(t, V, VertexField(t.size())) ==
          StrongMaxVerdict::IdenticallyZero);
    CHECK(verify_strong_max_principle(t, VertexField(t.size()), VertexField(t.size(), 1.0)) ==
          StrongMaxVerdict::StrictlyPositive);

    const auto sol = solve(t, {hop_ball(t, 5), V, VertexField(t.size()), VertexField(t.size(), 1.0)});
    CHECK(verify_strong_max_principle(t, V, sol.u) == StrongMaxVerdict::StrictlyPositive);

    // u = indicator of a leaf-side vertex is not a supersolution there.
    VertexField bump(t.size());
    bump[1] = 1.0;
    CHECK(code_of([&] { verify_strong_max_principle(t, V, bump); }) ==
          ErrorCode::NotASupersolution);
    VertexField neg(t.size(), -1.0);
    CHECK(code_of([&] { verify_strong_max_principle(t, VertexField(t.size()), neg); }) ==
          ErrorCode::NotASupersolution);
}
