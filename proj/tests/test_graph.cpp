#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "graphsl/error.hpp"
#include "graphsl/generators.hpp"
#include "graphsl/graph.hpp"

using namespace graphsl;

namespace {

WeightedGraph path3() {
    const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 2, 1.0}};
    return build_graph(e, {1.0, 1.0, 1.0}, 0, HaloPolicy::None);
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

VertexField indicator(std::size_t n, Vertex x) {
    VertexField f(n);
    f[x] = 1.0;
    return f;
}

}  // namespace

TEST_CASE("build_graph: degrees of the path") {
    const auto g = path3();
    CHECK(g.degree(0) == 1.0);
    CHECK(g.degree(1) == 2.0);
    CHECK(g.degree(2) == 1.0);
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.weight(1, 0) == 1.0);
    CHECK(g.weight(0, 2) == 0.0);
}

TEST_CASE("build_graph: rejects bad input") {
    CHECK(code_of([] {
              const std::vector<WeightedEdge> e{{0, 0, 1.0}};
              build_graph(e, {1.0}, 0);
          }) == ErrorCode::SelfLoop);
    CHECK(code_of([] {
              const std::vector<WeightedEdge> e{{0, 1, 1.0}, {2, 3, 1.0}};
              build_graph(e, {1, 1, 1, 1}, 0);
          }) == ErrorCode::DisconnectedGraph);
    CHECK(code_of([] {
              const std::vector<WeightedEdge> e{{0, 1, -1.0}};
              build_graph(e, {1, 1}, 0);
          }) == ErrorCode::NegativeWeight);
    CHECK(code_of([] {
              const std::vector<WeightedEdge> e{{0, 1, 1.0}};
              build_graph(e, {1, 0}, 0);
          }) == ErrorCode::NonpositiveMeasure);
    CHECK(code_of([] {
              const std::vector<WeightedEdge> e{{0, 5, 1.0}};
              build_graph(e, {1, 1}, 0);
          }) == ErrorCode::InvalidVertex);
}

TEST_CASE("build_graph: disconnected error names the vertex") {
    const std::vector<WeightedEdge> e{{0, 1, 1.0}, {2, 3, 1.0}};
    try {
        build_graph(e, {1, 1, 1, 1}, 0);
        FAIL("no throw");
    } catch (const Error& err) {
        REQUIRE(err.vertex().has_value());
        CHECK(*err.vertex() >= 2);
    }
}

TEST_CASE("laplacian and gradient_squared examples") {
    const auto t = build_model_tree({2, 4, 1.0});
    VertexField c(t.size(), 3.0);
    for (Vertex x = 0; x < t.size(); ++x)
        if (!t.in_halo(x)) CHECK(laplacian(t, c, x) == 0.0);
    const auto ind = indicator(t.size(), 0);
    CHECK(laplacian(t, ind, 0) == -2.0);
    CHECK(gradient_squared(t, ind, 0) == 2.0);

    VertexField hop(t.size());
    for (Vertex x = 0; x < t.size(); ++x) hop[x] = static_cast<double>(t.hops(x));
    CHECK(laplacian(t, hop, 1) == 1.0);

    const auto p = path3();
    const VertexField f(std::vector<double>{0, 1, 3});
    CHECK(gradient_squared(p, f, 1) == 5.0);

    const Vertex leaf = t.size() - 1;
    CHECK(code_of([&] { laplacian(t, ind, leaf); }) == ErrorCode::HaloVertex);
    CHECK(code_of([&] { gradient_squared(t, ind, leaf); }) == ErrorCode::HaloVertex);
}

TEST_CASE("calculus identities") {
    const auto t = build_model_tree({2, 8, 1.0});
    const auto ind = indicator(t.size(), 0);
    const auto rep = calculus_identities(t, ind, ind);
    CHECK(rep.residual_ibp == 0.0);
    CHECK(rep.residual_product == 0.0);

    const VertexField zero(t.size());
    const auto z = calculus_identities(t, zero, zero);
    CHECK(z.residual_ibp == 0.0);
    CHECK(z.residual_product == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> radius(1, 7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto r = radius(rng);
        VertexField f(t.size()), g(t.size());
        for (Vertex x = 0; x < t.size(); ++x) {
            if (t.hops(x) < r) f[x] = u(rng);
            g[x] = u(rng);
        }
        const auto rep2 = calculus_identities(t, f, g);
        CHECK(rep2.relative_ibp() < 1e-12);
        CHECK(rep2.residual_product < 1e-12);
    }

    VertexField dense(t.size(), 1.0);
    CHECK(code_of([&] { calculus_identities(t, dense, dense); }) == ErrorCode::UnsupportedInput);

    // A negated Laplacian must break summation by parts.
    VertexField f(t.size()), g(t.size());
    f[0] = 1.0;
    f[1] = 0.5;
    g[0] = 2.0;
    g[2] = 1.0;
    const auto bad = calculus_identities(t, f, g, IdentityOptions{-1.0});
    CHECK(bad.relative_ibp() > 1e-3);
}

TEST_CASE("path metric: hop and intrinsic lengths on T_2") {
    const auto t = build_model_tree({2, 6, 1.0});
    const auto hop = path_metric(t, unit_lengths(t));
    CHECK(hop.jump_size() == 1.0);
    CHECK(hop.intrinsic_defect(1) == doctest::Approx(3.0));
    CHECK(hop.max_intrinsic_defect() == doctest::Approx(3.0));
    CHECK_FALSE(hop.intrinsic());

    const auto intr = path_metric(t, intrinsic_lengths(t));
    CHECK(intr.intrinsic_defect(0) == doctest::Approx(2.0 / 3.0));
    CHECK(intr.intrinsic_defect(1) == doctest::Approx(1.0));
    CHECK(intr.intrinsic());
    CHECK(intr.jump_size() == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("path metric: single vertex") {
    const auto g = build_graph({}, {1.0}, 0, HaloPolicy::None);
    const auto m = path_metric(g, unit_lengths(g));
    CHECK(m.jump_size() == 0.0);
    CHECK(m.max_intrinsic_defect() == 0.0);
}

TEST_CASE("path metric: edge distance can undercut sigma") {
    // Triangle with a long edge 0-2 that is bypassed via 1.
    const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
    const auto g = build_graph(e, {1, 1, 1}, 0, HaloPolicy::None);
    const auto m = path_metric(g, edge_lengths(g, [](Vertex x, Vertex y, double) {
                                   return (x + y == 2) ? 5.0 : 1.0;
                               }));
    CHECK(m.from_root(2) == 2.0);
    CHECK(m.jump_size() == 2.0);
    CHECK(m.distance(2, 0) == 2.0);
}

TEST_CASE("path metric: invalid sigma") {
    const auto g = path3();
    CHECK(code_of([&] { path_metric(g, EdgeLengths(3, 1.0)); }) == ErrorCode::InvalidSigma);
    CHECK(code_of([&] { path_metric(g, EdgeLengths(g.slot_count(), 0.0)); }) ==
          ErrorCode::InvalidSigma);
    auto asym = unit_lengths(g);
    asym[0] = 2.0;
    CHECK(code_of([&] { path_metric(g, asym); }) == ErrorCode::InvalidSigma);
}

TEST_CASE("triangle inequality on random triples") {
    const auto t = build_model_tree({3, 5, 1.0});
    const auto m = path_metric(t, intrinsic_lengths(t));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Vertex> pick(0, t.size() - 1);
    for (int i = 0; i < 1000; ++i) {
        const Vertex x = pick(rng), y = pick(rng), z = pick(rng);
        CHECK(m.distance(x, y) <= m.distance(x, z) + m.distance(z, y) + 1e-12);
        CHECK(m.distance(x, y) == doctest::Approx(m.distance(y, x)));
    }
    CHECK(m.distance(5, 5) == 0.0);
}

TEST_CASE("ball") {
    const auto t = build_model_tree({2, 5, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    CHECK(ball(t, m, 0, 0.0).empty());
    CHECK(ball(t, m, 0, 0.5) == std::vector<Vertex>{0});
    CHECK(ball(t, m, 0, 2.5).size() == 7);
    std::vector<Vertex> prev;
    for (double r = 0.0; r <= 5.0; r += 0.25) {
        const auto b = ball(t, m, 0, r);
        CHECK(std::includes(b.begin(), b.end(), prev.begin(), prev.end()));
        prev = b;
    }
    CHECK(code_of([&] { ball(t, m, 0, 5.5); }) == ErrorCode::RadiusExceedsTruncation);
    CHECK(code_of([&] { ball(t, m, 0, -1.0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("gradient_squared vanishes only for locally constant f") {
    const auto t = build_model_tree({2, 4, 1.0});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VertexField f(t.size());
    for (Vertex x = 0; x < t.size(); ++x) f[x] = u(rng);
    for (Vertex x = 0; x < t.size(); ++x)
        if (!t.in_halo(x)) CHECK(gradient_squared(t, f, x) > 0.0);
}
