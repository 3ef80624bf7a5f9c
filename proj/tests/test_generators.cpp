#include <doctest.h>

#include <cmath>

#include "graphsl/error.hpp"
#include "graphsl/generators.hpp"

using namespace graphsl;

TEST_CASE("model tree sizes and degrees") {
    const auto t = build_model_tree({2, 3, 1.0});
    CHECK(t.size() == 15);
    CHECK(t.degree(0) == 2.0);
    CHECK(t.degree(1) == 3.0);
    CHECK(t.truncation_radius() == 3);
    for (Vertex x = 0; x < t.size(); ++x) CHECK(t.in_halo(x) == (t.hops(x) == 3));

    const auto path = build_model_tree({1, 5, 1.0});
    CHECK(path.size() == 6);
    CHECK(path.edge_count() == 5);

    CHECK(build_model_tree({2, 12, 1.0}).size() == 8191);
    CHECK(model_tree_size(3, 2) == 13);
    CHECK(sphere_offset(2, 3) == 7);
}

TEST_CASE("model tree parent/child counts") {
    const std::size_t b = 3;
    const auto t = build_model_tree({b, 5, 2.0});
    for (Vertex x = 1; x < t.size(); ++x) {
        if (t.in_halo(x)) continue;
        std::size_t up = 0, down = 0;
        for (Vertex y : t.neighbors(x)) {
            if (t.hops(y) + 1 == t.hops(x)) ++up;
            if (t.hops(y) == t.hops(x) + 1) ++down;
        }
        CHECK(up == 1);
        CHECK(down == b);
        CHECK(t.measure(x) == 2.0);
    }
    // Breadth-first ids: sphere r occupies [offset(r), offset(r+1)).
    for (Vertex x = 0; x < t.size(); ++x) {
        const auto r = t.hops(x);
        CHECK(x >= sphere_offset(b, r));
        CHECK(x < sphere_offset(b, r + 1));
    }
}

TEST_CASE("model tree errors") {
    CHECK_THROWS_AS(build_model_tree({0, 3, 1.0}), Error);
    CHECK_THROWS_AS(build_model_tree({2, 0, 1.0}), Error);
    CHECK_THROWS_AS(build_model_tree({2, 3, 0.0}), Error);
    try {
        build_model_tree({2, 30, 1.0}, 1000);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeOverflow);
    }
    try {
        build_model_tree({10, 100, 1.0});
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeOverflow);
    }
}

TEST_CASE("potentials") {
    const auto t = build_model_tree({2, 5, 1.0});
    const auto m = path_metric(t, unit_lengths(t));
    const auto v = make_potential(t, m, {PotentialForm::ShiftedPower, 2.0, 1.0, 1.0});
    CHECK(v[0] == 1.0);
    CHECK(potential_value({PotentialForm::ShiftedPower, 2.0, 1.0, 1.0}, 3.0) == 0.0625);
    const auto c = make_potential(t, m, {PotentialForm::Constant, 0.0, 5.0, 1.0});
    for (Vertex x = 0; x < t.size(); ++x) CHECK(c[x] == 5.0);
    const auto fl = make_potential(t, m, {PotentialForm::FlooredPower, 1.0, 0.5, 2.0});
    CHECK(fl[0] == 0.25);
    CHECK(fl[sphere_offset(2, 4)] == 0.125);
    CHECK_THROWS_AS(make_potential(t, m, {PotentialForm::ShiftedPower, -1.0, 1.0, 1.0}), Error);
    CHECK_THROWS_AS(make_potential(t, m, {PotentialForm::ShiftedPower, 1.0, 0.0, 1.0}), Error);
}

TEST_CASE("shifted power satisfies the decay bound with c0 = C0 2^-alpha") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        const PotentialSpec spec{PotentialForm::ShiftedPower, alpha, 1.0, 1.0};
        for (int d = 1; d < 200; ++d)
            CHECK(potential_value(spec, d) * std::pow(d, alpha) >= std::pow(2.0, -alpha) - 1e-15);
    }
}
