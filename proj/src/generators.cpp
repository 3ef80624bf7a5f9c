#include "graphsl/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "graphsl/error.hpp"

namespace graphsl {

std::size_t default_max_vertices() {
    constexpr std::size_t fallback = 10'000'000;
    const char* env = std::getenv("GSL_MAX_VERTICES");
    if (env == nullptr) return fallback;
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value == 0) return fallback;
    return value;
}

std::size_t model_tree_size(std::size_t branching, std::size_t depth) {
    constexpr auto cap = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1, sphere = 1;
    for (std::size_t r = 1; r <= depth; ++r) {
        if (sphere > cap / branching) return cap;
        sphere *= branching;
        if (total > cap - sphere) return cap;
        total += sphere;
    }
    return total;
}

std::size_t sphere_offset(std::size_t branching, std::size_t radius) {
    return radius == 0 ? 0 : model_tree_size(branching, radius - 1);
}

WeightedGraph build_model_tree(const ModelTreeSpec& spec, std::size_t max_vertices) {
    if (spec.branching < 1)
        throw Error(ErrorCode::InvalidParameter, "branching must be at least 1");
    if (spec.depth < 1) throw Error(ErrorCode::InvalidParameter, "depth must be at least 1");
    if (!(spec.measure > 0.0) || !std::isfinite(spec.measure))
        throw Error(ErrorCode::InvalidParameter, "measure constant must be positive");
    const std::size_t n = model_tree_size(spec.branching, spec.depth);
    if (n > max_vertices)
        throw Error(ErrorCode::SizeOverflow,
                    "tree would have " + (n == std::numeric_limits<std::size_t>::max()
                                              ? std::string("more than 2^64")
                                              : std::to_string(n)) +
                        " vertices, above the cap of " + std::to_string(max_vertices));

    // Breadth-first: the children of vertex v are b*v + 1 .. b*v + b.
    std::vector<WeightedEdge> edges;
    edges.reserve(n - 1);
    for (Vertex child = 1; child < n; ++child)
        edges.push_back({(child - 1) / spec.branching, child, 1.0});
    return build_graph(edges, std::vector<double>(n, spec.measure), 0, HaloPolicy::OuterSphere);
}

double potential_value(const PotentialSpec& spec, double distance) {
    switch (spec.form) {
    case PotentialForm::ShiftedPower:
        return spec.scale * std::pow(1.0 + distance, -spec.alpha);
    case PotentialForm::FlooredPower:
        return spec.scale * std::pow(std::max(distance, spec.floor), -spec.alpha);
    case PotentialForm::Constant:
        return spec.scale;
    }
    return 0.0;
}

VertexField make_potential(const WeightedGraph& graph, const PseudoMetric& metric,
                           const PotentialSpec& spec) {
    if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha))
        throw Error(ErrorCode::InvalidParameter, "potential exponent must be >= 0");
    if (!(spec.scale > 0.0) || !std::isfinite(spec.scale))
        throw Error(ErrorCode::InvalidParameter, "potential scale must be positive");
    if (spec.form == PotentialForm::FlooredPower && !(spec.floor > 0.0))
        throw Error(ErrorCode::InvalidParameter, "potential floor radius must be positive");
    VertexField v(graph.size());
    for (Vertex x = 0; x < graph.size(); ++x) v[x] = potential_value(spec, metric.from_root(x));
    return v;
}

}  // namespace graphsl
