#include "graphsl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <string>
#include <tuple>

#include "graphsl/error.hpp"

namespace graphsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_non_halo(const WeightedGraph& graph, Vertex x) {
    if (x >= graph.size())
        throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(x) + " out of range", x);
    if (graph.in_halo(x))
        throw Error(ErrorCode::HaloVertex,
                    "vertex " + std::to_string(x) + " lies in the truncation halo", x);
}

// Single-source shortest paths with nonnegative lengths. Stops expanding once
// the frontier reaches `cutoff`.
std::vector<double> dijkstra(std::span<const std::size_t> offsets,
                             std::span<const Vertex> neighbors,
                             std::span<const double> sigma, Vertex source,
                             double cutoff = kInf) {
    const std::size_t n = offsets.size() - 1;
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (d > dist[x]) continue;
        if (d >= cutoff) break;
        for (std::size_t k = offsets[x]; k < offsets[x + 1]; ++k) {
            const double nd = d + sigma[k];
            const Vertex y = neighbors[k];
            if (nd < dist[y]) {
                dist[y] = nd;
                heap.emplace(nd, y);
            }
        }
    }
    return dist;
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightedGraph

double WeightedGraph::weight(Vertex x, Vertex y) const {
    const auto nbrs = neighbors(x);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), y);
    if (it == nbrs.end() || *it != y) return 0.0;
    return weights_[offsets_[x] + static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<WeightedEdge> WeightedGraph::edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count());
    for (Vertex x = 0; x < size(); ++x) {
        for (std::size_t k = offsets_[x]; k < offsets_[x + 1]; ++k) {
            if (x < neighbors_[k]) out.push_back({x, neighbors_[k], weights_[k]});
        }
    }
    return out;
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.root_ == b.root_ && a.halo_policy_ == b.halo_policy_ &&
           a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ &&
           a.weights_ == b.weights_ && a.measure_ == b.measure_;
}

WeightedGraph build_graph(std::span<const WeightedEdge> edges, std::vector<double> measure,
                          Vertex root, HaloPolicy halo) {
    const std::size_t n = measure.size();
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "graph needs at least one vertex");
    if (root >= n)
        throw Error(ErrorCode::InvalidVertex, "root " + std::to_string(root) + " out of range", root);
    for (Vertex x = 0; x < n; ++x) {
        if (!(measure[x] > 0.0) || !std::isfinite(measure[x]))
            throw Error(ErrorCode::NonpositiveMeasure,
                        "measure at vertex " + std::to_string(x) + " must be positive and finite", x);
    }

    std::vector<std::tuple<Vertex, Vertex, double>> pairs;
    pairs.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.x >= n || e.y >= n)
            throw Error(ErrorCode::InvalidVertex,
                        "edge (" + std::to_string(e.x) + ", " + std::to_string(e.y) +
                            ") references a missing vertex");
        if (e.x == e.y)
            throw Error(ErrorCode::SelfLoop, "loop at vertex " + std::to_string(e.x), e.x);
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw Error(ErrorCode::NegativeWeight,
                        "edge (" + std::to_string(e.x) + ", " + std::to_string(e.y) +
                            ") has a negative or non-finite weight");
        if (e.weight == 0.0) continue;
        pairs.emplace_back(std::min(e.x, e.y), std::max(e.x, e.y), e.weight);
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::tuple<Vertex, Vertex, double>> unique;
    unique.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (!unique.empty() && std::get<0>(unique.back()) == std::get<0>(p) &&
            std::get<1>(unique.back()) == std::get<1>(p)) {
            if (std::get<2>(unique.back()) != std::get<2>(p))
                throw Error(ErrorCode::InvalidParameter,
                            "conflicting weights for edge (" + std::to_string(std::get<0>(p)) +
                                ", " + std::to_string(std::get<1>(p)) + ")");
            continue;
        }
        unique.push_back(p);
    }

    WeightedGraph g;
    g.root_ = root;
    g.halo_policy_ = halo;
    g.offsets_.assign(n + 1, 0);
    for (const auto& [x, y, w] : unique) {
        ++g.offsets_[x + 1];
        ++g.offsets_[y + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.neighbors_.resize(g.offsets_[n]);
    g.weights_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Pairs are sorted by (x, y): lower neighbors first, then higher ones.
    for (const auto& [x, y, w] : unique) {
        g.neighbors_[fill[y]] = x;
        g.weights_[fill[y]++] = w;
    }
    for (const auto& [x, y, w] : unique) {
        g.neighbors_[fill[x]] = y;
        g.weights_[fill[x]++] = w;
    }
    for (Vertex x = 0; x < n; ++x) {
        const auto b = g.offsets_[x], e = g.offsets_[x + 1];
        std::vector<std::pair<Vertex, double>> row;
        row.reserve(e - b);
        for (auto k = b; k < e; ++k) row.emplace_back(g.neighbors_[k], g.weights_[k]);
        if (!std::is_sorted(row.begin(), row.end())) {
            std::sort(row.begin(), row.end());
            for (auto k = b; k < e; ++k) std::tie(g.neighbors_[k], g.weights_[k]) = row[k - b];
        }
    }
    g.reverse_.resize(g.neighbors_.size());
    for (Vertex x = 0; x < n; ++x) {
        for (auto k = g.offsets_[x]; k < g.offsets_[x + 1]; ++k) {
            const Vertex y = g.neighbors_[k];
            const auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[y]);
            const auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[y + 1]);
            g.reverse_[k] = static_cast<std::size_t>(std::lower_bound(first, last, x) -
                                                     g.neighbors_.begin());
        }
    }

    g.measure_ = std::move(measure);
    g.degree_.assign(n, 0.0);
    for (Vertex x = 0; x < n; ++x) {
        for (auto k = g.offsets_[x]; k < g.offsets_[x + 1]; ++k) g.degree_[x] += g.weights_[k];
    }

    constexpr auto unreached = std::numeric_limits<std::size_t>::max();
    g.hops_.assign(n, unreached);
    std::queue<Vertex> queue;
    g.hops_[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
        const Vertex x = queue.front();
        queue.pop();
        for (auto k = g.offsets_[x]; k < g.offsets_[x + 1]; ++k) {
            const Vertex y = g.neighbors_[k];
            if (g.hops_[y] == unreached) {
                g.hops_[y] = g.hops_[x] + 1;
                queue.push(y);
            }
        }
    }
    for (Vertex x = 0; x < n; ++x) {
        if (g.hops_[x] == unreached)
            throw Error(ErrorCode::DisconnectedGraph,
                        "vertex " + std::to_string(x) + " is unreachable from the root", x);
    }
    g.truncation_radius_ = *std::max_element(g.hops_.begin(), g.hops_.end());
    g.halo_.assign(n, 0);
    if (halo == HaloPolicy::OuterSphere && g.truncation_radius_ > 0) {
        for (Vertex x = 0; x < n; ++x) g.halo_[x] = g.hops_[x] == g.truncation_radius_;
    }
    return g;
}

// ---------------------------------------------------------------------------
// VertexField

std::vector<Vertex> VertexField::support() const {
    std::vector<Vertex> out;
    for (Vertex x = 0; x < values_.size(); ++x) {
        if (values_[x] != 0.0) out.push_back(x);
    }
    return out;
}

bool VertexField::supported_away_from_halo(const WeightedGraph& graph) const {
    for (Vertex x = 0; x < values_.size(); ++x) {
        if (values_[x] != 0.0 && graph.in_halo(x)) return false;
    }
    return true;
}

double VertexField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------------------
// Operators

namespace {

double raw_laplacian(const WeightedGraph& graph, std::span<const double> f, Vertex x) {
    const auto nbrs = graph.neighbors(x);
    const auto w = graph.weights(x);
    double sum = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) sum += w[k] * (f[nbrs[k]] - f[x]);
    return sum / graph.measure(x);
}

}  // namespace

double laplacian(const WeightedGraph& graph, const VertexField& f, Vertex x) {
    require_non_halo(graph, x);
    return raw_laplacian(graph, f.values(), x);
}

double gradient_squared(const WeightedGraph& graph, const VertexField& f, Vertex x) {
    require_non_halo(graph, x);
    const auto nbrs = graph.neighbors(x);
    const auto w = graph.weights(x);
    double sum = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const double diff = f[nbrs[k]] - f[x];
        sum += w[k] * diff * diff;
    }
    return sum / graph.measure(x);
}

double schrodinger_residual(const WeightedGraph& graph, const VertexField& potential,
                            const VertexField& u, Vertex x) {
    return raw_laplacian(graph, u.values(), x) - potential[x] * u[x];
}

IdentityReport calculus_identities(const WeightedGraph& graph, const VertexField& f,
                                   const VertexField& g, const IdentityOptions& options) {
    if (f.size() != graph.size() || g.size() != graph.size())
        throw Error(ErrorCode::UnsupportedInput, "field length differs from vertex count");
    if (!f.supported_away_from_halo(graph) && !g.supported_away_from_halo(graph))
        throw Error(ErrorCode::UnsupportedInput,
                    "neither field is finitely supported away from the halo");

    // With one factor vanishing on the halo, the truncated sums coincide with
    // the sums over the infinite graph, so every vertex may be visited.
    IdentityReport report;
    double lhs = 0.0, rhs = 0.0;
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (g[x] != 0.0) {
            const double term = options.laplacian_sign * raw_laplacian(graph, f.values(), x) *
                                g[x] * graph.measure(x);
            lhs += term;
            report.ibp_scale += std::abs(term);
        }
        const auto nbrs = graph.neighbors(x);
        const auto w = graph.weights(x);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            const Vertex y = nbrs[k];
            const double df = f[y] - f[x];
            const double dg = g[y] - g[x];
            const double term = 0.5 * df * dg * w[k];
            rhs -= term;
            report.ibp_scale += std::abs(term);
            const double product = (f[y] * g[y] - f[x] * g[x]) - f[x] * dg - df * g[y];
            report.residual_product = std::max(report.residual_product, std::abs(product));
        }
    }
    report.residual_ibp = std::abs(lhs - rhs);
    return report;
}

// ---------------------------------------------------------------------------
// Metrics

EdgeLengths unit_lengths(const WeightedGraph& graph) {
    return EdgeLengths(graph.slot_count(), 1.0);
}

EdgeLengths intrinsic_lengths(const WeightedGraph& graph) {
    return edge_lengths(graph, [&graph](Vertex x, Vertex y, double) {
        return std::min(1.0 / std::sqrt(graph.weighted_degree(x)),
                        1.0 / std::sqrt(graph.weighted_degree(y)));
    });
}

EdgeLengths edge_lengths(const WeightedGraph& graph,
                         const std::function<double(Vertex, Vertex, double)>& sigma) {
    EdgeLengths out(graph.slot_count());
    for (Vertex x = 0; x < graph.size(); ++x) {
        for (auto k = graph.slot_begin(x); k < graph.slot_begin(x + 1); ++k)
            out[k] = sigma(x, graph.slot_target(k), graph.slot_weight(k));
    }
    return out;
}

struct PseudoMetric::Data {
    std::vector<std::size_t> offsets;
    std::vector<Vertex> neighbors;
    std::vector<double> sigma;
    std::mutex mutex;
    std::map<Vertex, std::vector<double>> cache;
};

double PseudoMetric::edge_length(std::size_t slot) const { return data_->sigma[slot]; }

std::span<const double> PseudoMetric::distances_from(Vertex source) const {
    if (source >= root_distance_.size())
        throw Error(ErrorCode::InvalidVertex, "vertex out of range", source);
    std::lock_guard lock(data_->mutex);
    auto it = data_->cache.find(source);
    if (it == data_->cache.end()) {
        it = data_->cache
                 .emplace(source, dijkstra(data_->offsets, data_->neighbors, data_->sigma, source))
                 .first;
    }
    // std::map nodes are stable, so the span outlives the lock.
    return it->second;
}

PseudoMetric path_metric(const WeightedGraph& graph, const EdgeLengths& sigma) {
    if (sigma.size() != graph.slot_count())
        throw Error(ErrorCode::InvalidSigma, "edge-length vector does not match the edge slots");
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (!(sigma[k] > 0.0) || !std::isfinite(sigma[k]))
            throw Error(ErrorCode::InvalidSigma, "edge length must be positive and finite");
        if (sigma[k] != sigma[graph.reverse_slot(k)])
            throw Error(ErrorCode::InvalidSigma, "edge length is not symmetric");
    }

    PseudoMetric m;
    m.data_ = std::make_shared<PseudoMetric::Data>();
    auto& data = *m.data_;
    data.offsets.resize(graph.size() + 1);
    for (Vertex x = 0; x <= graph.size(); ++x) data.offsets[x] = graph.slot_begin(x);
    data.neighbors.resize(graph.slot_count());
    for (std::size_t k = 0; k < graph.slot_count(); ++k) data.neighbors[k] = graph.slot_target(k);
    data.sigma = sigma;

    m.root_distance_ = dijkstra(data.offsets, data.neighbors, data.sigma, graph.root());

    // d(x, y) on an edge equals sigma unless a detour is shorter. A detour
    // through another neighbor z is at least sigma(x, z), so the search is
    // only needed when some other incident edge is shorter.
    m.edge_distance_.assign(sigma.size(), 0.0);
    for (Vertex x = 0; x < graph.size(); ++x) {
        const auto b = graph.slot_begin(x), e = graph.slot_begin(x + 1);
        for (auto k = b; k < e; ++k) {
            const Vertex y = graph.slot_target(k);
            if (y < x) continue;
            double shortest_other = kInf;
            for (auto j = b; j < e; ++j)
                if (j != k) shortest_other = std::min(shortest_other, sigma[j]);
            double d = sigma[k];
            if (shortest_other < sigma[k]) {
                const auto local = dijkstra(data.offsets, data.neighbors, data.sigma, x, sigma[k]);
                d = std::min(d, local[y]);
            }
            m.edge_distance_[k] = d;
            m.edge_distance_[graph.reverse_slot(k)] = d;
        }
    }
    for (double d : m.edge_distance_) m.jump_size_ = std::max(m.jump_size_, d);

    m.defect_.assign(graph.size(), std::numeric_limits<double>::quiet_NaN());
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x)) continue;
        double sum = 0.0;
        for (auto k = graph.slot_begin(x); k < graph.slot_begin(x + 1); ++k)
            sum += graph.slot_weight(k) * m.edge_distance_[k] * m.edge_distance_[k];
        m.defect_[x] = sum / graph.measure(x);
        m.max_defect_ = std::max(m.max_defect_, m.defect_[x]);
    }
    return m;
}

std::vector<Vertex> ball(const WeightedGraph& graph, const PseudoMetric& metric, Vertex center,
                         double radius) {
    if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidParameter, "ball radius must be >= 0");
    const auto dist = center == graph.root() ? metric.distances_from_root()
                                             : metric.distances_from(center);
    std::vector<Vertex> out;
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (dist[x] < radius) {
            if (graph.in_halo(x))
                throw Error(ErrorCode::RadiusExceedsTruncation,
                            "ball of radius " + std::to_string(radius) +
                                " reaches the truncation halo",
                            x);
            out.push_back(x);
        }
    }
    return out;
}

}  // namespace graphsl
