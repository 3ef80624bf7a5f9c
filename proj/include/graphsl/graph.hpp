#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

namespace graphsl {

using Vertex = std::size_t;

/// Undirected weighted edge as read from input; stored symmetrically.
struct WeightedEdge {
    Vertex x;
    Vertex y;
    double weight;
};

/// Which vertices of a finite truncation have an incomplete neighborhood.
enum class HaloPolicy {
    OuterSphere,  ///< vertices at the maximal hop distance from the root
    None,         ///< the graph is complete as given
};

/**
 * Finite truncation of a connected, locally finite weighted graph (G, w, mu).
 *
 * Adjacency is held in CSR form. Every undirected edge occupies two slots,
 * one in each endpoint's list; per-slot quantities (edge lengths, distances)
 * are indexed by slot. Immutable after construction.
 */
class WeightedGraph {
  public:
    WeightedGraph() = default;

    std::size_t size() const noexcept { return measure_.size(); }
    Vertex root() const noexcept { return root_; }

    std::span<const Vertex> neighbors(Vertex x) const {
        return {neighbors_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
    }
    std::span<const double> weights(Vertex x) const {
        return {weights_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
    }
    /// First CSR slot of x; slots of x are [slot_begin(x), slot_begin(x+1)).
    std::size_t slot_begin(Vertex x) const { return offsets_[x]; }
    std::size_t slot_count() const noexcept { return neighbors_.size(); }
    /// Slot of the reverse orientation (y, x) for the slot holding (x, y).
    std::size_t reverse_slot(std::size_t slot) const { return reverse_[slot]; }
    Vertex slot_target(std::size_t slot) const { return neighbors_[slot]; }
    double slot_weight(std::size_t slot) const { return weights_[slot]; }

    double measure(Vertex x) const { return measure_[x]; }
    std::span<const double> measures() const noexcept { return measure_; }

    /// deg(x) = sum_y w(x, y).
    double degree(Vertex x) const { return degree_[x]; }
    /// Deg(x) = deg(x) / mu(x).
    double weighted_degree(Vertex x) const { return degree_[x] / measure_[x]; }
    /// Number of incident edges, m(x).
    std::size_t valence(Vertex x) const { return offsets_[x + 1] - offsets_[x]; }

    /// w(x, y), zero when x and y are not adjacent.
    double weight(Vertex x, Vertex y) const;

    /// Hop distance from the root.
    std::size_t hops(Vertex x) const { return hops_[x]; }
    /// Largest hop distance present in the truncation.
    std::size_t truncation_radius() const noexcept { return truncation_radius_; }
    bool in_halo(Vertex x) const { return halo_[x] != 0; }
    HaloPolicy halo_policy() const noexcept { return halo_policy_; }

    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
    /// Undirected edge list with x < y, sorted.
    std::vector<WeightedEdge> edges() const;

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

    friend WeightedGraph build_graph(std::span<const WeightedEdge> edges,
                                     std::vector<double> measure, Vertex root,
                                     HaloPolicy halo);

  private:
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> neighbors_;
    std::vector<double> weights_;
    std::vector<std::size_t> reverse_;
    std::vector<double> measure_;
    std::vector<double> degree_;
    std::vector<std::size_t> hops_;
    std::vector<unsigned char> halo_;
    Vertex root_ = 0;
    std::size_t truncation_radius_ = 0;
    HaloPolicy halo_policy_ = HaloPolicy::OuterSphere;
};

/**
 * Build a weighted graph from an undirected edge list.
 *
 * Duplicate entries of the same pair must agree on the weight. Zero-weight
 * entries are dropped (w = 0 means "not adjacent"). Throws SelfLoop,
 * NegativeWeight, NonpositiveMeasure, InvalidVertex or DisconnectedGraph.
 */
WeightedGraph build_graph(std::span<const WeightedEdge> edges,
                          std::vector<double> measure, Vertex root,
                          HaloPolicy halo = HaloPolicy::OuterSphere);

/// Real-valued function on the vertices of a graph.
class VertexField {
  public:
    VertexField() = default;
    explicit VertexField(std::size_t n, double value = 0.0) : values_(n, value) {}
    explicit VertexField(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](Vertex x) const { return values_[x]; }
    double& operator[](Vertex x) { return values_[x]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    /// Vertices where the value is nonzero, ascending.
    std::vector<Vertex> support() const;
    /// True when every vertex of the support lies outside the halo.
    bool supported_away_from_halo(const WeightedGraph& graph) const;
    double max_abs() const;

    friend bool operator==(const VertexField&, const VertexField&) = default;

  private:
    std::vector<double> values_;
};

/// Delta f(x) = (1/mu(x)) sum_y w(x,y) (f(y) - f(x)). Throws HaloVertex.
double laplacian(const WeightedGraph& graph, const VertexField& f, Vertex x);

/// |grad f|^2(x) = (1/mu(x)) sum_y w(x,y) (f(y) - f(x))^2. Throws HaloVertex.
double gradient_squared(const WeightedGraph& graph, const VertexField& f, Vertex x);

/// (Delta - V) u at x, with no halo check.
double schrodinger_residual(const WeightedGraph& graph, const VertexField& potential,
                            const VertexField& u, Vertex x);

struct IdentityReport {
    double residual_ibp = 0.0;      ///< |sum Delta f g mu + 1/2 sum grad f grad g w|
    double ibp_scale = 0.0;         ///< sum of absolute values of all terms
    double residual_product = 0.0;  ///< max per-edge product-rule residual

    double relative_ibp() const { return residual_ibp / (ibp_scale > 1.0 ? ibp_scale : 1.0); }
};

struct IdentityOptions {
    /// Multiplies the Laplacian used on the left of the summation-by-parts
    /// identity. Anything but +1 is a fault-injection hook for mutation checks.
    double laplacian_sign = 1.0;
};

/// Evaluate the product rule and the summation-by-parts identity for f, g.
/// One of them must be supported away from the halo (else UnsupportedInput).
IdentityReport calculus_identities(const WeightedGraph& graph, const VertexField& f,
                                   const VertexField& g, const IdentityOptions& options = {});

/// Edge length per CSR slot.
using EdgeLengths = std::vector<double>;

/// sigma = 1 on every edge (the hop metric).
EdgeLengths unit_lengths(const WeightedGraph& graph);
/// sigma(x,y) = min(Deg(x)^(-1/2), Deg(y)^(-1/2)), which makes the path metric intrinsic.
EdgeLengths intrinsic_lengths(const WeightedGraph& graph);
/// Evaluate sigma(x, y, w(x, y)) on every slot.
EdgeLengths edge_lengths(const WeightedGraph& graph,
                         const std::function<double(Vertex, Vertex, double)>& sigma);

/**
 * Path pseudo metric induced by an edge-length function.
 *
 * Distances from the root are computed eagerly; distances from other sources
 * are computed on first request and cached (thread-safe).
 */
class PseudoMetric {
  public:
    PseudoMetric() = default;

    double from_root(Vertex x) const { return root_distance_[x]; }
    std::span<const double> distances_from_root() const noexcept { return root_distance_; }
    /// All distances from `source`.
    std::span<const double> distances_from(Vertex source) const;
    double distance(Vertex x, Vertex y) const { return distances_from(x)[y]; }

    double edge_length(std::size_t slot) const;
    /// d(x, y) for the slot holding (x, y); never larger than the edge length.
    double edge_distance(std::size_t slot) const { return edge_distance_[slot]; }

    /// s = sup of d(x, y) over edges; 0 for an edgeless graph.
    double jump_size() const noexcept { return jump_size_; }
    /// (1/mu(x)) sum_y w(x,y) d(x,y)^2; NaN at halo vertices.
    double intrinsic_defect(Vertex x) const { return defect_[x]; }
    /// Maximum defect over non-halo vertices (0 when there are none).
    double max_intrinsic_defect() const noexcept { return max_defect_; }
    bool intrinsic() const noexcept { return max_defect_ <= 1.0 + 1e-12; }

    friend PseudoMetric path_metric(const WeightedGraph& graph, const EdgeLengths& sigma);

  private:
    struct Data;
    std::shared_ptr<Data> data_;
    std::vector<double> root_distance_;
    std::vector<double> edge_distance_;
    std::vector<double> defect_;
    double jump_size_ = 0.0;
    double max_defect_ = 0.0;
};

/// Throws InvalidSigma on a size mismatch, a nonpositive or non-finite length,
/// or an asymmetric pair.
PseudoMetric path_metric(const WeightedGraph& graph, const EdgeLengths& sigma);

/// B_r(x0) = {x : d(x, x0) < r}, ascending. Throws RadiusExceedsTruncation
/// when the ball reaches the halo.
std::vector<Vertex> ball(const WeightedGraph& graph, const PseudoMetric& metric,
                         Vertex center, double radius);

}  // namespace graphsl
