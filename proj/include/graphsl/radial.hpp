#pragma once

#include <string>
#include <vector>

#include "graphsl/generators.hpp"
#include "graphsl/graph.hpp"

namespace graphsl {

/// Radial solution of the Dirichlet problem on a homogeneous model tree:
/// values[n] is the common value on the hop sphere S_n, n = 0..radius.
struct RadialProfile {
    std::size_t branching = 0;
    double measure = 1.0;
    std::size_t radius = 0;
    double gamma = 0.0;
    std::vector<double> potential;  ///< V(n)
    std::vector<double> values;     ///< w(n), values[radius] == gamma
    double max_relative_residual = 0.0;
};

/**
 * Solve  b(w1 - w0) - c V0 w0 = 0,
 *        b w(n+1) - (b + 1 + c V(n)) w(n) + w(n-1) = 0   for 1 <= n < R,
 *        w(R) = gamma
 * by the Thomas algorithm. `potential` holds V(0..R) (extra entries ignored).
 * Throws InvalidParameter or SingularTridiagonal.
 */
RadialProfile radial_dirichlet(std::size_t branching, double measure,
                               const std::vector<double>& potential, std::size_t radius,
                               double gamma);

/// V(n) = potential_value(spec, n) for n = 0..radius.
std::vector<double> radial_potential(const PotentialSpec& spec, std::size_t radius);

/// Field x -> w(d(x, x0)), and gamma beyond the profile radius. Throws
/// ShapeMismatch unless the graph is a T_b with the profile's branching and
/// depth >= radius, and the metric is integral on it.
VertexField lift_radial(const RadialProfile& profile, const WeightedGraph& graph,
                        const PseudoMetric& metric);

struct FieldDifference {
    double max_abs = 0.0;
    Vertex argmax = 0;
};

/// Exact max |a - b| over non-halo vertices. Throws ShapeMismatch.
FieldDifference compare(const WeightedGraph& graph, const VertexField& a, const VertexField& b);

/// Largest in-sphere spread max - min over non-halo hop spheres.
double sphere_spread(const WeightedGraph& graph, const VertexField& u);

/// CSV with header `n,V_n,w_n`.
std::string profile_csv(const RadialProfile& profile);

}  // namespace graphsl
