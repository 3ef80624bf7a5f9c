#pragma once

#include <cstddef>
#include <vector>

#include "graphsl/graph.hpp"

namespace graphsl {

/// Homogeneous model tree T_b truncated at hop depth R, standard edge
/// weight (w = 1 between consecutive spheres) and counting measure mu = c.
struct ModelTreeSpec {
    std::size_t branching = 2;
    std::size_t depth = 1;
    double measure = 1.0;
};

/// Vertex cap from GSL_MAX_VERTICES, or 10^7 when unset or unparsable.
std::size_t default_max_vertices();

/// 1 + b + ... + b^R, saturating at SIZE_MAX.
std::size_t model_tree_size(std::size_t branching, std::size_t depth);

/// First vertex id of sphere S_r under breadth-first numbering.
std::size_t sphere_offset(std::size_t branching, std::size_t radius);

/**
 * Build T_b to depth R. Vertices are numbered breadth-first from the root, so
 * sphere S_r occupies the contiguous id range [sphere_offset(r), sphere_offset(r+1)).
 * The outermost sphere is the halo. Throws InvalidParameter or SizeOverflow.
 */
WeightedGraph build_model_tree(const ModelTreeSpec& spec,
                               std::size_t max_vertices = default_max_vertices());

enum class PotentialForm {
    ShiftedPower,  ///< V = scale * (1 + d)^(-alpha)
    FlooredPower,  ///< V = scale * max(d, floor)^(-alpha)
    Constant,      ///< V = scale
};

struct PotentialSpec {
    PotentialForm form = PotentialForm::ShiftedPower;
    double alpha = 0.0;
    double scale = 1.0;   ///< C0, c0 or c1 depending on the form
    double floor = 1.0;   ///< R0 for the floored form
};

/// Evaluate the potential on d(x, x0) from `metric`. Throws InvalidParameter.
VertexField make_potential(const WeightedGraph& graph, const PseudoMetric& metric,
                           const PotentialSpec& spec);

/// The same closed form at a single distance.
double potential_value(const PotentialSpec& spec, double distance);

}  // namespace graphsl
