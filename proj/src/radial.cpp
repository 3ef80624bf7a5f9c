#include "graphsl/radial.hpp"

#include <algorithm>
#include <cmath>

#include "graphsl/error.hpp"
#include "graphsl/io.hpp"

namespace graphsl {

RadialProfile radial_dirichlet(std::size_t branching, double measure,
                               const std::vector<double>& potential, std::size_t radius,
                               double gamma) {
    if (branching < 1) throw Error(ErrorCode::InvalidParameter, "branching must be at least 1");
    if (radius < 1) throw Error(ErrorCode::InvalidParameter, "radius must be at least 1");
    if (!(measure > 0.0)) throw Error(ErrorCode::InvalidParameter, "measure must be positive");
    if (potential.size() < radius + 1)
        throw Error(ErrorCode::InvalidParameter, "need V(n) for n = 0..R");
    for (std::size_t n = 0; n <= radius; ++n)
        if (!(potential[n] >= 0.0) || !std::isfinite(potential[n]))
            throw Error(ErrorCode::InvalidParameter, "V(n) must be finite and nonnegative");
    if (!std::isfinite(gamma)) throw Error(ErrorCode::InvalidParameter, "gamma must be finite");

    const double b = static_cast<double>(branching);
    const double c = measure;
    const std::size_t m = radius;  // unknowns w(0..R-1)

    // Row n: lower[n] w(n-1) + diag[n] w(n) + upper[n] w(n+1) = rhs[n].
    std::vector<double> lower(m, 1.0), diag(m), upper(m, b), rhs(m, 0.0);
    lower[0] = 0.0;
    diag[0] = -(b + c * potential[0]);
    for (std::size_t n = 1; n < m; ++n) diag[n] = -(b + 1.0 + c * potential[n]);
    rhs[m - 1] = -b * gamma;
    upper[m - 1] = 0.0;

    // Forward elimination, then back substitution; no pivoting needed since
    // every row is diagonally dominant.
    std::vector<double> cp(m), dp(m);
    for (std::size_t n = 0; n < m; ++n) {
        const double denom = diag[n] - (n > 0 ? lower[n] * cp[n - 1] : 0.0);
        if (denom == 0.0 || !std::isfinite(denom))
            throw Error(ErrorCode::SingularTridiagonal, "zero pivot at level " + std::to_string(n));
        cp[n] = upper[n] / denom;
        dp[n] = (rhs[n] - (n > 0 ? lower[n] * dp[n - 1] : 0.0)) / denom;
    }
    RadialProfile p;
    p.branching = branching;
    p.measure = measure;
    p.radius = radius;
    p.gamma = gamma;
    p.potential.assign(potential.begin(), potential.begin() + static_cast<std::ptrdiff_t>(radius + 1));
    p.values.assign(radius + 1, 0.0);
    p.values[radius] = gamma;
    for (std::size_t n = m; n-- > 0;) p.values[n] = dp[n] - cp[n] * p.values[n + 1];

    const auto& w = p.values;
    for (std::size_t n = 0; n < m; ++n) {
        double r, scale;
        if (n == 0) {
            r = b * (w[1] - w[0]) - c * potential[0] * w[0];
            scale = b * (std::abs(w[1]) + std::abs(w[0])) + c * potential[0] * std::abs(w[0]);
        } else {
            r = b * w[n + 1] - (b + 1.0 + c * potential[n]) * w[n] + w[n - 1];
            scale = b * std::abs(w[n + 1]) + (b + 1.0 + c * potential[n]) * std::abs(w[n]) +
                    std::abs(w[n - 1]);
        }
        if (!std::isfinite(r))
            throw Error(ErrorCode::SingularTridiagonal, "non-finite profile value");
        if (scale > 0.0) p.max_relative_residual = std::max(p.max_relative_residual, std::abs(r) / scale);
    }
    return p;
}

std::vector<double> radial_potential(const PotentialSpec& spec, std::size_t radius) {
    std::vector<double> v(radius + 1);
    for (std::size_t n = 0; n <= radius; ++n) v[n] = potential_value(spec, static_cast<double>(n));
    return v;
}

VertexField lift_radial(const RadialProfile& profile, const WeightedGraph& graph,
                        const PseudoMetric& metric) {
    const std::size_t depth = graph.truncation_radius();
    if (depth < profile.radius)
        throw Error(ErrorCode::ShapeMismatch, "tree depth " + std::to_string(depth) +
                                                  " is below the profile radius " +
                                                  std::to_string(profile.radius));
    if (graph.size() != model_tree_size(profile.branching, depth) ||
        graph.valence(graph.root()) != profile.branching)
        throw Error(ErrorCode::ShapeMismatch, "graph is not T_" +
                                                  std::to_string(profile.branching));
    VertexField out(graph.size());
    for (Vertex x = 0; x < graph.size(); ++x) {
        const double d = metric.from_root(x);
        const double n = std::round(d);
        if (std::abs(d - n) > 1e-9)
            throw Error(ErrorCode::ShapeMismatch, "metric is not integral on the tree", x);
        const auto level = static_cast<std::size_t>(n);
        out[x] = level <= profile.radius ? profile.values[level] : profile.gamma;
    }
    return out;
}

FieldDifference compare(const WeightedGraph& graph, const VertexField& a, const VertexField& b) {
    if (a.size() != graph.size() || b.size() != graph.size())
        throw Error(ErrorCode::ShapeMismatch, "fields do not match the graph");
    FieldDifference out;
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x)) continue;
        const double diff = std::abs(a[x] - b[x]);
        if (diff > out.max_abs || std::isnan(diff)) {
            out.max_abs = std::isnan(diff) ? std::numeric_limits<double>::infinity() : diff;
            out.argmax = x;
        }
    }
    return out;
}

double sphere_spread(const WeightedGraph& graph, const VertexField& u) {
    if (u.size() != graph.size()) throw Error(ErrorCode::ShapeMismatch, "field size mismatch");
    const std::size_t levels = graph.truncation_radius() + 1;
    std::vector<double> lo(levels, std::numeric_limits<double>::infinity());
    std::vector<double> hi(levels, -std::numeric_limits<double>::infinity());
    for (Vertex x = 0; x < graph.size(); ++x) {
        if (graph.in_halo(x)) continue;
        const auto n = graph.hops(x);
        lo[n] = std::min(lo[n], u[x]);
        hi[n] = std::max(hi[n], u[x]);
    }
    double spread = 0.0;
    for (std::size_t n = 0; n < levels; ++n)
        if (hi[n] >= lo[n]) spread = std::max(spread, hi[n] - lo[n]);
    return spread;
}

std::string profile_csv(const RadialProfile& profile) {
    std::string out = "n,V_n,w_n\n";
    for (std::size_t n = 0; n <= profile.radius; ++n)
        out += std::to_string(n) + "," + format_real(profile.potential[n]) + "," +
               format_real(profile.values[n]) + "\n";
    return out;
}

}  // namespace graphsl
