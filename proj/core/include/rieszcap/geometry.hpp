#ifndef RIESZCAP_GEOMETRY_HPP
#define RIESZCAP_GEOMETRY_HPP

// Declarative compact-set descriptions and their discretizations into weighted
// node clouds. All discretizers are deterministic: identical inputs produce
// bit-identical clouds.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rieszcap {

struct BallSpec {
    int dim = 0;
    std::vector<double> center;
    double radius = 0.0;
};

struct SphereSpec {
    int dim = 0;  // ambient dimension; the sphere itself is (dim-1)-dimensional
    std::vector<double> center;
    double radius = 0.0;
};

struct IntervalSpec {
    double a = 0.0;
    double b = 0.0;
};

struct BoxSpec {
    int dim = 0;
    std::vector<double> lo;
    std::vector<double> hi;
};

struct PointsSpec {
    int dim = 0;
    std::vector<std::vector<double>> coords;
};

struct SetSpec;

struct UnionSpec {
    std::vector<SetSpec> parts;
};

struct SetSpec {
    std::variant<BallSpec, SphereSpec, IntervalSpec, BoxSpec, PointsSpec, UnionSpec> v;

    static SetSpec ball(int dim, std::vector<double> center, double radius);
    static SetSpec sphere(int dim, std::vector<double> center, double radius);
    static SetSpec interval(double a, double b);
    static SetSpec box(std::vector<double> lo, std::vector<double> hi);
    static SetSpec points(std::vector<std::vector<double>> coords);
    static SetSpec set_union(std::vector<SetSpec> parts);

    int ambient_dim() const;
    // Lebesgue measure in the native dimension of the discretization
    // (volume for balls/boxes, surface area for spheres, length for intervals,
    // none for point sets).
    std::optional<double> nominal_measure() const;
    std::string describe() const;
};

// Throws std::invalid_argument when an invariant fails (radius <= 0, a >= b,
// unordered box corners, mixed ambient dimensions in a union, empty set).
void validate(const SetSpec& spec);

// spec scaled about the origin by s > 0 (helper for scaling laws and tests)
SetSpec scaled(const SetSpec& spec, double s);

enum class Scheme { grid, boundary, native };

// Immutable discretization of a compact set: nodes plus positive cell
// measures in the cells' native dimension. mesh_size is the maximum
// ball-equivalent cell radius h_i = (m_i / omega_d)^(1/d). Clouds are plain
// value types; once built they are safe to share across threads.
struct NodeCloud {
    int dim = 0;         // ambient dimension
    int native_dim = 0;  // dimension of the cells (0 for point sets)
    std::vector<double> coords;  // size() * dim, row-major
    std::vector<double> cell_measures;
    double mesh_size = 0.0;

    std::size_t size() const { return cell_measures.size(); }
    std::span<const double> node(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
    double distance(std::size_t i, std::size_t j) const;
    double total_measure() const;

    // new cloud with extra nodes appended (used by set-monotonicity checks)
    NodeCloud with_extra_nodes(const std::vector<std::vector<double>>& nodes,
                               const std::vector<double>& measures) const;
};

// Discretizes `spec` into roughly N nodes (within a factor of 2).
//   grid     -- midpoints of a uniform lattice clipped to the set
//   boundary -- surface nodes (Fibonacci lattice for spheres in R^3,
//               equal-angle points on circles, Chebyshev-type points with
//               endpoints for intervals)
//   native   -- boundary for sphere specs, grid otherwise
// Unsupported (scheme, spec) pairs throw std::invalid_argument.
NodeCloud discretize(const SetSpec& spec, int target_nodes, Scheme scheme);

// Maximum pairwise Euclidean distance; 0 for a single node.
// Throws std::invalid_argument for an empty cloud.
double diameter(const NodeCloud& cloud);

// Volume of the unit ball and area of the unit sphere in R^d, d >= 0
// (omega_0 = 1 by convention). Shared with the closed-form module.
double unit_ball_volume(int d);
double unit_sphere_area(int d);  // |S^(d-1)|

}  // namespace rieszcap

#endif
