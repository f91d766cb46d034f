#ifndef RIESZCAP_ENERGY_HPP
#define RIESZCAP_ENERGY_HPP

// Discrete energy forms on weighted node clouds: the direct double sum, its
// half-gradient (the potential), the radial and spatial ball-growth
// characterizations of Riesz energy, and the cross-energy probe. All
// operations read shared immutable inputs only and are safe to call
// concurrently.

#include <cstddef>
#include <optional>
#include <vector>

#include "rieszcap/geometry.hpp"
#include "rieszcap/kernel.hpp"

namespace rieszcap {

// Probability vector aligned with a NodeCloud (the discretized measure).
class WeightVector {
  public:
    explicit WeightVector(std::vector<double> w);
    static WeightVector uniform(std::size_t n);
    static WeightVector cell_proportional(const NodeCloud& cloud);

    const std::vector<double>& values() const { return w_; }
    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }

  private:
    std::vector<double> w_;
};

// Handling of the kernel singularity at x = y.
//   exclude    -- drop diagonal terms (the discrete sum underestimates the
//                 continuum energy for p > 0; refinement compensates)
//   self_cell  -- add w_i^2 * kernel(p, sigma * h_i) per node, where h_i is
//                 the ball-equivalent cell radius. With sigma unset the value
//                 reproducing the exact mean kernel over a uniform cell is
//                 used; an explicit sigma in (0, 1] overrides it.
struct DiagonalMode {
    enum class Kind { exclude, self_cell };
    Kind kind = Kind::exclude;
    std::optional<double> sigma;  // empty = cell-exact

    static DiagonalMode exclude() { return DiagonalMode{Kind::exclude, {}}; }
    static DiagonalMode self_cell();  // cell-exact sigma
    static DiagonalMode self_cell(double sigma);
    bool is_exclude() const { return kind == Kind::exclude; }
};

// Mean of the kernel over two independent uniform points of a unit d-ball:
// E[r^-p] for p != 0 and E[log 1/r] for p = 0 (closed form via the beta
// function). Requires p < d.
double ball_pair_kernel_mean(const RieszExponent& p, int d);

// sigma such that kernel(p, sigma * h) equals the exact mean kernel over a
// uniform d-ball cell of radius h; clamped to (0, 1]. Falls back to 0.6 when
// the cell mean diverges (p >= d).
double self_cell_sigma(const RieszExponent& p, int native_dim);

// Regime default: exclude for p < 0, cell-exact self_cell for p >= 0 (the
// zero-diagonal quadratic form has a degenerate minimum for p >= 0). Point
// clouds carry no cells, so they fall back to exclude in every regime.
DiagonalMode default_diagonal(const RieszExponent& p);
DiagonalMode default_diagonal(const RieszExponent& p, int native_dim);

// Dense symmetric pairwise distance matrix, computed once per cloud and
// reused by energies, potentials and the solver. Throws std::invalid_argument
// when the cloud contains duplicate nodes.
class PairwiseDistances {
  public:
    explicit PairwiseDistances(const NodeCloud& cloud);
    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const {
        return d_[i * n_ + j];
    }
    const double* row(std::size_t i) const { return d_.data() + i * n_; }
    double min_offdiag() const { return dmin_; }
    double max_offdiag() const { return dmax_; }

  private:
    std::size_t n_;
    std::vector<double> d_;
    double dmin_, dmax_;
};

// Dense kernel matrix K_ij = kernel(p, d_ij) with the diagonal given by the
// DiagonalMode. The energy is w^T K w and the potential is K w.
class KernelMatrix {
  public:
    KernelMatrix(const RieszExponent& p, const NodeCloud& cloud,
                 const DiagonalMode& diag, const PairwiseDistances& dists);
    std::size_t size() const { return n_; }
    const double* row(std::size_t i) const { return k_.data() + i * n_; }
    double at(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }
    double quadratic_form(const std::vector<double>& w) const;
    // U = K w
    std::vector<double> apply(const std::vector<double>& w) const;

  private:
    std::size_t n_;
    std::vector<double> k_;
};

// sum_{i != j} w_i w_j kernel(p, d_ij), plus the self-cell terms when
// requested. Singleton support with p >= 0 in exclude mode yields
// +infinity (a point mass has infinite energy for those kernels).
EnergyValue discrete_energy(const RieszExponent& p, const NodeCloud& cloud,
                            const WeightVector& w, const DiagonalMode& diag,
                            const PairwiseDistances* dists = nullptr);

// U_i = sum_{j != i} w_j kernel(p, d_ij) (+ w_i * diagonal in self_cell
// mode); satisfies sum_i w_i U_i = discrete_energy.
std::vector<double> potential(const RieszExponent& p, const NodeCloud& cloud,
                              const WeightVector& w, const DiagonalMode& diag,
                              const PairwiseDistances* dists = nullptr);

// Radial characterization, p > 0:
//   V_p = p * sum_i w_i int_0^inf mu(B(x_i, r)) r^(-p-1) dr
// with the self mass excluded (open balls, strict d < r). In analytic mode
// each pair integral collapses to d_ij^(-p)/p and the result equals the
// excluded-diagonal discrete energy identically.
struct RadialQuadrature {
    enum class Mode { analytic, geometric_grid };
    Mode mode = Mode::analytic;
    int points = 400;
    double lo_factor = 0.01;   // grid starts at lo_factor * d_min
    double hi_factor = 100.0;  // grid ends at hi_factor * d_max

    static RadialQuadrature analytic() { return {}; }
    static RadialQuadrature grid(int points = 400, double lo = 0.01,
                                 double hi = 100.0) {
        return {Mode::geometric_grid, points, lo, hi};
    }
};

EnergyValue gotz_radial_energy(const RieszExponent& p, const NodeCloud& cloud,
                               const WeightVector& w,
                               const RadialQuadrature& quad,
                               const PairwiseDistances* dists = nullptr);

// Spatial characterization, p > 0, ambient dimension 1..3:
//   V_p = A(p,n) * sum_{i != j} w_i w_j int_0^inf lens_n(d_ij, r) r^(-n-p-1) dr
// where lens_n(d, r) is the volume of the intersection of two radius-r balls
// at center distance d. Evaluated by trapezoid quadrature on a geometric
// r-grid plus an analytic large-r tail.
struct SpatialQuadrature {
    int points = 800;
    double lo_factor = 0.01;
    double hi_factor = 100.0;
};

EnergyValue gotz_spatial_energy(const RieszExponent& p, const NodeCloud& cloud,
                                const WeightVector& w,
                                const SpatialQuadrature& quad,
                                const PairwiseDistances* dists = nullptr);

// Volume of the intersection of two balls of radius r at center distance d
// in R^n, n in {1,2,3}; zero for d >= 2r.
double lens_volume(int n, double d, double r);

// Excluded-diagonal energy of `w` with kernel exponent p_star (log kernel for
// p_star = 0); the finiteness probe behind the right-continuity hypothesis.
EnergyValue cross_energy(double p_star, const NodeCloud& cloud,
                         const WeightVector& w,
                         const PairwiseDistances* dists = nullptr);

}  // namespace rieszcap

#endif
