#ifndef RIESZCAP_CLOSEDFORM_HPP
#define RIESZCAP_CLOSEDFORM_HPP

// Closed-form capacities, equilibrium densities and constants for balls and
// intervals. Gamma-ratio powers are evaluated in log space so values stay
// stable near the regime boundaries.

#include <optional>
#include <span>
#include <stdexcept>

#include "rieszcap/geometry.hpp"

namespace rieszcap {

// Regimes of the unit-ball capacity formula for p < n, n >= 2. For n = 1 the
// partition collapses to {p <= -1, p = 0, -1 < p < 1} and is handled by
// interval_capacity.
enum class BallCapacityRegime {
    p_le_minus2,  // p <= -2
    p_zero,       // p = 0
    mid,          // -2 < p <= n-2, p != 0
    high,         // n-2 < p < n
};

BallCapacityRegime classify_ball_regime(int n, double p);

// Riesz p-capacity of the closed unit ball in R^n, n >= 2, p < n.
double ball_capacity(int n, double p);

// Riesz p-capacity of [-1, 1], p < 1.
double interval_capacity(double p);

// Equilibrium-measure description for the unit ball: uniform surface density
// on the sphere when -2 < p <= n-2, a volume density on the open ball when
// n-2 < p < n.
struct DensityValue {
    enum class Kind { surface_uniform, volume } kind;
    double value;  // density w.r.t. surface measure resp. Lebesgue measure
};

// Thrown for p <= -2 where the ball's maximizer is not unique; carries the
// antipodal-pair description.
class NonUniqueEquilibrium : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

DensityValue ball_equilibrium_density(int n, double p,
                                      std::span<const double> x);

// (1/B(1/2,(1+p)/2)) (1-x^2)^(-(1-p)/2) on (-1,1), for -1 < p < 1.
double interval_equilibrium_density(double p, double x);

// Constant A(p,n) of the spatial energy characterization, p > 0:
//   1/A(p,1) = 2^(p+1) / (p(p+1))
//   1/A(p,n) = (2^p/p) (pi^((n-1)/2)/Gamma((n+1)/2)) B((n+1)/2, (p+1)/2)
double gotz_constant(double p, int n);

// |S^(n-1)| = 2 pi^(n/2) / Gamma(n/2) and m_n(B^n) = |S^(n-1)| / n, n >= 1.
double sphere_area(int n);
double ball_volume(int n);

// Closed-form capacity of a set description when one exists: balls and
// intervals (scaled), spheres for p <= n-2 (where the ball's equilibrium
// measure lives on the sphere), and two-point sets for p < 0.
std::optional<double> closed_form_capacity(const SetSpec& spec, double p);

}  // namespace rieszcap

#endif
