#include "rieszcap/closedform.hpp"

#include <cmath>
#include <limits>

#include "rieszcap/specfun.hpp"

namespace rieszcap {

namespace {

using specfun::digamma;
using specfun::log_gamma;

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

}  // namespace

namespace {

// The gamma-ratio branches evaluate exp(G(p)/p) where G(0) = 0; the division
// amplifies log-gamma roundoff by 1/|p|. Below this threshold each bracketed
// log-gamma difference is replaced by its digamma midpoint value,
//   lgGamma(x) - lgGamma(x - p/2) = (p/2) psi(x - p/4) + O(p^3),
// which is exact at p = 0 and machine-accurate for |p| <= 1e-5.
constexpr double kSmallExponent = 1e-5;

}  // namespace

BallCapacityRegime classify_ball_regime(int n, double p) {
    if (n < 2) throw std::domain_error("classify_ball_regime: n must be >= 2");
    if (!(p < n)) throw std::domain_error("classify_ball_regime: requires p < n");
    if (p <= -2.0) return BallCapacityRegime::p_le_minus2;
    if (p == 0.0) return BallCapacityRegime::p_zero;
    if (p <= n - 2.0) return BallCapacityRegime::mid;
    return BallCapacityRegime::high;
}

double ball_capacity(int n, double p) {
    switch (classify_ball_regime(n, p)) {
        case BallCapacityRegime::p_le_minus2:
            return std::exp((1.0 + 1.0 / p) * std::log(2.0));
        case BallCapacityRegime::p_zero:
            return 2.0 * std::exp(0.5 * (digamma(0.5 * (n - 1)) - digamma(n - 1.0)));
        case BallCapacityRegime::mid: {
            if (std::abs(p) < kSmallExponent) {
                return 2.0 * std::exp(0.5 * (digamma(0.5 * (n - 1) - 0.25 * p) -
                                             digamma(n - 1.0 - 0.25 * p)));
            }
            const double lg = log_gamma(n - 1.0 - 0.5 * p) +
                              log_gamma(0.5 * (n - 1)) -
                              log_gamma(0.5 * (n - 1.0 - p)) - log_gamma(n - 1.0);
            return 2.0 * std::exp(lg / p);
        }
        case BallCapacityRegime::high: {
            if (std::abs(p) < kSmallExponent) {
                return std::exp(0.5 * (digamma(0.5 * n - 0.25 * p) -
                                       digamma(1.0 + 0.25 * p)));
            }
            const double lg = log_gamma(0.5 * n) - log_gamma(0.5 * (n - p)) -
                              log_gamma(1.0 + 0.5 * p);
            return std::exp(lg / p);
        }
    }
    throw std::logic_error("ball_capacity: unreachable");
}

double interval_capacity(double p) {
    if (!(p < 1.0)) throw std::domain_error("interval_capacity: requires p < 1");
    if (p <= -1.0) return std::exp((1.0 + 1.0 / p) * std::log(2.0));
    if (p == 0.0) return 0.5;
    if (std::abs(p) < kSmallExponent) {
        return std::exp(0.5 *
                        (digamma(0.5 - 0.25 * p) - digamma(1.0 + 0.25 * p)));
    }
    const double lg = log_gamma(0.5) - log_gamma(0.5 * (1.0 - p)) -
                      log_gamma(1.0 + 0.5 * p);
    return std::exp(lg / p);
}

DensityValue ball_equilibrium_density(int n, double p,
                                      std::span<const double> x) {
    if (n < 2)
        throw std::domain_error("ball_equilibrium_density: n must be >= 2");
    if (!(p < n))
        throw std::domain_error("ball_equilibrium_density: requires p < n");
    if (p <= -2.0)
        throw NonUniqueEquilibrium(
            "equilibrium measure is not unique for p <= -2: antipodal pair "
            "(delta_{-xi} + delta_{+xi})/2 for any xi on the unit sphere "
            "(any centered measure on the sphere at p = -2)");
    const double r = norm(x);
    if (r > 1.0 + 1e-12)
        throw std::domain_error("ball_equilibrium_density: |x| must be <= 1");
    if (p <= n - 2.0) {
        return {DensityValue::Kind::surface_uniform, 1.0 / sphere_area(n)};
    }
    // volume density: (2/|S^(n-1)|) (1/B(n/2,(p-n+2)/2)) (1-|x|^2)^(-(n-p)/2)
    const double b = specfun::beta(0.5 * n, 0.5 * (p - n + 2.0));
    const double t = 1.0 - r * r;
    const double pow_term =
        t > 0.0 ? std::pow(t, -0.5 * (n - p))
                : std::numeric_limits<double>::infinity();
    return {DensityValue::Kind::volume, 2.0 / sphere_area(n) / b * pow_term};
}

double interval_equilibrium_density(double p, double x) {
    if (!(p > -1.0) || !(p < 1.0))
        throw std::domain_error(
            "interval_equilibrium_density: requires -1 < p < 1");
    if (!(x > -1.0) || !(x < 1.0))
        throw std::domain_error(
            "interval_equilibrium_density: requires -1 < x < 1");
    const double b = specfun::beta(0.5, 0.5 * (1.0 + p));
    return std::pow(1.0 - x * x, -0.5 * (1.0 - p)) / b;
}

double gotz_constant(double p, int n) {
    if (!(p > 0.0)) throw std::domain_error("gotz_constant: requires p > 0");
    if (n < 1) throw std::domain_error("gotz_constant: n must be >= 1");
    if (n == 1) return p * (p + 1.0) / std::pow(2.0, p + 1.0);
    const double log_inv =
        p * std::log(2.0) - std::log(p) +
        0.5 * (n - 1) * std::log(3.14159265358979323846264338327950288) -
        log_gamma(0.5 * (n + 1)) +
        specfun::log_beta(0.5 * (n + 1), 0.5 * (p + 1.0));
    return std::exp(-log_inv);
}

double sphere_area(int n) {
    if (n < 1) throw std::domain_error("sphere_area: n must be >= 1");
    return unit_sphere_area(n);
}

double ball_volume(int n) {
    if (n < 1) throw std::domain_error("ball_volume: n must be >= 1");
    return unit_sphere_area(n) / n;
}

std::optional<double> closed_form_capacity(const SetSpec& spec, double p) {
    if (const auto* b = std::get_if<BallSpec>(&spec.v)) {
        if (!(p < b->dim)) return 0.0;
        if (b->dim == 1) return b->radius * interval_capacity(p);
        return b->radius * ball_capacity(b->dim, p);
    }
    if (const auto* s = std::get_if<SphereSpec>(&spec.v)) {
        // the ball's equilibrium measure lives on the sphere for p <= n-2,
        // so sphere and ball capacities coincide there
        if (p <= s->dim - 2.0) return s->radius * ball_capacity(s->dim, p);
        return std::nullopt;
    }
    if (const auto* i = std::get_if<IntervalSpec>(&spec.v)) {
        if (!(p < 1.0)) return 0.0;
        return 0.5 * (i->b - i->a) * interval_capacity(p);
    }
    if (const auto* pts = std::get_if<PointsSpec>(&spec.v)) {
        if (pts->coords.size() == 2 && p < 0.0) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < pts->coords[0].size(); ++k) {
                const double t = pts->coords[0][k] - pts->coords[1][k];
                d2 += t * t;
            }
            // optimal split is (1/2,1/2): V = d^-p / 2, cap = 2^(1/p) d
            return std::pow(2.0, 1.0 / p) * std::sqrt(d2);
        }
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace rieszcap
