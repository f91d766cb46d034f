#include "rieszcap/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rieszcap/specfun.hpp"

namespace rieszcap {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_weight_alignment(const NodeCloud& cloud, const WeightVector& w) {
    if (w.size() != cloud.size())
        throw std::invalid_argument("weights and cloud have mismatched lengths");
}

// singleton support <=> some w_i == 1 exactly (weights are nonnegative, sum 1)
bool singleton_support(const WeightVector& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == 1.0) return true;
    return false;
}

double diagonal_entry(const RieszExponent& p, const DiagonalMode& diag,
                      double h_i) {
    const double sigma = diag.sigma ? *diag.sigma
                                    : 0.0;  // resolved by caller for cell-exact
    return kernel_value(p, sigma * h_i);
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightVector

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw std::invalid_argument("WeightVector: empty");
    double sum = 0.0;
    for (double x : w_) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("WeightVector: entries must be >= 0");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("WeightVector: entries must sum to 1");
}

WeightVector WeightVector::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("WeightVector: empty");
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightVector WeightVector::cell_proportional(const NodeCloud& cloud) {
    std::vector<double> w(cloud.cell_measures);
    const double total = cloud.total_measure();
    for (double& x : w) x /= total;
    // normalize away the last rounding crumbs so the sum-to-1 invariant holds
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    return WeightVector(std::move(w));
}

// ---------------------------------------------------------------------------
// Diagonal handling

DiagonalMode DiagonalMode::self_cell() {
    return DiagonalMode{Kind::self_cell, {}};
}

DiagonalMode DiagonalMode::self_cell(double sigma) {
    if (!(sigma > 0.0) || sigma > 1.0)
        throw std::invalid_argument("self_cell: sigma must lie in (0, 1]");
    return DiagonalMode{Kind::self_cell, sigma};
}

double ball_pair_kernel_mean(const RieszExponent& p, int d) {
    if (d < 1) throw std::domain_error("ball_pair_kernel_mean: d must be >= 1");
    if (p.is_zero()) {
        // E[log 1/r] = -log 2 + 1/d - psi((d+1)/2)/2 + psi(d+1)/2
        return -std::log(2.0) + 1.0 / d -
               0.5 * specfun::digamma(0.5 * (d + 1)) +
               0.5 * specfun::digamma(d + 1.0);
    }
    const double pp = p.p();
    if (!(pp < d))
        throw std::domain_error("ball_pair_kernel_mean: requires p < d");
    // E[r^-p] = |S^(d-1)| / m_d(B)^2 * omega_{d-1} * 2^(d-p) / (d-p)
    //           * B((d-p+1)/2, (d+1)/2)
    const double log_mean =
        std::log(unit_sphere_area(d)) - 2.0 * std::log(unit_ball_volume(d)) +
        std::log(unit_ball_volume(d - 1)) + (d - pp) * std::log(2.0) -
        std::log(d - pp) + specfun::log_beta(0.5 * (d - pp + 1.0), 0.5 * (d + 1.0));
    return std::exp(log_mean);
}

double self_cell_sigma(const RieszExponent& p, int native_dim) {
    if (native_dim < 1)
        throw std::invalid_argument(
            "self_cell_sigma: cloud has no cells (native_dim < 1)");
    if (!(p.p() < native_dim)) return 0.6;  // cell mean diverges; bare fallback
    double sigma;
    if (p.is_zero()) {
        sigma = std::exp(-ball_pair_kernel_mean(p, native_dim));
    } else {
        sigma = std::pow(ball_pair_kernel_mean(p, native_dim), -1.0 / p.p());
    }
    return std::min(sigma, 1.0);
}

DiagonalMode default_diagonal(const RieszExponent& p) {
    return p.is_negative() ? DiagonalMode::exclude() : DiagonalMode::self_cell();
}

DiagonalMode default_diagonal(const RieszExponent& p, int native_dim) {
    if (p.is_negative() || native_dim < 1) return DiagonalMode::exclude();
    return DiagonalMode::self_cell();
}

// ---------------------------------------------------------------------------
// Distance and kernel matrices

PairwiseDistances::PairwiseDistances(const NodeCloud& cloud)
    : n_(cloud.size()), d_(cloud.size() * cloud.size(), 0.0) {
    dmin_ = std::numeric_limits<double>::infinity();
    dmax_ = 0.0;
    const int dim = cloud.dim;
    const double* c = cloud.coords.data();
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double t = c[i * dim + k] - c[j * dim + k];
                s += t * t;
            }
            const double dist = std::sqrt(s);
            if (dist == 0.0)
                throw std::invalid_argument(
                    "cloud contains duplicate nodes (zero pairwise distance)");
            d_[i * n_ + j] = dist;
            d_[j * n_ + i] = dist;
            dmin_ = std::min(dmin_, dist);
            dmax_ = std::max(dmax_, dist);
        }
    }
}

KernelMatrix::KernelMatrix(const RieszExponent& p, const NodeCloud& cloud,
                           const DiagonalMode& diag,
                           const PairwiseDistances& dists)
    : n_(cloud.size()), k_(cloud.size() * cloud.size(), 0.0) {
    const double pp = p.p();
    const bool logk = p.is_zero();
    for (std::size_t i = 0; i < n_; ++i) {
        const double* drow = dists.row(i);
        double* krow = k_.data() + i * n_;
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = logk ? -std::log(drow[j]) : std::pow(drow[j], -pp);
            krow[j] = v;
            k_[j * n_ + i] = v;
        }
    }
    if (!diag.is_exclude()) {
        DiagonalMode resolved = diag;
        if (!resolved.sigma)
            resolved.sigma = self_cell_sigma(p, cloud.native_dim);
        const int d = cloud.native_dim;
        if (d < 1)
            throw std::invalid_argument(
                "self_cell diagonal requires a cloud with cells");
        for (std::size_t i = 0; i < n_; ++i) {
            const double h =
                std::pow(cloud.cell_measures[i] / unit_ball_volume(d), 1.0 / d);
            k_[i * n_ + i] = diagonal_entry(p, resolved, h);
        }
    }
}

double KernelMatrix::quadratic_form(const std::vector<double>& w) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double* krow = k_.data() + i * n_;
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) row += krow[j] * w[j];
        acc += w[i] * row;
    }
    return acc;
}

std::vector<double> KernelMatrix::apply(const std::vector<double>& w) const {
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const double* krow = k_.data() + i * n_;
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) row += krow[j] * w[j];
        out[i] = row;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Energies

EnergyValue discrete_energy(const RieszExponent& p, const NodeCloud& cloud,
                            const WeightVector& w, const DiagonalMode& diag,
                            const PairwiseDistances* dists) {
    check_weight_alignment(cloud, w);
    if (diag.is_exclude() && !p.is_negative() && singleton_support(w))
        return EnergyValue::infinite(p);

    std::optional<PairwiseDistances> local;
    if (!dists) {
        local.emplace(cloud);
        dists = &*local;
    }
    const std::size_t n = cloud.size();
    const double pp = p.p();
    const bool logk = p.is_zero();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == 0.0) continue;
        const double* drow = dists->row(i);
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w[j] == 0.0) continue;
            row += w[j] * (logk ? -std::log(drow[j]) : std::pow(drow[j], -pp));
        }
        acc += 2.0 * w[i] * row;
    }
    if (!diag.is_exclude()) {
        DiagonalMode resolved = diag;
        if (!resolved.sigma)
            resolved.sigma = self_cell_sigma(p, cloud.native_dim);
        const int d = cloud.native_dim;
        if (d < 1)
            throw std::invalid_argument(
                "self_cell diagonal requires a cloud with cells");
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] == 0.0) continue;
            const double h =
                std::pow(cloud.cell_measures[i] / unit_ball_volume(d), 1.0 / d);
            acc += w[i] * w[i] * diagonal_entry(p, resolved, h);
        }
    }
    if (p.is_positive() && !(acc > 0.0)) return EnergyValue::infinite(p);
    return EnergyValue::finite(acc, p);
}

std::vector<double> potential(const RieszExponent& p, const NodeCloud& cloud,
                              const WeightVector& w, const DiagonalMode& diag,
                              const PairwiseDistances* dists) {
    check_weight_alignment(cloud, w);
    std::optional<PairwiseDistances> local;
    if (!dists) {
        local.emplace(cloud);
        dists = &*local;
    }
    const std::size_t n = cloud.size();
    const double pp = p.p();
    const bool logk = p.is_zero();
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* drow = dists->row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || w[j] == 0.0) continue;
            acc += w[j] * (logk ? -std::log(drow[j]) : std::pow(drow[j], -pp));
        }
        u[i] = acc;
    }
    if (!diag.is_exclude()) {
        DiagonalMode resolved = diag;
        if (!resolved.sigma)
            resolved.sigma = self_cell_sigma(p, cloud.native_dim);
        const int d = cloud.native_dim;
        if (d < 1)
            throw std::invalid_argument(
                "self_cell diagonal requires a cloud with cells");
        for (std::size_t i = 0; i < n; ++i) {
            const double h =
                std::pow(cloud.cell_measures[i] / unit_ball_volume(d), 1.0 / d);
            u[i] += w[i] * diagonal_entry(p, resolved, h);
        }
    }
    return u;
}

// ---------------------------------------------------------------------------
// Radial characterization

EnergyValue gotz_radial_energy(const RieszExponent& p, const NodeCloud& cloud,
                               const WeightVector& w,
                               const RadialQuadrature& quad,
                               const PairwiseDistances* dists) {
    if (!p.is_positive())
        throw std::invalid_argument("gotz_radial_energy: requires p > 0");
    check_weight_alignment(cloud, w);
    if (singleton_support(w)) return EnergyValue::infinite(p);

    std::optional<PairwiseDistances> local;
    if (!dists) {
        local.emplace(cloud);
        dists = &*local;
    }
    const std::size_t n = cloud.size();
    const double pp = p.p();

    if (quad.mode == RadialQuadrature::Mode::analytic) {
        // per pair: p * w_i w_j * int_{d}^inf r^(-p-1) dr = w_i w_j d^(-p)
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] == 0.0) continue;
            const double* drow = dists->row(i);
            double row = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (w[j] == 0.0) continue;
                row += w[j] * (std::pow(drow[j], -pp - 1.0) * drow[j] / pp);
            }
            acc += 2.0 * w[i] * row;
        }
        acc *= pp;
        if (!(acc > 0.0)) return EnergyValue::infinite(p);
        return EnergyValue::finite(acc, p, EnergySource::gotz_radial);
    }

    // quadrature mode: S(r) = sum over pairs with d_ij < r of 2 w_i w_j,
    // integrated against p r^(-p-1) on a geometric grid, with the exact tail
    // S_total * r_max^(-p) appended (S is constant past the largest distance).
    struct Pair {
        double d, mass;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    double total_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == 0.0) continue;
        const double* drow = dists->row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w[j] == 0.0) continue;
            pairs.push_back({drow[j], 2.0 * w[i] * w[j]});
            total_mass += 2.0 * w[i] * w[j];
        }
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& a, const Pair& b) { return a.d < b.d; });
    std::vector<double> pd(pairs.size()), pcum(pairs.size());
    double run = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        pd[k] = pairs[k].d;
        run += pairs[k].mass;
        pcum[k] = run;
    }
    auto ball_mass = [&](double r) {  // strict: pairs with d < r
        const auto it = std::lower_bound(pd.begin(), pd.end(), r);
        return it == pd.begin() ? 0.0 : pcum[it - pd.begin() - 1];
    };

    const int m = std::max(quad.points, 2);
    const double r_lo = quad.lo_factor * dists->min_offdiag();
    const double r_hi = quad.hi_factor * dists->max_offdiag();
    const double u_lo = std::log(r_lo), u_hi = std::log(r_hi);
    const double du = (u_hi - u_lo) / (m - 1);
    // trapezoid of S(e^u) e^(-p u) du
    double integral = 0.0;
    double prev = ball_mass(r_lo) * std::exp(-pp * u_lo);
    for (int k = 1; k < m; ++k) {
        const double u = u_lo + k * du;
        const double cur = ball_mass(std::exp(u)) * std::exp(-pp * u);
        integral += 0.5 * (prev + cur) * du;
        prev = cur;
    }
    double acc = pp * integral + total_mass * std::pow(r_hi, -pp);
    if (!(acc > 0.0)) return EnergyValue::infinite(p);
    return EnergyValue::finite(acc, p, EnergySource::gotz_radial);
}

// ---------------------------------------------------------------------------
// Spatial characterization

double lens_volume(int n, double d, double r) {
    if (d < 0.0 || r < 0.0)
        throw std::domain_error("lens_volume: d and r must be >= 0");
    if (d >= 2.0 * r) return 0.0;
    switch (n) {
        case 1:
            return 2.0 * r - d;
        case 2: {
            const double x = d / (2.0 * r);
            return 2.0 * r * r * std::acos(x) -
                   0.5 * d * std::sqrt(4.0 * r * r - d * d);
        }
        case 3: {
            const double t = 2.0 * r - d;
            return kPi / 12.0 * (4.0 * r + d) * t * t;
        }
        default:
            throw std::invalid_argument("lens_volume: dimension must be 1..3");
    }
}

namespace {

// int_R^inf lens_n(d, r) r^(-n-p-1) dr, exact for n = 1, 3 and via the
// large-r expansion of the circular lens for n = 2 (R >> d, remainder
// O((d/R)^(4+p)) relative).
double lens_tail(int n, double d, double R, double p) {
    switch (n) {
        case 1:
            return 2.0 * std::pow(R, -p) / p -
                   d * std::pow(R, -1.0 - p) / (1.0 + p);
        case 2:
            return kPi * std::pow(R, -p) / p -
                   2.0 * d * std::pow(R, -1.0 - p) / (1.0 + p) +
                   d * d * d / 12.0 * std::pow(R, -3.0 - p) / (3.0 + p);
        case 3:
            // lens_3 = (pi/12)(16 r^3 - 12 r^2 d + d^3)
            return kPi / 12.0 *
                   (16.0 * std::pow(R, -p) / p -
                    12.0 * d * std::pow(R, -1.0 - p) / (1.0 + p) +
                    d * d * d * std::pow(R, -3.0 - p) / (3.0 + p));
        default:
            throw std::invalid_argument("lens_tail: dimension must be 1..3");
    }
}

}  // namespace

EnergyValue gotz_spatial_energy(const RieszExponent& p, const NodeCloud& cloud,
                                const WeightVector& w,
                                const SpatialQuadrature& quad,
                                const PairwiseDistances* dists) {
    if (!p.is_positive())
        throw std::invalid_argument("gotz_spatial_energy: requires p > 0");
    const int n_dim = cloud.dim;
    if (n_dim < 1 || n_dim > 3)
        throw std::invalid_argument(
            "gotz_spatial_energy: ambient dimension must be 1..3");
    check_weight_alignment(cloud, w);
    if (singleton_support(w)) return EnergyValue::infinite(p);

    std::optional<PairwiseDistances> local;
    if (!dists) {
        local.emplace(cloud);
        dists = &*local;
    }
    const std::size_t n = cloud.size();
    const double pp = p.p();

    const int m = std::max(quad.points, 2);
    const double r_lo = quad.lo_factor * dists->min_offdiag();
    const double r_hi = quad.hi_factor * dists->max_offdiag();
    const double u_lo = std::log(r_lo), u_hi = std::log(r_hi);
    const double du = (u_hi - u_lo) / (m - 1);

    // A(p,n): 1/A(p,1) = 2^(p+1)/(p(p+1));
    // 1/A(p,n) = 2^p/p * pi^((n-1)/2)/Gamma((n+1)/2) * B((n+1)/2, (p+1)/2)
    double inv_a;
    if (n_dim == 1) {
        inv_a = std::pow(2.0, pp + 1.0) / (pp * (pp + 1.0));
    } else {
        inv_a = std::pow(2.0, pp) / pp *
                std::exp(0.5 * (n_dim - 1) * std::log(kPi) -
                         specfun::log_gamma(0.5 * (n_dim + 1))) *
                specfun::beta(0.5 * (n_dim + 1), 0.5 * (pp + 1.0));
    }
    const double a_const = 1.0 / inv_a;

    // per pair: trapezoid (in log r) of lens_n(d, r) r^(-n-p), starting at the
    // exact support edge r = d/2, plus the analytic tail past r_hi
    auto pair_integral = [&](double d) {
        const double u_start = std::log(0.5 * d);
        double acc = 0.0;
        if (u_start < u_hi) {
            const int k0 =
                std::max(0, static_cast<int>(std::ceil((u_start - u_lo) / du)));
            double u_prev = u_start;
            double f_prev = 0.0;  // lens vanishes at r = d/2
            for (int k = k0; k < m; ++k) {
                const double u = u_lo + k * du;
                if (u <= u_prev) continue;
                const double r = std::exp(u);
                const double f =
                    lens_volume(n_dim, d, r) * std::pow(r, -static_cast<double>(n_dim) - pp);
                acc += 0.5 * (f_prev + f) * (u - u_prev);
                u_prev = u;
                f_prev = f;
            }
        }
        acc += lens_tail(n_dim, d, std::max(r_hi, 0.5 * d), pp);
        return acc;
    };

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == 0.0) continue;
        const double* drow = dists->row(i);
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w[j] == 0.0) continue;
            row += w[j] * pair_integral(drow[j]);
        }
        total += 2.0 * w[i] * row;
    }
    total *= a_const;
    if (!(total > 0.0)) return EnergyValue::infinite(p);
    return EnergyValue::finite(total, p, EnergySource::gotz_spatial);
}

EnergyValue cross_energy(double p_star, const NodeCloud& cloud,
                         const WeightVector& w,
                         const PairwiseDistances* dists) {
    return discrete_energy(RieszExponent(p_star), cloud, w,
                           DiagonalMode::exclude(), dists);
}

}  // namespace rieszcap
