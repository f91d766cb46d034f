#include "rieszcap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rieszcap {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct FwOutcome {
    std::vector<double> w;
    std::vector<double> U;
    double energy = 0.0;
    double gap = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

// Away-step Frank-Wolfe with exact line search on f = sign * w^T K w.
FwOutcome run_frank_wolfe(const KernelMatrix& K, double sign,
                          std::vector<double> w, const SolverConfig& cfg) {
    const std::size_t n = K.size();
    FwOutcome out;
    std::vector<double> U = K.apply(w);
    double E = dot(w, U);
    if (cfg.record_trace) out.trace.push_back(E);

    int it = 0;
    bool converged = false;
    for (; it < cfg.max_iters; ++it) {
        // FW vertex: argmin of sign*U; away vertex: argmax of sign*U on support
        std::size_t s = 0, a = n;
        double best_s = std::numeric_limits<double>::infinity();
        double best_a = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double g = sign * U[i];
            if (g < best_s) {
                best_s = g;
                s = i;
            }
            if (w[i] > 0.0 && g > best_a) {
                best_a = g;
                a = i;
            }
        }
        const double gap_fw = 2.0 * (sign * E - best_s);
        if (gap_fw <= cfg.gap_tol * (1.0 + std::abs(E))) {
            converged = true;
            break;
        }
        const double gap_away = (a < n) ? 2.0 * (best_a - sign * E) : 0.0;

        const bool away_possible = a < n && w[a] < 1.0 - 1e-15;
        const bool use_away = away_possible && gap_away > gap_fw;

        // exact line search on the quadratic phi(g) = f + g*slope + g^2*curve
        double slope, curve, gamma_max;
        if (use_away) {
            // d = w - e_a
            slope = 2.0 * sign * (E - U[a]);
            curve = sign * (E - 2.0 * U[a] + K.at(a, a));
            gamma_max = w[a] / (1.0 - w[a]);
        } else {
            // d = e_s - w
            slope = 2.0 * sign * (U[s] - E);
            curve = sign * (K.at(s, s) - 2.0 * U[s] + E);
            gamma_max = 1.0;
        }
        double gamma;
        if (curve > 1e-300) {
            gamma = std::clamp(-0.5 * slope / curve, 0.0, gamma_max);
        } else {
            gamma = gamma_max;  // concave or flat along d and descending
        }
        if (gamma <= 0.0) break;  // numerically stalled

        const std::size_t v = use_away ? a : s;
        const double* kv = K.row(v);
        if (use_away) {
            for (std::size_t i = 0; i < n; ++i) {
                w[i] *= (1.0 + gamma);
                U[i] = (1.0 + gamma) * U[i] - gamma * kv[i];
            }
            w[a] -= gamma;
            if (gamma >= gamma_max * (1.0 - 1e-14)) w[a] = 0.0;  // drop step
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                w[i] *= (1.0 - gamma);
                U[i] = (1.0 - gamma) * U[i] + gamma * kv[i];
            }
            w[s] += gamma;
        }
        // periodic exact refresh bounds the drift of the incremental updates
        if ((it & 63) == 63) {
            double sum = std::accumulate(w.begin(), w.end(), 0.0);
            for (double& x : w) x /= sum;
            U = K.apply(w);
        }
        E = dot(w, U);
        if (cfg.record_trace) out.trace.push_back(E);
    }

    // exact values at termination
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) {
        x /= sum;
        if (x < 0.0) x = 0.0;
    }
    sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= sum;
    U = K.apply(w);
    E = dot(w, U);
    double best_s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best_s = std::min(best_s, sign * U[i]);

    out.w = std::move(w);
    out.U = std::move(U);
    out.energy = E;
    out.gap = 2.0 * (sign * E - best_s);
    out.iterations = it;
    out.converged =
        converged || out.gap <= cfg.gap_tol * (1.0 + std::abs(E));
    return out;
}

}  // namespace

EquilibriumResult solve_equilibrium(const RieszExponent& p,
                                    const NodeCloud& cloud,
                                    const SolverConfig& cfg) {
    const std::size_t n = cloud.size();
    if (n < 2)
        throw std::invalid_argument("solve_equilibrium: need at least 2 nodes");
    if (cfg.max_iters < 1 || !(cfg.gap_tol > 0.0))
        throw std::invalid_argument("solve_equilibrium: bad config");

    DiagonalMode diag =
        cfg.diag.value_or(default_diagonal(p, cloud.native_dim));
    if (diag.kind == DiagonalMode::Kind::self_cell && !diag.sigma)
        diag.sigma = self_cell_sigma(p, cloud.native_dim);

    const PairwiseDistances dists(cloud);
    const KernelMatrix K(p, cloud, diag, dists);

    // minimize f = sign * (w^T K w): sign = +1 for p >= 0, -1 for p < 0
    const double sign = p.is_negative() ? -1.0 : 1.0;

    const std::vector<double> w0 =
        cfg.init == SolverConfig::Init::uniform
            ? WeightVector::uniform(n).values()
            : WeightVector::cell_proportional(cloud).values();
    FwOutcome best = run_frank_wolfe(K, sign, w0, cfg);

    if (p.p() <= -2.0) {
        // The form is no longer concave and symmetric clouds make the spread
        // start a stationary point the gap certificate cannot see past. The
        // continuum maximizer concentrates on a diameter pair here, so that
        // point-pair start is tried as well and the better stationary point
        // is kept (lowest-index pair on ties, for determinism).
        std::size_t bi = 0, bj = 1;
        double dmax = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (dists(i, j) > dmax) {
                    dmax = dists(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        std::vector<double> pair(n, 0.0);
        pair[bi] = 0.5;
        pair[bj] = 0.5;
        FwOutcome alt = run_frank_wolfe(K, sign, std::move(pair), cfg);
        if (alt.energy > best.energy * (1.0 + 1e-14) +
                             (best.energy == 0.0 ? 1e-300 : 0.0))
            best = std::move(alt);
    }

    WeightVector weights(best.w);
    EquilibriumResult out{
        weights,
        discrete_energy(p, cloud, weights, diag, &dists),
        best.gap,
        best.iterations,
        best.converged,
        diag,
        p.p() <= -2.0,
        std::move(best.trace)};
    return out;
}

double optimality_gap(const RieszExponent& p, const NodeCloud& cloud,
                      const WeightVector& w, const DiagonalMode& diag,
                      const PairwiseDistances* dists) {
    const std::vector<double> U = potential(p, cloud, w, diag, dists);
    double wU = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i) wU += w[i] * U[i];
    if (p.is_negative()) {
        const double mx = *std::max_element(U.begin(), U.end());
        return 2.0 * (mx - wU);
    }
    const double mn = *std::min_element(U.begin(), U.end());
    return 2.0 * (wU - mn);
}

}  // namespace rieszcap
