#ifndef RIESZCAP_SOLVER_HPP
#define RIESZCAP_SOLVER_HPP

// Simplex-constrained energy optimization: Frank-Wolfe with away steps and
// exact line search on the quadratic form. Minimizes for p >= 0, maximizes
// for p < 0. Deterministic: vertex selection breaks ties by lowest index.
// A solve is single-threaded; distinct solves on shared immutable clouds may
// run concurrently.

#include <optional>
#include <vector>

#include "rieszcap/energy.hpp"
#include "rieszcap/geometry.hpp"
#include "rieszcap/kernel.hpp"

namespace rieszcap {

struct SolverConfig {
    int max_iters = 5000;
    double gap_tol = 1e-8;  // relative: converged iff gap <= gap_tol*(1+|E|)
    // Diagonal mode of the optimized quadratic form. Unset = regime default
    // (exclude for p < 0, cell-exact self_cell for p >= 0; the zero-diagonal
    // form has a degenerate minimum at the simplex vertices when p >= 0, so
    // minimizing it directly is only useful as a diagnostic).
    std::optional<DiagonalMode> diag;
    enum class Init { uniform, cell_proportional };
    Init init = Init::uniform;
    bool record_trace = false;  // per-iteration objective values, for tests
};

struct EquilibriumResult {
    WeightVector weights;
    EnergyValue energy;   // energy of `weights` in the resolved diagonal mode
    double gap = 0.0;     // Frank-Wolfe duality gap at termination
    int iterations = 0;
    bool converged = false;
    DiagonalMode diag_used;      // mode actually optimized
    bool nonunique_regime = false;  // p <= -2: continuum maximizer not unique
    std::vector<double> trace;   // objective per iteration when recorded
};

// Solves the discrete equilibrium problem on the cloud. Requires >= 2 nodes;
// duplicate nodes throw std::invalid_argument. An exhausted iteration budget
// returns converged = false rather than throwing.
EquilibriumResult solve_equilibrium(const RieszExponent& p,
                                    const NodeCloud& cloud,
                                    const SolverConfig& cfg = {});

// Linearized-objective certificate at `w`: for minimization (p >= 0)
// 2*(sum_i w_i U_i - min_i U_i); for maximization (p < 0)
// 2*(max_i U_i - sum_i w_i U_i). Zero iff w is first-order stationary on the
// simplex.
double optimality_gap(const RieszExponent& p, const NodeCloud& cloud,
                      const WeightVector& w, const DiagonalMode& diag,
                      const PairwiseDistances* dists = nullptr);

}  // namespace rieszcap

#endif
