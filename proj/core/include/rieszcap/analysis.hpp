#ifndef RIESZCAP_ANALYSIS_HPP
#define RIESZCAP_ANALYSIS_HPP

// Theorem-level numerical experiments: capacity estimation with refinement
// extrapolation, capacity-vs-p curves, endpoint-limit estimators,
// monotonicity/continuity checks, and equilibrium-measure continuity proxies.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rieszcap/closedform.hpp"
#include "rieszcap/energy.hpp"
#include "rieszcap/geometry.hpp"
#include "rieszcap/kernel.hpp"
#include "rieszcap/solver.hpp"

namespace rieszcap {

// One refinement level of a capacity estimate.
struct LevelResult {
    int requested_nodes = 0;
    std::size_t nodes = 0;
    double capacity = 0.0;
    std::optional<double> energy;  // empty when the energy is +infinity
    double gap = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct CapacityResult {
    double p = 0.0;
    double capacity = 0.0;        // extrapolated when available, else finest
    double capacity_finest = 0.0;
    bool extrapolated = false;
    std::optional<double> extrapolation_order;  // fitted beta in c + a N^-beta
    std::optional<EnergyValue> energy;          // finest-level energy
    std::vector<LevelResult> levels;
    std::optional<DiagonalMode> diag_used;
    std::string note;
};

// Resolves the `native` scheme for an analysis run: spheres use boundary
// nodes; balls use boundary nodes when p <= n-2 (the equilibrium measure
// lives on the sphere there) and grid nodes otherwise; everything else uses
// grid. Explicit grid/boundary requests pass through unchanged.
std::pair<SetSpec, Scheme> resolve_discretization(const SetSpec& spec, double p,
                                                  Scheme requested);

// Capacity estimate over a refinement ladder with Richardson extrapolation in
// 1/N (the fit falls back to the finest value when non-monotone). For
// p >= ambient dimension returns capacity 0 without solving.
CapacityResult estimate_capacity(const SetSpec& spec, double p,
                                 const std::vector<int>& ladder,
                                 Scheme scheme = Scheme::native,
                                 const SolverConfig& cfg = {});

struct CurveRow {
    double p = 0.0;
    double capacity = 0.0;
    std::optional<double> energy;
    double gap = 0.0;
    int iterations = 0;
    std::size_t nodes = 0;
    std::optional<double> closed_form;
    // populated when capacity_curve is asked to keep solutions
    std::shared_ptr<const NodeCloud> cloud;
    std::optional<WeightVector> weights;
};

struct CurveTable {
    std::vector<CurveRow> rows;  // sorted by p ascending
    std::string set_desc;
    std::string scheme_desc;
};

CurveTable capacity_curve(const SetSpec& spec, const std::vector<double>& p_grid,
                          const std::vector<int>& ladder,
                          Scheme scheme = Scheme::native,
                          const SolverConfig& cfg = {},
                          bool keep_solutions = false);

// Exact CSV schema: p,capacity,energy,gap,iterations,N,closed_form
std::string curve_to_csv(const CurveTable& table);
std::string curve_to_json(const CurveTable& table);

// deterministic shortest round-trip decimal representation
std::string format_double(double x);

struct MonotonicityReport {
    struct PairCheck {
        double p_lo = 0.0, p_hi = 0.0;
        double cap_lo = 0.0, cap_hi = 0.0;
        bool ok = false;
    };
    struct JensenCheck {
        double p_lo = 0.0, p_hi = 0.0;
        double lhs = 0.0, rhs = 0.0;  // V_p^(1/p) <= V_q^(1/q)
        bool ok = false;
    };
    std::vector<PairCheck> pair_checks;
    std::vector<JensenCheck> jensen_checks;
    bool passed = false;
};

// Verifies capacity(p_i) >= capacity(p_{i+1}) - slack*capacity(p_i) on
// consecutive rows. When the curve carries solutions, also verifies the exact
// discrete ordering V_p^(1/p) <= V_q^(1/q) on each row's fixed weights for
// 0 < p < q (power-mean inequality on the off-diagonal sum).
MonotonicityReport monotonicity_check(const CurveTable& curve, double slack);

struct DiameterLimitReport {
    double diam = 0.0;  // diameter of the (finest) discretized set
    struct Row {
        double p = 0.0;
        double capacity = 0.0;
        double ratio = 0.0;        // capacity / diam
        double lower_bound = 0.0;  // 2^(1/p)
        bool within_bounds = false;
        std::optional<bool> equality_ok;  // 1-D specs with p <= -1
    };
    std::vector<Row> rows;
    bool passed = false;
};

// Verifies 2^(1/p) <= cap/diam <= 1 for each p < 0; for 1-dimensional specs
// with p <= -1 additionally verifies equality within `equality_tol`.
DiameterLimitReport diameter_limit_check(const SetSpec& spec,
                                         const std::vector<double>& p_list,
                                         const std::vector<int>& ladder,
                                         Scheme scheme = Scheme::native,
                                         const SolverConfig& cfg = {},
                                         double equality_tol = 0.01);

enum class CapacitySource { numerical, closed_form };

struct VolumeLimitReport {
    struct Row {
        double p = 0.0;
        double capacity = 0.0;
        double volume_estimate = 0.0;  // |S^(n-1)| cap^p / (n-p)
    };
    std::vector<Row> rows;
    double extrapolated_volume = 0.0;  // polynomial extrapolation in (n-p) -> 0
    std::optional<double> true_measure;
    std::optional<double> relative_error;
};

// Volume recovery: evaluates |S^(n-1)| cap(p)^p / (n-p) along a p-sequence
// increasing toward the ambient dimension and extrapolates in (n-p).
// Conditioning of the numerical solves degrades as p approaches n; keep the
// sequence at or below n - 0.2 for numerical sources.
VolumeLimitReport volume_limit_estimate(const SetSpec& spec,
                                        const std::vector<double>& p_sequence,
                                        const std::vector<int>& ladder,
                                        CapacitySource source,
                                        Scheme scheme = Scheme::native,
                                        const SolverConfig& cfg = {});

struct LogLimitReport {
    double cap0_numeric = 0.0;
    std::optional<double> cap0_closed;
    struct Row {
        double delta = 0.0;
        double cap_left = 0.0;   // p = -delta
        double cap_right = 0.0;  // p = +delta
        double dev_left = 0.0;   // |cap_left - cap0|
        double dev_right = 0.0;
    };
    std::vector<Row> rows;  // sorted by delta descending
    bool left_devs_decreasing = false;
    bool right_le_left = false;  // cap_right <= cap_left + tol at every delta
};

// Logarithmic capacity as the limit of Riesz capacity: estimates Cap at
// p = +-delta and Cap_0 by direct log-kernel optimization.
LogLimitReport log_limit_check(const SetSpec& spec,
                               const std::vector<double>& deltas,
                               const std::vector<int>& ladder,
                               Scheme scheme = Scheme::native,
                               const SolverConfig& cfg = {}, double tol = 1e-9);

struct EqmContinuityReport {
    double q = 0.0;
    struct Row {
        double delta = 0.0;
        std::optional<double> dev_left;   // proxy deviation at p = q - delta
        std::optional<double> dev_right;  // at p = q + delta
    };
    std::vector<Row> rows;  // sorted by delta descending
    bool left_decreasing = false;
    bool right_decreasing = false;
    std::size_t nodes = 0;
};

enum class ApproachSide { both, left, right };

// Weak-* continuity proxies for the equilibrium measure: solves at q and
// q +- delta on one fixed cloud and compares first/second coordinate moments
// and potentials at 5 fixed probe points. The diagonal mode is resolved once
// at q and reused for the whole family so the compared weight vectors come
// from one consistent discrete functional. A necessary-condition proxy, not a
// weak-* verification.
EqmContinuityReport eqm_continuity_check(const SetSpec& spec, double q,
                                         const std::vector<double>& deltas,
                                         const std::vector<int>& ladder,
                                         ApproachSide side = ApproachSide::both,
                                         Scheme scheme = Scheme::native,
                                         const SolverConfig& cfg = {});

enum class PstarClass { bounded, divergent, indeterminate };

struct PstarReport {
    double p = 0.0, p_star = 0.0;
    struct Level {
        std::size_t nodes = 0;
        std::optional<double> cross_energy;  // empty = +infinity
    };
    std::vector<Level> levels;
    PstarClass classification = PstarClass::indeterminate;
};

// Cross-energy of the p-equilibrium weights at exponent p_star along the
// refinement ladder. Classified divergent when the values increase strictly
// across every level and grow by more than 50% from first to last; bounded
// when the last two levels agree within 10%. Numerical evidence only.
PstarReport pstar_hypothesis_probe(const SetSpec& spec, double p, double p_star,
                                   const std::vector<int>& ladder,
                                   Scheme scheme = Scheme::native,
                                   const SolverConfig& cfg = {});

// Closed-form equilibrium cell masses for the cloud when a density formula
// applies (interval with -1 < p < 1, balls, spheres in the unique regimes).
std::optional<std::vector<double>> equilibrium_cell_masses(const SetSpec& spec,
                                                           const NodeCloud& cloud,
                                                           double p);

// Closed-form identity suite: exact capacity values, the A(n,n) m_n^2 =
// |S^(n-1)| identity, regime-boundary continuity, endpoint values and the
// large-n envelope. All checks are milliseconds.
struct ValidationReport {
    struct Check {
        std::string name;
        bool passed = false;
        std::string detail;
    };
    std::vector<Check> checks;
    bool all_passed = false;
};

ValidationReport run_validation();

// JSON emission (deterministic key order)
std::string to_json_string(const CapacityResult& r);
std::string to_json_string(const MonotonicityReport& r);
std::string to_json_string(const DiameterLimitReport& r);
std::string to_json_string(const VolumeLimitReport& r);
std::string to_json_string(const LogLimitReport& r);
std::string to_json_string(const EqmContinuityReport& r);
std::string to_json_string(const PstarReport& r);
std::string to_json_string(const ValidationReport& r);

}  // namespace rieszcap

#endif
