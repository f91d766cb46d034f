#include "rieszcap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "rieszcap/specfun.hpp"

namespace rieszcap {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846264338327950288;

double sq(double x) { return x * x; }

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration
// on the Legendre recurrence.
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) : x(n), w(n) {
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
    }
};

template <typename F>
double gauss32(F&& f, double a, double b) {
    static const GaussRule rule(32);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < 32; ++k) acc += rule.w[k] * f(mid + half * rule.x[k]);
    return acc * half;
}

std::optional<double> finite_or_empty(const EnergyValue& e) {
    if (e.is_finite()) return e.value();
    return std::nullopt;
}

// Richardson fit c(N) = c_inf + a N^(-beta) through the last three levels.
struct Extrapolation {
    double value;
    double beta;
};

std::optional<Extrapolation> richardson(const std::vector<double>& ns,
                                        const std::vector<double>& cs) {
    const std::size_t m = cs.size();
    if (m < 3) return std::nullopt;
    const double n1 = ns[m - 3], n2 = ns[m - 2], n3 = ns[m - 1];
    const double c1 = cs[m - 3], c2 = cs[m - 2], c3 = cs[m - 1];
    const double d12 = c1 - c2, d23 = c2 - c3;
    if (d12 == 0.0 || d23 == 0.0) return std::nullopt;
    if ((d12 > 0) != (d23 > 0)) return std::nullopt;  // non-monotone
    const double r = d12 / d23;
    if (!(r > 1.0)) return std::nullopt;  // differences must decay
    auto ratio = [&](double beta) {
        const double a = std::pow(n1, -beta), b = std::pow(n2, -beta),
                     c = std::pow(n3, -beta);
        return (a - b) / (b - c);
    };
    double lo = 0.02, hi = 8.0;
    if ((ratio(lo) - r) * (ratio(hi) - r) > 0.0) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((ratio(mid) - r) * (ratio(lo) - r) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double beta = 0.5 * (lo + hi);
    const double b2 = std::pow(n2, -beta), b3 = std::pow(n3, -beta);
    const double a = d23 / (b2 - b3);
    return Extrapolation{c3 - a * b3, beta};
}

}  // namespace

std::pair<SetSpec, Scheme> resolve_discretization(const SetSpec& spec, double p,
                                                  Scheme requested) {
    if (requested != Scheme::native) return {spec, requested};
    if (std::holds_alternative<SphereSpec>(spec.v)) return {spec, Scheme::boundary};
    if (const auto* b = std::get_if<BallSpec>(&spec.v)) {
        if (b->dim >= 2 && p <= b->dim - 2.0) {
            return {SetSpec::sphere(b->dim, b->center, b->radius),
                    Scheme::boundary};
        }
        return {spec, Scheme::grid};
    }
    return {spec, Scheme::grid};
}

CapacityResult estimate_capacity(const SetSpec& spec, double p,
                                 const std::vector<int>& ladder, Scheme scheme,
                                 const SolverConfig& cfg) {
    validate(spec);
    if (ladder.empty())
        throw std::invalid_argument("estimate_capacity: empty ladder");
    CapacityResult out;
    out.p = p;
    const int n_ambient = spec.ambient_dim();
    if (p >= n_ambient) {
        // capacity vanishes for p >= n; no solve is attempted
        out.capacity = 0.0;
        out.capacity_finest = 0.0;
        out.energy = EnergyValue::infinite(RieszExponent(p));
        out.note = "p >= ambient dimension: capacity is 0";
        return out;
    }
    const RieszExponent exponent(p);
    auto [dspec, dscheme] = resolve_discretization(spec, p, scheme);

    std::vector<double> ns, energies;
    bool all_finite = true;
    for (int target : ladder) {
        const NodeCloud cloud = discretize(dspec, target, dscheme);
        const EquilibriumResult sol = solve_equilibrium(exponent, cloud, cfg);
        const double cap = capacity_from_energy(exponent, sol.energy);
        LevelResult lvl;
        lvl.requested_nodes = target;
        lvl.nodes = cloud.size();
        lvl.capacity = cap;
        lvl.energy = finite_or_empty(sol.energy);
        lvl.gap = sol.gap;
        lvl.iterations = sol.iterations;
        lvl.converged = sol.converged;
        out.levels.push_back(lvl);
        out.diag_used = sol.diag_used;
        out.energy = sol.energy;
        ns.push_back(static_cast<double>(cloud.size()));
        all_finite = all_finite && sol.energy.is_finite();
        if (sol.energy.is_finite()) energies.push_back(sol.energy.value());
    }
    out.capacity_finest = out.levels.back().capacity;
    out.capacity = out.capacity_finest;
    // Richardson in 1/N runs on the energy: its finite-N defect (missing
    // diagonal mass, quadrature bias) follows a power law in N, while the
    // capacity map V^(-1/p) would amplify it by e^(1/|p|)-type factors near
    // p = 0 and break the ansatz.
    if (all_finite) {
        if (const auto fit = richardson(ns, energies)) {
            const bool valid = !exponent.is_positive() || fit->value > 0.0;
            if (valid) {
                out.capacity = capacity_from_energy(
                    exponent,
                    EnergyValue::finite(fit->value, exponent,
                                        EnergySource::solver));
                out.extrapolated = true;
                out.extrapolation_order = fit->beta;
            }
        }
    }
    return out;
}

CurveTable capacity_curve(const SetSpec& spec, const std::vector<double>& p_grid,
                          const std::vector<int>& ladder, Scheme scheme,
                          const SolverConfig& cfg, bool keep_solutions) {
    validate(spec);
    for (std::size_t i = 1; i < p_grid.size(); ++i)
        if (!(p_grid[i] > p_grid[i - 1]))
            throw std::invalid_argument("capacity_curve: p grid must be strictly increasing");
    CurveTable table;
    table.set_desc = spec.describe();
    table.scheme_desc = scheme == Scheme::grid
                            ? "grid"
                            : (scheme == Scheme::boundary ? "boundary" : "native");
    for (double p : p_grid) {
        CurveRow row;
        row.p = p;
        if (p >= spec.ambient_dim()) {
            row.capacity = 0.0;
            row.closed_form = closed_form_capacity(spec, p);
            table.rows.push_back(row);
            continue;
        }
        const auto est = estimate_capacity(spec, p, ladder, scheme, cfg);
        row.capacity = est.capacity;
        if (!est.levels.empty()) {
            row.energy = est.levels.back().energy;
            row.gap = est.levels.back().gap;
            row.iterations = est.levels.back().iterations;
            row.nodes = est.levels.back().nodes;
        }
        row.closed_form = closed_form_capacity(spec, p);
        if (keep_solutions) {
            auto [dspec, dscheme] = resolve_discretization(spec, p, scheme);
            auto cloud = std::make_shared<NodeCloud>(
                discretize(dspec, ladder.back(), dscheme));
            const EquilibriumResult sol =
                solve_equilibrium(RieszExponent(p), *cloud, cfg);
            row.cloud = cloud;
            row.weights = sol.weights;
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string curve_to_csv(const CurveTable& table) {
    std::ostringstream os;
    os << "p,capacity,energy,gap,iterations,N,closed_form\n";
    for (const auto& r : table.rows) {
        os << format_double(r.p) << ',' << format_double(r.capacity) << ',';
        os << (r.energy ? format_double(*r.energy) : "inf") << ',';
        os << format_double(r.gap) << ',' << r.iterations << ',' << r.nodes
           << ',';
        if (r.closed_form) os << format_double(*r.closed_form);
        os << '\n';
    }
    return os.str();
}

std::string curve_to_json(const CurveTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
        ordered_json jr;
        jr["p"] = r.p;
        jr["capacity"] = r.capacity;
        if (r.energy)
            jr["energy"] = *r.energy;
        else
            jr["energy"] = "inf";
        jr["gap"] = r.gap;
        jr["iterations"] = r.iterations;
        jr["N"] = r.nodes;
        if (r.closed_form)
            jr["closed_form"] = *r.closed_form;
        else
            jr["closed_form"] = nullptr;
        rows.push_back(jr);
    }
    ordered_json j;
    j["set"] = table.set_desc;
    j["scheme"] = table.scheme_desc;
    j["rows"] = rows;
    return j.dump(2);
}

MonotonicityReport monotonicity_check(const CurveTable& curve, double slack) {
    if (curve.rows.size() < 2)
        throw std::invalid_argument("monotonicity_check: need >= 2 rows");
    MonotonicityReport rep;
    rep.passed = true;
    for (std::size_t i = 0; i + 1 < curve.rows.size(); ++i) {
        const auto& lo = curve.rows[i];
        const auto& hi = curve.rows[i + 1];
        MonotonicityReport::PairCheck c;
        c.p_lo = lo.p;
        c.p_hi = hi.p;
        c.cap_lo = lo.capacity;
        c.cap_hi = hi.capacity;
        c.ok = lo.capacity >= hi.capacity - slack * lo.capacity;
        rep.pair_checks.push_back(c);
        rep.passed = rep.passed && c.ok;
    }
    // exact discrete ordering on fixed weights (0 < p < q): the off-diagonal
    // double sum is a power mean against a sub-probability measure, so
    // V_p^(1/p) <= V_q^(1/q) holds with no tolerance beyond roundoff
    for (std::size_t i = 0; i < curve.rows.size(); ++i) {
        const auto& a = curve.rows[i];
        if (!a.cloud || !a.weights || !(a.p > 0.0)) continue;
        for (std::size_t j = i + 1; j < curve.rows.size(); ++j) {
            const auto& b = curve.rows[j];
            if (!(b.p > 0.0)) continue;
            const auto va = cross_energy(a.p, *a.cloud, *a.weights);
            const auto vb = cross_energy(b.p, *a.cloud, *a.weights);
            if (!va.is_finite() || !vb.is_finite()) continue;
            MonotonicityReport::JensenCheck jc;
            jc.p_lo = a.p;
            jc.p_hi = b.p;
            jc.lhs = std::pow(va.value(), 1.0 / a.p);
            jc.rhs = std::pow(vb.value(), 1.0 / b.p);
            jc.ok = jc.lhs <= jc.rhs * (1.0 + 1e-12);
            rep.jensen_checks.push_back(jc);
            rep.passed = rep.passed && jc.ok;
        }
    }
    return rep;
}

DiameterLimitReport diameter_limit_check(const SetSpec& spec,
                                         const std::vector<double>& p_list,
                                         const std::vector<int>& ladder,
                                         Scheme scheme, const SolverConfig& cfg,
                                         double equality_tol) {
    for (double p : p_list)
        if (!(p < 0.0))
            throw std::invalid_argument("diameter_limit_check: requires p < 0");
    DiameterLimitReport rep;
    // diameter of the discretized set at the finest level (p-independent for
    // grid/boundary clouds of negative-p runs)
    auto [dspec, dscheme] = resolve_discretization(spec, p_list.front(), scheme);
    const NodeCloud finest = discretize(dspec, ladder.back(), dscheme);
    rep.diam = diameter(finest);
    const bool one_dimensional = spec.ambient_dim() == 1;
    rep.passed = true;
    for (double p : p_list) {
        const auto est = estimate_capacity(spec, p, ladder, scheme, cfg);
        DiameterLimitReport::Row row;
        row.p = p;
        row.capacity = est.capacity_finest;
        row.ratio = est.capacity_finest / rep.diam;
        row.lower_bound = std::pow(2.0, 1.0 / p);
        // slack covers the solver's gap tolerance at the discrete optimum
        row.within_bounds = row.ratio >= row.lower_bound * (1.0 - 1e-6) &&
                            row.ratio <= 1.0 + 1e-6;
        if (one_dimensional && p <= -1.0) {
            row.equality_ok =
                std::abs(row.ratio - row.lower_bound) <= equality_tol * row.lower_bound;
            rep.passed = rep.passed && *row.equality_ok;
        }
        rep.passed = rep.passed && row.within_bounds;
        rep.rows.push_back(row);
    }
    return rep;
}

VolumeLimitReport volume_limit_estimate(const SetSpec& spec,
                                        const std::vector<double>& p_sequence,
                                        const std::vector<int>& ladder,
                                        CapacitySource source, Scheme scheme,
                                        const SolverConfig& cfg) {
    if (p_sequence.empty())
        throw std::invalid_argument("volume_limit_estimate: empty p sequence");
    const int n = spec.ambient_dim();
    for (std::size_t i = 0; i < p_sequence.size(); ++i) {
        if (!(p_sequence[i] < n))
            throw std::invalid_argument("volume_limit_estimate: requires p < n");
        if (i > 0 && !(p_sequence[i] > p_sequence[i - 1]))
            throw std::invalid_argument(
                "volume_limit_estimate: p sequence must increase");
    }
    VolumeLimitReport rep;
    const double area = sphere_area(n);
    for (double p : p_sequence) {
        double cap;
        if (source == CapacitySource::closed_form) {
            const auto cf = closed_form_capacity(spec, p);
            if (!cf)
                throw std::invalid_argument(
                    "volume_limit_estimate: no closed form for this set");
            cap = *cf;
        } else {
            cap = estimate_capacity(spec, p, ladder, scheme, cfg).capacity;
        }
        VolumeLimitReport::Row row;
        row.p = p;
        row.capacity = cap;
        row.volume_estimate = area * std::pow(cap, p) / (n - p);
        rep.rows.push_back(row);
    }
    // Newton polynomial in q = n - p through the (up to 3) last rows,
    // evaluated at q = 0
    std::vector<double> qs, vs;
    const std::size_t m0 = rep.rows.size() > 3 ? rep.rows.size() - 3 : 0;
    for (std::size_t i = m0; i < rep.rows.size(); ++i) {
        qs.push_back(n - rep.rows[i].p);
        vs.push_back(rep.rows[i].volume_estimate);
    }
    std::vector<double> coef(vs);  // divided differences
    for (std::size_t lvl = 1; lvl < coef.size(); ++lvl)
        for (std::size_t i = coef.size() - 1; i >= lvl; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (qs[i] - qs[i - lvl]);
    double val = coef.empty() ? 0.0 : coef.back();
    for (std::size_t i = coef.size() - 1; i-- > 0;)
        val = coef[i] + (0.0 - qs[i]) * val;
    rep.extrapolated_volume = val;

    if (auto m = spec.nominal_measure()) {
        // nominal_measure is the native-dimension measure; for full-dimensional
        // sets it is the Lebesgue measure the limit recovers
        if (!std::holds_alternative<SphereSpec>(spec.v)) {
            rep.true_measure = *m;
            rep.relative_error =
                std::abs(rep.extrapolated_volume - *m) / std::abs(*m);
        }
    }
    return rep;
}

LogLimitReport log_limit_check(const SetSpec& spec,
                               const std::vector<double>& deltas,
                               const std::vector<int>& ladder, Scheme scheme,
                               const SolverConfig& cfg, double tol) {
    for (double d : deltas)
        if (!(d > 0.0))
            throw std::invalid_argument("log_limit_check: offsets must be > 0");
    LogLimitReport rep;
    rep.cap0_numeric = estimate_capacity(spec, 0.0, ladder, scheme, cfg).capacity;
    rep.cap0_closed = closed_form_capacity(spec, 0.0);
    std::vector<double> ds(deltas);
    std::sort(ds.begin(), ds.end(), std::greater<>());
    const double cap0 = rep.cap0_closed.value_or(rep.cap0_numeric);
    for (double d : ds) {
        LogLimitReport::Row row;
        row.delta = d;
        row.cap_left = estimate_capacity(spec, -d, ladder, scheme, cfg).capacity;
        row.cap_right = estimate_capacity(spec, d, ladder, scheme, cfg).capacity;
        row.dev_left = std::abs(row.cap_left - cap0);
        row.dev_right = std::abs(row.cap_right - cap0);
        rep.rows.push_back(row);
    }
    rep.left_devs_decreasing = true;
    rep.right_le_left = true;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (i + 1 < rep.rows.size())
            rep.left_devs_decreasing = rep.left_devs_decreasing &&
                                       rep.rows[i + 1].dev_left <=
                                           rep.rows[i].dev_left + tol;
        rep.right_le_left =
            rep.right_le_left &&
            rep.rows[i].cap_right <= rep.rows[i].cap_left + std::max(tol, 1e-6);
    }
    return rep;
}

namespace {

std::vector<std::vector<double>> probe_points(const NodeCloud& cloud) {
    // five deterministic probes outside the node hull
    const int dim = cloud.dim;
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto x = cloud.node(i);
        for (int k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], x[k]);
            hi[k] = std::max(hi[k], x[k]);
        }
    }
    std::vector<double> center(dim);
    double radius = 0.0;
    for (int k = 0; k < dim; ++k) {
        center[k] = 0.5 * (lo[k] + hi[k]);
        radius = std::max(radius, 0.5 * (hi[k] - lo[k]));
    }
    if (radius == 0.0) radius = 1.0;
    std::vector<std::vector<double>> probes;
    for (int j = 0; j < 5; ++j) {
        std::vector<double> z = center;
        const int axis = j % dim;
        const double sign = (j / dim) % 2 == 0 ? 1.0 : -1.0;
        z[axis] += sign * (1.5 + 0.12 * j) * radius;
        probes.push_back(std::move(z));
    }
    return probes;
}

// max deviation between two weight vectors over the weak-* proxies
double proxy_deviation(const NodeCloud& cloud, const RieszExponent& q,
                       const std::vector<std::vector<double>>& probes,
                       const WeightVector& wa, const WeightVector& wb) {
    const int dim = cloud.dim;
    double dev = 0.0;
    for (int k = 0; k < dim; ++k) {
        double m1a = 0.0, m1b = 0.0, m2a = 0.0, m2b = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const double x = cloud.node(i)[k];
            m1a += wa[i] * x;
            m1b += wb[i] * x;
            m2a += wa[i] * x * x;
            m2b += wb[i] * x * x;
        }
        dev = std::max({dev, std::abs(m1a - m1b), std::abs(m2a - m2b)});
    }
    for (const auto& z : probes) {
        double ua = 0.0, ub = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const auto x = cloud.node(i);
            double r2 = 0.0;
            for (int k = 0; k < dim; ++k) r2 += sq(z[k] - x[k]);
            const double kv = kernel_value(q, std::sqrt(r2));
            ua += wa[i] * kv;
            ub += wb[i] * kv;
        }
        dev = std::max(dev, std::abs(ua - ub));
    }
    return dev;
}

}  // namespace

EqmContinuityReport eqm_continuity_check(const SetSpec& spec, double q,
                                         const std::vector<double>& deltas,
                                         const std::vector<int>& ladder,
                                         ApproachSide side, Scheme scheme,
                                         const SolverConfig& cfg) {
    EqmContinuityReport rep;
    rep.q = q;
    auto [dspec, dscheme] = resolve_discretization(spec, q, scheme);
    const NodeCloud cloud = discretize(dspec, ladder.back(), dscheme);
    rep.nodes = cloud.size();
    const auto probes = probe_points(cloud);
    const RieszExponent eq(q);
    // one diagonal mode, resolved at q, for every solve in the family: mixing
    // modes across p would add a delta-independent bias between the compared
    // weight vectors
    SolverConfig family_cfg = cfg;
    if (!family_cfg.diag)
        family_cfg.diag = default_diagonal(eq, cloud.native_dim);
    if (family_cfg.diag->kind == DiagonalMode::Kind::self_cell &&
        !family_cfg.diag->sigma)
        family_cfg.diag = DiagonalMode::self_cell(
            self_cell_sigma(eq, cloud.native_dim));
    const EquilibriumResult base = solve_equilibrium(eq, cloud, family_cfg);

    std::vector<double> ds(deltas);
    std::sort(ds.begin(), ds.end(), std::greater<>());
    for (double d : ds) {
        EqmContinuityReport::Row row;
        row.delta = d;
        if (side != ApproachSide::right) {
            const EquilibriumResult sol =
                solve_equilibrium(RieszExponent(q - d), cloud, family_cfg);
            row.dev_left =
                proxy_deviation(cloud, eq, probes, sol.weights, base.weights);
        }
        if (side != ApproachSide::left) {
            const EquilibriumResult sol =
                solve_equilibrium(RieszExponent(q + d), cloud, family_cfg);
            row.dev_right =
                proxy_deviation(cloud, eq, probes, sol.weights, base.weights);
        }
        rep.rows.push_back(row);
    }
    auto decreasing = [&](auto field) {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
            const auto a = field(rep.rows[i]);
            const auto b = field(rep.rows[i + 1]);
            if (a && b) ok = ok && *b <= *a;
        }
        return ok;
    };
    rep.left_decreasing =
        decreasing([](const EqmContinuityReport::Row& r) { return r.dev_left; });
    rep.right_decreasing =
        decreasing([](const EqmContinuityReport::Row& r) { return r.dev_right; });
    return rep;
}

PstarReport pstar_hypothesis_probe(const SetSpec& spec, double p, double p_star,
                                   const std::vector<int>& ladder, Scheme scheme,
                                   const SolverConfig& cfg) {
    if (!(p_star > p))
        throw std::invalid_argument("pstar_hypothesis_probe: requires p_star > p");
    PstarReport rep;
    rep.p = p;
    rep.p_star = p_star;
    auto [dspec, dscheme] = resolve_discretization(spec, p, scheme);
    std::vector<double> values;
    for (int target : ladder) {
        const NodeCloud cloud = discretize(dspec, target, dscheme);
        const EquilibriumResult sol = solve_equilibrium(RieszExponent(p), cloud, cfg);
        const EnergyValue ce = cross_energy(p_star, cloud, sol.weights);
        PstarReport::Level lvl;
        lvl.nodes = cloud.size();
        lvl.cross_energy = finite_or_empty(ce);
        if (lvl.cross_energy) values.push_back(*lvl.cross_energy);
        rep.levels.push_back(lvl);
    }
    if (values.size() != rep.levels.size() || values.size() < 2) {
        rep.classification = PstarClass::indeterminate;
        return rep;
    }
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        increasing = increasing && values[i + 1] > values[i];
    const double total_growth =
        (values.back() - values.front()) / std::abs(values.front());
    const double last_step =
        std::abs(values.back() - values[values.size() - 2]) /
        std::abs(values[values.size() - 2]);
    if (increasing && total_growth > 0.5)
        rep.classification = PstarClass::divergent;
    else if (last_step <= 0.1)
        rep.classification = PstarClass::bounded;
    else
        rep.classification = PstarClass::indeterminate;
    return rep;
}

std::optional<std::vector<double>> equilibrium_cell_masses(const SetSpec& spec,
                                                           const NodeCloud& cloud,
                                                           double p) {
    // interval with -1 < p < 1: integrate the density per cell with the
    // x = sin(theta) substitution (the integrand becomes cos(theta)^p)
    if (const auto* iv = std::get_if<IntervalSpec>(&spec.v)) {
        if (!(p > -1.0 && p < 1.0)) return std::nullopt;
        const double mid = 0.5 * (iv->a + iv->b), half = 0.5 * (iv->b - iv->a);
        const std::size_t n = cloud.size();
        // cell edges from sorted node order
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return cloud.coords[a] < cloud.coords[b];
        });
        const double bnorm = specfun::beta(0.5, 0.5 * (1.0 + p));
        std::vector<double> masses(n, 0.0);
        double left = iv->a;
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t i = order[r];
            const double right =
                r + 1 < n
                    ? 0.5 * (cloud.coords[order[r]] + cloud.coords[order[r + 1]])
                    : iv->b;
            // map to unit coordinates and clamp
            const double ta = std::clamp((left - mid) / half, -1.0, 1.0);
            const double tb = std::clamp((right - mid) / half, -1.0, 1.0);
            const double th_a = std::asin(ta), th_b = std::asin(tb);
            const double mass =
                gauss32([&](double th) { return std::pow(std::cos(th), p); },
                        th_a, th_b) /
                bnorm;
            masses[i] = mass;
            left = right;
        }
        return masses;
    }
    if (const auto* bl = std::get_if<BallSpec>(&spec.v)) {
        const int n = bl->dim;
        if (n < 2) return std::nullopt;
        if (!(p < n)) return std::nullopt;
        if (p > -2.0 && p <= n - 2.0) return std::nullopt;  // surface measure
        if (!(p > n - 2.0)) return std::nullopt;
        // volume density, radial: integrate rho over each cell by midpoint
        // subsampling (adequate for fidelity reports)
        const double bnorm = specfun::beta(0.5 * n, 0.5 * (p - n + 2.0));
        const double front = 2.0 / sphere_area(n) / bnorm;
        auto rho = [&](double r2) {
            const double t = 1.0 - r2;
            return t > 0.0 ? front * std::pow(t, -0.5 * (n - p)) : 0.0;
        };
        const std::size_t m = cloud.size();
        std::vector<double> masses(m, 0.0);
        const int sub = 12;
        for (std::size_t i = 0; i < m; ++i) {
            const auto x = cloud.node(i);
            const double h = std::pow(cloud.cell_measures[i], 1.0 / n);
            double acc = 0.0;
            if (n == 2) {
                for (int a = 0; a < sub; ++a) {
                    for (int b = 0; b < sub; ++b) {
                        const double u = x[0] - bl->center[0] +
                                         h * ((a + 0.5) / sub - 0.5);
                        const double v = x[1] - bl->center[1] +
                                         h * ((b + 0.5) / sub - 0.5);
                        const double r2 =
                            (u * u + v * v) / (bl->radius * bl->radius);
                        acc += rho(r2);
                    }
                }
                acc *= cloud.cell_measures[i] / (sub * sub);
                acc /= std::pow(bl->radius, n);  // density of the unit ball
            } else {
                double r2 = 0.0;
                for (int k = 0; k < n; ++k) r2 += sq(x[k] - bl->center[k]);
                r2 /= bl->radius * bl->radius;
                acc = rho(r2) * cloud.cell_measures[i] / std::pow(bl->radius, n);
            }
            masses[i] = acc;
        }
        // normalize the discretization residue
        double total = 0.0;
        for (double v : masses) total += v;
        if (total > 0.0)
            for (double& v : masses) v /= total;
        return masses;
    }
    if (std::holds_alternative<SphereSpec>(spec.v)) {
        const int n = spec.ambient_dim();
        if (!(p > -2.0 && p <= n - 2.0)) return std::nullopt;
        // uniform surface measure
        const double total = cloud.total_measure();
        std::vector<double> masses(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i)
            masses[i] = cloud.cell_measures[i] / total;
        return masses;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Validation suite

namespace {

void check(ValidationReport& rep, const std::string& name, bool ok,
           const std::string& detail) {
    rep.checks.push_back({name, ok, detail});
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ValidationReport run_validation() {
    ValidationReport rep;
    std::ostringstream os;

    // exact closed-form values
    struct ExactCase {
        const char* name;
        double got, want;
    };
    const double e = std::exp(1.0);
    const ExactCase exact[] = {
        {"ball_capacity(3,1) == 1", ball_capacity(3, 1.0), 1.0},
        {"ball_capacity(2,1) == 2/pi", ball_capacity(2, 1.0), 2.0 / kPi},
        {"ball_capacity(3,0) == 2/sqrt(e)", ball_capacity(3, 0.0),
         2.0 / std::sqrt(e)},
        {"ball_capacity(4,0) == e^(1/4)", ball_capacity(4, 0.0),
         std::pow(e, 0.25)},
        {"interval_capacity(0) == 1/2", interval_capacity(0.0), 0.5},
        {"interval_capacity(-1) == 1", interval_capacity(-1.0), 1.0},
        {"ball_capacity(2,-2) == sqrt(2)", ball_capacity(2, -2.0), std::sqrt(2.0)},
        {"ball_capacity(3,-2) == sqrt(2)", ball_capacity(3, -2.0), std::sqrt(2.0)},
        {"ball_capacity(4,-2) == sqrt(2)", ball_capacity(4, -2.0), std::sqrt(2.0)},
    };
    for (const auto& c : exact) {
        os.str("");
        os << "got " << format_double(c.got) << ", want " << format_double(c.want);
        check(rep, c.name, rel_close(c.got, c.want, 1e-12), os.str());
    }

    // A(n,n) m_n(B^n)^2 = |S^(n-1)|
    for (int n = 1; n <= 4; ++n) {
        const double lhs = gotz_constant(n, n) * sq(ball_volume(n));
        const double rhs = sphere_area(n);
        os.str("");
        os << "A(n,n) m_n^2 = " << format_double(lhs) << ", |S^(n-1)| = "
           << format_double(rhs);
        check(rep, "gotz identity n=" + std::to_string(n),
              rel_close(lhs, rhs, 1e-12), os.str());
    }

    // regime continuity: adjacent branch formulas agree at the boundary point
    for (int n : {2, 3, 4}) {
        // p = -2: left branch 2^(1+1/p) vs mid gamma-ratio branch
        const double left = std::exp((1.0 - 0.5) * std::log(2.0));
        const double mid = 2.0 * std::exp((specfun::log_gamma(n - 1.0 + 1.0) +
                                           specfun::log_gamma(0.5 * (n - 1)) -
                                           specfun::log_gamma(0.5 * (n + 1.0)) -
                                           specfun::log_gamma(n - 1.0)) /
                                          -2.0);
        os.str("");
        os << "2^(1+1/p) = " << format_double(left) << ", mid branch = "
           << format_double(mid);
        check(rep, "regime continuity at p=-2, n=" + std::to_string(n),
              rel_close(left, mid, 1e-9), os.str());
    }
    for (int n : {3, 4, 5}) {
        // p = n-2: mid branch vs high branch (both reduce to 1, Newtonian)
        const double pm = n - 2.0;
        const double mid = 2.0 * std::exp((specfun::log_gamma(n - 1.0 - 0.5 * pm) +
                                           specfun::log_gamma(0.5 * (n - 1)) -
                                           specfun::log_gamma(0.5 * (n - 1.0 - pm)) -
                                           specfun::log_gamma(n - 1.0)) /
                                          pm);
        const double high = std::exp((specfun::log_gamma(0.5 * n) -
                                      specfun::log_gamma(0.5 * (n - pm)) -
                                      specfun::log_gamma(1.0 + 0.5 * pm)) /
                                     pm);
        os.str("");
        os << "mid = " << format_double(mid) << ", high = " << format_double(high);
        check(rep, "regime continuity at p=n-2, n=" + std::to_string(n),
              rel_close(mid, high, 1e-9), os.str());
    }
    for (int n : {2, 3, 4}) {
        // p = 0: symmetric average of the adjacent branch cancels the slope
        const double eps = 1e-6;
        const double avg =
            0.5 * (ball_capacity(n, eps) + ball_capacity(n, -eps));
        const double at0 = ball_capacity(n, 0.0);
        os.str("");
        os << "avg(+-1e-6) = " << format_double(avg) << ", digamma value = "
           << format_double(at0);
        check(rep, "regime continuity at p=0, n=" + std::to_string(n),
              std::abs(avg - at0) <= 1e-9, os.str());
    }
    {
        const double avg = 0.5 * (interval_capacity(1e-4) + interval_capacity(-1e-4));
        os.str("");
        os << "avg(+-1e-4) = " << format_double(avg);
        check(rep, "interval gamma branch -> 1/2 as p -> 0",
              std::abs(avg - 0.5) <= 1e-6, os.str());
        const double left = std::exp(0.0);  // 2^(1+1/p) at p = -1
        const double branch = interval_capacity(std::nextafter(-1.0, 0.0));
        check(rep, "interval regime continuity at p=-1",
              rel_close(left, branch, 1e-9),
              "branch value " + format_double(branch));
    }

    // endpoint values (diameter limit) and the large-n envelope
    {
        const double cap = ball_capacity(3, -50.0);
        const double tol = 2.0 * (1.0 - std::pow(2.0, -1.0 / 50.0)) + 1e-12;
        os.str("");
        os << "cap = " << format_double(cap) << ", |cap-2| = "
           << format_double(std::abs(cap - 2.0));
        check(rep, "diameter endpoint: cap(n,-50) near 2",
              std::abs(cap - 2.0) <= tol, os.str());
    }
    for (double p : {-1.0, 0.0, 1.0}) {
        bool increasing = true, below = true;
        double prev = 0.0;
        for (int n = 2; n <= 256; n *= 2) {
            const double c = ball_capacity(n, p);
            if (n > 2 && c < prev) increasing = false;
            if (c >= std::sqrt(2.0) + 1e-3) below = false;
            prev = c;
        }
        os.str("");
        os << "cap(256, p) = " << format_double(prev);
        check(rep,
              "sqrt(2) envelope, p = " + format_double(p) +
                  ": increasing in n and below sqrt(2)+1e-3",
              increasing && below && std::abs(prev - std::sqrt(2.0)) < 5e-3,
              os.str());
    }

    // strict monotonicity of the closed-form curves (zero slack)
    for (int n = 1; n <= 4; ++n) {
        bool strict = true;
        const double plo = -6.0, phi = n - 1e-3;
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 200; ++k) {
            const double p = plo + (phi - plo) * k / 199.0;
            const double c =
                n == 1 ? interval_capacity(p) : ball_capacity(n, p);
            if (!(c < prev)) strict = false;
            prev = c;
        }
        check(rep, "strict monotonicity on 200-point grid, n=" + std::to_string(n),
              strict, "");
    }

    rep.all_passed = true;
    for (const auto& c : rep.checks) rep.all_passed = rep.all_passed && c.passed;
    return rep;
}

// ---------------------------------------------------------------------------
// JSON emission

namespace {

ordered_json diag_json(const std::optional<DiagonalMode>& d) {
    if (!d) return nullptr;
    ordered_json j;
    j["mode"] = d->is_exclude() ? "exclude" : "self-cell";
    if (d->sigma) j["sigma"] = *d->sigma;
    return j;
}

}  // namespace

std::string to_json_string(const CapacityResult& r) {
    ordered_json j;
    j["p"] = r.p;
    j["capacity"] = r.capacity;
    j["capacity_finest"] = r.capacity_finest;
    j["extrapolated"] = r.extrapolated;
    if (r.extrapolation_order) j["extrapolation_order"] = *r.extrapolation_order;
    if (r.energy) {
        if (r.energy->is_finite())
            j["energy"] = r.energy->value();
        else
            j["energy"] = "inf";
    }
    ordered_json levels = ordered_json::array();
    for (const auto& l : r.levels) {
        ordered_json jl;
        jl["N"] = l.nodes;
        jl["capacity"] = l.capacity;
        jl["energy"] = l.energy ? ordered_json(*l.energy) : ordered_json("inf");
        jl["gap"] = l.gap;
        jl["iterations"] = l.iterations;
        jl["converged"] = l.converged;
        levels.push_back(jl);
    }
    j["levels"] = levels;
    j["diag"] = diag_json(r.diag_used);
    if (!r.note.empty()) j["note"] = r.note;
    return j.dump(2);
}

std::string to_json_string(const MonotonicityReport& r) {
    ordered_json j;
    j["passed"] = r.passed;
    ordered_json pairs = ordered_json::array();
    for (const auto& c : r.pair_checks)
        pairs.push_back({{"p_lo", c.p_lo},
                         {"p_hi", c.p_hi},
                         {"cap_lo", c.cap_lo},
                         {"cap_hi", c.cap_hi},
                         {"ok", c.ok}});
    j["pair_checks"] = pairs;
    ordered_json jens = ordered_json::array();
    for (const auto& c : r.jensen_checks)
        jens.push_back({{"p_lo", c.p_lo},
                        {"p_hi", c.p_hi},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"ok", c.ok}});
    j["jensen_checks"] = jens;
    return j.dump(2);
}

std::string to_json_string(const DiameterLimitReport& r) {
    ordered_json j;
    j["diameter"] = r.diam;
    j["passed"] = r.passed;
    ordered_json rows = ordered_json::array();
    for (const auto& c : r.rows) {
        ordered_json jr{{"p", c.p},
                        {"capacity", c.capacity},
                        {"ratio", c.ratio},
                        {"lower_bound", c.lower_bound},
                        {"within_bounds", c.within_bounds}};
        if (c.equality_ok) jr["equality_ok"] = *c.equality_ok;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    return j.dump(2);
}

std::string to_json_string(const VolumeLimitReport& r) {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const auto& c : r.rows)
        rows.push_back({{"p", c.p},
                        {"capacity", c.capacity},
                        {"volume_estimate", c.volume_estimate}});
    j["rows"] = rows;
    j["extrapolated_volume"] = r.extrapolated_volume;
    if (r.true_measure) j["true_measure"] = *r.true_measure;
    if (r.relative_error) j["relative_error"] = *r.relative_error;
    return j.dump(2);
}

std::string to_json_string(const LogLimitReport& r) {
    ordered_json j;
    j["cap0_numeric"] = r.cap0_numeric;
    if (r.cap0_closed) j["cap0_closed"] = *r.cap0_closed;
    ordered_json rows = ordered_json::array();
    for (const auto& c : r.rows)
        rows.push_back({{"delta", c.delta},
                        {"cap_left", c.cap_left},
                        {"cap_right", c.cap_right},
                        {"dev_left", c.dev_left},
                        {"dev_right", c.dev_right}});
    j["rows"] = rows;
    j["left_devs_decreasing"] = r.left_devs_decreasing;
    j["right_le_left"] = r.right_le_left;
    return j.dump(2);
}

std::string to_json_string(const EqmContinuityReport& r) {
    ordered_json j;
    j["q"] = r.q;
    j["N"] = r.nodes;
    ordered_json rows = ordered_json::array();
    for (const auto& c : r.rows) {
        ordered_json jr{{"delta", c.delta}};
        if (c.dev_left) jr["dev_left"] = *c.dev_left;
        if (c.dev_right) jr["dev_right"] = *c.dev_right;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    j["left_decreasing"] = r.left_decreasing;
    j["right_decreasing"] = r.right_decreasing;
    return j.dump(2);
}

std::string to_json_string(const PstarReport& r) {
    ordered_json j;
    j["p"] = r.p;
    j["p_star"] = r.p_star;
    ordered_json rows = ordered_json::array();
    for (const auto& l : r.levels)
        rows.push_back(
            {{"N", l.nodes},
             {"cross_energy",
              l.cross_energy ? ordered_json(*l.cross_energy) : ordered_json("inf")}});
    j["levels"] = rows;
    switch (r.classification) {
        case PstarClass::bounded: j["classification"] = "bounded"; break;
        case PstarClass::divergent: j["classification"] = "divergent"; break;
        default: j["classification"] = "indeterminate"; break;
    }
    return j.dump(2);
}

std::string to_json_string(const ValidationReport& r) {
    ordered_json j;
    j["all_passed"] = r.all_passed;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    return j.dump(2);
}

}  // namespace rieszcap
