#include "rieszcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rieszcap/specfun.hpp"

namespace rieszcap {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double sq(double x) { return x * x; }

}  // namespace

double unit_ball_volume(int d) {
    if (d < 0) throw std::domain_error("unit_ball_volume: d must be >= 0");
    if (d == 0) return 1.0;
    // omega_d = pi^(d/2) / Gamma(d/2 + 1)
    return std::exp(0.5 * d * std::log(kPi) - specfun::log_gamma(0.5 * d + 1.0));
}

double unit_sphere_area(int d) {
    if (d < 1) throw std::domain_error("unit_sphere_area: d must be >= 1");
    // |S^(d-1)| = 2 pi^(d/2) / Gamma(d/2)
    return 2.0 * std::exp(0.5 * d * std::log(kPi) - specfun::log_gamma(0.5 * d));
}

// ---------------------------------------------------------------------------
// SetSpec

SetSpec SetSpec::ball(int dim, std::vector<double> center, double radius) {
    SetSpec s{BallSpec{dim, std::move(center), radius}};
    validate(s);
    return s;
}

SetSpec SetSpec::sphere(int dim, std::vector<double> center, double radius) {
    SetSpec s{SphereSpec{dim, std::move(center), radius}};
    validate(s);
    return s;
}

SetSpec SetSpec::interval(double a, double b) {
    SetSpec s{IntervalSpec{a, b}};
    validate(s);
    return s;
}

SetSpec SetSpec::box(std::vector<double> lo, std::vector<double> hi) {
    const int d = static_cast<int>(lo.size());
    SetSpec s{BoxSpec{d, std::move(lo), std::move(hi)}};
    validate(s);
    return s;
}

SetSpec SetSpec::points(std::vector<std::vector<double>> coords) {
    const int d = coords.empty() ? 0 : static_cast<int>(coords.front().size());
    SetSpec s{PointsSpec{d, std::move(coords)}};
    validate(s);
    return s;
}

SetSpec SetSpec::set_union(std::vector<SetSpec> parts) {
    SetSpec s{UnionSpec{std::move(parts)}};
    validate(s);
    return s;
}

int SetSpec::ambient_dim() const {
    return std::visit(
        [](const auto& spec) -> int {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, IntervalSpec>)
                return 1;
            else if constexpr (std::is_same_v<T, UnionSpec>)
                return spec.parts.empty() ? 0 : spec.parts.front().ambient_dim();
            else
                return spec.dim;
        },
        v);
}

std::optional<double> SetSpec::nominal_measure() const {
    return std::visit(
        [](const auto& spec) -> std::optional<double> {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, BallSpec>) {
                return unit_ball_volume(spec.dim) * std::pow(spec.radius, spec.dim);
            } else if constexpr (std::is_same_v<T, SphereSpec>) {
                return unit_sphere_area(spec.dim) *
                       std::pow(spec.radius, spec.dim - 1);
            } else if constexpr (std::is_same_v<T, IntervalSpec>) {
                return spec.b - spec.a;
            } else if constexpr (std::is_same_v<T, BoxSpec>) {
                double m = 1.0;
                for (int k = 0; k < spec.dim; ++k) m *= spec.hi[k] - spec.lo[k];
                return m;
            } else if constexpr (std::is_same_v<T, UnionSpec>) {
                double m = 0.0;
                for (const auto& p : spec.parts) {
                    auto pm = p.nominal_measure();
                    if (!pm) return std::nullopt;
                    m += *pm;
                }
                return m;
            } else {
                return std::nullopt;  // point sets
            }
        },
        v);
}

std::string SetSpec::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& spec) {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, BallSpec>)
                os << "ball(dim=" << spec.dim << ",r=" << spec.radius << ")";
            else if constexpr (std::is_same_v<T, SphereSpec>)
                os << "sphere(dim=" << spec.dim << ",r=" << spec.radius << ")";
            else if constexpr (std::is_same_v<T, IntervalSpec>)
                os << "interval(" << spec.a << "," << spec.b << ")";
            else if constexpr (std::is_same_v<T, BoxSpec>)
                os << "box(dim=" << spec.dim << ")";
            else if constexpr (std::is_same_v<T, PointsSpec>)
                os << "points(n=" << spec.coords.size() << ")";
            else
                os << "union(" << spec.parts.size() << " parts)";
        },
        v);
    return os.str();
}

void validate(const SetSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BallSpec> ||
                          std::is_same_v<T, SphereSpec>) {
                if (s.dim < 1) throw std::invalid_argument("set: dim must be >= 1");
                if (static_cast<int>(s.center.size()) != s.dim)
                    throw std::invalid_argument("set: center size != dim");
                if (!(s.radius > 0.0))
                    throw std::invalid_argument("set: radius must be > 0");
                if constexpr (std::is_same_v<T, SphereSpec>) {
                    if (s.dim < 2)
                        throw std::invalid_argument(
                            "set: sphere requires ambient dim >= 2");
                }
            } else if constexpr (std::is_same_v<T, IntervalSpec>) {
                if (!(s.a < s.b))
                    throw std::invalid_argument("set: interval requires a < b");
            } else if constexpr (std::is_same_v<T, BoxSpec>) {
                if (s.dim < 1 || s.lo.size() != s.hi.size() ||
                    static_cast<int>(s.lo.size()) != s.dim)
                    throw std::invalid_argument("set: box corner size mismatch");
                for (int k = 0; k < s.dim; ++k)
                    if (!(s.lo[k] < s.hi[k]))
                        throw std::invalid_argument(
                            "set: box corners must be ordered componentwise");
            } else if constexpr (std::is_same_v<T, PointsSpec>) {
                if (s.coords.empty())
                    throw std::invalid_argument("set: point set must be nonempty");
                for (const auto& c : s.coords)
                    if (static_cast<int>(c.size()) != s.dim)
                        throw std::invalid_argument(
                            "set: point coordinate size mismatch");
            } else if constexpr (std::is_same_v<T, UnionSpec>) {
                if (s.parts.empty())
                    throw std::invalid_argument("set: union must be nonempty");
                const int d = s.parts.front().ambient_dim();
                for (const auto& p : s.parts) {
                    validate(p);
                    if (p.ambient_dim() != d)
                        throw std::invalid_argument(
                            "set: union parts must share ambient dimension");
                }
            }
        },
        spec.v);
}

SetSpec scaled(const SetSpec& spec, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("scaled: factor must be > 0");
    SetSpec out = spec;
    std::visit(
        [s](auto& sp) {
            using T = std::decay_t<decltype(sp)>;
            if constexpr (std::is_same_v<T, BallSpec> ||
                          std::is_same_v<T, SphereSpec>) {
                for (double& c : sp.center) c *= s;
                sp.radius *= s;
            } else if constexpr (std::is_same_v<T, IntervalSpec>) {
                sp.a *= s;
                sp.b *= s;
            } else if constexpr (std::is_same_v<T, BoxSpec>) {
                for (double& c : sp.lo) c *= s;
                for (double& c : sp.hi) c *= s;
            } else if constexpr (std::is_same_v<T, PointsSpec>) {
                for (auto& pt : sp.coords)
                    for (double& c : pt) c *= s;
            } else if constexpr (std::is_same_v<T, UnionSpec>) {
                for (auto& p : sp.parts) p = scaled(p, s);
            }
        },
        out.v);
    return out;
}

// ---------------------------------------------------------------------------
// NodeCloud

double NodeCloud::distance(std::size_t i, std::size_t j) const {
    const double* a = coords.data() + i * static_cast<std::size_t>(dim);
    const double* b = coords.data() + j * static_cast<std::size_t>(dim);
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += sq(a[k] - b[k]);
    return std::sqrt(s);
}

double NodeCloud::total_measure() const {
    return std::accumulate(cell_measures.begin(), cell_measures.end(), 0.0);
}

NodeCloud NodeCloud::with_extra_nodes(
    const std::vector<std::vector<double>>& nodes,
    const std::vector<double>& measures) const {
    if (nodes.size() != measures.size())
        throw std::invalid_argument("with_extra_nodes: size mismatch");
    NodeCloud out = *this;
    const double omega = unit_ball_volume(std::max(native_dim, 1));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (static_cast<int>(nodes[i].size()) != dim)
            throw std::invalid_argument("with_extra_nodes: dim mismatch");
        if (!(measures[i] > 0.0))
            throw std::invalid_argument("with_extra_nodes: measures must be > 0");
        out.coords.insert(out.coords.end(), nodes[i].begin(), nodes[i].end());
        out.cell_measures.push_back(measures[i]);
        const double h =
            std::pow(measures[i] / omega, 1.0 / std::max(native_dim, 1));
        out.mesh_size = std::max(out.mesh_size, h);
    }
    return out;
}

double diameter(const NodeCloud& cloud) {
    if (cloud.size() == 0)
        throw std::invalid_argument("diameter: empty cloud");
    double best = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j)
            best = std::max(best, cloud.distance(i, j));
    return best;
}

// ---------------------------------------------------------------------------
// Discretizers

namespace {

double cell_radius(double measure, int d) {
    return std::pow(measure / unit_ball_volume(d), 1.0 / d);
}

NodeCloud make_cloud(int dim, int native_dim, std::vector<double> coords,
                     std::vector<double> measures) {
    NodeCloud c;
    c.dim = dim;
    c.native_dim = native_dim;
    c.coords = std::move(coords);
    c.cell_measures = std::move(measures);
    double h = 0.0;
    if (native_dim >= 1) {
        for (double m : c.cell_measures)
            h = std::max(h, cell_radius(m, native_dim));
    } else {
        // point sets: characteristic scale = half the minimum separation
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                dmin = std::min(dmin, c.distance(i, j));
        h = std::isfinite(dmin) ? 0.5 * dmin : 1.0;
    }
    c.mesh_size = h;
    return c;
}

NodeCloud interval_grid(const IntervalSpec& s, int n) {
    const double h = (s.b - s.a) / n;
    std::vector<double> xs(n), ms(n, h);
    for (int i = 0; i < n; ++i) xs[i] = s.a + (i + 0.5) * h;
    return make_cloud(1, 1, std::move(xs), std::move(ms));
}

NodeCloud box_grid(const BoxSpec& s, int target) {
    const int d = s.dim;
    double vol = 1.0;
    for (int k = 0; k < d; ++k) vol *= s.hi[k] - s.lo[k];
    double h = std::pow(vol / target, 1.0 / d);
    std::vector<int> counts(d);
    long total = 0;
    for (int iter = 0; iter < 16; ++iter) {
        total = 1;
        for (int k = 0; k < d; ++k) {
            counts[k] = std::max<int>(
                1, static_cast<int>(std::llround((s.hi[k] - s.lo[k]) / h)));
            total *= counts[k];
        }
        if (total >= (target + 1) / 2 && total <= 2L * target) break;
        h *= std::pow(static_cast<double>(total) / target, 1.0 / d);
    }
    std::vector<double> steps(d);
    double cell = 1.0;
    for (int k = 0; k < d; ++k) {
        steps[k] = (s.hi[k] - s.lo[k]) / counts[k];
        cell *= steps[k];
    }
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(total) * d);
    std::vector<int> idx(d, 0);
    for (long c = 0; c < total; ++c) {
        for (int k = 0; k < d; ++k)
            coords.push_back(s.lo[k] + (idx[k] + 0.5) * steps[k]);
        for (int k = d - 1; k >= 0; --k) {
            if (++idx[k] < counts[k]) break;
            idx[k] = 0;
        }
    }
    std::vector<double> ms(static_cast<std::size_t>(total), cell);
    return make_cloud(d, d, std::move(coords), std::move(ms));
}

// Exact area and centroid of the axis-aligned cell [x0,x1]x[y0,y1]
// intersected with the disk of radius R centered at the origin. The strip
// length f(x) = max(0, min(y1, g(x)) - max(y0, -g(x))), g = sqrt(R^2 - x^2),
// and its first moments are integrated piecewise; pieces are split at the
// x-values where g crosses y1 or -g crosses y0 so each piece is smooth.
struct CellClip {
    double area = 0.0;
    double cx = 0.0, cy = 0.0;  // centroid, valid when area > 0
};

CellClip disk_cell_clip(double x0, double x1, double y0, double y1, double R) {
    CellClip out;
    const double lo = std::max(x0, -R), hi = std::min(x1, R);
    if (!(hi > lo)) return out;
    struct F3 {
        double len, xlen, ymom;
    };
    auto strip = [&](double x) -> F3 {
        const double g2 = R * R - x * x;
        const double g = g2 > 0.0 ? std::sqrt(g2) : 0.0;
        const double top = std::min(y1, g), bot = std::max(y0, -g);
        if (!(top > bot)) return {0.0, 0.0, 0.0};
        return {top - bot, x * (top - bot), 0.5 * (top * top - bot * bot)};
    };
    std::vector<double> cuts{lo, hi};
    auto add_cut = [&](double y) {
        if (std::abs(y) < R) {
            const double x = std::sqrt(R * R - y * y);
            if (x > lo && x < hi) cuts.push_back(x);
            if (-x > lo && -x < hi) cuts.push_back(-x);
        }
    };
    add_cut(y1);
    add_cut(y0);
    if (lo < 0.0 && hi > 0.0) cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());

    auto simpson = [](double a, double b, const F3& fa, const F3& fm,
                      const F3& fb) {
        const double c = (b - a) / 6.0;
        return F3{c * (fa.len + 4.0 * fm.len + fb.len),
                  c * (fa.xlen + 4.0 * fm.xlen + fb.xlen),
                  c * (fa.ymom + 4.0 * fm.ymom + fb.ymom)};
    };
    struct Rec {
        double a, b;
        F3 fa, fm, fb, whole;
        int depth;
    };
    double area = 0.0, mx = 0.0, my = 0.0;
    // relative to the cell area so refinement decisions are scale-invariant
    const double tol = 1e-13 * (x1 - x0) * (y1 - y0);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        if (!(b > a)) continue;
        std::vector<Rec> stack;
        const F3 fa = strip(a), fb = strip(b), fm = strip(0.5 * (a + b));
        stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0});
        while (!stack.empty()) {
            Rec r = stack.back();
            stack.pop_back();
            const double m = 0.5 * (r.a + r.b);
            const F3 fl = strip(0.5 * (r.a + m));
            const F3 fr = strip(0.5 * (m + r.b));
            const F3 left = simpson(r.a, m, r.fa, fl, r.fm);
            const F3 right = simpson(m, r.b, r.fm, fr, r.fb);
            if (r.depth >= 40 ||
                std::abs(left.len + right.len - r.whole.len) < tol) {
                area += left.len + right.len +
                        (left.len + right.len - r.whole.len) / 15.0;
                mx += left.xlen + right.xlen;
                my += left.ymom + right.ymom;
            } else {
                stack.push_back({r.a, m, r.fa, fl, r.fm, left, r.depth + 1});
                stack.push_back({m, r.b, r.fm, fr, r.fb, right, r.depth + 1});
            }
        }
    }
    out.area = area;
    if (area > 0.0) {
        out.cx = mx / area;
        out.cy = my / area;
    }
    return out;
}

// Lattice grid clipped to a ball. In 2-D, straddling cells get their exact
// clipped area, placed at the clipped region's centroid, so the discretized
// set reaches the rim (where the high-regime equilibrium densities
// concentrate) without shifting mass outward. In other dimensions only
// center-inside cells are kept, with full cell measure.
NodeCloud ball_grid(const BallSpec& s, int target) {
    const int d = s.dim;
    if (d == 1)
        return interval_grid(
            IntervalSpec{s.center[0] - s.radius, s.center[0] + s.radius}, target);
    const double R = s.radius;
    const double vol = unit_ball_volume(d) * std::pow(R, d);
    double h = std::pow(vol / target, 1.0 / d);

    struct Cell {
        std::vector<double> x;
        double m;
    };
    std::vector<Cell> cells;
    auto build = [&](double step) {
        cells.clear();
        const int M = static_cast<int>(std::ceil(R / step + 0.5));
        std::vector<int> idx(d, -M);
        const long axis = 2L * M;
        long total = 1;
        for (int k = 0; k < d; ++k) total *= axis;
        std::vector<double> rel(d);
        for (long c = 0; c < total; ++c) {
            double r2 = 0.0;
            for (int k = 0; k < d; ++k) {
                rel[k] = (idx[k] + 0.5) * step;
                r2 += sq(rel[k]);
            }
            if (d == 2) {
                const double half = 0.5 * step;
                // fully inside cells keep the lattice midpoint and exact h^2
                const double corner =
                    std::hypot(std::abs(rel[0]) + half, std::abs(rel[1]) + half);
                if (corner <= R) {
                    cells.push_back(Cell{
                        {s.center[0] + rel[0], s.center[1] + rel[1]},
                        step * step});
                } else {
                    const CellClip clip =
                        disk_cell_clip(rel[0] - half, rel[0] + half,
                                       rel[1] - half, rel[1] + half, R);
                    if (clip.area > 1e-12 * step * step) {
                        cells.push_back(Cell{
                            {s.center[0] + clip.cx, s.center[1] + clip.cy},
                            clip.area});
                    }
                }
            } else {
                if (r2 <= R * R) {
                    Cell cell;
                    cell.m = std::pow(step, d);
                    cell.x.resize(d);
                    for (int k = 0; k < d; ++k) cell.x[k] = s.center[k] + rel[k];
                    cells.push_back(std::move(cell));
                }
            }
            for (int k = d - 1; k >= 0; --k) {
                if (++idx[k] < M) break;
                idx[k] = -M;
            }
        }
    };

    for (int iter = 0; iter < 16; ++iter) {
        build(h);
        const long count = static_cast<long>(cells.size());
        if (count >= (target + 1) / 2 && count <= 2L * target) break;
        if (count == 0) {
            h *= 0.5;
            continue;
        }
        h *= std::pow(static_cast<double>(count) / target, 1.0 / d);
    }
    if (cells.empty()) throw std::logic_error("ball_grid: discretization failed");

    std::vector<double> coords, ms;
    coords.reserve(cells.size() * d);
    ms.reserve(cells.size());
    for (const auto& c : cells) {
        coords.insert(coords.end(), c.x.begin(), c.x.end());
        ms.push_back(c.m);
    }
    return make_cloud(d, d, std::move(coords), std::move(ms));
}

NodeCloud circle_boundary(const SphereSpec& s, int n) {
    std::vector<double> coords;
    coords.reserve(2 * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * kPi * k / n;
        coords.push_back(s.center[0] + s.radius * std::cos(th));
        coords.push_back(s.center[1] + s.radius * std::sin(th));
    }
    std::vector<double> ms(n, 2.0 * kPi * s.radius / n);
    return make_cloud(2, 1, std::move(coords), std::move(ms));
}

NodeCloud fibonacci_sphere(const SphereSpec& s, int n) {
    // golden-angle spiral; z offset by half a band keeps points off the poles
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    std::vector<double> coords;
    coords.reserve(3 * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden_angle * k;
        coords.push_back(s.center[0] + s.radius * rho * std::cos(th));
        coords.push_back(s.center[1] + s.radius * rho * std::sin(th));
        coords.push_back(s.center[2] + s.radius * z);
    }
    std::vector<double> ms(n, 4.0 * kPi * s.radius * s.radius / n);
    return make_cloud(3, 2, std::move(coords), std::move(ms));
}

// Chebyshev-type points including both endpoints; cells cover [a,b] with the
// half-gap rule, clustering resolution where interval equilibrium densities
// blow up.
NodeCloud interval_boundary(const IntervalSpec& s, int n) {
    const double mid = 0.5 * (s.a + s.b), half = 0.5 * (s.b - s.a);
    std::vector<double> xs(n);
    for (int j = 0; j < n; ++j)
        xs[j] = mid - half * std::cos(kPi * j / (n - 1));
    xs.front() = s.a;
    xs.back() = s.b;
    std::vector<double> ms(n);
    for (int j = 0; j < n; ++j) {
        const double left = (j == 0) ? s.a : 0.5 * (xs[j - 1] + xs[j]);
        const double right = (j == n - 1) ? s.b : 0.5 * (xs[j] + xs[j + 1]);
        ms[j] = right - left;
    }
    return make_cloud(1, 1, std::move(xs), std::move(ms));
}

NodeCloud points_cloud(const PointsSpec& s) {
    std::vector<double> coords;
    coords.reserve(s.coords.size() * s.dim);
    for (const auto& p : s.coords)
        coords.insert(coords.end(), p.begin(), p.end());
    std::vector<double> ms(s.coords.size(), 1.0);
    NodeCloud c = make_cloud(s.dim, 0, std::move(coords), std::move(ms));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (c.distance(i, j) == 0.0)
                throw std::invalid_argument("points: nodes must be distinct");
    return c;
}

NodeCloud union_cloud(const UnionSpec& s, int target, Scheme scheme) {
    // node budget proportional to nominal measure; point sets pass through
    std::vector<double> weights(s.parts.size(), 0.0);
    double wsum = 0.0;
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
        if (std::holds_alternative<PointsSpec>(s.parts[i].v)) continue;
        const auto m = s.parts[i].nominal_measure();
        weights[i] = m.value_or(1.0);
        wsum += weights[i];
    }
    std::vector<NodeCloud> parts;
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
        int ni;
        if (std::holds_alternative<PointsSpec>(s.parts[i].v))
            ni = 2;  // ignored by passthrough
        else if (wsum > 0.0)
            ni = std::max(2, static_cast<int>(std::llround(target * weights[i] / wsum)));
        else
            ni = std::max(2, target / static_cast<int>(s.parts.size()));
        parts.push_back(discretize(s.parts[i], ni, scheme));
    }
    const int dim = parts.front().dim;
    int native = 0;
    double h = 0.0;
    for (const auto& p : parts) {
        native = std::max(native, p.native_dim);
        h = std::max(h, p.mesh_size);
    }
    const double dedupe = h / 10.0;

    std::vector<double> coords;
    std::vector<double> ms;
    auto find_close = [&](std::span<const double> x) -> long {
        const std::size_t n = ms.size();
        for (std::size_t i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (int k = 0; k < dim; ++k) d2 += sq(coords[i * dim + k] - x[k]);
            if (std::sqrt(d2) < dedupe) return static_cast<long>(i);
        }
        return -1;
    };
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto x = p.node(i);
            const long hit = find_close(x);
            if (hit >= 0) {
                ms[static_cast<std::size_t>(hit)] += p.cell_measures[i];
            } else {
                coords.insert(coords.end(), x.begin(), x.end());
                ms.push_back(p.cell_measures[i]);
            }
        }
    }
    return make_cloud(dim, native, std::move(coords), std::move(ms));
}

}  // namespace

NodeCloud discretize(const SetSpec& spec, int target_nodes, Scheme scheme) {
    validate(spec);
    if (target_nodes < 2)
        throw std::invalid_argument("discretize: target node count must be >= 2");

    if (const auto* p = std::get_if<PointsSpec>(&spec.v)) return points_cloud(*p);
    if (const auto* u = std::get_if<UnionSpec>(&spec.v))
        return union_cloud(*u, target_nodes, scheme);

    if (scheme == Scheme::native)
        scheme = std::holds_alternative<SphereSpec>(spec.v) ? Scheme::boundary
                                                            : Scheme::grid;

    if (scheme == Scheme::grid) {
        if (const auto* b = std::get_if<BallSpec>(&spec.v))
            return ball_grid(*b, target_nodes);
        if (const auto* i = std::get_if<IntervalSpec>(&spec.v))
            return interval_grid(*i, target_nodes);
        if (const auto* bx = std::get_if<BoxSpec>(&spec.v))
            return box_grid(*bx, target_nodes);
        throw std::invalid_argument("discretize: grid scheme unsupported for " +
                                    spec.describe());
    }

    // boundary
    if (const auto* i = std::get_if<IntervalSpec>(&spec.v))
        return interval_boundary(*i, target_nodes);
    const SphereSpec* sph = std::get_if<SphereSpec>(&spec.v);
    SphereSpec tmp;
    if (!sph) {
        if (const auto* b = std::get_if<BallSpec>(&spec.v)) {
            tmp = SphereSpec{b->dim, b->center, b->radius};
            sph = &tmp;
        } else {
            throw std::invalid_argument(
                "discretize: boundary scheme unsupported for " + spec.describe());
        }
    }
    if (sph->dim == 2) return circle_boundary(*sph, target_nodes);
    if (sph->dim == 3) return fibonacci_sphere(*sph, target_nodes);
    throw std::invalid_argument(
        "discretize: boundary scheme supports ambient dim 2 and 3 only");
}

}  // namespace rieszcap
