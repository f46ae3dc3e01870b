#include "efftc/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace efftc {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double euclidean(const double* a, const double* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double norm(const Point& p)
{
    double s = 0.0;
    for (double v : p)
        s += v * v;
    return std::sqrt(s);
}

Grid filtered(const Grid& full, const std::function<bool(const Point&)>& keep)
{
    std::vector<std::size_t> remap(full.points.size(), SIZE_MAX);
    Grid out;
    for (std::size_t i = 0; i < full.points.size(); ++i)
        if (keep(full.points[i])) {
            remap[i] = out.points.size();
            out.points.push_back(full.points[i]);
        }
    out.neighbors.resize(out.points.size());
    for (std::size_t i = 0; i < full.points.size(); ++i) {
        if (remap[i] == SIZE_MAX)
            continue;
        for (std::size_t j : full.neighbors[i])
            if (remap[j] != SIZE_MAX)
                out.neighbors[remap[i]].push_back(remap[j]);
    }
    return out;
}

} // namespace

SampledPath::SampledPath(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords))
{
    if (dim_ == 0 || coords_.size() % dim_ != 0 || coords_.size() / dim_ < 2)
        throw std::invalid_argument("a sampled path needs at least two samples");
}

SampledPath SampledPath::constant(const Point& p, std::size_t samples)
{
    std::vector<double> c;
    c.reserve(p.size() * samples);
    for (std::size_t i = 0; i < samples; ++i)
        c.insert(c.end(), p.begin(), p.end());
    return SampledPath(p.size(), std::move(c));
}

SampledPath resample_polyline(const std::vector<Point>& corners, std::size_t samples)
{
    if (corners.empty() || samples < 2)
        throw std::invalid_argument("resampling needs a corner and two samples");
    const std::size_t dim = corners.front().size();
    std::vector<double> cumulative{0.0};
    for (std::size_t i = 1; i < corners.size(); ++i)
        cumulative.push_back(cumulative.back() + euclidean(corners[i - 1].data(), corners[i].data(), dim));
    const double total = cumulative.back();
    if (total == 0.0)
        return SampledPath::constant(corners.front(), samples);

    std::vector<double> c;
    c.reserve(dim * samples);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        if (k + 1 == samples) {
            c.insert(c.end(), corners.back().begin(), corners.back().end());
            break;
        }
        const double s = total * static_cast<double>(k) / static_cast<double>(samples - 1);
        while (seg + 2 < cumulative.size() && cumulative[seg + 1] <= s)
            ++seg;
        const double len = cumulative[seg + 1] - cumulative[seg];
        const double t = len > 0.0 ? (s - cumulative[seg]) / len : 0.0;
        for (std::size_t d = 0; d < dim; ++d)
            c.push_back(corners[seg][d] + t * (corners[seg + 1][d] - corners[seg][d]));
    }
    return SampledPath(dim, std::move(c));
}

// Sphere

SphereGeometry::SphereGeometry(int n) : n_(n)
{
    if (n < 1)
        throw std::invalid_argument("sphere dimension must be positive");
}

double SphereGeometry::distance(const double* a, const double* b) const
{
    return euclidean(a, b, coordinate_dim());
}

bool SphereGeometry::contains(const Point& p, double tol) const
{
    return p.size() == coordinate_dim() && std::abs(norm(p) - 1.0) <= tol;
}

Point SphereGeometry::canonical(const Point& p) const { return p; }

SampledPath SphereGeometry::geodesic(const Point& x, const Point& y, std::size_t samples) const
{
    const std::size_t dim = coordinate_dim();
    double sum2 = 0.0, diff2 = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        sum2 += (x[i] + y[i]) * (x[i] + y[i]);
        diff2 += (x[i] - y[i]) * (x[i] - y[i]);
        dot += x[i] * y[i];
    }
    if (std::sqrt(sum2) < 1e-6)
        throw GeodesicError("antipodal points have no unique shortest arc");
    const double theta = 2.0 * std::atan2(std::sqrt(diff2), std::sqrt(sum2));
    if (theta == 0.0)
        return SampledPath::constant(x, samples);

    const double st = std::sin(theta);
    Point u(dim);
    for (std::size_t i = 0; i < dim; ++i)
        u[i] = (y[i] - dot * x[i]) / st;
    // Rotate (cos, sin) by a fixed step instead of calling sin/cos per sample.
    const double step = theta / static_cast<double>(samples - 1);
    const double cs = std::cos(step), ss = std::sin(step);
    double c = 1.0, s = 0.0;
    std::vector<double> out;
    out.reserve(dim * samples);
    out.insert(out.end(), x.begin(), x.end());
    for (std::size_t k = 1; k + 1 < samples; ++k) {
        const double c2 = c * cs - s * ss;
        s = s * cs + c * ss;
        c = c2;
        for (std::size_t i = 0; i < dim; ++i)
            out.push_back(c * x[i] + s * u[i]);
    }
    out.insert(out.end(), y.begin(), y.end());
    return SampledPath(dim, std::move(out));
}

Grid SphereGeometry::grid(int resolution) const
{
    Grid g;
    if (n_ == 1) {
        if (resolution < 3)
            throw std::invalid_argument("circle grid needs at least 3 points");
        for (int j = 0; j < resolution; ++j) {
            const double a = 2.0 * std::numbers::pi * j / resolution;
            g.points.push_back({std::cos(a), std::sin(a)});
            g.neighbors.push_back({static_cast<std::size_t>((j + 1) % resolution)});
        }
        return g;
    }
    if (n_ != 2)
        throw std::invalid_argument("grids are implemented for S^1 and S^2 only");
    if (resolution < 4 || resolution % 2 != 0)
        throw std::invalid_argument("S^2 grid resolution must be even and at least 4");
    const int rings = resolution / 2;
    for (int i = 0; i < rings; ++i) {
        const double theta = std::numbers::pi * (i + 0.5) / rings;
        for (int j = 0; j < resolution; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / resolution;
            g.points.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
            std::vector<std::size_t> nb{static_cast<std::size_t>(i * resolution + (j + 1) % resolution)};
            if (i + 1 < rings)
                nb.push_back(static_cast<std::size_t>((i + 1) * resolution + j));
            g.neighbors.push_back(std::move(nb));
        }
    }
    return g;
}

Point SphereGeometry::random_point(std::mt19937_64& rng) const
{
    std::normal_distribution<double> normal;
    Point p(coordinate_dim());
    double r = 0.0;
    while (r < 1e-6) {
        for (double& v : p)
            v = normal(rng);
        r = norm(p);
    }
    for (double& v : p)
        v /= r;
    return p;
}

bool HemisphereGeometry::contains(const Point& p, double tol) const
{
    return SphereGeometry::contains(p, tol) && p[0] >= -tol;
}

Grid HemisphereGeometry::grid(int resolution) const
{
    auto g = filtered(SphereGeometry::grid(resolution), [](const Point& p) { return p[0] >= -1e-12; });
    for (auto& p : g.points)
        p[0] = std::max(p[0], 0.0);
    return g;
}

Point HemisphereGeometry::random_point(std::mt19937_64& rng) const
{
    Point p = SphereGeometry::random_point(rng);
    p[0] = std::abs(p[0]);
    return p;
}

// Torus

TorusGeometry::TorusGeometry(std::vector<double> periods) : periods_(std::move(periods))
{
    if (periods_.empty())
        throw std::invalid_argument("torus needs at least one axis");
    for (double p : periods_)
        if (!(p > 0.0))
            throw std::invalid_argument("torus periods must be positive");
}

double TorusGeometry::wrap(double v, std::size_t axis) const
{
    const double p = periods_[axis];
    double r = v - p * std::floor(v / p);
    if (r >= p)
        r = 0.0;
    return r;
}

std::vector<double> TorusGeometry::displacement(const Point& a, const Point& b) const
{
    std::vector<double> d(periods_.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = wrap(b[i] - a[i] + periods_[i] / 2.0, i) - periods_[i] / 2.0;
    return d;
}

double TorusGeometry::distance(const double* a, const double* b) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < periods_.size(); ++i) {
        const double d = wrap(b[i] - a[i], i);
        const double m = std::min(d, periods_[i] - d);
        s += m * m;
    }
    return std::sqrt(s);
}

bool TorusGeometry::contains(const Point& p, double tol) const
{
    if (p.size() != periods_.size())
        return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] < -tol || p[i] >= periods_[i] + tol)
            return false;
    return true;
}

Point TorusGeometry::canonical(const Point& p) const
{
    Point q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        q[i] = wrap(p[i], i);
    return q;
}

SampledPath TorusGeometry::geodesic(const Point& x, const Point& y, std::size_t samples) const
{
    const auto d = displacement(x, y);
    Point end(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        end[i] = x[i] + d[i];
    const auto straight = resample_polyline({x, end}, samples);
    std::vector<double> c(straight.coords());
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < samples; ++k)
        for (std::size_t i = 0; i < n; ++i)
            c[k * n + i] = wrap(c[k * n + i], i);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = x[i];
        c[(samples - 1) * n + i] = y[i];
    }
    return SampledPath(n, std::move(c));
}

Grid TorusGeometry::grid(int resolution) const
{
    if (resolution < 3)
        throw std::invalid_argument("torus grid needs at least 3 points per axis");
    const std::size_t n = periods_.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= static_cast<std::size_t>(resolution);
    Grid g;
    const auto r = static_cast<std::size_t>(resolution);
    for (std::size_t idx = 0; idx < total; ++idx) {
        Point p(n);
        std::vector<std::size_t> nb;
        std::size_t rest = idx, stride = 1;
        for (std::size_t axis = 0; axis < n; ++axis) {
            const std::size_t digit = rest % r;
            rest /= r;
            p[axis] = periods_[axis] * static_cast<double>(digit) / resolution;
            nb.push_back(idx - digit * stride + ((digit + 1) % r) * stride);
            stride *= r;
        }
        g.points.push_back(std::move(p));
        g.neighbors.push_back(std::move(nb));
    }
    return g;
}

Point TorusGeometry::random_point(std::mt19937_64& rng) const
{
    Point p(periods_.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = std::uniform_real_distribution<double>(0.0, periods_[i])(rng);
    return canonical(p);
}

// Wedge

namespace {

double circle_wrap(double a)
{
    double r = a - std::floor(a);
    return r >= 1.0 ? 0.0 : r;
}

double arm(double a) { return std::min(a, 1.0 - a); }

// Signed displacement to the nearest lift in [-1/2, 1/2).
double circle_step(double from, double to) { return circle_wrap(to - from + 0.5) - 0.5; }

} // namespace

WedgeGeometry::WedgeGeometry(int circles) : circles_(circles)
{
    if (circles < 1)
        throw std::invalid_argument("wedge needs at least one circle");
}

bool WedgeGeometry::at_basepoint(const double* p) { return p[1] < 1e-12 || p[1] > 1.0 - 1e-12; }

double WedgeGeometry::distance(const double* a, const double* b) const
{
    if (at_basepoint(a) || at_basepoint(b) || std::lround(a[0]) == std::lround(b[0]))
        return arm(circle_wrap(b[1] - a[1]));
    return arm(a[1]) + arm(b[1]);
}

bool WedgeGeometry::contains(const Point& p, double tol) const
{
    if (p.size() != 2)
        return false;
    const double b = std::round(p[0]);
    return std::abs(p[0] - b) <= tol && b >= 0 && b < circles_ && p[1] >= -tol && p[1] < 1.0 + tol;
}

Point WedgeGeometry::canonical(const Point& p) const
{
    Point q{std::round(p[0]), circle_wrap(p[1])};
    if (at_basepoint(q.data()))
        return {0.0, 0.0};
    return q;
}

SampledPath WedgeGeometry::geodesic(const Point& x, const Point& y, std::size_t samples) const
{
    const bool same = at_basepoint(x.data()) || at_basepoint(y.data()) || std::lround(x[0]) == std::lround(y[0]);
    double d1, d2;
    double b1 = x[0], b2 = y[0];
    if (same) {
        const double branch = at_basepoint(x.data()) ? y[0] : x[0];
        b1 = b2 = branch;
        d1 = circle_step(x[1], y[1]);
        d2 = 0.0;
    } else {
        d1 = circle_step(x[1], 0.0);
        d2 = circle_step(0.0, y[1]);
    }
    const double total = std::abs(d1) + std::abs(d2);
    if (total == 0.0)
        return SampledPath::constant(canonical(x), samples);
    std::vector<double> c;
    c.reserve(2 * samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double s = total * static_cast<double>(k) / static_cast<double>(samples - 1);
        Point p = s <= std::abs(d1) ? Point{b1, x[1] + (d1 < 0 ? -s : s)}
                                    : Point{b2, (d2 < 0 ? -1.0 : 1.0) * (s - std::abs(d1))};
        if (k == 0)
            p = x;
        if (k + 1 == samples)
            p = y;
        p = canonical(p);
        c.insert(c.end(), p.begin(), p.end());
    }
    return SampledPath(2, std::move(c));
}

Grid WedgeGeometry::grid(int resolution) const
{
    if (resolution < 3)
        throw std::invalid_argument("wedge grid needs at least 3 points per circle");
    Grid g;
    g.points.push_back({0.0, 0.0});
    g.neighbors.emplace_back();
    const auto per = static_cast<std::size_t>(resolution - 1);
    for (int b = 0; b < circles_; ++b) {
        const std::size_t base = 1 + static_cast<std::size_t>(b) * per;
        g.neighbors[0].push_back(base);
        for (std::size_t j = 1; j <= per; ++j) {
            g.points.push_back({static_cast<double>(b), static_cast<double>(j) / resolution});
            g.neighbors.push_back({j < per ? base + j : 0});
        }
    }
    return g;
}

Point WedgeGeometry::random_point(std::mt19937_64& rng) const
{
    const int b = std::uniform_int_distribution<int>(0, circles_ - 1)(rng);
    return canonical({static_cast<double>(b), std::uniform_real_distribution<double>(0.0, 1.0)(rng)});
}

// Realization

RealizationGeometry::RealizationGeometry(SimplicialComplex complex) : complex_(std::move(complex))
{
    if (complex_.empty())
        throw std::invalid_argument("cannot realize the empty complex");
    const std::size_t n = complex_.vertex_count();
    hops_.assign(n, std::vector<double>(n, inf));
    next_.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i) {
        hops_[i][i] = 0.0;
        next_[i][i] = static_cast<int>(i);
    }
    if (complex_.dimension() >= 1)
        for (const auto& e : complex_.simplices(1)) {
            const auto a = *complex_.vertex_position(e[0]);
            const auto b = *complex_.vertex_position(e[1]);
            hops_[a][b] = hops_[b][a] = std::sqrt(2.0);
            next_[a][b] = static_cast<int>(b);
            next_[b][a] = static_cast<int>(a);
        }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (hops_[i][k] + hops_[k][j] < hops_[i][j] - 1e-12) {
                    hops_[i][j] = hops_[i][k] + hops_[k][j];
                    next_[i][j] = next_[i][k];
                }
}

double RealizationGeometry::distance(const double* a, const double* b) const
{
    return euclidean(a, b, coordinate_dim());
}

Simplex RealizationGeometry::carrier(const Point& p, double tol) const
{
    Simplex s;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > tol)
            s.push_back(complex_.vertices()[i]);
    return s;
}

Point RealizationGeometry::vertex_point(int vertex) const
{
    const auto pos = complex_.vertex_position(vertex);
    if (!pos)
        throw std::out_of_range("vertex not in complex");
    Point p(coordinate_dim(), 0.0);
    p[*pos] = 1.0;
    return p;
}

bool RealizationGeometry::contains(const Point& p, double tol) const
{
    if (p.size() != coordinate_dim())
        return false;
    double sum = 0.0;
    for (double v : p) {
        if (v < -tol)
            return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol && complex_.contains(carrier(p, tol));
}

SampledPath RealizationGeometry::geodesic(const Point& x, const Point& y, std::size_t samples) const
{
    const auto cx = carrier(x);
    const auto cy = carrier(y);
    std::set<int> joint(cx.begin(), cx.end());
    joint.insert(cy.begin(), cy.end());
    if (complex_.contains(Simplex(joint.begin(), joint.end())))
        return resample_polyline({x, y}, samples);

    double best = inf;
    std::size_t from = 0, to = 0;
    for (int a : cx)
        for (int b : cy) {
            const auto pa = *complex_.vertex_position(a);
            const auto pb = *complex_.vertex_position(b);
            const auto ea = vertex_point(a);
            const auto eb = vertex_point(b);
            const double cost = distance(x, ea) + hops_[pa][pb] + distance(eb, y);
            if (cost < best - 1e-12) {
                best = cost;
                from = pa;
                to = pb;
            }
        }
    if (best == inf)
        throw GeodesicError("points lie in different components");
    std::vector<Point> corners{x};
    for (std::size_t v = from;; v = static_cast<std::size_t>(next_[v][to])) {
        corners.push_back(vertex_point(complex_.vertices()[v]));
        if (v == to)
            break;
    }
    corners.push_back(y);
    return resample_polyline(corners, samples);
}

Grid RealizationGeometry::grid(int resolution) const
{
    if (resolution < 1)
        throw std::invalid_argument("grid resolution must be positive");
    const std::size_t n = coordinate_dim();
    std::map<std::vector<int>, std::size_t> index;
    std::vector<std::vector<int>> numerators;
    for (const auto& s : complex_.maximal_simplices()) {
        std::vector<std::size_t> pos;
        for (int v : s)
            pos.push_back(*complex_.vertex_position(v));
        std::vector<int> parts(s.size(), 0);
        // Enumerate compositions of `resolution` into |s| parts.
        auto fill = [&](auto&& self, std::size_t i, int left) -> void {
            if (i + 1 == parts.size()) {
                parts[i] = left;
                std::vector<int> num(n, 0);
                for (std::size_t k = 0; k < parts.size(); ++k)
                    num[pos[k]] = parts[k];
                if (index.emplace(num, numerators.size()).second)
                    numerators.push_back(std::move(num));
                return;
            }
            for (int v = 0; v <= left; ++v) {
                parts[i] = v;
                self(self, i + 1, left - v);
            }
        };
        fill(fill, 0, resolution);
    }
    Grid g;
    for (const auto& num : numerators) {
        Point p(n);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = static_cast<double>(num[i]) / resolution;
        g.points.push_back(std::move(p));
    }
    g.neighbors.resize(numerators.size());
    for (std::size_t idx = 0; idx < numerators.size(); ++idx)
        for (std::size_t u = 0; u < n; ++u) {
            if (numerators[idx][u] == 0)
                continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u)
                    continue;
                auto moved = numerators[idx];
                --moved[u];
                ++moved[v];
                const auto it = index.find(moved);
                if (it == index.end() || it->second < idx)
                    continue;
                Simplex span;
                for (std::size_t k = 0; k < n; ++k)
                    if (numerators[idx][k] > 0 || k == v)
                        span.push_back(complex_.vertices()[k]);
                if (complex_.contains(span))
                    g.neighbors[idx].push_back(it->second);
            }
        }
    return g;
}

Point RealizationGeometry::random_point(std::mt19937_64& rng) const
{
    const auto top = complex_.maximal_simplices();
    const auto& s = top[std::uniform_int_distribution<std::size_t>(0, top.size() - 1)(rng)];
    std::exponential_distribution<double> e(1.0);
    Point p(coordinate_dim(), 0.0);
    double sum = 0.0;
    for (int v : s) {
        const double w = e(rng);
        p[*complex_.vertex_position(v)] = w;
        sum += w;
    }
    for (double& v : p)
        v /= sum;
    return p;
}

// Config spaces

std::uint64_t sampling_seed()
{
    const char* env = std::getenv("EFFTC_SEED");
    if (!env || !*env)
        return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("EFFTC_SEED is not an integer: ") + env);
    }
}

ConfigSpace::ConfigSpace(std::shared_ptr<const Geometry> geometry, FiniteGroup group, PointMap act,
                         std::string action_name)
    : geometry_(std::move(geometry)), group_(std::move(group)), act_(std::move(act)),
      action_name_(std::move(action_name))
{
    std::mt19937_64 rng(sampling_seed());
    for (int trial = 0; trial < 16; ++trial) {
        const auto a = geometry_->random_point(rng);
        const auto b = geometry_->random_point(rng);
        if (geometry_->distance(this->act(0, a), a) > 1e-9)
            throw std::invalid_argument("identity element moves a point");
        for (int g = 0; g < group_.order(); ++g) {
            const auto ga = this->act(g, a);
            const auto gb = this->act(g, b);
            if (!geometry_->contains(ga, 1e-9))
                throw std::invalid_argument("group element maps a point off the space");
            if (std::abs(geometry_->distance(ga, gb) - geometry_->distance(a, b)) > 1e-9)
                throw std::invalid_argument("group element " + std::to_string(g) + " is not an isometry");
            for (int h = 0; h < group_.order(); ++h)
                if (geometry_->distance(this->act(group_.multiply(g, h), a), this->act(g, this->act(h, a))) > 1e-9)
                    throw std::invalid_argument("point maps do not compose like the group table");
        }
    }
}

ConfigSpace ConfigSpace::with_trivial_action(std::shared_ptr<const Geometry> geometry)
{
    return ConfigSpace(std::move(geometry), FiniteGroup::trivial(), [](int, const Point& p) { return p; }, "trivial");
}

double ConfigSpace::orbit_distance(const Point& a, const Point& b) const
{
    double best = inf;
    for (int g = 0; g < group_.order(); ++g)
        best = std::min(best, geometry_->distance(act(g, a), b));
    return best;
}

bool ConfigSpace::is_free_on(const std::vector<Point>& samples, double tol) const
{
    for (int g = 1; g < group_.order(); ++g)
        for (const auto& p : samples)
            if (geometry_->distance(act(g, p), p) <= tol)
                return false;
    return true;
}

ConfigSpace standard_space(std::shared_ptr<const Geometry> geometry, const std::string& action)
{
    if (action == "trivial")
        return ConfigSpace::with_trivial_action(std::move(geometry));
    const std::string kind = geometry->kind();
    if (kind == "sphere") {
        const int n = static_cast<const SphereGeometry&>(*geometry).n();
        if (action == "antipodal")
            return ConfigSpace(std::move(geometry), FiniteGroup::cyclic(2),
                               [](int g, const Point& p) {
                                   Point q = p;
                                   if (g == 1)
                                       for (double& v : q)
                                           v = -v;
                                   return q;
                               },
                               action);
        if (action == "codim1-involution" || action == "flip")
            return ConfigSpace(std::move(geometry), FiniteGroup::cyclic(2),
                               [](int g, const Point& p) {
                                   Point q = p;
                                   if (g == 1)
                                       q[0] = -q[0];
                                   return q;
                               },
                               "codim1-involution");
        if (action == "rotation" && n >= 1)
            return ConfigSpace(std::move(geometry), FiniteGroup::cyclic(2),
                               [](int g, const Point& p) {
                                   Point q = p;
                                   if (g == 1) {
                                       q[0] = -q[0];
                                       q[1] = -q[1];
                                   }
                                   return q;
                               },
                               action);
    } else if (kind == "torus") {
        if (action == "torus-halfturn" || action == "antipodal") {
            const double half = static_cast<const TorusGeometry&>(*geometry).periods()[0] / 2.0;
            return ConfigSpace(std::move(geometry), FiniteGroup::cyclic(2),
                               [half](int g, const Point& p) {
                                   Point q = p;
                                   if (g == 1)
                                       q[0] += half;
                                   return q;
                               },
                               "torus-halfturn");
        }
    } else if (kind == "wedge") {
        if (action == "wedge-swap" || action == "wedge-rotate") {
            const int m = static_cast<const WedgeGeometry&>(*geometry).circles();
            return ConfigSpace(std::move(geometry), FiniteGroup::cyclic(m),
                               [m](int g, const Point& p) {
                                   if (WedgeGeometry::at_basepoint(p.data()))
                                       return Point{0.0, 0.0};
                                   return Point{static_cast<double>((std::lround(p[0]) + g) % m), p[1]};
                               },
                               "wedge-swap");
        }
    }
    throw std::invalid_argument("action '" + action + "' is not defined on a " + kind);
}

ConfigSpace realization_space(const GroupAction& action)
{
    auto geometry = std::make_shared<RealizationGeometry>(action.complex());
    const auto& k = action.complex();
    std::vector<std::vector<std::size_t>> target(static_cast<std::size_t>(action.group().order()));
    for (int g = 0; g < action.group().order(); ++g)
        for (int v : k.vertices())
            target[static_cast<std::size_t>(g)].push_back(*k.vertex_position(action.apply(g, v)));
    return ConfigSpace(geometry, action.group(),
                       [target](int g, const Point& p) {
                           Point q(p.size(), 0.0);
                           const auto& t = target[static_cast<std::size_t>(g)];
                           for (std::size_t i = 0; i < p.size(); ++i)
                               q[t[i]] = p[i];
                           return q;
                       },
                       "simplicial");
}

OrbitModel standard_orbit_model(const ConfigSpace& space)
{
    const auto& geometry = space.geometry();
    const std::string& action = space.action_name();
    OrbitModel m;
    if (space.group().order() == 1) {
        m.quotient = std::make_shared<ConfigSpace>(ConfigSpace::with_trivial_action(space.geometry_ptr()));
        m.project = [](const Point& p) { return p; };
        m.fiber = [](const Point& p) { return std::vector<Point>{p}; };
        m.section = [](const Point& p) { return p; };
        return m;
    }
    if (geometry.kind() == "sphere" && action == "codim1-involution") {
        const int n = static_cast<const SphereGeometry&>(geometry).n();
        m.quotient =
            std::make_shared<ConfigSpace>(ConfigSpace::with_trivial_action(std::make_shared<HemisphereGeometry>(n)));
        m.project = [](const Point& p) {
            Point q = p;
            q[0] = std::abs(q[0]);
            return q;
        };
        m.fiber = [](const Point& q) {
            if (q[0] == 0.0)
                return std::vector<Point>{q};
            Point r = q;
            r[0] = -r[0];
            return std::vector<Point>{q, r};
        };
        m.section = [](const Point& q) { return q; };
        return m;
    }
    if (geometry.kind() == "torus" && action == "torus-halfturn") {
        auto periods = static_cast<const TorusGeometry&>(geometry).periods();
        const double half = periods[0] / 2.0;
        periods[0] = half;
        auto qg = std::make_shared<TorusGeometry>(periods);
        m.quotient = std::make_shared<ConfigSpace>(ConfigSpace::with_trivial_action(qg));
        m.project = [qg](const Point& p) { return qg->canonical(p); };
        const auto big = space.geometry_ptr();
        m.fiber = [half, big](const Point& q) {
            Point r = q;
            r[0] += half;
            return std::vector<Point>{big->canonical(q), big->canonical(r)};
        };
        return m;
    }
    if (geometry.kind() == "wedge" && action == "wedge-swap") {
        const int circles = static_cast<const WedgeGeometry&>(geometry).circles();
        auto qg = std::make_shared<TorusGeometry>(std::vector<double>{1.0});
        m.quotient = std::make_shared<ConfigSpace>(ConfigSpace::with_trivial_action(qg));
        m.project = [qg](const Point& p) { return qg->canonical({p[1]}); };
        m.fiber = [circles](const Point& q) {
            const double a = circle_wrap(q[0]);
            if (WedgeGeometry::at_basepoint(Point{0.0, a}.data()))
                return std::vector<Point>{{0.0, 0.0}};
            std::vector<Point> out;
            for (int b = 0; b < circles; ++b)
                out.push_back({static_cast<double>(b), a});
            return out;
        };
        m.section = [](const Point& q) {
            const double a = circle_wrap(q[0]);
            return WedgeGeometry::at_basepoint(Point{0.0, a}.data()) ? Point{0.0, 0.0} : Point{0.0, a};
        };
        return m;
    }
    throw std::invalid_argument("no orbit model for action '" + action + "' on a " + geometry.kind());
}

OrbitModel realization_orbit_model(const Quotient& quotient)
{
    const auto& k = quotient.action.complex();
    const auto& qk = quotient.complex;
    auto qg = std::make_shared<RealizationGeometry>(qk);
    OrbitModel m;
    m.quotient = std::make_shared<ConfigSpace>(ConfigSpace::with_trivial_action(qg));

    // Quotient vertex position of each vertex position of k.
    std::vector<std::size_t> orbit_pos;
    for (int v : k.vertices())
        orbit_pos.push_back(*qk.vertex_position(quotient.project(v)));
    std::map<Simplex, std::vector<Simplex>> preimages;
    for (const auto& s : k.all_simplices())
        if (auto image = quotient.project(s))
            preimages[*image].push_back(s);

    const std::size_t n = k.vertex_count();
    const std::size_t qn = qk.vertex_count();
    m.project = [orbit_pos, qn](const Point& p) {
        Point q(qn, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i)
            q[orbit_pos[i]] += p[i];
        return q;
    };
    m.fiber = [qg, preimages, orbit_pos, n, k](const Point& q) {
        std::vector<Point> out;
        const auto it = preimages.find(qg->carrier(q));
        if (it == preimages.end())
            return out;
        for (const auto& s : it->second) {
            Point p(n, 0.0);
            for (int v : s) {
                const auto pos = *k.vertex_position(v);
                p[pos] = q[orbit_pos[pos]];
            }
            out.push_back(std::move(p));
        }
        return out;
    };
    return m;
}

} // namespace efftc
