#include "efftc/path.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace efftc {

SampledPath geodesic_arc(const ConfigSpace& space, const Point& x, const Point& y, std::size_t samples)
{
    if (samples < 2)
        throw std::invalid_argument("a path needs at least two samples");
    return space.geometry().geodesic(x, y, samples);
}

SampledPath concat(const Geometry& g, const SampledPath& p, const SampledPath& q, double tol)
{
    if (p.dim() != q.dim())
        throw JoinError("paths live in different coordinate spaces");
    const double gap = g.distance(p.at(p.size() - 1), q.at(0));
    if (gap > tol)
        throw JoinError("paths do not meet: gap " + std::to_string(gap));
    std::vector<double> c(p.coords());
    c.insert(c.end(), q.coords().begin() + static_cast<std::ptrdiff_t>(q.dim()), q.coords().end());
    return SampledPath(p.dim(), std::move(c));
}

SampledPath reverse(const SampledPath& p)
{
    std::vector<double> c;
    c.reserve(p.coords().size());
    for (std::size_t i = p.size(); i-- > 0;)
        c.insert(c.end(), p.at(i), p.at(i) + p.dim());
    return SampledPath(p.dim(), std::move(c));
}

double path_length(const Geometry& g, const SampledPath& p)
{
    double total = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i)
        total += g.distance(p.at(i - 1), p.at(i));
    return total;
}

double max_gap(const Geometry& g, const SampledPath& p)
{
    double worst = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i)
        worst = std::max(worst, g.distance(p.at(i - 1), p.at(i)));
    return worst;
}

double sup_distance(const Geometry& g, const SampledPath& p, const SampledPath& q)
{
    if (p.size() != q.size() || p.dim() != q.dim())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        worst = std::max(worst, g.distance(p.at(i), q.at(i)));
    return worst;
}

ValidationReport validate_broken_path(const ConfigSpace& space, const BrokenPath& bp, const Point& x,
                                      const Point& y, double delta, double mesh)
{
    ValidationReport r;
    const auto& g = space.geometry();
    if (bp.legs.empty()) {
        r.start_residual = r.end_residual = std::numeric_limits<double>::infinity();
        return r;
    }
    for (std::size_t i = 0; i + 1 < bp.legs.size(); ++i)
        r.joint_residuals.push_back(space.orbit_distance(bp.legs[i].back(), bp.legs[i + 1].front()));
    r.start_residual = g.distance(bp.legs.front().front(), x);
    r.end_residual = g.distance(bp.legs.back().back(), y);
    Point sample;
    for (const auto& leg : bp.legs) {
        r.max_gap = std::max(r.max_gap, max_gap(g, leg));
        for (std::size_t i = 0; i < leg.size(); ++i) {
            sample.assign(leg.at(i), leg.at(i) + leg.dim());
            if (!g.contains(sample, 1e-9))
                ++r.off_space;
        }
    }
    r.valid = r.start_residual <= delta && r.end_residual <= delta && r.max_gap <= mesh && r.off_space == 0;
    for (double j : r.joint_residuals)
        r.valid = r.valid && j <= delta;
    return r;
}

BrokenPath embed_stage(const BrokenPath& bp)
{
    BrokenPath out = bp;
    const auto& last = bp.legs.back();
    out.legs.push_back(SampledPath::constant(last.back(), last.size()));
    return out;
}

double broken_distance(const Geometry& g, const BrokenPath& a, const BrokenPath& b)
{
    if (a.legs.size() != b.legs.size())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.legs.size(); ++i)
        worst = std::max(worst, sup_distance(g, a.legs[i], b.legs[i]));
    return worst;
}

SampledPath map_path(const SampledPath& p, const std::function<Point(const Point&)>& f)
{
    std::vector<double> c;
    std::size_t dim = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point q = f(p.point(i));
        dim = q.size();
        c.insert(c.end(), q.begin(), q.end());
    }
    return SampledPath(dim, std::move(c));
}

SampledPath project_to_orbit(const ConfigSpace& space, const BrokenPath& bp, const OrbitModel& model, double delta)
{
    if (bp.legs.empty())
        throw std::invalid_argument("empty broken path");
    for (std::size_t i = 0; i + 1 < bp.legs.size(); ++i)
        if (space.orbit_distance(bp.legs[i].back(), bp.legs[i + 1].front()) > delta)
            throw std::invalid_argument("joint " + std::to_string(i) + " is not orbit-matched");
    const auto& qg = model.quotient->geometry();
    SampledPath out = map_path(bp.legs.front(), model.project);
    for (std::size_t i = 1; i < bp.legs.size(); ++i)
        out = concat(qg, out, map_path(bp.legs[i], model.project), delta);
    return out;
}

SampledPath lift_path(const ConfigSpace& space, const OrbitModel& model, const SampledPath& quotient_path,
                      const Point& start, double delta)
{
    const auto& g = space.geometry();
    const auto& qg = model.quotient->geometry();
    std::vector<double> c;
    Point previous = start;
    for (std::size_t k = 0; k < quotient_path.size(); ++k) {
        const Point q = quotient_path.point(k);
        const auto fiber = model.fiber(q);
        if (fiber.empty())
            throw std::runtime_error("quotient sample has an empty fiber");
        double best = std::numeric_limits<double>::infinity(), second = best;
        std::size_t pick = 0;
        for (std::size_t i = 0; i < fiber.size(); ++i) {
            const double d = g.distance(fiber[i], previous);
            if (d < best) {
                second = best;
                best = d;
                pick = i;
            } else if (d < second) {
                second = d;
            }
        }
        if (k == 0 && best > delta)
            throw std::runtime_error("start point is not over the start of the quotient path");
        if (fiber.size() > 1 && 2.0 * best >= second)
            throw std::runtime_error("path lift is ambiguous at sample " + std::to_string(k));
        const Point& chosen = fiber[pick];
        if (qg.distance(model.project(chosen), q) > delta)
            throw std::runtime_error("path lift diverged at sample " + std::to_string(k));
        // The first sample is the requested start point itself.
        const Point& stored = k == 0 ? start : chosen;
        c.insert(c.end(), stored.begin(), stored.end());
        previous = chosen;
    }
    return SampledPath(start.size(), std::move(c));
}

void write_path_csv(std::ostream& out, const SampledPath& p)
{
    const auto old = out.precision(17);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t d = 0; d < p.dim(); ++d)
            out << (d ? "," : "") << p.at(i)[d];
        out << '\n';
    }
    out.precision(old);
}

} // namespace efftc
