#include "efftc/planners.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace efftc {

namespace {

using SpacePtr = std::shared_ptr<const ConfigSpace>;

double chord_sum(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a[i] + b[i]) * (a[i] + b[i]);
    return std::sqrt(s);
}

double chord_diff(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

Point negated(Point p)
{
    for (double& v : p)
        v = -v;
    return p;
}

Point normalized(Point p)
{
    double r = 0.0;
    for (double v : p)
        r += v * v;
    r = std::sqrt(r);
    for (double& v : p)
        v /= r;
    return p;
}

// Half great circle from x to -x leaving in the unit tangent direction u.
SampledPath half_turn(const Point& x, const Point& u, std::size_t samples)
{
    std::vector<double> c;
    c.reserve(x.size() * samples);
    for (std::size_t k = 0; k < samples; ++k) {
        if (k + 1 == samples) {
            for (double v : x)
                c.push_back(-v);
            break;
        }
        const double t = std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples - 1);
        for (std::size_t i = 0; i < x.size(); ++i)
            c.push_back(std::cos(t) * x[i] + std::sin(t) * u[i]);
    }
    return SampledPath(x.size(), std::move(c));
}

// Tangent field pairing (x_0, x_1), (x_2, x_3), ...; the last coordinate is
// left out when there is an odd number.
Point rotation_field(const Point& x)
{
    Point v(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        v[i] = -x[i + 1];
        v[i + 1] = x[i];
    }
    return v;
}

// Detour x -> -x -> y.
SampledPath detour(const Geometry& g, const Point& x, const Point& u, const Point& y, std::size_t samples)
{
    return concat(g, half_turn(x, u, samples), g.geodesic(negated(x), y, samples));
}

BrokenPath single(SampledPath p) { return BrokenPath{{std::move(p)}}; }

const SphereGeometry& sphere_of(const ConfigSpace& space)
{
    const auto kind = space.geometry().kind();
    if (kind != "sphere" && kind != "hemisphere")
        throw std::invalid_argument("expected a sphere, got a " + kind);
    return static_cast<const SphereGeometry&>(space.geometry());
}

void require_reflection(const ConfigSpace& space)
{
    if (space.geometry().kind() != "sphere" || space.action_name() != "codim1-involution")
        throw std::invalid_argument("planner needs the sphere with the reflection negating x_0, got '" +
                                    space.action_name() + "' on a " + space.geometry().kind());
}

// Signed displacement per axis in period units, in [-1/2, 1/2).
std::vector<double> unit_displacement(const TorusGeometry& t, const Point& x, const Point& y)
{
    auto d = t.displacement(x, y);
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] /= t.periods()[i];
    return d;
}

// Straight path x + s D for s in [0, 1], wrapped, with exact endpoints.
SampledPath torus_path(const TorusGeometry& t, const Point& x, const std::vector<double>& displacement,
                       const Point& y, std::size_t samples)
{
    Point end(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        end[i] = x[i] + displacement[i];
    std::vector<double> c = resample_polyline({x, end}, samples).coords();
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < samples; ++k)
        for (std::size_t i = 0; i < n; ++i)
            c[k * n + i] = t.wrap(c[k * n + i], i);
    std::copy(x.begin(), x.end(), c.begin());
    std::copy(y.begin(), y.end(), c.end() - static_cast<std::ptrdiff_t>(n));
    return SampledPath(n, std::move(c));
}

} // namespace

std::optional<std::size_t> PlannerCover::select(const Point& x, const Point& y, double epsilon) const
{
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i].contains(x, y, epsilon))
            return i;
    return std::nullopt;
}

PlannerCover farber_sphere_cover(const ConfigSpace& space, std::size_t samples)
{
    const int n = sphere_of(space).n();
    auto sp = std::make_shared<const ConfigSpace>(space);
    PlannerCover cover{"farber", 1, sp, {}};
    cover.sets.push_back({"geodesic", [](const Point& x, const Point& y) { return chord_sum(x, y) - 1.0; },
                          [sp, samples](const Point& x, const Point& y) {
                              return single(sp->geometry().geodesic(x, y, samples));
                          }});
    if (n % 2 == 1) {
        cover.sets.push_back({"detour", [](const Point& x, const Point& y) { return chord_diff(x, y) - 1.0; },
                              [sp, samples](const Point& x, const Point& y) {
                                  return single(detour(sp->geometry(), x, rotation_field(x), y, samples));
                              }});
        return cover;
    }
    const auto last = static_cast<std::size_t>(n);
    cover.sets.push_back({"detour-rotation",
                          [last](const Point& x, const Point& y) {
                              return std::min(std::sqrt(std::max(0.0, 1.0 - x[last] * x[last])) - 0.5,
                                              chord_diff(x, y) - 1.0);
                          },
                          [sp, samples](const Point& x, const Point& y) {
                              return single(detour(sp->geometry(), x, normalized(rotation_field(x)), y, samples));
                          }});
    cover.sets.push_back({"detour-polar",
                          [last](const Point& x, const Point& y) {
                              return std::min(std::abs(x[last]) - 0.6, chord_diff(x, y) - 1.0);
                          },
                          [sp, samples](const Point& x, const Point& y) {
                              Point w(x.size());
                              for (std::size_t i = 0; i < x.size(); ++i)
                                  w[i] = (i == 0 ? 1.0 : 0.0) - x[0] * x[i];
                              return single(detour(sp->geometry(), x, normalized(w), y, samples));
                          }});
    return cover;
}

PlannerCover farber_torus_cover(const ConfigSpace& space, std::size_t samples)
{
    if (space.geometry().kind() != "torus")
        throw std::invalid_argument("expected a torus, got a " + space.geometry().kind());
    const std::size_t n = static_cast<const TorusGeometry&>(space.geometry()).periods().size();
    if (n > 2)
        throw std::invalid_argument("torus covers are implemented up to dimension 2");
    auto sp = std::make_shared<const ConfigSpace>(space);
    auto torus = [](const SpacePtr& s) -> const TorusGeometry& {
        return static_cast<const TorusGeometry&>(s->geometry());
    };

    // Per axis, the shortest or the counterclockwise displacement.
    auto path_with = [sp, torus, samples](const Point& x, const Point& y, const std::vector<bool>& ccw) {
        const auto& t = torus(sp);
        auto d = t.displacement(x, y);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (ccw[i])
                d[i] = t.wrap(y[i] - x[i], i);
        return single(torus_path(t, x, d, y, samples));
    };
    auto u = [sp, torus](const Point& x, const Point& y) {
        auto d = unit_displacement(torus(sp), x, y);
        for (double& v : d)
            v = std::abs(v);
        return d;
    };

    PlannerCover cover{"farber", 1, sp, {}};
    cover.sets.push_back({"shortest",
                          [u](const Point& x, const Point& y) {
                              double c = 1.0;
                              for (double v : u(x, y))
                                  c = std::min(c, 0.5 - v);
                              return c;
                          },
                          [path_with, n](const Point& x, const Point& y) {
                              return path_with(x, y, std::vector<bool>(n, false));
                          }});
    if (n == 2) {
        // (A' x B') and (B' x A') are disjoint, so one set serves both.
        cover.sets.push_back({"mixed",
                              [u](const Point& x, const Point& y) {
                                  const auto a = u(x, y);
                                  return std::max(std::min(0.25 - a[0], a[1] - 0.25),
                                                  std::min(a[0] - 0.25, 0.25 - a[1]));
                              },
                              [path_with, u](const Point& x, const Point& y) {
                                  const bool first_near = u(x, y)[0] < 0.25;
                                  return path_with(x, y, {!first_near, first_near});
                              }});
    }
    cover.sets.push_back({"counterclockwise",
                          [u](const Point& x, const Point& y) {
                              double c = 1.0;
                              for (double v : u(x, y))
                                  c = std::min(c, v);
                              return c;
                          },
                          [path_with, n](const Point& x, const Point& y) {
                              return path_with(x, y, std::vector<bool>(n, true));
                          }});
    return cover;
}

PlannerCover farber_cover(const ConfigSpace& space, std::size_t samples)
{
    const auto kind = space.geometry().kind();
    if (kind == "sphere")
        return farber_sphere_cover(space, samples);
    if (kind == "torus")
        return farber_torus_cover(space, samples);
    throw std::invalid_argument("no Farber cover for a " + kind);
}

PlannerCover pole_cover(const ConfigSpace& space, const Point& pole, std::size_t samples)
{
    auto sp = std::make_shared<const ConfigSpace>(space);
    const auto kind = space.geometry().kind();
    const bool spherical = kind == "sphere" || kind == "hemisphere";
    if (!space.geometry().contains(pole, 1e-9))
        throw std::invalid_argument("pole is not a point of the space");
    PlannerCover cover{"pole", 1, sp, {}};
    cover.sets.push_back({"through-pole",
                          [pole, spherical](const Point& x, const Point& y) {
                              return spherical ? std::min(chord_sum(x, pole), chord_sum(y, pole)) : 1.0;
                          },
                          [sp, pole, samples](const Point& x, const Point& y) {
                              const auto& g = sp->geometry();
                              return single(concat(g, g.geodesic(x, pole, samples), g.geodesic(pole, y, samples)));
                          }});
    return cover;
}

PlannerCover geodesic_cover(const ConfigSpace& space, std::size_t samples)
{
    auto sp = std::make_shared<const ConfigSpace>(space);
    PlannerCover cover{"geodesic", 1, sp, {}};
    cover.sets.push_back({"everything", [](const Point&, const Point&) { return 1.0; },
                          [sp, samples](const Point& x, const Point& y) {
                              return single(sp->geometry().geodesic(x, y, samples));
                          }});
    return cover;
}

Point involution_tau(const Point& x)
{
    if (x.size() % 2 == 0)
        throw std::invalid_argument("tau is defined on even-dimensional spheres");
    Point t(x.size());
    t[0] = -x[0];
    for (std::size_t i = 1; i + 1 < x.size(); i += 2) {
        t[i] = -x[i + 1];
        t[i + 1] = x[i];
    }
    return t;
}

PlannerCover involution_two_stage_cover(const ConfigSpace& space, std::size_t samples)
{
    require_reflection(space);
    const int n = sphere_of(space).n();
    if (n % 2 == 1) {
        auto embedded = embed_cover(farber_sphere_cover(space, samples));
        embedded.name = "involution2";
        return embedded;
    }
    auto sp = std::make_shared<const ConfigSpace>(space);
    // Both sets reach down to |.| = 0.65; every pair clears one of them by
    // at least 2 sin(pi/8) - 0.65 because |x - tau(x)| >= sqrt 2.
    constexpr double threshold = 0.65;
    PlannerCover cover{"involution2", 2, sp, {}};
    cover.sets.push_back({"U1", [](const Point& x, const Point& y) { return chord_sum(x, y) - threshold; },
                          [sp, samples](const Point& x, const Point& y) {
                              return BrokenPath{{sp->geometry().geodesic(x, y, samples),
                                                 SampledPath::constant(y, samples)}};
                          }});
    cover.sets.push_back({"U2",
                          [](const Point& x, const Point& y) { return chord_sum(y, involution_tau(x)) - threshold; },
                          [sp, samples](const Point& x, const Point& y) {
                              const auto& g = sp->geometry();
                              const Point t = involution_tau(x);
                              return BrokenPath{{SampledPath::constant(x, samples),
                                                 concat(g, g.geodesic(sp->act(1, x), t, samples),
                                                        g.geodesic(t, y, samples))}};
                          }});
    return cover;
}

PlannerCover involution_three_stage_planner(const ConfigSpace& space, std::size_t samples)
{
    require_reflection(space);
    auto sp = std::make_shared<const ConfigSpace>(space);
    Point north(space.geometry().coordinate_dim(), 0.0);
    north[0] = 1.0;
    PlannerCover cover{"involution3", 3, sp, {}};
    cover.sets.push_back({"everything", [](const Point&, const Point&) { return 1.0; },
                          [sp, north, samples](const Point& x, const Point& y) {
                              const auto& g = sp->geometry();
                              const Point fx = x[0] < 0.0 ? sp->act(1, x) : x;
                              const Point fy = y[0] < 0.0 ? sp->act(1, y) : y;
                              const auto middle = concat(g, g.geodesic(fx, north, samples),
                                                         g.geodesic(north, fy, samples));
                              return BrokenPath{{SampledPath::constant(x, samples), middle,
                                                 SampledPath::constant(y, samples)}};
                          }});
    return cover;
}

PlannerCover cover_from_strict_section(const ConfigSpace& space, const OrbitModel& model,
                                       const PlannerCover& quotient_cover)
{
    if (!model.section)
        throw std::invalid_argument("orbit model has no strict section");
    if (quotient_cover.stage != 1)
        throw std::invalid_argument("strict-section transfer needs a stage-1 cover of the orbit space");
    const auto& qg = model.quotient->geometry();
    std::mt19937_64 rng(sampling_seed());
    std::vector<Point> probes = qg.grid(8).points;
    for (int i = 0; i < 64; ++i)
        probes.push_back(qg.random_point(rng));
    for (const auto& q : probes)
        if (qg.distance(model.project(model.section(q)), q) > 1e-9)
            throw std::invalid_argument("section is not a strict section of the orbit map");

    auto sp = std::make_shared<const ConfigSpace>(space);
    PlannerCover cover{"strict-section(" + quotient_cover.name + ")", 3, sp, {}};
    for (const auto& set : quotient_cover.sets) {
        cover.sets.push_back({set.name,
                              [set, project = model.project](const Point& x, const Point& y) {
                                  return set.clearance(project(x), project(y));
                              },
                              [set, model](const Point& x, const Point& y) {
                                  const auto down = set.section(model.project(x), model.project(y));
                                  const auto up = map_path(down.legs.front(), model.section);
                                  return BrokenPath{{SampledPath::constant(x, up.size()), up,
                                                     SampledPath::constant(y, up.size())}};
                              }});
    }
    return cover;
}

PlannerCover cover_from_covering_lift(const ConfigSpace& space, const OrbitModel& model,
                                      const PlannerCover& quotient_cover, double delta)
{
    if (quotient_cover.stage != 1)
        throw std::invalid_argument("covering-lift transfer needs a stage-1 cover of the orbit space");
    const auto& g = space.geometry();
    std::mt19937_64 rng(sampling_seed());
    std::vector<Point> probes = g.grid(8).points;
    for (int i = 0; i < 64; ++i)
        probes.push_back(g.random_point(rng));
    if (!space.is_free_on(probes))
        throw std::invalid_argument("covering-lift transfer needs a free action");

    auto sp = std::make_shared<const ConfigSpace>(space);
    PlannerCover cover{"covering-lift(" + quotient_cover.name + ")", 2, sp, {}};
    for (const auto& set : quotient_cover.sets) {
        cover.sets.push_back({set.name,
                              [set, project = model.project](const Point& x, const Point& y) {
                                  return set.clearance(project(x), project(y));
                              },
                              [set, model, sp, delta](const Point& x, const Point& y) {
                                  const auto down = set.section(model.project(x), model.project(y));
                                  const auto up = lift_path(*sp, model, down.legs.front(), x, delta);
                                  return BrokenPath{{up, SampledPath::constant(y, up.size())}};
                              }});
    }
    return cover;
}

PlannerCover wedge_planner(const ConfigSpace& wedge, const PlannerCover& base_cover)
{
    if (wedge.geometry().kind() != "wedge")
        throw std::invalid_argument("wedge planner needs a wedge of circles");
    auto cover = cover_from_strict_section(wedge, standard_orbit_model(wedge), base_cover);
    cover.name = "wedge(" + base_cover.name + ")";
    return cover;
}

PlannerCover sphere_cat_cover(const ConfigSpace& space, std::size_t samples)
{
    sphere_of(space);
    auto sp = std::make_shared<const ConfigSpace>(space);
    PlannerCover cover{"sphere-cat", 1, sp, {}};
    cover.sets.push_back({"geodesic", [](const Point& x, const Point& y) { return chord_sum(x, y) - 1.0; },
                          [sp, samples](const Point& x, const Point& y) {
                              return single(sp->geometry().geodesic(x, y, samples));
                          }});
    cover.sets.push_back({"detour", [](const Point& x, const Point& y) { return chord_diff(x, y) - 1.0; },
                          [sp, samples](const Point& x, const Point& y) {
                              // Leave along the coordinate axis most orthogonal to x.
                              std::size_t k = 0;
                              for (std::size_t i = 1; i < x.size(); ++i)
                                  if (std::abs(x[i]) < std::abs(x[k]))
                                      k = i;
                              Point u(x.size());
                              for (std::size_t i = 0; i < x.size(); ++i)
                                  u[i] = (i == k ? 1.0 : 0.0) - x[k] * x[i];
                              return single(detour(sp->geometry(), x, normalized(u), y, samples));
                          }});
    return cover;
}

PlannerCover embed_cover(const PlannerCover& cover)
{
    PlannerCover out = cover;
    out.stage = cover.stage + 1;
    for (auto& set : out.sets)
        set.section = [inner = set.section](const Point& x, const Point& y) { return embed_stage(inner(x, y)); };
    return out;
}

} // namespace efftc
