#include "efftc/path.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace efftc;

namespace {

std::shared_ptr<const Geometry> sphere(int n) { return std::make_shared<SphereGeometry>(n); }

// Great-circle length of a sampled sphere path, summed from chords.
double arc_length(const SampledPath& p)
{
    double total = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        double c = 0.0;
        for (std::size_t d = 0; d < p.dim(); ++d)
            c += (p.at(i)[d] - p.at(i - 1)[d]) * (p.at(i)[d] - p.at(i - 1)[d]);
        total += 2.0 * std::asin(std::min(1.0, std::sqrt(c) / 2.0));
    }
    return total;
}

Quotient hexagon_antipodal()
{
    return quotient_complex(GroupAction::generated(models::polygon(6), {{3, 4, 5, 0, 1, 2}}));
}

} // namespace

TEST_CASE("sphere geodesics")
{
    const auto s2 = standard_space(sphere(2), "trivial");
    const Point north{0, 0, 1}, east{1, 0, 0}, south{0, 0, -1};

    const auto c = geodesic_arc(s2, east, east);
    CHECK(c == SampledPath::constant(east, default_samples));

    const auto q = geodesic_arc(s2, north, east);
    CHECK(q.size() == default_samples);
    CHECK(q.front() == north);
    CHECK(q.back() == east);
    CHECK(std::abs(arc_length(q) - std::numbers::pi / 2) <= 1e-6);
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(s2.geometry().contains(q.point(i), 1e-9));
    // Constant speed: every step subtends the same angle.
    for (std::size_t i = 1; i < q.size(); ++i)
        CHECK(s2.geometry().distance(q.at(i - 1), q.at(i)) == doctest::Approx(s2.geometry().distance(q.at(0), q.at(1))));

    CHECK_THROWS_AS(geodesic_arc(s2, north, south), GeodesicError);
    CHECK_THROWS_AS(geodesic_arc(s2, north, {1e-8, 0, -1}), GeodesicError);
}

TEST_CASE("reversed geodesic is the geodesic back")
{
    const auto s2 = standard_space(sphere(2), "trivial");
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = s2.geometry().random_point(rng);
        const auto y = s2.geometry().random_point(rng);
        const auto there = geodesic_arc(s2, x, y);
        const auto back = geodesic_arc(s2, y, x);
        CHECK(sup_distance(s2.geometry(), reverse(there), back) < 1e-9);
    }
}

TEST_CASE("torus geodesic wraps around")
{
    const auto t2 = standard_space(std::make_shared<TorusGeometry>(std::vector<double>{1.0, 1.0}), "trivial");
    const Point x{0.1, 0.1}, y{0.9, 0.1};
    double brute = 1e9;
    for (double a : {-1.0, 0.0})
        for (double b : {-1.0, 0.0})
            brute = std::min(brute, std::hypot(y[0] + a - x[0], y[1] + b - x[1]));
    CHECK(brute == doctest::Approx(0.2));

    const auto p = geodesic_arc(t2, x, y);
    CHECK(path_length(t2.geometry(), p) == doctest::Approx(brute).epsilon(1e-9));
    CHECK(p.front() == x);
    CHECK(p.back() == y);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(t2.geometry().contains(p.point(i), 0.0));
    CHECK(p.point(1)[0] < 0.1);

    // Exact half-period tie resolves to the negative displacement.
    const auto& torus = static_cast<const TorusGeometry&>(t2.geometry());
    CHECK(torus.displacement({0.0, 0.0}, {0.5, 0.0})[0] == -0.5);
}

TEST_CASE("wedge and realization geodesics")
{
    const auto w = standard_space(std::make_shared<WedgeGeometry>(2), "trivial");
    const Point a{0, 0.2}, b{1, 0.9};
    const auto p = geodesic_arc(w, a, b);
    CHECK(path_length(w.geometry(), p) == doctest::Approx(0.3));
    CHECK(w.geometry().distance(a, b) == doctest::Approx(0.3));
    CHECK(p.back() == b);
    CHECK(w.geometry().canonical({1, 0.0}) == Point{0, 0});

    const auto hex = realization_space(GroupAction::trivial(models::polygon(6)));
    const auto& real = static_cast<const RealizationGeometry&>(hex.geometry());
    const auto r = geodesic_arc(hex, real.vertex_point(0), real.vertex_point(3));
    CHECK(path_length(hex.geometry(), r) == doctest::Approx(3 * std::sqrt(2.0)));
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(real.contains(r.point(i), 1e-9));
}

TEST_CASE("grids")
{
    CHECK(SphereGeometry(2).grid(32).points.size() == 512);
    CHECK(SphereGeometry(1).grid(12).points.size() == 12);
    CHECK(TorusGeometry({1.0, 1.0}).grid(16).points.size() == 256);
    CHECK(WedgeGeometry(3).grid(8).points.size() == 22);
    const auto hemi = HemisphereGeometry(2).grid(16);
    for (const auto& q : hemi.points)
        CHECK(q[0] >= 0.0);
    const auto hex = RealizationGeometry(models::polygon(6)).grid(4);
    CHECK(hex.points.size() == 24);
    std::size_t edges = 0;
    for (const auto& n : hex.neighbors)
        edges += n.size();
    CHECK(edges == 24);
}

TEST_CASE("concat and reverse")
{
    const auto s2 = standard_space(sphere(2), "trivial");
    const auto& g = s2.geometry();
    const Point north{0, 0, 1}, east{1, 0, 0}, south{0, 0, -1};

    const auto cx = SampledPath::constant(north, 16);
    const auto cc = concat(g, cx, cx);
    for (std::size_t i = 0; i < cc.size(); ++i)
        CHECK(cc.point(i) == north);

    const auto q = geodesic_arc(s2, north, east);
    CHECK(reverse(reverse(q)) == q);

    const auto half = concat(g, q, geodesic_arc(s2, east, south));
    CHECK(half.size() == 2 * default_samples - 1);
    CHECK(std::abs(path_length(g, half) - std::numbers::pi) <= 2 * max_gap(g, half));

    CHECK_THROWS_AS(concat(g, q, q), JoinError);
}

TEST_CASE("broken path validation")
{
    const auto s2 = standard_space(sphere(2), "rotation");
    const auto& g = s2.geometry();
    const Point x{0.6, 0.0, 0.8};
    const auto gx = s2.act(1, x);

    BrokenPath ok{{SampledPath::constant(x, 8), SampledPath::constant(gx, 8)}};
    const auto good = validate_broken_path(s2, ok, x, gx);
    CHECK(good.valid);
    REQUIRE(good.joint_residuals.size() == 1);
    CHECK(good.joint_residuals[0] == 0.0);

    const Point z{0.0, 0.6, 0.8};
    BrokenPath bad{{SampledPath::constant(x, 8), SampledPath::constant(z, 8)}};
    const auto report = validate_broken_path(s2, bad, x, z);
    CHECK_FALSE(report.valid);
    double brute = 1e9;
    for (int e = 0; e < 2; ++e)
        brute = std::min(brute, g.distance(s2.act(e, x), z));
    CHECK(report.joint_residuals[0] == doctest::Approx(brute));
    CHECK(report.joint_residuals[0] > 0.5);

    // Endpoint mismatch and off-sphere samples.
    CHECK_FALSE(validate_broken_path(s2, ok, z, gx).valid);
    BrokenPath off{{SampledPath::constant({0, 0, 2}, 4)}};
    CHECK(validate_broken_path(s2, off, {0, 0, 2}, {0, 0, 2}).off_space == 4);

    // A mesh bound rejects coarse paths.
    BrokenPath coarse{{geodesic_arc(s2, {0, 0, 1}, {1, 0, 0}, 3)}};
    CHECK(validate_broken_path(s2, coarse, {0, 0, 1}, {1, 0, 0}).valid);
    CHECK_FALSE(validate_broken_path(s2, coarse, {0, 0, 1}, {1, 0, 0}, default_delta, 0.5).valid);
}

TEST_CASE("validity passes from a subgroup to the group")
{
    const auto geometry = sphere(2);
    const auto trivial = standard_space(geometry, "trivial");
    const auto flip = standard_space(geometry, "flip");
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = geometry->random_point(rng);
        const auto y = geometry->random_point(rng);
        const auto m = geometry->random_point(rng);
        BrokenPath bp{{geodesic_arc(trivial, x, m), geodesic_arc(trivial, m, y)}};
        const auto small = validate_broken_path(trivial, bp, x, y);
        const auto big = validate_broken_path(flip, bp, x, y);
        CHECK(small.valid);
        CHECK(big.valid);
        CHECK(big.joint_residuals[0] <= small.joint_residuals[0]);
    }
}

TEST_CASE("stage embedding")
{
    const auto s2 = standard_space(sphere(2), "flip");
    const Point x{0.6, 0.0, 0.8}, y{0.0, 0.6, 0.8};
    BrokenPath p{{geodesic_arc(s2, x, y)}};
    const auto e = embed_stage(p);
    REQUIRE(e.stage() == 2);
    CHECK(e.legs[0] == p.legs[0]);
    CHECK(e.legs[1] == SampledPath::constant(y, p.legs[0].size()));
    CHECK(e.start() == p.start());
    CHECK(e.end() == p.end());

    const auto before = validate_broken_path(s2, p, x, y);
    const auto after = validate_broken_path(s2, e, x, y);
    CHECK(before.valid);
    CHECK(after.valid);
    CHECK(after.joint_residuals == std::vector<double>{0.0});

    const auto ee = embed_stage(e);
    CHECK(ee.stage() == 3);
    CHECK(ee.legs[2] == ee.legs[1]);
    CHECK(validate_broken_path(s2, ee, x, y).joint_residuals == std::vector<double>{0.0, 0.0});
}

TEST_CASE("orbit projection")
{
    const auto s2 = standard_space(sphere(2), "flip");
    const auto model = standard_orbit_model(s2);
    const Point x{-0.6, 0.0, 0.8};
    const auto gx = s2.act(1, x);
    BrokenPath jump{{SampledPath::constant(x, 8), SampledPath::constant(gx, 8)}};
    const auto flat = project_to_orbit(s2, jump, model);
    for (std::size_t i = 0; i < flat.size(); ++i)
        CHECK(flat.point(i) == Point{0.6, 0.0, 0.8});

    const auto leg = geodesic_arc(s2, x, {0.0, 1.0, 0.0});
    const auto projected = project_to_orbit(s2, BrokenPath{{leg}}, model);
    for (std::size_t i = 0; i < leg.size(); ++i)
        CHECK(projected.point(i) == model.project(leg.point(i)));

    BrokenPath broken{{SampledPath::constant(x, 8), SampledPath::constant({0, 1, 0}, 8)}};
    CHECK_THROWS_AS(project_to_orbit(s2, broken, model), std::invalid_argument);
}

TEST_CASE("covering lifts round-trip")
{
    SUBCASE("hexagon over triangle")
    {
        const auto quotient = hexagon_antipodal();
        const auto space = realization_space(quotient.action);
        const auto model = realization_orbit_model(quotient);
        const auto& qg = static_cast<const RealizationGeometry&>(model.quotient->geometry());
        const auto& real = static_cast<const RealizationGeometry&>(space.geometry());

        // Once round the triangle, starting from the midpoint of an edge.
        Point mid(3, 0.0);
        mid[0] = mid[1] = 0.5;
        const std::vector<Point> corners{mid, qg.vertex_point(1), qg.vertex_point(2), qg.vertex_point(0), mid};
        SampledPath loop = geodesic_arc(*model.quotient, corners[0], corners[1], 16);
        for (std::size_t i = 2; i < corners.size(); ++i)
            loop = concat(qg, loop, geodesic_arc(*model.quotient, corners[i - 1], corners[i], 16));
        const auto fiber = model.fiber(mid);
        REQUIRE(fiber.size() == 2);
        const auto lift = lift_path(space, model, loop, fiber[0]);
        CHECK(sup_distance(qg, map_path(lift, model.project), loop) < 1e-6);
        CHECK(lift.front() == fiber[0]);
        // The loop lifts to a path ending at the other preimage.
        CHECK(real.distance(lift.back(), fiber[1]) < 1e-9);
        CHECK(max_gap(real, lift) < 0.2);
        CHECK_THROWS(lift_path(space, model, loop, real.vertex_point(2)));
    }
    SUBCASE("torus half-turn")
    {
        const auto space =
            standard_space(std::make_shared<TorusGeometry>(std::vector<double>{1.0, 1.0}), "torus-halfturn");
        const auto model = standard_orbit_model(space);
        const auto q = geodesic_arc(*model.quotient, {0.1, 0.2}, {0.4, 0.9});
        const auto lift = lift_path(space, model, q, {0.6, 0.2});
        CHECK(sup_distance(model.quotient->geometry(), map_path(lift, model.project), q) < 1e-6);
        // The quotient geodesic wraps backward along axis 0, so the lift does too.
        CHECK(lift.back()[0] == doctest::Approx(0.4));
        CHECK(lift.back()[1] == doctest::Approx(0.9));
    }
}

TEST_CASE("orbit models")
{
    const auto wedge = standard_space(std::make_shared<WedgeGeometry>(3), "wedge-rotate");
    const auto m = standard_orbit_model(wedge);
    CHECK(m.fiber({0.25}).size() == 3);
    CHECK(m.fiber({0.0}).size() == 1);
    CHECK(m.project(m.section({0.25})) == Point{0.25});
    CHECK(wedge.act(2, {1, 0.3}) == Point{0, 0.3});

    CHECK_THROWS_AS(standard_orbit_model(standard_space(sphere(2), "antipodal")), std::invalid_argument);
    CHECK_THROWS_AS(standard_space(sphere(2), "wedge-swap"), std::invalid_argument);
}

TEST_CASE("actions must be isometries")
{
    const auto g = sphere(1);
    CHECK_THROWS_AS(ConfigSpace(g, FiniteGroup::cyclic(2),
                                [](int e, const Point& p) { return e ? Point{p[0], std::abs(p[1])} : p; }, "fold"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConfigSpace(g, FiniteGroup::cyclic(2), [](int, const Point& p) { return Point{-p[0], p[1]}; },
                                "bad identity"),
                    std::invalid_argument);
    CHECK_NOTHROW(standard_space(sphere(3), "antipodal"));
    CHECK(standard_space(sphere(2), "antipodal").is_free_on({{1, 0, 0}, {0, 0, 1}}));
    CHECK_FALSE(standard_space(sphere(2), "flip").is_free_on({{0, 0, 1}}));
}

TEST_CASE("path csv")
{
    std::ostringstream out;
    write_path_csv(out, SampledPath(2, {0.0, 1.0, 0.5, 0.25}));
    CHECK(out.str() == "0,1\n0.5,0.25\n");
}
