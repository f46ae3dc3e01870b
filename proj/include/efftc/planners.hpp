#pragma once

#include "efftc/path.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace efftc {

/// One open set of a motion planner cover with its local section.
struct CoverSet {
    std::string name;
    /// How far (x, y) lies inside the set; the pair belongs to the set at
    /// margin eps when clearance >= eps. Sphere sets measure chordal
    /// distance, torus sets measure displacement in period units.
    std::function<double(const Point&, const Point&)> clearance;
    std::function<BrokenPath(const Point&, const Point&)> section;

    bool contains(const Point& x, const Point& y, double epsilon) const { return clearance(x, y) >= epsilon; }
};

/// Candidate witness for tc^{G,k}(X) <= sets.size() - 1.
struct PlannerCover {
    std::string name;
    int stage = 1;
    std::shared_ptr<const ConfigSpace> space;
    std::vector<CoverSet> sets;

    int claimed_bound() const { return static_cast<int>(sets.size()) - 1; }
    /// Lowest-index set containing (x, y) at margin eps.
    std::optional<std::size_t> select(const Point& x, const Point& y, double epsilon) const;
};

/// tc(S^n) cover: geodesics where |x + y| > 1 and a half-turn detour through
/// -x where |x - y| > 1; even n splits the detour set in two by the tangent
/// field used. Stage 1 on any action of the sphere.
PlannerCover farber_sphere_cover(const ConfigSpace& space, std::size_t samples = default_samples);

/// tc(T^n) cover for n <= 2 from shortest and counterclockwise displacements
/// per axis: 2 sets for n = 1, 3 for n = 2. Stage 1.
PlannerCover farber_torus_cover(const ConfigSpace& space, std::size_t samples = default_samples);

/// Dispatches on the geometry: spheres and tori as above.
PlannerCover farber_cover(const ConfigSpace& space, std::size_t samples = default_samples);

/// Single set through a fixed point: geodesic to the pole, then geodesic out.
/// Covers pairs whose geodesics to the pole exist (e.g. a closed hemisphere
/// around the pole, or any realized complex that is a cone).
PlannerCover pole_cover(const ConfigSpace& space, const Point& pole, std::size_t samples = default_samples);

/// Single set claiming all of X x X with the geodesic as section. Correct for
/// convex spaces; on spheres it is a deliberately false claim of tc = 0.
PlannerCover geodesic_cover(const ConfigSpace& space, std::size_t samples = default_samples);

/// Homeomorphism tau of S^n with |x - tau(x)| >= sqrt 2 used by the two-stage
/// planner: g composed with quarter turns on the coordinate pairs
/// (x_1, x_2), (x_3, x_4), ... Requires even n.
Point involution_tau(const Point& x);

/// Stage-2 cover for the reflection negating x_0: U_1 = {y far from -x} with
/// (s'(x, y), c_y) and U_2 = {y far from -tau(x)} with
/// (c_x, s'(gx, tau(x)) * s'(tau(x), y)). For odd n the stage-1 Farber cover
/// embedded at stage 2 is returned instead. Throws std::invalid_argument for
/// any other action.
PlannerCover involution_two_stage_cover(const ConfigSpace& space, std::size_t samples = default_samples);

/// Single-set stage-3 planner (c_x, s'(Gamma(x) x, N) * s'(N, Gamma(y) y), c_y)
/// with N = e_0 and Gamma(x) the reflection exactly when x_0 < 0.
PlannerCover involution_three_stage_planner(const ConfigSpace& space, std::size_t samples = default_samples);

/// Stage-3 cover (c_x, s[sigma_i([x], [y])], c_y) from a stage-1 cover of the
/// orbit space and a strict section s. Throws std::invalid_argument when the
/// model has no section or it fails rho o s = id on samples.
PlannerCover cover_from_strict_section(const ConfigSpace& space, const OrbitModel& model,
                                       const PlannerCover& quotient_cover);

/// Stage-2 cover (lift of sigma_i([x], [y]) from x, c_y) for a free action,
/// whose orbit map is a covering. Throws std::invalid_argument when the action
/// fixes a sampled point.
PlannerCover cover_from_covering_lift(const ConfigSpace& space, const OrbitModel& model,
                                      const PlannerCover& quotient_cover, double delta = default_delta);

/// Wedge of |G| circles permuted by G: strict-section transfer of a stage-1
/// cover of the circle, with the section onto branch 0.
PlannerCover wedge_planner(const ConfigSpace& wedge, const PlannerCover& base_cover);

/// cat(S^n) <= 1 cover, meant for pairs (x_0, y): geodesic where |x + y| > 1,
/// half-turn detour through -x where |x - y| > 1.
PlannerCover sphere_cat_cover(const ConfigSpace& space, std::size_t samples = default_samples);

/// Same sets with every section followed by the constant path at its end.
PlannerCover embed_cover(const PlannerCover& cover);

} // namespace efftc
