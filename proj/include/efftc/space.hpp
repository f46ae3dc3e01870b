#pragma once

#include "efftc/complex.hpp"
#include "efftc/symmetry.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace efftc {

using Point = std::vector<double>;

/// Uniformly parameterized polyline on a model space, stored as a flat array
/// of `size() * dim` coordinates.
class SampledPath {
public:
    SampledPath() = default;
    SampledPath(std::size_t dim, std::vector<double> coords);

    static SampledPath constant(const Point& p, std::size_t samples);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ ? coords_.size() / dim_ : 0; }
    const double* at(std::size_t i) const { return coords_.data() + i * dim_; }
    Point point(std::size_t i) const { return Point(at(i), at(i) + dim_); }
    Point front() const { return point(0); }
    Point back() const { return point(size() - 1); }
    const std::vector<double>& coords() const { return coords_; }

    friend bool operator==(const SampledPath&, const SampledPath&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// Raised when no shortest path is defined, e.g. for antipodal sphere points.
class GeodesicError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Finite sample of a space with forward adjacency: neighbors[i] lists grid
/// indices j > i or wrapped successors, one per coordinate direction.
struct Grid {
    std::vector<Point> points;
    std::vector<std::vector<std::size_t>> neighbors;
};

/// Metric model of a configuration space.
class Geometry {
public:
    virtual ~Geometry() = default;

    virtual std::string kind() const = 0;
    virtual std::size_t coordinate_dim() const = 0;
    virtual double distance(const double* a, const double* b) const = 0;
    double distance(const Point& a, const Point& b) const { return distance(a.data(), b.data()); }
    virtual bool contains(const Point& p, double tol) const = 0;
    /// Representative used for storage (e.g. torus coordinates reduced mod the periods).
    virtual Point canonical(const Point& p) const { return p; }
    /// Constant-speed shortest path with exact endpoints; throws GeodesicError
    /// where no shortest path is defined.
    virtual SampledPath geodesic(const Point& x, const Point& y, std::size_t samples) const = 0;
    virtual Grid grid(int resolution) const = 0;
    virtual Point random_point(std::mt19937_64& rng) const = 0;
};

/// Unit sphere S^n in R^{n+1} with the chordal metric.
class SphereGeometry : public Geometry {
public:
    explicit SphereGeometry(int n);
    int n() const { return n_; }

    std::string kind() const override { return "sphere"; }
    std::size_t coordinate_dim() const override { return static_cast<std::size_t>(n_ + 1); }
    using Geometry::distance;
    double distance(const double* a, const double* b) const override;
    bool contains(const Point& p, double tol) const override;
    Point canonical(const Point& p) const override;
    SampledPath geodesic(const Point& x, const Point& y, std::size_t samples) const override;
    /// n = 1: `resolution` equally spaced points. n = 2: resolution/2 latitude
    /// rings (polar axis x_2, offset half a step from the poles) times
    /// `resolution` meridians, so the angular step is 2*pi/resolution both ways.
    Grid grid(int resolution) const override;
    Point random_point(std::mt19937_64& rng) const override;

protected:
    int n_;
};

/// Closed hemisphere {x_0 >= 0} of S^n.
class HemisphereGeometry : public SphereGeometry {
public:
    explicit HemisphereGeometry(int n) : SphereGeometry(n) {}
    std::string kind() const override { return "hemisphere"; }
    bool contains(const Point& p, double tol) const override;
    Grid grid(int resolution) const override;
    Point random_point(std::mt19937_64& rng) const override;
};

/// Flat torus prod [0, P_i) with the wraparound Euclidean metric.
class TorusGeometry : public Geometry {
public:
    explicit TorusGeometry(std::vector<double> periods);
    const std::vector<double>& periods() const { return periods_; }

    std::string kind() const override { return "torus"; }
    std::size_t coordinate_dim() const override { return periods_.size(); }
    using Geometry::distance;
    double distance(const double* a, const double* b) const override;
    bool contains(const Point& p, double tol) const override;
    Point canonical(const Point& p) const override;
    /// Straight line to the nearest lift of y; among tied lifts the
    /// lexicographically smallest displacement wins.
    SampledPath geodesic(const Point& x, const Point& y, std::size_t samples) const override;
    /// `resolution` points per axis.
    Grid grid(int resolution) const override;
    Point random_point(std::mt19937_64& rng) const override;

    /// Signed displacement of the nearest lift of b relative to a, per axis.
    std::vector<double> displacement(const Point& a, const Point& b) const;
    /// Coordinate reduced into [0, P_i).
    double wrap(double v, std::size_t axis) const;

private:
    std::vector<double> periods_;
};

/// Wedge of m unit-circumference circles. A point is (branch, angle) with
/// angle in [0, 1); angle 0 is the common basepoint, stored with branch 0.
class WedgeGeometry : public Geometry {
public:
    explicit WedgeGeometry(int circles);
    int circles() const { return circles_; }

    std::string kind() const override { return "wedge"; }
    std::size_t coordinate_dim() const override { return 2; }
    using Geometry::distance;
    double distance(const double* a, const double* b) const override;
    bool contains(const Point& p, double tol) const override;
    Point canonical(const Point& p) const override;
    /// Same branch: shortest way round that circle (ties go backward). Different
    /// branches: shortest way into the basepoint, then out along y's branch.
    SampledPath geodesic(const Point& x, const Point& y, std::size_t samples) const override;
    /// Basepoint plus resolution-1 points on each circle.
    Grid grid(int resolution) const override;
    Point random_point(std::mt19937_64& rng) const override;

    static bool at_basepoint(const double* p);

private:
    int circles_;
};

/// Geometric realization of a simplicial complex inside the standard simplex
/// on its vertices: points are barycentric coordinate vectors indexed by
/// vertex position, with the Euclidean metric.
class RealizationGeometry : public Geometry {
public:
    explicit RealizationGeometry(SimplicialComplex complex);
    const SimplicialComplex& complex() const { return complex_; }

    std::string kind() const override { return "complex"; }
    std::size_t coordinate_dim() const override { return complex_.vertex_count(); }
    using Geometry::distance;
    double distance(const double* a, const double* b) const override;
    bool contains(const Point& p, double tol) const override;
    /// Straight segment when both points lie in a common simplex; otherwise the
    /// shortest route through a vertex of each carrier and the 1-skeleton.
    SampledPath geodesic(const Point& x, const Point& y, std::size_t samples) const override;
    /// Barycentric lattice points with denominator `resolution` in every
    /// maximal simplex; neighbors move 1/resolution between two vertices.
    Grid grid(int resolution) const override;
    Point random_point(std::mt19937_64& rng) const override;

    /// Support of a point as a simplex of vertex ids.
    Simplex carrier(const Point& p, double tol = 1e-12) const;
    Point vertex_point(int vertex) const;

private:
    SimplicialComplex complex_;
    // All-pairs 1-skeleton distances and next hops, by vertex position.
    std::vector<std::vector<double>> hops_;
    std::vector<std::vector<int>> next_;
};

/// Constant-speed resampling of a polyline given in unwrapped coordinates.
SampledPath resample_polyline(const std::vector<Point>& corners, std::size_t samples);

/// A geometry with an isometric action of a finite group by explicit point maps.
class ConfigSpace {
public:
    using PointMap = std::function<Point(int element, const Point& p)>;

    /// Checks on seeded random samples that every element acts isometrically,
    /// that the identity is trivial and that the maps compose like the table.
    ConfigSpace(std::shared_ptr<const Geometry> geometry, FiniteGroup group, PointMap act, std::string action_name);

    static ConfigSpace with_trivial_action(std::shared_ptr<const Geometry> geometry);

    const Geometry& geometry() const { return *geometry_; }
    std::shared_ptr<const Geometry> geometry_ptr() const { return geometry_; }
    const FiniteGroup& group() const { return group_; }
    const std::string& action_name() const { return action_name_; }

    Point act(int element, const Point& p) const { return geometry_->canonical(act_(element, p)); }
    /// min over g of d(g a, b).
    double orbit_distance(const Point& a, const Point& b) const;
    bool is_free_on(const std::vector<Point>& samples, double tol = 1e-9) const;

private:
    std::shared_ptr<const Geometry> geometry_;
    FiniteGroup group_;
    PointMap act_;
    std::string action_name_;
};

/// Sampling seed from EFFTC_SEED, or 0.
std::uint64_t sampling_seed();

/// Model of the orbit map X -> X/G used to push broken paths down and pull
/// quotient paths back.
struct OrbitModel {
    std::shared_ptr<const ConfigSpace> quotient;
    std::function<Point(const Point&)> project;
    /// All preimages of a quotient point.
    std::function<std::vector<Point>(const Point&)> fiber;
    /// Strict section X/G -> X, when one exists.
    std::function<Point(const Point&)> section;
};

/// Standard actions by name: sphere "trivial", "antipodal", "codim1-involution"
/// (alias "flip", negates x_0), "rotation" (negates x_0 and x_1); torus
/// "trivial", "torus-halfturn" (alias "antipodal", shifts axis 0 by half its
/// period); wedge "trivial", "wedge-swap" (alias "wedge-rotate", cyclic shift
/// of the branch labels); hemisphere and complex "trivial".
ConfigSpace standard_space(std::shared_ptr<const Geometry> geometry, const std::string& action);

/// Action of a simplicial group action on its realization (permuting
/// barycentric coordinates).
ConfigSpace realization_space(const GroupAction& action);

/// Orbit model of a standard action; throws std::invalid_argument for
/// actions without a geometric quotient model (e.g. antipodal spheres).
OrbitModel standard_orbit_model(const ConfigSpace& space);

/// Orbit model of a regular simplicial action on the realization of its
/// complex, with the realization of the quotient complex as orbit space.
OrbitModel realization_orbit_model(const Quotient& quotient);

} // namespace efftc
