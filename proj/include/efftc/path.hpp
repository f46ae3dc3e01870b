#pragma once

#include "efftc/space.hpp"

#include <iosfwd>
#include <limits>
#include <vector>

namespace efftc {

inline constexpr std::size_t default_samples = 64;
inline constexpr double default_delta = 1e-6;

/// Raised when two paths to be concatenated do not meet.
class JoinError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

SampledPath geodesic_arc(const ConfigSpace& space, const Point& x, const Point& y,
                         std::size_t samples = default_samples);

/// p on [0, 1/2] followed by q on [1/2, 1]; the shared joint is stored once.
SampledPath concat(const Geometry& g, const SampledPath& p, const SampledPath& q, double tol = default_delta);
SampledPath reverse(const SampledPath& p);

/// Sum of distances between consecutive samples.
double path_length(const Geometry& g, const SampledPath& p);
double max_gap(const Geometry& g, const SampledPath& p);
/// Largest distance between corresponding samples; infinite when the sample
/// counts differ.
double sup_distance(const Geometry& g, const SampledPath& p, const SampledPath& q);

/// Element of the k-broken path space: consecutive legs meet in common orbits.
struct BrokenPath {
    std::vector<SampledPath> legs;

    int stage() const { return static_cast<int>(legs.size()); }
    Point start() const { return legs.front().front(); }
    Point end() const { return legs.back().back(); }
};

struct ValidationReport {
    /// min over g of d(g leg_i(1), leg_{i+1}(0)) for each joint.
    std::vector<double> joint_residuals;
    double start_residual = 0.0;
    double end_residual = 0.0;
    double max_gap = 0.0;
    /// Samples not on the model space (tolerance 1e-9).
    std::size_t off_space = 0;
    bool valid = false;
};

/// Checks orbit-matching joints and endpoints against (x, y) at tolerance
/// delta; `mesh` bounds the sample gaps.
ValidationReport validate_broken_path(const ConfigSpace& space, const BrokenPath& bp, const Point& x,
                                      const Point& y, double delta = default_delta,
                                      double mesh = std::numeric_limits<double>::infinity());

/// Appends the constant path at the last endpoint.
BrokenPath embed_stage(const BrokenPath& bp);

/// Largest leg-wise sup distance; infinite when the shapes differ.
double broken_distance(const Geometry& g, const BrokenPath& a, const BrokenPath& b);

/// Composite of the orbit map with each leg, concatenated into one path in
/// X/G. Throws std::invalid_argument when a joint is not orbit-matched.
SampledPath project_to_orbit(const ConfigSpace& space, const BrokenPath& bp, const OrbitModel& model,
                             double delta = default_delta);

/// Unique lift of a quotient path starting at `start`: each sample picks the
/// preimage nearest to the previous one. Throws std::runtime_error when the
/// lift leaves the fiber by more than delta or the nearest preimage is not
/// unambiguous.
SampledPath lift_path(const ConfigSpace& space, const OrbitModel& model, const SampledPath& quotient_path,
                      const Point& start, double delta = default_delta);

/// Applies a point map to every sample.
SampledPath map_path(const SampledPath& p, const std::function<Point(const Point&)>& f);

/// One sample per row, comma-separated coordinates.
void write_path_csv(std::ostream& out, const SampledPath& p);

} // namespace efftc
