#pragma once

#include "efftc/planners.hpp"
#include "efftc/symmetry.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace efftc {

struct VerifyParams {
    int grid = 32;
    double epsilon = 0.05;
    double delta = default_delta;
    /// Continuity modulus L.
    double modulus = 10.0;
    std::size_t samples = default_samples;

    std::map<std::string, double> as_map() const;
};

struct Refutation {
    /// "coverage", "section", "validation" or "continuity".
    std::string condition;
    Point x;
    Point y;
    std::string detail;
};

struct CoverCertificate {
    std::string cover;
    int stage = 0;
    int claimed_bound = 0;
    bool certified = false;
    std::optional<Refutation> refutation;
    VerifyParams params;
    std::size_t pairs = 0;
    std::size_t continuity_checks = 0;
    /// Pairs assigned to each set under the lowest-index rule.
    std::vector<std::size_t> set_usage;
    double worst_joint_residual = 0.0;
    double worst_endpoint_residual = 0.0;
    double max_gap = 0.0;
    /// Largest output distance over input distance among continuity checks.
    double worst_continuity_ratio = 0.0;

    /// "certified at resolution (R, eps, delta, L)" or the refutation.
    std::string label() const;
};

/// Certifies cover.claimed_bound() on the grid of the cover's space: every
/// pair is covered at margin eps, every section output validates at delta,
/// and for grid-adjacent pairs inside one set the outputs differ leg-wise by at
/// most L times the input distance. Stops at the first refutation.
CoverCertificate verify_cover(const PlannerCover& cover, const VerifyParams& params);

/// verify_cover restricted to pairs (basepoint, y).
CoverCertificate verify_cat_cover(const PlannerCover& cover, const Point& basepoint, const VerifyParams& params);

struct ZeroDivisorReport {
    int cup_length = 0;
    /// Dimension of the kernel of H^d(X x X) -> H^d(diagonal) per degree d.
    std::vector<std::size_t> kernel_dims;
    int subdivisions = 0;
    std::size_t diagonal_simplices = 0;
};

/// Cup length of the kernel of H^+(X x X; F2) -> H^+(saturated diagonal; F2),
/// with H*(X x X) taken as H*(X) (x) H*(X) through cross products.
ZeroDivisorReport zero_divisor_cup_length(const GroupAction& action);

struct CriterionResult {
    bool positive = false;
    FixedSetHypothesis hypothesis;
    int group_order = 1;

    /// "positive" or "inconclusive".
    std::string verdict() const { return positive ? "positive" : "inconclusive"; }
};

/// Positive (tc^{G,2} >= 1) when cd(X^H) <= cd(X) for every nontrivial
/// subgroup H and |G| <= cd(X); inconclusive otherwise.
CriterionResult cd_positivity_criterion(const GroupAction& action);

struct CdBoundCheck {
    bool hypothesis_holds = false;
    /// cd of the saturated diagonal over the chosen elements.
    int lhs = -1;
    /// cd(X) + |L| - 1.
    int rhs = -1;
    std::size_t elements = 0;
    std::size_t simplices = 0;

    bool passed() const { return lhs <= rhs; }
    /// "pass", "fail" or "hypothesis-violated".
    std::string status() const;
};

CdBoundCheck cd_bound_check(const GroupAction& action, std::optional<std::vector<int>> elements = {});

/// Cup length of the image of H^+(X/G; F2) -> H^+(X; F2) under the orbit map.
int orbit_nilpotency_lower_bound(const GroupAction& action);

struct Bound {
    int value = 0;
    std::string source;
    std::map<std::string, double> params;
};

enum class Status { consistent, contradiction };

struct BoundReport {
    std::string invariant;
    std::string scenario;
    Bound lower;
    Bound upper;
    Status status = Status::consistent;
    std::vector<std::string> diagnostics;

    nlohmann::ordered_json to_json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

/// Largest lower bound against smallest upper bound (first listed wins ties);
/// contradiction when lower > upper. Throws std::invalid_argument when either
/// list is empty.
BoundReport reconcile(const std::string& scenario, const std::string& invariant, const std::vector<Bound>& lowers,
                      const std::vector<Bound>& uppers);

/// Stage key for the stabilized invariant.
inline constexpr int stage_infinity = 0;

/// Bounds for one invariant family ("tc" or "cat") by stage. Upper bounds
/// carry over to every later stage and to infinity; lower bounds carry over to
/// every earlier stage, and a lower bound at infinity to all stages. Ties go
/// to bounds stated at the reported stage. Reports stages 1..3 and infinity
/// wherever an upper bound is known; missing lower bounds default to 0.
std::vector<BoundReport> reconcile_family(const std::string& scenario, const std::string& family,
                                          const std::map<int, std::vector<Bound>>& lowers,
                                          const std::map<int, std::vector<Bound>>& uppers);

std::string invariant_name(const std::string& family, int stage);

/// Checks cat <= tc <= 2 cat and (cat = 0 iff tc = 0) on the stabilized
/// intervals; marks both reports as contradictions when the intervals force a
/// violation and returns the diagnostics.
std::vector<std::string> check_chain(BoundReport& cat_infinity, BoundReport& tc_infinity);

} // namespace efftc
