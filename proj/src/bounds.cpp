#include "efftc/bounds.hpp"

#include "efftc/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace efftc {

std::map<std::string, double> VerifyParams::as_map() const
{
    return {{"grid", static_cast<double>(grid)},
            {"epsilon", epsilon},
            {"delta", delta},
            {"modulus", modulus},
            {"samples", static_cast<double>(samples)}};
}

std::string CoverCertificate::label() const
{
    std::ostringstream out;
    if (certified) {
        out << "certified at resolution (R=" << params.grid << ", eps=" << params.epsilon
            << ", delta=" << params.delta << ", L=" << params.modulus << ")";
    } else if (refutation) {
        out << "refuted (" << refutation->condition << "): " << refutation->detail;
    } else {
        out << "not certified";
    }
    return out.str();
}

namespace {

std::string point_text(const Point& p)
{
    std::ostringstream out;
    out.precision(6);
    out << '(';
    for (std::size_t i = 0; i < p.size(); ++i)
        out << (i ? ", " : "") << p[i];
    out << ')';
    return out.str();
}

class Verifier {
public:
    Verifier(const PlannerCover& cover, const VerifyParams& params, CoverCertificate& cert)
        : cover_(cover), params_(params), cert_(cert), space_(*cover.space), g_(space_.geometry())
    {
        cert_.cover = cover.name;
        cert_.stage = cover.stage;
        cert_.claimed_bound = cover.claimed_bound();
        cert_.params = params;
        cert_.set_usage.assign(cover.sets.size(), 0);
    }

    // Certifies all pairs (xs[i], ys[j]); x_neighbors may be empty.
    bool run(const std::vector<Point>& xs, const std::vector<std::vector<std::size_t>>& x_neighbors,
             const std::vector<Point>& ys, const std::vector<std::vector<std::size_t>>& y_neighbors)
    {
        xs_ = &xs;
        ys_ = &ys;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const Row* row = compute_row(i);
            if (!row)
                return false;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                ++cert_.set_usage[row->chosen[j]];
                ++cert_.pairs;
            }
            for (std::size_t j = 0; j < ys.size(); ++j) {
                const auto s = row->chosen[j];
                for (std::size_t l : y_neighbors[j])
                    if (cover_.sets[s].contains(xs[i], ys[l], params_.epsilon) && !check(i, j, s, i, l))
                        return false;
                if (x_neighbors.empty())
                    continue;
                for (std::size_t k : x_neighbors[i])
                    if (cover_.sets[s].contains(xs[k], ys[j], params_.epsilon) && !check(i, j, s, k, j))
                        return false;
            }
            // Later rows look forward; wrapped neighbors behind them are recomputed.
            rows_.erase(rows_.begin(), rows_.upper_bound(i));
        }
        cert_.certified = true;
        return true;
    }

private:
    struct Row {
        std::vector<std::size_t> chosen;
        std::vector<BrokenPath> outputs;
    };

    // Selected set and validated output for every pair (xs[i], y), cached.
    const Row* compute_row(std::size_t i)
    {
        if (auto it = rows_.find(i); it != rows_.end())
            return &it->second;
        const Point& x = (*xs_)[i];
        Row row;
        row.chosen.resize(ys_->size());
        row.outputs.resize(ys_->size());
        for (std::size_t j = 0; j < ys_->size(); ++j) {
            const Point& y = (*ys_)[j];
            const auto s = cover_.select(x, y, params_.epsilon);
            if (!s) {
                fail("coverage", x, y, "no set contains the pair at margin " + std::to_string(params_.epsilon));
                return nullptr;
            }
            row.chosen[j] = *s;
            auto out = evaluate(*s, x, y);
            if (!out)
                return nullptr;
            row.outputs[j] = std::move(*out);
        }
        return &rows_.emplace(i, std::move(row)).first->second;
    }

    // Continuity of set s between (x_i, y_j) and (x_k, y_l).
    bool check(std::size_t i, std::size_t j, std::size_t s, std::size_t k, std::size_t l)
    {
        const Row* other = compute_row(k);
        if (!other)
            return false;
        std::optional<BrokenPath> fresh;
        const BrokenPath* b = &other->outputs[l];
        if (other->chosen[l] != s) {
            if (!(fresh = evaluate(s, (*xs_)[k], (*ys_)[l])))
                return false;
            b = &*fresh;
        }
        return continuous((*xs_)[i], (*ys_)[j], rows_.at(i).outputs[j], (*xs_)[k], (*ys_)[l], *b);
    }

    bool fail(const std::string& condition, const Point& x, const Point& y, const std::string& detail)
    {
        cert_.refutation = Refutation{condition, x, y, detail + " at x=" + point_text(x) + ", y=" + point_text(y)};
        return false;
    }

    std::optional<BrokenPath> evaluate(std::size_t s, const Point& x, const Point& y)
    {
        BrokenPath out;
        try {
            out = cover_.sets[s].section(x, y);
        } catch (const std::exception& e) {
            fail("section", x, y, "set " + cover_.sets[s].name + " failed: " + e.what());
            return std::nullopt;
        }
        if (out.stage() != cover_.stage) {
            fail("validation", x, y, "set " + cover_.sets[s].name + " returned stage " + std::to_string(out.stage()));
            return std::nullopt;
        }
        const auto r = validate_broken_path(space_, out, x, y, params_.delta);
        for (double j : r.joint_residuals)
            cert_.worst_joint_residual = std::max(cert_.worst_joint_residual, j);
        cert_.worst_endpoint_residual = std::max({cert_.worst_endpoint_residual, r.start_residual, r.end_residual});
        cert_.max_gap = std::max(cert_.max_gap, r.max_gap);
        if (!r.valid) {
            std::ostringstream detail;
            detail << "set " << cover_.sets[s].name << " output invalid: start residual " << r.start_residual
                   << ", end residual " << r.end_residual << ", off-space samples " << r.off_space;
            for (double j : r.joint_residuals)
                detail << ", joint " << j;
            fail("validation", x, y, detail.str());
            return std::nullopt;
        }
        return out;
    }

    bool continuous(const Point& x, const Point& y, const BrokenPath& a, const Point& x2, const Point& y2,
                    const BrokenPath& b)
    {
        ++cert_.continuity_checks;
        const double input = std::hypot(g_.distance(x, x2), g_.distance(y, y2));
        const double output = broken_distance(g_, a, b);
        if (input > 0.0)
            cert_.worst_continuity_ratio = std::max(cert_.worst_continuity_ratio, output / input);
        if (output > params_.modulus * input + params_.delta) {
            std::ostringstream detail;
            detail << "outputs differ by " << output << " for inputs " << input << " apart (neighbor x="
                   << point_text(x2) << ", y=" << point_text(y2) << ")";
            return fail("continuity", x, y, detail.str());
        }
        return true;
    }

    const PlannerCover& cover_;
    const VerifyParams& params_;
    CoverCertificate& cert_;
    const ConfigSpace& space_;
    const Geometry& g_;
    const std::vector<Point>* xs_ = nullptr;
    const std::vector<Point>* ys_ = nullptr;
    std::map<std::size_t, Row> rows_;
};

// Pullback of a cochain along a vertex map; simplices whose image degenerates get 0.
Cochain pullback(const SimplicialComplex& source, const std::function<int(int)>& vertex_map,
                 const SimplicialComplex& target, const Cochain& c)
{
    Cochain out = Cochain::zero(source, c.degree);
    if (c.degree > source.dimension())
        return out;
    const auto& simplices = source.simplices(c.degree);
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        std::set<int> image;
        for (int v : simplices[i])
            image.insert(vertex_map(v));
        if (image.size() != simplices[i].size())
            continue;
        const auto idx = target.index_of(Simplex(image.begin(), image.end()));
        if (idx && c.coefficients.get(*idx))
            out.coefficients.set(i);
    }
    return out;
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

CoverCertificate verify_cover(const PlannerCover& cover, const VerifyParams& params)
{
    CoverCertificate cert;
    const auto grid = cover.space->geometry().grid(params.grid);
    Verifier(cover, params, cert).run(grid.points, grid.neighbors, grid.points, grid.neighbors);
    return cert;
}

CoverCertificate verify_cat_cover(const PlannerCover& cover, const Point& basepoint, const VerifyParams& params)
{
    if (!cover.space->geometry().contains(basepoint, 1e-9))
        throw std::invalid_argument("basepoint is not a point of the space");
    CoverCertificate cert;
    const auto grid = cover.space->geometry().grid(params.grid);
    Verifier(cover, params, cert).run({basepoint}, {}, grid.points, grid.neighbors);
    return cert;
}

ZeroDivisorReport zero_divisor_cup_length(const GroupAction& action)
{
    const auto diagonal = saturated_diagonal(action);
    const auto& k = diagonal.action.complex();
    const auto& tee = diagonal.united;
    const auto ring = cohomology_ring(k);
    const auto square = GradedAlgebra::tensor(ring.algebra, ring.algebra);
    const Cohomology target(tee);

    std::vector<const Cochain*> basis;
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& rep : ring.cohomology->representatives(d))
            basis.push_back(&rep);
    std::vector<Cochain> left, right;
    for (const auto* rep : basis) {
        left.push_back(pullback(tee, [&](int v) { return diagonal.first(v); }, k, *rep));
        right.push_back(pullback(tee, [&](int v) { return diagonal.second(v); }, k, *rep));
    }

    ZeroDivisorReport report;
    report.subdivisions = diagonal.subdivisions;
    report.diagonal_simplices = tee.size();
    const int top = 2 * k.dimension();
    report.kernel_dims.assign(static_cast<std::size_t>(std::max(top + 1, 1)), 0);
    std::vector<f2::BitVector> generators;
    for (int d = 1; d <= top; ++d) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < square.dimension(); ++i)
            if (square.degree(i) == d)
                members.push_back(i);
        const std::size_t width = d <= tee.dimension() ? target.betti(d) : 0;
        std::vector<f2::BitVector> images;
        for (std::size_t m : members) {
            const std::size_t a = m / basis.size(), b = m % basis.size();
            if (width == 0) {
                images.emplace_back(0);
                continue;
            }
            images.push_back(target.coordinates(cup_product(tee, left[a], right[b])));
        }
        const auto kernel = f2::kernel(images, width);
        report.kernel_dims[static_cast<std::size_t>(d)] = kernel.size();
        for (const auto& kv : kernel) {
            f2::BitVector g(square.dimension());
            for (auto i : kv.support())
                g.set(members[i]);
            generators.push_back(std::move(g));
        }
    }
    report.cup_length = square.cup_length(generators);
    return report;
}

CriterionResult cd_positivity_criterion(const GroupAction& action)
{
    CriterionResult r;
    r.group_order = action.group().order();
    r.hypothesis = fixed_set_hypothesis(regularized(action));
    r.positive = r.hypothesis.holds && r.group_order <= r.hypothesis.cd_x;
    return r;
}

std::string CdBoundCheck::status() const
{
    if (!hypothesis_holds)
        return "hypothesis-violated";
    return passed() ? "pass" : "fail";
}

CdBoundCheck cd_bound_check(const GroupAction& action, std::optional<std::vector<int>> elements)
{
    CdBoundCheck r;
    r.hypothesis_holds = fixed_set_hypothesis(regularized(action)).holds;
    const auto diagonal = saturated_diagonal(action, std::move(elements));
    r.elements = diagonal.elements.size();
    r.simplices = diagonal.united.size();
    r.lhs = cohomology(diagonal.united).cd;
    r.rhs = cohomology(action.complex()).cd + static_cast<int>(r.elements) - 1;
    return r;
}

int orbit_nilpotency_lower_bound(const GroupAction& action)
{
    const auto q = quotient_complex(action);
    const auto& k = q.action.complex();
    const Cohomology down(q.complex);
    std::vector<Cochain> image;
    for (int d = 1; d <= q.complex.dimension(); ++d)
        for (const auto& rep : down.representatives(d))
            image.push_back(pullback(k, [&](int v) { return q.project(v); }, q.complex, rep));
    return cup_length(k, image);
}

nlohmann::ordered_json BoundReport::to_json() const
{
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto* b : {&upper, &lower})
        for (const auto& [key, value] : b->params)
            if (!params.contains(key))
                params[key] = value;
    nlohmann::ordered_json j;
    j["invariant"] = invariant;
    j["scenario"] = scenario;
    j["lower"] = lower.value;
    j["lower_source"] = lower.source;
    j["upper"] = upper.value;
    j["upper_source"] = upper.source;
    j["params"] = params;
    j["status"] = status == Status::consistent ? "consistent" : "contradiction";
    if (!diagnostics.empty())
        j["diagnostics"] = diagnostics;
    return j;
}

std::string BoundReport::csv_header() { return "invariant,scenario,lower,lower_source,upper,upper_source,status"; }

std::string BoundReport::csv_row() const
{
    std::ostringstream out;
    out << csv_quote(invariant) << ',' << csv_quote(scenario) << ',' << lower.value << ',' << csv_quote(lower.source)
        << ',' << upper.value << ',' << csv_quote(upper.source) << ','
        << (status == Status::consistent ? "consistent" : "contradiction");
    return out.str();
}

BoundReport reconcile(const std::string& scenario, const std::string& invariant, const std::vector<Bound>& lowers,
                      const std::vector<Bound>& uppers)
{
    if (lowers.empty() || uppers.empty())
        throw std::invalid_argument("reconcile needs at least one lower and one upper bound for " + invariant);
    BoundReport r{invariant, scenario, lowers.front(), uppers.front(), Status::consistent, {}};
    for (const auto& b : lowers)
        if (b.value > r.lower.value)
            r.lower = b;
    for (const auto& b : uppers)
        if (b.value < r.upper.value)
            r.upper = b;
    if (r.lower.value > r.upper.value) {
        r.status = Status::contradiction;
        r.diagnostics.push_back("lower bound " + std::to_string(r.lower.value) + " (" + r.lower.source +
                                ") exceeds upper bound " + std::to_string(r.upper.value) + " (" + r.upper.source + ")");
        for (const auto& b : lowers)
            r.diagnostics.push_back("lower " + std::to_string(b.value) + ": " + b.source);
        for (const auto& b : uppers)
            r.diagnostics.push_back("upper " + std::to_string(b.value) + ": " + b.source);
    }
    return r;
}

std::string invariant_name(const std::string& family, int stage)
{
    return family + "^{G," + (stage == stage_infinity ? std::string("inf") : std::to_string(stage)) + "}";
}

std::vector<BoundReport> reconcile_family(const std::string& scenario, const std::string& family,
                                          const std::map<int, std::vector<Bound>>& lowers,
                                          const std::map<int, std::vector<Bound>>& uppers)
{
    std::vector<BoundReport> reports;
    for (int target : {1, 2, 3, stage_infinity}) {
        auto carried = [&](const Bound& b, int from) {
            if (from == target)
                return b;
            Bound c = b;
            c.source += " (via " + invariant_name(family, from) + ")";
            return c;
        };
        // Bounds stated at the target stage come first so they win ties.
        std::vector<Bound> lo, up;
        for (bool native : {true, false}) {
            for (const auto& [k, bounds] : lowers) {
                const bool applies = k == stage_infinity || (target != stage_infinity && target <= k);
                if (applies && (k == target) == native)
                    for (const auto& b : bounds)
                        lo.push_back(carried(b, k));
            }
            for (const auto& [k, bounds] : uppers) {
                const bool applies =
                    k == target || (k != stage_infinity && (target == stage_infinity || k <= target));
                if (applies && (k == target) == native)
                    for (const auto& b : bounds)
                        up.push_back(carried(b, k));
            }
        }
        if (up.empty())
            continue;
        if (lo.empty())
            lo.push_back({0, "nonnegative", {}});
        reports.push_back(reconcile(scenario, invariant_name(family, target), lo, up));
    }
    return reports;
}

std::vector<std::string> check_chain(BoundReport& cat, BoundReport& tc)
{
    std::vector<std::string> issues;
    if (cat.lower.value > tc.upper.value)
        issues.push_back("cat >= " + std::to_string(cat.lower.value) + " but tc <= " + std::to_string(tc.upper.value) +
                         " violates cat <= tc");
    if (tc.lower.value > 2 * cat.upper.value)
        issues.push_back("tc >= " + std::to_string(tc.lower.value) + " but cat <= " + std::to_string(cat.upper.value) +
                         " violates tc <= 2 cat");
    if (cat.upper.value == 0 && tc.lower.value > 0)
        issues.push_back("cat = 0 but tc > 0");
    if (tc.upper.value == 0 && cat.lower.value > 0)
        issues.push_back("tc = 0 but cat > 0");
    for (auto* r : {&cat, &tc}) {
        if (!issues.empty())
            r->status = Status::contradiction;
        r->diagnostics.insert(r->diagnostics.end(), issues.begin(), issues.end());
    }
    return issues;
}

} // namespace efftc
