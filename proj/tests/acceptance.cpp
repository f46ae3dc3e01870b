// Acceptance run: one PASS/FAIL line per criterion with measured runtime.

#include "efftc/cohomology.hpp"
#include "efftc/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace efftc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::map<std::string, ScenarioResult> scenario_cache;

const ScenarioResult& scenario(const std::string& name)
{
    auto it = scenario_cache.find(name);
    if (it == scenario_cache.end())
        it = scenario_cache.emplace(name, run_scenario(name)).first;
    return it->second;
}

std::string interval(const ScenarioResult& r, const std::string& inv)
{
    const auto* b = r.find(inv);
    if (!b)
        return inv + " missing";
    return inv + " in [" + std::to_string(b->lower.value) + "," + std::to_string(b->upper.value) + "]";
}

bool has(const ScenarioResult& r, const std::string& inv, int lower, int upper)
{
    const auto* b = r.find(inv);
    return b && (lower < 0 || b->lower.value == lower) && (upper < 0 || b->upper.value == upper) &&
           b->status == Status::consistent;
}

bool upper_from(const ScenarioResult& r, const std::string& inv, const std::string& source_prefix)
{
    const auto* b = r.find(inv);
    return b && b->upper.source.rfind(source_prefix, 0) == 0;
}

bool all_consistent(const ScenarioResult& r)
{
    for (const auto& b : r.reports)
        if (b.status != Status::consistent)
            return false;
    return r.failures.empty();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, double limit, const std::function<Outcome()>& body)
{
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    const bool pass = o.pass && t < limit;
    failures += pass ? 0 : 1;
    std::printf("criterion %d: %s  %s  (%.2f s, limit %.0f s)\n", id, pass ? "PASS" : "FAIL", o.detail.c_str(), t,
                limit);
    std::fflush(stdout);
}

SimplicialComplex random_complex(std::mt19937& rng, int vertices, int facets, int max_dim)
{
    std::vector<Simplex> maximal;
    std::uniform_int_distribution<int> vertex(0, vertices - 1);
    for (int i = 0; i < facets; ++i) {
        std::set<int> s;
        const int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_dim + 1));
        while (static_cast<int>(s.size()) < size)
            s.insert(vertex(rng));
        maximal.emplace_back(s.begin(), s.end());
    }
    return SimplicialComplex::from_maximal(maximal);
}

std::vector<std::size_t> trimmed(std::vector<std::size_t> b)
{
    while (b.size() > 1 && b.back() == 0)
        b.pop_back();
    return b;
}

std::vector<GroupAction> catalog_actions()
{
    std::vector<int> halfturn;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            halfturn.push_back(((i + 2) % 4) * 3 + j);
    return {
        GroupAction::generated(models::polygon(6), {{3, 4, 5, 0, 1, 2}}),
        GroupAction::generated(models::polygon(6), {{0, 5, 4, 3, 2, 1}}),
        GroupAction::generated(models::tetrahedron_boundary(), {{1, 0, 2, 3}}),
        GroupAction::generated(models::tetrahedron_boundary(), {{1, 0, 3, 2}}),
        GroupAction::generated(models::octahedron_boundary(), {{3, 4, 5, 0, 1, 2}}),
        GroupAction::generated(models::triangle_wedge(2), {{0, 3, 4, 1, 2}}),
        GroupAction::generated(models::triangle_wedge(3), {{0, 3, 4, 5, 6, 1, 2}}),
        GroupAction::generated(models::torus(4, 3), {halfturn}),
        GroupAction::trivial(models::torus(3, 3)),
    };
}

struct CatalogCover {
    PlannerCover cover;
    std::optional<Point> basepoint;
};

std::vector<CatalogCover> catalog_covers()
{
    auto sphere = [](int n, const char* action) {
        return standard_space(std::make_shared<SphereGeometry>(n), action);
    };
    auto torus = [](std::vector<double> p, const char* action) {
        return standard_space(std::make_shared<TorusGeometry>(std::move(p)), action);
    };
    auto wedge = [](int c) { return standard_space(std::make_shared<WedgeGeometry>(c), "wedge-swap"); };

    std::vector<CatalogCover> covers;
    covers.push_back({farber_cover(sphere(1, "trivial")), {}});
    covers.push_back({farber_cover(sphere(2, "codim1-involution")), {}});
    covers.push_back({farber_cover(torus({1.0}, "trivial")), {}});
    covers.push_back({farber_cover(torus({1.0, 1.0}, "trivial")), {}});
    covers.push_back({involution_two_stage_cover(sphere(2, "codim1-involution")), {}});
    covers.push_back({involution_three_stage_planner(sphere(2, "codim1-involution")), {}});
    const auto flip = sphere(1, "flip");
    const auto flip_model = standard_orbit_model(flip);
    covers.push_back({cover_from_strict_section(flip, flip_model, pole_cover(*flip_model.quotient, {1.0, 0.0})), {}});
    const auto hex = torus({6.0}, "torus-halfturn");
    const auto hex_model = standard_orbit_model(hex);
    covers.push_back({cover_from_covering_lift(hex, hex_model, farber_cover(*hex_model.quotient)), {}});
    const auto t2 = torus({1.0, 1.0}, "torus-halfturn");
    const auto t2_model = standard_orbit_model(t2);
    covers.push_back({cover_from_covering_lift(t2, t2_model, farber_cover(*t2_model.quotient)), {}});
    for (int c : {2, 3}) {
        const auto w = wedge(c);
        covers.push_back({wedge_planner(w, farber_cover(*standard_orbit_model(w).quotient)), {}});
    }
    covers.push_back({sphere_cat_cover(sphere(2, "antipodal")), Point{0.0, 0.0, 1.0}});
    return covers;
}

} // namespace

int main()
{
    const auto start = Clock::now();

    criterion(1, 30, [] {
        const auto& r = scenario("s2-involution");
        const auto* two = r.find("tc^{G,2}");
        const auto* p = r.find("tc^{G,1}");
        const bool params = p && p->upper.params.at("grid") == 32 && p->upper.params.at("epsilon") == 0.05 &&
                            p->upper.params.at("delta") == 1e-6 && p->upper.params.at("modulus") == 10;
        const bool ok = params && has(r, "tc^{G,1}", -1, 2) && upper_from(r, "tc^{G,1}", "farber") &&
                        has(r, "tc^{G,2}", 1, 1) && two->lower.source.rfind("cd criterion", 0) == 0 &&
                        upper_from(r, "tc^{G,2}", "involution2") && has(r, "tc^{G,3}", -1, 0) &&
                        upper_from(r, "tc^{G,3}", "involution3") && all_consistent(r);
        return Outcome{ok, "S^2 reflection: " + interval(r, "tc^{G,1}") + ", " + interval(r, "tc^{G,2}") + ", " +
                               interval(r, "tc^{G,3}") + "; uppers (2,1,0) at R=32, eps=0.05, delta=1e-6, L=10"};
    });

    criterion(2, 10, [] {
        const auto& r = scenario("s1-antipodal");
        const int zcl = zero_divisor_cup_length(GroupAction::generated(models::polygon(6), {{3, 4, 5, 0, 1, 2}})).cup_length;
        const bool ok = has(r, "tc^{G,2}", -1, 1) && upper_from(r, "tc^{G,2}", "covering-lift") && zcl >= 1 &&
                        has(r, "tc^{G,inf}", 1, 1) && all_consistent(r);
        return Outcome{ok, "hexagon antipodal: covering-lift upper 1, zero-divisor cup length " + std::to_string(zcl) +
                               ", " + interval(r, "tc^{G,inf}")};
    });

    criterion(3, 10, [] {
        const auto& r = scenario("s1-flip");
        const auto c = cd_positivity_criterion(GroupAction::generated(models::polygon(6), {{0, 5, 4, 3, 2, 1}}));
        bool single_set = false;
        for (const auto& line : r.log)
            single_set = single_set || line.rfind("planner strict-section(pole) (stage 3, 1 sets): certified", 0) == 0;
        const bool ok = has(r, "tc^{G,3}", -1, 0) && upper_from(r, "tc^{G,3}", "strict-section") &&
                        single_set && c.verdict() == "inconclusive" &&
                        all_consistent(r);
        return Outcome{ok, "S^1 flip: single-set strict-section cover, " + interval(r, "tc^{G,3}") + ", criterion " +
                               c.verdict()};
    });

    criterion(4, 20, [] {
        bool ok = true;
        std::string detail;
        for (const char* name : {"wedge2-swap", "wedge3-rotate"}) {
            const auto t0 = Clock::now();
            const auto& r = scenario(name);
            const double t = seconds_since(t0);
            ok = ok && has(r, "tc^{G,3}", -1, 1) && upper_from(r, "tc^{G,3}", "wedge(") && has(r, "tc^{G,inf}", -1, 1) &&
                 all_consistent(r) && t < 10;
            char line[160];
            std::snprintf(line, sizeof line, "%s%s: strict-section transfer, %s (%.2f s)", detail.empty() ? "" : "; ",
                          name, interval(r, "tc^{G,inf}").c_str(), t);
            detail += line;
        }
        return Outcome{ok, detail};
    });

    criterion(5, 60, [] {
        const std::vector<std::pair<std::string, GroupAction>> cases{
            {"hexagon antipodal", GroupAction::generated(models::polygon(6), {{3, 4, 5, 0, 1, 2}})},
            {"hexagon reflection", GroupAction::generated(models::polygon(6), {{0, 5, 4, 3, 2, 1}})},
            {"tetrahedron reflection", GroupAction::generated(models::tetrahedron_boundary(), {{1, 0, 2, 3}})},
        };
        bool ok = true;
        std::string detail;
        for (const auto& [name, action] : cases) {
            const auto c = cd_bound_check(action);
            ok = ok && c.status() == "pass";
            detail += (detail.empty() ? "" : "; ") + name + " cd " + std::to_string(c.lhs) + " <= " +
                      std::to_string(c.rhs) + " (" + std::to_string(c.simplices) + " simplices)";
        }
        return Outcome{ok, detail};
    });

    criterion(6, 5, [] {
        const auto t2 = GroupAction::trivial(models::torus(3, 3));
        const int zcl = zero_divisor_cup_length(t2).cup_length;
        const int nil = orbit_nilpotency_lower_bound(t2);
        return Outcome{zcl == 2 && nil == 2,
                       "T^2: zero-divisor cup length " + std::to_string(zcl) + ", orbit nilpotency " + std::to_string(nil)};
    });

    criterion(7, 300, [start] {
        std::ostringstream detail;
        bool ok = true;

        // (a) coboundary squares to zero; Kunneth on products.
        std::mt19937 rng(2024);
        int a_pass = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto k = random_complex(rng, 6, 4, 2);
            const auto l = random_complex(rng, 5, 3, 2);
            bool good = true;
            for (int d = 0; d + 1 <= k.dimension(); ++d)
                good = good && (coboundary_matrix(k, d + 1) * coboundary_matrix(k, d)).is_zero();
            const auto bk = cohomology(k).betti, bl = cohomology(l).betti;
            std::vector<std::size_t> expected(bk.size() + bl.size() - 1, 0);
            for (std::size_t i = 0; i < bk.size(); ++i)
                for (std::size_t j = 0; j < bl.size(); ++j)
                    expected[i + j] += bk[i] * bl[j];
            good = good && trimmed(cohomology(product_complex(k, l).complex).betti) == trimmed(expected);
            a_pass += good ? 1 : 0;
        }
        ok = ok && a_pass == 20;
        detail << "(a) " << a_pass << "/20";

        // (b) stage embedding keeps certification and bound.
        VerifyParams coarse;
        coarse.grid = 16;
        int b_pass = 0, b_total = 0;
        for (const auto& c : catalog_covers()) {
            ++b_total;
            const auto e = embed_cover(c.cover);
            const auto before = c.basepoint ? verify_cat_cover(c.cover, *c.basepoint, coarse) : verify_cover(c.cover, coarse);
            const auto after = c.basepoint ? verify_cat_cover(e, *c.basepoint, coarse) : verify_cover(e, coarse);
            b_pass += before.certified && after.certified && after.claimed_bound == before.claimed_bound &&
                              after.stage == before.stage + 1
                          ? 1
                          : 0;
        }
        ok = ok && b_pass == b_total;
        detail << ", (b) " << b_pass << "/" << b_total << " covers at R=16";

        // (c) slice intersections are fixed sets.
        int c_pass = 0, c_total = 0;
        for (const auto& a : catalog_actions()) {
            const auto sd = saturated_diagonal(regularized(a));
            const auto& group = sd.action.group();
            for (std::size_t i = 0; i < sd.elements.size(); ++i)
                for (std::size_t j = 0; j < sd.elements.size(); ++j) {
                    ++c_total;
                    const int g = sd.elements[i], h = sd.elements[j];
                    std::set<Simplex> meet, image;
                    for (const auto& s : sd.slices[i].all_simplices())
                        if (sd.slices[j].contains(s))
                            meet.insert(s);
                    const auto fixed =
                        fixed_subcomplex(sd.action, group.cyclic_subgroup(group.multiply(group.inverse(h), g)));
                    for (const auto& s : fixed.all_simplices())
                        image.insert(sd.graph_simplex(g, s));
                    c_pass += meet == image ? 1 : 0;
                }
        }
        ok = ok && c_pass == c_total;
        detail << ", (c) " << c_pass << "/" << c_total << " slice pairs";

        // (d) the chain check never flags a catalog scenario.
        int d_pass = 0;
        const auto names = builtin_names();
        for (const auto& name : names) {
            const auto& r = scenario(name);
            bool chain_ok = all_consistent(r);
            for (const auto& f : r.failures)
                chain_ok = chain_ok && f.rfind("chain", 0) != 0;
            d_pass += chain_ok ? 1 : 0;
        }
        ok = ok && d_pass == static_cast<int>(names.size());
        detail << ", (d) " << d_pass << "/" << names.size() << " scenarios";

        // (e) the single-set claim tc(S^2) = 0 is refuted.
        VerifyParams fine;
        const auto e = verify_cover(geodesic_cover(standard_space(std::make_shared<SphereGeometry>(2), "trivial")), fine);
        ok = ok && !e.certified && e.refutation.has_value();
        detail << ", (e) " << (e.certified ? "not refuted" : e.refutation->condition + " refutation");

        const double total = seconds_since(start);
        ok = ok && total < 300;
        detail << "; full suite " << static_cast<int>(total + 0.5) << " s";
        return Outcome{ok, detail.str()};
    });

    std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
    return failures == 0 ? 0 : 1;
}
