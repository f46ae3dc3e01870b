#include "efftc/bounds.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace efftc;

namespace {

// Abstract F2 algebra on a basis with a multiplication table of basis
// indices (-1 for zero).
struct Algebra {
    std::vector<int> degree;
    std::vector<std::vector<int>> mult;
};

Algebra torus_ring()
{
    // 1, a, b, ab
    return {{0, 1, 1, 2}, {{0, 1, 2, 3}, {1, -1, 3, -1}, {2, 3, -1, -1}, {3, -1, -1, -1}}};
}

Algebra sphere_ring()
{
    return {{0, 2}, {{0, 1}, {1, -1}}};
}

using Vec = std::vector<std::uint8_t>;

// Null space of a dense F2 matrix by Gauss-Jordan elimination.
std::vector<Vec> null_space(oracle::Matrix m, std::size_t cols)
{
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && !m[p][c])
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[row]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != row && m[r][c])
                for (std::size_t k = 0; k < cols; ++k)
                    m[r][k] ^= m[row][k];
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end())
            continue;
        Vec v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            if (m[r][free])
                v[static_cast<std::size_t>(pivot_col[r])] = 1;
        basis.push_back(v);
    }
    return basis;
}

// Classical zero-divisor cup length: kernel of multiplication A (x) A -> A in
// positive degrees, then the longest nonzero product via spans of products.
int classical_zero_divisor_cup_length(const Algebra& a)
{
    const std::size_t n = a.degree.size();
    const std::size_t nn = n * n;
    auto tensor_mult = [&](const Vec& u, const Vec& v) {
        Vec out(nn, 0);
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < nn; ++j)
                if (u[i] && v[j]) {
                    const int l = a.mult[i / n][j / n];
                    const int r = a.mult[i % n][j % n];
                    if (l >= 0 && r >= 0)
                        out[static_cast<std::size_t>(l) * n + static_cast<std::size_t>(r)] ^= 1;
                }
        return out;
    };
    // Multiplication map restricted to positive total degree.
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < nn; ++i)
        if (a.degree[i / n] + a.degree[i % n] > 0)
            positive.push_back(i);
    oracle::Matrix mu(n, std::vector<std::uint8_t>(positive.size(), 0));
    for (std::size_t c = 0; c < positive.size(); ++c) {
        const int m = a.mult[positive[c] / n][positive[c] % n];
        if (m >= 0)
            mu[static_cast<std::size_t>(m)][c] = 1;
    }
    std::vector<Vec> kernel;
    for (const auto& v : null_space(mu, positive.size())) {
        Vec full(nn, 0);
        for (std::size_t c = 0; c < positive.size(); ++c)
            full[positive[c]] = v[c];
        kernel.push_back(full);
    }
    auto is_zero = [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](auto b) { return b == 0; }); };
    std::vector<Vec> power = kernel;
    int length = 0;
    while (std::any_of(power.begin(), power.end(), [&](const Vec& v) { return !is_zero(v); })) {
        ++length;
        std::vector<Vec> next;
        for (const auto& u : power)
            for (const auto& v : kernel)
                next.push_back(tensor_mult(u, v));
        power = next;
    }
    return length;
}

std::shared_ptr<const Geometry> sphere(int n) { return std::make_shared<SphereGeometry>(n); }

VerifyParams coarse(int grid)
{
    VerifyParams p;
    p.grid = grid;
    return p;
}

GroupAction hexagon_antipodal() { return GroupAction::generated(models::polygon(6), {{3, 4, 5, 0, 1, 2}}); }
GroupAction hexagon_reflection() { return GroupAction::generated(models::polygon(6), {{0, 5, 4, 3, 2, 1}}); }
GroupAction tetra_reflection() { return GroupAction::generated(models::tetrahedron_boundary(), {{1, 0, 2, 3}}); }

} // namespace

TEST_CASE("verification certifies true covers")
{
    const auto point = realization_space(GroupAction::trivial(models::point()));
    const auto cert = verify_cover(geodesic_cover(point), coarse(8));
    CHECK(cert.certified);
    CHECK(cert.claimed_bound == 0);
    CHECK(cert.pairs == 1);

    const auto s1 = standard_space(sphere(1), "trivial");
    const auto farber = verify_cover(farber_cover(s1), coarse(32));
    CHECK(farber.certified);
    CHECK(farber.pairs == 32 * 32);
    CHECK(farber.set_usage.size() == 2);
    CHECK(farber.set_usage[0] + farber.set_usage[1] == farber.pairs);
    CHECK(farber.worst_continuity_ratio <= 10.0);
    CHECK(farber.label() == "certified at resolution (R=32, eps=0.05, delta=1e-06, L=10)");

    const auto s2 = standard_space(sphere(2), "codim1-involution");
    const auto two = verify_cover(involution_two_stage_cover(s2), coarse(12));
    CHECK(two.certified);
    CHECK(two.stage == 2);
    CHECK(two.claimed_bound == 1);
    CHECK(two.worst_joint_residual <= 1e-6);
}

TEST_CASE("verification refutes false covers")
{
    SUBCASE("single geodesic set on the sphere")
    {
        const auto cert = verify_cover(geodesic_cover(standard_space(sphere(2), "trivial")), coarse(8));
        CHECK_FALSE(cert.certified);
        REQUIRE(cert.refutation.has_value());
        const auto& r = *cert.refutation;
        CHECK(r.condition == "section");
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            sum += (r.x[i] + r.y[i]) * (r.x[i] + r.y[i]);
        CHECK(std::sqrt(sum) < 1e-9);
        CHECK(cert.label().rfind("refuted (section)", 0) == 0);
    }
    SUBCASE("shortest displacement on the circle is discontinuous")
    {
        const auto t1 = standard_space(std::make_shared<TorusGeometry>(std::vector<double>{1.0}), "trivial");
        const auto cert = verify_cover(geodesic_cover(t1), coarse(32));
        CHECK_FALSE(cert.certified);
        REQUIRE(cert.refutation.has_value());
        CHECK(cert.refutation->condition == "continuity");
    }
    SUBCASE("uncovered pairs")
    {
        auto cover = farber_cover(standard_space(sphere(1), "trivial"));
        cover.sets.pop_back();
        const auto cert = verify_cover(cover, coarse(8));
        REQUIRE(cert.refutation.has_value());
        CHECK(cert.refutation->condition == "coverage");
    }
    SUBCASE("sections that miss the target")
    {
        auto cover = farber_cover(standard_space(sphere(1), "trivial"));
        const auto inner = cover.sets[0].section;
        cover.sets[0].section = [inner](const Point& x, const Point&) { return inner(x, x); };
        const auto cert = verify_cover(cover, coarse(8));
        REQUIRE(cert.refutation.has_value());
        CHECK(cert.refutation->condition == "validation");
    }
}

TEST_CASE("certification is monotone in the resolution")
{
    const auto t2 = standard_space(std::make_shared<TorusGeometry>(std::vector<double>{1.0, 1.0}), "trivial");
    const auto cover = farber_cover(t2);
    for (int grid : {16, 8, 4})
        CHECK(verify_cover(cover, coarse(grid)).certified);
}

TEST_CASE("cat verification")
{
    const auto arc = standard_space(std::make_shared<HemisphereGeometry>(1), "trivial");
    const auto c0 = verify_cat_cover(pole_cover(arc, {1.0, 0.0}), {0.0, 1.0}, coarse(32));
    CHECK(c0.certified);
    CHECK(c0.claimed_bound == 0);
    CHECK(c0.pairs == arc.geometry().grid(32).points.size());

    const auto flip = standard_space(sphere(1), "flip");
    const auto model = standard_orbit_model(flip);
    const auto strict = cover_from_strict_section(flip, model, pole_cover(*model.quotient, {1.0, 0.0}));
    CHECK(verify_cat_cover(strict, {0.0, 1.0}, coarse(32)).certified);

    const auto anti = standard_space(sphere(2), "antipodal");
    const auto cat = verify_cat_cover(embed_cover(sphere_cat_cover(anti)), {0.0, 0.0, 1.0}, coarse(32));
    CHECK(cat.certified);
    CHECK(cat.stage == 2);
    CHECK(cat.claimed_bound == 1);
    // From a grid point whose antipode is also on the grid.
    const Point base = anti.geometry().grid(8).points.front();
    CHECK_FALSE(verify_cat_cover(geodesic_cover(anti), base, coarse(8)).certified);
}

TEST_CASE("zero-divisor cup length")
{
    CHECK(zero_divisor_cup_length(GroupAction::trivial(models::point())).cup_length == 0);

    const auto t2 = zero_divisor_cup_length(GroupAction::trivial(models::torus(3, 3)));
    CHECK(t2.cup_length == 2);
    CHECK(t2.cup_length == classical_zero_divisor_cup_length(torus_ring()));
    // Kernel of H(T^2 x T^2) -> H(T^2) in degrees 1..4: dims 2, 5, 4, 1.
    CHECK(t2.kernel_dims.size() >= 5);
    CHECK(t2.kernel_dims[1] == 2);
    CHECK(t2.kernel_dims[2] == 5);
    CHECK(t2.kernel_dims[3] == 4);
    CHECK(t2.kernel_dims[4] == 1);

    const auto s2 = zero_divisor_cup_length(GroupAction::trivial(models::tetrahedron_boundary()));
    CHECK(s2.cup_length == 1);
    CHECK(s2.cup_length == classical_zero_divisor_cup_length(sphere_ring()));

    CHECK(zero_divisor_cup_length(hexagon_antipodal()).cup_length >= 1);
    CHECK(zero_divisor_cup_length(tetra_reflection()).cup_length >= 0);
}

TEST_CASE("cd positivity criterion")
{
    const auto tet = cd_positivity_criterion(tetra_reflection());
    CHECK(tet.verdict() == "positive");
    CHECK(tet.hypothesis.holds);
    CHECK(tet.group_order == 2);

    CHECK(cd_positivity_criterion(hexagon_antipodal()).verdict() == "inconclusive");
    CHECK(cd_positivity_criterion(hexagon_reflection()).verdict() == "inconclusive");
    CHECK(cd_positivity_criterion(GroupAction::trivial(models::tetrahedron_boundary())).verdict() == "positive");
    CHECK(cd_positivity_criterion(GroupAction::trivial(models::point())).verdict() == "inconclusive");
}

TEST_CASE("cd bound on the saturated diagonal")
{
    const auto trivial = cd_bound_check(GroupAction::trivial(models::torus(3, 3)));
    CHECK(trivial.lhs == 2);
    CHECK(trivial.rhs == 2);
    CHECK(trivial.status() == "pass");

    const auto hex = cd_bound_check(hexagon_antipodal());
    CHECK(hex.lhs == 1);
    CHECK(hex.rhs == 2);
    CHECK(hex.passed());

    const auto refl = cd_bound_check(hexagon_reflection());
    CHECK(refl.status() == "pass");
    CHECK(refl.rhs == 2);

    const auto tet = cd_bound_check(tetra_reflection());
    CHECK(tet.lhs == 2);
    CHECK(tet.rhs == 3);
    CHECK(tet.status() == "pass");
    CHECK(tet.simplices > 0);

    // Only the identity: the diagonal itself.
    const auto diag = cd_bound_check(tetra_reflection(), std::vector<int>{0});
    CHECK(diag.elements == 1);
    CHECK(diag.lhs == 2);
    CHECK(diag.rhs == 2);
}

TEST_CASE("orbit nilpotency")
{
    CHECK(orbit_nilpotency_lower_bound(GroupAction::trivial(models::point())) == 0);
    CHECK(orbit_nilpotency_lower_bound(GroupAction::trivial(models::torus(3, 3))) == 2);
    CHECK(orbit_nilpotency_lower_bound(hexagon_antipodal()) == 0);
    CHECK(orbit_nilpotency_lower_bound(hexagon_reflection()) == 0);
    CHECK(orbit_nilpotency_lower_bound(GroupAction::generated(models::triangle_wedge(2), {{0, 3, 4, 1, 2}})) == 1);
}

TEST_CASE("reconcile")
{
    const Bound one{1, "a", {}};
    const auto r = reconcile("s", "tc^{G,2}", {one}, {one});
    CHECK(r.status == Status::consistent);
    CHECK(r.lower.value == 1);
    CHECK(r.upper.value == 1);

    const auto bad = reconcile("s", "tc^{G,2}", {{2, "lo", {}}}, {{1, "up", {}}});
    CHECK(bad.status == Status::contradiction);
    REQUIRE_FALSE(bad.diagnostics.empty());
    CHECK(bad.diagnostics[0].find("exceeds") != std::string::npos);

    const auto pick = reconcile("s", "tc^{G,1}", {{0, "z", {}}, {1, "first", {}}, {1, "second", {}}},
                                {{2, "u2", {}}, {3, "u3", {}}});
    CHECK(pick.lower.source == "first");
    CHECK(pick.upper.source == "u2");

    CHECK_THROWS_AS(reconcile("s", "tc^{G,1}", {}, {one}), std::invalid_argument);
    CHECK_THROWS_AS(reconcile("s", "tc^{G,1}", {one}, {}), std::invalid_argument);
}

TEST_CASE("bounds carry across stages")
{
    std::map<int, std::vector<Bound>> lowers{{2, {{1, "criterion", {}}}}};
    std::map<int, std::vector<Bound>> uppers{{1, {{2, "farber", {}}}}, {2, {{1, "two", {}}}}, {3, {{0, "three", {}}}}};
    const auto reports = reconcile_family("s2", "tc", lowers, uppers);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].invariant == "tc^{G,1}");
    CHECK(reports[0].lower.value == 1);
    CHECK(reports[0].lower.source == "criterion (via tc^{G,2})");
    CHECK(reports[0].upper.value == 2);
    CHECK(reports[1].lower.value == 1);
    CHECK(reports[1].upper.value == 1);
    CHECK(reports[2].lower.value == 0);
    CHECK(reports[2].upper.value == 0);
    CHECK(reports[3].invariant == "tc^{G,inf}");
    CHECK(reports[3].upper.source == "three (via tc^{G,3})");
    for (const auto& r : reports)
        CHECK(r.status == Status::consistent);

    // An infinite-stage lower bound applies everywhere.
    const auto inf = reconcile_family("x", "cat", {{stage_infinity, {{1, "nil", {}}}}}, {{3, {{1, "u", {}}}}});
    REQUIRE(inf.size() == 2);
    CHECK(inf[0].invariant == "cat^{G,3}");
    CHECK(inf[0].lower.value == 1);
}

TEST_CASE("chain check flags only forced violations")
{
    auto report = [](const std::string& inv, int lo, int up) {
        return reconcile("s", inv, {{lo, "l", {}}}, {{up, "u", {}}});
    };
    auto cat = report("cat^{G,inf}", 0, 1);
    auto tc = report("tc^{G,inf}", 1, 1);
    CHECK(check_chain(cat, tc).empty());
    CHECK(cat.status == Status::consistent);

    cat = report("cat^{G,inf}", 2, 2);
    tc = report("tc^{G,inf}", 0, 1);
    CHECK_FALSE(check_chain(cat, tc).empty());
    CHECK(tc.status == Status::contradiction);

    cat = report("cat^{G,inf}", 0, 0);
    tc = report("tc^{G,inf}", 1, 2);
    const auto issues = check_chain(cat, tc);
    CHECK(issues.size() == 2);

    cat = report("cat^{G,inf}", 1, 1);
    tc = report("tc^{G,inf}", 3, 3);
    CHECK(check_chain(cat, tc).size() == 1);
}

TEST_CASE("report serialization is stable")
{
    Bound lo{1, "criterion", {}};
    Bound up{1, "involution2 cover, certified", {{"grid", 32}, {"epsilon", 0.05}}};
    const auto r = reconcile("s2-involution", "tc^{G,2}", {lo}, {up});
    const std::string json = r.to_json().dump();
    CHECK(json ==
          R"({"invariant":"tc^{G,2}","scenario":"s2-involution","lower":1,"lower_source":"criterion","upper":1,)"
          R"("upper_source":"involution2 cover, certified","params":{"epsilon":0.05,"grid":32.0},"status":"consistent"})");
    CHECK(r.to_json().dump() == json);
    CHECK(BoundReport::csv_header() == "invariant,scenario,lower,lower_source,upper,upper_source,status");
    CHECK(r.csv_row() == "\"tc^{G,2}\",s2-involution,1,criterion,1,\"involution2 cover, certified\",consistent");
}
