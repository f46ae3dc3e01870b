#include "efftc/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace efftc {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Builtin {
    const char* name;
    const char* text;
};

const Builtin builtins[] = {
#include "builtin_scenarios.inc"
};

template <class T>
T field(const json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw ScenarioError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ScenarioError(where + ": field '" + key + "': " + e.what());
    }
}

template <class T>
T field_or(const json& j, const std::string& key, T fallback, const std::string& where)
{
    return j.contains(key) ? field<T>(j, key, where) : fallback;
}

std::string resolve(const std::string& base_dir, const std::string& file)
{
    fs::path p(file);
    if (p.is_relative())
        p = fs::path(base_dir) / p;
    if (!fs::exists(p))
        throw ScenarioError("referenced file not found: " + p.string());
    return p.string();
}

SimplicialComplex model_complex(const std::string& name, const std::vector<int>& args)
{
    auto arg = [&](std::size_t i) {
        if (i >= args.size())
            throw ScenarioError("complex model '" + name + "' needs " + std::to_string(i + 1) + " argument(s)");
        return args[i];
    };
    if (name == "point")
        return models::point();
    if (name == "polygon")
        return models::polygon(arg(0));
    if (name == "tetrahedron-boundary")
        return models::tetrahedron_boundary();
    if (name == "octahedron-boundary")
        return models::octahedron_boundary();
    if (name == "torus")
        return models::torus(arg(0), arg(1));
    if (name == "simplex")
        return models::simplex(arg(0));
    if (name == "triangle-wedge")
        return models::triangle_wedge(arg(0));
    throw ScenarioError("unknown complex model '" + name + "'");
}

std::optional<GroupAction> load_action(const json& doc, const std::string& base_dir)
{
    if (!doc.contains("complex"))
        return std::nullopt;
    const json& c = doc["complex"];
    SimplicialComplex k;
    if (c.contains("file"))
        k = read_complex_file(resolve(base_dir, field<std::string>(c, "file", "complex")));
    else
        k = model_complex(field<std::string>(c, "model", "complex"),
                          field_or<std::vector<int>>(c, "args", {}, "complex"));
    std::vector<std::vector<int>> gens;
    if (c.contains("generators_file"))
        gens = read_generators_file(resolve(base_dir, field<std::string>(c, "generators_file", "complex")));
    else
        gens = field_or<std::vector<std::vector<int>>>(c, "generators", {}, "complex");
    return gens.empty() ? GroupAction::trivial(std::move(k)) : GroupAction::generated(std::move(k), gens);
}

std::shared_ptr<const ConfigSpace> load_space(const json& doc, const std::optional<GroupAction>& action)
{
    const json& s = doc.contains("space") ? doc["space"] : json::object();
    const std::string kind = field<std::string>(s, "kind", "space");
    const std::string act = field_or<std::string>(doc, "action", "trivial", "scenario");
    if (kind == "complex") {
        if (!action)
            throw ScenarioError("space kind 'complex' needs a 'complex' section");
        return std::make_shared<ConfigSpace>(realization_space(*action));
    }
    std::shared_ptr<const Geometry> g;
    if (kind == "sphere")
        g = std::make_shared<SphereGeometry>(field<int>(s, "n", "space"));
    else if (kind == "torus")
        g = std::make_shared<TorusGeometry>(field<std::vector<double>>(s, "periods", "space"));
    else if (kind == "wedge")
        g = std::make_shared<WedgeGeometry>(field<int>(s, "circles", "space"));
    else
        throw ScenarioError("unknown space kind '" + kind + "'");
    try {
        return std::make_shared<ConfigSpace>(standard_space(g, act));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("action: ") + e.what());
    }
}

VerifyParams load_params(const json& doc, const ScenarioOverrides& o)
{
    VerifyParams p;
    if (doc.contains("params")) {
        const json& j = doc["params"];
        p.grid = field_or(j, "grid", p.grid, "params");
        p.epsilon = field_or(j, "epsilon", p.epsilon, "params");
        p.delta = field_or(j, "delta", p.delta, "params");
        p.modulus = field_or(j, "modulus", p.modulus, "params");
        p.samples = field_or(j, "samples", p.samples, "params");
    }
    if (o.grid)
        p.grid = *o.grid;
    if (o.epsilon)
        p.epsilon = *o.epsilon;
    if (o.delta)
        p.delta = *o.delta;
    if (o.modulus)
        p.modulus = *o.modulus;
    if (o.samples)
        p.samples = *o.samples;
    return p;
}

int parse_stage(const std::string& invariant)
{
    const auto comma = invariant.find(',');
    const auto close = invariant.find('}');
    if (comma == std::string::npos || close == std::string::npos || close < comma)
        throw ScenarioError("bad invariant name '" + invariant + "'");
    const std::string k = invariant.substr(comma + 1, close - comma - 1);
    return k == "inf" ? stage_infinity : std::stoi(k);
}

class Runner {
public:
    Runner(const json& doc, const ScenarioOverrides& overrides, const std::string& base_dir)
        : doc_(doc), params_(load_params(doc, overrides)), action_(load_action(doc, base_dir)),
          space_(load_space(doc, action_))
    {
        result_.id = field<std::string>(doc, "id", "scenario");
    }

    ScenarioResult run()
    {
        const json pipeline = field_or<json>(doc_, "pipeline", json::array(), "scenario");
        if (!pipeline.is_array())
            throw ScenarioError("pipeline must be an array");
        for (const json& step : pipeline)
            run_step(step);
        reconcile_all();
        check_expected();
        collect_rows();
        return std::move(result_);
    }

private:
    const GroupAction& action(const std::string& op) const
    {
        if (!action_)
            throw ScenarioError(op + " needs a 'complex' section");
        return *action_;
    }

    PlannerCover base_cover(const std::string& name, const ConfigSpace& space, const json& step) const
    {
        const std::size_t n = params_.samples;
        if (name == "farber")
            return farber_cover(space, n);
        if (name == "geodesic")
            return geodesic_cover(space, n);
        if (name == "sphere-cat")
            return sphere_cat_cover(space, n);
        if (name == "involution2")
            return involution_two_stage_cover(space, n);
        if (name == "involution3")
            return involution_three_stage_planner(space, n);
        if (name == "pole") {
            Point pole;
            if (step.contains("pole"))
                pole = field<Point>(step, "pole", "pole planner");
            else {
                pole.assign(space.geometry().coordinate_dim(), 0.0);
                pole[0] = 1.0;
            }
            return pole_cover(space, pole, n);
        }
        if (name == "strict-section" || name == "covering-lift" || name == "wedge") {
            const OrbitModel model = orbit_model(space);
            const std::string inner = field_or<std::string>(step, "quotient_planner", "farber", name);
            const PlannerCover q = base_cover(inner, *model.quotient, step);
            if (name == "covering-lift")
                return cover_from_covering_lift(space, model, q, params_.delta);
            if (name == "wedge")
                return wedge_planner(space, q);
            return cover_from_strict_section(space, model, q);
        }
        throw ScenarioError("unknown planner '" + name + "'");
    }

    OrbitModel orbit_model(const ConfigSpace& space) const
    {
        if (space.geometry().kind() == "complex")
            return realization_orbit_model(quotient_complex(action("orbit model")));
        return standard_orbit_model(space);
    }

    PlannerCover make_cover(const json& step) const
    {
        const std::string name = field<std::string>(step, "planner", "planner step");
        PlannerCover cover = base_cover(name, *space_, step);
        for (int i = field_or(step, "embed", 0, "planner step"); i > 0; --i)
            cover = embed_cover(cover);
        return cover;
    }

    void run_step(const json& step)
    {
        const std::string op = field<std::string>(step, "op", "pipeline step");
        try {
            if (op == "planner" || op == "cat-planner")
                planner_step(op, step);
            else if (op == "classical-zero-divisor-cup-length") {
                const auto z = zero_divisor_cup_length(GroupAction::trivial(action(op).complex()));
                add_lower(tc_lowers_, 1, z.cup_length, "zero-divisor cup length of H*(X; F2)");
                log(op + ": " + std::to_string(z.cup_length));
            } else if (op == "zero-divisor-cup-length") {
                const auto z = zero_divisor_cup_length(action(op));
                const std::string src = "zero-divisor cup length over the saturated diagonal";
                add_lower(tc_lowers_, 2, z.cup_length, src);
                if (action(op).is_free())
                    add_lower(tc_lowers_, stage_infinity, z.cup_length,
                              src + " (free action: orbit map is a covering, tc^{G,inf} = tc^{G,2})");
                log(op + ": " + std::to_string(z.cup_length) + " (" + std::to_string(z.diagonal_simplices) +
                    " diagonal simplices)");
            } else if (op == "quotient-zero-divisor-cup-length") {
                if (!orbit_model(*space_).section)
                    throw ScenarioError(op + " needs an orbit model with a strict section");
                const Quotient q = quotient_complex(action(op));
                const auto z = zero_divisor_cup_length(GroupAction::trivial(q.complex));
                add_lower(tc_lowers_, stage_infinity, z.cup_length,
                          "zero-divisor cup length of H*(X/G; F2) (strict section: tc^{G,inf} = tc(X/G))");
                log(op + ": " + std::to_string(z.cup_length));
            } else if (op == "cd-criterion") {
                const auto c = cd_positivity_criterion(action(op));
                if (c.positive)
                    add_lower(tc_lowers_, 2, 1, "cd criterion (|G| <= cd X, fixed sets of lower cd)");
                log(op + ": " + c.verdict() + " (|G| = " + std::to_string(c.group_order) + ")");
                expect_word(step, c.verdict(), op);
            } else if (op == "cd-bound") {
                std::optional<std::vector<int>> elements;
                if (step.contains("elements"))
                    elements = field<std::vector<int>>(step, "elements", op);
                const auto c = cd_bound_check(action(op), elements);
                log(op + ": cd = " + std::to_string(c.lhs) + " <= " + std::to_string(c.rhs) + " " + c.status());
                if (c.status() == "fail")
                    fail(op + ": cd of the saturated diagonal " + std::to_string(c.lhs) + " exceeds " +
                         std::to_string(c.rhs));
                expect_word(step, c.status(), op);
            } else if (op == "orbit-nilpotency") {
                const int nil = orbit_nilpotency_lower_bound(action(op));
                add_lower(cat_lowers_, stage_infinity, nil, "nilpotency of the image of the orbit map in H*(X; F2)");
                log(op + ": " + std::to_string(nil));
            } else {
                throw ScenarioError("unknown operation '" + op + "'");
            }
        } catch (const ScenarioError&) {
            throw;
        } catch (const std::exception& e) {
            fail(op + ": " + e.what());
        }
    }

    void planner_step(const std::string& op, const json& step)
    {
        const PlannerCover cover = make_cover(step);
        const bool cat = op == "cat-planner";
        CoverCertificate cert;
        if (cat)
            cert = verify_cat_cover(cover, field<Point>(step, "basepoint", op), params_);
        else
            cert = verify_cover(cover, params_);
        log(op + " " + cover.name + " (stage " + std::to_string(cover.stage) + ", " +
            std::to_string(cover.sets.size()) + " sets): " + cert.label());
        const std::string expect = field_or<std::string>(step, "expect", "certified", op);
        if (expect != "certified" && expect != "refuted")
            throw ScenarioError(op + ": expect must be 'certified' or 'refuted'");
        if (cert.certified != (expect == "certified"))
            fail(op + " " + cover.name + ": expected " + expect + ", got " + cert.label());
        if (!cert.certified)
            return;
        Bound b{cover.claimed_bound(), cover.name + " cover" + (cat ? " from the basepoint" : "") + ", " + cert.label(),
                params_.as_map()};
        (cat ? cat_uppers_ : tc_uppers_)[cover.stage].push_back(std::move(b));
    }

    void expect_word(const json& step, const std::string& got, const std::string& op)
    {
        if (step.contains("expect")) {
            const auto want = field<std::string>(step, "expect", op);
            if (want != got)
                fail(op + ": expected " + want + ", got " + got);
        }
    }

    void add_lower(std::map<int, std::vector<Bound>>& m, int stage, int value, std::string source)
    {
        m[stage].push_back({value, std::move(source), {}});
    }

    void log(std::string line) { result_.log.push_back(std::move(line)); }
    void fail(std::string line) { result_.failures.push_back(std::move(line)); }

    void reconcile_all()
    {
        result_.reports = reconcile_family(result_.id, "tc", tc_lowers_, tc_uppers_);
        auto cat = reconcile_family(result_.id, "cat", cat_lowers_, cat_uppers_);
        result_.reports.insert(result_.reports.end(), cat.begin(), cat.end());
        BoundReport* tc_inf = nullptr;
        BoundReport* cat_inf = nullptr;
        for (auto& r : result_.reports) {
            if (r.invariant == invariant_name("tc", stage_infinity))
                tc_inf = &r;
            if (r.invariant == invariant_name("cat", stage_infinity))
                cat_inf = &r;
        }
        if (tc_inf && cat_inf)
            for (const auto& issue : check_chain(*cat_inf, *tc_inf))
                fail("chain: " + issue);
        for (const auto& r : result_.reports)
            if (r.status == Status::contradiction)
                for (const auto& d : r.diagnostics)
                    fail(r.invariant + ": " + d);
    }

    void check_expected()
    {
        for (const json& e : field_or<json>(doc_, "expected", json::array(), "scenario")) {
            const auto inv = field<std::string>(e, "invariant", "expected");
            const BoundReport* r = result_.find(inv);
            if (!r) {
                fail("expected " + inv + " but no report was produced");
                continue;
            }
            auto want = [&](const char* key, int got) {
                if (e.contains(key) && field<int>(e, key, "expected") != got)
                    fail("expected " + inv + " " + key + " " + std::to_string(field<int>(e, key, "expected")) +
                         ", got " + std::to_string(got));
            };
            if (e.contains("value")) {
                const int v = field<int>(e, "value", "expected");
                if (r->lower.value != v || r->upper.value != v)
                    fail("expected " + inv + " = " + std::to_string(v) + ", got [" + std::to_string(r->lower.value) +
                         "," + std::to_string(r->upper.value) + "]");
            }
            want("lower", r->lower.value);
            want("upper", r->upper.value);
        }
    }

    void collect_rows()
    {
        for (const json& t : field_or<json>(doc_, "table", json::array(), "scenario")) {
            TableRow row;
            row.action_class = field<std::string>(t, "class", "table");
            row.n = field<int>(t, "n", "table");
            row.invariant = field<std::string>(t, "invariant", "table");
            row.paper = field<int>(t, "paper", "table");
            parse_stage(row.invariant);
            const BoundReport* r = result_.find(row.invariant);
            if (!r) {
                fail("table row " + row.action_class + " needs " + row.invariant + " but no report was produced");
                continue;
            }
            row.lower = r->lower.value;
            row.upper = r->upper.value;
            result_.table.push_back(row);
        }
    }

    const json& doc_;
    VerifyParams params_;
    std::optional<GroupAction> action_;
    std::shared_ptr<const ConfigSpace> space_;
    std::map<int, std::vector<Bound>> tc_lowers_, tc_uppers_, cat_lowers_, cat_uppers_;
    ScenarioResult result_;
};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string stage_label(const std::string& invariant)
{
    const int k = parse_stage(invariant);
    return k == stage_infinity ? "inf" : std::to_string(k);
}

} // namespace

const BoundReport* ScenarioResult::find(const std::string& invariant) const
{
    for (const auto& r : reports)
        if (r.invariant == invariant)
            return &r;
    return nullptr;
}

nlohmann::ordered_json ScenarioResult::to_json() const
{
    nlohmann::ordered_json j;
    j["scenario"] = id;
    j["seed"] = sampling_seed();
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports)
        j["reports"].push_back(r.to_json());
    j["log"] = log;
    j["failures"] = failures;
    if (!table.empty()) {
        j["table"] = nlohmann::ordered_json::array();
        for (const auto& t : table)
            j["table"].push_back({{"class", t.action_class},
                                  {"n", t.n},
                                  {"invariant", t.invariant},
                                  {"lower", t.lower},
                                  {"upper", t.upper},
                                  {"paper", t.paper},
                                  {"match", t.match()}});
    }
    j["exit_code"] = exit_code();
    return j;
}

std::string ScenarioResult::csv() const
{
    std::string out = BoundReport::csv_header() + "\n";
    for (const auto& r : reports)
        out += r.csv_row() + "\n";
    return out;
}

json parse_scenario(const std::string& text)
{
    try {
        json doc = json::parse(text);
        if (!doc.is_object())
            throw ScenarioError("scenario must be a JSON object");
        return doc;
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
}

ScenarioResult run_scenario_json(const json& doc, const ScenarioOverrides& overrides, const std::string& base_dir)
{
    return Runner(doc, overrides, base_dir).run();
}

ScenarioResult run_scenario(const std::string& name_or_path, const ScenarioOverrides& overrides)
{
    for (const auto& b : builtins)
        if (name_or_path == b.name)
            return run_scenario_json(parse_scenario(b.text), overrides, ".");
    std::ifstream in(name_or_path);
    if (!in)
        throw ScenarioError("no builtin or file named '" + name_or_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    const auto dir = fs::path(name_or_path).parent_path();
    return run_scenario_json(parse_scenario(text.str()), overrides, dir.empty() ? "." : dir.string());
}

std::vector<std::string> builtin_names()
{
    std::vector<std::string> names;
    for (const auto& b : builtins)
        names.emplace_back(b.name);
    return names;
}

std::string builtin_scenario(const std::string& name)
{
    for (const auto& b : builtins)
        if (name == b.name)
            return b.text;
    throw ScenarioError("unknown builtin '" + name + "'");
}

std::vector<std::pair<std::string, int>> required_table_rows()
{
    return {{"free", 1}, {"r=n-1 linear", 2}, {"orientation preserving", 2}};
}

std::vector<TableRow> collect_table(const std::vector<ScenarioResult>& results, std::vector<std::string>& missing)
{
    std::vector<TableRow> rows;
    for (const auto& r : results)
        rows.insert(rows.end(), r.table.begin(), r.table.end());
    for (const auto& [cls, n] : required_table_rows()) {
        bool found = false;
        for (const auto& row : rows)
            found = found || (row.action_class == cls && row.n == n);
        if (!found)
            missing.push_back("no scenario provides the table row (" + cls + ", n=" + std::to_string(n) + ")");
    }
    return rows;
}

std::string format_table(const std::vector<TableRow>& rows)
{
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %3s %5s %5s %5s %5s %5s\n", "action class", "n", "stage", "lower", "upper",
                  "paper", "match");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-24s %3d %5s %5d %5d %5d %5s\n", r.action_class.c_str(), r.n,
                      stage_label(r.invariant).c_str(), r.lower, r.upper, r.paper, r.match() ? "yes" : "no");
        out << line;
    }
    return out.str();
}

std::string table_csv(const std::vector<TableRow>& rows)
{
    std::string out = "class,n,stage,lower,upper,paper,match\n";
    for (const auto& r : rows)
        out += csv_field(r.action_class) + "," + std::to_string(r.n) + "," + stage_label(r.invariant) + "," +
               std::to_string(r.lower) + "," + std::to_string(r.upper) + "," + std::to_string(r.paper) + "," +
               (r.match() ? "yes" : "no") + "\n";
    return out;
}

} // namespace efftc
