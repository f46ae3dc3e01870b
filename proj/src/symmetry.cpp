#include "efftc/symmetry.hpp"

#include "efftc/cohomology.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace efftc {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table))
{
    const int n = static_cast<int>(table_.size());
    if (n == 0)
        throw std::invalid_argument("group table is empty");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("group table is not square");
        for (int x : row)
            if (x < 0 || x >= n)
                throw std::invalid_argument("group table entry out of range");
    }
    for (int x = 0; x < n; ++x)
        if (table_[0][x] != x || table_[x][0] != x)
            throw std::invalid_argument("element 0 is not the identity");
    inverse_.assign(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (table_[x][y] == 0 && table_[y][x] == 0)
                inverse_[x] = y;
    for (int x = 0; x < n; ++x)
        if (inverse_[x] < 0)
            throw std::invalid_argument("group element without inverse");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw std::invalid_argument("group table is not associative");
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup(std::vector<std::vector<int>>{{0}}); }

FiniteGroup FiniteGroup::cyclic(int n)
{
    if (n < 1)
        throw std::invalid_argument("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
}

FiniteGroup::PermutationGroup FiniteGroup::generated_by(const std::vector<std::vector<int>>& generators,
                                                        std::size_t max_order)
{
    if (generators.empty())
        throw std::invalid_argument("no generators given");
    const std::size_t n = generators.front().size();
    for (const auto& g : generators) {
        if (g.size() != n)
            throw std::invalid_argument("generators act on different numbers of points");
        std::vector<int> sorted = g;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i)
            if (sorted[i] != static_cast<int>(i))
                throw std::invalid_argument("generator is not a permutation");
    }
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);

    std::vector<std::vector<int>> elements{identity};
    std::map<std::vector<int>, int> index{{identity, 0}};
    for (std::size_t next = 0; next < elements.size(); ++next)
        for (const auto& g : generators) {
            std::vector<int> composed(n);
            for (std::size_t x = 0; x < n; ++x)
                composed[x] = g[static_cast<std::size_t>(elements[next][x])];
            if (index.emplace(composed, static_cast<int>(elements.size())).second) {
                elements.push_back(std::move(composed));
                if (elements.size() > max_order)
                    throw std::runtime_error("generated group exceeds " + std::to_string(max_order) +
                                             " elements");
            }
        }

    const std::size_t order = elements.size();
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            std::vector<int> composed(n);
            for (std::size_t x = 0; x < n; ++x)
                composed[x] = elements[a][static_cast<std::size_t>(elements[b][x])];
            table[a][b] = index.at(composed);
        }
    return {FiniteGroup(std::move(table)), std::move(elements)};
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const
{
    std::set<int> s(elements.begin(), elements.end());
    if (s.empty() || !s.count(0))
        return false;
    for (int a : s) {
        if (a < 0 || a >= order())
            return false;
        for (int b : s)
            if (!s.count(multiply(a, b)))
                return false;
    }
    return true;
}

std::vector<int> FiniteGroup::cyclic_subgroup(int g) const
{
    std::vector<int> out{0};
    for (int x = g; x != 0; x = multiply(x, g))
        out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const
{
    const int n = order();
    if (n > 16)
        throw std::runtime_error("subgroup enumeration is limited to groups of order 16");
    std::vector<std::vector<int>> out;
    // Element 0 always belongs; enumerate subsets of the others.
    for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
        std::vector<int> s{0};
        for (int i = 1; i < n; ++i)
            if (mask & (1U << (i - 1)))
                s.push_back(i);
        if (n % static_cast<int>(s.size()) != 0)
            continue;
        if (is_subgroup(s))
            out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

GroupAction::GroupAction(FiniteGroup group, SimplicialComplex complex, std::vector<std::vector<int>> vertex_maps)
    : group_(std::move(group)), complex_(std::move(complex)), maps_(std::move(vertex_maps))
{
    const auto& vertices = complex_.vertices();
    const std::size_t n = vertices.size();
    if (maps_.size() != static_cast<std::size_t>(group_.order()))
        throw std::invalid_argument("one vertex map per group element is required");
    for (const auto& m : maps_) {
        if (m.size() != n)
            throw std::invalid_argument("vertex map has the wrong length");
        std::vector<int> sorted = m;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != vertices)
            throw std::invalid_argument("vertex map is not a permutation of the vertices");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (maps_[0][i] != vertices[i])
            throw std::invalid_argument("identity element does not act trivially");
    for (int g = 0; g < group_.order(); ++g)
        for (int h = 0; h < group_.order(); ++h)
            for (int v : vertices)
                if (apply(group_.multiply(g, h), v) != apply(g, apply(h, v)))
                    throw std::invalid_argument("vertex maps are not a homomorphism");
    for (int g = 1; g < group_.order(); ++g)
        for (const auto& s : complex_.maximal_simplices())
            if (!complex_.contains(apply(g, s)))
                throw std::invalid_argument("vertex map is not simplicial");
}

GroupAction GroupAction::trivial(SimplicialComplex complex)
{
    auto ids = complex.vertices();
    return GroupAction(FiniteGroup::trivial(), std::move(complex), {ids});
}

GroupAction GroupAction::generated(SimplicialComplex complex, const std::vector<std::vector<int>>& generators)
{
    const auto& vertices = complex.vertices();
    std::vector<std::vector<int>> as_positions;
    for (const auto& g : generators) {
        if (g.size() != vertices.size())
            throw std::invalid_argument("generator length differs from the vertex count");
        std::vector<int> p;
        for (int image : g) {
            auto pos = complex.vertex_position(image);
            if (!pos)
                throw std::invalid_argument("generator image " + std::to_string(image) + " is not a vertex");
            p.push_back(static_cast<int>(*pos));
        }
        as_positions.push_back(std::move(p));
    }
    auto pg = FiniteGroup::generated_by(as_positions);
    std::vector<std::vector<int>> maps;
    for (const auto& perm : pg.permutations) {
        std::vector<int> m;
        for (int p : perm)
            m.push_back(vertices[static_cast<std::size_t>(p)]);
        maps.push_back(std::move(m));
    }
    return GroupAction(std::move(pg.group), std::move(complex), std::move(maps));
}

int GroupAction::apply(int g, int vertex) const
{
    const auto pos = complex_.vertex_position(vertex);
    if (!pos)
        throw std::out_of_range("vertex " + std::to_string(vertex) + " not in complex");
    return maps_[static_cast<std::size_t>(g)][*pos];
}

Simplex GroupAction::apply(int g, const Simplex& s) const
{
    Simplex out;
    out.reserve(s.size());
    for (int v : s)
        out.push_back(apply(g, v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> GroupAction::orbits() const
{
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (int v : complex_.vertices()) {
        if (seen.count(v))
            continue;
        std::set<int> orbit;
        for (int g = 0; g < group_.order(); ++g)
            orbit.insert(apply(g, v));
        seen.insert(orbit.begin(), orbit.end());
        out.emplace_back(orbit.begin(), orbit.end());
    }
    return out;
}

bool GroupAction::is_free() const
{
    for (int g = 1; g < group_.order(); ++g)
        for (const auto& s : complex_.all_simplices())
            if (apply(g, s) == s)
                return false;
    return true;
}

bool GroupAction::setwise_fixed_are_pointwise() const
{
    for (int g = 1; g < group_.order(); ++g)
        for (const auto& s : complex_.all_simplices())
            if (apply(g, s) == s)
                for (int v : s)
                    if (apply(g, v) != v)
                        return false;
    return true;
}

bool GroupAction::is_regular() const
{
    if (!setwise_fixed_are_pointwise())
        return false;
    std::map<int, int> orbit_of;
    const auto orbs = orbits();
    for (std::size_t o = 0; o < orbs.size(); ++o)
        for (int v : orbs[o])
            orbit_of[v] = static_cast<int>(o);

    std::map<Simplex, std::vector<Simplex>> by_image;
    for (const auto& s : complex_.all_simplices()) {
        Simplex image;
        for (int v : s)
            image.push_back(orbit_of[v]);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end())
            return false;
        by_image[image].push_back(s);
    }
    for (const auto& [image, preimages] : by_image) {
        std::set<Simplex> orbit;
        for (int g = 0; g < group_.order(); ++g)
            orbit.insert(apply(g, preimages.front()));
        for (const auto& s : preimages)
            if (!orbit.count(s))
                return false;
    }
    return true;
}

bool GroupAction::order_compatible(const std::vector<int>& elements) const
{
    for (int g : elements)
        for (const auto& e : complex_.simplices(1))
            if (apply(g, e[0]) > apply(g, e[1]))
                return false;
    return true;
}

Subdivision barycentric_subdivision(const SimplicialComplex& k)
{
    Subdivision sd;
    sd.barycenters = k.all_simplices();
    std::map<Simplex, int> id;
    for (std::size_t i = 0; i < sd.barycenters.size(); ++i)
        id.emplace(sd.barycenters[i], static_cast<int>(i));

    std::vector<Simplex> chains;
    for (const auto& top : k.maximal_simplices()) {
        std::vector<int> order(top.size());
        std::iota(order.begin(), order.end(), 0);
        do {
            Simplex chain, flag;
            for (int i : order) {
                flag.push_back(top[static_cast<std::size_t>(i)]);
                Simplex sorted = flag;
                std::sort(sorted.begin(), sorted.end());
                chain.push_back(id.at(sorted));
            }
            chains.push_back(std::move(chain));
        } while (std::next_permutation(order.begin(), order.end()));
    }
    sd.complex = SimplicialComplex::from_maximal(chains);
    return sd;
}

GroupAction subdivide(const GroupAction& a)
{
    auto sd = barycentric_subdivision(a.complex());
    std::map<Simplex, int> id;
    for (std::size_t i = 0; i < sd.barycenters.size(); ++i)
        id.emplace(sd.barycenters[i], static_cast<int>(i));
    std::vector<std::vector<int>> maps;
    for (int g = 0; g < a.group().order(); ++g) {
        std::vector<int> m;
        for (const auto& b : sd.barycenters)
            m.push_back(id.at(a.apply(g, b)));
        maps.push_back(std::move(m));
    }
    return GroupAction(a.group(), std::move(sd.complex), std::move(maps));
}

SimplicialComplex fixed_subcomplex(const GroupAction& a, const std::vector<int>& h)
{
    if (!a.group().is_subgroup(h))
        throw std::invalid_argument("element list is not a subgroup");
    std::vector<Simplex> fixed;
    for (const auto& s : a.complex().all_simplices()) {
        bool pointwise = true;
        for (int g : h) {
            const bool setwise = a.apply(g, s) == s;
            bool all = true;
            for (int v : s)
                all = all && a.apply(g, v) == v;
            if (setwise && !all)
                throw std::logic_error("action fixes a simplex setwise but not pointwise; subdivide first");
            pointwise = pointwise && all;
        }
        if (pointwise)
            fixed.push_back(s);
    }
    return SimplicialComplex::from_maximal(fixed);
}

int Quotient::project(int vertex) const
{
    const auto pos = action.complex().vertex_position(vertex);
    if (!pos)
        throw std::out_of_range("vertex not in the acting complex");
    return orbit_of[*pos];
}

std::optional<Simplex> Quotient::project(const Simplex& s) const
{
    Simplex image;
    for (int v : s)
        image.push_back(project(v));
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end())
        return std::nullopt;
    return image;
}

GroupAction regularized(const GroupAction& a)
{
    GroupAction current = a;
    for (int round = 0; round <= 2; ++round) {
        if (current.is_regular())
            return current;
        if (round < 2)
            current = subdivide(current);
    }
    throw std::runtime_error("action is not regular after two barycentric subdivisions");
}

Quotient quotient_complex(const GroupAction& a)
{
    GroupAction action = a;
    int subdivisions = 0;
    while (!action.is_regular()) {
        if (subdivisions == 2)
            throw std::runtime_error("action is not regular after two barycentric subdivisions");
        action = subdivide(action);
        ++subdivisions;
    }
    const auto& k = action.complex();
    std::vector<int> orbit_of(k.vertex_count(), -1);
    const auto orbs = action.orbits();
    for (std::size_t o = 0; o < orbs.size(); ++o)
        for (int v : orbs[o])
            orbit_of[*k.vertex_position(v)] = static_cast<int>(o);

    Quotient q{SimplicialComplex{}, std::move(orbit_of), action, subdivisions};
    std::vector<Simplex> images;
    for (const auto& s : k.maximal_simplices())
        images.push_back(*q.project(s));
    q.complex = SimplicialComplex::from_maximal(images);
    return q;
}

int product_vertex(const SimplicialComplex& k, const SimplicialComplex& l, int v, int w)
{
    const auto pv = k.vertex_position(v);
    const auto pw = l.vertex_position(w);
    if (!pv || !pw)
        throw std::out_of_range("product vertex outside the factors");
    return static_cast<int>(*pv * l.vertex_count() + *pw);
}

ProductComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l)
{
    if (k.empty() || l.empty())
        throw std::invalid_argument("product of an empty complex");
    ProductComplex out;
    out.second_count = l.vertex_count();
    for (int v : k.vertices())
        for (int w : l.vertices()) {
            out.first_ids.push_back(v);
            out.second_ids.push_back(w);
        }

    std::vector<Simplex> top;
    const auto kmax = k.maximal_simplices();
    const auto lmax = l.maximal_simplices();
    for (const auto& s : kmax)
        for (const auto& t : lmax) {
            // Monotone lattice paths from (0,0) to (|s|-1, |t|-1).
            Simplex path;
            auto walk = [&](auto&& self, std::size_t i, std::size_t j) -> void {
                path.push_back(product_vertex(k, l, s[i], t[j]));
                if (i + 1 == s.size() && j + 1 == t.size())
                    top.push_back(path);
                if (i + 1 < s.size())
                    self(self, i + 1, j);
                if (j + 1 < t.size())
                    self(self, i, j + 1);
                path.pop_back();
            };
            walk(walk, 0, 0);
        }
    out.complex = SimplicialComplex::from_maximal(top);
    return out;
}

int SaturatedDiagonal::graph_vertex(int g, int vertex) const
{
    const auto& k = action.complex();
    return product_vertex(k, k, action.apply(g, vertex), vertex);
}

Simplex SaturatedDiagonal::graph_simplex(int g, const Simplex& s) const
{
    Simplex out;
    for (int v : s)
        out.push_back(graph_vertex(g, v));
    std::sort(out.begin(), out.end());
    return out;
}

int SaturatedDiagonal::first(int product_vertex) const
{
    const auto& k = action.complex();
    return k.vertices().at(static_cast<std::size_t>(product_vertex) / k.vertex_count());
}

int SaturatedDiagonal::second(int product_vertex) const
{
    const auto& k = action.complex();
    return k.vertices().at(static_cast<std::size_t>(product_vertex) % k.vertex_count());
}

SaturatedDiagonal saturated_diagonal(const GroupAction& a, std::optional<std::vector<int>> elements)
{
    std::vector<int> list;
    if (elements) {
        std::set<int> unique(elements->begin(), elements->end());
        for (int g : unique)
            if (g < 0 || g >= a.group().order())
                throw std::invalid_argument("element index out of range");
        list.assign(unique.begin(), unique.end());
    } else {
        list.resize(static_cast<std::size_t>(a.group().order()));
        std::iota(list.begin(), list.end(), 0);
    }
    if (list.empty())
        throw std::invalid_argument("saturated diagonal needs at least one element");

    GroupAction action = a;
    int subdivisions = 0;
    while (!action.order_compatible(list)) {
        if (subdivisions == 2)
            throw std::runtime_error("graph slices are not simplicial after two subdivisions");
        action = subdivide(action);
        ++subdivisions;
    }

    SaturatedDiagonal sd{action, list, {}, {}, subdivisions};
    std::vector<Simplex> all;
    for (int g : list) {
        std::vector<Simplex> slice;
        for (const auto& s : action.complex().maximal_simplices())
            slice.push_back(sd.graph_simplex(g, s));
        all.insert(all.end(), slice.begin(), slice.end());
        sd.slices.push_back(SimplicialComplex::from_maximal(slice));
    }
    sd.united = SimplicialComplex::from_maximal(all);
    return sd;
}

FixedSetHypothesis fixed_set_hypothesis(const GroupAction& regular_action)
{
    FixedSetHypothesis out;
    out.cd_x = regular_action.complex().empty() ? -1 : Cohomology(regular_action.complex()).cd();
    for (const auto& h : regular_action.group().subgroups()) {
        if (h.size() == 1)
            continue;
        const auto fixed = fixed_subcomplex(regular_action, h);
        const int cd = fixed.empty() ? -1 : Cohomology(fixed).cd();
        out.subgroups.emplace_back(h, cd);
        if (cd > out.cd_x)
            out.holds = false;
    }
    return out;
}

std::vector<std::vector<int>> read_generators(std::istream& in)
{
    std::vector<std::vector<int>> gens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto colon = line.find(':');
        if (line[first] != 'g' || colon == std::string::npos)
            throw std::invalid_argument("action line " + std::to_string(line_no) + ": expected 'g<i>: ...'");
        std::istringstream fields(line.substr(colon + 1));
        std::vector<int> perm;
        std::string tok;
        while (fields >> tok) {
            std::size_t used = 0;
            int v = -1;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 0)
                throw std::invalid_argument("action line " + std::to_string(line_no) + ": bad entry '" + tok + "'");
            perm.push_back(v);
        }
        gens.push_back(std::move(perm));
    }
    if (gens.empty())
        throw std::invalid_argument("action file has no generators");
    return gens;
}

std::vector<std::vector<int>> read_generators_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open action file " + path);
    return read_generators(in);
}

void write_generators(std::ostream& out, const std::vector<std::vector<int>>& generators)
{
    for (std::size_t i = 0; i < generators.size(); ++i) {
        out << 'g' << i << ':';
        for (int v : generators[i])
            out << ' ' << v;
        out << '\n';
    }
}

} // namespace efftc
