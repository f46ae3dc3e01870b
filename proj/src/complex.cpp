#include "efftc/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace efftc {

Simplex normalized(Simplex s)
{
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("simplex repeats a vertex");
    return s;
}

std::vector<Simplex> faces(const Simplex& s)
{
    std::vector<Simplex> out;
    const std::size_t n = s.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i))
                f.push_back(s[i]);
        out.push_back(std::move(f));
    }
    return out;
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<Simplex>& maximal)
{
    std::vector<std::set<Simplex>> by_dim;
    for (const auto& raw : maximal) {
        if (raw.empty())
            throw std::invalid_argument("empty simplex in complex description");
        for (int v : raw)
            if (v < 0)
                throw std::invalid_argument("negative vertex id");
        const Simplex s = normalized(raw);
        if (s.size() > 20)
            throw std::invalid_argument("simplex dimension too large");
        if (by_dim.size() < s.size())
            by_dim.resize(s.size());
        // Skip the exponential face enumeration when s is already present.
        if (by_dim[s.size() - 1].count(s))
            continue;
        for (auto& f : faces(s))
            by_dim[f.size() - 1].insert(std::move(f));
    }

    SimplicialComplex k;
    k.simplices_.resize(by_dim.size());
    k.index_.resize(by_dim.size());
    for (std::size_t d = 0; d < by_dim.size(); ++d) {
        k.simplices_[d].assign(by_dim[d].begin(), by_dim[d].end());
        for (std::size_t i = 0; i < k.simplices_[d].size(); ++i)
            k.index_[d].emplace(k.simplices_[d][i], i);
    }
    if (!k.simplices_.empty())
        for (const auto& v : k.simplices_[0])
            k.vertices_.push_back(v[0]);
    return k;
}

std::optional<std::size_t> SimplicialComplex::vertex_position(int id) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end() || *it != id)
        return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const
{
    static const std::vector<Simplex> none;
    if (d < 0 || d >= static_cast<int>(simplices_.size()))
        return none;
    return simplices_[static_cast<std::size_t>(d)];
}

std::size_t SimplicialComplex::count(int d) const { return simplices(d).size(); }

std::size_t SimplicialComplex::size() const
{
    std::size_t n = 0;
    for (const auto& level : simplices_)
        n += level.size();
    return n;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
    if (s.empty() || s.size() > index_.size())
        return std::nullopt;
    const auto& level = index_[s.size() - 1];
    auto it = level.find(s);
    if (it == level.end())
        return std::nullopt;
    return it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const
{
    std::vector<Simplex> out;
    for (int d = 0; d <= dimension(); ++d) {
        std::vector<bool> covered(count(d), false);
        for (const auto& t : simplices(d + 1))
            for (std::size_t skip = 0; skip < t.size(); ++skip) {
                Simplex f;
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (i != skip)
                        f.push_back(t[i]);
                covered[*index_of(f)] = true;
            }
        for (std::size_t i = 0; i < count(d); ++i)
            if (!covered[i])
                out.push_back(simplices(d)[i]);
    }
    return out;
}

std::vector<Simplex> SimplicialComplex::all_simplices() const
{
    std::vector<Simplex> out;
    for (const auto& level : simplices_)
        out.insert(out.end(), level.begin(), level.end());
    return out;
}

SimplicialComplex read_complex(std::istream& in)
{
    std::vector<Simplex> maximal;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        Simplex s;
        std::string tok;
        while (fields >> tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 0)
                throw std::invalid_argument("complex line " + std::to_string(line_no) +
                                            ": bad vertex id '" + tok + "'");
            s.push_back(v);
        }
        maximal.push_back(std::move(s));
    }
    return SimplicialComplex::from_maximal(maximal);
}

SimplicialComplex read_complex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open complex file " + path);
    return read_complex(in);
}

void write_complex(std::ostream& out, const SimplicialComplex& k)
{
    for (const auto& s : k.maximal_simplices()) {
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? " " : "") << s[i];
        out << '\n';
    }
}

namespace models {

SimplicialComplex point() { return SimplicialComplex::from_maximal({{0}}); }

SimplicialComplex polygon(int n)
{
    if (n < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices");
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({i, (i + 1) % n});
    return SimplicialComplex::from_maximal(edges);
}

SimplicialComplex tetrahedron_boundary()
{
    return SimplicialComplex::from_maximal({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex octahedron_boundary()
{
    std::vector<Simplex> tris;
    for (int a : {0, 3})
        for (int b : {1, 4})
            for (int c : {2, 5})
                tris.push_back({a, b, c});
    return SimplicialComplex::from_maximal(tris);
}

SimplicialComplex torus(int rows, int cols)
{
    if (rows < 3 || cols < 3)
        throw std::invalid_argument("staircase torus needs at least 3x3 vertices");
    auto id = [&](int i, int j) { return (i % rows) * cols + (j % cols); };
    std::vector<Simplex> tris;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return SimplicialComplex::from_maximal(tris);
}

SimplicialComplex simplex(int n)
{
    Simplex s;
    for (int i = 0; i <= n; ++i)
        s.push_back(i);
    return SimplicialComplex::from_maximal({s});
}

SimplicialComplex cone(const SimplicialComplex& k)
{
    const int apex = k.vertices().empty() ? 0 : k.vertices().back() + 1;
    std::vector<Simplex> maximal;
    for (auto s : k.maximal_simplices()) {
        s.push_back(apex);
        maximal.push_back(std::move(s));
    }
    if (maximal.empty())
        maximal.push_back({apex});
    return SimplicialComplex::from_maximal(maximal);
}

SimplicialComplex triangle_wedge(int circles)
{
    std::vector<Simplex> edges;
    for (int b = 0; b < circles; ++b) {
        const int u = 2 * b + 1, v = 2 * b + 2;
        edges.push_back({0, u});
        edges.push_back({u, v});
        edges.push_back({0, v});
    }
    return SimplicialComplex::from_maximal(edges);
}

} // namespace models

} // namespace efftc
