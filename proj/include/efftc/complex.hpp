#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace efftc {

/// A simplex is its vertex list, strictly increasing in vertex id.
using Simplex = std::vector<int>;

/// Finite abstract simplicial complex. The global vertex order is the order of
/// the integer ids; simplices of each dimension are enumerated
/// lexicographically, which makes every index below deterministic.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Downward closure of the given simplices. Vertex lists may come in any
    /// order; a repeated vertex or a negative id is rejected.
    static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal);

    bool empty() const { return simplices_.empty(); }
    /// -1 for the empty complex.
    int dimension() const { return static_cast<int>(simplices_.size()) - 1; }

    const std::vector<int>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    /// Position of a vertex id in the sorted vertex list.
    std::optional<std::size_t> vertex_position(int id) const;

    const std::vector<Simplex>& simplices(int d) const;
    std::size_t count(int d) const;
    std::size_t size() const;

    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Simplices that are not a proper face of another simplex, by dimension then
    /// lexicographically.
    std::vector<Simplex> maximal_simplices() const;

    /// Every simplex of every dimension, lowest dimension first.
    std::vector<Simplex> all_simplices() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.simplices_ == b.simplices_;
    }

private:
    std::vector<int> vertices_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Sorted copy; throws std::invalid_argument on a repeated vertex.
Simplex normalized(Simplex s);

/// Proper and improper faces of one simplex, including itself.
std::vector<Simplex> faces(const Simplex& s);

/// One line per maximal simplex, whitespace separated vertex ids. Lines
/// starting with '#' and blank lines are ignored.
SimplicialComplex read_complex(std::istream& in);
SimplicialComplex read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const SimplicialComplex& k);

/// Standard small models used across tests and scenarios.
namespace models {
SimplicialComplex point();
/// Cycle graph on vertices 0..n-1.
SimplicialComplex polygon(int n);
/// Boundary of the 3-simplex.
SimplicialComplex tetrahedron_boundary();
/// Octahedron boundary on vertices 0..5, vertex i antipodal to i+3.
SimplicialComplex octahedron_boundary();
/// Staircase triangulation of the rows x cols grid with both sides identified;
/// vertex (i, j) has id i*cols + j. Needs rows, cols >= 3.
SimplicialComplex torus(int rows, int cols);
/// Full simplex on vertices 0..n.
SimplicialComplex simplex(int n);
/// Cone on `k` with apex id one larger than every vertex of k.
SimplicialComplex cone(const SimplicialComplex& k);
/// Circles 0..n-1 wedged at vertex 0: circle b uses vertices 0, 2b+1, 2b+2.
SimplicialComplex triangle_wedge(int circles);
} // namespace models

} // namespace efftc
