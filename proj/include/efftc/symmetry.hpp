#pragma once

#include "efftc/complex.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace efftc {

/// Finite group as a multiplication table; element 0 is the identity.
class FiniteGroup {
public:
    /// Validates identity, inverses and associativity on the whole table.
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);

    /// Closure of permutations of {0..n-1} under composition, capped at
    /// `max_order` elements. Element i of the group acts by permutations[i];
    /// the product g*h acts as "first h, then g".
    struct PermutationGroup;
    static PermutationGroup generated_by(const std::vector<std::vector<int>>& generators,
                                         std::size_t max_order = 64);

    int order() const { return static_cast<int>(table_.size()); }
    int multiply(int a, int b) const { return table_[a][b]; }
    int inverse(int a) const { return inverse_[a]; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    bool is_subgroup(const std::vector<int>& elements) const;
    /// Elements of the cyclic subgroup generated by g, ascending.
    std::vector<int> cyclic_subgroup(int g) const;
    /// All subgroups as sorted element lists, found by brute force over element
    /// subsets; orders above 16 are rejected.
    std::vector<std::vector<int>> subgroups() const;

private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
};

struct FiniteGroup::PermutationGroup {
    FiniteGroup group;
    std::vector<std::vector<int>> permutations;
};

/// A finite group acting on a complex by simplicial automorphisms. Vertex maps
/// are indexed by vertex position and hold vertex ids.
class GroupAction {
public:
    GroupAction(FiniteGroup group, SimplicialComplex complex, std::vector<std::vector<int>> vertex_maps);

    static GroupAction trivial(SimplicialComplex complex);
    /// Group generated by vertex permutations given as images of the vertices
    /// in position order.
    static GroupAction generated(SimplicialComplex complex, const std::vector<std::vector<int>>& generators);

    const FiniteGroup& group() const { return group_; }
    const SimplicialComplex& complex() const { return complex_; }
    const std::vector<std::vector<int>>& vertex_maps() const { return maps_; }

    int apply(int g, int vertex) const;
    Simplex apply(int g, const Simplex& s) const;

    /// Vertex orbits, each sorted, ordered by smallest member.
    std::vector<std::vector<int>> orbits() const;
    /// No element other than the identity fixes a simplex setwise.
    bool is_free() const;

    /// Every simplex fixed setwise by g is fixed pointwise.
    bool setwise_fixed_are_pointwise() const;
    /// Setwise-implies-pointwise, distinct vertex orbits inside each simplex,
    /// and simplices with the same orbit image lying in one orbit.
    bool is_regular() const;
    /// Every g in `elements` preserves the vertex order on every simplex.
    bool order_compatible(const std::vector<int>& elements) const;

private:
    FiniteGroup group_;
    SimplicialComplex complex_;
    std::vector<std::vector<int>> maps_;
};

/// Barycentric subdivision. New vertex i is the barycenter of
/// `barycenters[i]`, ordered by dimension then lexicographically.
struct Subdivision {
    SimplicialComplex complex;
    std::vector<Simplex> barycenters;
};
Subdivision barycentric_subdivision(const SimplicialComplex& k);
GroupAction subdivide(const GroupAction& a);

/// Simplices pointwise fixed by every element of h. Throws
/// std::invalid_argument when h is not a subgroup and std::logic_error when
/// the action fixes a simplex setwise but not pointwise.
SimplicialComplex fixed_subcomplex(const GroupAction& a, const std::vector<int>& h);

struct Quotient {
    SimplicialComplex complex;
    /// Orbit (= quotient vertex id) of each vertex of the acting complex, by position.
    std::vector<int> orbit_of;
    /// The action actually used, after any subdivisions.
    GroupAction action;
    int subdivisions = 0;

    int project(int vertex) const;
    /// Image simplex of s, or nullopt if two vertices share an orbit.
    std::optional<Simplex> project(const Simplex& s) const;
};

/// Orbit complex. Irregular actions are barycentrically subdivided (at most
/// twice); throws std::runtime_error when that does not produce regularity.
Quotient quotient_complex(const GroupAction& a);

/// Staircase triangulation of |K| x |L|. Vertex (v, w) has id
/// pos(v) * |L| + pos(w), so the lexicographic pair order is the id order.
struct ProductComplex {
    SimplicialComplex complex;
    std::vector<int> first_ids;
    std::vector<int> second_ids;
    std::size_t second_count = 0;

    int first(int product_vertex) const { return first_ids.at(static_cast<std::size_t>(product_vertex)); }
    int second(int product_vertex) const { return second_ids.at(static_cast<std::size_t>(product_vertex)); }
};

ProductComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l);

/// Vertex id of the pair (v, w) in the staircase product of k with l.
int product_vertex(const SimplicialComplex& k, const SimplicialComplex& l, int v, int w);

/// Union of graph slices {(gx, x)} inside the staircase square of the
/// (possibly subdivided) complex.
struct SaturatedDiagonal {
    GroupAction action;
    std::vector<int> elements;
    std::vector<SimplicialComplex> slices;
    SimplicialComplex united;
    int subdivisions = 0;

    /// Product vertex (g v, v) for the slice of element g.
    int graph_vertex(int g, int vertex) const;
    /// Image of a simplex of the acting complex in the slice of g.
    Simplex graph_simplex(int g, const Simplex& s) const;
    /// Projection of a product vertex to its first/second factor vertex.
    int first(int product_vertex) const;
    int second(int product_vertex) const;
};

/// Slices for the elements of `elements` (all of G when absent). Subdivides
/// the action up to twice until every slice is a subcomplex of the staircase
/// square; throws std::runtime_error otherwise.
SaturatedDiagonal saturated_diagonal(const GroupAction& a, std::optional<std::vector<int>> elements = {});

/// Whether the action makes every nontrivial subgroup's fixed set satisfy
/// cd(X^H) <= cd(X); the action must be regular.
struct FixedSetHypothesis {
    bool holds = true;
    int cd_x = -1;
    /// (subgroup, cd of its fixed subcomplex) for every nontrivial subgroup.
    std::vector<std::pair<std::vector<int>, int>> subgroups;
};
FixedSetHypothesis fixed_set_hypothesis(const GroupAction& regular_action);

/// Subdivides until regular (at most twice).
GroupAction regularized(const GroupAction& a);

/// "g<i>: p(0) p(1) ... p(n-1)" lines; '#' comments and blank lines ignored.
std::vector<std::vector<int>> read_generators(std::istream& in);
std::vector<std::vector<int>> read_generators_file(const std::string& path);
void write_generators(std::ostream& out, const std::vector<std::vector<int>>& generators);

} // namespace efftc
