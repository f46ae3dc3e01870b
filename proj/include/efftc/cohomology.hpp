#pragma once

#include "efftc/complex.hpp"
#include "efftc/f2.hpp"

#include <memory>
#include <vector>

namespace efftc {

/// An F2-valued function on the simplices of one dimension.
struct Cochain {
    int degree = 0;
    f2::BitVector coefficients;

    static Cochain zero(const SimplicialComplex& k, int degree)
    {
        return {degree, f2::BitVector(k.count(degree))};
    }
    bool is_zero() const { return coefficients.none(); }
    friend bool operator==(const Cochain&, const Cochain&) = default;
};

/// Coboundary C^d -> C^{d+1} stored column-wise: column j is the coboundary of
/// the indicator of the j-th d-simplex.
struct F2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<f2::BitVector> columns;

    f2::BitVector apply(const f2::BitVector& x) const;
    std::size_t rank() const { return f2::rank(columns, rows); }
    F2Matrix operator*(const F2Matrix& right) const;
    bool is_zero() const;
};

/// Throws std::out_of_range unless 0 <= d <= dimension.
F2Matrix coboundary_matrix(const SimplicialComplex& k, int d);
Cochain coboundary(const SimplicialComplex& k, const Cochain& c);

struct CohomologySummary {
    std::vector<std::size_t> betti;
    std::vector<std::vector<Cochain>> representatives;
    /// Largest degree with nonzero cohomology; -1 for the empty complex.
    int cd = -1;
};

/// Cohomology with F2 coefficients together with the data needed to reduce
/// cocycles to coordinates in the representative basis.
class Cohomology {
public:
    explicit Cohomology(const SimplicialComplex& k);

    const SimplicialComplex& complex() const { return *complex_; }
    const CohomologySummary& summary() const { return summary_; }
    std::size_t betti(int d) const;
    int cd() const { return summary_.cd; }
    const std::vector<Cochain>& representatives(int d) const;

    bool is_cocycle(const Cochain& c) const;
    bool is_coboundary(const Cochain& c) const;
    /// Coordinates of the class of a cocycle in the representative basis.
    /// Throws std::invalid_argument when c is not a cocycle.
    f2::BitVector coordinates(const Cochain& c) const;
    Cochain representative(int degree, const f2::BitVector& coords) const;

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    CohomologySummary summary_;
    std::vector<F2Matrix> delta_;
    // Per degree: echelon of coboundaries then representatives, and the
    // insertion index of each representative.
    std::vector<f2::Echelon> reducers_;
    std::vector<std::vector<std::size_t>> rep_inputs_;
    std::vector<std::size_t> boundary_inputs_;
};

CohomologySummary cohomology(const SimplicialComplex& k);

/// Front-face/back-face product relative to the vertex id order. Returns the
/// zero cochain of degree p+q when p+q exceeds the dimension.
Cochain cup_product(const SimplicialComplex& k, const Cochain& a, const Cochain& b);

/// Finite-dimensional graded-commutative F2 algebra given by structure
/// constants on a homogeneous basis.
class GradedAlgebra {
public:
    GradedAlgebra(std::vector<int> degrees, std::vector<std::vector<f2::BitVector>> products);

    std::size_t dimension() const { return degrees_.size(); }
    int degree(std::size_t i) const { return degrees_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }
    f2::BitVector multiply(const f2::BitVector& a, const f2::BitVector& b) const;
    const f2::BitVector& basis_product(std::size_t i, std::size_t j) const { return products_[i][j]; }

    /// Largest m such that some product of m elements of span(generators) is
    /// nonzero. Generators must be nonzero only in positive degrees.
    int cup_length(const std::vector<f2::BitVector>& generators) const;

    /// Basis element (i, j) of the result has index i * b.dimension() + j.
    static GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b);

private:
    std::vector<int> degrees_;
    std::vector<std::vector<f2::BitVector>> products_;
};

/// H*(K; F2) as an algebra on the representative basis, degree by degree.
struct CohomologyRing {
    std::shared_ptr<const Cohomology> cohomology;
    GradedAlgebra algebra;
    /// Algebra index of the first basis element of each degree.
    std::vector<std::size_t> offsets;

    f2::BitVector embed(const Cochain& cocycle) const;
};

CohomologyRing cohomology_ring(const SimplicialComplex& k);

/// Cup length of the subspace spanned by the classes of the given cocycles.
/// Throws std::invalid_argument for a non-cocycle or a degree-0 generator.
int cup_length(const SimplicialComplex& k, const std::vector<Cochain>& subspace);

} // namespace efftc
