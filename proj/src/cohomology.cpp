#include "efftc/cohomology.hpp"

#include <stdexcept>
#include <string>

namespace efftc {

using f2::BitVector;
using f2::Echelon;

BitVector F2Matrix::apply(const BitVector& x) const
{
    BitVector y(rows);
    for (auto j : x.support())
        y ^= columns[j];
    return y;
}

F2Matrix F2Matrix::operator*(const F2Matrix& right) const
{
    if (right.rows != cols)
        throw std::invalid_argument("matrix product: shape mismatch");
    F2Matrix out{rows, right.cols, {}};
    out.columns.reserve(right.cols);
    for (const auto& c : right.columns)
        out.columns.push_back(apply(c));
    return out;
}

bool F2Matrix::is_zero() const
{
    for (const auto& c : columns)
        if (c.any())
            return false;
    return true;
}

namespace {

Simplex drop(const Simplex& s, std::size_t skip)
{
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (i != skip)
            f.push_back(s[i]);
    return f;
}

F2Matrix build_coboundary(const SimplicialComplex& k, int d)
{
    F2Matrix m{k.count(d + 1), k.count(d), {}};
    m.columns.assign(m.cols, BitVector(m.rows));
    const auto& upper = k.simplices(d + 1);
    for (std::size_t t = 0; t < upper.size(); ++t)
        for (std::size_t skip = 0; skip < upper[t].size(); ++skip)
            m.columns[*k.index_of(drop(upper[t], skip))].set(t);
    return m;
}

} // namespace

F2Matrix coboundary_matrix(const SimplicialComplex& k, int d)
{
    if (d < 0 || d > k.dimension())
        throw std::out_of_range("coboundary degree " + std::to_string(d) + " outside 0.." +
                                std::to_string(k.dimension()));
    return build_coboundary(k, d);
}

Cochain coboundary(const SimplicialComplex& k, const Cochain& c)
{
    if (c.coefficients.size() != k.count(c.degree))
        throw std::invalid_argument("cochain length does not match the complex");
    return {c.degree + 1, build_coboundary(k, c.degree).apply(c.coefficients)};
}

Cohomology::Cohomology(const SimplicialComplex& k)
    : complex_(std::make_shared<const SimplicialComplex>(k))
{
    const int dim = k.dimension();
    if (dim < 0)
        return;

    auto& delta = delta_;
    for (int d = 0; d <= dim; ++d)
        delta.push_back(build_coboundary(k, d));

    std::vector<std::size_t> rank(static_cast<std::size_t>(dim) + 1, 0);
    std::vector<std::vector<BitVector>> cocycles(rank.size());
    for (int d = 0; d <= dim; ++d) {
        const auto& m = delta[static_cast<std::size_t>(d)];
        Echelon e(m.rows, true, m.cols);
        for (const auto& col : m.columns)
            if (auto relation = e.insert(col)) {
                relation->resize(m.cols);
                cocycles[static_cast<std::size_t>(d)].push_back(std::move(*relation));
            }
        rank[static_cast<std::size_t>(d)] = e.rank();
    }

    summary_.betti.resize(rank.size());
    summary_.representatives.resize(rank.size());
    rep_inputs_.resize(rank.size());
    boundary_inputs_.assign(rank.size(), 0);
    for (int d = 0; d <= dim; ++d) {
        const auto du = static_cast<std::size_t>(d);
        const std::size_t below = d > 0 ? delta[du - 1].cols : 0;
        const std::size_t boundary_rank = d > 0 ? rank[du - 1] : 0;
        summary_.betti[du] = cocycles[du].size() - boundary_rank;

        Echelon reducer(k.count(d), true, below + cocycles[du].size());
        if (d > 0)
            for (const auto& col : delta[du - 1].columns)
                reducer.insert(col);
        boundary_inputs_[du] = below;
        for (const auto& z : cocycles[du]) {
            const std::size_t input = reducer.inserted();
            if (!reducer.insert(z)) {
                rep_inputs_[du].push_back(input);
                summary_.representatives[du].push_back({d, z});
            }
        }
        reducers_.push_back(std::move(reducer));
        if (summary_.betti[du] > 0)
            summary_.cd = d;
    }
    if (summary_.cd < 0)
        summary_.cd = 0;
}

std::size_t Cohomology::betti(int d) const
{
    if (d < 0 || d >= static_cast<int>(summary_.betti.size()))
        return 0;
    return summary_.betti[static_cast<std::size_t>(d)];
}

const std::vector<Cochain>& Cohomology::representatives(int d) const
{
    static const std::vector<Cochain> none;
    if (d < 0 || d >= static_cast<int>(summary_.representatives.size()))
        return none;
    return summary_.representatives[static_cast<std::size_t>(d)];
}

bool Cohomology::is_cocycle(const Cochain& c) const
{
    if (c.degree < 0 || c.coefficients.size() != complex_->count(c.degree))
        return false;
    if (c.degree >= complex_->dimension())
        return true;
    return delta_[static_cast<std::size_t>(c.degree)].apply(c.coefficients).none();
}

bool Cohomology::is_coboundary(const Cochain& c) const
{
    if (!is_cocycle(c))
        return false;
    if (c.degree > complex_->dimension())
        return true;
    const auto [residue, combo] = reducers_[static_cast<std::size_t>(c.degree)].reduce(c.coefficients);
    if (residue.any())
        throw std::logic_error("cocycle not spanned by coboundaries and representatives");
    for (auto i : combo.support())
        if (i >= boundary_inputs_[static_cast<std::size_t>(c.degree)])
            return false;
    return true;
}

BitVector Cohomology::coordinates(const Cochain& c) const
{
    if (!is_cocycle(c))
        throw std::invalid_argument("coordinates requested for a non-cocycle");
    const std::size_t b = betti(c.degree);
    BitVector coords(b);
    if (b == 0)
        return coords;
    const auto du = static_cast<std::size_t>(c.degree);
    const auto [residue, combo] = reducers_[du].reduce(c.coefficients);
    if (residue.any())
        throw std::logic_error("cocycle not spanned by coboundaries and representatives");
    const auto& inputs = rep_inputs_[du];
    for (std::size_t r = 0; r < inputs.size(); ++r)
        if (inputs[r] < combo.size() && combo.get(inputs[r]))
            coords.set(r);
    return coords;
}

Cochain Cohomology::representative(int degree, const BitVector& coords) const
{
    Cochain out = Cochain::zero(*complex_, degree);
    const auto& reps = representatives(degree);
    for (auto i : coords.support())
        out.coefficients ^= reps.at(i).coefficients;
    return out;
}

CohomologySummary cohomology(const SimplicialComplex& k)
{
    if (k.empty())
        throw std::invalid_argument("cohomology of the empty complex");
    return Cohomology(k).summary();
}

Cochain cup_product(const SimplicialComplex& k, const Cochain& a, const Cochain& b)
{
    if (a.coefficients.size() != k.count(a.degree) || b.coefficients.size() != k.count(b.degree))
        throw std::invalid_argument("cochain length does not match the complex");
    const int p = a.degree, q = b.degree;
    Cochain out = Cochain::zero(k, p + q);
    if (p + q > k.dimension() || a.is_zero() || b.is_zero())
        return out;
    const auto& top = k.simplices(p + q);
    for (std::size_t t = 0; t < top.size(); ++t) {
        const Simplex& s = top[t];
        const Simplex front(s.begin(), s.begin() + p + 1);
        if (!a.coefficients.get(*k.index_of(front)))
            continue;
        const Simplex back(s.begin() + p, s.end());
        if (b.coefficients.get(*k.index_of(back)))
            out.coefficients.set(t);
    }
    return out;
}

GradedAlgebra::GradedAlgebra(std::vector<int> degrees, std::vector<std::vector<BitVector>> products)
    : degrees_(std::move(degrees)), products_(std::move(products))
{
    if (products_.size() != degrees_.size())
        throw std::invalid_argument("structure constants do not match the basis");
}

BitVector GradedAlgebra::multiply(const BitVector& a, const BitVector& b) const
{
    BitVector out(dimension());
    for (auto i : a.support())
        for (auto j : b.support())
            out ^= products_[i][j];
    return out;
}

int GradedAlgebra::cup_length(const std::vector<BitVector>& generators) const
{
    Echelon span(dimension(), false);
    std::vector<BitVector> basis;
    for (const auto& g : generators) {
        for (auto i : g.support())
            if (degrees_[i] <= 0)
                throw std::invalid_argument("cup length generators must have positive degree");
        if (!span.insert(g))
            basis.push_back(g);
    }
    int length = 0;
    std::vector<BitVector> level = basis;
    while (!level.empty()) {
        ++length;
        Echelon next_span(dimension(), false);
        std::vector<BitVector> next;
        for (const auto& p : level)
            for (const auto& g : basis) {
                BitVector prod = multiply(p, g);
                if (prod.any() && !next_span.insert(prod))
                    next.push_back(std::move(prod));
            }
        level = std::move(next);
    }
    return length;
}

GradedAlgebra GradedAlgebra::tensor(const GradedAlgebra& a, const GradedAlgebra& b)
{
    const std::size_t na = a.dimension(), nb = b.dimension();
    std::vector<int> degrees(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            degrees[i * nb + j] = a.degree(i) + b.degree(j);
    std::vector<std::vector<BitVector>> products(na * nb, std::vector<BitVector>(na * nb));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l) {
                    BitVector prod(na * nb);
                    const auto& left = a.basis_product(i, k);
                    const auto& right = b.basis_product(j, l);
                    for (auto x : left.support())
                        for (auto y : right.support())
                            prod.flip(x * nb + y);
                    products[i * nb + j][k * nb + l] = std::move(prod);
                }
    return GradedAlgebra(std::move(degrees), std::move(products));
}

BitVector CohomologyRing::embed(const Cochain& cocycle) const
{
    BitVector out(algebra.dimension());
    const auto coords = cohomology->coordinates(cocycle);
    if (coords.size() == 0)
        return out;
    const std::size_t base = offsets.at(static_cast<std::size_t>(cocycle.degree));
    for (auto i : coords.support())
        out.set(base + i);
    return out;
}

CohomologyRing cohomology_ring(const SimplicialComplex& k)
{
    auto h = std::make_shared<const Cohomology>(k);
    const int dim = k.dimension();
    std::vector<int> degrees;
    std::vector<std::size_t> offsets;
    std::vector<const Cochain*> basis;
    for (int d = 0; d <= dim; ++d) {
        offsets.push_back(degrees.size());
        for (const auto& rep : h->representatives(d)) {
            degrees.push_back(d);
            basis.push_back(&rep);
        }
    }
    const std::size_t n = basis.size();
    std::vector<std::vector<BitVector>> products(n, std::vector<BitVector>(n, BitVector(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int deg = degrees[i] + degrees[j];
            if (deg > dim)
                continue;
            const Cochain prod = cup_product(k, *basis[i], *basis[j]);
            const auto coords = h->coordinates(prod);
            const std::size_t base = offsets[static_cast<std::size_t>(deg)];
            for (auto c : coords.support())
                products[i][j].set(base + c);
        }
    CohomologyRing ring{h, GradedAlgebra(std::move(degrees), std::move(products)), std::move(offsets)};
    return ring;
}

int cup_length(const SimplicialComplex& k, const std::vector<Cochain>& subspace)
{
    if (subspace.empty())
        return 0;
    const auto ring = cohomology_ring(k);
    std::vector<BitVector> generators;
    for (const auto& c : subspace) {
        if (c.degree <= 0)
            throw std::invalid_argument("cup length subspace must lie in positive degrees");
        if (!ring.cohomology->is_cocycle(c))
            throw std::invalid_argument("cup length subspace contains a non-cocycle");
        generators.push_back(ring.embed(c));
    }
    return ring.algebra.cup_length(generators);
}

} // namespace efftc
