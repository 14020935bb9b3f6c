#include "abg/cochain.hpp"

#include "abg/error.hpp"
#include "abg/orientation.hpp"
#include "abg/parallel.hpp"

namespace abg {

namespace {

long normalize(long v, Ring ring)
{
    return ring == Ring::Z2 ? ((v % 2) + 2) % 2 : v;
}

} // namespace

std::vector<long> coboundary(const SimplicialComplex& complex, int degree, std::span<const long> values, Ring ring)
{
    if (degree < 0 || degree > complex.dimension())
        fail(ErrorCode::DegreeOutOfRange, "cochain degree " + std::to_string(degree));
    if (values.size() != complex.cells(degree).size())
        fail(ErrorCode::InvalidInput, "cochain length does not match the cell count");
    if (degree == complex.dimension())
        return {};
    const int q = degree + 1;
    const std::size_t n = complex.cells(q).size();
    std::vector<long> out(n, 0);
    const auto ranges = split_range(n, 64);
    parallel_tasks(ranges.size(), [&](std::size_t t) {
        for (std::size_t j = ranges[t].first; j < ranges[t].second; ++j) {
            long sum = 0;
            for (int i = 0; i <= q; ++i) {
                const long v = values[complex.face_index({q, static_cast<CellIndex>(j)}, i)];
                sum += i % 2 == 0 ? v : -v;
            }
            out[j] = normalize(sum, ring);
        }
    });
    return out;
}

Cocycle make_cocycle(const SimplicialComplex& complex, int degree, Ring ring, std::vector<long> values)
{
    for (auto& v : values)
        v = normalize(v, ring);
    const auto d = coboundary(complex, degree, values, ring);
    for (long x : d)
        if (x != 0)
            fail(ErrorCode::NotACocycle, "coboundary does not vanish");
    return Cocycle{complex, degree, ring, std::move(values)};
}

Cocycle unit_cocycle(const SimplicialComplex& complex, Ring ring)
{
    return make_cocycle(complex, 0, ring, std::vector<long>(complex.num_vertices(), 1));
}

Cocycle coordinate_cocycle(const SimplicialComplex& complex, const ConstructionParams& params, int axis)
{
    if (axis < 1 || axis > 2 * params.k)
        fail(ErrorCode::AxisOutOfRange, "axis " + std::to_string(axis) + " outside 1.." + std::to_string(2 * params.k));
    const auto& chart = complex.chart();
    if (!chart || !(chart->group() == LatticeGroup(params)))
        fail(ErrorCode::ParamMismatch, "complex is not charted by the group of the parameters");
    const CellTable& edges = complex.cells(1);
    std::vector<long> values(edges.size(), 0);
    LatticeCoeffs coeffs;
    for (std::size_t r = 0; r < edges.size(); ++r) {
        const auto pts = complex.lift(edges, r);
        const auto ids = edges.ids(r);
        const RationalVector shift = (pts[1] - complex.vertex(ids[1])) - (pts[0] - complex.vertex(ids[0]));
        if (!chart->group().coefficients(shift, coeffs))
            fail(ErrorCode::NotACocycle, "edge lift is not a lattice translate");
        values[r] = coeffs[static_cast<std::size_t>(axis - 1)];
    }
    return make_cocycle(complex, 1, Ring::Z, std::move(values));
}

Cocycle cup_product(const Cocycle& a, const Cocycle& b)
{
    if (a.ring != b.ring || !a.complex.same_object(b.complex))
        fail(ErrorCode::RingMismatch, "factors live on different complexes or rings");
    const SimplicialComplex& complex = a.complex;
    const int p = a.degree, q = b.degree;
    if (p + q > complex.dimension())
        fail(ErrorCode::DegreeOverflow, "total degree " + std::to_string(p + q) + " exceeds the dimension");
    const CellTable& cells = complex.cells(p + q);
    std::vector<long> values(cells.size(), 0);
    const unsigned front = (1u << (p + 1)) - 1;
    const unsigned back = ((1u << (q + 1)) - 1) << p;
    std::vector<VertexId> ids;
    std::vector<Offset> offs;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        cells.face(r, front, ids, offs);
        const auto fi = complex.find(ids, offs);
        cells.face(r, back, ids, offs);
        const auto bi = complex.find(ids, offs);
        if (!fi || !bi)
            fail(ErrorCode::SimplexNotInComplex, "face lookup failed");
        values[r] = normalize(a.values[*fi] * b.values[*bi], a.ring);
    }
    return Cocycle{complex, p + q, a.ring, std::move(values)};
}

Cocycle cup_product(std::span<const Cocycle> factors)
{
    if (factors.empty())
        fail(ErrorCode::InvalidInput, "empty cup product");
    Cocycle acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = cup_product(acc, factors[i]);
    return acc;
}

bool cohomology_class_is_nonzero(const Cocycle& c)
{
    if (c.degree == 0)
        return std::any_of(c.values.begin(), c.values.end(), [](long v) { return v != 0; });
    const auto delta = transpose(chain_boundary_matrix(c.complex, c.degree, c.ring));
    return !is_solvable(delta, c.values, c.ring);
}

Cocycle pullback(const SimplicialComplex& domain, std::span<const VertexId> vertex_map, const Cocycle& c)
{
    if (vertex_map.size() != domain.num_vertices())
        fail(ErrorCode::InvalidInput, "vertex map has the wrong length");
    const CellTable& cells = domain.cells(c.degree);
    std::vector<long> values(cells.size(), 0);
    std::vector<VertexId> ids;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        ids.clear();
        for (VertexId v : cells.ids(r))
            ids.push_back(vertex_map[v]);
        const int sign = sort_sign(ids);
        if (sign == 0)
            continue;
        const auto idx = c.complex.find(ids);
        if (!idx)
            fail(ErrorCode::SimplexNotInComplex, "vertex map is not simplicial");
        values[r] = sign * c.values[*idx];
    }
    return make_cocycle(domain, c.degree, c.ring, std::move(values));
}

long evaluate(const Cocycle& c, std::span<const long> chain)
{
    if (chain.size() != c.values.size())
        fail(ErrorCode::InvalidInput, "chain length does not match the cochain");
    long sum = 0;
    for (std::size_t i = 0; i < chain.size(); ++i)
        sum += c.values[i] * chain[i];
    return normalize(sum, c.ring);
}

} // namespace abg
