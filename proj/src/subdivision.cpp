#include "abg/subdivision.hpp"

#include "abg/error.hpp"
#include "abg/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace abg {

namespace {

/// Appends the full flags of faces of one cell. `vertex_of_mask[m]` is the
/// new vertex of the face with position mask m.
void append_flags(int dim, const std::vector<VertexId>& vertex_of_mask, CellTable& out)
{
    std::vector<int> perm(static_cast<std::size_t>(dim + 1));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<VertexId> row(static_cast<std::size_t>(dim + 1));
    do {
        unsigned mask = 0;
        for (std::size_t j = 0; j < perm.size(); ++j) {
            mask |= 1u << perm[j];
            row[j] = vertex_of_mask[mask];
        }
        std::vector<VertexId> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(sorted);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

CellTable flags_of(const Subdivision& s, const CellTable& table)
{
    const int dim = table.dim();
    const unsigned masks = 1u << (dim + 1);
    const auto ranges = split_range(table.size(), 64);
    std::vector<CellTable> parts(ranges.size());
    parallel_tasks(ranges.size(), [&](std::size_t c) {
        CellTable part(dim, 0);
        std::vector<VertexId> vertex_of_mask(masks);
        std::vector<VertexId> ids;
        std::vector<Offset> offs;
        for (std::size_t r = ranges[c].first; r < ranges[c].second; ++r) {
            for (unsigned m = 1; m < masks; ++m) {
                table.face(r, m, ids, offs);
                const int d = static_cast<int>(ids.size()) - 1;
                auto idx = s.parent.cells(d).find(ids, offs);
                if (!idx)
                    fail(ErrorCode::SimplexNotInComplex, "face missing from parent complex");
                vertex_of_mask[m] = s.vertex_of[static_cast<std::size_t>(d)][*idx];
            }
            append_flags(dim, vertex_of_mask, part);
        }
        parts[c] = std::move(part);
    });
    CellTable out(dim, 0);
    for (auto& p : parts) {
        out.append(p);
        p = CellTable();
    }
    return out;
}

} // namespace

Subdivision barycentric_subdivision(const SimplicialComplex& complex)
{
    Subdivision s;
    s.parent = complex;
    const int top = complex.dimension();
    struct Entry {
        RationalVector coords;
        CellRef cell;
    };
    std::vector<Entry> entries;
    for (int d = 0; d <= top; ++d) {
        const CellTable& cells = complex.cells(d);
        const auto ranges = split_range(cells.size(), 64);
        std::vector<std::vector<Entry>> parts(ranges.size());
        parallel_tasks(ranges.size(), [&](std::size_t c) {
            for (std::size_t r = ranges[c].first; r < ranges[c].second; ++r)
                parts[c].push_back({complex.barycenter(cells, r), CellRef{d, static_cast<CellIndex>(r)}});
        });
        for (auto& p : parts)
            for (auto& e : p)
                entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.coords < b.coords; });
    s.vertex_of.resize(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d)
        s.vertex_of[static_cast<std::size_t>(d)].resize(complex.cells(d).size());
    std::vector<RationalVector> vertices;
    vertices.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i].coords == entries[i - 1].coords)
            fail(ErrorCode::BarycenterCollision, "two cells share the barycenter " + format_vector(entries[i].coords));
        s.vertex_of[static_cast<std::size_t>(entries[i].cell.dim)][entries[i].cell.index] = static_cast<VertexId>(i);
        s.origin.push_back(entries[i].cell);
        vertices.push_back(std::move(entries[i].coords));
    }
    entries.clear();
    entries.shrink_to_fit();

    std::vector<CellTable> gens;
    for (const CellTable* table : complex.maximal_tables())
        gens.push_back(flags_of(s, *table));
    // subdivided cells are small enough for the compact lift, so the chart is
    // kept but lattice coefficients are not
    s.complex = SimplicialComplex::assemble(complex.ambient_dim(), std::move(vertices), std::move(gens), complex.chart());
    return s;
}

Subcomplex subdivide(const Subdivision& s, const Subcomplex& sub)
{
    if (!(sub.parent().same_object(s.parent) || sub.parent() == s.parent))
        fail(ErrorCode::InvalidInput, "subcomplex does not belong to the subdivided complex");
    std::vector<CellTable> gens;
    for (const CellTable* table : sub.generator_tables())
        gens.push_back(flags_of(s, *table));
    return Subcomplex::closure_of(s.complex, std::move(gens), true);
}

} // namespace abg
