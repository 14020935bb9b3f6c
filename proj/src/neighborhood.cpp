#include "abg/neighborhood.hpp"

#include "abg/error.hpp"

#include <algorithm>
#include <numeric>

namespace abg {

namespace {

ConstructionParams cover_of(const ConstructionParams& params)
{
    ConstructionParams cover = params;
    cover.group = GroupKind::Ghat;
    return cover;
}

std::vector<std::uint8_t> neighborhood_flags(const NeighborhoodPair& pair, const CellTable& tops)
{
    const auto z_mask = pair.z_subdivided.vertex_mask();
    const auto zp_mask = pair.zprime_subdivided.vertex_mask();
    std::vector<std::uint8_t> flags(tops.size(), 0);
    for (std::size_t r = 0; r < tops.size(); ++r)
        for (VertexId v : tops.ids(r)) {
            if (z_mask[v])
                flags[r] |= 1;
            if (zp_mask[v])
                flags[r] |= 2;
        }
    return flags;
}

} // namespace

NeighborhoodPair build_neighborhoods(const SimplicialComplex& quotient, const ConstructionParams& params)
{
    require_chart(quotient, params);
    const ConstructionParams cover_params = cover_of(params);
    const SimplicialComplex cover = params.group == GroupKind::Ghat ? quotient : triangulate_quotient(cover_params);
    const Subcomplex z = skeleton_subcomplex(cover, cover_params, Skeleton::Z);
    const Subcomplex zprime = skeleton_subcomplex(cover, cover_params, Skeleton::Zprime);
    return build_neighborhoods(cover, params, z, zprime);
}

NeighborhoodPair build_neighborhoods(const SimplicialComplex& cover_quotient, const ConstructionParams& params,
                                     const Subcomplex& z, const Subcomplex& zprime)
{
    NeighborhoodPair pair;
    pair.params = params;
    pair.cover_params = cover_of(params);
    require_chart(cover_quotient, pair.cover_params);
    if (!is_full_subcomplex(cover_quotient, z))
        fail(ErrorCode::SkeletonNotFull, "Z is not a full subcomplex");
    if (!is_full_subcomplex(cover_quotient, zprime))
        fail(ErrorCode::SkeletonNotFull, "Z' is not a full subcomplex");
    pair.z = z;
    pair.zprime = zprime;
    pair.subdivision = barycentric_subdivision(cover_quotient);
    pair.z_subdivided = subdivide(pair.subdivision, z);
    pair.zprime_subdivided = subdivide(pair.subdivision, zprime);
    pair.n_z = simplicial_neighborhood(pair.subdivision.complex, pair.z_subdivided);
    pair.n_zprime = simplicial_neighborhood(pair.subdivision.complex, pair.zprime_subdivided);
    return pair;
}

Subcomplex common_boundary(const NeighborhoodPair& pair)
{
    Subcomplex a = boundary_subcomplex(pair.n_z);
    Subcomplex b = boundary_subcomplex(pair.n_zprime);
    if (!(a == b))
        fail(ErrorCode::BoundariesDiffer, "the boundaries of N(Z) and N(Z') differ");
    const int d = pair.subdivision.complex.ambient_dim() - 1;
    FaceQuery q;
    q.dim = d - 1;
    q.multiplicity = true;
    const CellTable* tops[] = {&a.generators(d)};
    if (!a.is_pure() || a.dimension() != d)
        fail(ErrorCode::NotPseudomanifold, "the boundary is not pure of codimension one");
    auto ridges = enumerate_faces(tops, pair.subdivision.complex.num_vertices(), q);
    for (auto m : ridges.multiplicity)
        if (m != 2)
            fail(ErrorCode::NotPseudomanifold, "a ridge of the boundary does not lie in exactly two cells");
    return a;
}

SimplicialComplex extract_X(const NeighborhoodPair& pair)
{
    SimplicialComplex cover_x = common_boundary(pair).to_complex();
    if (pair.params.group == GroupKind::Ghat)
        return cover_x;
    return fold_to_G(cover_x, pair.params).base;
}

SimplicialComplex direct_X(const Subdivision& subdivided, const ConstructionParams& params)
{
    require_chart(subdivided.parent, params);
    const SimplicialComplex& t = subdivided.complex;
    const int n = t.ambient_dim();
    std::vector<bool> neither(t.num_vertices());
    for (VertexId v = 0; v < t.num_vertices(); ++v)
        neither[v] = classify_point(t.vertex(v), params.k) == PointClass::Neither;
    const CellTable& tops = t.maximal(n);
    CellTable gens(n - 1, 0);
    std::vector<VertexId> row;
    for (std::size_t r = 0; r < tops.size(); ++r) {
        auto ids = tops.ids(r);
        VertexId lowest = 0, edge = 0;
        for (VertexId v : ids) {
            const int dim = subdivided.origin[v].dim;
            if (dim == 0)
                lowest = v;
            else if (dim == 1)
                edge = v;
        }
        if (!neither[edge])
            continue;
        row.clear();
        for (VertexId v : ids)
            if (v != lowest)
                row.push_back(v);
        gens.push_back(row);
    }
    std::vector<CellTable> cells;
    cells.push_back(std::move(gens));
    return Subcomplex::closure_of(t, std::move(cells), true).to_complex();
}

Fold fold_to_G(const SimplicialComplex& cover, const ConstructionParams& params)
{
    ConstructionParams g = params;
    g.group = GroupKind::G;
    ConstructionParams gh = params;
    gh.group = GroupKind::Ghat;
    require_chart(cover, gh);
    const QuotientChart chart{LatticeGroup(g)};
    std::vector<RationalVector> images;
    images.reserve(cover.num_vertices());
    for (const auto& v : cover.vertices())
        images.push_back(chart.canonical_rep(v));
    std::vector<RationalVector> base_vertices = images;
    std::sort(base_vertices.begin(), base_vertices.end());
    base_vertices.erase(std::unique(base_vertices.begin(), base_vertices.end()), base_vertices.end());
    Fold fold;
    fold.vertex_map.resize(cover.num_vertices());
    for (VertexId v = 0; v < cover.num_vertices(); ++v)
        fold.vertex_map[v] = static_cast<VertexId>(
            std::lower_bound(base_vertices.begin(), base_vertices.end(), images[v]) - base_vertices.begin());
    if (base_vertices.size() * 2 != cover.num_vertices())
        fail(ErrorCode::InvalidInput, "fold is not two-to-one on vertices");
    std::vector<CellTable> tables;
    for (const CellTable* table : cover.maximal_tables()) {
        CellTable mapped(table->dim(), 0);
        std::vector<VertexId> row;
        for (std::size_t r = 0; r < table->size(); ++r) {
            row.clear();
            for (VertexId v : table->ids(r))
                row.push_back(fold.vertex_map[v]);
            std::sort(row.begin(), row.end());
            if (std::adjacent_find(row.begin(), row.end()) != row.end())
                fail(ErrorCode::QuotientNotSimplicial, "a cell folds onto a repeated vertex");
            mapped.push_back(row);
        }
        const std::size_t before = mapped.size();
        CellTable counted = mapped;
        counted.sort_unique();
        if (counted.size() * 2 != before)
            fail(ErrorCode::InvalidInput, "fold is not two-to-one on maximal cells");
        std::vector<std::size_t> hits(counted.size(), 0);
        for (std::size_t r = 0; r < mapped.size(); ++r)
            ++hits[*counted.find(mapped.ids(r))];
        if (std::any_of(hits.begin(), hits.end(), [](std::size_t h) { return h != 2; }))
            fail(ErrorCode::InvalidInput, "fold is not two-to-one on maximal cells");
        tables.push_back(std::move(counted));
    }
    fold.base = SimplicialComplex::assemble(cover.ambient_dim(), std::move(base_vertices), std::move(tables), chart);
    return fold;
}

bool neighborhoods_cover(const NeighborhoodPair& pair)
{
    const SimplicialComplex& t = pair.subdivision.complex;
    const int n = t.ambient_dim();
    if (!t.is_pure() || !pair.n_z.is_pure() || !pair.n_zprime.is_pure())
        return false;
    return pair.n_z.generators(n).unite(pair.n_zprime.generators(n)) == t.maximal(n);
}

bool neighborhoods_meet_in(const NeighborhoodPair& pair, const Subcomplex& boundary)
{
    const SimplicialComplex& t = pair.subdivision.complex;
    const int n = t.ambient_dim();
    const CellTable& tops = t.maximal(n);
    const auto flags = neighborhood_flags(pair, tops);
    for (std::size_t r = 0; r < tops.size(); ++r)
        if (flags[r] == 3)
            return false;
    const CellTable* gens[] = {&tops};
    for (int d = 0; d < n; ++d) {
        FaceQuery q;
        q.dim = d;
        q.generator_flags = flags;
        auto faces = enumerate_faces(gens, t.num_vertices(), q);
        const CellTable& expected = boundary.cells(d);
        std::size_t both = 0;
        for (std::size_t i = 0; i < faces.faces.size(); ++i) {
            if (faces.flags[i] != 3)
                continue;
            ++both;
            if (!expected.contains(faces.faces.ids(i)))
                return false;
        }
        if (both != expected.size())
            return false;
    }
    return true;
}

} // namespace abg
