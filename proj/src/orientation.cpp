#include "abg/orientation.hpp"

#include "abg/error.hpp"
#include "abg/pseudomanifold.hpp"

#include <algorithm>
#include <deque>

namespace abg {

int sort_sign(std::vector<VertexId>& ids)
{
    int sign = 1;
    for (std::size_t i = 1; i < ids.size(); ++i)
        for (std::size_t j = i; j > 0 && ids[j - 1] > ids[j]; --j) {
            std::swap(ids[j - 1], ids[j]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < ids.size(); ++i)
        if (ids[i - 1] == ids[i])
            return 0;
    return sign;
}

namespace {

/// Facet adjacency of a closed pseudomanifold: for each (facet, position)
/// the facet across that ridge and the position it omits there.
struct Adjacency {
    int d = 0;
    std::size_t facets = 0;
    std::vector<CellIndex> ridge;
    std::vector<std::uint32_t> neighbor;
    std::vector<std::uint8_t> neighbor_pos;

    std::size_t slot(std::size_t f, int i) const { return f * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(i); }
};

Adjacency facet_adjacency(const SimplicialComplex& complex)
{
    if (complex.has_offsets())
        fail(ErrorCode::InvalidInput, "orientation needs a complex whose cells are determined by their vertices");
    const int d = complex.dimension();
    const auto pm = verify_closed_pseudomanifold(complex, d);
    if (!pm.ok || d < 1)
        fail(ErrorCode::NotPseudomanifold, pm.message.empty() ? "dimension below one" : pm.message);
    const CellTable& tops = complex.maximal(d);
    const CellTable& ridges = complex.cells(d - 1);
    Adjacency adj;
    adj.d = d;
    adj.facets = tops.size();
    const std::size_t slots = tops.size() * static_cast<std::size_t>(d + 1);
    adj.ridge.resize(slots);
    adj.neighbor.resize(slots);
    adj.neighbor_pos.resize(slots);
    std::vector<std::uint32_t> first(ridges.size(), UINT32_MAX);
    std::vector<VertexId> ids;
    std::vector<Offset> offs;
    for (std::size_t f = 0; f < tops.size(); ++f)
        for (int i = 0; i <= d; ++i) {
            tops.face(f, ((1u << (d + 1)) - 1) & ~(1u << i), ids, offs);
            const CellIndex r = *ridges.find(ids);
            adj.ridge[adj.slot(f, i)] = r;
            const auto me = static_cast<std::uint32_t>(adj.slot(f, i));
            if (first[r] == UINT32_MAX) {
                first[r] = me;
            } else {
                const std::uint32_t other = first[r];
                adj.neighbor[me] = other / static_cast<std::uint32_t>(d + 1);
                adj.neighbor_pos[me] = static_cast<std::uint8_t>(other % static_cast<std::uint32_t>(d + 1));
                adj.neighbor[other] = static_cast<std::uint32_t>(f);
                adj.neighbor_pos[other] = static_cast<std::uint8_t>(i);
            }
        }
    return adj;
}

std::int8_t across(std::int8_t sign, int i, int j)
{
    return static_cast<std::int8_t>((i + j) % 2 == 0 ? -sign : sign);
}

} // namespace

OrientationData orientation_character(const SimplicialComplex& complex)
{
    const Adjacency adj = facet_adjacency(complex);
    const int d = adj.d;
    OrientationData out;
    out.facet_signs.assign(adj.facets, 0);
    std::vector<char> ridge_done(complex.cells(d - 1).size(), 0);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t root = 0; root < adj.facets; ++root) {
        if (out.facet_signs[root] != 0)
            continue;
        ++out.components;
        out.facet_signs[root] = 1;
        queue.push_back(root);
        while (!queue.empty()) {
            const std::uint32_t f = queue.front();
            queue.pop_front();
            for (int i = 0; i <= d; ++i) {
                const auto s = adj.slot(f, i);
                const CellIndex r = adj.ridge[s];
                if (ridge_done[r])
                    continue;
                ridge_done[r] = 1;
                const std::uint32_t g = adj.neighbor[s];
                const std::int8_t want = across(out.facet_signs[f], i, adj.neighbor_pos[s]);
                if (out.facet_signs[g] == 0) {
                    out.facet_signs[g] = want;
                    queue.push_back(g);
                } else {
                    out.character.emplace_back(r, out.facet_signs[g] == want ? 1 : -1);
                }
            }
        }
    }
    std::sort(out.character.begin(), out.character.end());
    out.orientable = std::all_of(out.character.begin(), out.character.end(), [](const auto& c) { return c.second == 1; });
    return out;
}

DoubleCover orientation_double_cover(const SimplicialComplex& base)
{
    const Adjacency adj = facet_adjacency(base);
    const int d = adj.d;
    const CellTable& tops = base.maximal(d);
    const std::size_t nv = base.num_vertices();

    std::vector<std::uint32_t> star_start(nv + 1, 0);
    std::vector<std::uint32_t> first_facet(nv, UINT32_MAX);
    for (std::size_t f = 0; f < tops.size(); ++f)
        for (VertexId v : tops.ids(f)) {
            ++star_start[v + 1];
            if (first_facet[v] == UINT32_MAX)
                first_facet[v] = static_cast<std::uint32_t>(f);
        }
    for (std::size_t v = 0; v < nv; ++v)
        star_start[v + 1] += star_start[v];

    DoubleCover cover;
    cover.star_signs.assign(tops.size() * static_cast<std::size_t>(d + 1), 0);
    auto position = [&](std::uint32_t f, VertexId v) {
        auto ids = tops.ids(f);
        return static_cast<int>(std::find(ids.begin(), ids.end(), v) - ids.begin());
    };
    std::vector<std::uint32_t> stack;
    for (VertexId v = 0; v < nv; ++v) {
        const std::uint32_t root = first_facet[v];
        if (root == UINT32_MAX)
            continue;
        std::size_t reached = 0;
        cover.star_signs[adj.slot(root, position(root, v))] = 1;
        stack.assign(1, root);
        while (!stack.empty()) {
            const std::uint32_t f = stack.back();
            stack.pop_back();
            ++reached;
            const int pv = position(f, v);
            const std::int8_t sf = cover.star_signs[adj.slot(f, pv)];
            for (int i = 0; i <= d; ++i) {
                if (i == pv)
                    continue;
                const auto s = adj.slot(f, i);
                const std::uint32_t g = adj.neighbor[s];
                const std::int8_t want = across(sf, i, adj.neighbor_pos[s]);
                auto& sg = cover.star_signs[adj.slot(g, position(g, v))];
                if (sg == 0) {
                    sg = want;
                    stack.push_back(g);
                } else if (sg != want) {
                    fail(ErrorCode::NotPseudomanifold, "the star of vertex " + std::to_string(v) + " is not orientable");
                }
            }
        }
        if (reached != star_start[v + 1] - star_start[v])
            fail(ErrorCode::NotPseudomanifold, "the star of vertex " + std::to_string(v) + " is not connected");
    }

    std::vector<RationalVector> coords;
    coords.reserve(2 * nv);
    for (VertexId v = 0; v < nv; ++v)
        for (int sheet = 0; sheet < 2; ++sheet) {
            std::vector<Rational> c(base.vertex(v).values());
            c.emplace_back(sheet);
            coords.emplace_back(std::move(c));
            cover.vertex_map.push_back(v);
        }
    CellTable facets(d, 0);
    facets.reserve(2 * tops.size());
    std::vector<VertexId> row(static_cast<std::size_t>(d + 1));
    for (std::size_t f = 0; f < tops.size(); ++f)
        for (std::int8_t o : {std::int8_t{1}, std::int8_t{-1}}) {
            auto ids = tops.ids(f);
            for (int i = 0; i <= d; ++i)
                row[i] = 2 * ids[i] + (cover.star_signs[adj.slot(f, i)] == o ? 0 : 1);
            facets.push_back(row);
        }
    facets.sort_unique();
    std::vector<CellTable> gens;
    gens.push_back(std::move(facets));
    cover.complex = SimplicialComplex::assemble(base.ambient_dim() + 1, std::move(coords), std::move(gens));
    return cover;
}

bool matches_double_cover(const SimplicialComplex& upstairs, std::span<const VertexId> projection,
                          const SimplicialComplex& base, const DoubleCover& cover)
{
    if (projection.size() != upstairs.num_vertices() || upstairs.num_vertices() != cover.complex.num_vertices())
        return false;
    const auto orient = orientation_character(upstairs);
    if (!orient.orientable)
        return false;
    const int d = upstairs.dimension();
    if (d != base.dimension())
        return false;
    const CellTable& tops = upstairs.maximal(d);
    const CellTable& base_tops = base.maximal(d);
    std::vector<VertexId> image(upstairs.num_vertices(), UINT32_MAX);
    CellTable mapped(d, 0);
    std::vector<VertexId> ids, row;
    std::vector<std::size_t> order;
    for (std::size_t f = 0; f < tops.size(); ++f) {
        auto up = tops.ids(f);
        ids.clear();
        for (VertexId v : up)
            ids.push_back(projection[v]);
        std::vector<VertexId> sorted = ids;
        const int sign = sort_sign(sorted);
        if (sign == 0)
            return false;
        const auto bf = base_tops.find(sorted);
        if (!bf)
            return false;
        const int o = orient.facet_signs[f] * sign;
        row.assign(static_cast<std::size_t>(d + 1), 0);
        for (int i = 0; i <= d; ++i) {
            const int pos = static_cast<int>(std::find(sorted.begin(), sorted.end(), ids[i]) - sorted.begin());
            const int star = cover.star_signs[*bf * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(pos)];
            const VertexId target = 2 * ids[i] + (star == o ? 0 : 1);
            if (image[up[i]] == UINT32_MAX)
                image[up[i]] = target;
            else if (image[up[i]] != target)
                return false;
            row[i] = target;
        }
        std::sort(row.begin(), row.end());
        mapped.push_back(row);
    }
    std::vector<VertexId> seen = image;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end() || seen.back() == UINT32_MAX)
        return false;
    mapped.sort_unique();
    return mapped.size() == tops.size() && mapped == cover.complex.maximal(d);
}

} // namespace abg
