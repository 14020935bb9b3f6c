#include "abg/pseudomanifold.hpp"

#include <numeric>

namespace abg {

namespace {

struct DisjointSets {
    std::vector<std::uint32_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

PseudomanifoldReport verify_closed_pseudomanifold(const SimplicialComplex& complex, int d)
{
    PseudomanifoldReport report;
    report.pure = complex.is_pure() && complex.dimension() == d;
    if (!report.pure) {
        report.message = "not pure of dimension " + std::to_string(d);
        return report;
    }
    if (d == 0) {
        report.ridges_ok = true;
        report.components = complex.num_vertices();
        report.ok = true;
        return report;
    }
    const CellTable& tops = complex.maximal(d);
    const CellTable* gens[] = {&tops};
    FaceQuery q;
    q.dim = d - 1;
    q.multiplicity = true;
    q.incidence = true;
    const auto ridges = enumerate_faces(gens, complex.num_vertices(), q);
    DisjointSets sets(tops.size());
    for (std::size_t r = 0; r < ridges.faces.size(); ++r) {
        if (ridges.multiplicity[r] != 2)
            ++report.bad_ridges;
        for (auto i = ridges.incidence_start[r] + 1; i < ridges.incidence_start[r + 1]; ++i)
            sets.join(ridges.incidence[ridges.incidence_start[r]], ridges.incidence[i]);
    }
    for (std::uint32_t t = 0; t < tops.size(); ++t)
        if (sets.find(t) == t)
            ++report.components;
    report.ridges_ok = report.bad_ridges == 0;
    report.ok = report.ridges_ok;
    if (!report.ok)
        report.message = std::to_string(report.bad_ridges) + " ridges not in exactly two cells";
    return report;
}

LinkReport vertex_link_homology_check(const SimplicialComplex& complex, int d, std::span<const VertexId> sample)
{
    LinkReport report;
    for (VertexId v : sample) {
        LinkEntry entry;
        entry.vertex = v;
        const VertexId ids[] = {v};
        const SimplicialComplex link = star_link(complex, ids).second.to_complex();
        if (link.dimension() != d - 1) {
            entry.note = "link has dimension " + std::to_string(link.dimension());
        } else {
            entry.homology = homology_up_to(link, d - 1, Ring::Z);
            bool sphere = true;
            for (const auto& h : entry.homology) {
                const long expected =
                    d == 1 ? 2 : (h.degree == 0 || h.degree == d - 1 ? 1 : 0);
                if (h.betti != expected || !h.torsion.empty())
                    sphere = false;
            }
            if (!sphere)
                entry.note = "link homology is not that of a sphere";
            if (sphere && d == 2) {
                const CellTable* gens[] = {&link.cells(1)};
                FaceQuery q;
                q.dim = 0;
                q.multiplicity = true;
                const auto degrees = enumerate_faces(gens, link.num_vertices(), q);
                for (auto m : degrees.multiplicity)
                    if (m != 2) {
                        sphere = false;
                        entry.note = "link is not a single cycle";
                        break;
                    }
            }
            entry.ok = sphere;
        }
        report.ok = report.ok && entry.ok;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

std::vector<VertexId> sample_vertices(const SimplicialComplex& complex, std::size_t count)
{
    const std::size_t n = complex.num_vertices();
    std::vector<VertexId> out;
    if (count >= n) {
        out.resize(n);
        std::iota(out.begin(), out.end(), VertexId{0});
        return out;
    }
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(static_cast<VertexId>(i * n / count));
    return out;
}

} // namespace abg
