#include "abg/cell_table.hpp"

#include "abg/error.hpp"
#include "abg/parallel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace abg {

namespace {

int compare_spans(std::span<const VertexId> a, std::span<const VertexId> b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    return 0;
}

int compare_spans(std::span<const Offset> a, std::span<const Offset> b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    return 0;
}

} // namespace

CellTable::CellTable(int dim, int offset_dim) : dim_(dim), offset_dim_(offset_dim)
{
}

void CellTable::reserve(std::size_t rows)
{
    ids_.reserve(rows * static_cast<std::size_t>(width()));
    offs_.reserve(rows * static_cast<std::size_t>(width() * offset_dim_));
}

void CellTable::push_back(std::span<const VertexId> ids, std::span<const Offset> offsets)
{
    ids_.insert(ids_.end(), ids.begin(), ids.end());
    if (offset_dim_ > 0) {
        if (offsets.empty())
            offs_.resize(offs_.size() + static_cast<std::size_t>(width() * offset_dim_), 0);
        else
            offs_.insert(offs_.end(), offsets.begin(), offsets.end());
    }
}

void CellTable::append(const CellTable& other)
{
    if (other.empty())
        return;
    if (dim_ != other.dim_ || offset_dim_ != other.offset_dim_)
        fail(ErrorCode::InvalidInput, "appending cell tables of different shape");
    ids_.insert(ids_.end(), other.ids_.begin(), other.ids_.end());
    offs_.insert(offs_.end(), other.offs_.begin(), other.offs_.end());
}

int CellTable::compare_key(std::size_t row, std::span<const VertexId> ids, std::span<const Offset> offsets) const
{
    if (int c = compare_spans(this->ids(row), ids))
        return c;
    if (offset_dim_ > 0 && !offsets.empty())
        return compare_spans(this->offsets(row), offsets);
    return 0;
}

int CellTable::compare_rows(std::size_t row, const CellTable& other, std::size_t other_row) const
{
    return compare_key(row, other.ids(other_row), other.offset_dim_ > 0 ? other.offsets(other_row) : std::span<const Offset>{});
}

void CellTable::sort_unique()
{
    const std::size_t n = size();
    std::vector<CellIndex> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](CellIndex a, CellIndex b) { return compare_rows(a, *this, b) < 0; });
    CellTable out(dim_, offset_dim_);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && compare_rows(order[i], *this, order[i - 1]) == 0)
            continue;
        out.push_back(ids(order[i]), offset_dim_ > 0 ? offsets(order[i]) : std::span<const Offset>{});
    }
    out.ids_.shrink_to_fit();
    out.offs_.shrink_to_fit();
    *this = std::move(out);
}

bool CellTable::is_sorted_unique() const
{
    for (std::size_t i = 1; i < size(); ++i)
        if (compare_rows(i - 1, *this, i) >= 0)
            return false;
    return true;
}

std::optional<CellIndex> CellTable::find(std::span<const VertexId> ids, std::span<const Offset> offsets) const
{
    if (static_cast<int>(ids.size()) != width())
        return std::nullopt;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const int c = compare_key(mid, ids, offsets);
        if (c == 0)
            return static_cast<CellIndex>(mid);
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return std::nullopt;
}

CellTable CellTable::minus(const CellTable& other) const
{
    CellTable out(dim_, offset_dim_);
    std::size_t j = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        while (j < other.size() && other.compare_rows(j, *this, i) < 0)
            ++j;
        if (j < other.size() && other.compare_rows(j, *this, i) == 0)
            continue;
        out.push_back(ids(i), offset_dim_ > 0 ? offsets(i) : std::span<const Offset>{});
    }
    return out;
}

CellTable CellTable::intersect(const CellTable& other) const
{
    CellTable out(dim_, offset_dim_);
    std::size_t j = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        while (j < other.size() && other.compare_rows(j, *this, i) < 0)
            ++j;
        if (j < other.size() && other.compare_rows(j, *this, i) == 0)
            out.push_back(ids(i), offset_dim_ > 0 ? offsets(i) : std::span<const Offset>{});
    }
    return out;
}

CellTable CellTable::unite(const CellTable& other) const
{
    if (empty())
        return other;
    CellTable out = *this;
    out.append(other);
    out.sort_unique();
    return out;
}

CellTable CellTable::select(std::span<const CellIndex> rows) const
{
    CellTable out(dim_, offset_dim_);
    out.reserve(rows.size());
    for (CellIndex r : rows)
        out.push_back(ids(r), offset_dim_ > 0 ? offsets(r) : std::span<const Offset>{});
    return out;
}

CellTable CellTable::remapped(std::span<const VertexId> map) const
{
    CellTable out(dim_, offset_dim_);
    out.reserve(size());
    const std::size_t w = static_cast<std::size_t>(width());
    const std::size_t od = static_cast<std::size_t>(offset_dim_);
    std::vector<std::size_t> order(w);
    std::vector<VertexId> new_ids(w);
    std::vector<Offset> new_offs(w * od);
    for (std::size_t r = 0; r < size(); ++r) {
        auto old = ids(r);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return map[old[a]] < map[old[b]]; });
        for (std::size_t i = 0; i < w; ++i)
            new_ids[i] = map[old[order[i]]];
        if (od > 0) {
            auto offs = offsets(r);
            for (std::size_t i = 0; i < w; ++i)
                for (std::size_t a = 0; a < od; ++a)
                    new_offs[i * od + a] = static_cast<Offset>(offs[order[i] * od + a] - offs[order[0] * od + a]);
        }
        out.push_back(new_ids, new_offs);
    }
    out.sort_unique();
    return out;
}

void CellTable::face(std::size_t row, unsigned mask, std::vector<VertexId>& out_ids, std::vector<Offset>& out_offs) const
{
    out_ids.clear();
    out_offs.clear();
    auto r = ids(row);
    int first = -1;
    const std::size_t od = static_cast<std::size_t>(offset_dim_);
    for (int p = 0; p < width(); ++p) {
        if (!(mask >> p & 1u))
            continue;
        out_ids.push_back(r[static_cast<std::size_t>(p)]);
        if (od > 0) {
            if (first < 0)
                first = p;
            auto offs = offsets(row);
            for (std::size_t a = 0; a < od; ++a)
                out_offs.push_back(static_cast<Offset>(offs[static_cast<std::size_t>(p) * od + a] -
                                                       offs[static_cast<std::size_t>(first) * od + a]));
        }
    }
}

namespace {

struct ChunkResult {
    CellTable faces;
    std::size_t count = 0;
    std::vector<std::uint32_t> multiplicity;
    std::vector<std::uint8_t> flags;
    std::vector<std::uint64_t> incidence_count;
    std::vector<std::uint32_t> incidence;
};

/// Subsets of {p+1, ..., w-1} of size `choose`, as position masks.
std::vector<unsigned> tail_subsets(int w, int p, int choose)
{
    std::vector<unsigned> out;
    const int span = w - p - 1;
    if (choose > span)
        return out;
    for (unsigned m = 0; m < (1u << span); ++m) {
        if (std::popcount(m) != choose)
            continue;
        out.push_back(m << (p + 1) | 1u << p);
    }
    return out;
}

} // namespace

FaceResult enumerate_faces(std::span<const CellTable* const> generators, std::size_t num_vertices, const FaceQuery& query)
{
    const int d = query.dim;
    int od = 0;
    std::vector<const CellTable*> tables;
    std::vector<std::size_t> base;
    std::size_t total = 0;
    for (const CellTable* t : generators) {
        if (t->has_offsets())
            od = t->offset_dim();
    }
    for (const CellTable* t : generators) {
        base.push_back(total);
        tables.push_back(t);
        total += t->size();
        if (!t->empty() && t->offset_dim() != od)
            fail(ErrorCode::InvalidInput, "mixed coefficient layouts in face enumeration");
    }
    base.push_back(total);
    FaceResult result;
    result.faces = CellTable(d, od);
    if (d < 0)
        return result;

    // first-vertex index: generator g contributes at position p when at least
    // d later positions remain
    std::vector<std::vector<std::vector<unsigned>>> masks(tables.size());
    std::vector<std::uint64_t> start(num_vertices + 1, 0);
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const int w = tables[t]->width();
        if (tables[t]->dim() < d)
            continue;
        for (int p = 0; p < w; ++p)
            masks[t].push_back(tail_subsets(w, p, d));
        for (std::size_t r = 0; r < tables[t]->size(); ++r) {
            auto ids = tables[t]->ids(r);
            for (int p = 0; p + d < w; ++p)
                ++start[ids[static_cast<std::size_t>(p)] + 1];
        }
    }
    for (std::size_t v = 0; v < num_vertices; ++v)
        start[v + 1] += start[v];
    std::vector<std::uint32_t> entry_gen(start[num_vertices]);
    std::vector<std::uint8_t> entry_pos(start[num_vertices]);
    {
        std::vector<std::uint64_t> fill(start.begin(), start.end() - 1);
        for (std::size_t t = 0; t < tables.size(); ++t) {
            const int w = tables[t]->width();
            if (tables[t]->dim() < d)
                continue;
            for (std::size_t r = 0; r < tables[t]->size(); ++r) {
                auto ids = tables[t]->ids(r);
                for (int p = 0; p + d < w; ++p) {
                    const std::uint64_t slot = fill[ids[static_cast<std::size_t>(p)]]++;
                    entry_gen[slot] = static_cast<std::uint32_t>(base[t] + r);
                    entry_pos[slot] = static_cast<std::uint8_t>(p);
                }
            }
        }
    }

    const std::size_t key_w = static_cast<std::size_t>(d + 1);
    const std::size_t key_o = key_w * static_cast<std::size_t>(od);
    const auto ranges = split_range(num_vertices, 64);
    std::vector<ChunkResult> chunks(ranges.size());
    parallel_tasks(ranges.size(), [&](std::size_t c) {
        ChunkResult& out = chunks[c];
        out.faces = CellTable(d, od);
        std::vector<VertexId> key_ids;
        std::vector<Offset> key_offs;
        std::vector<std::uint32_t> key_gen;
        std::vector<std::uint32_t> order;
        std::vector<VertexId> tmp_ids;
        std::vector<Offset> tmp_offs;
        for (std::size_t v = ranges[c].first; v < ranges[c].second; ++v) {
            key_ids.clear();
            key_offs.clear();
            key_gen.clear();
            for (std::uint64_t e = start[v]; e < start[v + 1]; ++e) {
                const std::uint32_t g = entry_gen[e];
                const std::size_t t = static_cast<std::size_t>(std::upper_bound(base.begin(), base.end(), g) - base.begin()) - 1;
                const std::size_t r = g - base[t];
                for (unsigned mask : masks[t][entry_pos[e]]) {
                    tables[t]->face(r, mask, tmp_ids, tmp_offs);
                    key_ids.insert(key_ids.end(), tmp_ids.begin(), tmp_ids.end());
                    key_offs.insert(key_offs.end(), tmp_offs.begin(), tmp_offs.end());
                    key_gen.push_back(g);
                }
            }
            const std::size_t n = key_gen.size();
            if (n == 0)
                continue;
            order.resize(n);
            std::iota(order.begin(), order.end(), 0u);
            auto cmp_key = [&](std::uint32_t a, std::uint32_t b) {
                for (std::size_t i = 0; i < key_w; ++i)
                    if (key_ids[a * key_w + i] != key_ids[b * key_w + i])
                        return key_ids[a * key_w + i] < key_ids[b * key_w + i] ? -1 : 1;
                for (std::size_t i = 0; i < key_o; ++i)
                    if (key_offs[a * key_o + i] != key_offs[b * key_o + i])
                        return key_offs[a * key_o + i] < key_offs[b * key_o + i] ? -1 : 1;
                return 0;
            };
            std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
                const int c2 = cmp_key(a, b);
                return c2 != 0 ? c2 < 0 : key_gen[a] < key_gen[b];
            });
            for (std::size_t i = 0; i < n;) {
                std::size_t j = i + 1;
                while (j < n && cmp_key(order[i], order[j]) == 0)
                    ++j;
                ++out.count;
                if (!query.count_only) {
                    const std::uint32_t a = order[i];
                    out.faces.push_back(std::span<const VertexId>(key_ids.data() + a * key_w, key_w),
                                        std::span<const Offset>(key_offs.data() + a * key_o, key_o));
                    if (query.multiplicity)
                        out.multiplicity.push_back(static_cast<std::uint32_t>(j - i));
                    if (!query.generator_flags.empty()) {
                        std::uint8_t f = 0;
                        for (std::size_t q = i; q < j; ++q)
                            f |= query.generator_flags[key_gen[order[q]]];
                        out.flags.push_back(f);
                    }
                    if (query.incidence) {
                        out.incidence_count.push_back(j - i);
                        for (std::size_t q = i; q < j; ++q)
                            out.incidence.push_back(key_gen[order[q]]);
                    }
                }
                i = j;
            }
        }
    });

    for (auto& c : chunks) {
        result.count += c.count;
        result.faces.append(c.faces);
        result.multiplicity.insert(result.multiplicity.end(), c.multiplicity.begin(), c.multiplicity.end());
        result.flags.insert(result.flags.end(), c.flags.begin(), c.flags.end());
        result.incidence.insert(result.incidence.end(), c.incidence.begin(), c.incidence.end());
        for (auto k : c.incidence_count)
            result.incidence_start.push_back(k);
        c = ChunkResult{};
    }
    if (query.incidence) {
        std::vector<std::uint64_t> starts(result.incidence_start.size() + 1, 0);
        for (std::size_t i = 0; i < result.incidence_start.size(); ++i)
            starts[i + 1] = starts[i] + result.incidence_start[i];
        result.incidence_start = std::move(starts);
    }
    return result;
}

} // namespace abg
