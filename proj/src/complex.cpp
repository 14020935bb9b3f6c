#include "abg/complex.hpp"

#include "abg/error.hpp"
#include "abg/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace abg {

struct SimplicialComplex::Data {
    int ambient_dim = 0;
    int dimension = -1;
    std::vector<RationalVector> vertices;
    std::optional<QuotientChart> chart;
    int offset_dim = 0;
    std::vector<CellTable> maximal;
    mutable std::mutex mutex;
    mutable std::vector<std::shared_ptr<const CellTable>> cells;
    mutable std::vector<std::optional<std::size_t>> counts;
};

namespace {

const CellTable& empty_table()
{
    static const CellTable table;
    return table;
}

int offset_dim_of(const std::vector<CellTable>& tables)
{
    for (const auto& t : tables)
        if (t.has_offsets())
            return t.offset_dim();
    return 0;
}

/// Reindexes tables so that entry d holds the d-cells, with a uniform layout.
std::vector<CellTable> normalize_tables(std::vector<CellTable> tables)
{
    const int od = offset_dim_of(tables);
    int top = -1;
    for (const auto& t : tables)
        if (!t.empty())
            top = std::max(top, t.dim());
    std::vector<CellTable> out;
    for (int d = 0; d <= top; ++d)
        out.emplace_back(d, od);
    for (auto& t : tables) {
        if (t.empty())
            continue;
        if (t.offset_dim() != od)
            fail(ErrorCode::InvalidInput, "cell tables disagree on coefficient layout");
        out[static_cast<std::size_t>(t.dim())].append(t);
    }
    for (auto& t : out)
        t.sort_unique();
    return out;
}

} // namespace

std::vector<CellTable> maximal_only(std::vector<CellTable> cells, std::size_t num_vertices)
{
    cells = normalize_tables(std::move(cells));
    const int top = static_cast<int>(cells.size()) - 1;
    for (int d = top - 1; d >= 0; --d) {
        auto& mine = cells[static_cast<std::size_t>(d)];
        if (mine.empty())
            continue;
        std::vector<const CellTable*> higher;
        for (int e = d + 1; e <= top; ++e)
            if (!cells[static_cast<std::size_t>(e)].empty())
                higher.push_back(&cells[static_cast<std::size_t>(e)]);
        FaceQuery q;
        q.dim = d;
        auto faces = enumerate_faces(higher, num_vertices, q);
        mine = mine.minus(faces.faces);
    }
    return cells;
}

SimplicialComplex::SimplicialComplex() : data_(std::make_shared<Data>())
{
}

SimplicialComplex SimplicialComplex::assemble(int ambient_dim, std::vector<RationalVector> vertices,
                                              std::vector<CellTable> generators, std::optional<QuotientChart> chart)
{
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (!(vertices[i - 1] < vertices[i]))
            fail(ErrorCode::InvalidInput, "vertex table is not strictly increasing");
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != ambient_dim)
            fail(ErrorCode::InvalidInput, "vertex has wrong ambient dimension");
    auto data = std::make_shared<Data>();
    data->ambient_dim = ambient_dim;
    data->vertices = std::move(vertices);
    data->chart = std::move(chart);
    data->offset_dim = offset_dim_of(generators);
    data->maximal = maximal_only(std::move(generators), data->vertices.size());
    for (const auto& t : data->maximal)
        for (std::size_t r = 0; r < t.size(); ++r)
            for (VertexId v : t.ids(r))
                if (v >= data->vertices.size())
                    fail(ErrorCode::InvalidInput, "vertex id out of range");
    data->dimension = static_cast<int>(data->maximal.size()) - 1;
    while (data->dimension >= 0 && data->maximal[static_cast<std::size_t>(data->dimension)].empty()) {
        data->maximal.pop_back();
        --data->dimension;
    }
    data->cells.resize(data->maximal.size());
    data->counts.resize(data->maximal.size());
    return SimplicialComplex(std::move(data));
}

int SimplicialComplex::ambient_dim() const { return data_->ambient_dim; }
int SimplicialComplex::dimension() const { return data_->dimension; }
std::size_t SimplicialComplex::num_vertices() const { return data_->vertices.size(); }
const RationalVector& SimplicialComplex::vertex(VertexId id) const { return data_->vertices.at(id); }
const std::vector<RationalVector>& SimplicialComplex::vertices() const { return data_->vertices; }
const std::optional<QuotientChart>& SimplicialComplex::chart() const { return data_->chart; }
int SimplicialComplex::offset_dim() const { return data_->offset_dim; }

std::optional<VertexId> SimplicialComplex::find_vertex(const RationalVector& coords) const
{
    auto it = std::lower_bound(data_->vertices.begin(), data_->vertices.end(), coords);
    if (it == data_->vertices.end() || !(*it == coords))
        return std::nullopt;
    return static_cast<VertexId>(it - data_->vertices.begin());
}

const CellTable& SimplicialComplex::maximal(int d) const
{
    if (d < 0 || d > data_->dimension)
        return empty_table();
    return data_->maximal[static_cast<std::size_t>(d)];
}

std::vector<const CellTable*> SimplicialComplex::maximal_tables(int min_dim) const
{
    std::vector<const CellTable*> out;
    for (int d = std::max(0, min_dim); d <= data_->dimension; ++d)
        if (!data_->maximal[static_cast<std::size_t>(d)].empty())
            out.push_back(&data_->maximal[static_cast<std::size_t>(d)]);
    return out;
}

std::size_t SimplicialComplex::num_maximal() const
{
    std::size_t n = 0;
    for (const auto& t : data_->maximal)
        n += t.size();
    return n;
}

bool SimplicialComplex::is_pure() const
{
    for (int d = 0; d < data_->dimension; ++d)
        if (!data_->maximal[static_cast<std::size_t>(d)].empty())
            return false;
    return true;
}

const CellTable& SimplicialComplex::cells(int d) const
{
    if (d < 0 || d > data_->dimension)
        return empty_table();
    if (d == data_->dimension)
        return data_->maximal[static_cast<std::size_t>(d)];
    std::lock_guard lock(data_->mutex);
    auto& slot = data_->cells[static_cast<std::size_t>(d)];
    if (!slot) {
        FaceQuery q;
        q.dim = d;
        auto result = enumerate_faces(maximal_tables(d), num_vertices(), q);
        slot = std::make_shared<const CellTable>(std::move(result.faces));
    }
    return *slot;
}

std::size_t SimplicialComplex::count(int d) const
{
    if (d < 0 || d > data_->dimension)
        return 0;
    if (d == data_->dimension)
        return data_->maximal[static_cast<std::size_t>(d)].size();
    {
        std::lock_guard lock(data_->mutex);
        if (auto& slot = data_->cells[static_cast<std::size_t>(d)])
            return slot->size();
        if (auto c = data_->counts[static_cast<std::size_t>(d)])
            return *c;
    }
    FaceQuery q;
    q.dim = d;
    q.count_only = true;
    const std::size_t n = enumerate_faces(maximal_tables(d), num_vertices(), q).count;
    std::lock_guard lock(data_->mutex);
    data_->counts[static_cast<std::size_t>(d)] = n;
    return n;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (int d = 0; d <= data_->dimension; ++d)
        f.push_back(count(d));
    return f;
}

std::optional<CellIndex> SimplicialComplex::find(std::span<const VertexId> ids, std::span<const Offset> offsets) const
{
    if (ids.empty())
        return std::nullopt;
    return cells(static_cast<int>(ids.size()) - 1).find(ids, offsets);
}

CellIndex SimplicialComplex::face_index(CellRef cell, int omit) const
{
    const CellTable& table = cells(cell.dim);
    const unsigned full = (1u << (cell.dim + 1)) - 1;
    std::vector<VertexId> ids;
    std::vector<Offset> offs;
    table.face(cell.index, full & ~(1u << omit), ids, offs);
    auto idx = cells(cell.dim - 1).find(ids, offs);
    if (!idx)
        fail(ErrorCode::SimplexNotInComplex, "face missing from complex");
    return *idx;
}

std::vector<RationalVector> SimplicialComplex::lift(const CellTable& table, std::size_t row) const
{
    auto ids = table.ids(row);
    std::vector<RationalVector> pts;
    pts.reserve(ids.size());
    if (table.has_offsets()) {
        const auto& group = data_->chart->group();
        auto offs = table.offsets(row);
        const std::size_t od = static_cast<std::size_t>(table.offset_dim());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            RationalVector p = vertex(ids[i]);
            p += group.combine_small(offs.data() + i * od);
            pts.push_back(std::move(p));
        }
    } else if (data_->chart) {
        const RationalVector& anchor = vertex(ids[0]);
        pts.push_back(anchor);
        for (std::size_t i = 1; i < ids.size(); ++i) {
            const RationalVector& p = vertex(ids[i]);
            pts.push_back(p + data_->chart->group().combine(data_->chart->lift_near(anchor, p)));
        }
    } else {
        for (VertexId v : ids)
            pts.push_back(vertex(v));
    }
    return pts;
}

RationalVector SimplicialComplex::barycenter(const CellTable& table, std::size_t row) const
{
    auto pts = lift(table, row);
    RationalVector sum(static_cast<std::size_t>(ambient_dim()));
    for (const auto& p : pts)
        sum += p;
    sum *= Rational(1, static_cast<long>(pts.size()));
    if (data_->chart)
        return data_->chart->canonical_rep(sum);
    return sum;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
{
    if (a.data_ == b.data_)
        return true;
    return a.data_->ambient_dim == b.data_->ambient_dim && a.data_->vertices == b.data_->vertices &&
           a.data_->maximal == b.data_->maximal && a.data_->chart == b.data_->chart;
}

SimplicialComplex make_complex(int ambient_dim, std::vector<RationalVector> vertex_coords,
                               const std::vector<std::vector<VertexId>>& simplices, const ValidationOptions& options)
{
    if (ambient_dim < 1)
        fail(ErrorCode::InvalidInput, "ambient dimension must be positive");
    for (const auto& v : vertex_coords)
        if (static_cast<int>(v.size()) != ambient_dim)
            fail(ErrorCode::InvalidInput, "vertex has wrong ambient dimension");
    const std::size_t nv = vertex_coords.size();
    std::vector<VertexId> order(nv);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return vertex_coords[a] < vertex_coords[b]; });
    std::vector<VertexId> map(nv);
    std::vector<RationalVector> sorted;
    sorted.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (i > 0 && vertex_coords[order[i]] == vertex_coords[order[i - 1]])
            fail(ErrorCode::DuplicateVertexCoordinates, "duplicate vertex " + format_vector(vertex_coords[order[i]]));
        map[order[i]] = static_cast<VertexId>(i);
        sorted.push_back(vertex_coords[order[i]]);
    }
    std::vector<CellTable> tables;
    for (const auto& s : simplices) {
        if (s.empty())
            fail(ErrorCode::InvalidInput, "empty simplex");
        std::vector<VertexId> ids;
        for (VertexId v : s) {
            if (v >= nv)
                fail(ErrorCode::InvalidInput, "vertex id out of range");
            ids.push_back(map[v]);
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            fail(ErrorCode::InvalidInput, "simplex repeats a vertex");
        const int d = static_cast<int>(ids.size()) - 1;
        while (static_cast<int>(tables.size()) <= d)
            tables.emplace_back(static_cast<int>(tables.size()), 0);
        tables[static_cast<std::size_t>(d)].push_back(ids);
        std::vector<RationalVector> pts;
        for (VertexId v : ids)
            pts.push_back(sorted[v]);
        if (!affinely_independent(pts))
            fail(ErrorCode::DegenerateSimplex, "affinely dependent vertices");
    }
    auto complex = SimplicialComplex::assemble(ambient_dim, std::move(sorted), std::move(tables));
    auto report = validate_geometry(complex, options);
    if (!report.ok)
        fail(ErrorCode::NotAComplex, report.message);
    return complex;
}

// --- Subcomplex ---

Subcomplex::Subcomplex(SimplicialComplex parent)
    : parent_(std::move(parent)), cache_(std::make_shared<std::vector<std::shared_ptr<const CellTable>>>()),
      mutex_(std::make_shared<std::mutex>())
{
}

Subcomplex Subcomplex::closure_of(const SimplicialComplex& parent, std::vector<CellTable> cells, bool trusted)
{
    Subcomplex sub(parent);
    for (const auto& t : cells)
        if (!t.empty() && t.offset_dim() != parent.offset_dim())
            fail(ErrorCode::InvalidInput, "cell layout does not match the parent complex");
    auto tables = normalize_tables(std::move(cells));
    if (!trusted) {
        for (const auto& t : tables)
            for (std::size_t r = 0; r < t.size(); ++r)
                if (!parent.cells(t.dim()).contains(t.ids(r), t.offsets(r)))
                    fail(ErrorCode::SimplexNotInComplex, "cell is not in the parent complex");
    }
    sub.generators_ = maximal_only(std::move(tables), parent.num_vertices());
    while (!sub.generators_.empty() && sub.generators_.back().empty())
        sub.generators_.pop_back();
    sub.cache_->resize(sub.generators_.size());
    return sub;
}

Subcomplex Subcomplex::whole(const SimplicialComplex& parent)
{
    Subcomplex sub(parent);
    for (int d = 0; d <= parent.dimension(); ++d)
        sub.generators_.push_back(parent.maximal(d));
    sub.cache_->resize(sub.generators_.size());
    return sub;
}

int Subcomplex::dimension() const
{
    return static_cast<int>(generators_.size()) - 1;
}

const CellTable& Subcomplex::generators(int d) const
{
    if (d < 0 || d > dimension())
        return empty_table();
    return generators_[static_cast<std::size_t>(d)];
}

std::vector<const CellTable*> Subcomplex::generator_tables(int min_dim) const
{
    std::vector<const CellTable*> out;
    for (int d = std::max(0, min_dim); d <= dimension(); ++d)
        if (!generators_[static_cast<std::size_t>(d)].empty())
            out.push_back(&generators_[static_cast<std::size_t>(d)]);
    return out;
}

bool Subcomplex::is_pure() const
{
    for (int d = 0; d < dimension(); ++d)
        if (!generators_[static_cast<std::size_t>(d)].empty())
            return false;
    return true;
}

const CellTable& Subcomplex::cells(int d) const
{
    if (d < 0 || d > dimension())
        return empty_table();
    if (d == dimension())
        return generators_[static_cast<std::size_t>(d)];
    std::lock_guard lock(*mutex_);
    auto& slot = (*cache_)[static_cast<std::size_t>(d)];
    if (!slot) {
        FaceQuery q;
        q.dim = d;
        auto result = enumerate_faces(generator_tables(d), parent_.num_vertices(), q);
        slot = std::make_shared<const CellTable>(std::move(result.faces));
    }
    return *slot;
}

std::size_t Subcomplex::count(int d) const
{
    if (d < 0 || d > dimension())
        return 0;
    if (d == dimension())
        return generators_[static_cast<std::size_t>(d)].size();
    {
        std::lock_guard lock(*mutex_);
        if (auto& slot = (*cache_)[static_cast<std::size_t>(d)])
            return slot->size();
    }
    FaceQuery q;
    q.dim = d;
    q.count_only = true;
    return enumerate_faces(generator_tables(d), parent_.num_vertices(), q).count;
}

std::vector<std::size_t> Subcomplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (int d = 0; d <= dimension(); ++d)
        f.push_back(count(d));
    return f;
}

bool Subcomplex::contains(std::span<const VertexId> ids, std::span<const Offset> offsets) const
{
    if (ids.empty())
        return false;
    return cells(static_cast<int>(ids.size()) - 1).contains(ids, offsets);
}

std::vector<bool> Subcomplex::vertex_mask() const
{
    std::vector<bool> mask(parent_.num_vertices(), false);
    const CellTable& verts = cells(0);
    for (std::size_t r = 0; r < verts.size(); ++r)
        mask[verts.ids(r)[0]] = true;
    return mask;
}

SimplicialComplex Subcomplex::to_complex() const
{
    const auto mask = vertex_mask();
    std::vector<VertexId> map(parent_.num_vertices(), 0);
    std::vector<RationalVector> verts;
    for (std::size_t v = 0; v < mask.size(); ++v) {
        if (!mask[v])
            continue;
        map[v] = static_cast<VertexId>(verts.size());
        verts.push_back(parent_.vertex(static_cast<VertexId>(v)));
    }
    std::vector<CellTable> tables;
    for (const auto& g : generators_)
        tables.push_back(g.remapped(map));
    return SimplicialComplex::assemble(parent_.ambient_dim(), std::move(verts), std::move(tables), parent_.chart());
}

bool operator==(const Subcomplex& a, const Subcomplex& b)
{
    if (!(a.parent_.same_object(b.parent_) || a.parent_ == b.parent_))
        return false;
    if (a.dimension() != b.dimension())
        return false;
    for (int d = 0; d <= a.dimension(); ++d)
        if (!(a.generators(d) == b.generators(d)) &&
            !(a.generators(d).empty() && b.generators(d).empty()))
            return false;
    return true;
}

// --- operations ---

std::pair<Subcomplex, Subcomplex> star_link(const SimplicialComplex& complex, std::span<const VertexId> simplex,
                                            std::span<const Offset> offsets)
{
    if (simplex.empty() || !complex.find(simplex, offsets))
        fail(ErrorCode::SimplexNotInComplex, "simplex is not in the complex");
    const int d = static_cast<int>(simplex.size()) - 1;
    std::vector<CellTable> star_cells, link_cells;
    std::vector<VertexId> ids;
    std::vector<Offset> offs;
    for (const CellTable* table : complex.maximal_tables(d)) {
        CellTable star_part(table->dim(), table->offset_dim());
        CellTable link_part(table->dim() - d - 1, table->offset_dim());
        const unsigned full = (1u << table->width()) - 1;
        for (std::size_t r = 0; r < table->size(); ++r) {
            auto row = table->ids(r);
            unsigned mask = 0;
            std::size_t j = 0;
            for (int p = 0; p < table->width() && j < simplex.size(); ++p)
                if (row[static_cast<std::size_t>(p)] == simplex[j]) {
                    mask |= 1u << p;
                    ++j;
                }
            if (j < simplex.size())
                continue;
            if (table->has_offsets()) {
                table->face(r, mask, ids, offs);
                if (!std::equal(offs.begin(), offs.end(), offsets.begin(), offsets.end()))
                    continue;
            }
            star_part.push_back(row, table->offsets(r));
            if (mask != full) {
                table->face(r, full & ~mask, ids, offs);
                link_part.push_back(ids, offs);
            }
        }
        star_cells.push_back(std::move(star_part));
        if (link_part.dim() >= 0)
            link_cells.push_back(std::move(link_part));
    }
    return {Subcomplex::closure_of(complex, std::move(star_cells), true),
            Subcomplex::closure_of(complex, std::move(link_cells), true)};
}

bool is_full_subcomplex(const SimplicialComplex& complex, const Subcomplex& sub)
{
    if (!(sub.parent().same_object(complex) || sub.parent() == complex))
        fail(ErrorCode::InvalidInput, "subcomplex belongs to a different complex");
    const auto mask = sub.vertex_mask();
    std::vector<VertexId> ids;
    std::vector<Offset> offs;
    for (const CellTable* table : complex.maximal_tables()) {
        for (std::size_t r = 0; r < table->size(); ++r) {
            auto row = table->ids(r);
            unsigned m = 0;
            for (int p = 0; p < table->width(); ++p)
                if (mask[row[static_cast<std::size_t>(p)]])
                    m |= 1u << p;
            if (m == 0)
                continue;
            table->face(r, m, ids, offs);
            if (!sub.contains(ids, offs))
                return false;
        }
    }
    return true;
}

Subcomplex simplicial_neighborhood(const SimplicialComplex& complex, const Subcomplex& sub)
{
    if (!(sub.parent().same_object(complex) || sub.parent() == complex))
        fail(ErrorCode::InvalidInput, "subcomplex belongs to a different complex");
    const auto mask = sub.vertex_mask();
    std::vector<CellTable> cells;
    for (const CellTable* table : complex.maximal_tables()) {
        std::vector<CellIndex> rows;
        for (std::size_t r = 0; r < table->size(); ++r) {
            auto row = table->ids(r);
            if (std::any_of(row.begin(), row.end(), [&](VertexId v) { return mask[v]; }))
                rows.push_back(static_cast<CellIndex>(r));
        }
        cells.push_back(table->select(rows));
    }
    return Subcomplex::closure_of(complex, std::move(cells), true);
}

Subcomplex boundary_subcomplex(const Subcomplex& pure)
{
    if (pure.empty())
        return Subcomplex(pure.parent());
    if (!pure.is_pure())
        fail(ErrorCode::NotPure, "boundary requires a pure complex");
    const int d = pure.dimension();
    if (d == 0)
        return Subcomplex(pure.parent());
    FaceQuery q;
    q.dim = d - 1;
    q.multiplicity = true;
    const CellTable* tops[] = {&pure.generators(d)};
    auto result = enumerate_faces(tops, pure.parent().num_vertices(), q);
    std::vector<CellIndex> rows;
    for (std::size_t i = 0; i < result.multiplicity.size(); ++i)
        if (result.multiplicity[i] == 1)
            rows.push_back(static_cast<CellIndex>(i));
    std::vector<CellTable> cells;
    cells.push_back(result.faces.select(rows));
    return Subcomplex::closure_of(pure.parent(), std::move(cells), true);
}

Subcomplex boundary_subcomplex(const SimplicialComplex& complex)
{
    return boundary_subcomplex(Subcomplex::whole(complex));
}

long euler_characteristic(const SimplicialComplex& complex)
{
    long chi = 0;
    for (int d = 0; d <= complex.dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(complex.count(d));
    return chi;
}

long euler_characteristic(const Subcomplex& sub)
{
    long chi = 0;
    for (int d = 0; d <= sub.dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(sub.count(d));
    return chi;
}

} // namespace abg
