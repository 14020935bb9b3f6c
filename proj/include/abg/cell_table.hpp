#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace abg {

using VertexId = std::uint32_t;
using CellIndex = std::uint32_t;
/// Lattice coefficient of one vertex of a cell, per basis vector.
using Offset = std::int8_t;

/// A cell of a complex: its dimension and its row in the sorted cell table.
struct CellRef {
    int dim = -1;
    CellIndex index = 0;

    friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

/// Flat table of d-cells. A row is d+1 strictly increasing vertex ids,
/// optionally paired with one lattice coefficient vector per vertex (relative
/// to the first vertex, whose coefficients are zero). Coefficients are only
/// present in quotients where a vertex set does not determine its cell.
class CellTable {
public:
    CellTable() = default;
    CellTable(int dim, int offset_dim);

    int dim() const { return dim_; }
    int width() const { return dim_ + 1; }
    int offset_dim() const { return offset_dim_; }
    bool has_offsets() const { return offset_dim_ > 0; }
    std::size_t size() const { return width() > 0 ? ids_.size() / static_cast<std::size_t>(width()) : 0; }
    bool empty() const { return ids_.empty(); }

    std::span<const VertexId> ids(std::size_t row) const
    {
        return {ids_.data() + row * static_cast<std::size_t>(width()), static_cast<std::size_t>(width())};
    }
    std::span<const Offset> offsets(std::size_t row) const
    {
        const std::size_t stride = static_cast<std::size_t>(width() * offset_dim_);
        return {offs_.data() + row * stride, stride};
    }

    void reserve(std::size_t rows);
    void push_back(std::span<const VertexId> ids, std::span<const Offset> offsets = {});
    void append(const CellTable& other);
    void sort_unique();
    bool is_sorted_unique() const;

    std::optional<CellIndex> find(std::span<const VertexId> ids, std::span<const Offset> offsets = {}) const;
    bool contains(std::span<const VertexId> ids, std::span<const Offset> offsets = {}) const
    {
        return find(ids, offsets).has_value();
    }

    /// Set operations on sorted tables of equal shape.
    CellTable minus(const CellTable& other) const;
    CellTable intersect(const CellTable& other) const;
    CellTable unite(const CellTable& other) const;
    CellTable select(std::span<const CellIndex> rows) const;

    /// Renames vertex ids through `map`, re-sorting each row and renormalizing
    /// coefficients, then sorts the table.
    CellTable remapped(std::span<const VertexId> map) const;

    /// The face spanned by the positions in `mask`, with coefficients made
    /// relative to its first vertex.
    void face(std::size_t row, unsigned mask, std::vector<VertexId>& ids, std::vector<Offset>& offsets) const;

    int compare_rows(std::size_t row, const CellTable& other, std::size_t other_row) const;

    friend bool operator==(const CellTable& a, const CellTable& b)
    {
        return a.dim_ == b.dim_ && a.offset_dim_ == b.offset_dim_ && a.ids_ == b.ids_ && a.offs_ == b.offs_;
    }

private:
    int compare_key(std::size_t row, std::span<const VertexId> ids, std::span<const Offset> offsets) const;

    int dim_ = -1;
    int offset_dim_ = 0;
    std::vector<VertexId> ids_;
    std::vector<Offset> offs_;
};

/// What to collect while enumerating the distinct faces of a set of cells.
struct FaceQuery {
    int dim = 0;
    bool count_only = false;
    bool multiplicity = false;
    bool incidence = false;
    /// Optional per-generator bits, OR-ed into every face of that generator.
    std::span<const std::uint8_t> generator_flags;
};

struct FaceResult {
    CellTable faces;
    std::size_t count = 0;
    std::vector<std::uint32_t> multiplicity;
    std::vector<std::uint8_t> flags;
    std::vector<std::uint64_t> incidence_start;
    /// Global generator indices (tables concatenated in order).
    std::vector<std::uint32_t> incidence;
};

/// Distinct `query.dim`-faces of all rows of `generators`, sorted. Work is
/// grouped by the face's first vertex, so memory stays proportional to the
/// largest vertex star and the output is independent of the worker count.
FaceResult enumerate_faces(std::span<const CellTable* const> generators, std::size_t num_vertices,
                           const FaceQuery& query);

} // namespace abg
