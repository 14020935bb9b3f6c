#pragma once

#include "abg/cell_table.hpp"
#include "abg/lattice.hpp"
#include "abg/rational.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace abg {

/// Immutable finite complex with exact vertex coordinates. Vertex ids follow
/// the lexicographic order of the coordinates, so id order is the total
/// vertex order used by orientations and cup products. Copies share state.
///
/// A complex may carry a QuotientChart: its vertices are then canonical
/// representatives and a cell is realized by lifting its vertices to a
/// compact cluster (or, for cells with coefficient data, by the recorded
/// lattice coefficients).
class SimplicialComplex {
public:
    struct Data;

    SimplicialComplex();

    /// Builds a complex from trusted data. `vertices` must be strictly
    /// increasing; `generators` may repeat cells or include non-maximal ones.
    static SimplicialComplex assemble(int ambient_dim, std::vector<RationalVector> vertices,
                                      std::vector<CellTable> generators,
                                      std::optional<QuotientChart> chart = std::nullopt);

    int ambient_dim() const;
    /// -1 for the empty complex.
    int dimension() const;
    std::size_t num_vertices() const;
    const RationalVector& vertex(VertexId id) const;
    const std::vector<RationalVector>& vertices() const;
    std::optional<VertexId> find_vertex(const RationalVector& coords) const;
    const std::optional<QuotientChart>& chart() const;
    int offset_dim() const;
    bool has_offsets() const { return offset_dim() > 0; }

    /// Maximal cells of dimension d (empty table outside 0..dimension()).
    const CellTable& maximal(int d) const;
    std::vector<const CellTable*> maximal_tables(int min_dim = 0) const;
    std::size_t num_maximal() const;
    bool is_pure() const;

    /// All d-cells, sorted. Computed on first use and cached.
    const CellTable& cells(int d) const;
    /// Number of d-cells; does not populate the cache.
    std::size_t count(int d) const;
    std::vector<std::size_t> f_vector() const;

    std::optional<CellIndex> find(std::span<const VertexId> ids, std::span<const Offset> offsets = {}) const;
    /// Index in cells(d-1) of the face of a d-cell that omits position `omit`.
    CellIndex face_index(CellRef cell, int omit) const;

    /// Coordinates of a realization of the cell (row of any table of this complex).
    std::vector<RationalVector> lift(const CellTable& table, std::size_t row) const;
    std::vector<RationalVector> lift(CellRef cell) const { return lift(cells(cell.dim), cell.index); }
    /// Barycenter of the realization, reduced to the chart when there is one.
    RationalVector barycenter(const CellTable& table, std::size_t row) const;

    /// True when both handles refer to the same complex object.
    bool same_object(const SimplicialComplex& other) const { return data_ == other.data_; }
    /// Structural equality: coordinates, cells and chart.
    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

private:
    explicit SimplicialComplex(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

/// Validation knobs for make_complex and validate_geometry.
struct ValidationOptions {
    /// Complexes with more maximal cells than this are checked on a sample.
    std::size_t full_check_limit = 100000;
    std::size_t sample_size = 2000;
};

/// Validated construction from raw vertex coordinates and vertex-id lists.
/// Throws InvalidInput, DuplicateVertexCoordinates, DegenerateSimplex or
/// NotAComplex.
SimplicialComplex make_complex(int ambient_dim, std::vector<RationalVector> vertex_coords,
                               const std::vector<std::vector<VertexId>>& simplices,
                               const ValidationOptions& options = {});

/// Face-closed set of cells of a parent complex, stored as its maximal cells.
class Subcomplex {
public:
    Subcomplex() = default;
    explicit Subcomplex(SimplicialComplex parent);

    /// Closure of the given cells. Unless `trusted`, every cell is checked to
    /// belong to the parent (SimplexNotInComplex).
    static Subcomplex closure_of(const SimplicialComplex& parent, std::vector<CellTable> cells, bool trusted = false);
    static Subcomplex whole(const SimplicialComplex& parent);

    const SimplicialComplex& parent() const { return parent_; }
    int dimension() const;
    bool empty() const { return dimension() < 0; }
    const CellTable& generators(int d) const;
    std::vector<const CellTable*> generator_tables(int min_dim = 0) const;
    bool is_pure() const;

    const CellTable& cells(int d) const;
    std::size_t count(int d) const;
    std::vector<std::size_t> f_vector() const;
    bool contains(std::span<const VertexId> ids, std::span<const Offset> offsets = {}) const;
    /// Per parent vertex: whether it lies in this subcomplex.
    std::vector<bool> vertex_mask() const;

    /// Standalone complex on the vertices used (same coordinates and chart).
    SimplicialComplex to_complex() const;

    friend bool operator==(const Subcomplex& a, const Subcomplex& b);

private:
    SimplicialComplex parent_;
    std::vector<CellTable> generators_;
    std::shared_ptr<std::vector<std::shared_ptr<const CellTable>>> cache_;
    std::shared_ptr<std::mutex> mutex_;
};

/// Keeps only the cells not contained in a higher-dimensional cell.
std::vector<CellTable> maximal_only(std::vector<CellTable> cells, std::size_t num_vertices);

std::pair<Subcomplex, Subcomplex> star_link(const SimplicialComplex& complex, std::span<const VertexId> simplex,
                                            std::span<const Offset> offsets = {});
bool is_full_subcomplex(const SimplicialComplex& complex, const Subcomplex& sub);
Subcomplex simplicial_neighborhood(const SimplicialComplex& complex, const Subcomplex& sub);
/// Closure of the codimension-one faces that lie in exactly one top cell.
/// Throws NotPure.
Subcomplex boundary_subcomplex(const Subcomplex& pure);
Subcomplex boundary_subcomplex(const SimplicialComplex& complex);

long euler_characteristic(const SimplicialComplex& complex);
long euler_characteristic(const Subcomplex& sub);

} // namespace abg
