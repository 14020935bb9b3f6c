#pragma once

#include "abg/complex.hpp"
#include "abg/lattice.hpp"

#include <cstdint>
#include <vector>

namespace abg {

enum class Skeleton { Z, Zprime };

/// Where a point sits relative to the two skeleta: Z holds points with at
/// most k non-integer coordinates, Z' its shift by (1/2, ..., 1/2).
enum class PointClass { InZ, InZprime, Neither };
PointClass classify_point(const RationalVector& p, int k);
bool in_skeleton(const RationalVector& p, int k, Skeleton which);

struct QuotientOptions {
    /// Throw QuotientNotSimplicial when two cells share a vertex set instead
    /// of keeping lattice coefficients on the cells.
    bool require_simplicial = false;
};

/// Quotient of the half-cube triangulation of R^{2k+1} by the lattice of
/// `params`. Vertices are the canonical representatives of the half-integer
/// points. When L = 1 some cells share a vertex set; those complexes carry
/// per-vertex lattice coefficients (unless options.require_simplicial).
/// Throws QuotientNotSimplicial if a cell would repeat a vertex, or if
/// adjacent half-cubes disagree on a shared facet.
SimplicialComplex triangulate_quotient(const ConstructionParams& params, const QuotientOptions& options = {});

/// Same construction on the region [lo, hi] of R^{2k+1} without any
/// identification; lo and hi must be half-integer points.
SimplicialComplex triangulate_box(int k, const RationalVector& lo, const RationalVector& hi);

/// Throws ParamMismatch unless `quotient` is charted by the group of `params`.
void require_chart(const SimplicialComplex& quotient, const ConstructionParams& params);

/// Cells of a Ghat quotient (or of an uncharted region) whose realization
/// lies in the skeleton. For G the skeleta do not descend (the last
/// generator swaps them), so this throws ParamMismatch.
Subcomplex skeleton_subcomplex(const SimplicialComplex& quotient, const ConstructionParams& params, Skeleton which);

/// Every maximal cell has k+1 vertices in Z and k+1 in Z', classified on a
/// lift of the cell (valid for both groups).
bool verify_dual_split(const SimplicialComplex& quotient, const ConstructionParams& params);

/// Fullness of a skeleton checked on lifts: for every maximal cell, the face
/// spanned by its vertices in the skeleton lies in the skeleton. Works for
/// both groups; for Ghat it agrees with is_full_subcomplex.
bool skeleton_full_on_lifts(const SimplicialComplex& quotient, const ConstructionParams& params, Skeleton which);

/// Sum of the volumes of the maximal cells (full-dimensional complexes).
Rational total_volume(const SimplicialComplex& complex);

/// Number of i-cells of the unit-cube structure on Z/Ghat, found by reducing
/// (base point, axis set) pairs over a covering box to canonical form and
/// counting distinct results. Requires 0 <= i <= k (IndexOutOfRange) and a
/// Ghat group (ParamMismatch).
std::uint64_t cubical_cell_count(const ConstructionParams& params, int i);
/// L^{2k} (2L+1) C(2k+1, i), the count matching the covolume of Ghat.
std::uint64_t cubical_cell_formula(const ConstructionParams& params, int i);
/// L^{2k} (L+1) C(2k+1, i), the count printed in the source text.
std::uint64_t printed_cell_formula(const ConstructionParams& params, int i);
/// Alternating sum of cubical_cell_count over 0..k.
long cubical_euler(const ConstructionParams& params);

} // namespace abg
