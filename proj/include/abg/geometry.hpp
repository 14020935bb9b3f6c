#pragma once

#include "abg/complex.hpp"
#include "abg/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace abg {

using RationalMatrix = std::vector<std::vector<Rational>>;

std::size_t rank_of(RationalMatrix m);
bool affinely_independent(const std::vector<RationalVector>& points);
/// Volume of a full-dimensional simplex (|det| / n!).
Rational simplex_volume(const std::vector<RationalVector>& points);
/// Solves the square system a x = b; nullopt when a is singular.
std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b);

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

/// Maximizes c.x subject to a x = b, x >= 0. Exact two-phase simplex with
/// Bland's rule.
LpResult maximize_lp(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c);

/// True when conv(a) and conv(b) meet exactly in the hull of their common
/// vertices (vertices are matched by coordinates).
bool simplices_meet_properly(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b);

struct GeometryReport {
    bool ok = true;
    bool sampled = false;
    std::size_t cells_checked = 0;
    std::size_t pairs_checked = 0;
    std::string message;
};

/// Checks non-degeneracy of maximal cells and that every pair of maximal
/// cells (including lattice translates, for charted complexes) meets in a
/// common face.
GeometryReport validate_geometry(const SimplicialComplex& complex, const ValidationOptions& options = {});

} // namespace abg
