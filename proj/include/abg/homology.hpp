#pragma once

#include "abg/complex.hpp"
#include "abg/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace abg {

enum class Ring { Z, Z2 };
std::string to_string(Ring ring);
Ring parse_ring(std::string_view text);

/// Sparse matrix in triplet form, sorted by (row, col), no zeros and no
/// repeated positions once canonical.
struct SparseIntegerMatrix {
    struct Entry {
        std::uint32_t row = 0;
        std::uint32_t col = 0;
        long value = 0;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Entry> entries;

    /// Sorts, sums repeated positions and drops zeros (reducing mod 2 first
    /// for Z2).
    void canonicalize(Ring ring = Ring::Z);
    bool is_zero() const { return entries.empty(); }

    friend bool operator==(const SparseIntegerMatrix&, const SparseIntegerMatrix&) = default;
};

/// Dense arbitrary-precision matrix, row-major.
struct IntegerMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BigInt> data;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, BigInt(0)) {}
    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_sparse(const SparseIntegerMatrix& m);

    BigInt& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
};

SparseIntegerMatrix multiply(const SparseIntegerMatrix& a, const SparseIntegerMatrix& b, Ring ring = Ring::Z);
SparseIntegerMatrix transpose(const SparseIntegerMatrix& m);

/// Matrix of the boundary map from d-cells to (d-1)-cells, rows and columns
/// in cell-table order. Cells with coincident faces (quotients carrying
/// lattice coefficients) get the summed entry. Requires 1 <= d <= dimension.
SparseIntegerMatrix chain_boundary_matrix(const SimplicialComplex& complex, int d, Ring ring = Ring::Z);

struct SmithResult {
    /// Nonzero invariant factors, each dividing the next.
    std::vector<BigInt> invariant_factors;
    std::size_t rank = 0;
};

/// Unit pivots are eliminated sparsely first; the remaining core goes through
/// a dense arbitrary-precision reduction.
SmithResult smith_normal_form(const SparseIntegerMatrix& m);

/// U * m * V = D with U, V unimodular and D diagonal in Smith form.
struct SmithTransform {
    IntegerMatrix u;
    IntegerMatrix d;
    IntegerMatrix v;
    std::size_t rank = 0;
};
SmithTransform smith_with_transforms(const IntegerMatrix& m);

std::size_t rank_mod2(const SparseIntegerMatrix& m);

struct HomologyDescriptor {
    int degree = 0;
    long betti = 0;
    /// Each entry >= 2 and dividing the next.
    std::vector<BigInt> torsion;

    /// "Z^7 + Z/2", "0", ...
    std::string to_string() const;
    friend bool operator==(const HomologyDescriptor&, const HomologyDescriptor&) = default;
};

/// H_d over the ring; over Z2 torsion is empty and betti is the dimension.
HomologyDescriptor homology(const SimplicialComplex& complex, int d, Ring ring = Ring::Z);
/// H_0 .. H_{max_dim}, reusing each boundary reduction once.
std::vector<HomologyDescriptor> homology_up_to(const SimplicialComplex& complex, int max_dim, Ring ring = Ring::Z);

/// Whether m x = rhs has a solution over the ring.
bool is_solvable(const SparseIntegerMatrix& m, const std::vector<long>& rhs, Ring ring = Ring::Z);
/// Dense exact version via Smith transforms; returns one solution.
std::optional<std::vector<BigInt>> solve_dense(const IntegerMatrix& m, const std::vector<BigInt>& rhs);

} // namespace abg
