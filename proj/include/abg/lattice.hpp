#pragma once

#include "abg/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace abg {

enum class GroupKind { G, Ghat };

std::string to_string(GroupKind kind);
GroupKind parse_group_kind(const std::string& text);

/// Instance parameters: n = 2k+1 is the ambient dimension, L the period of the
/// first 2k axes.
struct ConstructionParams {
    int k = 1;
    int L = 1;
    GroupKind group = GroupKind::Ghat;

    int ambient_dim() const { return 2 * k + 1; }
    void validate() const;
    friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;
};

/// Integer coefficient vector with respect to a lattice basis.
using LatticeCoeffs = std::vector<long>;

/// Axis-aligned closed box.
struct Box {
    RationalVector lo;
    RationalVector hi;

    static Box of_points(const std::vector<RationalVector>& points);
    bool intersects(const Box& other) const;
};

/// Translation lattice generated by L e_1, ..., L e_2k and a last generator
/// (1/2, ..., 1/2, 1/2 + L) for G, doubled for Ghat. The basis is upper
/// triangular in the sense that only the last generator has a nonzero last
/// coordinate, which the reduction and search routines rely on.
class LatticeGroup {
public:
    LatticeGroup(int k, int L, GroupKind kind);
    explicit LatticeGroup(const ConstructionParams& params) : LatticeGroup(params.k, params.L, params.group) {}

    int k() const { return k_; }
    int L() const { return L_; }
    GroupKind kind() const { return kind_; }
    int ambient_dim() const { return 2 * k_ + 1; }
    const std::vector<RationalVector>& basis() const { return basis_; }
    const RationalVector& last_generator() const { return basis_.back(); }

    /// Exact determinant of the basis.
    Rational covolume() const;
    /// Smallest max-norm of a nonzero lattice vector (always L for this family).
    Rational min_norm() const { return Rational(L_); }

    RationalVector combine(const LatticeCoeffs& coeffs) const;
    template <typename Int>
    RationalVector combine_small(const Int* coeffs) const
    {
        LatticeCoeffs c(coeffs, coeffs + ambient_dim());
        return combine(c);
    }
    /// Solves basis * c = d; false when d is not a lattice vector.
    bool coefficients(const RationalVector& d, LatticeCoeffs& out) const;
    bool contains(const RationalVector& d) const
    {
        LatticeCoeffs c;
        return coefficients(d, c);
    }

    friend bool operator==(const LatticeGroup& a, const LatticeGroup& b)
    {
        return a.k_ == b.k_ && a.L_ == b.L_ && a.kind_ == b.kind_;
    }

private:
    int k_;
    int L_;
    GroupKind kind_;
    std::vector<RationalVector> basis_;
};

/// Canonical representatives for the quotient of R^n by a LatticeGroup.
/// Reduction: subtract the multiple of the last generator that brings the last
/// coordinate into [0, h), then reduce each of the first 2k coordinates into
/// [0, L).
class QuotientChart {
public:
    explicit QuotientChart(LatticeGroup group) : group_(std::move(group)) {}

    const LatticeGroup& group() const { return group_; }
    int ambient_dim() const { return group_.ambient_dim(); }

    RationalVector canonical_rep(const RationalVector& p) const;
    /// Same, also returning c with p = rep + basis * c.
    RationalVector canonical_rep(const RationalVector& p, LatticeCoeffs& shift) const;
    bool is_canonical(const RationalVector& p) const;

    /// Lattice coefficients c such that point + basis*c lies strictly within
    /// min_norm/2 of anchor in max-norm. Throws AmbiguousLift if there is none.
    LatticeCoeffs lift_near(const RationalVector& anchor, const RationalVector& point) const;

    /// All c such that `a` meets `b + basis*c`.
    std::vector<LatticeCoeffs> overlapping_translations(const Box& a, const Box& b) const;

    friend bool operator==(const QuotientChart& a, const QuotientChart& b) { return a.group_ == b.group_; }

private:
    LatticeGroup group_;
};

} // namespace abg
