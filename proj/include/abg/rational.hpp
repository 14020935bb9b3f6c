#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace abg {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Exact point or displacement in lattice units. Entries are kept canonical
/// (lowest terms, positive denominator), which GMP guarantees after every
/// arithmetic operation.
class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(std::size_t n) : coords_(n, Rational(0)) {}
    RationalVector(std::initializer_list<Rational> values) : coords_(values) {}
    explicit RationalVector(std::vector<Rational> values) : coords_(std::move(values))
    {
        for (auto& c : coords_)
            c.canonicalize();
    }

    static RationalVector from_ints(std::initializer_list<long> values);
    /// Integer coordinates divided by a common denominator.
    static RationalVector scaled(const std::vector<long>& numerators, long denominator);

    std::size_t size() const noexcept { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }
    const std::vector<Rational>& values() const noexcept { return coords_; }

    RationalVector& operator+=(const RationalVector& other);
    RationalVector& operator-=(const RationalVector& other);
    RationalVector& operator*=(const Rational& factor);

    friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
    friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
    friend RationalVector operator*(RationalVector a, const Rational& f) { return a *= f; }

    friend bool operator==(const RationalVector& a, const RationalVector& b) { return a.coords_ == b.coords_; }
    /// Lexicographic order on coordinates; this is the total vertex order.
    friend std::strong_ordering operator<=>(const RationalVector& a, const RationalVector& b);

    Rational dot(const RationalVector& other) const;
    /// Maximum absolute coordinate.
    Rational max_norm() const;

private:
    std::vector<Rational> coords_;
};

/// Always "p/q", including integers ("3/1", "0/1").
std::string format_rational(const Rational& value);
/// Accepts only the strict "p/q" form with q > 0 and the fraction reduced.
bool parse_rational(std::string_view text, Rational& out);

std::string format_vector(const RationalVector& v);

BigInt floor_of(const Rational& value);
bool is_integer(const Rational& value);

} // namespace abg
