#include "abg/rational.hpp"

#include <algorithm>
#include <cctype>

namespace abg {

RationalVector RationalVector::from_ints(std::initializer_list<long> values)
{
    RationalVector v;
    v.coords_.reserve(values.size());
    for (long x : values)
        v.coords_.emplace_back(x);
    return v;
}

RationalVector RationalVector::scaled(const std::vector<long>& numerators, long denominator)
{
    RationalVector v;
    v.coords_.reserve(numerators.size());
    for (long x : numerators) {
        Rational q(x, denominator);
        q.canonicalize();
        v.coords_.push_back(q);
    }
    return v;
}

RationalVector& RationalVector::operator+=(const RationalVector& other)
{
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] += other.coords_[i];
    return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& other)
{
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] -= other.coords_[i];
    return *this;
}

RationalVector& RationalVector::operator*=(const Rational& factor)
{
    for (auto& c : coords_)
        c *= factor;
    return *this;
}

std::strong_ordering operator<=>(const RationalVector& a, const RationalVector& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = cmp(a.coords_[i], b.coords_[i]);
        if (c < 0)
            return std::strong_ordering::less;
        if (c > 0)
            return std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

Rational RationalVector::dot(const RationalVector& other) const
{
    Rational sum = 0;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        sum += coords_[i] * other.coords_[i];
    return sum;
}

Rational RationalVector::max_norm() const
{
    Rational best = 0;
    for (const auto& c : coords_) {
        Rational a = abs(c);
        if (a > best)
            best = a;
    }
    return best;
}

std::string format_rational(const Rational& value)
{
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool parse_rational(std::string_view text, Rational& out)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 >= text.size())
        return false;
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    auto digits = [](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && s[0] == '-')
            i = 1;
        if (i >= s.size())
            return false;
        if (s.size() - i > 1 && s[i] == '0')
            return false;
        return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
    };
    if (!digits(num, true) || !digits(den, false))
        return false;
    const BigInt p{std::string(num)};
    const BigInt q{std::string(den)};
    if (q <= 0)
        return false;
    if (num == "-0")
        return false;
    Rational r(p, q);
    r.canonicalize();
    if (r.get_num() != p || r.get_den() != q)
        return false;
    out = r;
    return true;
}

std::string format_vector(const RationalVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += format_rational(v[i]);
    }
    return s + ")";
}

BigInt floor_of(const Rational& value)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

bool is_integer(const Rational& value)
{
    return value.get_den() == 1;
}

} // namespace abg
