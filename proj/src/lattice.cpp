#include "abg/lattice.hpp"

#include "abg/error.hpp"

namespace abg {

namespace {

long to_long(const BigInt& v)
{
    if (!v.fits_slong_p())
        fail(ErrorCode::InvalidInput, "lattice coefficient does not fit in a machine integer");
    return v.get_si();
}

BigInt ceil_of(const Rational& value)
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

BigInt round_nearest(const Rational& value)
{
    return floor_of(value + Rational(1, 2));
}

} // namespace

std::string to_string(GroupKind kind)
{
    return kind == GroupKind::G ? "G" : "Ghat";
}

GroupKind parse_group_kind(const std::string& text)
{
    if (text == "G")
        return GroupKind::G;
    if (text == "Ghat")
        return GroupKind::Ghat;
    fail(ErrorCode::InvalidInput, "unknown group '" + text + "' (expected G or Ghat)");
}

void ConstructionParams::validate() const
{
    if (k < 1)
        fail(ErrorCode::InvalidInput, "k must be >= 1");
    if (L < 1)
        fail(ErrorCode::InvalidInput, "L must be >= 1");
    if (k > 3)
        fail(ErrorCode::InvalidInput, "k > 3 is not supported");
}

Box Box::of_points(const std::vector<RationalVector>& points)
{
    Box box{points.front(), points.front()};
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < box.lo[i])
                box.lo[i] = p[i];
            if (p[i] > box.hi[i])
                box.hi[i] = p[i];
        }
    }
    return box;
}

bool Box::intersects(const Box& other) const
{
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (hi[i] < other.lo[i] || other.hi[i] < lo[i])
            return false;
    return true;
}

LatticeGroup::LatticeGroup(int k, int L, GroupKind kind) : k_(k), L_(L), kind_(kind)
{
    ConstructionParams{k, L, kind}.validate();
    const int n = 2 * k + 1;
    for (int i = 0; i < 2 * k; ++i) {
        RationalVector v(static_cast<std::size_t>(n));
        v[static_cast<std::size_t>(i)] = L;
        basis_.push_back(v);
    }
    RationalVector last(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        last[static_cast<std::size_t>(i)] = Rational(1, 2);
    last[static_cast<std::size_t>(n - 1)] += L;
    if (kind == GroupKind::Ghat)
        last *= 2;
    basis_.push_back(last);
}

Rational LatticeGroup::covolume() const
{
    Rational det = last_generator()[static_cast<std::size_t>(2 * k_)];
    for (int i = 0; i < 2 * k_; ++i)
        det *= L_;
    return det;
}

RationalVector LatticeGroup::combine(const LatticeCoeffs& coeffs) const
{
    const std::size_t n = static_cast<std::size_t>(ambient_dim());
    RationalVector out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (coeffs[j] == 0)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            if (basis_[j][i] != 0)
                out[i] += basis_[j][i] * coeffs[j];
    }
    return out;
}

bool LatticeGroup::coefficients(const RationalVector& d, LatticeCoeffs& out) const
{
    const std::size_t n = static_cast<std::size_t>(ambient_dim());
    out.assign(n, 0);
    const RationalVector& last = last_generator();
    Rational c_last = d[n - 1] / last[n - 1];
    if (!is_integer(c_last))
        return false;
    out[n - 1] = to_long(c_last.get_num());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Rational c = (d[i] - c_last * last[i]) / L_;
        if (!is_integer(c))
            return false;
        out[i] = to_long(c.get_num());
    }
    return true;
}

RationalVector QuotientChart::canonical_rep(const RationalVector& p) const
{
    LatticeCoeffs shift;
    return canonical_rep(p, shift);
}

RationalVector QuotientChart::canonical_rep(const RationalVector& p, LatticeCoeffs& shift) const
{
    const std::size_t n = static_cast<std::size_t>(ambient_dim());
    const RationalVector& last = group_.last_generator();
    shift.assign(n, 0);
    RationalVector q = p;
    const BigInt m_last = floor_of(q[n - 1] / last[n - 1]);
    if (m_last != 0) {
        q -= last * Rational(m_last);
        shift[n - 1] = to_long(m_last);
    }
    const Rational L(group_.L());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const BigInt m = floor_of(q[i] / L);
        if (m != 0) {
            q[i] -= L * Rational(m);
            shift[i] = to_long(m);
        }
    }
    return q;
}

bool QuotientChart::is_canonical(const RationalVector& p) const
{
    const std::size_t n = static_cast<std::size_t>(ambient_dim());
    const RationalVector& last = group_.last_generator();
    if (p[n - 1] < 0 || p[n - 1] >= last[n - 1])
        return false;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (p[i] < 0 || p[i] >= group_.L())
            return false;
    return true;
}

LatticeCoeffs QuotientChart::lift_near(const RationalVector& anchor, const RationalVector& point) const
{
    const std::size_t n = static_cast<std::size_t>(ambient_dim());
    const RationalVector& last = group_.last_generator();
    const Rational half_norm = group_.min_norm() / 2;
    LatticeCoeffs c(n, 0);
    RationalVector d = point - anchor;
    const BigInt m_last = round_nearest(-d[n - 1] / last[n - 1]);
    c[n - 1] = to_long(m_last);
    if (m_last != 0)
        d += last * Rational(m_last);
    if (abs(d[n - 1]) >= half_norm)
        fail(ErrorCode::AmbiguousLift, "no lift of " + format_vector(point) + " near " + format_vector(anchor));
    const Rational L(group_.L());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const BigInt m = round_nearest(-d[i] / L);
        c[i] = to_long(m);
        d[i] += L * Rational(m);
        if (abs(d[i]) >= half_norm)
            fail(ErrorCode::AmbiguousLift, "no unique lift of " + format_vector(point) + " near " + format_vector(anchor));
    }
    return c;
}

std::vector<LatticeCoeffs> QuotientChart::overlapping_translations(const Box& a, const Box& b) const
{
    const std::size_t n = static_cast<std::size_t>(ambient_dim());
    const RationalVector& last = group_.last_generator();
    const Rational L(group_.L());
    std::vector<LatticeCoeffs> out;
    // last * m must land in [a.lo - b.hi, a.hi - b.lo] along the last axis.
    const BigInt lo_last = ceil_of((a.lo[n - 1] - b.hi[n - 1]) / last[n - 1]);
    const BigInt hi_last = floor_of((a.hi[n - 1] - b.lo[n - 1]) / last[n - 1]);
    for (BigInt m_last = lo_last; m_last <= hi_last; ++m_last) {
        std::vector<std::pair<long, long>> ranges;
        bool empty = false;
        for (std::size_t i = 0; i + 1 < n && !empty; ++i) {
            const Rational shift = last[i] * Rational(m_last);
            const BigInt lo = ceil_of((a.lo[i] - b.hi[i] - shift) / L);
            const BigInt hi = floor_of((a.hi[i] - b.lo[i] - shift) / L);
            if (lo > hi)
                empty = true;
            ranges.emplace_back(to_long(lo), to_long(hi));
        }
        if (empty)
            continue;
        LatticeCoeffs c(n, 0);
        c[n - 1] = to_long(m_last);
        // odometer over the axis ranges
        for (std::size_t i = 0; i + 1 < n; ++i)
            c[i] = ranges[i].first;
        while (true) {
            out.push_back(c);
            std::size_t i = 0;
            for (; i + 1 < n; ++i) {
                if (c[i] < ranges[i].second) {
                    ++c[i];
                    break;
                }
                c[i] = ranges[i].first;
            }
            if (i + 1 >= n)
                break;
        }
    }
    return out;
}

} // namespace abg
