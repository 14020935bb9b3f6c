#include "abg/geometry.hpp"

#include "abg/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace abg {

std::size_t rank_of(RationalMatrix m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0)
                continue;
            const Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

bool affinely_independent(const std::vector<RationalVector>& points)
{
    if (points.size() <= 1)
        return true;
    if (points.size() - 1 > points[0].size())
        return false;
    RationalMatrix m;
    for (std::size_t i = 1; i < points.size(); ++i)
        m.push_back((points[i] - points[0]).values());
    return rank_of(std::move(m)) == points.size() - 1;
}

Rational simplex_volume(const std::vector<RationalVector>& points)
{
    const std::size_t n = points[0].size();
    if (points.size() != n + 1)
        fail(ErrorCode::InvalidInput, "volume needs a full-dimensional simplex");
    RationalMatrix m;
    for (std::size_t i = 1; i <= n; ++i)
        m.push_back((points[i] - points[0]).values());
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0)
                continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    Rational fact = 1;
    for (std::size_t i = 2; i <= n; ++i)
        fact *= static_cast<long>(i);
    return abs(det) / fact;
}

std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b)
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0)
            ++pivot;
        if (pivot == n)
            return std::nullopt;
        std::swap(a[pivot], a[c]);
        std::swap(b[pivot], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        b[i] /= a[i][i];
    return b;
}

namespace {

struct Tableau {
    RationalMatrix rows; // constraint rows, last entry is the right-hand side
    std::vector<Rational> objective; // reduced costs, last entry is -z
    std::vector<std::size_t> basis;
    std::vector<bool> allowed;

    std::size_t width() const { return objective.size() - 1; }

    void pivot(std::size_t r, std::size_t c)
    {
        const Rational p = rows[r][c];
        for (auto& v : rows[r])
            v /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            const Rational f = rows[i][c];
            for (std::size_t k = 0; k <= width(); ++k)
                rows[i][k] -= f * rows[r][k];
        }
        if (objective[c] != 0) {
            const Rational f = objective[c];
            for (std::size_t k = 0; k <= width(); ++k)
                objective[k] -= f * rows[r][k];
        }
        basis[r] = c;
    }

    /// Bland's rule iterations; false when unbounded.
    bool optimize()
    {
        while (true) {
            std::size_t enter = width();
            for (std::size_t j = 0; j < width(); ++j)
                if (allowed[j] && objective[j] > 0) {
                    enter = j;
                    break;
                }
            if (enter == width())
                return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0)
                    continue;
                Rational ratio = rows[i][width()] / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size())
                return false;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult maximize_lp(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c)
{
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    Tableau t;
    t.rows.assign(m, std::vector<Rational>(n + m + 1, 0));
    t.basis.resize(m);
    t.allowed.assign(n + m, true);
    t.objective.assign(n + m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
            t.rows[i][j] = a[i][j] * sign;
        t.rows[i][n + i] = 1;
        t.rows[i][n + m] = b[i] * sign;
        t.basis[i] = n + i;
        for (std::size_t j = 0; j < n; ++j)
            t.objective[j] += t.rows[i][j];
        t.objective[n + m] += t.rows[i][n + m];
    }
    t.optimize();
    LpResult result;
    if (t.objective[n + m] != 0)
        return result;
    // drive artificial variables out of the basis, dropping redundant rows
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) {
                col = j;
                break;
            }
        if (col == n) {
            t.rows.erase(t.rows.begin() + static_cast<long>(i));
            t.basis.erase(t.basis.begin() + static_cast<long>(i));
            continue;
        }
        t.pivot(i, col);
        ++i;
    }
    for (std::size_t j = n; j < n + m; ++j)
        t.allowed[j] = false;
    std::fill(t.objective.begin(), t.objective.end(), Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        t.objective[j] = c[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const Rational cb = c[t.basis[i]];
        if (cb == 0)
            continue;
        for (std::size_t k = 0; k <= n + m; ++k)
            t.objective[k] -= cb * t.rows[i][k];
    }
    if (!t.optimize()) {
        result.status = LpStatus::Unbounded;
        return result;
    }
    result.status = LpStatus::Optimal;
    result.value = -t.objective[n + m];
    result.x.assign(n, 0);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        result.x[t.basis[i]] = t.rows[i][n + m];
    return result;
}

bool simplices_meet_properly(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b)
{
    const std::size_t dim = a[0].size();
    const std::size_t na = a.size(), nb = b.size();
    RationalMatrix lhs(dim + 2, std::vector<Rational>(na + nb, 0));
    std::vector<Rational> rhs(dim + 2, 0);
    std::vector<Rational> cost(na + nb, 0);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t k = 0; k < dim; ++k)
            lhs[k][i] = a[i][k];
        lhs[dim][i] = 1;
        const bool shared = std::find(b.begin(), b.end(), a[i]) != b.end();
        cost[i] = shared ? 0 : 1;
    }
    for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t k = 0; k < dim; ++k)
            lhs[k][na + j] = -b[j][k];
        lhs[dim + 1][na + j] = 1;
    }
    rhs[dim] = 1;
    rhs[dim + 1] = 1;
    auto lp = maximize_lp(lhs, rhs, cost);
    if (lp.status == LpStatus::Infeasible)
        return true;
    if (lp.status == LpStatus::Unbounded)
        fail(ErrorCode::InvalidInput, "intersection program unbounded");
    return lp.value == 0;
}

namespace {

using IntPoint = std::vector<long>;

long lcm_long(long a, long b)
{
    return a / std::gcd(a, b) * b;
}

IntPoint to_int(const RationalVector& p, long scale)
{
    IntPoint out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational v = p[i] * scale;
        if (!is_integer(v) || !v.get_num().fits_slong_p())
            fail(ErrorCode::InvalidInput, "coordinate does not scale to an integer");
        out[i] = v.get_num().get_si();
    }
    return out;
}

/// Tries hyperplanes with normals e_i and e_i +- e_j. A hit proves that the
/// simplices meet in the hull of their shared vertices.
bool separated(const std::vector<IntPoint>& a, const std::vector<IntPoint>& b)
{
    const std::size_t n = a[0].size();
    std::vector<bool> a_shared(a.size()), b_shared(b.size());
    bool any_shared = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (a[i] == b[j]) {
                a_shared[i] = b_shared[j] = true;
                any_shared = true;
            }
    auto test = [&](auto&& dot) {
        long a_max = 0, a_min = 0, b_max = 0, b_min = 0, level = 0;
        bool a_init = false, b_init = false, level_set = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const long v = dot(a[i]);
            if (a_shared[i]) {
                if (level_set && v != level)
                    return false;
                level = v;
                level_set = true;
                continue;
            }
            a_max = a_init ? std::max(a_max, v) : v;
            a_min = a_init ? std::min(a_min, v) : v;
            a_init = true;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b_shared[j])
                continue;
            const long v = dot(b[j]);
            b_max = b_init ? std::max(b_max, v) : v;
            b_min = b_init ? std::min(b_min, v) : v;
            b_init = true;
        }
        if (!any_shared) {
            if (!a_init || !b_init)
                return false;
            return a_max < b_min || b_max < a_min;
        }
        const bool below = (!a_init || a_max < level) && (!b_init || b_min > level);
        const bool above = (!a_init || a_min > level) && (!b_init || b_max < level);
        return below || above;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (test([&](const IntPoint& p) { return p[i]; }))
            return true;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (test([&](const IntPoint& p) { return p[i] + p[j]; }))
                return true;
            if (test([&](const IntPoint& p) { return p[i] - p[j]; }))
                return true;
        }
    }
    return false;
}

struct BoxInt {
    IntPoint lo, hi;
};

BoxInt box_of(const std::vector<IntPoint>& pts)
{
    BoxInt b{pts[0], pts[0]};
    for (const auto& p : pts)
        for (std::size_t i = 0; i < p.size(); ++i) {
            b.lo[i] = std::min(b.lo[i], p[i]);
            b.hi[i] = std::max(b.hi[i], p[i]);
        }
    return b;
}

bool boxes_meet(const BoxInt& a, const BoxInt& b)
{
    for (std::size_t i = 0; i < a.lo.size(); ++i)
        if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i])
            return false;
    return true;
}

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace

GeometryReport validate_geometry(const SimplicialComplex& complex, const ValidationOptions& options)
{
    GeometryReport report;
    const auto tables = complex.maximal_tables();
    std::vector<std::size_t> base;
    std::size_t total = 0;
    for (const CellTable* t : tables) {
        base.push_back(total);
        total += t->size();
    }
    base.push_back(total);
    if (total == 0)
        return report;
    const std::size_t n = static_cast<std::size_t>(complex.ambient_dim());
    const auto& chart = complex.chart();

    long scale = 1;
    for (const auto& v : complex.vertices())
        for (const auto& c : v)
            scale = lcm_long(scale, c.get_den().get_si());
    if (chart)
        for (const auto& g : chart->group().basis())
            for (const auto& c : g)
                scale = lcm_long(scale, c.get_den().get_si());

    auto locate = [&](std::size_t g) {
        const std::size_t t = static_cast<std::size_t>(std::upper_bound(base.begin(), base.end(), g) - base.begin()) - 1;
        return std::pair<const CellTable*, std::size_t>{tables[t], g - base[t]};
    };
    const bool full = total <= options.full_check_limit;
    report.sampled = !full;
    std::map<std::size_t, std::vector<IntPoint>> lift_cache;
    auto lifted = [&](std::size_t g) -> std::vector<IntPoint> {
        if (full) {
            auto it = lift_cache.find(g);
            if (it != lift_cache.end())
                return it->second;
        }
        auto [t, r] = locate(g);
        std::vector<IntPoint> pts;
        for (const auto& p : complex.lift(*t, r))
            pts.push_back(to_int(p, scale));
        if (full)
            lift_cache.emplace(g, pts);
        return pts;
    };

    // reach: bound on the max-norm distance from a cell's first vertex to its
    // other lifted vertices
    long reach = 0;
    if (chart && !complex.has_offsets()) {
        reach = to_int(RationalVector{chart->group().min_norm() / 2}, scale)[0];
    } else {
        for (std::size_t g = 0; g < total; ++g) {
            auto pts = lifted(g);
            for (const auto& p : pts)
                for (std::size_t i = 0; i < n; ++i)
                    reach = std::max(reach, std::abs(p[i] - pts[0][i]));
        }
    }

    // vertex grid keyed by floor(coords / cell), plus first-vertex row ranges
    const long cell = std::max(scale, 2 * reach + 1);
    std::map<IntPoint, std::vector<VertexId>> grid;
    std::vector<IntPoint> vint;
    IntPoint vlo, vhi;
    for (VertexId v = 0; v < complex.num_vertices(); ++v) {
        vint.push_back(to_int(complex.vertex(v), scale));
        IntPoint key(n);
        for (std::size_t i = 0; i < n; ++i)
            key[i] = floor_div(vint.back()[i], cell);
        grid[key].push_back(v);
        if (v == 0) {
            vlo = vhi = vint.back();
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                vlo[i] = std::min(vlo[i], vint.back()[i]);
                vhi[i] = std::max(vhi[i], vint.back()[i]);
            }
        }
    }
    std::vector<std::vector<std::size_t>> first_start(tables.size());
    for (std::size_t t = 0; t < tables.size(); ++t) {
        auto& s = first_start[t];
        s.assign(complex.num_vertices() + 1, 0);
        for (std::size_t r = 0; r < tables[t]->size(); ++r)
            ++s[tables[t]->ids(r)[0] + 1];
        for (std::size_t v = 0; v < complex.num_vertices(); ++v)
            s[v + 1] += s[v];
    }

    std::vector<std::size_t> queries;
    if (full) {
        queries.resize(total);
        std::iota(queries.begin(), queries.end(), std::size_t{0});
    } else {
        for (std::size_t s = 0; s < options.sample_size; ++s)
            queries.push_back(s * total / options.sample_size);
    }

    auto to_rational_points = [&](const std::vector<IntPoint>& pts) {
        std::vector<RationalVector> out;
        for (const auto& p : pts) {
            RationalVector q(n);
            for (std::size_t i = 0; i < n; ++i)
                q[i] = Rational(p[i]);
            out.push_back(std::move(q));
        }
        return out;
    };

    for (std::size_t qi : queries) {
        const auto a = lifted(qi);
        ++report.cells_checked;
        if (!affinely_independent(to_rational_points(a))) {
            report.ok = false;
            report.message = "degenerate maximal cell " + std::to_string(qi);
            return report;
        }
        const BoxInt qbox = box_of(a);
        BoxInt reach_box = qbox;
        for (std::size_t i = 0; i < n; ++i) {
            reach_box.lo[i] -= reach;
            reach_box.hi[i] += reach;
        }
        std::vector<LatticeCoeffs> shifts{LatticeCoeffs(n, 0)};
        if (chart) {
            Box rb{RationalVector(n), RationalVector(n)};
            Box vb{RationalVector(n), RationalVector(n)};
            for (std::size_t i = 0; i < n; ++i) {
                rb.lo[i] = Rational(reach_box.lo[i], scale);
                rb.hi[i] = Rational(reach_box.hi[i], scale);
                vb.lo[i] = Rational(vlo[i], scale);
                vb.hi[i] = Rational(vhi[i], scale);
            }
            shifts = chart->overlapping_translations(rb, vb);
        }
        for (const auto& shift : shifts) {
            IntPoint tr(n, 0);
            if (chart)
                tr = to_int(chart->group().combine(shift), scale);
            const bool zero_shift = std::all_of(shift.begin(), shift.end(), [](long c) { return c == 0; });
            const bool positive_shift = !zero_shift && *std::find_if(shift.begin(), shift.end(), [](long c) { return c != 0; }) > 0;
            // first vertices u with u + tr inside reach_box
            IntPoint klo(n), khi(n);
            for (std::size_t i = 0; i < n; ++i) {
                klo[i] = floor_div(reach_box.lo[i] - tr[i], cell);
                khi[i] = floor_div(reach_box.hi[i] - tr[i], cell);
            }
            IntPoint key = klo;
            while (true) {
                auto it = grid.find(key);
                if (it != grid.end()) {
                    for (VertexId u : it->second) {
                        bool inside = true;
                        for (std::size_t i = 0; i < n && inside; ++i) {
                            const long c = vint[u][i] + tr[i];
                            inside = c >= reach_box.lo[i] && c <= reach_box.hi[i];
                        }
                        if (!inside)
                            continue;
                        for (std::size_t t = 0; t < tables.size(); ++t) {
                            for (std::size_t r = first_start[t][u]; r < first_start[t][u + 1]; ++r) {
                                const std::size_t gj = base[t] + r;
                                if (full) {
                                    if (gj < qi)
                                        continue;
                                    if (gj == qi && !positive_shift)
                                        continue;
                                } else if (gj == qi && zero_shift) {
                                    continue;
                                }
                                auto b = lifted(gj);
                                for (auto& p : b)
                                    for (std::size_t i = 0; i < n; ++i)
                                        p[i] += tr[i];
                                if (!boxes_meet(qbox, box_of(b)))
                                    continue;
                                ++report.pairs_checked;
                                if (separated(a, b))
                                    continue;
                                if (!simplices_meet_properly(to_rational_points(a), to_rational_points(b))) {
                                    report.ok = false;
                                    report.message = "maximal cells " + std::to_string(qi) + " and " +
                                                     std::to_string(gj) + " meet outside a common face";
                                    return report;
                                }
                            }
                        }
                    }
                }
                std::size_t i = 0;
                for (; i < n; ++i) {
                    if (key[i] < khi[i]) {
                        ++key[i];
                        break;
                    }
                    key[i] = klo[i];
                }
                if (i == n)
                    break;
            }
        }
    }
    return report;
}

} // namespace abg
