#include "abg/homology.hpp"

#include "abg/error.hpp"
#include "abg/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace abg {

std::string to_string(Ring ring)
{
    return ring == Ring::Z ? "Z" : "Z2";
}

Ring parse_ring(std::string_view text)
{
    if (text == "Z")
        return Ring::Z;
    if (text == "Z2")
        return Ring::Z2;
    fail(ErrorCode::InvalidInput, "unknown coefficient ring '" + std::string(text) + "'");
}

void SparseIntegerMatrix::canonicalize(Ring ring)
{
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size();) {
        Entry acc = entries[i++];
        while (i < entries.size() && entries[i].row == acc.row && entries[i].col == acc.col)
            acc.value += entries[i++].value;
        if (ring == Ring::Z2)
            acc.value = ((acc.value % 2) + 2) % 2;
        if (acc.value != 0)
            entries[out++] = acc;
    }
    entries.resize(out);
}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_sparse(const SparseIntegerMatrix& s)
{
    IntegerMatrix m(s.rows, s.cols);
    for (const auto& e : s.entries)
        m.at(e.row, e.col) += e.value;
    return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.cols != b.rows)
        fail(ErrorCode::InvalidInput, "matrix shapes do not match");
    IntegerMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (sgn(a.at(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

SparseIntegerMatrix multiply(const SparseIntegerMatrix& a, const SparseIntegerMatrix& b, Ring ring)
{
    if (a.cols != b.rows)
        fail(ErrorCode::InvalidInput, "matrix shapes do not match");
    std::vector<std::size_t> start(b.rows + 1, 0);
    for (const auto& e : b.entries)
        ++start[e.row + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<SparseIntegerMatrix::Entry> by_row(b.entries.size());
    {
        auto fill = start;
        for (const auto& e : b.entries)
            by_row[fill[e.row]++] = e;
    }
    SparseIntegerMatrix c;
    c.rows = a.rows;
    c.cols = b.cols;
    for (const auto& e : a.entries)
        for (std::size_t i = start[e.col]; i < start[e.col + 1]; ++i)
            c.entries.push_back({e.row, by_row[i].col, e.value * by_row[i].value});
    c.canonicalize(ring);
    return c;
}

SparseIntegerMatrix transpose(const SparseIntegerMatrix& m)
{
    SparseIntegerMatrix t;
    t.rows = m.cols;
    t.cols = m.rows;
    t.entries.reserve(m.entries.size());
    for (const auto& e : m.entries)
        t.entries.push_back({e.col, e.row, e.value});
    t.canonicalize();
    return t;
}

SparseIntegerMatrix chain_boundary_matrix(const SimplicialComplex& complex, int d, Ring ring)
{
    if (d < 1 || d > complex.dimension())
        fail(ErrorCode::DegreeOutOfRange, "boundary degree " + std::to_string(d) + " outside 1.." +
                                              std::to_string(complex.dimension()));
    const std::size_t cols = complex.cells(d).size();
    SparseIntegerMatrix m;
    m.rows = complex.cells(d - 1).size();
    m.cols = cols;
    const auto ranges = split_range(cols, 64);
    std::vector<std::vector<SparseIntegerMatrix::Entry>> parts(ranges.size());
    parallel_tasks(ranges.size(), [&](std::size_t t) {
        auto& out = parts[t];
        out.reserve((ranges[t].second - ranges[t].first) * static_cast<std::size_t>(d + 1));
        for (std::size_t j = ranges[t].first; j < ranges[t].second; ++j)
            for (int i = 0; i <= d; ++i) {
                const CellIndex row = complex.face_index({d, static_cast<CellIndex>(j)}, i);
                const long sign = ring == Ring::Z2 ? 1 : (i % 2 == 0 ? 1 : -1);
                out.push_back({row, static_cast<std::uint32_t>(j), sign});
            }
    });
    for (auto& p : parts)
        m.entries.insert(m.entries.end(), p.begin(), p.end());
    m.canonicalize(ring);
    return m;
}

namespace {

/// Sparse row reduction using only pivots that are units. Every step is a
/// unimodular row operation followed by dropping the pivot row and column,
/// so the remaining rows carry the same invariant factors as the input minus
/// one unit factor per pivot. Stops early (leaving a valid state) if an
/// entry would overflow.
class UnitEliminator {
public:
    UnitEliminator(const SparseIntegerMatrix& m, Ring ring, const std::vector<long>* rhs)
        : ring_(ring), rows_(m.rows), col_rows_(m.cols), alive_(m.rows, 1)
    {
        for (const auto& e : m.entries) {
            long v = e.value;
            if (ring_ == Ring::Z2)
                v = ((v % 2) + 2) % 2;
            if (v == 0)
                continue;
            rows_[e.row].push_back({e.col, v});
            col_rows_[e.col].push_back(e.row);
        }
        for (auto& row : rows_)
            std::sort(row.begin(), row.end(), [](const Item& a, const Item& b) { return a.col < b.col; });
        if (rhs) {
            rhs_ = *rhs;
            if (ring_ == Ring::Z2)
                for (auto& v : rhs_)
                    v = ((v % 2) + 2) % 2;
        }
    }

    void run()
    {
        std::vector<std::uint32_t> order;
        while (!stalled_) {
            order.clear();
            for (std::uint32_t r = 0; r < rows_.size(); ++r)
                if (alive_[r] && !rows_[r].empty())
                    order.push_back(r);
            std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
                return rows_[a].size() != rows_[b].size() ? rows_[a].size() < rows_[b].size() : a < b;
            });
            bool progress = false;
            for (std::uint32_t r : order) {
                if (!alive_[r] || rows_[r].empty())
                    continue;
                const Item* best = nullptr;
                std::size_t best_count = 0;
                for (const auto& it : rows_[r]) {
                    if (!is_unit(it.value))
                        continue;
                    const std::size_t c = col_rows_[it.col].size();
                    if (!best || c < best_count) {
                        best = &it;
                        best_count = c;
                    }
                }
                if (!best)
                    continue;
                if (!eliminate(r, best->col, best->value)) {
                    stalled_ = true;
                    break;
                }
                progress = true;
            }
            if (!progress)
                break;
        }
    }

    std::size_t pivots() const { return pivots_; }

    /// Remaining nonzero rows restricted to their columns, as a dense core.
    IntegerMatrix core(std::vector<std::uint32_t>& core_rows) const
    {
        core_rows.clear();
        std::vector<std::uint32_t> cols;
        for (std::uint32_t r = 0; r < rows_.size(); ++r)
            if (alive_[r] && !rows_[r].empty()) {
                core_rows.push_back(r);
                for (const auto& it : rows_[r])
                    cols.push_back(it.col);
            }
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        IntegerMatrix m(core_rows.size(), cols.size());
        for (std::size_t i = 0; i < core_rows.size(); ++i)
            for (const auto& it : rows_[core_rows[i]]) {
                const auto j = static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), it.col) - cols.begin());
                m.at(i, j) = it.value;
            }
        return m;
    }

    /// False if an emptied row carries a nonzero right-hand side.
    bool empty_rows_consistent() const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (alive_[r] && rows_[r].empty() && rhs_[r] != 0)
                return false;
        return true;
    }

    long rhs(std::uint32_t row) const { return rhs_[row]; }

private:
    struct Item {
        std::uint32_t col;
        long value;
    };

    bool is_unit(long v) const { return ring_ == Ring::Z2 ? v != 0 : (v == 1 || v == -1); }

    bool eliminate(std::uint32_t r, std::uint32_t c, long pivot)
    {
        const std::vector<std::uint32_t> users = col_rows_[c];
        for (std::uint32_t r2 : users) {
            if (r2 == r || !alive_[r2])
                continue;
            auto& row2 = rows_[r2];
            auto it = std::lower_bound(row2.begin(), row2.end(), c,
                                       [](const Item& a, std::uint32_t col) { return a.col < col; });
            if (it == row2.end() || it->col != c)
                continue;
            const long factor = ring_ == Ring::Z2 ? 1 : it->value * pivot;
            if (!subtract(r2, r, factor))
                return false;
        }
        col_rows_[c].clear();
        alive_[r] = 0;
        ++pivots_;
        return true;
    }

    /// row[target] -= factor * row[source]
    bool subtract(std::uint32_t target, std::uint32_t source, long factor)
    {
        const auto& a = rows_[target];
        const auto& b = rows_[source];
        scratch_.clear();
        scratch_.reserve(a.size() + b.size());
        fresh_.clear();
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
                scratch_.push_back(a[i++]);
                continue;
            }
            long prod = 0;
            if (ring_ == Ring::Z2)
                prod = b[j].value;
            else if (__builtin_mul_overflow(factor, b[j].value, &prod))
                return false;
            if (i == a.size() || b[j].col < a[i].col) {
                long v = ring_ == Ring::Z2 ? prod : -prod;
                if (ring_ == Ring::Z && prod == std::numeric_limits<long>::min())
                    return false;
                scratch_.push_back({b[j].col, v});
                fresh_.push_back(b[j].col);
                ++j;
                continue;
            }
            long v = 0;
            if (ring_ == Ring::Z2)
                v = (a[i].value + prod) & 1;
            else if (__builtin_sub_overflow(a[i].value, prod, &v))
                return false;
            if (v != 0)
                scratch_.push_back({a[i].col, v});
            ++i;
            ++j;
        }
        if (!rhs_.empty()) {
            long prod = 0, v = 0;
            if (ring_ == Ring::Z2)
                v = (rhs_[target] + rhs_[source]) & 1;
            else if (__builtin_mul_overflow(factor, rhs_[source], &prod) ||
                     __builtin_sub_overflow(rhs_[target], prod, &v))
                return false;
            rhs_[target] = v;
        }
        rows_[target].swap(scratch_);
        for (std::uint32_t col : fresh_)
            col_rows_[col].push_back(target);
        return true;
    }

    Ring ring_;
    std::vector<std::vector<Item>> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<char> alive_;
    std::vector<long> rhs_;
    std::vector<Item> scratch_;
    std::vector<std::uint32_t> fresh_;
    std::size_t pivots_ = 0;
    bool stalled_ = false;
};

class DenseSmith {
public:
    DenseSmith(IntegerMatrix a, bool transforms) : a_(std::move(a)), track_(transforms)
    {
        if (track_) {
            u_ = IntegerMatrix::identity(a_.rows);
            v_ = IntegerMatrix::identity(a_.cols);
        }
    }

    std::size_t run()
    {
        const std::size_t n = std::min(a_.rows, a_.cols);
        std::size_t t = 0;
        for (; t < n; ++t) {
            if (!bring_min_to(t, t, a_.rows, a_.cols))
                break;
            for (;;) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < a_.rows; ++i) {
                    if (sgn(a_.at(i, t)) == 0)
                        continue;
                    mpz_fdiv_q(q_.get_mpz_t(), a_.at(i, t).get_mpz_t(), a_.at(t, t).get_mpz_t());
                    add_row(i, t, -q_);
                    dirty |= sgn(a_.at(i, t)) != 0;
                }
                for (std::size_t j = t + 1; j < a_.cols; ++j) {
                    if (sgn(a_.at(t, j)) == 0)
                        continue;
                    mpz_fdiv_q(q_.get_mpz_t(), a_.at(t, j).get_mpz_t(), a_.at(t, t).get_mpz_t());
                    add_col(j, t, -q_);
                    dirty |= sgn(a_.at(t, j)) != 0;
                }
                if (dirty) {
                    bring_min_in_cross(t);
                    continue;
                }
                bool fixed = false;
                for (std::size_t i = t + 1; i < a_.rows && !fixed; ++i)
                    for (std::size_t j = t + 1; j < a_.cols; ++j)
                        if (!mpz_divisible_p(a_.at(i, j).get_mpz_t(), a_.at(t, t).get_mpz_t())) {
                            add_row(t, i, BigInt(1));
                            fixed = true;
                            break;
                        }
                if (!fixed)
                    break;
            }
            if (sgn(a_.at(t, t)) < 0) {
                for (std::size_t j = t; j < a_.cols; ++j)
                    a_.at(t, j) = -a_.at(t, j);
                if (track_)
                    for (std::size_t j = 0; j < u_.cols; ++j)
                        u_.at(t, j) = -u_.at(t, j);
            }
        }
        return t;
    }

    IntegerMatrix& a() { return a_; }
    IntegerMatrix& u() { return u_; }
    IntegerMatrix& v() { return v_; }

private:
    bool bring_min_to(std::size_t t, std::size_t, std::size_t rows, std::size_t cols)
    {
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                const auto& x = a_.at(i, j);
                if (sgn(x) == 0)
                    continue;
                if (bi == rows || mpz_cmpabs(x.get_mpz_t(), a_.at(bi, bj).get_mpz_t()) < 0) {
                    bi = i;
                    bj = j;
                }
            }
        if (bi == rows)
            return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    void bring_min_in_cross(std::size_t t)
    {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < a_.rows; ++i)
            if (sgn(a_.at(i, t)) != 0 && (sgn(a_.at(bi, bj)) == 0 || mpz_cmpabs(a_.at(i, t).get_mpz_t(), a_.at(bi, bj).get_mpz_t()) < 0)) {
                bi = i;
                bj = t;
            }
        for (std::size_t j = t; j < a_.cols; ++j)
            if (sgn(a_.at(t, j)) != 0 && (sgn(a_.at(bi, bj)) == 0 || mpz_cmpabs(a_.at(t, j).get_mpz_t(), a_.at(bi, bj).get_mpz_t()) < 0)) {
                bi = t;
                bj = j;
            }
        swap_rows(t, bi);
        swap_cols(t, bj);
    }

    void swap_rows(std::size_t i, std::size_t k)
    {
        if (i == k)
            return;
        for (std::size_t j = 0; j < a_.cols; ++j)
            swap(a_.at(i, j), a_.at(k, j));
        if (track_)
            for (std::size_t j = 0; j < u_.cols; ++j)
                swap(u_.at(i, j), u_.at(k, j));
    }

    void swap_cols(std::size_t j, std::size_t k)
    {
        if (j == k)
            return;
        for (std::size_t i = 0; i < a_.rows; ++i)
            swap(a_.at(i, j), a_.at(i, k));
        if (track_)
            for (std::size_t i = 0; i < v_.rows; ++i)
                swap(v_.at(i, j), v_.at(i, k));
    }

    /// row[target] += f * row[source]
    void add_row(std::size_t target, std::size_t source, const BigInt& f)
    {
        for (std::size_t j = 0; j < a_.cols; ++j)
            if (sgn(a_.at(source, j)) != 0)
                a_.at(target, j) += f * a_.at(source, j);
        if (track_)
            for (std::size_t j = 0; j < u_.cols; ++j)
                if (sgn(u_.at(source, j)) != 0)
                    u_.at(target, j) += f * u_.at(source, j);
    }

    /// col[target] += f * col[source]
    void add_col(std::size_t target, std::size_t source, const BigInt& f)
    {
        for (std::size_t i = 0; i < a_.rows; ++i)
            if (sgn(a_.at(i, source)) != 0)
                a_.at(i, target) += f * a_.at(i, source);
        if (track_)
            for (std::size_t i = 0; i < v_.rows; ++i)
                if (sgn(v_.at(i, source)) != 0)
                    v_.at(i, target) += f * v_.at(i, source);
    }

    IntegerMatrix a_, u_, v_;
    bool track_;
    BigInt q_;
};

} // namespace

SmithResult smith_normal_form(const SparseIntegerMatrix& m)
{
    UnitEliminator elim(m, Ring::Z, nullptr);
    elim.run();
    std::vector<std::uint32_t> core_rows;
    DenseSmith dense(elim.core(core_rows), false);
    const std::size_t core_rank = dense.run();
    SmithResult result;
    result.rank = elim.pivots() + core_rank;
    result.invariant_factors.assign(elim.pivots(), BigInt(1));
    for (std::size_t t = 0; t < core_rank; ++t)
        result.invariant_factors.push_back(dense.a().at(t, t));
    return result;
}

SmithTransform smith_with_transforms(const IntegerMatrix& m)
{
    DenseSmith dense(m, true);
    SmithTransform out;
    out.rank = dense.run();
    out.d = std::move(dense.a());
    out.u = std::move(dense.u());
    out.v = std::move(dense.v());
    return out;
}

std::size_t rank_mod2(const SparseIntegerMatrix& m)
{
    UnitEliminator elim(m, Ring::Z2, nullptr);
    elim.run();
    return elim.pivots();
}

std::string HomologyDescriptor::to_string() const
{
    std::string out;
    auto add = [&](const std::string& term) {
        if (!out.empty())
            out += " + ";
        out += term;
    };
    if (betti == 1)
        add("Z");
    else if (betti > 1)
        add("Z^" + std::to_string(betti));
    for (const auto& t : torsion)
        add("Z/" + t.get_str());
    return out.empty() ? "0" : out;
}

std::vector<HomologyDescriptor> homology_up_to(const SimplicialComplex& complex, int max_dim, Ring ring)
{
    const int dim = complex.dimension();
    if (max_dim < 0 || max_dim > dim)
        fail(ErrorCode::DegreeOutOfRange, "homology degree " + std::to_string(max_dim) + " outside 0.." +
                                              std::to_string(dim));
    const int top = std::min(max_dim + 1, dim);
    std::vector<std::size_t> rank(static_cast<std::size_t>(dim) + 2, 0);
    std::vector<std::vector<BigInt>> factors(static_cast<std::size_t>(dim) + 2);
    for (int d = 1; d <= top; ++d) {
        const auto m = chain_boundary_matrix(complex, d, ring);
        if (ring == Ring::Z2) {
            rank[d] = rank_mod2(m);
        } else {
            auto snf = smith_normal_form(m);
            rank[d] = snf.rank;
            factors[d] = std::move(snf.invariant_factors);
        }
    }
    std::vector<HomologyDescriptor> out;
    for (int d = 0; d <= max_dim; ++d) {
        HomologyDescriptor h;
        h.degree = d;
        h.betti = static_cast<long>(complex.count(d)) - static_cast<long>(rank[d]) - static_cast<long>(rank[d + 1]);
        for (const auto& f : factors[d + 1])
            if (f > 1)
                h.torsion.push_back(f);
        out.push_back(std::move(h));
    }
    return out;
}

HomologyDescriptor homology(const SimplicialComplex& complex, int d, Ring ring)
{
    if (d < 0 || d > complex.dimension())
        fail(ErrorCode::DegreeOutOfRange, "homology degree " + std::to_string(d) + " outside 0.." +
                                              std::to_string(complex.dimension()));
    const int dim = complex.dimension();
    std::size_t rank_in = 0, rank_out = 0;
    std::vector<BigInt> torsion;
    if (d >= 1) {
        const auto m = chain_boundary_matrix(complex, d, ring);
        rank_out = ring == Ring::Z2 ? rank_mod2(m) : smith_normal_form(m).rank;
    }
    if (d + 1 <= dim) {
        const auto m = chain_boundary_matrix(complex, d + 1, ring);
        if (ring == Ring::Z2) {
            rank_in = rank_mod2(m);
        } else {
            auto snf = smith_normal_form(m);
            rank_in = snf.rank;
            for (const auto& f : snf.invariant_factors)
                if (f > 1)
                    torsion.push_back(f);
        }
    }
    HomologyDescriptor h;
    h.degree = d;
    h.betti = static_cast<long>(complex.count(d)) - static_cast<long>(rank_in) - static_cast<long>(rank_out);
    h.torsion = std::move(torsion);
    return h;
}

std::optional<std::vector<BigInt>> solve_dense(const IntegerMatrix& m, const std::vector<BigInt>& rhs)
{
    if (rhs.size() != m.rows)
        fail(ErrorCode::InvalidInput, "right-hand side has the wrong length");
    const auto t = smith_with_transforms(m);
    std::vector<BigInt> c(m.rows, BigInt(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.rows; ++j)
            if (sgn(t.u.at(i, j)) != 0)
                c[i] += t.u.at(i, j) * rhs[j];
    std::vector<BigInt> y(m.cols, BigInt(0));
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (i < t.rank) {
            if (!mpz_divisible_p(c[i].get_mpz_t(), t.d.at(i, i).get_mpz_t()))
                return std::nullopt;
            y[i] = c[i] / t.d.at(i, i);
        } else if (sgn(c[i]) != 0) {
            return std::nullopt;
        }
    }
    std::vector<BigInt> x(m.cols, BigInt(0));
    for (std::size_t i = 0; i < m.cols; ++i)
        for (std::size_t j = 0; j < t.rank; ++j)
            x[i] += t.v.at(i, j) * y[j];
    return x;
}

bool is_solvable(const SparseIntegerMatrix& m, const std::vector<long>& rhs, Ring ring)
{
    if (rhs.size() != m.rows)
        fail(ErrorCode::InvalidInput, "right-hand side has the wrong length");
    UnitEliminator elim(m, ring, &rhs);
    elim.run();
    if (!elim.empty_rows_consistent())
        return false;
    std::vector<std::uint32_t> core_rows;
    IntegerMatrix core = elim.core(core_rows);
    if (core_rows.empty())
        return true;
    std::vector<BigInt> b;
    for (auto r : core_rows)
        b.push_back(BigInt(elim.rhs(r)));
    return solve_dense(core, b).has_value();
}

} // namespace abg
