#include "lcss/snf.hpp"

#include <optional>
#include <utility>

namespace lcss {

namespace {

struct Reducer {
    IntMatrix d;
    IntMatrix u, ui, v, vi;

    explicit Reducer(const IntMatrix& a)
        : d(a),
          u(IntMatrix::identity(a.rows())),
          ui(IntMatrix::identity(a.rows())),
          v(IntMatrix::identity(a.cols())),
          vi(IntMatrix::identity(a.cols()))
    {
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    }

    // row[target] += f * row[source]
    void add_row(std::size_t target, std::size_t source, const Integer& f)
    {
        d.add_row_multiple(target, source, f);
        u.add_row_multiple(target, source, f);
        ui.add_col_multiple(source, target, -f);
    }

    // col[target] += f * col[source]
    void add_col(std::size_t target, std::size_t source, const Integer& f)
    {
        d.add_col_multiple(target, source, f);
        v.add_col_multiple(target, source, f);
        vi.add_row_multiple(source, target, -f);
    }

    void negate_row(std::size_t r)
    {
        d.negate_row(r);
        u.negate_row(r);
        ui.negate_col(r);
    }

    // Smallest nonzero |entry| in the lower-right block starting at (t, t).
    std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_abs;
        for (std::size_t r = t; r < d.rows(); ++r)
            for (std::size_t c = t; c < d.cols(); ++c) {
                const Integer& x = d(r, c);
                if (x == 0)
                    continue;
                Integer ax = abs(x);
                if (!best || ax < best_abs) {
                    best = {r, c};
                    best_abs = ax;
                    if (best_abs == 1)
                        return best;
                }
            }
        return best;
    }

    // Clears row t and column t beyond the pivot; returns false if a smaller
    // remainder appeared and the pivot has to be re-chosen.
    bool clear_pivot_cross(std::size_t t)
    {
        bool clean = true;
        const Integer pivot = d(t, t);
        Integer q;
        for (std::size_t r = t + 1; r < d.rows(); ++r) {
            if (d(r, t) == 0)
                continue;
            mpz_tdiv_q(q.get_mpz_t(), d(r, t).get_mpz_t(), pivot.get_mpz_t());
            add_row(r, t, -q);
            if (d(r, t) != 0)
                clean = false;
        }
        for (std::size_t c = t + 1; c < d.cols(); ++c) {
            if (d(t, c) == 0)
                continue;
            mpz_tdiv_q(q.get_mpz_t(), d(t, c).get_mpz_t(), pivot.get_mpz_t());
            add_col(c, t, -q);
            if (d(t, c) != 0)
                clean = false;
        }
        return clean;
    }

    void move_smallest_in_cross_to_pivot(std::size_t t)
    {
        std::size_t best_r = t, best_c = t;
        Integer best_abs = abs(d(t, t));
        for (std::size_t r = t + 1; r < d.rows(); ++r)
            if (d(r, t) != 0 && (best_abs == 0 || abs(d(r, t)) < best_abs)) {
                best_abs = abs(d(r, t));
                best_r = r;
                best_c = t;
            }
        for (std::size_t c = t + 1; c < d.cols(); ++c)
            if (d(t, c) != 0 && (best_abs == 0 || abs(d(t, c)) < best_abs)) {
                best_abs = abs(d(t, c));
                best_r = t;
                best_c = c;
            }
        swap_rows(t, best_r);
        swap_cols(t, best_c);
    }

    // Index of a row whose lower-right entries are not all divisible by the pivot.
    std::optional<std::size_t> non_divisible_row(std::size_t t) const
    {
        const Integer& pivot = d(t, t);
        for (std::size_t r = t + 1; r < d.rows(); ++r)
            for (std::size_t c = t + 1; c < d.cols(); ++c)
                if (d(r, c) != 0 && mpz_divisible_p(d(r, c).get_mpz_t(), pivot.get_mpz_t()) == 0)
                    return r;
        return std::nullopt;
    }

    void run()
    {
        const std::size_t steps = std::min(d.rows(), d.cols());
        for (std::size_t t = 0; t < steps; ++t) {
            auto pos = min_entry(t);
            if (!pos)
                break;
            swap_rows(t, pos->first);
            swap_cols(t, pos->second);
            for (;;) {
                if (!clear_pivot_cross(t)) {
                    move_smallest_in_cross_to_pivot(t);
                    continue;
                }
                if (auto r = non_divisible_row(t)) {
                    add_row(t, *r, 1);
                    continue;
                }
                break;
            }
            if (d(t, t) < 0)
                negate_row(t);
        }
    }
};

}  // namespace

IntMatrix SnfResult::diagonal_matrix() const
{
    IntMatrix m(left.rows(), right.rows());
    for (std::size_t i = 0; i < diagonal.size(); ++i)
        m(i, i) = diagonal[i];
    return m;
}

SnfResult smith_normal_form(const IntMatrix& a)
{
    Reducer red(a);
    red.run();

    SnfResult result;
    const std::size_t n = std::min(a.rows(), a.cols());
    result.diagonal.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.diagonal.push_back(red.d(i, i));
        if (red.d(i, i) != 0)
            ++result.rank;
    }
    result.left = std::move(red.u);
    result.left_inverse = std::move(red.ui);
    result.right = std::move(red.v);
    result.right_inverse = std::move(red.vi);
    return result;
}

}  // namespace lcss
