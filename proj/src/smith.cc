#include <cocycle/error.hh>
#include <cocycle/smith.hh>

#include <algorithm>
#include <cstdlib>
#include <utility>

using std::int64_t;
using std::size_t;
using std::vector;

namespace cocycle
{
    auto IntMatrix::identity(size_t n) -> IntMatrix
    {
        IntMatrix m(n, n);
        for (size_t k = 0; k < n; ++k)
            m(k, k) = 1;
        return m;
    }

    auto IntMatrix::is_zero() const -> bool
    {
        return std::all_of(_data.begin(), _data.end(), [](int64_t x) { return x == 0; });
    }

    auto checked_add(int64_t a, int64_t b) -> int64_t
    {
        int64_t r;
        if (__builtin_add_overflow(a, b, &r))
            throw SizeError("integer overflow in exact arithmetic");
        return r;
    }

    auto checked_mul(int64_t a, int64_t b) -> int64_t
    {
        int64_t r;
        if (__builtin_mul_overflow(a, b, &r))
            throw SizeError("integer overflow in exact arithmetic");
        return r;
    }

    auto multiply(const IntMatrix & a, const IntMatrix & b) -> IntMatrix
    {
        if (a.cols() != b.rows())
            throw std::logic_error("matrix shape mismatch");
        IntMatrix r(a.rows(), b.cols());
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t k = 0; k < a.cols(); ++k)
                if (a(i, k) != 0)
                    for (size_t j = 0; j < b.cols(); ++j)
                        r(i, j) = checked_add(r(i, j), checked_mul(a(i, k), b(k, j)));
        return r;
    }

    auto multiply(const IntMatrix & a, const vector<int64_t> & x) -> vector<int64_t>
    {
        if (a.cols() != x.size())
            throw std::logic_error("matrix shape mismatch");
        vector<int64_t> r(a.rows(), 0);
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t k = 0; k < a.cols(); ++k)
                r[i] = checked_add(r[i], checked_mul(a(i, k), x[k]));
        return r;
    }

    namespace
    {
        struct Reducer
        {
            IntMatrix d, p, q;

            auto swap_rows(size_t a, size_t b) -> void
            {
                if (a == b)
                    return;
                for (size_t j = 0; j < d.cols(); ++j)
                    std::swap(d(a, j), d(b, j));
                for (size_t j = 0; j < p.cols(); ++j)
                    std::swap(p(a, j), p(b, j));
            }

            auto swap_cols(size_t a, size_t b) -> void
            {
                if (a == b)
                    return;
                for (size_t i = 0; i < d.rows(); ++i)
                    std::swap(d(i, a), d(i, b));
                for (size_t i = 0; i < q.rows(); ++i)
                    std::swap(q(i, a), q(i, b));
            }

            // row target += factor * row source
            auto add_row(size_t target, size_t source, int64_t factor) -> void
            {
                for (size_t j = 0; j < d.cols(); ++j)
                    d(target, j) = checked_add(d(target, j), checked_mul(factor, d(source, j)));
                for (size_t j = 0; j < p.cols(); ++j)
                    p(target, j) = checked_add(p(target, j), checked_mul(factor, p(source, j)));
            }

            auto add_col(size_t target, size_t source, int64_t factor) -> void
            {
                for (size_t i = 0; i < d.rows(); ++i)
                    d(i, target) = checked_add(d(i, target), checked_mul(factor, d(i, source)));
                for (size_t i = 0; i < q.rows(); ++i)
                    q(i, target) = checked_add(q(i, target), checked_mul(factor, q(i, source)));
            }

            auto negate_row(size_t r) -> void
            {
                for (size_t j = 0; j < d.cols(); ++j)
                    d(r, j) = -d(r, j);
                for (size_t j = 0; j < p.cols(); ++j)
                    p(r, j) = -p(r, j);
            }
        };
    }

    auto smith_normal_form(const IntMatrix & a) -> SmithForm
    {
        Reducer r{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
        auto & d = r.d;
        SmithForm result;

        for (size_t t = 0; t < std::min(a.rows(), a.cols()); ++t) {
            while (true) {
                size_t bi = 0, bj = 0;
                int64_t best = 0;
                for (size_t i = t; i < d.rows(); ++i)
                    for (size_t j = t; j < d.cols(); ++j)
                        if (d(i, j) != 0 && (best == 0 || std::llabs(d(i, j)) < best)) {
                            best = std::llabs(d(i, j));
                            bi = i;
                            bj = j;
                        }
                if (best == 0) {
                    result.p = std::move(r.p);
                    result.q = std::move(r.q);
                    return result;
                }
                r.swap_rows(t, bi);
                r.swap_cols(t, bj);

                bool clean = true;
                for (size_t i = t + 1; i < d.rows(); ++i)
                    if (d(i, t) != 0) {
                        r.add_row(i, t, -(d(i, t) / d(t, t)));
                        clean = clean && d(i, t) == 0;
                    }
                for (size_t j = t + 1; j < d.cols(); ++j)
                    if (d(t, j) != 0) {
                        r.add_col(j, t, -(d(t, j) / d(t, t)));
                        clean = clean && d(t, j) == 0;
                    }
                if (! clean)
                    continue;

                bool divides = true;
                for (size_t i = t + 1; i < d.rows() && divides; ++i)
                    for (size_t j = t + 1; j < d.cols(); ++j)
                        if (d(i, j) % d(t, t) != 0) {
                            r.add_row(t, i, 1);
                            divides = false;
                            break;
                        }
                if (divides)
                    break;
            }
            if (d(t, t) < 0)
                r.negate_row(t);
            result.diagonal.push_back(d(t, t));
        }
        result.p = std::move(r.p);
        result.q = std::move(r.q);
        return result;
    }
}
