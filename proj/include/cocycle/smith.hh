#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cocycle
{
    class IntMatrix
    {
    public:
        IntMatrix() = default;
        IntMatrix(std::size_t rows, std::size_t cols) : _rows(rows), _cols(cols), _data(rows * cols, 0) {}

        static auto identity(std::size_t n) -> IntMatrix;

        auto rows() const -> std::size_t { return _rows; }
        auto cols() const -> std::size_t { return _cols; }
        auto operator()(std::size_t r, std::size_t c) -> std::int64_t & { return _data[r * _cols + c]; }
        auto operator()(std::size_t r, std::size_t c) const -> std::int64_t { return _data[r * _cols + c]; }

        auto is_zero() const -> bool;

        friend auto operator==(const IntMatrix &, const IntMatrix &) -> bool = default;

    private:
        std::size_t _rows = 0, _cols = 0;
        std::vector<std::int64_t> _data;
    };

    // Overflow-checked; throws SizeError.
    auto checked_add(std::int64_t a, std::int64_t b) -> std::int64_t;
    auto checked_mul(std::int64_t a, std::int64_t b) -> std::int64_t;

    auto multiply(const IntMatrix & a, const IntMatrix & b) -> IntMatrix;
    auto multiply(const IntMatrix & a, const std::vector<std::int64_t> & x) -> std::vector<std::int64_t>;

    // P * A * Q = D with P, Q unimodular and D diagonal, diagonal[k] dividing
    // diagonal[k+1], all positive. rank = diagonal.size().
    struct SmithForm
    {
        std::vector<std::int64_t> diagonal;
        IntMatrix p, q;

        auto rank() const -> std::size_t { return diagonal.size(); }
    };

    auto smith_normal_form(const IntMatrix & a) -> SmithForm;
}
