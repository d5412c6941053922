#pragma once

#include "freesl/poly.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace freesl {

// Sparse row-major matrix over Q[h_1..h_m]. Zero entries are never stored.
class PolyMatrix {
public:
    using Row = std::map<std::size_t, Poly>;

    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

    static PolyMatrix scalar(std::size_t n, const Poly& diag);
    static PolyMatrix identity(std::size_t n, std::size_t nvars);
    static PolyMatrix block_diag(const std::vector<PolyMatrix>& blocks);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nvars() const { return nvars_; }
    const Row& row(std::size_t r) const { return rows_[r]; }

    Poly get(std::size_t r, std::size_t c) const;
    const Poly* find(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Poly value);
    void add_to(std::size_t r, std::size_t c, const Poly& value);
    // Copy a block into this matrix at the given offset.
    void place(const PolyMatrix& block, std::size_t row0, std::size_t col0);

    bool is_zero() const;
    std::size_t nonzeros() const;

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    PolyMatrix scaled(const Rational& c) const;
    PolyMatrix scaled(const Poly& p) const;
    PolyMatrix operator-() const { return scaled(Rational(-1)); }

    PolyMatrix shifted(const ShiftVector& z) const;
    PolyMatrix transpose() const;
    PolyMatrix submatrix(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;

    bool operator==(const PolyMatrix& o) const;
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

private:
    std::size_t cols_ = 0;
    std::size_t nvars_ = 0;
    std::vector<Row> rows_;
};

// Fraction-free elimination; every division is exact.
Poly determinant(const PolyMatrix& a);

} // namespace freesl
