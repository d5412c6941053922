#include "freesl/polymatrix.hpp"

#include "freesl/error.hpp"

#include <utility>

namespace freesl {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : cols_(cols), nvars_(nvars), rows_(rows)
{
}

PolyMatrix PolyMatrix::scalar(std::size_t n, const Poly& diag)
{
    PolyMatrix m(n, n, diag.nvars());
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, diag);
    return m;
}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars)
{
    return scalar(n, Poly::constant(nvars, 1));
}

PolyMatrix PolyMatrix::block_diag(const std::vector<PolyMatrix>& blocks)
{
    require(!blocks.empty(), ErrorKind::Domain, "block_diag of an empty list");
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        require(b.nvars() == blocks[0].nvars(), ErrorKind::Dimension, "block ring mismatch");
        r += b.rows();
        c += b.cols();
    }
    PolyMatrix m(r, c, blocks[0].nvars());
    r = c = 0;
    for (const auto& b : blocks) {
        m.place(b, r, c);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

Poly PolyMatrix::get(std::size_t r, std::size_t c) const
{
    const Poly* p = find(r, c);
    return p ? *p : Poly(nvars_);
}

const Poly* PolyMatrix::find(std::size_t r, std::size_t c) const
{
    require(r < rows() && c < cols_, ErrorKind::Dimension, "matrix index out of range");
    auto it = rows_[r].find(c);
    return it == rows_[r].end() ? nullptr : &it->second;
}

void PolyMatrix::set(std::size_t r, std::size_t c, Poly value)
{
    require(r < rows() && c < cols_, ErrorKind::Dimension, "matrix index out of range");
    require(value.nvars() == nvars_, ErrorKind::Dimension, "matrix entry ring mismatch");
    if (value.is_zero())
        rows_[r].erase(c);
    else
        rows_[r][c] = std::move(value);
}

void PolyMatrix::add_to(std::size_t r, std::size_t c, const Poly& value)
{
    if (value.is_zero())
        return;
    require(r < rows() && c < cols_, ErrorKind::Dimension, "matrix index out of range");
    auto it = rows_[r].find(c);
    if (it == rows_[r].end()) {
        rows_[r].emplace(c, value);
        return;
    }
    it->second += value;
    if (it->second.is_zero())
        rows_[r].erase(it);
}

void PolyMatrix::place(const PolyMatrix& block, std::size_t row0, std::size_t col0)
{
    require(row0 + block.rows() <= rows() && col0 + block.cols() <= cols_, ErrorKind::Dimension,
            "block does not fit");
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (const auto& [c, v] : block.rows_[r])
            set(row0 + r, col0 + c, v);
}

bool PolyMatrix::is_zero() const
{
    for (const auto& r : rows_)
        if (!r.empty())
            return false;
    return true;
}

std::size_t PolyMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : rows_)
        n += r.size();
    return n;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o)
{
    require(rows() == o.rows() && cols_ == o.cols_ && nvars_ == o.nvars_, ErrorKind::Dimension,
            "matrix shape mismatch in addition");
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& [c, v] : o.rows_[r])
            add_to(r, c, v);
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o)
{
    require(rows() == o.rows() && cols_ == o.cols_ && nvars_ == o.nvars_, ErrorKind::Dimension,
            "matrix shape mismatch in subtraction");
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& [c, v] : o.rows_[r])
            add_to(r, c, -v);
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
{
    require(a.cols_ == b.rows() && a.nvars_ == b.nvars_, ErrorKind::Dimension, "matrix shape mismatch in product");
    PolyMatrix out(a.rows(), b.cols_, a.nvars_);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (const auto& [k, x] : a.rows_[r])
            for (const auto& [c, y] : b.rows_[k])
                out.add_to(r, c, x * y);
    return out;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const
{
    PolyMatrix out(rows(), cols_, nvars_);
    if (c == 0)
        return out;
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& [col, v] : rows_[r])
            out.rows_[r].emplace(col, v * c);
    return out;
}

PolyMatrix PolyMatrix::scaled(const Poly& p) const
{
    PolyMatrix out(rows(), cols_, nvars_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& [c, v] : rows_[r])
            out.set(r, c, v * p);
    return out;
}

PolyMatrix PolyMatrix::shifted(const ShiftVector& z) const
{
    if (z.is_zero())
        return *this;
    PolyMatrix out(rows(), cols_, nvars_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& [c, v] : rows_[r])
            out.rows_[r].emplace(c, shift_apply(z, v));
    return out;
}

PolyMatrix PolyMatrix::transpose() const
{
    PolyMatrix out(cols_, rows(), nvars_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& [c, v] : rows_[r])
            out.rows_[c].emplace(r, v);
    return out;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const
{
    std::map<std::size_t, std::size_t> col_pos;
    for (std::size_t j = 0; j < col_idx.size(); ++j)
        col_pos[col_idx[j]] = j;
    PolyMatrix out(row_idx.size(), col_idx.size(), nvars_);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (const auto& [c, v] : rows_.at(row_idx[i])) {
            auto it = col_pos.find(c);
            if (it != col_pos.end())
                out.rows_[i].emplace(it->second, v);
        }
    return out;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const
{
    return cols_ == o.cols_ && nvars_ == o.nvars_ && rows_ == o.rows_;
}

Poly determinant(const PolyMatrix& a)
{
    require(a.rows() == a.cols(), ErrorKind::Dimension, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    const std::size_t m = a.nvars();
    if (n == 0)
        return Poly::constant(m, 1);
    std::vector<std::vector<Poly>> d(n, std::vector<Poly>(n, Poly(m)));
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& [c, v] : a.row(r))
            d[r][c] = v;
    Poly prev = Poly::constant(m, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (d[k][k].is_zero()) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && d[swap_with][k].is_zero())
                ++swap_with;
            if (swap_with == n)
                return Poly(m);
            std::swap(d[k], d[swap_with]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = d[i][j] * d[k][k] - d[i][k] * d[k][j];
                auto q = exact_divide(num, prev);
                require(q.has_value(), ErrorKind::Internal, "inexact division in fraction-free elimination");
                d[i][j] = std::move(*q);
            }
            d[i][k] = Poly(m);
        }
        prev = d[k][k];
    }
    Poly det = d[n - 1][n - 1];
    return negate ? -det : det;
}

} // namespace freesl
