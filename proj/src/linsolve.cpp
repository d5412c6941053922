#include "freesl/linsolve.hpp"

#include "freesl/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace freesl {

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y)
{
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, a * y[j].second);
            ++j;
        } else {
            Rational v = x[i].second + a * y[j].second;
            if (v != 0)
                out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x)
{
    while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
    return x;
}

// Echelon form with pivots at each row's smallest column, then full back substitution.
void nullspace_block(const std::vector<std::size_t>& unknowns, const std::vector<const SparseVec*>& rows,
                     std::vector<SparseVec>& out)
{
    std::map<std::size_t, SparseVec> pivots;
    for (const SparseVec* src : rows) {
        SparseVec row = *src;
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end())
                break;
            row = sparse_axpy(row, -row.front().second, it->second);
        }
        if (row.empty())
            continue;
        const Rational inv = Rational(1) / row.front().second;
        for (auto& e : row)
            e.second *= inv;
        pivots.emplace(row.front().first, std::move(row));
    }
    // Clear every non-pivot-free column from each pivot row, largest pivot first.
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        SparseVec& row = it->second;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t t = 1; t < row.size(); ++t) {
                auto p = pivots.find(row[t].first);
                if (p != pivots.end()) {
                    row = sparse_axpy(row, -row[t].second, p->second);
                    changed = true;
                    break;
                }
            }
        }
    }
    for (std::size_t f : unknowns) {
        if (pivots.count(f))
            continue;
        SparseVec v;
        v.emplace_back(f, Rational(1));
        for (const auto& [pc, row] : pivots)
            for (std::size_t t = 1; t < row.size(); ++t)
                if (row[t].first == f)
                    v.emplace_back(pc, -row[t].second);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.push_back(std::move(v));
    }
}

} // namespace

std::vector<SparseVec> sparse_nullspace(std::size_t n, const std::vector<SparseVec>& rows)
{
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& row : rows)
        for (std::size_t t = 1; t < row.size(); ++t) {
            require(row[t].first < n, ErrorKind::Dimension, "equation references an unknown out of range");
            std::size_t a = find_root(parent, row[0].first), b = find_root(parent, row[t].first);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<std::size_t, std::vector<std::size_t>> members;
    std::map<std::size_t, std::vector<const SparseVec*>> block_rows;
    for (std::size_t u = 0; u < n; ++u)
        members[find_root(parent, u)].push_back(u);
    for (const auto& row : rows)
        if (!row.empty())
            block_rows[find_root(parent, row[0].first)].push_back(&row);

    std::vector<SparseVec> out;
    for (const auto& [root, unknowns] : members)
        nullspace_block(unknowns, block_rows[root], out);
    std::sort(out.begin(), out.end(), [](const SparseVec& a, const SparseVec& b) {
        // The free column is the unique entry equal to 1 that no other basis vector touches;
        // ordering by smallest index keeps output deterministic.
        return a.front().first < b.front().first;
    });
    return out;
}

std::size_t dense_rank(std::vector<std::vector<Rational>> a)
{
    std::size_t rank = 0;
    if (a.empty())
        return 0;
    const std::size_t cols = a[0].size();
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][c] == 0)
                continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t t = c; t < cols; ++t)
                a[r][t] -= f * a[rank][t];
        }
        ++rank;
    }
    return rank;
}

} // namespace freesl
