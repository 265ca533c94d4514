#include "conelab/linalg.hpp"

#include <algorithm>

namespace conelab {

Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("add: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("sub: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Rat& c, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Vec neg(const Vec& v) { return scale(Rat(-1), v); }

Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Rat norm_sq(const Vec& v) { return dot(v, v); }

Rat norm1(const Vec& v) {
    Rat s = 0;
    for (const Rat& x : v) s += abs(x);
    return s;
}

Rat norm_inf(const Vec& v) {
    Rat m = 0;
    for (const Rat& x : v) m = std::max(m, Rat(abs(x)));
    return m;
}

Vec primitive(const Vec& v, bool positive_leading) {
    if (is_zero(v)) return v;
    Int num_gcd = 0, den_lcm = 1;
    for (const Rat& x : v) {
        num_gcd = gcd(num_gcd, numerator(x));
        den_lcm = lcm(den_lcm, denominator(x));
    }
    Rat factor(den_lcm, num_gcd == 0 ? Int(1) : num_gcd);
    Vec r = scale(factor, v);
    if (positive_leading) {
        for (const Rat& x : r) {
            if (x != 0) {
                if (x < 0) r = neg(r);
                break;
            }
        }
    }
    return r;
}

bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

std::size_t row_reduce(Mat& m, std::vector<std::size_t>* pivots) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Rat inv = Rat(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

std::size_t rank(Mat m) { return row_reduce(m); }

std::vector<Vec> kernel_basis(const Mat& rows, std::size_t n) {
    Mat m = rows;
    for (Vec& row : m) {
        if (row.size() != n) throw InputError("kernel_basis: ragged matrix");
    }
    std::vector<std::size_t> pivots;
    row_reduce(m, &pivots);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v = zero_vec(n);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            // row i reads x[pivots[i]] + sum over free cols = 0
            v[pivots[i]] = i < m.size() ? -m[i][f] : Rat(0);
        }
        basis.push_back(primitive(v));
    }
    return basis;
}

} // namespace conelab
