#pragma once

#include "conelab/rational.hpp"

#include <cstddef>
#include <vector>

namespace conelab {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

Rat dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rat& c, const Vec& v);
Vec neg(const Vec& v);
Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);

Rat norm_sq(const Vec& v);
Rat norm1(const Vec& v);
Rat norm_inf(const Vec& v);

/// Scales v so its entries are coprime integers and the first nonzero
/// entry is positive when positive=true (direction canonical form).
Vec primitive(const Vec& v, bool positive_leading = true);

/// Strict lexicographic order on vectors of equal length.
bool lex_less(const Vec& a, const Vec& b);

/// Row-reduces m in place (fraction-free not needed; exact rationals).
/// Returns the rank; pivot columns appended to pivots when nonnull.
std::size_t row_reduce(Mat& m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(Mat m);

/// Basis of {x : rows * x = 0}.
std::vector<Vec> kernel_basis(const Mat& rows, std::size_t n);

} // namespace conelab
