#pragma once

// Exact rational scalars and the small amount of dense linear algebra the
// polyhedral kernel needs. Everything here is exact; doubles only appear in
// to_double() for reporting.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace setvar {

using Rat = mpq_class;
using Vec = std::vector<Rat>;
using Matrix = std::vector<Vec>;  // row-major, rows may be empty for 0 columns

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses `p/q`, `p`, or a finite decimal such as `2.75` or `-1e-3`.
Rat parse_rat(std::string_view text);
/// num/den in canonical form; gmpxx leaves Rat(num, den) unreduced.
Rat ratio(long num, long den);
std::string to_string(const Rat& r);
std::string to_string(const Vec& v, std::string_view sep = " ");
double to_double(const Rat& r);
/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Rat& r, int significant = 12);

Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Rat dot(const Vec& a, const Vec& b);
Rat norm2(const Vec& v);  // squared Euclidean norm
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rat& s);
Vec neg(const Vec& a);
/// a + s*b
Vec axpy(const Vec& a, const Rat& s, const Vec& b);
Vec concat(const Vec& a, const Vec& b);
Vec select(const Vec& v, const std::vector<int>& idx);

/// Positive rescaling to a primitive integer vector (coprime entries).
/// The zero vector is returned unchanged.
Vec primitive(const Vec& v);
/// Like primitive(), but additionally makes the first nonzero entry positive.
Vec primitive_signed(const Vec& v);

struct Rref {
    Matrix rows;              // nonzero rows in reduced row echelon form
    std::vector<int> pivots;  // pivot column of each row
};

Rref rref(Matrix rows, int ncols);
int rank(const Matrix& rows, int ncols);
/// Basis of {z : row . z = 0 for all rows}.
Matrix null_space(const Matrix& rows, int ncols);
/// Subtracts multiples of the RREF rows so every pivot coordinate of v is 0.
Vec reduce_mod(const Vec& v, const Rref& basis);
/// Some solution of A z = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b, int ncols);
/// Matrix-vector product; m has rows of length v.size().
Vec mat_vec(const Matrix& m, const Vec& v);
Matrix transpose(const Matrix& m, int ncols);
Matrix identity(int n);

/// Lexicographic comparison used for canonical ordering.
bool lex_less(const Vec& a, const Vec& b);

}  // namespace setvar
