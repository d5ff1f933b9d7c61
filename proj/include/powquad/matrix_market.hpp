#ifndef POWQUAD_MATRIX_MARKET_HPP
#define POWQUAD_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>

#include "powquad/matrix.hpp"

namespace powquad {

// Matrix Market exchange format, restricted to what the solvers accept:
// square real matrices. Readers take `coordinate real` with `general` or
// `symmetric` symmetry (1-based indices, duplicates summed, symmetric files
// mirror their off-diagonal entries); everything else raises
// UnsupportedField. Structural problems raise ParseError with the offending
// line number.

/// Reads a coordinate-real file into dense storage.
DenseMatrix read_matrix_market_dense(std::istream& in);
DenseMatrix read_matrix_market_dense(const std::string& path);

/// Reads a coordinate-real file into compressed sparse rows.
CsrMatrix read_matrix_market_csr(std::istream& in);
CsrMatrix read_matrix_market_csr(const std::string& path);

/// Writes dense output in `array real general` layout (column-major values,
/// one per line, %.17g so a round-trip preserves every bit).
void write_matrix_market_array(std::ostream& out, const DenseMatrix& m);
void write_matrix_market_array(const std::string& path, const DenseMatrix& m);

/// Writes `coordinate real general` with every stored entry, 1-based.
void write_matrix_market_coordinate(std::ostream& out, const CsrMatrix& m);
void write_matrix_market_coordinate(const std::string& path, const CsrMatrix& m);

/// Reads an `array real general` n-by-1 or 1-by-n file as a vector.
Vector read_matrix_market_vector(std::istream& in);
Vector read_matrix_market_vector(const std::string& path);

/// Writes a vector as `array real general`, n rows by 1 column.
void write_matrix_market_vector(std::ostream& out, const Vector& v);
void write_matrix_market_vector(const std::string& path, const Vector& v);

}  // namespace powquad

#endif  // POWQUAD_MATRIX_MARKET_HPP
