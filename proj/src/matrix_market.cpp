#include "powquad/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "powquad/errors.hpp"

namespace powquad {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct Header {
  bool symmetric = false;
};

struct CoordinateFile {
  int n = 0;
  // 0-based, symmetric part already mirrored
  std::vector<CsrMatrix::Triplet> entries;
};

// Reads and checks the banner + size line of a coordinate-real file.
// line_no tracks position for error reporting and ends on the size line.
Header parse_banner(std::istream& in, int& line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input", 0);
  line_no = 1;
  std::istringstream hs(line);
  std::string tag, object, format, field, symmetry;
  hs >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket") throw ParseError("missing MatrixMarket banner", line_no);
  if (lower(object) != "matrix") throw ParseError("object must be 'matrix'", line_no);
  if (lower(format) != "coordinate")
    throw UnsupportedField("only coordinate format is supported, got '" + format + "'");
  if (lower(field) != "real")
    throw UnsupportedField("only the real field is supported, got '" + field + "'");
  const std::string sym = lower(symmetry);
  Header h;
  if (sym == "general") {
    h.symmetric = false;
  } else if (sym == "symmetric") {
    h.symmetric = true;
  } else {
    throw UnsupportedField("unsupported symmetry '" + symmetry + "'");
  }
  return h;
}

CoordinateFile read_coordinate(std::istream& in) {
  int line_no = 0;
  const Header header = parse_banner(in, line_no);

  std::string line;
  // Skip comment and blank lines to the size line.
  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols >> nnz)) throw ParseError("malformed size line", line_no);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", line_no);
  if (rows != cols) throw UnsupportedField("matrix must be square");
  if (rows == 0) throw ParseError("matrix dimension must be positive", line_no);
  if (nnz < 0) throw ParseError("negative entry count", line_no);

  CoordinateFile out;
  out.n = static_cast<int>(rows);
  out.entries.reserve(static_cast<size_t>(nnz) * (header.symmetric ? 2 : 1));

  long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    long i = 0, j = 0;
    double v = 0.0;
    if (!(ls >> i >> j >> v)) throw ParseError("malformed entry line", line_no);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("entry index out of range", line_no);
    if (!std::isfinite(v)) throw ParseError("entry value is not finite", line_no);
    ++seen;
    if (seen > nnz) throw ParseError("more entries than the size line declared", line_no);
    const int r = static_cast<int>(i - 1);
    const int c = static_cast<int>(j - 1);
    out.entries.push_back({r, c, v});
    if (header.symmetric && r != c) out.entries.push_back({c, r, v});
  }
  if (seen != nnz) throw ParseError("fewer entries than the size line declared", line_no);
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
  return out;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DenseMatrix read_matrix_market_dense(std::istream& in) {
  const CoordinateFile file = read_coordinate(in);
  DenseMatrix m(file.n);
  for (const CsrMatrix::Triplet& t : file.entries) m(t.row, t.col) += t.value;
  return m;
}

DenseMatrix read_matrix_market_dense(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix_market_dense(in);
}

CsrMatrix read_matrix_market_csr(std::istream& in) {
  CoordinateFile file = read_coordinate(in);
  return CsrMatrix::from_triplets(file.n, std::move(file.entries));
}

CsrMatrix read_matrix_market_csr(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix_market_csr(in);
}

void write_matrix_market_array(std::ostream& out, const DenseMatrix& m) {
  const int n = m.dim();
  out << "%%MatrixMarket matrix array real general\n";
  out << n << " " << n << "\n";
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out << format_value(m(i, j)) << "\n";
}

void write_matrix_market_array(const std::string& path, const DenseMatrix& m) {
  std::ofstream out = open_output(path);
  write_matrix_market_array(out, m);
}

void write_matrix_market_coordinate(std::ostream& out, const CsrMatrix& m) {
  const int n = m.dim();
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << n << " " << n << " " << m.nnz() << "\n";
  for (int i = 0; i < n; ++i)
    for (int k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k)
      out << (i + 1) << " " << (m.col_idx()[k] + 1) << " " << format_value(m.values()[k])
          << "\n";
}

void write_matrix_market_coordinate(const std::string& path, const CsrMatrix& m) {
  std::ofstream out = open_output(path);
  write_matrix_market_coordinate(out, m);
}

Vector read_matrix_market_vector(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input", 0);
  int line_no = 1;
  std::istringstream hs(line);
  std::string tag, object, format, field, symmetry;
  hs >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket") throw ParseError("missing MatrixMarket banner", line_no);
  if (lower(object) != "matrix") throw ParseError("object must be 'matrix'", line_no);
  if (lower(format) != "array") throw UnsupportedField("vector input must use array format");
  if (lower(field) != "real") throw UnsupportedField("only the real field is supported");
  if (lower(symmetry) != "general")
    throw UnsupportedField("vector input must use general symmetry");

  long rows = -1, cols = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols)) throw ParseError("malformed size line", line_no);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", line_no);
  if (rows != 1 && cols != 1) throw UnsupportedField("expected an n-by-1 or 1-by-n array");
  const long count = rows * cols;
  if (count <= 0) throw ParseError("vector length must be positive", line_no);

  Vector v;
  v.reserve(static_cast<size_t>(count));
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    double x;
    while (ls >> x) {
      if (!std::isfinite(x)) throw ParseError("entry value is not finite", line_no);
      v.push_back(x);
      if (static_cast<long>(v.size()) > count)
        throw ParseError("more values than the size line declared", line_no);
    }
  }
  if (static_cast<long>(v.size()) != count)
    throw ParseError("fewer values than the size line declared", line_no);
  return v;
}

Vector read_matrix_market_vector(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix_market_vector(in);
}

void write_matrix_market_vector(std::ostream& out, const Vector& v) {
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " " << 1 << "\n";
  for (double x : v) out << format_value(x) << "\n";
}

void write_matrix_market_vector(const std::string& path, const Vector& v) {
  std::ofstream out = open_output(path);
  write_matrix_market_vector(out, v);
}

}  // namespace powquad
