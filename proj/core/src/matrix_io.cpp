#include "speig/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace speig {

namespace {

enum class MmLayout { Array, Coordinate };
enum class MmSymmetry { General, Symmetric, SkewSymmetric };

[[noreturn]] void parse_fail(const std::filesystem::path& path, long line,
                             const std::string& message) {
  std::ostringstream msg;
  msg << path.string() << ":" << line << ": " << message;
  throw ParseError(msg.str());
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

double parse_double(const std::string& token, const std::filesystem::path& path,
                    long line) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    parse_fail(path, line, "invalid number '" + token + "'");
  }
  if (!std::isfinite(value)) {
    parse_fail(path, line, "non-finite value '" + token + "'");
  }
  return value;
}

long parse_index(const std::string& token, const std::filesystem::path& path,
                 long line) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  long value = 0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || value < 0) {
    parse_fail(path, line, "invalid index '" + token + "'");
  }
  return value;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

Matrix load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string() + ":0: cannot open file");
  }
  std::string line;
  long lineno = 0;

  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  ++lineno;
  {
    auto tokens = tokenize(lower(line));
    if (tokens.size() < 4 || tokens[0] != "%%matrixmarket" ||
        tokens[1] != "matrix") {
      parse_fail(path, lineno, "expected '%%MatrixMarket matrix ...' header");
    }
    if (tokens.size() < 5) {
      parse_fail(path, lineno, "header must name layout, field and symmetry");
    }
  }
  const auto header = tokenize(lower(line));

  MmLayout layout;
  if (header[2] == "array") {
    layout = MmLayout::Array;
  } else if (header[2] == "coordinate") {
    layout = MmLayout::Coordinate;
  } else {
    parse_fail(path, lineno, "unsupported layout '" + header[2] + "'");
  }
  if (header[3] != "real" && header[3] != "integer") {
    parse_fail(path, lineno, "unsupported field '" + header[3] + "'");
  }
  MmSymmetry symmetry;
  if (header[4] == "general") {
    symmetry = MmSymmetry::General;
  } else if (header[4] == "symmetric") {
    symmetry = MmSymmetry::Symmetric;
  } else if (header[4] == "skew-symmetric") {
    symmetry = MmSymmetry::SkewSymmetric;
  } else {
    parse_fail(path, lineno, "unsupported symmetry '" + header[4] + "'");
  }

  // Size line (after comments).
  long rows = 0, cols = 0, nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) parse_fail(path, lineno + 1, "missing size line");
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::size_t expect = layout == MmLayout::Coordinate ? 3u : 2u;
    if (tokens.size() != expect) {
      parse_fail(path, lineno, "malformed size line");
    }
    rows = parse_index(tokens[0], path, lineno);
    cols = parse_index(tokens[1], path, lineno);
    if (layout == MmLayout::Coordinate) nnz = parse_index(tokens[2], path, lineno);
    break;
  }
  if (rows < 1 || cols < 1) parse_fail(path, lineno, "matrix must be nonempty");
  if (symmetry != MmSymmetry::General && rows != cols) {
    parse_fail(path, lineno, "symmetric declarations require a square matrix");
  }

  Matrix m = Matrix::Zero(rows, cols);

  if (layout == MmLayout::Array) {
    // Column-major values: full matrix (general), lower triangle including
    // the diagonal (symmetric), strictly lower triangle (skew-symmetric).
    std::vector<std::pair<long, long>> slots;
    if (symmetry == MmSymmetry::General) {
      for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i) slots.emplace_back(i, j);
    } else if (symmetry == MmSymmetry::Symmetric) {
      for (long j = 0; j < cols; ++j)
        for (long i = j; i < rows; ++i) slots.emplace_back(i, j);
    } else {
      for (long j = 0; j < cols; ++j)
        for (long i = j + 1; i < rows; ++i) slots.emplace_back(i, j);
    }
    std::size_t filled = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      for (const auto& token : tokenize(line)) {
        if (filled >= slots.size()) {
          parse_fail(path, lineno, "more values than the size line declares");
        }
        const auto [i, j] = slots[filled++];
        const double v = parse_double(token, path, lineno);
        m(i, j) = v;
        if (symmetry == MmSymmetry::Symmetric) m(j, i) = v;
        if (symmetry == MmSymmetry::SkewSymmetric) m(j, i) = -v;
      }
    }
    if (filled != slots.size()) {
      parse_fail(path, lineno, "fewer values than the size line declares");
    }
    return m;
  }

  // Coordinate layout.
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(rows * cols), 0);
  auto at = [rows](long i, long j) {
    return static_cast<std::size_t>(j * rows + i);
  };
  long read = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) parse_fail(path, lineno, "expected 'i j value'");
    const long i = parse_index(tokens[0], path, lineno) - 1;
    const long j = parse_index(tokens[1], path, lineno) - 1;
    if (i < 0 || i >= rows || j < 0 || j >= cols) {
      parse_fail(path, lineno, "index out of range");
    }
    const double v = parse_double(tokens[2], path, lineno);
    if (seen[at(i, j)]) parse_fail(path, lineno, "duplicate entry");
    seen[at(i, j)] = 1;
    m(i, j) = v;
    ++read;
  }
  if (read != nnz) {
    parse_fail(path, lineno,
               "entry count does not match the size line (" +
                   std::to_string(read) + " vs " + std::to_string(nnz) + ")");
  }

  if (symmetry != MmSymmetry::General) {
    const double sign = symmetry == MmSymmetry::Symmetric ? 1.0 : -1.0;
    for (long j = 0; j < cols; ++j) {
      for (long i = 0; i < rows; ++i) {
        if (!seen[at(i, j)]) continue;
        if (symmetry == MmSymmetry::SkewSymmetric && i == j &&
            m(i, j) != 0.0) {
          throw StructureViolation(
              path.string() +
              ": declared skew-symmetric but has a nonzero diagonal entry");
        }
        if (i == j) continue;
        if (seen[at(j, i)]) {
          if (m(j, i) != sign * m(i, j)) {
            std::ostringstream msg;
            msg << path.string() << ": declared "
                << (sign > 0 ? "symmetric" : "skew-symmetric")
                << " but entries (" << i + 1 << "," << j + 1 << ") and ("
                << j + 1 << "," << i + 1 << ") disagree";
            throw StructureViolation(msg.str());
          }
        } else {
          m(j, i) = sign * m(i, j);
        }
      }
    }
  }
  return m;
}

Matrix load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string() + ":0: cannot open file");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      std::string field = line.substr(start, comma - start);
      // Trim surrounding blanks.
      const auto l = field.find_first_not_of(" \t");
      const auto r = field.find_last_not_of(" \t");
      if (l == std::string::npos) {
        parse_fail(path, lineno, "empty field");
      }
      field = field.substr(l, r - l + 1);
      row.push_back(parse_double(field, path, lineno));
      start = comma + 1;
      if (comma == line.size()) break;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_fail(path, lineno, "ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(path.string() + ":0: no data rows");
  }
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

MatrixFileFormat resolve(const std::filesystem::path& path,
                         MatrixFileFormat format) {
  if (format != MatrixFileFormat::Auto) return format;
  const std::string ext = lower(path.extension().string());
  if (ext == ".mtx" || ext == ".mm") return MatrixFileFormat::MatrixMarket;
  return MatrixFileFormat::Csv;
}

}  // namespace

std::string format_full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Matrix load_matrix(const std::filesystem::path& path, MatrixFileFormat format) {
  switch (resolve(path, format)) {
    case MatrixFileFormat::MatrixMarket:
      return load_matrix_market(path);
    default:
      return load_csv(path);
  }
}

SpdMatrix load_spd(const std::filesystem::path& path, MatrixFileFormat format) {
  return SpdMatrix(load_matrix(path, format));
}

HamiltonianMatrix load_hamiltonian(const std::filesystem::path& path,
                                   MatrixFileFormat format) {
  return HamiltonianMatrix(load_matrix(path, format));
}

Vector load_vector(const std::filesystem::path& path, MatrixFileFormat format) {
  const Matrix m = load_matrix(path, format);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw ParseError(path.string() + ": expected a single row or column");
}

void save_matrix(const std::filesystem::path& path, const Matrix& m,
                 MatrixFileFormat format, bool coordinate) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_matrix: cannot open " + path.string());
  }
  if (resolve(path, format) == MatrixFileFormat::MatrixMarket) {
    if (coordinate) {
      long nnz = 0;
      for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
          if (m(i, j) != 0.0) ++nnz;
      out << "%%MatrixMarket matrix coordinate real general\n";
      out << m.rows() << " " << m.cols() << " " << nnz << "\n";
      for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
          if (m(i, j) != 0.0) {
            out << i + 1 << " " << j + 1 << " " << format_full(m(i, j))
                << "\n";
          }
        }
      }
    } else {
      out << "%%MatrixMarket matrix array real general\n";
      out << m.rows() << " " << m.cols() << "\n";
      for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
          out << format_full(m(i, j)) << "\n";
        }
      }
    }
  } else {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        if (j) out << ",";
        out << format_full(m(i, j));
      }
      out << "\n";
    }
  }
  if (!out) {
    throw std::runtime_error("save_matrix: write failed for " + path.string());
  }
}

void save_vector(const std::filesystem::path& path, const Vector& v,
                 MatrixFileFormat format) {
  save_matrix(path, v, format);
}

}  // namespace speig
