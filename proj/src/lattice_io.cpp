#include "mbl/lattice_io.hpp"

#include "mbl/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mbl {

namespace {

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("bad number '" + s + "'");
  return v;
}

int parse_positive(const std::string& s, const std::string& key) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 1) throw ParseError("bad value for " + key + ": '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

const std::string& MatrixFile::get(const std::string& key) const {
  for (const auto& [k, v] : header) {
    if (k == key) return v;
  }
  throw ParseError("matrix file lacks header key '" + key + "'");
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

Complex parse_complex(const std::string& text) {
  if (text.size() < 2 || text.back() != 'j') throw ParseError("complex entry must end in 'j': '" + text + "'");
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not the leading one and not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) throw ParseError("complex entry needs re+imj form: '" + text + "'");
  return {parse_double(body.substr(0, split)), parse_double(body.substr(split))};
}

void write_matrix_file(std::ostream& out, const MatrixFile& f) {
  out << "n = " << f.shape.n << "\n";
  out << "k = " << f.shape.k << "\n";
  out << "rows = " << f.shape.rows << "\n";
  out << "rank = " << f.matrices.size() << "\n";
  for (const auto& [k, v] : f.header) out << k << " = " << v << "\n";
  for (std::size_t m = 0; m < f.matrices.size(); ++m) {
    out << "\nmatrix " << m << "\n";
    const CMatrix& X = f.matrices[m];
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
      for (Eigen::Index c = 0; c < X.cols(); ++c) out << (c ? " " : "") << format_complex(X(r, c));
      out << "\n";
    }
  }
}

MatrixFile read_matrix_file(std::istream& in) {
  MatrixFile f;
  int rank = -1;
  bool have_n = false, have_k = false, have_rows = false;
  std::string line;
  int lineno = 0;
  // header
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') {
      if (have_n && have_k && have_rows && rank >= 0 && line.empty()) break;
      continue;
    }
    if (line.rfind("matrix", 0) == 0) throw ParseError("matrix stanza before complete header");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "n") {
      f.shape.n = parse_positive(val, key);
      have_n = true;
    } else if (key == "k") {
      f.shape.k = parse_positive(val, key);
      have_k = true;
    } else if (key == "rows") {
      f.shape.rows = parse_positive(val, key);
      have_rows = true;
    } else if (key == "rank") {
      rank = parse_positive(val, key);
    } else {
      f.header.emplace_back(key, val);
    }
  }
  if (!(have_n && have_k && have_rows && rank >= 0)) throw ParseError("matrix file header incomplete");
  for (int m = 0; m < rank; ++m) {
    // skip blank lines up to the stanza marker
    do {
      if (!std::getline(in, line)) throw ParseError("matrix file ends before matrix " + std::to_string(m));
      ++lineno;
      line = trim(line);
    } while (line.empty());
    if (line != "matrix " + std::to_string(m)) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'matrix " + std::to_string(m) + "'");
    }
    CMatrix X(f.shape.rows, f.shape.cols());
    for (int r = 0; r < f.shape.rows; ++r) {
      if (!std::getline(in, line)) throw ParseError("matrix " + std::to_string(m) + " truncated");
      ++lineno;
      std::istringstream row(line);
      std::string tok;
      int c = 0;
      while (row >> tok) {
        if (c >= f.shape.cols()) throw ParseError("line " + std::to_string(lineno) + ": too many entries");
        X(r, c++) = parse_complex(tok);
      }
      if (c != f.shape.cols()) throw ParseError("line " + std::to_string(lineno) + ": too few entries");
    }
    f.matrices.push_back(std::move(X));
  }
  return f;
}

void save_lattice(const MatrixLattice& L, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  MatrixFile f{L.shape(), {}, L.basis()};
  write_matrix_file(out, f);
}

MatrixLattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  MatrixFile f = read_matrix_file(in);
  return MatrixLattice(f.shape, std::move(f.matrices));
}

}  // namespace mbl
