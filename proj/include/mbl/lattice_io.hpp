#pragma once

#include "mbl/lattice.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mbl {

// Plain-text matrix list:
//
//   n = 2
//   k = 1
//   rows = 2
//   rank = 8
//   <extra key = value lines>
//
//   matrix 0
//   1+0j 0+0j
//   0+0j 1+0j
//   ...
//
// Entries are written as re+imj with 17 significant digits.
struct MatrixFile {
  BlockShape shape;
  std::vector<std::pair<std::string, std::string>> header;  // extra keys, file order
  std::vector<CMatrix> matrices;

  // Value of an extra header key; throws ParseError when missing.
  const std::string& get(const std::string& key) const;
};

std::string format_complex(Complex z);
Complex parse_complex(const std::string& text);

void write_matrix_file(std::ostream& out, const MatrixFile& file);
MatrixFile read_matrix_file(std::istream& in);

void save_lattice(const MatrixLattice& L, const std::string& path);
MatrixLattice load_lattice(const std::string& path);

}  // namespace mbl
