#pragma once

#include "mbl/numfield.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mbl {

class CyclicAlgebra;

// One blank-line separated stanza of `key = value` lines.
using CatalogEntry = std::map<std::string, std::string>;

// Splits catalog text into stanzas. `#` starts a comment; blank lines end a
// stanza. Throws ParseError on a line without '=' or a repeated key.
std::vector<CatalogEntry> parse_catalog_text(const std::string& text);

// Field stanza -> FieldRecord (no validation beyond syntax).
FieldRecord parse_field_entry(const CatalogEntry& entry);

// Parses "c0 c1 ... cm" as an ascending rational polynomial.
RationalVector parse_rational_list(const std::string& text);

// Best known root discriminants of totally complex fields of degree 2k,
// k = 1..5.
inline constexpr std::array<double, 5> kRootDiscriminantTargets = {1.732, 3.289, 4.622, 5.787, 6.793};

struct AlgebraRecord {
  std::string name;
  std::string center;
  int n = 1;
  std::vector<RationalVector> rel_poly;   // n+1 K-elements, ascending, monic
  std::vector<RationalVector> sigma_eta;  // n K-elements: sigma(eta) in 1, eta, ..., eta^{n-1}
  RationalVector gamma;                   // K-coordinates
  bool division = false;
};

AlgebraRecord parse_algebra_entry(const CatalogEntry& entry);

/// Fields and algebras read from `fields.txt` and `algebras.txt` in one
/// directory. Objects are built on first request and cached.
class Catalog {
 public:
  // Reads the directory; the files are parsed eagerly, fields/algebras are
  // validated lazily. Missing algebras.txt is allowed.
  static Catalog load(const std::string& directory);
  // $MBLATTICE_CATALOG if set, else the build-time default.
  static std::string default_directory();

  std::vector<std::string> field_names() const;
  std::vector<std::string> algebra_names() const;
  bool has_field(const std::string& name) const { return fields_.count(name) != 0; }
  bool has_algebra(const std::string& name) const { return algebras_.count(name) != 0; }

  // Throws CatalogInconsistent for unknown names.
  std::shared_ptr<const NumberField> field(const std::string& name) const;
  std::shared_ptr<const CyclicAlgebra> algebra(const std::string& name) const;
  const FieldRecord& field_record(const std::string& name) const;
  const AlgebraRecord& algebra_record(const std::string& name) const;

 private:
  std::map<std::string, FieldRecord> fields_;
  std::map<std::string, AlgebraRecord> algebras_;
  mutable std::map<std::string, std::shared_ptr<const NumberField>> field_cache_;
  mutable std::map<std::string, std::shared_ptr<const CyclicAlgebra>> algebra_cache_;
};

}  // namespace mbl
