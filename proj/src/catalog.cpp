#include "mbl/catalog.hpp"

#include "mbl/cyclic_algebra.hpp"
#include "mbl/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef MBL_DEFAULT_CATALOG_DIR
#define MBL_DEFAULT_CATALOG_DIR "catalog"
#endif

namespace mbl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

const std::string& require(const CatalogEntry& e, const std::string& key) {
  auto it = e.find(key);
  if (it == e.end()) {
    auto name = e.find("name");
    throw ParseError("catalog entry '" + (name == e.end() ? std::string("?") : name->second) + "' lacks key '" + key +
                     "'");
  }
  return it->second;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer for " + what + ": '" + s + "'");
  }
}

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError("bad boolean for " + what + ": '" + s + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<CatalogEntry> parse_catalog_text(const std::string& text) {
  std::vector<CatalogEntry> out;
  CatalogEntry cur;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) {
      flush();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("catalog line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("catalog line " + std::to_string(lineno) + ": empty key");
    if (!cur.emplace(key, value).second) {
      throw ParseError("catalog line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    }
  }
  flush();
  return out;
}

RationalVector parse_rational_list(const std::string& text) {
  RationalVector out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(parse_rational(tok));
  if (out.empty()) throw ParseError("empty coefficient list");
  return out;
}

FieldRecord parse_field_entry(const CatalogEntry& e) {
  FieldRecord r;
  r.name = require(e, "name");
  r.degree = parse_int(require(e, "degree"), r.name + ".degree");
  for (const auto& q : parse_rational_list(require(e, "min_poly"))) {
    if (!is_integer(q)) throw ParseError(r.name + ": min_poly coefficients must be integers");
    r.min_poly.push_back(q.get_num());
  }
  const auto basis_it = e.find("basis");
  if (basis_it == e.end() || basis_it->second == "power") {
    for (int i = 0; i < r.degree; ++i) {
      RationalVector w(i + 1, Rational(0));
      w[i] = 1;
      r.basis.push_back(w);
    }
  } else {
    for (const auto& part : split(basis_it->second, ';')) r.basis.push_back(parse_rational_list(part));
  }
  if (auto it = e.find("disc"); it != e.end()) {
    Integer d;
    if (d.set_str(it->second, 10) != 0) throw ParseError(r.name + ": bad disc '" + it->second + "'");
    r.disc_expected = d;
  }
  if (auto it = e.find("suboptimal"); it != e.end()) r.suboptimal = parse_bool(it->second, r.name + ".suboptimal");
  return r;
}

AlgebraRecord parse_algebra_entry(const CatalogEntry& e) {
  AlgebraRecord r;
  r.name = require(e, "name");
  r.center = require(e, "center");
  r.n = parse_int(require(e, "n"), r.name + ".n");
  for (const auto& part : split(require(e, "rel_poly"), ';')) r.rel_poly.push_back(parse_rational_list(part));
  for (const auto& part : split(require(e, "sigma_eta"), ';')) r.sigma_eta.push_back(parse_rational_list(part));
  r.gamma = parse_rational_list(require(e, "gamma"));
  r.division = parse_bool(require(e, "division"), r.name + ".division");
  return r;
}

Catalog Catalog::load(const std::string& directory) {
  Catalog c;
  for (const auto& e : parse_catalog_text(read_file(directory + "/fields.txt"))) {
    FieldRecord r = parse_field_entry(e);
    if (!c.fields_.emplace(r.name, r).second) throw ParseError("duplicate field name " + r.name);
  }
  std::ifstream probe(directory + "/algebras.txt");
  if (probe) {
    for (const auto& e : parse_catalog_text(read_file(directory + "/algebras.txt"))) {
      AlgebraRecord r = parse_algebra_entry(e);
      if (!c.fields_.count(r.center)) throw CatalogInconsistent(r.name + ": unknown center field " + r.center);
      if (c.fields_.count(r.name) || !c.algebras_.emplace(r.name, r).second) {
        throw ParseError("duplicate catalog name " + r.name);
      }
    }
  }
  return c;
}

std::string Catalog::default_directory() {
  if (const char* env = std::getenv("MBLATTICE_CATALOG"); env && *env) return env;
  return MBL_DEFAULT_CATALOG_DIR;
}

std::vector<std::string> Catalog::field_names() const {
  std::vector<std::string> out;
  for (const auto& [name, rec] : fields_) out.push_back(name);
  return out;
}

std::vector<std::string> Catalog::algebra_names() const {
  std::vector<std::string> out;
  for (const auto& [name, rec] : algebras_) out.push_back(name);
  return out;
}

const FieldRecord& Catalog::field_record(const std::string& name) const {
  auto it = fields_.find(name);
  if (it == fields_.end()) throw CatalogInconsistent("no field named '" + name + "' in catalog");
  return it->second;
}

const AlgebraRecord& Catalog::algebra_record(const std::string& name) const {
  auto it = algebras_.find(name);
  if (it == algebras_.end()) throw CatalogInconsistent("no algebra named '" + name + "' in catalog");
  return it->second;
}

std::shared_ptr<const NumberField> Catalog::field(const std::string& name) const {
  if (auto it = field_cache_.find(name); it != field_cache_.end()) return it->second;
  auto K = NumberField::create(field_record(name));
  field_cache_.emplace(name, K);
  return K;
}

std::shared_ptr<const CyclicAlgebra> Catalog::algebra(const std::string& name) const {
  if (auto it = algebra_cache_.find(name); it != algebra_cache_.end()) return it->second;
  const AlgebraRecord& rec = algebra_record(name);
  auto A = CyclicAlgebra::create(rec, field(rec.center));
  algebra_cache_.emplace(name, A);
  return A;
}

}  // namespace mbl
