#include "mbl/cli.hpp"

#include "mbl/catalog.hpp"
#include "mbl/codebook.hpp"
#include "mbl/cyclic_algebra.hpp"
#include "mbl/errors.hpp"
#include "mbl/lattice_io.hpp"
#include "mbl/ratecalc.hpp"
#include "mbl/simulate.hpp"
#include "mbl/special.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

namespace mbl {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + s + "' in grid '" + text + "'");
    }
    if (used != s.size()) throw ParseError("bad number '" + s + "' in grid '" + text + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ParseError("range grid must be start:stop:step");
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0) || b < a) throw ParseError("range grid needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(a + i * step);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw ParseError("empty grid");
  return out;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_int(const Integer& z) { return z.get_str(); }

/// CSV with a `# key=value` header echoing the run configuration.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void config(const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) out_ << "# " << k << '=' << v << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

struct Common {
  std::string catalog;
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--catalog", c.catalog, "Catalog directory (default: $MBLATTICE_CATALOG or built-in)");
  sub->add_option("-o,--output", c.output, "Write CSV here instead of stdout");
}

Catalog open_catalog(const Common& c) {
  return Catalog::load(c.catalog.empty() ? Catalog::default_directory() : c.catalog);
}

struct LatticeChoice {
  std::string field;
  std::string algebra;
  std::string file;
};

void add_lattice_choice(CLI::App* sub, LatticeChoice& c) {
  auto* f = sub->add_option("--field", c.field, "Catalog field (SISO lattice of its ring of integers)");
  auto* a = sub->add_option("--algebra", c.algebra, "Catalog algebra (natural order lattice)");
  auto* l = sub->add_option("--lattice-file", c.file, "Lattice basis file");
  f->excludes(a)->excludes(l);
  a->excludes(l);
}

struct NamedLattice {
  std::string name;
  std::shared_ptr<const MatrixLattice> lattice;
};

NamedLattice resolve_lattice(const LatticeChoice& c, const Common& common) {
  if (!c.file.empty()) return {c.file, std::make_shared<MatrixLattice>(load_lattice(c.file))};
  if (c.field.empty() && c.algebra.empty()) throw DomainError("one of --field, --algebra, --lattice-file is required");
  const Catalog cat = open_catalog(common);
  if (!c.field.empty()) {
    return {c.field, std::make_shared<MatrixLattice>(CyclicAlgebra::trivial(cat.field(c.field))->order_lattice())};
  }
  return {c.algebra, std::make_shared<MatrixLattice>(cat.algebra(c.algebra)->order_lattice())};
}

CMatrix parse_fixed_h(const std::string& text, int nr, int n) {
  std::string t = text;
  for (char& ch : t) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream in(t);
  std::vector<Complex> vals;
  for (std::string tok; in >> tok;) vals.push_back(parse_complex(tok.back() == 'j' ? tok : tok + "+0j"));
  if (static_cast<int>(vals.size()) != nr * n) {
    throw ShapeMismatch("--channel needs nr*n = " + std::to_string(nr * n) + " entries (row-major)");
  }
  CMatrix H(nr, n);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < n; ++c) H(r, c) = vals[r * n + c];
  }
  return H;
}

double parse_c_l(const std::string& s, int n) {
  if (s == "martinet") return c_l_martinet(n);
  if (s == "odlyzko") return c_l_odlyzko();
  if (s == "mh") return c_l_minkowski_hlawka();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v > 0)) throw ParseError("--c-l must be martinet, odlyzko, mh or a positive number");
  return v;
}

double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

// ---- invariants ------------------------------------------------------------

struct InvariantsArgs {
  Common common;
  std::vector<std::string> fields;
  std::vector<std::string> algebras;
  double pdet_radius = 0.0;
  std::uint64_t budget = kDefaultNodeBudget;
};

void cmd_invariants(const InvariantsArgs& a, std::ostream& out) {
  const Catalog cat = open_catalog(a.common);
  std::vector<std::pair<std::string, bool>> targets;  // (name, is_algebra)
  if (a.fields.empty() && a.algebras.empty()) {
    for (const auto& f : cat.field_names()) targets.emplace_back(f, false);
    for (const auto& al : cat.algebra_names()) targets.emplace_back(al, true);
  }
  for (const auto& f : a.fields) targets.emplace_back(f, false);
  for (const auto& al : a.algebras) targets.emplace_back(al, true);

  // Resolve every name before writing anything.
  std::vector<std::shared_ptr<const CyclicAlgebra>> algebras;
  for (const auto& [name, is_alg] : targets) {
    algebras.push_back(is_alg ? cat.algebra(name) : CyclicAlgebra::trivial(cat.field(name)));
  }

  CsvWriter csv(out);
  csv.config({{"command", "invariants"},
              {"fields", CLI::detail::join(a.fields, ";")},
              {"algebras", CLI::detail::join(a.algebras, ";")},
              {"pdet_radius", a.pdet_radius > 0 ? fmt(a.pdet_radius) : "auto"},
              {"budget", std::to_string(a.budget)}});
  csv.row({"name", "type", "n", "k", "rank", "volume", "hermite", "det_min_certificate", "det_min", "delta", "rh_lower",
           "root_disc", "table_target", "target_status"});
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& [name, is_alg] = targets[t];
    const auto& A = algebras[t];
    const MatrixLattice L = A->order_lattice();
    const BlockShape& s = L.shape();
    // The identity has pdet 1 and squared norm n * nk.
    const double radius = a.pdet_radius > 0 ? a.pdet_radius : std::sqrt(double(s.n) * s.n * s.k) * (1.0 + 1e-9);
    std::optional<double> cert;
    if (A->division_asserted()) cert = 1.0;
    const InvariantReport rep = compute_invariants(L, radius, cert, a.budget);
    const double rd = A->center().root_discriminant();
    const int k = A->k();
    std::string target, status = "none";
    if (k >= 1 && k <= static_cast<int>(kRootDiscriminantTargets.size())) {
      const double t = kRootDiscriminantTargets[k - 1];
      target = fmt(t);
      status = rd <= t + 1e-3 ? "met" : "unmet";
    }
    csv.row({name, is_alg ? "algebra" : "field", std::to_string(s.n), std::to_string(s.k), std::to_string(L.rank()),
             fmt(rep.volume), fmt(rep.hermite), to_string(rep.certificate), fmt(rep.det_min), fmt(rep.delta),
             fmt(rep.rh_lower), fmt(rd), target, status});
  }
}

// ---- carve -----------------------------------------------------------------

struct CarveArgs {
  Common common;
  LatticeChoice lattice;
  double snr_db = 20.0;
  double rate = 1.0;
  int trials = 8;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  std::string codebook_out;
  bool no_truncate = false;
};

void cmd_carve(const CarveArgs& a, std::ostream& out) {
  const NamedLattice nl = resolve_lattice(a.lattice, a.common);
  CarveOptions opt;
  opt.budget = a.budget;
  opt.truncate = !a.no_truncate;
  const double P = db_to_power(a.snr_db);
  const Codebook C = carve(nl.lattice, P, a.rate, a.trials, a.seed, opt);
  if (!a.codebook_out.empty()) {
    std::ofstream f(a.codebook_out);
    if (!f) throw DomainError("cannot write " + a.codebook_out);
    write_codebook(f, C);
  }
  CsvWriter csv(out);
  csv.config({{"command", "carve"},
              {"lattice", nl.name},
              {"snr_db", fmt(a.snr_db)},
              {"rate", fmt(a.rate)},
              {"trials", std::to_string(a.trials)},
              {"seed", std::to_string(a.seed)},
              {"truncate", a.no_truncate ? "false" : "true"}});
  csv.row({"lattice", "P", "rate", "alpha", "points_in_ball", "size", "truncated", "realized_rate", "best_trial",
           "mean_count"});
  csv.row({nl.name, fmt(P), fmt(a.rate), fmt(C.alpha), std::to_string(C.points_in_ball), std::to_string(C.size()),
           C.truncated ? "true" : "false", fmt(C.realized_rate()), std::to_string(C.best_trial), fmt(C.mean_count)});
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  Common common;
  LatticeChoice lattice;
  std::string model = "iid_rayleigh";
  int nr = 0;
  std::string h;
  double rho = 0.0;
  std::string snr_grid = "20";
  double rate = 1.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string decoders = "ml,lattice";
  bool noiseless = false;
  int carve_trials = 8;
  std::uint64_t budget = kDefaultNodeBudget;
  std::size_t max_explicit = 1u << 16;
  int threads = 0;
};

void cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const NamedLattice nl = resolve_lattice(a.lattice, a.common);
  const BlockShape& s = nl.lattice->shape();
  SimulationConfig cfg;
  cfg.lattice = nl.lattice;
  cfg.model.kind = parse_fading_kind(a.model);
  cfg.model.n = s.n;
  cfg.model.nr = a.nr > 0 ? a.nr : s.n;
  cfg.model.rho = a.rho;
  if (cfg.model.kind == FadingKind::constant) {
    if (a.h.empty()) throw DomainError("constant model needs --channel");
    cfg.model.fixed_h = parse_fixed_h(a.h, cfg.model.nr, cfg.model.n);
  }
  cfg.R = a.rate;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.carve_trials = a.carve_trials;
  cfg.noiseless = a.noiseless;
  cfg.budget = a.budget;
  cfg.max_explicit = a.max_explicit;
  cfg.threads = a.threads;
  cfg.run_ml = cfg.run_lattice = false;
  {
    std::stringstream ss(a.decoders);
    for (std::string d; std::getline(ss, d, ',');) {
      if (d == "ml") {
        cfg.run_ml = true;
      } else if (d == "lattice") {
        cfg.run_lattice = true;
      } else {
        throw ParseError("unknown decoder '" + d + "'");
      }
    }
  }
  const std::vector<double> grid = parse_grid(a.snr_grid);

  CsvWriter csv(out);
  csv.config({{"command", "simulate"},
              {"lattice", nl.name},
              {"n", std::to_string(s.n)},
              {"k", std::to_string(s.k)},
              {"nr", std::to_string(cfg.model.nr)},
              {"model", to_string(cfg.model.kind)},
              {"channel", a.h},
              {"rho", fmt(a.rho)},
              {"snr_db", a.snr_grid},
              {"rate", fmt(a.rate)},
              {"trials", std::to_string(a.trials)},
              {"seed", std::to_string(a.seed)},
              {"decoders", a.decoders},
              {"noiseless", a.noiseless ? "true" : "false"},
              {"carve_trials", std::to_string(a.carve_trials)},
              {"budget", std::to_string(a.budget)},
              {"max_explicit", std::to_string(a.max_explicit)}});
  csv.row({"snr_db", "rate", "k", "trials", "status", "codebook", "codebook_size", "ml_errors", "ml_wer", "ml_stderr",
           "lattice_errors", "lattice_wer", "lattice_stderr", "avg_nodes", "inexact"});
  for (double db : grid) {
    cfg.P = db_to_power(db);
    const SimulationResult r = simulate(cfg);
    const bool ok = r.status == "ok";
    auto cells = [&](const DecoderTally& t) -> std::vector<std::string> {
      if (!ok || !t.ran) return {"", "", ""};
      return {std::to_string(t.errors), fmt(t.wer(r.trials)), fmt(t.stderr_(r.trials))};
    };
    std::vector<std::string> row = {fmt(db), fmt(a.rate), std::to_string(s.k), std::to_string(a.trials), r.status,
                                    r.implicit_codebook ? "implicit" : "explicit",
                                    r.implicit_codebook ? "" : fmt(r.codebook_size)};
    for (auto& c : cells(r.ml)) row.push_back(c);
    for (auto& c : cells(r.lattice)) row.push_back(c);
    const bool lat = ok && r.lattice.ran;
    row.push_back(lat ? fmt(r.lattice.total_nodes / r.trials) : "");
    row.push_back(lat ? std::to_string(r.lattice.inexact) : "");
    csv.row(row);
  }
}

// ---- rates -----------------------------------------------------------------

struct RatesArgs {
  Common common;
  int n = 1;
  int nr = 1;
  std::string model = "iid_rayleigh";
  std::string h;
  std::string snr_grid = "0:40:5";
  std::string c_l = "martinet";
  std::string mu = "closed";
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double delta = 0.5;
};

void cmd_rates(const RatesArgs& a, std::ostream& out) {
  FadingModel model;
  model.kind = parse_fading_kind(a.model);
  model.n = a.n;
  model.nr = a.nr;
  if (model.kind == FadingKind::constant) {
    if (a.h.empty()) throw DomainError("constant model needs --channel");
    model.fixed_h = parse_fixed_h(a.h, a.nr, a.n);
  } else if (model.kind != FadingKind::iid_rayleigh) {
    throw DomainError("rates supports the constant and iid_rayleigh models");
  }
  model.validate();
  const double C_L = parse_c_l(a.c_l, a.n);
  const std::vector<double> grid = parse_grid(a.snr_grid);
  if (a.mu != "closed" && a.mu != "mc") throw ParseError("--mu must be closed or mc");
  // Mean log-determinant for the Rayleigh model.
  double mu = 0.0;
  if (model.kind == FadingKind::iid_rayleigh) {
    if (a.mu == "mc") {
      mu = logdet_mc(model, a.samples, a.seed).mean;
    } else {
      mu = a.nr >= a.n ? expected_logdet_rayleigh(a.n, a.nr) : expected_logdet_rayleigh(a.nr, a.n);
    }
  }

  // Chernoff columns apply to Rayleigh fading with nr >= n.
  std::string v_col, k_col;
  if (model.kind == FadingKind::iid_rayleigh && a.nr >= a.n) {
    v_col = fmt(chernoff_vdelta(a.n, a.nr, a.delta));
    k_col = fmt(chernoff_exponent(a.n, a.nr, a.delta));
  }

  CsvWriter csv(out);
  csv.config({{"command", "rates"},
              {"n", std::to_string(a.n)},
              {"nr", std::to_string(a.nr)},
              {"model", to_string(model.kind)},
              {"channel", a.h},
              {"snr_db", a.snr_grid},
              {"c_l", a.c_l},
              {"c_l_value", fmt(C_L)},
              {"mu", a.mu},
              {"samples", std::to_string(a.samples)},
              {"seed", std::to_string(a.seed)},
              {"delta", fmt(a.delta)}});
  csv.row({"P_dB", "C_est", "C_stderr", "R_thm", "gap", "v_delta", "K"});
  for (double db : grid) {
    const double P = db_to_power(db);
    double C = 0.0, se = 0.0, R = 0.0;
    if (model.kind == FadingKind::constant) {
      C = white_input_capacity(*model.fixed_h, P);
      R = rate_slow_fading(*model.fixed_h, P, C_L);
    } else {
      const McEstimate e = ergodic_capacity_mc(model, P, a.samples, a.seed);
      C = e.mean;
      se = e.stderr_;
      R = a.nr >= a.n ? rate_theorem1(mu, P, a.n, C_L) : rate_theorem2(mu, P, a.n, a.nr, C_L);
    }
    R = std::max(0.0, R);
    csv.row({fmt(db), fmt(C), fmt(se), fmt(R), fmt(C - R), v_col, k_col});
  }
}

// ---- chernoff --------------------------------------------------------------

struct ChernoffArgs {
  Common common;
  int n = 1;
  int nr = 1;
  std::string delta_grid = "0.25,0.5,1";
  std::string k_grid;
  std::size_t paths = 100000;
  std::uint64_t seed = 1;
};

void cmd_chernoff(const ChernoffArgs& a, std::ostream& out) {
  const std::vector<double> deltas = parse_grid(a.delta_grid);
  std::vector<double> ks;
  if (!a.k_grid.empty()) {
    if (a.n != 1 || a.nr != 1) throw DomainError("empirical tail is implemented for n = nr = 1");
    ks = parse_grid(a.k_grid);
  }
  CsvWriter csv(out);
  csv.config({{"command", "chernoff"},
              {"n", std::to_string(a.n)},
              {"nr", std::to_string(a.nr)},
              {"delta", a.delta_grid},
              {"k", a.k_grid},
              {"paths", std::to_string(a.paths)},
              {"seed", std::to_string(a.seed)}});
  csv.row({"delta", "v_delta", "residual", "K", "k", "tail_mc", "tail_stderr", "exp_minus_kK"});
  for (double d : deltas) {
    const double v = chernoff_vdelta(a.n, a.nr, d);
    const double res = chernoff_vdelta_residual(a.n, a.nr, d, v);
    const double K = chernoff_exponent(a.n, a.nr, d);
    if (ks.empty()) {
      csv.row({fmt(d), fmt(v), fmt(res), fmt(K), "", "", "", ""});
      continue;
    }
    for (double kd : ks) {
      const int k = static_cast<int>(std::lround(kd));
      const McEstimate e = siso_lower_tail_mc(k, d, a.paths, a.seed);
      csv.row({fmt(d), fmt(v), fmt(res), fmt(K), std::to_string(k), fmt(e.mean), fmt(e.stderr_), fmt(std::exp(-k * K))});
    }
  }
}

// ---- catalog-verify --------------------------------------------------------

bool cmd_catalog_verify(const Common& common, std::ostream& out, std::ostream& err) {
  const Catalog cat = open_catalog(common);
  CsvWriter csv(out);
  csv.config({{"command", "catalog-verify"}});
  csv.row({"name", "type", "degree", "k", "discriminant", "discriminant_numeric", "volume", "volume_expected",
           "rel_err", "status"});
  bool all_ok = true;
  for (const auto& name : cat.field_names()) {
    try {
      const auto K = cat.field(name);
      const Integer dn = K->discriminant_numeric();
      const MatrixLattice L = CyclicAlgebra::trivial(K)->order_lattice();
      const double expected = std::ldexp(std::sqrt(std::abs(K->discriminant().get_d())), -K->half_degree());
      const double rel = std::abs(L.volume() - expected) / expected;
      const bool ok = dn == K->discriminant() && rel < 1e-9;
      all_ok = all_ok && ok;
      csv.row({name, "field", std::to_string(K->degree()), std::to_string(K->half_degree()),
               fmt_int(K->discriminant()), fmt_int(dn), fmt(L.volume()), fmt(expected), fmt(rel),
               ok ? "ok" : "mismatch"});
    } catch (const Error& e) {
      all_ok = false;
      err << name << ": " << e.what() << '\n';
      csv.row({name, "field", "", "", "", "", "", "", "", "error"});
    }
  }
  for (const auto& name : cat.algebra_names()) {
    try {
      const auto A = cat.algebra(name);
      const Integer exact = A->z_discriminant_exact();
      const Integer numeric = A->z_discriminant();
      const bool ok = exact == numeric;
      all_ok = all_ok && ok;
      csv.row({name, "algebra", std::to_string(A->n()), std::to_string(A->k()), fmt_int(exact), fmt_int(numeric),
               fmt(A->order_lattice().volume()), "", "", ok ? "ok" : "mismatch"});
    } catch (const Error& e) {
      all_ok = false;
      err << name << ": " << e.what() << '\n';
      csv.row({name, "algebra", "", "", "", "", "", "", "", "error"});
    }
  }
  return all_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiblock lattice code laboratory", "mblab"};
  app.require_subcommand(1);

  InvariantsArgs inv;
  auto* s_inv = app.add_subcommand("invariants", "Geometric invariants of catalog lattices");
  add_common(s_inv, inv.common);
  s_inv->add_option("--field", inv.fields, "Field name (repeatable)");
  s_inv->add_option("--algebra", inv.algebras, "Algebra name (repeatable)");
  s_inv->add_option("--pdet-radius", inv.pdet_radius, "Radius of the det_min ball search");
  s_inv->add_option("--budget", inv.budget, "Enumeration node budget");

  CarveArgs cv;
  auto* s_cv = app.add_subcommand("carve", "Carve a power-constrained codebook");
  add_common(s_cv, cv.common);
  add_lattice_choice(s_cv, cv.lattice);
  s_cv->add_option("--snr-db", cv.snr_db, "SNR in dB (P = 10^(dB/10))");
  s_cv->add_option("--rate", cv.rate, "Rate in bits per channel use")->check(CLI::NonNegativeNumber);
  s_cv->add_option("--trials", cv.trials, "Random shifts to try")->check(CLI::PositiveNumber);
  s_cv->add_option("--seed", cv.seed, "Seed of the shift search");
  s_cv->add_option("--budget", cv.budget, "Enumeration node budget");
  s_cv->add_option("--codebook-out", cv.codebook_out, "Write the codebook here");
  s_cv->add_flag("--no-truncate", cv.no_truncate, "Keep every point of the ball");

  SimulateArgs sim;
  auto* s_sim = app.add_subcommand("simulate", "Word error rate simulation");
  add_common(s_sim, sim.common);
  add_lattice_choice(s_sim, sim.lattice);
  s_sim->add_option("--model", sim.model, "constant | iid_rayleigh | gauss_markov");
  s_sim->add_option("--nr", sim.nr, "Receive antennas (default n)");
  s_sim->add_option("--channel", sim.h, "Fixed channel for the constant model, nr*n complex entries row-major");
  s_sim->add_option("--rho", sim.rho, "Gauss-Markov correlation");
  s_sim->add_option("--snr-db", sim.snr_grid, "SNR grid: a,b,c or start:stop:step");
  s_sim->add_option("--rate", sim.rate, "Rate in bits per channel use")->check(CLI::NonNegativeNumber);
  s_sim->add_option("--trials", sim.trials, "Trials per grid point")->check(CLI::PositiveNumber);
  s_sim->add_option("--seed", sim.seed, "Master seed")->required();
  s_sim->add_option("--decoders", sim.decoders, "Comma list of ml, lattice");
  s_sim->add_flag("--noiseless", sim.noiseless, "Suppress the noise");
  s_sim->add_option("--carve-trials", sim.carve_trials, "Random shifts tried when carving")->check(CLI::PositiveNumber);
  s_sim->add_option("--budget", sim.budget, "Enumeration node budget");
  s_sim->add_option("--max-explicit", sim.max_explicit, "Largest codebook that is stored explicitly");
  s_sim->add_option("--threads", sim.threads, "Worker threads (0: all cores)");

  RatesArgs rt;
  auto* s_rt = app.add_subcommand("rates", "Achievable rates, capacity and gaps");
  add_common(s_rt, rt.common);
  s_rt->add_option("--n", rt.n, "Transmit antennas")->check(CLI::PositiveNumber);
  s_rt->add_option("--nr", rt.nr, "Receive antennas")->check(CLI::PositiveNumber);
  s_rt->add_option("--model", rt.model, "iid_rayleigh | constant");
  s_rt->add_option("--channel", rt.h, "Fixed channel for the constant model, nr*n complex entries row-major");
  s_rt->add_option("--snr-db", rt.snr_grid, "SNR grid: a,b,c or start:stop:step");
  s_rt->add_option("--c-l", rt.c_l, "martinet | odlyzko | mh | value");
  s_rt->add_option("--mu", rt.mu, "Mean log-determinant source: closed | mc");
  s_rt->add_option("--samples", rt.samples, "Monte Carlo samples for the ergodic capacity")->check(CLI::PositiveNumber);
  s_rt->add_option("--seed", rt.seed, "Monte Carlo seed");
  s_rt->add_option("--delta", rt.delta, "Chernoff deviation in nats")->check(CLI::PositiveNumber);

  ChernoffArgs ch;
  auto* s_ch = app.add_subcommand("chernoff", "Chernoff exponent and empirical tail");
  add_common(s_ch, ch.common);
  s_ch->add_option("--n", ch.n, "Transmit antennas")->check(CLI::PositiveNumber);
  s_ch->add_option("--nr", ch.nr, "Receive antennas")->check(CLI::PositiveNumber);
  s_ch->add_option("--delta", ch.delta_grid, "Deviation grid in nats");
  s_ch->add_option("--k", ch.k_grid, "Block counts for the empirical tail (n = nr = 1)");
  s_ch->add_option("--paths", ch.paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
  s_ch->add_option("--seed", ch.seed, "Monte Carlo seed");

  Common cvf;
  auto* s_cvf = app.add_subcommand("catalog-verify", "Check every catalog entry");
  add_common(s_cvf, cvf);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto run = [&](const Common& common, auto&& body) -> int {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!common.output.empty()) {
      file.open(common.output);
      if (!file) {
        err << "error: cannot write " << common.output << '\n';
        return kExitConfig;
      }
      sink = &file;
    }
    try {
      return body(*sink);
    } catch (const NumericalError& e) {
      err << "numerical error: " << e.what() << '\n';
      return kExitNumerical;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfig;
    }
  };

  if (*s_inv) return run(inv.common, [&](std::ostream& o) { return cmd_invariants(inv, o), kExitOk; });
  if (*s_cv) return run(cv.common, [&](std::ostream& o) { return cmd_carve(cv, o), kExitOk; });
  if (*s_sim) return run(sim.common, [&](std::ostream& o) { return cmd_simulate(sim, o), kExitOk; });
  if (*s_rt) return run(rt.common, [&](std::ostream& o) { return cmd_rates(rt, o), kExitOk; });
  if (*s_ch) return run(ch.common, [&](std::ostream& o) { return cmd_chernoff(ch, o), kExitOk; });
  if (*s_cvf) {
    return run(cvf, [&](std::ostream& o) { return cmd_catalog_verify(cvf, o, err) ? kExitOk : kExitConfig; });
  }
  return kExitConfig;
}

}  // namespace mbl
