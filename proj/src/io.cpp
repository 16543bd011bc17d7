#include "geodock/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "geodock/errors.hpp"
#include "geodock/pipeline.hpp"

namespace geodock {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

namespace {

/// Whitespace-token reader that tracks line numbers for error messages.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& token) {
    while (true) {
      if (pos_ < tokens_.size()) {
        token = tokens_[pos_++];
        return true;
      }
      std::string line;
      if (!std::getline(in_, line)) return false;
      ++line_no_;
      tokens_.clear();
      pos_ = 0;
      std::istringstream split(line);
      std::string t;
      while (split >> t) tokens_.push_back(t);
    }
  }

  std::string expect_token(const char* what) {
    std::string t;
    if (!next(t)) throw ParseError(std::string("unexpected end of input, expected ") + what,
                                   line_no_);
    return t;
  }

  void expect_keyword(const char* keyword) {
    const std::string t = expect_token(keyword);
    if (t != keyword) {
      throw ParseError("expected '" + std::string(keyword) + "', got '" + t + "'", line_no_);
    }
  }

  double expect_double(const char* what) {
    const std::string t = expect_token(what);
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected a number for " + std::string(what) + ", got '" + t + "'",
                       line_no_);
    }
  }

  std::size_t expect_index(const char* what) {
    const std::string t = expect_token(what);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t, &used);
      if (used != t.size() || v < 0) throw std::invalid_argument(t);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ParseError("expected a non-negative integer for " + std::string(what) + ", got '" +
                           t + "'",
                       line_no_);
    }
  }

  std::size_t line() const { return line_no_; }

 private:
  std::istream& in_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace

std::vector<Ligand> parse_ligand_library(std::istream& in) {
  TokenReader reader(in);
  std::vector<Ligand> library;
  std::string token;
  while (reader.next(token)) {
    if (token != "ligand") {
      throw ParseError("expected 'ligand', got '" + token + "'", reader.line());
    }
    Ligand lig;
    lig.name = reader.expect_token("ligand name");
    reader.expect_keyword("atoms");
    const std::size_t n_atoms = reader.expect_index("atom count");
    lig.atoms.reserve(n_atoms);
    for (std::size_t a = 0; a < n_atoms; ++a) {
      Atom atom;
      atom.position.x = reader.expect_double("atom x");
      atom.position.y = reader.expect_double("atom y");
      atom.position.z = reader.expect_double("atom z");
      atom.radius = reader.expect_double("atom radius");
      lig.atoms.push_back(atom);
    }
    reader.expect_keyword("bonds");
    const std::size_t n_bonds = reader.expect_index("bond count");
    for (std::size_t b = 0; b < n_bonds; ++b) {
      const std::size_t i = reader.expect_index("bond atom i");
      const std::size_t j = reader.expect_index("bond atom j");
      lig.bonds.emplace_back(i, j);
    }
    reader.expect_keyword("rotamers");
    const std::size_t n_rotamers = reader.expect_index("rotamer count");
    for (std::size_t r = 0; r < n_rotamers; ++r) {
      const std::size_t i = reader.expect_index("rotamer atom i");
      const std::size_t j = reader.expect_index("rotamer atom j");
      lig.rotamers.push_back({i, j, {}});
    }
    lig.dihedrals.assign(lig.rotamers.size(), 0.0);
    reader.expect_keyword("end");

    const std::vector<std::string> violations = validate_ligand(lig);
    if (!violations.empty()) throw ValidationError(lig.name, violations);
    finalize_ligand(lig);
    library.push_back(std::move(lig));
  }
  return library;
}

void serialize_ligand(std::ostream& out, const Ligand& ligand) {
  out << "ligand " << ligand.name << "\n";
  out << "atoms " << ligand.atoms.size() << "\n";
  for (const Atom& a : ligand.atoms) {
    out << format_double(a.position.x) << " " << format_double(a.position.y) << " "
        << format_double(a.position.z) << " " << format_double(a.radius) << "\n";
  }
  out << "bonds " << ligand.bonds.size() << "\n";
  for (const Bond& b : ligand.bonds) out << b.first << " " << b.second << "\n";
  out << "rotamers " << ligand.rotamers.size() << "\n";
  for (const Rotamer& r : ligand.rotamers) out << r.atom_i << " " << r.atom_j << "\n";
  out << "end\n";
}

void serialize_ligand_library(std::ostream& out, const std::vector<Ligand>& library) {
  for (const Ligand& lig : library) serialize_ligand(out, lig);
}

Pocket parse_pocket(std::istream& in) {
  TokenReader reader(in);
  Pocket pocket;
  reader.expect_keyword("origin");
  pocket.origin.x = reader.expect_double("origin x");
  pocket.origin.y = reader.expect_double("origin y");
  pocket.origin.z = reader.expect_double("origin z");
  reader.expect_keyword("spacing");
  pocket.spacing = reader.expect_double("spacing");
  if (!(pocket.spacing > 0.0)) throw ParseError("spacing must be positive", reader.line());
  reader.expect_keyword("dims");
  pocket.dims[0] = reader.expect_index("nx");
  pocket.dims[1] = reader.expect_index("ny");
  pocket.dims[2] = reader.expect_index("nz");
  if (pocket.dims[0] < 2 || pocket.dims[1] < 2 || pocket.dims[2] < 2) {
    throw ParseError("dims must each be >= 2", reader.line());
  }
  const std::size_t expected = pocket.dims[0] * pocket.dims[1] * pocket.dims[2];
  pocket.field.reserve(expected);
  std::string token;
  while (pocket.field.size() < expected && reader.next(token)) {
    double v;
    try {
      std::size_t used = 0;
      v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("expected a field value, got '" + token + "'", reader.line());
    }
    if (v < 0.0 || v > 1.0) {
      throw RangeError("field value " + format_double(v) + " outside [0,1]", reader.line());
    }
    pocket.field.push_back(v);
  }
  if (pocket.field.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " values, got " +
                         std::to_string(pocket.field.size()),
                     reader.line());
  }
  if (reader.next(token)) {
    throw ParseError("trailing content after field values: '" + token + "'", reader.line());
  }
  return pocket;
}

void serialize_pocket(std::ostream& out, const Pocket& pocket) {
  out << "origin " << format_double(pocket.origin.x) << " " << format_double(pocket.origin.y)
      << " " << format_double(pocket.origin.z) << "\n";
  out << "spacing " << format_double(pocket.spacing) << "\n";
  out << "dims " << pocket.dims[0] << " " << pocket.dims[1] << " " << pocket.dims[2] << "\n";
  for (std::size_t i = 0; i < pocket.field.size(); ++i) {
    out << format_double(pocket.field[i]);
    out << (((i + 1) % 12 == 0 || i + 1 == pocket.field.size()) ? "\n" : " ");
  }
}

void write_results(std::ostream& out, const std::vector<DockResult>& results) {
  out << "ligand_name,best_score,best_restart_id,score_calls,align_seconds,optimize_seconds\n";
  for (const DockResult& r : results) {
    out << r.ligand_name << "," << format_double(r.best_score) << "," << r.best_restart_id << ","
        << r.score_calls << "," << format_double(r.phase_times.align_seconds) << ","
        << format_double(r.phase_times.optimize_seconds) << "\n";
  }
}

void write_metrics(std::ostream& out, const RunMetrics& metrics, const NodeConfig& config) {
  out << "workers,devices,lane_width,mode,ligands,wall_seconds,throughput,"
         "device_busy_seconds,device_idle_seconds,mean_lane_wait_seconds,"
         "align_seconds_total,optimize_seconds_total,lane_failures,exclusivity_violations\n";
  double busy = 0.0;
  double idle = 0.0;
  for (double b : metrics.device_busy_seconds) busy += b;
  for (double i : metrics.device_idle_seconds) idle += i;
  double wait = 0.0;
  for (double w : metrics.worker_wait_seconds) wait += w;
  const double mean_wait =
      metrics.ligand_count > 0 ? wait / static_cast<double>(metrics.ligand_count) : 0.0;
  out << config.n_workers << "," << config.n_devices << "," << config.lane_width << ","
      << (config.mode == ExecMode::synthetic ? "synthetic" : "real") << ","
      << metrics.ligand_count << "," << format_double(metrics.wall_seconds) << ","
      << format_double(metrics.throughput) << "," << format_double(busy) << ","
      << format_double(idle) << "," << format_double(mean_wait) << ","
      << format_double(metrics.align_seconds_total) << ","
      << format_double(metrics.optimize_seconds_total) << "," << metrics.lane_failures << ","
      << metrics.exclusivity_violations << "\n";
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::vector<Ligand> load_ligand_library(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_ligand_library(in);
}

Pocket load_pocket(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_pocket(in);
}

void save_ligand_library(const std::string& path, const std::vector<Ligand>& library) {
  std::ofstream out = open_output(path);
  serialize_ligand_library(out, library);
}

void save_pocket(const std::string& path, const Pocket& pocket) {
  std::ofstream out = open_output(path);
  serialize_pocket(out, pocket);
}

}  // namespace geodock
