#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geodock/docking.hpp"
#include "geodock/molecule.hpp"
#include "geodock/scoring.hpp"

namespace geodock {

struct NodeConfig;
struct RunMetrics;

/// Fixed float formatting: 9 significant digits, shortest form. Every file
/// writer goes through this so identical runs produce identical bytes.
std::string format_double(double value);

// --- ligand library (.lgd) ------------------------------------------------
//
// One record per ligand, whitespace-separated, LF line endings, 0-based
// indices:
//
//   ligand <name>
//   atoms <n>
//   <x> <y> <z> <radius>      (n lines)
//   bonds <m>
//   <i> <j>                   (m lines)
//   rotamers <k>
//   <i> <j>                   (k lines)
//   end

std::vector<Ligand> parse_ligand_library(std::istream& in);
void serialize_ligand(std::ostream& out, const Ligand& ligand);
void serialize_ligand_library(std::ostream& out, const std::vector<Ligand>& library);

// --- pocket (.pkt) ----------------------------------------------------------
//
//   origin <ox> <oy> <oz>
//   spacing <s>
//   dims <nx> <ny> <nz>
//   <nx*ny*nz field values, x-fastest, wrapped over lines>

Pocket parse_pocket(std::istream& in);
void serialize_pocket(std::ostream& out, const Pocket& pocket);

// --- results / metrics (.csv) ----------------------------------------------

/// One row per ligand in library order. All columns are deterministic
/// functions of the inputs, so the bytes are identical for any worker or
/// device-lane configuration.
void write_results(std::ostream& out, const std::vector<DockResult>& results);

/// Wall-clock measurements and scheduler accounting; differs run to run.
void write_metrics(std::ostream& out, const RunMetrics& metrics, const NodeConfig& config);

// --- file helpers ------------------------------------------------------------

std::vector<Ligand> load_ligand_library(const std::string& path);
Pocket load_pocket(const std::string& path);
void save_ligand_library(const std::string& path, const std::vector<Ligand>& library);
void save_pocket(const std::string& path, const Pocket& pocket);

}  // namespace geodock
