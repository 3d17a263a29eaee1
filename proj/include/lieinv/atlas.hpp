// Tables of representations of Spin_n and Sp_2n, their expected stabilisers
// and indices, and the runner that re-derives every checkable column.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lieinv/constructions.hpp"

namespace lieinv {

/// A named stabiliser type. Grammar: terms joined by '+', each an optional
/// multiplicity followed by one of
///   A<k> B<k> C<k> D<k>   simple classical algebras
///   so<k>                 so_k for any k >= 0 (so_2 is one-dimensional)
///   G2                    the exceptional algebra of dimension 14
///   CH<k>                 sp_2k x| heis_k (CH0 is the one-dimensional heis_0)
///   B3V                   so_7 x| V_phi3 (the spin module)
///   U<k>                  commutative, k-dimensional, nilpotent elements
///   T<k>                  k-dimensional torus
/// or the single token 0.
struct StabiliserType {
  std::vector<std::pair<std::size_t, std::string>> terms;  // multiplicity, base

  static StabiliserType parse(const std::string& text);
  std::string to_string() const;

  /// Expected fingerprint: built from explicit algebras, G2 from constants.
  Fingerprint fingerprint(const SampleConfig& cfg = {}) const;
  /// +1 if every element must be nilpotent (only U terms), -1 if no nonzero
  /// element may be (only T terms), 0 otherwise.
  int nilpotency() const;
};

struct TableRowSpec {
  int table = 0;
  std::string row;     // e.g. "3b"
  std::string params;  // instantiation, e.g. "m=2", or empty
  std::string group;   // e.g. "B4", "D5", "SO7", "C3"
  Family family = Family::so;
  std::size_t size = 0;  // matrix size of g
  std::string module_text;
  ModuleSpec module;
  std::size_t dim_v = 0, dim_vg = 0, ind = 0;
  bool dim_vg_derived = false, ind_derived = false;  // blank in the table, filled by identity
  std::string h;
  StabiliserType h_type;
  bool fa = false;
  std::size_t line = 0;

  std::string label() const;  // e.g. "T1.3b" or "T1.4[m=2]"
  std::size_t dim_g() const;
};

struct Atlas {
  std::vector<TableRowSpec> rows;
  std::map<std::string, WeightDictionary> weights;  // group or family pattern ("C*") -> labels

  const WeightDictionary& dictionary(const std::string& group) const;
};

class AtlasParseError : public Error {
 public:
  AtlasParseError(std::size_t line, const std::string& what)
      : Error("atlas line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

/// Parses and checks dim V//G = dim V - dim g + dim h, and for FA-positive
/// rows ind s = dim V//G + ind h.
Atlas load_atlas(const std::string& path, const SampleConfig& cfg = {});
Atlas parse_atlas(const std::string& text, const SampleConfig& cfg = {});
std::string default_atlas_path();

struct CheckResult {
  std::string check;
  std::string expected, computed;
  bool pass = false;
  bool skipped = false;
  double millis = 0;
};

struct RowReport {
  std::string row;
  std::vector<CheckResult> checks;
  std::vector<std::string> flags;
  double millis = 0;
  bool pass() const;
};

struct VerifyOptions {
  SampleConfig cfg;
  std::size_t max_dim = 400;
  std::size_t ledger_max_dim = 14;  // ledgers only for dim s up to this
  unsigned ledger_max_degree = 6;
};

/// Builds g, V and s = g x| V and compares the computed columns with the row.
/// Failures are recorded, never thrown.
RowReport verify_row(const TableRowSpec& row, const Atlas& atlas, const VerifyOptions& opt = {});

struct SuiteConfig {
  VerifyOptions verify;
  int table = 0;           // 0 for both
  std::string row_filter;  // row label within the table ("3b"), empty for all
  bool properties = true;
};

struct SuiteReport {
  std::vector<RowReport> rows;
  std::vector<CheckResult> properties;
  bool pass() const;
  std::string to_text() const;
  std::string to_json() const;
};

/// Rows are verified in parallel and merged by label.
SuiteReport run_suite(const Atlas& atlas, const SuiteConfig& config);

/// The semi-direct product for a row.
SemiDirectProduct build_row(const TableRowSpec& row, const Atlas& atlas);

}  // namespace lieinv
