#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cruxkh/jones.hpp"

namespace ckh {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInvalid = 2, kFlagConflict = 3 };

struct Check {
  std::string name;
  std::string subject;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  std::string digest;  // diagram digest, if any
  std::string params;  // e.g. "ring=z h=0 t=0 graded=1"
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<Check> checks;

  bool passed() const;
  std::string tsv() const;
  std::string json() const;
};

// corpus/index.json entries; diagrams live next to the index
struct CorpusEntry {
  std::string name;
  std::string file;
  std::string family;  // diagrams of one family are related by Reidemeister moves
  bool singular = false;
  int components = 1;
  int crossings = 0;
  std::optional<int> reducible;  // id of a reducible crossing / double point
  Diagram d;
};
std::vector<CorpusEntry> load_corpus(const std::string& dir);
void save_corpus(const std::string& dir, const std::vector<CorpusEntry>& entries);

std::string digest(const Diagram& d);

// [[G(r)]] up to homotopy: two copies of A -(2x - h)-> A placed per the
// twist-knot closed form
ChainComplex twist_singular_model(int r, const FrobeniusParams& p);
// right-hand side of the twist-knot decomposition: base knot complex plus
// shifted singular models
ChainComplex main_b_rhs(int r, const FrobeniusParams& p);

Report cmd_homology(const Diagram& d, const FrobeniusParams& p, bool graded);
// suites: relations, exactness, cone-xi, invariance, skein, jones
Report cmd_verify(const std::string& suite, const std::vector<CorpusEntry>& corpus);
Report cmd_twist(int r, const FrobeniusParams& p, bool check_main_b);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ckh
