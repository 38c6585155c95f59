#pragma once

// Loader for the golden corpus under tests/golden.

#include <map>
#include <set>
#include <string>
#include <vector>

namespace golden {

/// Directory holding the corpus; BAWB_GOLDEN_DIR overrides the built-in path.
std::string dir();
std::string read_file(const std::string& path);

struct Sample {
  int criterion = 0;
  std::string case_name;
  std::string file;
  std::map<std::string, std::string> params;
};

/// Reduction samples listed in reduce/MANIFEST.
const std::vector<Sample>& reduction_samples();

struct CorpusEntry {
  std::string expected;  // class name as printed by to_string
  std::string text;
};

/// Formula corpus in formulas.txt.
const std::vector<CorpusEntry>& formula_corpus();

/// Paths of the golden proofs, sorted.
std::vector<std::string> proof_files();

/// Node ids of the fragment posets expected as interior critical pairs at the
/// given truncation, mapped to their family ("common" or "rules-subsumed").
std::map<std::pair<std::string, std::string>, std::string> expected_critical_pairs(bool rules, int max_level);

/// Edges (stronger, weaker) of the hand-drawn level-i figure, instantiated at i.
std::set<std::pair<std::string, std::string>> figure_edges(bool rules, int i);

}  // namespace golden
