#include "golden.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "bawb/reductions.hpp"

namespace golden {

std::string dir() {
  if (const char* e = std::getenv("BAWB_GOLDEN_DIR")) return e;
  return BAWB_GOLDEN_DIR;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<Sample>& reduction_samples() {
  static const std::vector<Sample> samples = [] {
    std::vector<Sample> out;
    std::istringstream man(read_file(dir() + "/reduce/MANIFEST"));
    std::string line;
    while (std::getline(man, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      Sample s;
      if (!(ls >> s.criterion >> s.case_name >> s.file)) throw std::runtime_error("bad manifest line: " + line);
      s.params = bawb::parse_case_params(read_file(dir() + "/reduce/" + s.file));
      out.push_back(std::move(s));
    }
    return out;
  }();
  return samples;
}

const std::vector<CorpusEntry>& formula_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> out;
    std::istringstream in(read_file(dir() + "/formulas.txt"));
    std::string line;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    while (std::getline(in, line)) {
      if (trim(line).empty() || trim(line)[0] == '#') continue;
      auto bar = line.find('|');
      if (bar == std::string::npos) throw std::runtime_error("bad corpus line: " + line);
      out.push_back({trim(line.substr(0, bar)), trim(line.substr(bar + 1))});
    }
    return out;
  }();
  return corpus;
}

std::vector<std::string> proof_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir() + "/proofs"))
    if (e.path().extension() == ".jsonl") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string instantiate(std::string t, int i) {
  for (auto [pat, v] : {std::pair{"{i}", i}, std::pair{"{i+1}", i + 1}, std::pair{"{i-1}", i - 1}}) {
    std::string p = pat;
    for (auto pos = t.find(p); pos != std::string::npos; pos = t.find(p)) t.replace(pos, p.size(), std::to_string(v));
  }
  return t;
}

int level_of(const std::string& id) {
  std::smatch m;
  static const std::regex re("^(sigma|pi)([0-9]+)-");
  return std::regex_search(id, m, re) ? std::stoi(m[2]) : 0;
}

}  // namespace

std::map<std::pair<std::string, std::string>, std::string> expected_critical_pairs(bool rules, int max_level) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  std::istringstream in(read_file(dir() + "/poset/critical-pairs.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string part; std::getline(ls, part, '|');) {
      part.erase(0, part.find_first_not_of(' '));
      part.erase(part.find_last_not_of(' ') + 1);
      f.push_back(part);
    }
    if (f.size() != 4) throw std::runtime_error("bad critical pair line: " + line);
    if (f[0] == "rules-subsumed" && !rules) continue;
    bool templ = f[1].find('{') != std::string::npos || f[2].find('{') != std::string::npos;
    for (int i = std::stoi(f[3]); i < max_level; ++i) {
      std::string a = instantiate(f[1], i), b = instantiate(f[2], i);
      if (level_of(a) < max_level && level_of(b) < max_level) out[{a, b}] = f[0];
      if (!templ) break;
    }
  }
  return out;
}

std::set<std::pair<std::string, std::string>> figure_edges(bool rules, int i) {
  std::string text = read_file(dir() + (rules ? "/poset/figure-rules.dot" : "/poset/figure-theories.dot"));
  static const std::regex edge("\"([^\"]+)\"\\s*->\\s*\"([^\"]+)\"");
  std::set<std::pair<std::string, std::string>> out;
  for (std::sregex_iterator it(text.begin(), text.end(), edge), end; it != end; ++it)
    out.insert({instantiate((*it)[1], i), instantiate((*it)[2], i)});
  return out;
}

}  // namespace golden
