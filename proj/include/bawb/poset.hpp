#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bawb {

enum class SchemeFamily : std::uint8_t { IND, PIND };
enum class SchemeForm : std::uint8_t { Axiom, ParamFree, Rule };
enum class SchemeSide : std::uint8_t { Sigma, Pi };

struct FragmentNode {
  bool base = false;  // the base theory
  SchemeFamily family = SchemeFamily::IND;
  SchemeForm form = SchemeForm::Axiom;
  SchemeSide side = SchemeSide::Sigma;
  int level = 0;

  /// "BTC", "sigma2-IND", "pi1-PIND-", "sigma0-INDR".
  std::string id() const;
  /// Display name: "T^2_2" and "S^2_2" for the full schemes, otherwise like id().
  std::string label() const;
};

enum class PosetKind : std::uint8_t { R, T };

struct GeneratorEdge {
  int lo, hi;       // lo <= hi
  std::string tag;  // which reduction produced it
};

class PosetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FragmentPoset {
  PosetKind kind = PosetKind::R;
  int max_level = 0;
  std::vector<FragmentNode> nodes;
  std::vector<GeneratorEdge> edges;
  /// node -> representative; the identity for R.
  std::vector<int> canon;
  /// reflexive-transitive closure over all nodes
  std::vector<std::vector<char>> order;

  bool leq(int a, int b) const { return order[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0; }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  int find(const std::string& id) const;  // -1 when absent
  /// Representatives in node order.
  std::vector<int> elements() const;
};

/// Nodes for levels 0..max_level and the generator edges; throws PosetError
/// for max_level < 2 or when antisymmetry fails.
FragmentPoset build_poset(PosetKind kind, int max_level);

struct CriticalPair {
  int a, b;
  bool boundary = false;  // touches the truncation level
  bool subsumed = false;
  std::optional<std::pair<int, int>> witness;  // pair that subsumes it
};

/// Pairs of representatives with both levels below max_level are interior.
bool interior(const FragmentPoset& p, int a, int b);
std::vector<CriticalPair> critical_pairs(const FragmentPoset& p, bool interior_only);

struct BasisReport {
  bool ok = true;
  std::size_t checked = 0;
  int a = -1, b = -1;  // a non-inequality with no covering critical pair
};

/// Every a !<= b with both levels <= top is covered by some pair (a', b') with
/// a' <= a and b <= b'; also checks that every listed pair is a non-inequality.
BasisReport check_basis(const FragmentPoset& p, const std::vector<CriticalPair>& pairs, int top);

/// Covering relation of the order on representatives, as (lo, hi).
std::vector<std::pair<int, int>> hasse_edges(const FragmentPoset& p);

struct NonLatticeWitness {
  int a, b;
  std::vector<int> minimal_upper_bounds;
};
/// First pair (in node order) with at least two minimal upper bounds below the top level.
std::optional<NonLatticeWitness> find_non_lattice_witness(const FragmentPoset& p);

/// Hasse diagram; arrows point from the stronger to the weaker system.
std::string to_dot(const FragmentPoset& p, bool per_level);
std::string to_json(const FragmentPoset& p, const std::vector<CriticalPair>& pairs);

}  // namespace bawb
