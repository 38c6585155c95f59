#pragma once

// Reference implementations used only by the test suites. They follow the
// textbook definitions directly and share no code with the library beyond the
// AST types.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bawb/formula.hpp"
#include "bawb/qprop.hpp"

namespace oracle {

enum class Side { Sigma, Pi };

/// Recursive definition of the strict classes: the sharply bounded formulas are
/// level 0; Sigma_i is closed under bounded existential quantification and
/// contains Pi_(i-1); Pi_i dually.
bool member(const bawb::Formula& f, Side side, int level);

/// Least class under the recursive definition (b0, sigmaN, piN or nonstrict
/// when no level up to `max_level` admits the formula).
bawb::QuantClass least_class(const bawb::Formula& f, int max_level = 16);

/// Digits i..j-1 of x, most significant digit first, computed on a bit string.
std::uint64_t slice_bits(std::uint64_t x, std::uint64_t i, std::uint64_t j);
/// Cantor pairing by walking diagonals.
std::uint64_t cantor(std::uint64_t x, std::uint64_t y);

/// Collapse code of the digits written out on a bit string, most significant
/// bit first and without leading zeros. The PIND code carries a length header
/// in base L + 1 in front of the fixed-width digits.
std::string collapse_code(const std::vector<std::uint64_t>& digits, std::uint64_t L, bool pind);

struct RandomAst {
  explicit RandomAst(std::uint64_t seed, std::vector<std::string> vars = {"x", "y", "z", "u"})
      : rng(seed), names(std::move(vars)) {}

  bawb::Term term(int depth, bool small = false);
  bawb::Formula formula(int depth, bool small = false);

  std::mt19937_64 rng;
  std::vector<std::string> names;

 private:
  int pick(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); }
};

/// Recursive definition of the quantified propositional classes: quantifier-free
/// formulas are in every class; SigmaQ_i contains PiQ_(i-1) and is closed under
/// and, or and existential quantification; negation maps SigmaQ_i to PiQ_i.
bool qmember(bawb::QProp q, Side side, int level);
bawb::QClass qleast_class(bawb::QProp q, int max_level = 16);

/// Random formulas over the given variable names.
struct RandomQ {
  explicit RandomQ(std::uint64_t seed, std::vector<std::string> vars = {"p", "q", "r"})
      : rng(seed), names(std::move(vars)) {}
  bawb::QProp formula(int depth);
  /// formula(depth) with its free variables quantified at random.
  bawb::QProp closed(int depth);

  std::mt19937_64 rng;
  std::vector<std::string> names;
};

/// QDIMACS document read back and decided by backtracking over the prefix.
struct Qdimacs {
  int vars = 0;
  std::vector<std::pair<bool, std::vector<int>>> prefix;  // (existential, block)
  std::vector<std::vector<int>> clauses;
};
Qdimacs read_qdimacs(const std::string& text);
bool solve_qdimacs(const Qdimacs& d);

}  // namespace oracle
