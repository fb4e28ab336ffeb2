#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace comlearn {

/// 2-CNF satisfiability via the implication graph and its strongly connected
/// components.
class TwoSat {
 public:
  struct Literal {
    std::size_t var;
    bool value;  // literal is "var == value"
  };

  explicit TwoSat(std::size_t variables);

  std::size_t variable_count() const { return variables_; }
  void add_clause(Literal a, Literal b);
  void add_unit(Literal a) { add_clause(a, a); }

  bool satisfiable() const;
  /// Lexicographically least model under false < true, variables in index
  /// order: each variable is fixed to false whenever the rest stays
  /// satisfiable.
  std::optional<std::vector<bool>> least_model() const;

 private:
  std::size_t node(Literal l) const { return 2 * l.var + (l.value ? 1 : 0); }
  bool satisfiable_with(const std::vector<std::optional<bool>>& fixed) const;

  std::size_t variables_;
  std::vector<std::vector<std::size_t>> implications_;
};

} // namespace comlearn
