#pragma once

#include "comlearn/dataset.hpp"
#include "comlearn/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace comlearn::cli {

enum class Model { baseline, general, multi, comonotone_invariant, comonotone_varying };
enum class OutputFormat { json, text };

struct RunConfig {
  std::string command;
  std::string input = "-";  // "-" reads standard input
  std::optional<Format> format;  // guessed from the extension when unset
  Model model = Model::baseline;
  std::optional<std::vector<Rational>> cutoffs;
  OutputFormat output = OutputFormat::json;
  bool emit_witness = false;
  bool enumerate_joint = false;
  bool weak = false;
  std::string witness_path;  // verify
  std::string key, favored;  // discriminate
  std::vector<std::pair<std::string, std::string>> fixed, any_of;  // predict
};

/// Exit status: 0 rationalizable / accepted / report produced, 1 refuted,
/// 2 bad input or configuration.
inline constexpr int exit_ok = 0;
inline constexpr int exit_refuted = 1;
inline constexpr int exit_input = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace comlearn::cli
