#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace comlearn {

/// Position of an alternative on the belief axis: 0 is the alternative chosen
/// at the lowest beliefs in state x, N-1 the one chosen at the highest.
using Level = std::uint32_t;

using CovariateRecord = std::map<std::string, std::string>;

/// Panel of choices: I agents by T periods, each cell one of N >= 2
/// alternatives, plus optional string covariates per period.
///
/// Alternatives are kept in declaration order, and declaration order runs
/// from the highest belief level down: for the binary default ("x", "y"),
/// x is the alternative an agent picks when the belief in state x is above
/// their cutoff. level() exposes the belief-axis position.
///
/// Periods are kept in ingestion order, which is taken to be chronological;
/// the consecutive-cycle tests depend on it. Immutable once built.
class ChoiceDataset {
 public:
  ChoiceDataset(std::vector<std::string> agents, std::vector<std::string> periods,
                std::vector<std::string> alternatives, std::vector<Level> levels,
                std::vector<CovariateRecord> covariates = {});

  /// Builds from label rows (one row per period, one cell per agent).
  static ChoiceDataset from_labels(std::vector<std::string> agents, std::vector<std::string> periods,
                                   std::vector<std::string> alternatives,
                                   const std::vector<std::vector<std::string>>& rows,
                                   std::vector<CovariateRecord> covariates = {});

  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::size_t period_count() const noexcept { return periods_.size(); }
  std::size_t alternative_count() const noexcept { return alternatives_.size(); }

  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::vector<std::string>& periods() const noexcept { return periods_; }
  const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }

  Level level(std::size_t agent, std::size_t period) const { return levels_[period * agents_.size() + agent]; }
  std::span<const Level> row(std::size_t period) const {
    return {levels_.data() + period * agents_.size(), agents_.size()};
  }
  std::vector<Level> column(std::size_t agent) const;
  const std::string& choice(std::size_t agent, std::size_t period) const { return label_of(level(agent, period)); }

  const std::string& label_of(Level level) const { return alternatives_[alternatives_.size() - 1 - level]; }
  std::optional<Level> level_of(std::string_view label) const;
  std::optional<std::size_t> agent_index(std::string_view label) const;

  bool has_covariates() const noexcept { return !covariates_.empty(); }
  /// Empty record when the dataset carries no covariates.
  const CovariateRecord& covariates(std::size_t period) const;
  std::set<std::string> covariate_keys() const;

  /// Copy with one more period appended at the end.
  ChoiceDataset with_period(std::string label, std::span<const Level> profile) const;
  /// Copy restricted to the given periods, in the given order.
  ChoiceDataset select_periods(std::span<const std::size_t> periods) const;
  /// Copy with every cell replaced by map[agent][level].
  ChoiceDataset relabeled(const std::vector<std::vector<Level>>& map) const;

  bool operator==(const ChoiceDataset&) const = default;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> periods_;
  std::vector<std::string> alternatives_;
  std::vector<Level> levels_;  // row-major by period
  std::vector<CovariateRecord> covariates_;  // empty, or one record per period
  std::map<std::string, Level, std::less<>> level_by_label_;
};

enum class Format { csv, json };

/// Parses CSV or JSON per the documented layouts (see README). Throws
/// ParseError naming the offending row and column.
ChoiceDataset parse_dataset(std::istream& source, Format format);
ChoiceDataset parse_dataset(std::string_view source, Format format);

std::string to_csv(const ChoiceDataset& data);
std::string to_json_text(const ChoiceDataset& data);

struct SubsampleSelector {
  std::string key;
  std::string value;
};

/// Periods whose covariate `key` equals `value`, original order kept.
/// Throws SelectionError when some period lacks the key; a value that never
/// occurs yields an empty dataset.
ChoiceDataset subsample(const ChoiceDataset& data, const SubsampleSelector& selector);

} // namespace comlearn
