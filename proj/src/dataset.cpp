#include "comlearn/dataset.hpp"

#include "comlearn/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace comlearn {

ParseError::ParseError(Kind kind, std::size_t row, std::size_t column, const std::string& what)
    : Error([&] {
        std::string msg = std::string(comlearn::to_string(kind)) + ": " + what;
        if (row != 0) msg += " (row " + std::to_string(row);
        if (row != 0 && column != 0) msg += ", column " + std::to_string(column);
        if (row != 0) msg += ")";
        return msg;
      }()),
      kind_(kind), row_(row), column_(column) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::bad_header: return "bad header";
    case ParseError::Kind::malformed_row: return "malformed row";
    case ParseError::Kind::unknown_alternative: return "unknown alternative";
    case ParseError::Kind::ragged_matrix: return "ragged matrix";
    case ParseError::Kind::duplicate_id: return "duplicate id";
    case ParseError::Kind::bad_document: return "bad document";
  }
  return "parse error";
}

namespace {

template <class Range>
void require_unique(const Range& labels, const char* what) {
  std::unordered_set<std::string> seen;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (!seen.insert(labels[k]).second)
      throw ParseError(ParseError::Kind::duplicate_id, 0, 0,
                       std::string("duplicate ") + what + " '" + labels[k] + "'");
}

} // namespace

ChoiceDataset::ChoiceDataset(std::vector<std::string> agents, std::vector<std::string> periods,
                             std::vector<std::string> alternatives, std::vector<Level> levels,
                             std::vector<CovariateRecord> covariates)
    : agents_(std::move(agents)),
      periods_(std::move(periods)),
      alternatives_(std::move(alternatives)),
      levels_(std::move(levels)),
      covariates_(std::move(covariates)) {
  if (agents_.empty()) throw DimensionMismatch("a dataset needs at least one agent");
  if (alternatives_.size() < 2) throw DimensionMismatch("a dataset needs at least two alternatives");
  require_unique(agents_, "agent");
  require_unique(periods_, "period");
  require_unique(alternatives_, "alternative");
  if (levels_.size() != agents_.size() * periods_.size())
    throw DimensionMismatch("choice matrix does not match agents x periods");
  for (Level l : levels_)
    if (l >= alternatives_.size()) throw DimensionMismatch("choice level out of range");
  if (!covariates_.empty() && covariates_.size() != periods_.size())
    throw DimensionMismatch("covariates must be given for every period or none");
  if (std::all_of(covariates_.begin(), covariates_.end(), [](const auto& r) { return r.empty(); }))
    covariates_.clear();
  const auto n = static_cast<Level>(alternatives_.size());
  for (Level pos = 0; pos < n; ++pos) level_by_label_.emplace(alternatives_[pos], n - 1 - pos);
}

ChoiceDataset ChoiceDataset::from_labels(std::vector<std::string> agents, std::vector<std::string> periods,
                                         std::vector<std::string> alternatives,
                                         const std::vector<std::vector<std::string>>& rows,
                                         std::vector<CovariateRecord> covariates) {
  if (rows.size() != periods.size()) throw DimensionMismatch("one row per period required");
  const auto n = static_cast<Level>(alternatives.size());
  std::vector<Level> levels;
  levels.reserve(rows.size() * agents.size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].size() != agents.size())
      throw ParseError(ParseError::Kind::ragged_matrix, t + 1, 0, "row has wrong number of cells");
    for (std::size_t i = 0; i < rows[t].size(); ++i) {
      auto it = std::find(alternatives.begin(), alternatives.end(), rows[t][i]);
      if (it == alternatives.end())
        throw ParseError(ParseError::Kind::unknown_alternative, t + 1, i + 1, "'" + rows[t][i] + "'");
      levels.push_back(n - 1 - static_cast<Level>(it - alternatives.begin()));
    }
  }
  return ChoiceDataset(std::move(agents), std::move(periods), std::move(alternatives), std::move(levels),
                       std::move(covariates));
}

std::vector<Level> ChoiceDataset::column(std::size_t agent) const {
  std::vector<Level> out(periods_.size());
  for (std::size_t t = 0; t < periods_.size(); ++t) out[t] = level(agent, t);
  return out;
}

std::optional<Level> ChoiceDataset::level_of(std::string_view label) const {
  auto it = level_by_label_.find(label);
  if (it == level_by_label_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ChoiceDataset::agent_index(std::string_view label) const {
  auto it = std::find(agents_.begin(), agents_.end(), label);
  if (it == agents_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - agents_.begin());
}

const CovariateRecord& ChoiceDataset::covariates(std::size_t period) const {
  static const CovariateRecord empty;
  return covariates_.empty() ? empty : covariates_[period];
}

std::set<std::string> ChoiceDataset::covariate_keys() const {
  std::set<std::string> keys;
  for (const auto& record : covariates_)
    for (const auto& [k, v] : record) keys.insert(k);
  return keys;
}

ChoiceDataset ChoiceDataset::with_period(std::string label, std::span<const Level> profile) const {
  if (profile.size() != agents_.size()) throw DimensionMismatch("profile must have one entry per agent");
  auto periods = periods_;
  periods.push_back(std::move(label));
  auto levels = levels_;
  levels.insert(levels.end(), profile.begin(), profile.end());
  auto covariates = covariates_;
  if (!covariates.empty()) covariates.emplace_back();
  return ChoiceDataset(agents_, std::move(periods), alternatives_, std::move(levels), std::move(covariates));
}

ChoiceDataset ChoiceDataset::select_periods(std::span<const std::size_t> periods) const {
  std::vector<std::string> labels;
  std::vector<Level> levels;
  std::vector<CovariateRecord> covariates;
  for (std::size_t t : periods) {
    labels.push_back(periods_.at(t));
    auto r = row(t);
    levels.insert(levels.end(), r.begin(), r.end());
    if (!covariates_.empty()) covariates.push_back(covariates_[t]);
  }
  return ChoiceDataset(agents_, std::move(labels), alternatives_, std::move(levels), std::move(covariates));
}

ChoiceDataset ChoiceDataset::relabeled(const std::vector<std::vector<Level>>& map) const {
  if (map.size() != agents_.size()) throw DimensionMismatch("relabeling needs one map per agent");
  auto levels = levels_;
  for (std::size_t t = 0; t < periods_.size(); ++t)
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      auto& cell = levels[t * agents_.size() + i];
      cell = map[i].at(cell);
    }
  return ChoiceDataset(agents_, periods_, alternatives_, std::move(levels), covariates_);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kAlternativesDirective = "#alternatives:";
constexpr std::string_view kCovariatePrefix = "#covariate:";

// Splits one CSV record. Supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          field += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty() || was_quoted)
        throw ParseError(ParseError::Kind::malformed_row, row, fields.size() + 1, "stray quote");
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      if (was_quoted)
        throw ParseError(ParseError::Kind::malformed_row, row, fields.size() + 1, "text after closing quote");
      field += c;
    }
  }
  if (quoted) throw ParseError(ParseError::Kind::malformed_row, row, fields.size() + 1, "unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos && (s.empty() || s.front() != '#')) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ChoiceDataset parse_csv(std::istream& in) {
  std::vector<std::string> alternatives{"x", "y"};
  std::string line;
  std::size_t row = 0;
  bool have_header = false;
  std::vector<std::string> agents;
  std::vector<std::string> covariate_keys;
  std::vector<std::size_t> agent_columns;
  std::vector<std::size_t> covariate_columns;
  std::size_t width = 0;
  std::vector<std::string> periods;
  std::vector<std::vector<std::string>> cells;
  std::vector<CovariateRecord> covariates;

  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (!have_header) {
      if (line.front() == '#') {
        std::string_view sv(line);
        if (sv.starts_with(kAlternativesDirective)) {
          alternatives.clear();
          for (auto& a : split_csv(sv.substr(kAlternativesDirective.size()), row)) alternatives.push_back(trim(a));
          for (std::size_t k = 0; k < alternatives.size(); ++k)
            if (alternatives[k].empty())
              throw ParseError(ParseError::Kind::bad_header, row, k + 1, "empty alternative label");
          if (alternatives.size() < 2)
            throw ParseError(ParseError::Kind::bad_header, row, 0, "need at least two alternatives");
          std::unordered_set<std::string> seen;
          for (std::size_t k = 0; k < alternatives.size(); ++k)
            if (!seen.insert(alternatives[k]).second)
              throw ParseError(ParseError::Kind::duplicate_id, row, k + 1, "alternative '" + alternatives[k] + "'");
        }
        continue;  // other comment lines are ignored
      }
      auto header = split_csv(line, row);
      for (auto& h : header) h = trim(h);
      if (header.front() != "period")
        throw ParseError(ParseError::Kind::bad_header, row, 1, "first column must be 'period'");
      width = header.size();
      std::unordered_set<std::string> seen_agents, seen_keys;
      for (std::size_t c = 1; c < header.size(); ++c) {
        std::string_view h(header[c]);
        if (h.starts_with(kCovariatePrefix)) {
          std::string key(h.substr(kCovariatePrefix.size()));
          if (key.empty()) throw ParseError(ParseError::Kind::bad_header, row, c + 1, "empty covariate key");
          if (!seen_keys.insert(key).second)
            throw ParseError(ParseError::Kind::duplicate_id, row, c + 1, "covariate '" + key + "'");
          covariate_keys.push_back(std::move(key));
          covariate_columns.push_back(c);
        } else {
          if (h.empty()) throw ParseError(ParseError::Kind::bad_header, row, c + 1, "empty agent label");
          if (!seen_agents.insert(header[c]).second)
            throw ParseError(ParseError::Kind::duplicate_id, row, c + 1, "agent '" + header[c] + "'");
          agents.push_back(header[c]);
          agent_columns.push_back(c);
        }
      }
      if (agents.empty()) throw ParseError(ParseError::Kind::bad_header, row, 0, "no agent columns");
      have_header = true;
      continue;
    }

    auto fields = split_csv(line, row);
    if (fields.size() != width)
      throw ParseError(ParseError::Kind::ragged_matrix, row, std::min(fields.size(), width) + 1,
                       "expected " + std::to_string(width) + " cells, found " + std::to_string(fields.size()));
    for (auto& f : fields) f = trim(f);
    if (fields[0].empty()) throw ParseError(ParseError::Kind::malformed_row, row, 1, "empty period label");
    if (std::find(periods.begin(), periods.end(), fields[0]) != periods.end())
      throw ParseError(ParseError::Kind::duplicate_id, row, 1, "period '" + fields[0] + "'");
    periods.push_back(fields[0]);
    std::vector<std::string> choice_row;
    for (std::size_t c : agent_columns) {
      if (std::find(alternatives.begin(), alternatives.end(), fields[c]) == alternatives.end())
        throw ParseError(ParseError::Kind::unknown_alternative, row, c + 1, "'" + fields[c] + "'");
      choice_row.push_back(fields[c]);
    }
    cells.push_back(std::move(choice_row));
    CovariateRecord record;
    for (std::size_t k = 0; k < covariate_columns.size(); ++k) {
      const auto& v = fields[covariate_columns[k]];
      if (v.empty())
        throw ParseError(ParseError::Kind::malformed_row, row, covariate_columns[k] + 1, "empty covariate value");
      record.emplace(covariate_keys[k], v);
    }
    covariates.push_back(std::move(record));
  }
  if (!have_header) throw ParseError(ParseError::Kind::bad_header, row, 0, "missing header line");
  if (covariate_keys.empty()) covariates.clear();
  return ChoiceDataset::from_labels(std::move(agents), std::move(periods), std::move(alternatives), cells,
                                    std::move(covariates));
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

std::vector<std::string> string_array(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_array())
    throw ParseError(ParseError::Kind::bad_document, 0, 0, std::string("'") + field + "' must be an array");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < doc[field].size(); ++k) {
    const auto& v = doc[field][k];
    if (!v.is_string())
      throw ParseError(ParseError::Kind::bad_document, 0, k + 1, std::string("'") + field + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

ChoiceDataset parse_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Kind::bad_document, 0, 0, e.what());
  }
  if (!doc.is_object()) throw ParseError(ParseError::Kind::bad_document, 0, 0, "top level must be an object");
  auto agents = string_array(doc, "agents");
  auto periods = string_array(doc, "periods");
  std::vector<std::string> alternatives{"x", "y"};
  if (doc.contains("alternatives")) alternatives = string_array(doc, "alternatives");
  if (!doc.contains("choices") || !doc["choices"].is_array())
    throw ParseError(ParseError::Kind::bad_document, 0, 0, "'choices' must be an array");
  const auto& choices = doc["choices"];
  if (choices.size() != periods.size())
    throw ParseError(ParseError::Kind::ragged_matrix, 0, 0,
                     "'choices' has " + std::to_string(choices.size()) + " rows for " +
                         std::to_string(periods.size()) + " periods");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t < choices.size(); ++t) {
    const auto& r = choices[t];
    if (!r.is_array()) throw ParseError(ParseError::Kind::malformed_row, t + 1, 0, "row must be an array");
    if (r.size() != agents.size())
      throw ParseError(ParseError::Kind::ragged_matrix, t + 1, std::min(r.size(), agents.size()) + 1,
                       "expected " + std::to_string(agents.size()) + " cells");
    std::vector<std::string> row;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!r[i].is_string()) throw ParseError(ParseError::Kind::malformed_row, t + 1, i + 1, "cell must be a string");
      row.push_back(r[i].get<std::string>());
    }
    rows.push_back(std::move(row));
  }
  std::vector<CovariateRecord> covariates;
  if (doc.contains("covariates") && !doc["covariates"].is_null()) {
    const auto& cov = doc["covariates"];
    if (!cov.is_object()) throw ParseError(ParseError::Kind::bad_document, 0, 0, "'covariates' must be an object");
    covariates.resize(periods.size());
    for (const auto& [period, record] : cov.items()) {
      auto it = std::find(periods.begin(), periods.end(), period);
      if (it == periods.end())
        throw ParseError(ParseError::Kind::bad_document, 0, 0, "covariates for unknown period '" + period + "'");
      if (!record.is_object())
        throw ParseError(ParseError::Kind::bad_document, 0, 0, "covariate record must be an object");
      auto& dest = covariates[static_cast<std::size_t>(it - periods.begin())];
      for (const auto& [key, value] : record.items()) {
        if (!value.is_string())
          throw ParseError(ParseError::Kind::bad_document, 0, 0, "covariate values must be strings");
        dest.emplace(key, value.get<std::string>());
      }
    }
  }
  // Duplicates are reported by the constructor; recheck here to attach positions.
  for (const auto* list : {&agents, &periods, &alternatives}) {
    std::unordered_set<std::string> seen;
    for (std::size_t k = 0; k < list->size(); ++k)
      if (!seen.insert((*list)[k]).second)
        throw ParseError(ParseError::Kind::duplicate_id, 0, k + 1, "'" + (*list)[k] + "'");
  }
  if (alternatives.size() < 2) throw ParseError(ParseError::Kind::bad_document, 0, 0, "need at least two alternatives");
  if (agents.empty()) throw ParseError(ParseError::Kind::bad_document, 0, 0, "need at least one agent");
  return ChoiceDataset::from_labels(std::move(agents), std::move(periods), std::move(alternatives), rows,
                                    std::move(covariates));
}

} // namespace

ChoiceDataset parse_dataset(std::istream& source, Format format) {
  return format == Format::csv ? parse_csv(source) : parse_json(source);
}

ChoiceDataset parse_dataset(std::string_view source, Format format) {
  std::istringstream in{std::string(source)};
  return parse_dataset(in, format);
}

std::string to_csv(const ChoiceDataset& data) {
  std::ostringstream out;
  out << "#alternatives:";
  for (std::size_t k = 0; k < data.alternatives().size(); ++k)
    out << (k ? "," : "") << quote_csv(data.alternatives()[k]);
  out << "\nperiod";
  for (const auto& a : data.agents()) out << ',' << quote_csv(a);
  auto keys = data.covariate_keys();
  for (const auto& k : keys) out << ',' << std::string(kCovariatePrefix) << k;
  out << '\n';
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    out << quote_csv(data.periods()[t]);
    for (std::size_t i = 0; i < data.agent_count(); ++i) out << ',' << quote_csv(data.choice(i, t));
    for (const auto& k : keys) {
      auto it = data.covariates(t).find(k);
      out << ',' << quote_csv(it == data.covariates(t).end() ? std::string() : it->second);
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json_text(const ChoiceDataset& data) {
  nlohmann::ordered_json doc;
  doc["agents"] = data.agents();
  doc["periods"] = data.periods();
  doc["alternatives"] = data.alternatives();
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    auto r = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < data.agent_count(); ++i) r.push_back(data.choice(i, t));
    rows.push_back(std::move(r));
  }
  doc["choices"] = std::move(rows);
  if (data.has_covariates()) {
    nlohmann::ordered_json cov = nlohmann::ordered_json::object();
    for (std::size_t t = 0; t < data.period_count(); ++t) {
      nlohmann::ordered_json rec = nlohmann::ordered_json::object();
      for (const auto& [k, v] : data.covariates(t)) rec[k] = v;
      cov[data.periods()[t]] = std::move(rec);
    }
    doc["covariates"] = std::move(cov);
  }
  return doc.dump(2) + "\n";
}

ChoiceDataset subsample(const ChoiceDataset& data, const SubsampleSelector& selector) {
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < data.period_count(); ++t) {
    const auto& record = data.covariates(t);
    auto it = record.find(selector.key);
    if (it == record.end())
      throw SelectionError("period '" + data.periods()[t] + "' has no covariate '" + selector.key + "'");
    if (it->second == selector.value) keep.push_back(t);
  }
  return data.select_periods(keep);
}

} // namespace comlearn
