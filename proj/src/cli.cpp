#include "comlearn/cli.hpp"

#include "comlearn/analytics.hpp"
#include "comlearn/comonotone.hpp"
#include "comlearn/cycles.hpp"
#include "comlearn/permute.hpp"
#include "comlearn/serialize.hpp"
#include "comlearn/witness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace comlearn::cli {

namespace {

const std::map<std::string, Model> model_names{{"baseline", Model::baseline},
                                               {"general", Model::general},
                                               {"multi", Model::multi},
                                               {"comonotone-invariant", Model::comonotone_invariant},
                                               {"comonotone-varying", Model::comonotone_varying}};

std::string name_of(Model m) {
  for (const auto& [name, model] : model_names)
    if (model == m) return name;
  return "?";
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
    throw SelectionError("expected agent=alternative, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<Rational> parse_cutoffs(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::invalid_argument&) {
      throw DomainError("cannot read cutoff '" + item + "'");
    }
  }
  return out;
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_file(const std::string& path, std::istream& in) {
  if (path == "-") return read_all(in);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "'");
  return read_all(f);
}

ChoiceDataset load(const RunConfig& c, std::istream& in) {
  Format format = Format::csv;
  if (c.format) format = *c.format;
  else if (c.input.size() >= 5 && c.input.ends_with(".json")) format = Format::json;
  return parse_dataset(read_file(c.input, in), format);
}

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(indent, ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const Json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_primitive()) {
      out << pad << it.key() << ": " << scalar(v) << '\n';
    } else if (flat(v)) {
      out << pad << it.key() << ":";
      for (const auto& e : v) out << ' ' << scalar(e);
      out << '\n';
    } else if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render_text(v, out, indent + 2);
    } else {
      out << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          out << pad << "  -\n";
          render_text(e, out, indent + 4);
        } else if (flat(e)) {
          out << pad << "  -";
          for (const auto& x : e) out << ' ' << scalar(x);
          out << '\n';
        } else {
          out << pad << "  - " << e.dump() << '\n';
        }
      }
    }
  }
}

void emit(const RunConfig& c, const Json& report, std::ostream& out) {
  if (c.output == OutputFormat::json) out << report.dump(2) << '\n';
  else render_text(report, out, 0);
}

struct Outcome {
  Json report;
  int status = exit_ok;
};

Json header(const std::string& command, const ChoiceDataset& data) {
  return Json{{"command", command},
              {"agents", data.agent_count()},
              {"periods", data.period_count()},
              {"alternatives", data.alternatives()}};
}

[[noreturn]] void self_check_failed(const std::string& detail) {
  throw std::logic_error("emitted witness failed its own verification: " + detail);
}

Json common_belief_witness(const ChoiceDataset& data) {
  auto w = construct_witness(data);
  auto v = verify_witness(data, w);
  if (!v) self_check_failed(v.detail);
  return to_json(data, w);
}

Json comonotone_witness(const RunConfig& c, const ChoiceDataset& data) {
  auto w = c.model == Model::comonotone_varying
               ? construct_comonotone_varying(data, c.cutoffs)
               : construct_comonotone_invariant(data, c.cutoffs, c.weak ? Strength::weak : Strength::strict);
  auto v = verify_comonotone(data, w);
  if (!v) self_check_failed(v.detail);
  return to_json(data, w, c.enumerate_joint);
}

void validate(const RunConfig& c, const ChoiceDataset& data) {
  const bool binary = data.alternative_count() == 2;
  const bool comonotone = c.model == Model::comonotone_invariant || c.model == Model::comonotone_varying;
  if ((c.model == Model::baseline || comonotone) && !binary)
    throw UnsupportedShape("model " + name_of(c.model) + " needs exactly two alternatives; use --model multi");
  if (c.cutoffs && !comonotone) throw DomainError("--cutoffs applies only to the co-monotone models");
  if (c.weak && c.model != Model::comonotone_invariant)
    throw DomainError("--weak applies only to --model comonotone-invariant");
  if (c.enumerate_joint && !comonotone) throw DomainError("--enumerate-joint applies only to the co-monotone models");
  if (c.enumerate_joint && data.agent_count() > 6) throw SizeGuardError("--enumerate-joint is limited to 6 agents");
  if (c.cutoffs) {
    if (c.cutoffs->size() != data.agent_count())
      throw DimensionMismatch("--cutoffs needs " + std::to_string(data.agent_count()) + " values");
    for (const auto& u : *c.cutoffs)
      if (u <= 0 || u >= 1) throw DomainError("cutoffs must lie strictly inside (0,1)");
  }
}

// Shared by check and witness; `want_witness` attaches one when the data pass.
Outcome analyse(const RunConfig& c, const ChoiceDataset& data, bool want_witness) {
  validate(c, data);
  Outcome o{header("check", data)};
  o.report["model"] = name_of(c.model);
  switch (c.model) {
    case Model::baseline:
    case Model::multi:
      if (auto cycle = find_cycle(data)) {
        o.report["verdict"] = "cycle";
        o.report["cycle"] = to_json(data, *cycle);
        o.status = exit_refuted;
      } else {
        o.report["verdict"] = "rationalizable";
        if (want_witness) o.report["witness"] = common_belief_witness(data);
      }
      break;
    case Model::general: {
      std::optional<PermutationAssignment> kappa;
      if (data.alternative_count() == 2) {
        Json blocked = Json::array();
        for (const auto& b : blocked_combinations(data)) blocked.push_back(to_json(data, b));
        o.report["blocked_combinations"] = blocked;
        kappa = solve_general_preferences_binary(data);
      } else {
        kappa = solve_general_preferences_multi(data);
      }
      if (!kappa) {
        o.report["verdict"] = "all permutations blocked";
        o.report["permutation"] = nullptr;
        o.status = exit_refuted;
        break;
      }
      o.report["verdict"] = "rationalizable";
      o.report["permutation"] = to_json(data, *kappa);
      if (want_witness) o.report["witness"] = common_belief_witness(apply_permutation(data, *kappa));
      break;
    }
    case Model::comonotone_invariant:
      if (auto cycle = find_consecutive_cycle(data)) {
        o.report["verdict"] = "consecutive cycle";
        o.report["cycle"] = to_json(data, *cycle);
        o.status = exit_refuted;
        break;
      }
      [[fallthrough]];
    case Model::comonotone_varying:
      o.report["verdict"] = "rationalizable";
      // Built even when not printed: this validates the cutoffs end to end.
      {
        auto w = comonotone_witness(c, data);
        if (want_witness) o.report["witness"] = std::move(w);
      }
      break;
  }
  return o;
}

Outcome cmd_witness(const RunConfig& c, const ChoiceDataset& data) {
  if (c.model == Model::general)
    throw DomainError("the witness command covers the fixed-preference models; use check --model general --emit-witness");
  auto o = analyse(c, data, true);
  if (o.status == exit_ok) o.report = o.report["witness"];
  return o;
}

Outcome cmd_verify(const RunConfig& c, const ChoiceDataset& data, std::istream& in) {
  if (c.witness_path.empty()) throw DomainError("verify needs --witness FILE");
  Json doc;
  try {
    doc = Json::parse(read_file(c.witness_path, in));
  } catch (const Json::parse_error& e) {
    throw ParseError(ParseError::Kind::bad_document, 0, 0, std::string("witness is not JSON: ") + e.what());
  }
  Outcome o{header("verify", data)};
  const auto model = doc.is_object() && doc.contains("model") ? doc["model"] : Json(nullptr);
  bool accepted;
  if (model == "common-belief") {
    auto v = verify_witness(data, witness_from_json(data, doc));
    accepted = v.accepted;
    o.report["model"] = model;
    o.report["result"] = to_json(data, v);
  } else if (model == "co-monotone") {
    auto v = verify_comonotone(data, comonotone_witness_from_json(data, doc));
    accepted = v.accepted;
    o.report["model"] = model;
    o.report["result"] = to_json(data, v);
  } else {
    throw ParseError(ParseError::Kind::bad_document, 0, 0, "witness has no known \"model\" field");
  }
  o.report["verdict"] = accepted ? "accepted" : "rejected";
  o.status = accepted ? exit_ok : exit_refuted;
  return o;
}

Outcome cmd_discriminate(const RunConfig& c, const ChoiceDataset& data) {
  if (c.key.empty() || c.favored.empty()) throw DomainError("discriminate needs --key and --favored");
  Outcome o{header("discriminate", data)};
  auto r = audit_discrimination(data, c.key, c.favored);
  auto body = to_json(r);
  if (r.full_sample_cycle) body["full_sample"]["cycle"] = to_json(data, *r.full_sample_cycle);
  o.report.update(body);
  return o;
}

Outcome cmd_predict(const RunConfig& c, const ChoiceDataset& data) {
  Outcome o{header("predict", data)};
  try {
    auto r = predict_counterfactuals(data, {c.fixed, c.any_of});
    o.report["verdict"] = "cycle-free";
    o.report.update(to_json(data, r));
  } catch (const CycleError& e) {
    o.report["verdict"] = "cycle";
    o.report["cycle"] = to_json(data, e.witness());
    o.status = exit_refuted;
  }
  return o;
}

void add_common(CLI::App* sub, RunConfig& c, std::string& format, std::string& output) {
  sub->add_option("input", c.input, "data file (CSV or JSON); '-' or nothing reads standard input");
  sub->add_option("--format", format, "input format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", output, "report format")->check(CLI::IsMember({"json", "text"}));
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string format, output = "json", model = "baseline", cutoffs;
  std::vector<std::string> fixed, any_of;

  CLI::App app{"Tests panel choice data against models of agents learning a common state", "comlearn"};
  app.require_subcommand(1);
  auto* check = app.add_subcommand("check", "test whether the data are rationalizable");
  auto* witness = app.add_subcommand("witness", "print a verified witness");
  auto* verify = app.add_subcommand("verify", "re-check a witness against the data");
  auto* discriminate = app.add_subcommand("discriminate", "audit for discrimination across a binary covariate");
  auto* predict = app.add_subcommand("predict", "list next-period profiles that keep the data cycle-free");

  for (auto* sub : {check, witness}) {
    sub->add_option("--model", model, "model to test")
        ->check(CLI::IsMember({"baseline", "general", "multi", "comonotone-invariant", "comonotone-varying"}));
    sub->add_option("--cutoffs", cutoffs, "comma-separated cutoffs, one per agent (co-monotone models)");
    sub->add_flag("--enumerate-joint", c.enumerate_joint, "list the joint signal distribution");
    sub->add_flag("--weak", c.weak, "allow uninformative signals (comonotone-invariant)");
  }
  check->add_flag("--emit-witness", c.emit_witness, "attach a verified witness");
  verify->add_option("--witness", c.witness_path, "witness JSON file")->required();
  discriminate->add_option("--key", c.key, "covariate column")->required();
  discriminate->add_option("--favored", c.favored, "value of the favored group")->required();
  predict->add_option("--fix", fixed, "agent=alternative; repeatable, all must hold")->allow_extra_args(false);
  predict->add_option("--any-of", any_of, "agent=alternative; repeatable, at least one must hold")->allow_extra_args(false);
  for (auto* sub : {check, witness, verify, discriminate, predict}) add_common(sub, c, format, output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    if (!format.empty()) c.format = format == "json" ? Format::json : Format::csv;
    c.output = output == "text" ? OutputFormat::text : OutputFormat::json;
    c.model = model_names.at(model);
    if (!cutoffs.empty()) c.cutoffs = parse_cutoffs(cutoffs);
    for (const auto& f : fixed) c.fixed.push_back(split_assignment(f));
    for (const auto& f : any_of) c.any_of.push_back(split_assignment(f));

    auto data = load(c, in);
    Outcome o;
    if (c.command == "check") o = analyse(c, data, c.emit_witness);
    else if (c.command == "witness") o = cmd_witness(c, data);
    else if (c.command == "verify") o = cmd_verify(c, data, in);
    else if (c.command == "discriminate") o = cmd_discriminate(c, data);
    else o = cmd_predict(c, data);
    emit(c, o.report, out);
    return o.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
  }
  return exit_input;
}

} // namespace comlearn::cli
