#include "sybil/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "sybil/election_file.hpp"
#include "sybil/estimation.hpp"
#include "sybil/harness.hpp"
#include "sybil/ordinal_rules.hpp"
#include "sybil/parameter_rules.hpp"
#include "sybil/proposal_rules.hpp"
#include "sybil/rational.hpp"

namespace sybil::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(parse_rational(item));
  return out;
}

std::string str(const Rational& value) { return to_canonical_string(value); }

Variant parse_variant(const std::string& name) {
  if (name == "conservative") return Variant::Conservative;
  if (name == "permissive") return Variant::Permissive;
  throw UsageError("unknown variant '" + name + "'");
}

ContestScope parse_scope(const std::string& name) {
  if (name == "all") return ContestScope::AllAlternatives;
  if (name == "reality-viable") return ContestScope::RealityViable;
  throw UsageError("unknown scope '" + name + "'");
}

std::string_view to_string(Variant variant) {
  return variant == Variant::Conservative ? "conservative" : "permissive";
}

std::string ballot_string(Ballot b) { return b == Ballot::Proposal ? "p" : "r"; }

std::string ranking_string(const Ranking& ranking, const AlternativeSet& alternatives) {
  std::string out;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (i != 0) out += ',';
    out += alternatives.name(ranking[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> winner_names(const DecisionOutcome& outcome, const AlternativeSet& alternatives) {
  std::vector<std::string> out;
  for (auto a : outcome.winners) out.push_back(alternatives.name(a));
  return out;
}

Json contest_json(const Contest& c, const AlternativeSet& alternatives) {
  return Json{{"kind", to_string(c.kind)},
              {"challenger", alternatives.name(c.challenger)},
              {"incumbent", alternatives.name(c.incumbent)},
              {"support", c.support},
              {"total", c.total},
              {"delta", str(c.delta.value())},
              {"passed", c.passed},
              {"at_threshold", c.at_threshold}};
}

Json outcome_json(const DecisionOutcome& outcome, const AlternativeSet& alternatives) {
  Json trace = Json::array();
  for (const auto& c : outcome.trace) trace.push_back(contest_json(c, alternatives));
  return Json{{"elected", winner_names(outcome, alternatives)}, {"trace", std::move(trace)}};
}

Json optional_decimal(const std::optional<Decimal>& value) {
  return value ? Json(value->to_string()) : Json(nullptr);
}

Json decision_json(const ParameterDecision& d) {
  return Json{{"value", d.value.to_string()},
              {"branch", to_string(d.branch)},
              {"median", optional_decimal(d.median)},
              {"top_removed_median", optional_decimal(d.top_removed_median)},
              {"bottom_removed_median", optional_decimal(d.bottom_removed_median)},
              {"above", d.above},
              {"below", d.below}};
}

std::vector<std::string> decimal_strings(const std::vector<Decimal>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

void print_json_text(const Json& doc, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      print_json_text(value, out, indent + 2);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << pad << key << ":\n";
      for (const auto& item : value) {
        out << pad << "  -";
        std::string sep = " ";
        for (const auto& [k, v] : item.items()) {
          out << sep << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
          sep = " ";
        }
        out << '\n';
      }
    } else if (value.is_array()) {
      std::vector<std::string> items;
      for (const auto& v : value) items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      out << pad << key << ": " << join(items, " ") << '\n';
    } else {
      out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
}

void emit(const Json& doc, const std::string& format, std::ostream& out) {
  if (format == "structured") {
    out << doc.dump(2) << '\n';
  } else {
    print_json_text(doc, out);
  }
}

// decide

struct DecideArgs {
  std::string file;
  std::string rule;
  std::string variant = "conservative";
  std::string scope = "all";
  std::string order;
  std::string sigma;
  std::string delta;
  std::string format = "text";
};

int decide(const DecideArgs& args, std::ostream& out) {
  const ElectionFile election = parse_election_file(args.file);
  std::optional<SigmaBound> sigma = election.sigma;
  if (!args.sigma.empty()) sigma = SigmaBound(parse_rational(args.sigma));
  Delta delta;
  if (!args.delta.empty()) {
    delta = Delta(parse_rational(args.delta));
  } else if (!args.sigma.empty()) {
    delta = min_safe_delta(*sigma);
  } else if (election.delta) {
    delta = *election.delta;
  }

  Json doc;
  doc["kind"] = to_string(election.kind());
  doc["rule"] = args.rule;
  doc["voters"] = std::visit([](const auto& p) { return p.size(); }, election.profile);
  doc["sigma"] = sigma ? Json(str(sigma->value())) : Json(nullptr);

  auto incompatible = [&] {
    return UsageError("rule '" + args.rule + "' does not apply to " + std::string(to_string(election.kind())) +
                      " elections");
  };

  if (const auto* binary = std::get_if<BinaryProfile>(&election.profile)) {
    const AlternativeSet alternatives({"r", "p"}, "r");
    DecisionOutcome outcome;
    if (args.rule == "supermajority") {
      doc["delta"] = str(delta.value());
      outcome = supermajority_rule(*binary, delta);
    } else if (args.rule == "majority") {
      outcome = majority_base_rule(*binary);
    } else {
      throw incompatible();
    }
    doc.update(outcome_json(outcome, alternatives));
  } else if (const auto* ordinal = std::get_if<OrdinalProfile>(&election.profile)) {
    const auto& alternatives = ordinal->alternatives();
    const Variant variant = parse_variant(args.variant);
    const ContestScope scope = parse_scope(args.scope);
    doc["variant"] = to_string(variant);
    DecisionOutcome outcome;
    if (args.rule == "condorcet") {
      outcome = base_condorcet_rule(*ordinal, variant);
    } else if (args.rule == "supermajority-condorcet") {
      doc["delta"] = str(delta.value());
      doc["scope"] = args.scope;
      outcome = supermajority_condorcet_rule(*ordinal, delta, variant, scope);
    } else if (args.rule == "agenda") {
      std::vector<AlternativeIndex> order = default_agenda_order(alternatives);
      if (!args.order.empty()) {
        order.clear();
        for (const auto& id : split_list(args.order)) order.push_back(alternatives.index_of(id));
      }
      std::vector<std::string> names;
      for (auto a : order) names.push_back(alternatives.name(a));
      doc["delta"] = str(delta.value());
      doc["scope"] = args.scope;
      doc["order"] = names;
      outcome = amendment_agenda(*ordinal, delta, variant, order, scope);
    } else {
      throw incompatible();
    }
    doc.update(outcome_json(outcome, alternatives));
  } else {
    const auto& parameter = std::get<ParameterProfile>(election.profile);
    const SigmaBound bound = sigma.value_or(SigmaBound(Rational(0)));
    doc["current"] = parameter.current.to_string();
    if (args.rule == "median-base") {
      const MedianBand band = median_base_rule(parameter);
      doc["median"] = band.median.to_string();
      doc["band"] = decimal_strings(band.members);
    } else if (args.rule == "simple-update") {
      doc.update(decision_json(simple_update(parameter, bound)));
    } else if (args.rule == "suppress-outer") {
      doc.update(decision_json(suppress_outer_sigma(parameter, bound)));
    } else {
      throw incompatible();
    }
  }
  emit(doc, args.format, out);
  return kExitOk;
}

// curve

struct CurveArgs {
  std::string sigma = "0,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9,0.95,1";
  std::string delta = "0,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
  std::string format = "text";
};

int curve(const CurveArgs& args, std::ostream& out) {
  const auto sigmas = rational_list(args.sigma);
  const auto delta_items = split_list(args.delta);
  Json rows = Json::array();
  if (args.format != "structured") out << "sigma,delta,rho,achievable\n";
  for (const auto& s : sigmas) {
    const SigmaBound sigma(s);
    for (const auto& item : delta_items) {
      const Delta delta = item == "sigma/2" ? min_safe_delta(sigma) : Delta(parse_rational(item));
      std::string rho = "inf";
      bool achievable = false;
      if (sigma.value() != Rational(1)) {
        const ConservatismPoint point = conservatism(sigma, delta);
        rho = str(point.rho);
        achievable = !point.unachievable;
      }
      if (args.format == "structured") {
        rows.push_back(Json{{"sigma", str(sigma.value())},
                            {"delta", str(delta.value())},
                            {"rho", rho},
                            {"achievable", achievable}});
      } else {
        out << str(sigma.value()) << ',' << str(delta.value()) << ',' << rho << ','
            << (achievable ? "true" : "false") << '\n';
      }
    }
  }
  if (args.format == "structured") out << rows.dump(2) << '\n';
  return kExitOk;
}

// audit

struct AuditArgs {
  std::string kind = "binary";
  std::string rule;
  std::string base;
  std::string property = "safety";
  std::string variant = "conservative";
  std::string scope = "all";
  std::string order;
  std::string sigma;
  std::string delta;
  std::string grid = "0,1,2,3,4";
  std::string search = "existential";
  std::size_t n = 0;
  std::size_t min_n = 1;
  std::size_t m = 3;
  std::uint64_t budget = 500'000'000;
  std::uint64_t seed = 1;
  std::size_t random = 0;
  unsigned threads = 0;
  std::string format = "text";
};

Json electorate_json(const Electorate& electorate) {
  std::vector<std::uint32_t> genuine;
  std::vector<std::uint32_t> sybils;
  for (const auto& id : electorate.genuine()) genuine.push_back(id.value);
  for (const auto& id : electorate.sybils()) sybils.push_back(id.value);
  return Json{{"genuine", genuine}, {"sybils", sybils}};
}

Json witness_json(const audit::Witness& witness) {
  return std::visit(
      [](const auto& w) -> Json {
        using T = std::decay_t<decltype(w)>;
        Json doc = electorate_json(w.instance.electorate);
        doc["configured_sigma"] = str(w.instance.configured.value());
        if constexpr (std::is_same_v<T, audit::BinaryWitness>) {
          const AlternativeSet alternatives({"r", "p"}, "r");
          std::vector<std::string> ballots;
          for (auto b : w.instance.profile.votes) ballots.push_back(ballot_string(b));
          doc["ballots"] = ballots;
          doc["rule_output"] = winner_names(w.rule_output, alternatives);
          if (w.base_output) doc["base_output"] = winner_names(*w.base_output, alternatives);
        } else if constexpr (std::is_same_v<T, audit::OrdinalWitness>) {
          const auto& alternatives = w.instance.profile.alternatives();
          std::vector<std::string> ballots;
          for (const auto& r : w.instance.profile.rankings()) ballots.push_back(ranking_string(r, alternatives));
          doc["ballots"] = ballots;
          doc["rule_output"] = winner_names(w.rule_output, alternatives);
          if (w.base_output) doc["base_output"] = winner_names(*w.base_output, alternatives);
          if (w.target) doc["target"] = alternatives.name(*w.target);
        } else {
          doc["current"] = w.instance.profile.current.to_string();
          doc["ballots"] = decimal_strings(w.instance.profile.ideal_points);
          doc["rule_output"] = w.rule_output.value.to_string();
          if (w.base_output) {
            doc["base_median"] = w.base_output->median.to_string();
            doc["base_band"] = decimal_strings(w.base_output->members);
          }
          if (w.other_output) doc["base_rule_output"] = w.other_output->value.to_string();
          if (w.target) doc["target"] = w.target->to_string();
          if (w.direction) doc["direction"] = audit::to_string(*w.direction);
        }
        return doc;
      },
      witness);
}

audit::Property parse_property(const std::string& name) {
  if (name == "safety") return audit::Property::Safety;
  if (name == "liveness") return audit::Property::Liveness;
  if (name == "less-conservative") return audit::Property::LessConservative;
  throw UsageError("unknown property '" + name + "'");
}

audit::PenetrationPlan plan_for(const AuditArgs& args, bool strict) {
  if (args.sigma.empty()) return audit::PenetrationPlan::true_ratio();
  const Rational sigma = parse_rational(args.sigma);
  return strict ? audit::PenetrationPlan::below(sigma) : audit::PenetrationPlan::at_most(sigma);
}

/// Delta fixed by --delta, else half the configured bound.
std::function<Delta(const SigmaBound&)> delta_policy(const AuditArgs& args) {
  if (!args.delta.empty()) {
    const Delta fixed(parse_rational(args.delta));
    return [fixed](const SigmaBound&) { return fixed; };
  }
  return [](const SigmaBound& sigma) { return min_safe_delta(sigma); };
}

audit::RuleFactory<audit::BinaryRule> binary_rule(const std::string& name, const AuditArgs& args) {
  if (name == "supermajority") {
    auto delta = delta_policy(args);
    return [delta](const SigmaBound& sigma) -> audit::BinaryRule {
      const Delta d = delta(sigma);
      return [d](const BinaryProfile& p) { return supermajority_rule(p, d); };
    };
  }
  if (name == "majority") return audit::fixed_rule<audit::BinaryRule>(majority_base_rule);
  throw UsageError("unknown binary rule '" + name + "'");
}

audit::RuleFactory<audit::OrdinalRule> ordinal_rule(const std::string& name, const AuditArgs& args) {
  const Variant variant = parse_variant(args.variant);
  const ContestScope scope = parse_scope(args.scope);
  if (name == "condorcet") {
    return audit::fixed_rule<audit::OrdinalRule>(
        [variant](const PairwiseTally& t) { return base_condorcet_rule(t, variant); });
  }
  auto delta = delta_policy(args);
  if (name == "supermajority-condorcet") {
    return [=](const SigmaBound& sigma) -> audit::OrdinalRule {
      const Delta d = delta(sigma);
      return [=](const PairwiseTally& t) { return supermajority_condorcet_rule(t, d, variant, scope); };
    };
  }
  if (name == "agenda") {
    const AlternativeSet alternatives = audit::OrdinalUniverse{args.m, 1, 1, {}}.alternative_set();
    std::vector<AlternativeIndex> order = default_agenda_order(alternatives);
    if (!args.order.empty()) {
      order.clear();
      for (const auto& id : split_list(args.order)) order.push_back(alternatives.index_of(id));
    }
    return [=](const SigmaBound& sigma) -> audit::OrdinalRule {
      const Delta d = delta(sigma);
      return [=](const PairwiseTally& t) { return amendment_agenda(t, d, variant, order, scope); };
    };
  }
  throw UsageError("unknown ordinal rule '" + name + "'");
}

audit::RuleFactory<audit::ParameterRule> parameter_rule(const std::string& name) {
  if (name == "simple-update") {
    return [](const SigmaBound& sigma) -> audit::ParameterRule {
      return [sigma](const ParameterProfile& p) { return simple_update(p, sigma); };
    };
  }
  if (name == "suppress-outer") {
    return [](const SigmaBound& sigma) -> audit::ParameterRule {
      return [sigma](const ParameterProfile& p) { return suppress_outer_sigma(p, sigma); };
    };
  }
  throw UsageError("unknown parameter rule '" + name + "'");
}

void require_base(const AuditArgs& args, const std::string& expected) {
  if (args.base.empty()) throw UsageError("--base is required for this property");
  if (args.base != expected) throw UsageError("base rule must be '" + expected + "'");
}

int audit_command(const AuditArgs& args, std::ostream& out) {
  if (args.rule.empty()) throw UsageError("--rule is required");
  const audit::Property property = parse_property(args.property);
  audit::AuditOptions options;
  options.budget = args.budget;
  options.threads = args.threads;
  if (args.search == "existential") {
    options.search = audit::LivenessSearch::Existential;
  } else if (args.search == "every-unanimous") {
    options.search = audit::LivenessSearch::EveryUnanimousTarget;
  } else {
    throw UsageError("unknown liveness search '" + args.search + "'");
  }

  audit::AuditVerdict verdict;
  Json doc;
  doc["kind"] = args.kind;
  doc["property"] = audit::to_string(property);
  doc["rule"] = args.rule;
  if (!args.base.empty()) doc["base"] = args.base;
  doc["sigma"] = args.sigma.empty() ? Json("true ratio") : Json(str(parse_rational(args.sigma)));
  doc["delta"] = args.delta.empty() ? Json("sigma/2") : Json(str(parse_rational(args.delta)));

  if (args.kind == "binary") {
    const audit::BinaryUniverse universe{args.min_n, args.n == 0 ? 9 : args.n, plan_for(args, false)};
    doc["n"] = universe.max_n;
    const auto rule = binary_rule(args.rule, args);
    if (property == audit::Property::Safety) {
      require_base(args, "majority");
      verdict = audit::exhaustive_safety(rule, majority_base_rule, universe, options);
    } else if (property == audit::Property::Liveness) {
      verdict = audit::check_liveness(rule, universe, options);
    } else {
      throw UsageError("less-conservative applies to parameter rules only");
    }
  } else if (args.kind == "ordinal") {
    const audit::OrdinalUniverse universe{args.m, args.min_n, args.n == 0 ? 5 : args.n, plan_for(args, false)};
    doc["n"] = universe.max_n;
    doc["m"] = universe.alternatives;
    const auto rule = ordinal_rule(args.rule, args);
    if (property == audit::Property::Safety) {
      require_base(args, "condorcet");
      auto base = [](const PairwiseTally& t) { return base_condorcet_rule(t, Variant::Conservative); };
      verdict = audit::exhaustive_safety(rule, base, universe, options);
    } else if (property == audit::Property::Liveness) {
      verdict = audit::check_liveness(rule, universe, std::nullopt, options);
    } else {
      throw UsageError("less-conservative applies to parameter rules only");
    }
  } else if (args.kind == "parameter") {
    audit::ParameterUniverse universe;
    universe.grid.clear();
    for (const auto& item : split_list(args.grid)) universe.grid.push_back(Decimal::parse(item));
    universe.min_n = args.min_n;
    universe.max_n = args.n == 0 ? 6 : args.n;
    universe.penetration = plan_for(args, property == audit::Property::Safety);
    doc["n"] = universe.max_n;
    doc["grid"] = decimal_strings(universe.grid);
    const auto rule = parameter_rule(args.rule);
    if (property == audit::Property::Safety) {
      require_base(args, "median-base");
      verdict = audit::exhaustive_safety(rule, median_base_rule, universe, options);
    } else if (property == audit::Property::Liveness) {
      verdict = audit::check_liveness(rule, universe, std::nullopt, options);
    } else {
      if (args.base.empty()) throw UsageError("--base is required for this property");
      const auto other = parameter_rule(args.base);
      verdict = audit::less_conservative_check(rule, other, universe, options);
      if (verdict.holds && args.random > 0) {
        audit::RandomParameterSpec spec;
        spec.instances = args.random;
        spec.seed = args.seed;
        const auto sampled = audit::less_conservative_random(rule, other, spec);
        doc["random_instances"] = args.random;
        doc["seed"] = args.seed;
        const auto exhaustive_size = verdict.universe_size;
        verdict = sampled;
        verdict.universe_size += exhaustive_size;
      }
    }
  } else {
    throw UsageError("unknown kind '" + args.kind + "'");
  }

  doc["holds"] = verdict.holds;
  doc["universe_size"] = verdict.universe_size;
  doc["witness"] = verdict.witness ? witness_json(*verdict.witness) : Json(nullptr);
  if (args.format == "structured") {
    out << doc.dump(2) << '\n';
  } else {
    out << audit::to_string(property) << ": " << (verdict.holds ? "holds" : "violated") << " over "
        << verdict.universe_size << " instances\n";
    Json details = doc;
    details.erase("holds");
    details.erase("universe_size");
    details.erase("witness");
    print_json_text(details, out, 2);
    if (verdict.witness) {
      out << "witness:\n";
      print_json_text(doc["witness"], out, 2);
    }
  }
  return verdict.holds ? kExitOk : kExitViolated;
}

// estimate-sigma

struct EstimateArgs {
  std::int64_t k = 0;
  std::int64_t s = 0;
  double p = 0.05;
  std::string epsilon;
  std::string format = "text";
};

int estimate(const EstimateArgs& args, std::ostream& out) {
  const InspectionSample sample{args.k, args.s, args.p};
  sample.validate();
  const SigmaBound bound = sigma_upper_bound(sample);
  Json doc;
  doc["sample_size"] = args.k;
  doc["sybils_observed"] = args.s;
  doc["p"] = args.p;
  doc["sigma_upper_bound"] = str(bound.value());
  doc["recommended_delta"] = str(min_safe_delta(bound).value());
  if (!args.epsilon.empty()) {
    const SigmaBound point = sigma_point_plus_margin(sample, parse_rational(args.epsilon));
    doc["epsilon"] = str(parse_rational(args.epsilon));
    doc["sigma_point_plus_margin"] = str(point.value());
    doc["point_recommended_delta"] = str(min_safe_delta(point).value());
  }
  if (Rational(1, 3) <= bound.value()) {
    doc["warning"] = "sigma bound is at least 1/3: no delta keeps the rule live";
  }
  emit(doc, args.format, out);
  return kExitOk;
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sybil-resilient voting rules and audits", "sybilvote"};
  app.require_subcommand(1);

  DecideArgs decide_args;
  auto* decide_cmd = app.add_subcommand("decide", "Run a rule on an election file");
  decide_cmd->add_option("file", decide_args.file, "Election file")->required();
  decide_cmd->add_option("--rule", decide_args.rule, "Rule name")->required();
  decide_cmd->add_option("--variant", decide_args.variant, "conservative or permissive");
  decide_cmd->add_option("--scope", decide_args.scope, "Contest scope: all or reality-viable");
  decide_cmd->add_option("--order", decide_args.order, "Agenda order, comma separated ids");
  decide_cmd->add_option("--sigma", decide_args.sigma, "Override the file's sigma");
  decide_cmd->add_option("--delta", decide_args.delta, "Override delta");
  add_format(decide_cmd, decide_args.format);

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("curve", "Emit the conservatism surface as CSV");
  curve_cmd->add_option("--sigma", curve_args.sigma, "Comma separated sigma grid");
  curve_cmd->add_option("--delta", curve_args.delta, "Comma separated delta grid; 'sigma/2' follows sigma");
  add_format(curve_cmd, curve_args.format);

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Brute-force audit over a universe of instances");
  audit_cmd->add_option("--kind", audit_args.kind, "binary, ordinal or parameter");
  audit_cmd->add_option("--rule", audit_args.rule, "Rule under audit");
  audit_cmd->add_option("--base", audit_args.base, "Base rule (or rule B for less-conservative)");
  audit_cmd->add_option("--property", audit_args.property, "safety, liveness or less-conservative");
  audit_cmd->add_option("--variant", audit_args.variant, "conservative or permissive");
  audit_cmd->add_option("--scope", audit_args.scope, "Contest scope: all or reality-viable");
  audit_cmd->add_option("--order", audit_args.order, "Agenda order over r,a,b,...");
  audit_cmd->add_option("--sigma", audit_args.sigma, "Configured bound; omit for every true ratio");
  audit_cmd->add_option("--delta", audit_args.delta, "Fixed delta; default sigma/2");
  audit_cmd->add_option("--n", audit_args.n, "Largest electorate");
  audit_cmd->add_option("--min-n", audit_args.min_n, "Smallest electorate");
  audit_cmd->add_option("--m", audit_args.m, "Alternatives including reality (ordinal)");
  audit_cmd->add_option("--grid", audit_args.grid, "Value grid (parameter)");
  audit_cmd->add_option("--liveness-search", audit_args.search, "existential or every-unanimous");
  audit_cmd->add_option("--budget", audit_args.budget, "Largest universe to enumerate");
  audit_cmd->add_option("--seed", audit_args.seed, "Seed for random instances");
  audit_cmd->add_option("--random", audit_args.random, "Extra random instances (parameter less-conservative)");
  audit_cmd->add_option("--threads", audit_args.threads, "Worker threads; 0 uses every core");
  add_format(audit_cmd, audit_args.format);

  EstimateArgs estimate_args;
  auto* estimate_cmd = app.add_subcommand("estimate-sigma", "Bound sigma from an inspection sample");
  estimate_cmd->add_option("--k", estimate_args.k, "Voters inspected")->required();
  estimate_cmd->add_option("--s", estimate_args.s, "Sybils found")->required();
  estimate_cmd->add_option("--p", estimate_args.p, "Tail probability");
  estimate_cmd->add_option("--epsilon", estimate_args.epsilon, "Margin for the point estimate");
  add_format(estimate_cmd, estimate_args.format);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*decide_cmd) return decide(decide_args, out);
    if (*curve_cmd) return curve(curve_args, out);
    if (*audit_cmd) return audit_command(audit_args, out);
    return estimate(estimate_args, out);
  } catch (const audit::BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sybil::cli
