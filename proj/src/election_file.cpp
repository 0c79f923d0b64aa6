#include "sybil/election_file.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "sybil/proposal_rules.hpp"
#include "sybil/rational.hpp"

namespace sybil {
namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(sep, start);
    out.emplace_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) {
      return out;
    }
    start = end + 1;
  }
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

bool skipped(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

struct Line {
  std::size_t number;
  std::string text;
};

template <typename Fn>
auto at_line(std::size_t line, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

std::string_view to_string(ElectionKind kind) {
  switch (kind) {
    case ElectionKind::Binary: return "binary";
    case ElectionKind::Ordinal: return "ordinal";
    case ElectionKind::Parameter: return "parameter";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

ElectionFile parse_election(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  for (std::size_t number = 1; std::getline(in, text); ++number) {
    if (!skipped(text)) {
      lines.push_back({number, text});
    }
  }
  if (lines.empty()) {
    throw ParseError(0, "missing header line");
  }

  const Line& header = lines.front();
  std::map<std::string, std::string> fields;
  {
    std::istringstream tokens(header.text);
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ParseError(header.number, "expected key=value in header, got '" + token + "'");
      }
      if (!fields.emplace(token.substr(0, eq), token.substr(eq + 1)).second) {
        throw ParseError(header.number, "duplicate header key '" + token.substr(0, eq) + "'");
      }
    }
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    std::string value = it->second;
    fields.erase(it);
    return value;
  };

  ElectionFile election;
  return at_line(header.number, [&] {
    if (auto version = take("version")) {
      if (*version != "1") throw std::invalid_argument("unsupported version '" + *version + "'");
    }
    const auto kind = take("kind");
    if (!kind) throw std::invalid_argument("header needs kind=");
    if (auto sigma = take("sigma")) election.sigma = SigmaBound(parse_rational(*sigma));
    if (auto delta = take("delta")) {
      election.delta = Delta(parse_rational(*delta));
    } else if (election.sigma) {
      election.delta = min_safe_delta(*election.sigma);
    }

    std::vector<std::pair<std::size_t, std::string>> ballots;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::istringstream tokens(lines[i].text);
      std::string token;
      while (tokens >> token) ballots.emplace_back(lines[i].number, token);
    }

    if (*kind == "binary") {
      BinaryProfile profile;
      for (const auto& [number, token] : ballots) {
        if (token == "p") {
          profile.votes.push_back(Ballot::Proposal);
        } else if (token == "r") {
          profile.votes.push_back(Ballot::Reality);
        } else {
          throw ParseError(number, "binary ballot must be p or r, got '" + token + "'");
        }
      }
      election.profile = std::move(profile);
    } else if (*kind == "ordinal") {
      const auto reality = take("reality");
      const auto alts = take("alts");
      if (!reality || !alts) throw std::invalid_argument("ordinal header needs reality= and alts=");
      AlternativeSet alternatives(split(*alts, ','), *reality);
      std::vector<Ranking> rankings;
      for (const auto& [number, token] : ballots) {
        at_line(number, [&] {
          Ranking ranking;
          for (const auto& id : split(token, ',')) ranking.push_back(alternatives.index_of(id));
          validate_ranking(ranking, alternatives.size());
          rankings.push_back(std::move(ranking));
        });
      }
      election.profile = OrdinalProfile(std::move(alternatives), std::move(rankings));
    } else if (*kind == "parameter") {
      const auto current = take("r");
      if (!current) throw std::invalid_argument("parameter header needs r=");
      ParameterProfile profile{Decimal::parse(*current), {}};
      for (const auto& [number, token] : ballots) {
        profile.ideal_points.push_back(at_line(number, [&] { return Decimal::parse(token); }));
      }
      election.profile = std::move(profile);
    } else {
      throw std::invalid_argument("unknown kind '" + *kind + "'");
    }
    if (!fields.empty()) {
      throw std::invalid_argument("unknown header key '" + fields.begin()->first + "'");
    }
    return election;
  });
}

ElectionFile parse_election(const std::string& text) {
  std::istringstream in(text);
  return parse_election(in);
}

ElectionFile parse_election_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open " + path.string());
  }
  return parse_election(in);
}

std::string serialize_election(const ElectionFile& election) {
  std::ostringstream out;
  out << "version=" << election.version << " kind=" << to_string(election.kind());
  if (const auto* ordinal = std::get_if<OrdinalProfile>(&election.profile)) {
    const auto& alternatives = ordinal->alternatives();
    out << " reality=" << alternatives.name(alternatives.reality()) << " alts=" << join(alternatives.names(), ',');
  }
  if (const auto* parameter = std::get_if<ParameterProfile>(&election.profile)) {
    out << " r=" << parameter->current.to_string();
  }
  if (election.sigma) out << " sigma=" << to_canonical_string(election.sigma->value());
  if (election.delta) out << " delta=" << to_canonical_string(election.delta->value());
  out << '\n';

  std::visit(
      [&](const auto& profile) {
        using T = std::decay_t<decltype(profile)>;
        if constexpr (std::is_same_v<T, BinaryProfile>) {
          for (Ballot b : profile.votes) out << (b == Ballot::Proposal ? "p" : "r") << '\n';
        } else if constexpr (std::is_same_v<T, OrdinalProfile>) {
          for (const auto& ranking : profile.rankings()) {
            std::vector<std::string> ids;
            for (auto a : ranking) ids.push_back(profile.alternatives().name(a));
            out << join(ids, ',') << '\n';
          }
        } else {
          for (const auto& v : profile.ideal_points) out << v.to_string() << '\n';
        }
      },
      election.profile);
  return out.str();
}

}  // namespace sybil
