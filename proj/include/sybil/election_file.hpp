#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "sybil/core.hpp"

// Line-based election files.
//
//   # comment
//   version=1 kind=ordinal reality=r alts=r,a,b sigma=0.2
//   a,r,b
//   b,a,r
//
// The first non-comment line is the header. Every following token is one
// ballot: `p` or `r` for binary, a comma-separated ranking best-first for
// ordinal, a decimal ideal point for parameter elections. Parameter headers
// carry the current value as `r=<decimal>` instead of reality/alts.
namespace sybil {

enum class ElectionKind { Binary, Ordinal, Parameter };
std::string_view to_string(ElectionKind kind);

struct ElectionFile {
  int version = 1;
  std::optional<SigmaBound> sigma;
  /// Filled with sigma/2 on parse when the header gives sigma but no delta.
  std::optional<Delta> delta;
  std::variant<BinaryProfile, OrdinalProfile, ParameterProfile> profile;

  ElectionKind kind() const { return static_cast<ElectionKind>(profile.index()); }
  friend bool operator==(const ElectionFile&, const ElectionFile&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  /// 1-based; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

ElectionFile parse_election(std::istream& in);
ElectionFile parse_election(const std::string& text);
ElectionFile parse_election_file(const std::filesystem::path& path);

/// Canonical form: full header, one ballot per line. parse_election() of the
/// result compares equal to the input.
std::string serialize_election(const ElectionFile& election);

}  // namespace sybil
