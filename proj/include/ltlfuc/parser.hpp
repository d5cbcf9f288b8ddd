#pragma once

#include "ltlfuc/formula.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ltlfuc {

/// Names that user input may not use: `end` plus anything starting with
/// one of the internal prefixes.
inline constexpr std::string_view kEndVar = "end";
inline constexpr std::string_view kActivationPrefix = "_act_";
inline constexpr std::string_view kPastPrefix = "_past_";

bool is_reserved_name(std::string_view name);

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when input uses `end` or an internal prefix.
class ReservedIdentifierError : public ParseError {
public:
  ReservedIdentifierError(std::size_t line, std::size_t column, const std::string& name);
  const std::string& identifier() const noexcept { return name_; }

private:
  std::string name_;
};

struct ParseOptions {
  /// Accept `end`, `_act_*` and `_past_*`; used when reading back our own
  /// translated output.
  bool allow_reserved = false;
};

/// Grammar, loosest to tightest binding:
///   <->  ->  |  &  {U R S T}  unary{! X N F G Y Z O H}
/// All binary operators are right-associative. `#` starts a line comment.
Formula parse_formula(std::string_view text, const ParseOptions& opts = {});

/// Parses one formula and splits its top-level conjunction into c1..cN.
Spec parse_spec(std::string_view text, std::string name = "spec", const ParseOptions& opts = {});

Spec load_spec(const std::filesystem::path& path);

} // namespace ltlfuc
