#pragma once

#include "ltlfuc/activation.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltlfuc {

/// The only dialect implemented: one `label: formula` line per top-level
/// conjunct, formulas in our own syntax, `#` comments.
inline constexpr std::string_view kNativeDialect = "ltlfuc";

struct ProverConfig {
  /// Empty means no prover is configured.
  std::string executable;
  /// `{input}` is replaced by the path of the exported file.
  std::vector<std::string> args{"{input}"};
  double timeout = 60.0;
  std::string dialect{kNativeDialect};
};

/// Bad prover output, an unexpected exit status, or an unknown dialect.
class ProverError : public std::runtime_error {
public:
  ProverError(const std::string& message, std::string raw)
      : std::runtime_error(message), raw_(std::move(raw)) {}
  const std::string& raw() const noexcept { return raw_; }

private:
  std::string raw_;
};

struct ExportLine {
  std::string label;
  Formula formula;
};

/// The activated spec without past operators, translated to LTL over `end`,
/// one line per top-level conjunct. Labels: `end1..end3` for the end axioms,
/// `g<i>` for the guarded conjuncts, `m<i>` for the past monitors, and the
/// activation variable itself for each activation unit.
std::vector<ExportLine> export_lines(const Spec& s);
std::string export_tr(const Spec& s, std::string_view dialect = kNativeDialect);
/// Reads back export_tr output. Throws ParseError.
std::vector<ExportLine> parse_export(std::string_view text);

struct ProverRun {
  enum class Kind { Finished, Unavailable, Timeout } kind = Kind::Finished;
  int exit_code = 0;
  std::string output;
};

/// Writes `text` to a temporary file and runs the prover on it. Throws
/// ProverError on a nonzero exit status.
ProverRun run_prover(const ProverConfig& cfg, const std::string& text);

struct ProverVerdict {
  Status status = Status::Unknown;
  /// Names the prover listed in its core; absent when it gave none.
  std::optional<std::vector<std::string>> core_names;
};

/// Accepts `sat`, `unsat` with an optional `core:` list on the same or a
/// later line, `unknown`, and any line mentioning "simplified to false".
/// Throws ProverError on anything else.
ProverVerdict parse_prover_output(std::string_view output,
                                  std::string_view dialect = kNativeDialect);

UcResult algorithm4_uc(const Spec& s, const ProverConfig& cfg);

/// Stand-in for the external prover: reads export_tr output, maps each
/// line back to LTLf, and runs bounded model checking with every line as a
/// conjunct. Answers `sat`, `unknown`, or `unsat` with a `core:` line
/// listing line labels. Throws ParseError or std::invalid_argument on input
/// that export_tr cannot have produced.
std::string stub_prover(std::string_view exported, double timeout_seconds);

} // namespace ltlfuc
