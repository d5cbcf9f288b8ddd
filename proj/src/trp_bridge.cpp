#include "ltlfuc/trp_bridge.hpp"

#include "ltlfuc/bmc.hpp"
#include "ltlfuc/parser.hpp"
#include "ltlfuc/translations.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace ltlfuc {

namespace {

void check_dialect(std::string_view dialect) {
  if (dialect != kNativeDialect)
    throw ProverError("unknown prover dialect: " + std::string(dialect), "");
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

class TempFile {
public:
  explicit TempFile(const std::string& text) {
    std::string tmpl = (std::filesystem::temp_directory_path() / "ltlfuc-XXXXXX").string();
    int fd = mkstemp(tmpl.data());
    if (fd < 0)
      throw std::runtime_error("cannot create temporary file: " + std::string(std::strerror(errno)));
    path_ = tmpl;
    std::size_t done = 0;
    while (done < text.size()) {
      ssize_t n = write(fd, text.data() + done, text.size() - done);
      if (n < 0 && errno == EINTR)
        continue;
      if (n <= 0) {
        close(fd);
        throw std::runtime_error("cannot write temporary file");
      }
      done += static_cast<std::size_t>(n);
    }
    close(fd);
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

} // namespace

std::vector<ExportLine> export_lines(const Spec& s) {
  ActivatedSpec act = activate(s);
  PastRemovalResult pr = remove_past(act.psi);
  std::vector<ExportLine> lines;
  auto axioms = end_axioms();
  for (std::size_t i = 0; i < axioms.size(); ++i)
    lines.push_back({"end" + std::to_string(i + 1), axioms[i]});
  auto guarded = split_conjuncts(pr.future_formula);
  for (std::size_t i = 0; i < guarded.size(); ++i)
    lines.push_back({"g" + std::to_string(i + 1), ftol(guarded[i])});
  for (std::size_t i = 0; i < pr.monitors.size(); ++i)
    lines.push_back({"m" + std::to_string(i + 1), ftol(pr.monitors[i])});
  for (const auto& b : act.bindings)
    lines.push_back({b.var, var(b.var)});
  return lines;
}

std::string export_tr(const Spec& s, std::string_view dialect) {
  check_dialect(dialect);
  std::ostringstream out;
  out << "# " << s.name << ": " << s.conjuncts.size() << " conjuncts\n";
  for (const auto& l : export_lines(s))
    out << l.label << ": " << print(l.formula) << "\n";
  return out.str();
}

std::vector<ExportLine> parse_export(std::string_view text) {
  ParseOptions opts;
  opts.allow_reserved = true;
  std::vector<ExportLine> lines;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == line.npos || line[first] == '#')
      continue;
    std::size_t colon = line.find(':');
    if (colon == line.npos)
      throw ParseError(lineno, first + 1, "expected `label: formula`");
    std::string label(line.substr(first, colon - first));
    while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back())))
      label.pop_back();
    if (!is_identifier(label))
      throw ParseError(lineno, first + 1, "bad label `" + label + "`");
    try {
      lines.push_back({label, parse_formula(line.substr(colon + 1), opts)});
    } catch (const ParseError& e) {
      throw ParseError(lineno, colon + 1 + e.column(), e.what());
    }
  }
  return lines;
}

ProverRun run_prover(const ProverConfig& cfg, const std::string& text) {
  ProverRun run;
  if (cfg.executable.empty()) {
    run.kind = ProverRun::Kind::Unavailable;
    return run;
  }
  if (cfg.timeout <= 0) {
    run.kind = ProverRun::Kind::Timeout;
    return run;
  }
  TempFile input(text);
  std::vector<std::string> args{cfg.executable};
  for (const auto& a : cfg.args) {
    std::string arg = a;
    if (auto at = arg.find("{input}"); at != arg.npos)
      arg.replace(at, 7, input.path());
    args.push_back(arg);
  }
  std::vector<char*> argv;
  for (auto& a : args)
    argv.push_back(a.data());
  argv.push_back(nullptr);

  int out[2], err[2];
  if (pipe(out) != 0)
    throw std::runtime_error("pipe failed");
  if (pipe2(err, O_CLOEXEC) != 0) {
    close(out[0]);
    close(out[1]);
    throw std::runtime_error("pipe failed");
  }
  pid_t pid = fork();
  if (pid < 0)
    throw std::runtime_error("fork failed");
  if (pid == 0) {
    // own process group, so a timeout also stops the prover's children
    setpgid(0, 0);
    close(out[0]);
    close(err[0]);
    dup2(out[1], STDOUT_FILENO);
    close(out[1]);
    execvp(argv[0], argv.data());
    int e = errno;
    ssize_t ignored = write(err[1], &e, sizeof e);
    (void)ignored;
    _exit(127);
  }
  setpgid(pid, pid);
  close(out[1]);
  close(err[1]);

  int exec_errno = 0;
  bool exec_failed = read(err[0], &exec_errno, sizeof exec_errno) == sizeof exec_errno;
  close(err[0]);
  if (exec_failed) {
    close(out[0]);
    waitpid(pid, nullptr, 0);
    run.kind = ProverRun::Kind::Unavailable;
    return run;
  }

  auto stop = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                     std::chrono::duration<double>(cfg.timeout));
  char buf[4096];
  bool timed_out = false;
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(stop - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{out[0], POLLIN, 0};
    int r = poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (r < 0 && errno == EINTR)
      continue;
    if (r == 0)
      continue;
    ssize_t n = read(out[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR)
      continue;
    if (n <= 0)
      break;
    run.output.append(buf, static_cast<std::size_t>(n));
  }
  close(out[0]);
  int status = 0;
  // the prover may close its output before exiting
  while (!timed_out) {
    pid_t w = waitpid(pid, &status, WNOHANG);
    if (w == pid)
      break;
    if (w < 0 && errno != EINTR)
      throw std::runtime_error("waitpid failed");
    if (std::chrono::steady_clock::now() >= stop)
      timed_out = true;
    else
      usleep(1000);
  }
  if (timed_out) {
    kill(-pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    run.kind = ProverRun::Kind::Timeout;
    return run;
  }
  if (WIFSIGNALED(status))
    throw ProverError("prover killed by signal " + std::to_string(WTERMSIG(status)), run.output);
  run.exit_code = WEXITSTATUS(status);
  if (run.exit_code != 0)
    throw ProverError("prover exited with status " + std::to_string(run.exit_code), run.output);
  return run;
}

ProverVerdict parse_prover_output(std::string_view output, std::string_view dialect) {
  check_dialect(dialect);
  ProverVerdict v;
  std::string low = lower(output);
  if (low.find("simplified to false") != low.npos) {
    v.status = Status::ReducedToFalse;
    return v;
  }
  std::istringstream in{std::string(output)};
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) {
    for (char& c : t)
      if (c == ',')
        c = ' ';
    std::istringstream parts(t);
    for (std::string p; parts >> p;)
      tokens.push_back(p);
  }
  std::optional<Status> status;
  std::size_t i = 0;
  for (; i < tokens.size() && !status; ++i) {
    std::string t = lower(tokens[i]);
    if (t == "unsat" || t == "unsatisfiable")
      status = Status::Unsat;
    else if (t == "sat" || t == "satisfiable")
      status = Status::Sat;
    else if (t == "unknown")
      status = Status::Unknown;
  }
  if (!status)
    throw ProverError("no verdict in prover output", std::string(output));
  v.status = *status;
  if (v.status != Status::Unsat)
    return v;
  for (; i < tokens.size(); ++i) {
    std::string t = lower(tokens[i]);
    if (t == "core:" || (t == "core" && i + 1 < tokens.size() && tokens[i + 1] == ":")) {
      i += t == "core" ? 2 : 1;
      v.core_names.emplace();
      for (; i < tokens.size() && is_identifier(tokens[i]); ++i)
        v.core_names->push_back(tokens[i]);
      return v;
    }
  }
  return v;
}

UcResult algorithm4_uc(const Spec& s, const ProverConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  UcResult r;
  r.algorithm = "trp";
  check_dialect(cfg.dialect);
  ProverRun run = run_prover(cfg, export_tr(s, cfg.dialect));
  if (run.kind == ProverRun::Kind::Unavailable) {
    r.status = Status::Unknown;
    r.reason = "prover unavailable";
  } else if (run.kind == ProverRun::Kind::Timeout) {
    r.status = Status::Unknown;
    r.reason = "timeout";
  } else {
    ProverVerdict v = parse_prover_output(run.output, cfg.dialect);
    r.status = v.status;
    if (v.status == Status::Unknown)
      r.reason = "prover gave up";
    if (v.status == Status::Unsat) {
      if (v.core_names) {
        r.core = restrict_core(activate(s), {v.core_names->begin(), v.core_names->end()});
      } else {
        // no core reported: the whole specification is the only safe answer
        auto labels = s.labels();
        r.core = LabelSet(labels.begin(), labels.end());
      }
    }
  }
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string stub_prover(std::string_view exported, double timeout_seconds) {
  auto lines = parse_export(exported);
  auto axioms = end_axioms();
  std::vector<Conjunct> parts;
  std::set<std::string> names;
  std::size_t seen_axioms = 0;
  for (const auto& l : lines) {
    if (std::find(axioms.begin(), axioms.end(), l.formula) != axioms.end()) {
      ++seen_axioms;
      continue;
    }
    Formula f = ltl_to_ltlf(l.formula);
    for (const auto& v : free_vars(f))
      names.insert(v);
    parts.push_back({l.label, f});
  }
  if (seen_axioms != axioms.size())
    throw std::invalid_argument("input lacks the end axioms");
  // internal names would be rejected as user input; give them fresh ones
  std::map<std::string, std::string> fresh;
  for (const auto& v : names) {
    if (!is_reserved_name(v))
      continue;
    std::string n = "s" + v;
    while (names.count(n))
      n = "s" + n;
    fresh.emplace(v, n);
  }
  Spec spec;
  spec.name = "stub";
  for (auto& p : parts) {
    p.formula = rename_vars(p.formula, fresh);
    for (const auto& v : free_vars_ordered(p.formula))
      spec.alphabet.add(v);
    spec.conjuncts.push_back(p);
  }
  Alg2Options opts;
  opts.deadline = Deadline::after(timeout_seconds);
  UcResult r = algorithm2_uc(spec, opts);
  switch (r.status) {
  case Status::Sat: return "sat\n";
  case Status::Unsat: {
    std::string out = "unsat\ncore:";
    for (const auto& l : *r.core)
      out += " " + l;
    return out + "\n";
  }
  default: return "unknown\n";
  }
}

} // namespace ltlfuc
