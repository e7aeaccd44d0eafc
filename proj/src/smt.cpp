#include "qftv/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <variant>

#include "qftv/abstraction.hpp"

extern char** environ;

namespace qftv {

namespace {

std::string bv_zero(int m) { return "#b" + std::string(static_cast<std::size_t>(m), '0'); }

std::string bv_onehot(int m, int p) {
  std::string s(static_cast<std::size_t>(m), '0');
  s[static_cast<std::size_t>(p - 1)] = '1';
  return "#b" + s;
}

std::string target_term(Line i, int m) {
  // Bits b_i..b_m followed by i-1 zero bits, as a right-nested concat.
  std::vector<std::string> parts;
  for (int v = i; v <= m; ++v) parts.push_back("(ite b" + std::to_string(v) + " #b1 #b0)");
  if (i > 1) parts.push_back("#b" + std::string(static_cast<std::size_t>(i - 1), '0'));
  std::string term = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) term = "(concat " + *it + " " + term + ")";
  return term;
}

}  // namespace

std::string emit_smt2(const Circuit& c, Line i) {
  const int m = c.qubits();
  if (i < 1 || i > m) throw Error("qubit " + std::to_string(i) + " out of range 1.." + std::to_string(m));
  auto typed = typecheck(c);
  if (auto* err = std::get_if<TypeError>(&typed)) {
    throw Error("cannot emit SMT for a type-incorrect circuit: " + err->message());
  }
  const std::string sort = "(_ BitVec " + std::to_string(m) + ")";
  std::ostringstream os;
  os << "; property obligation for qubit " << i << " of " << m << "\n";
  os << "(set-logic QF_BV)\n";
  for (int v = 1; v <= m; ++v) os << "(declare-fun b" << v << " () Bool)\n";

  std::string current = bv_zero(m);
  std::size_t step = 0;
  for (std::size_t k : Dataflow(c).chain(i)) {
    const Gate& g = c.gate(k);
    const std::string name = "s" + std::to_string(++step);
    os << "(define-fun " << name << " () " << sort << " ";
    if (g.is_h()) {
      os << "(ite b" << g.source() << " " << bv_onehot(m, 1) << " " << bv_zero(m) << ")";
    } else {
      os << "(ite b" << *g.control << " (bvadd " << current << " " << bv_onehot(m, g.order) << ") "
         << current << ")";
    }
    os << ")  ; gate " << (k + 1) << "\n";
    current = name;
  }
  os << "(define-fun actual () " << sort << " " << current << ")\n";
  os << "(define-fun target () " << sort << " " << target_term(i, m) << ")\n";
  os << "(assert (not (= actual target)))\n";
  os << "(check-sat)\n";
  os << "(get-model)\n";
  return os.str();
}

// ---------------------------------------------------------------------------

SolverConfig SolverConfig::from_string(std::string_view command_line) {
  SolverConfig cfg;
  cfg.command.clear();
  std::istringstream is{std::string(command_line)};
  for (std::string word; is >> word;) cfg.command.push_back(word);
  if (cfg.command.empty()) throw Error("empty solver command");
  return cfg;
}

std::optional<SolverConfig> SolverConfig::detect() {
  if (const char* env = std::getenv("QFTV_SOLVER"); env && *env) return from_string(env);
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::istringstream dirs{std::string(path)};
  for (std::string dir; std::getline(dirs, dir, ':');) {
    if (dir.empty()) continue;
    const auto candidate = std::filesystem::path(dir) / "z3";
    if (::access(candidate.c_str(), X_OK) == 0) return SolverConfig{};
  }
  return std::nullopt;
}

const char* to_string(SolverResult::Kind k) {
  switch (k) {
    case SolverResult::Kind::Unsat: return "unsat";
    case SolverResult::Kind::Sat: return "sat";
    case SolverResult::Kind::Unknown: return "unknown";
    case SolverResult::Kind::Failure: return "failure";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Model parsing: a minimal s-expression reader is enough for define-fun lists.

namespace {

struct SExpr {
  std::variant<std::string, std::vector<SExpr>> value;
  const std::string* atom() const { return std::get_if<std::string>(&value); }
  const std::vector<SExpr>* list() const { return std::get_if<std::vector<SExpr>>(&value); }
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  /// All top-level lists; stray atoms (sat, unsat, ...) are skipped.
  std::vector<SExpr> top_level_lists() {
    std::vector<SExpr> out;
    while (skip_space(), pos_ < text_.size()) {
      if (text_[pos_] == '(') {
        out.push_back(read());
      } else if (text_[pos_] == ')') {
        throw SolverFailure("unbalanced ')' in solver output");
      } else {
        read_atom();
      }
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string read_atom() {
    const std::size_t start = pos_;
    if (text_[pos_] == '|') {
      const std::size_t end = text_.find('|', pos_ + 1);
      if (end == std::string_view::npos) throw SolverFailure("unterminated |symbol| in solver output");
      pos_ = end + 1;
      return std::string(text_.substr(start + 1, end - start - 1));
    }
    if (text_[pos_] == '"') {
      const std::size_t end = text_.find('"', pos_ + 1);
      if (end == std::string_view::npos) throw SolverFailure("unterminated string in solver output");
      pos_ = end + 1;
      return std::string(text_.substr(start, end + 1 - start));
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) throw SolverFailure("unexpected end of solver output");
    if (text_[pos_] != '(') return SExpr{read_atom()};
    ++pos_;
    std::vector<SExpr> items;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) throw SolverFailure("unbalanced '(' in solver output");
      if (text_[pos_] == ')') {
        ++pos_;
        return SExpr{std::move(items)};
      }
      items.push_back(read());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_definitions(const SExpr& e, int m, std::vector<std::int8_t>& values, bool& saw_model) {
  const auto* items = e.list();
  if (!items) return;
  if (!items->empty() && items->front().atom()) {
    const std::string& head = *items->front().atom();
    if (head == "model") saw_model = true;
    if (head == "define-fun") {
      saw_model = true;
      if (items->size() != 5) return;
      const auto* name = (*items)[1].atom();
      const auto* sort = (*items)[3].atom();
      const auto* val = (*items)[4].atom();
      if (!name || !sort || !val || *sort != "Bool" || name->size() < 2 || (*name)[0] != 'b') return;
      int index = 0;
      auto [ptr, ec] = std::from_chars(name->data() + 1, name->data() + name->size(), index);
      if (ec != std::errc{} || ptr != name->data() + name->size() || index < 1 || index > m) return;
      if (*val == "true") {
        values[static_cast<std::size_t>(index)] = 1;
      } else if (*val == "false") {
        values[static_cast<std::size_t>(index)] = 0;
      } else {
        throw SolverFailure("unexpected Boolean value '" + *val + "' for " + *name);
      }
      return;
    }
  }
  // Either the model list itself, or a wrapper such as (model ...).
  bool all_lists = !items->empty();
  for (const auto& item : *items) all_lists = all_lists && item.list() != nullptr;
  if (all_lists && items->size() > 0) saw_model = true;
  for (const auto& item : *items) collect_definitions(item, m, values, saw_model);
}

}  // namespace

Model parse_model(std::string_view solver_output, int m) {
  SExprReader reader(solver_output);
  const auto lists = reader.top_level_lists();
  std::vector<std::int8_t> values(static_cast<std::size_t>(m) + 1, -1);
  bool saw_model = false;
  for (const auto& l : lists) {
    const auto* items = l.list();
    if (items && items->empty()) saw_model = true;  // "()" is an empty model
    collect_definitions(l, m, values, saw_model);
  }
  if (!saw_model) throw SolverFailure("no model found in solver output");
  Model model{Assignment(m), {}};
  for (int v = 1; v <= m; ++v) {
    const auto val = values[static_cast<std::size_t>(v)];
    if (val < 0) model.defaulted.push_back(v);
    model.assignment.set(v, val == 1);
  }
  return model;
}

// ---------------------------------------------------------------------------
// Process driver.

SolverResult invoke_solver(const SolverConfig& cfg, const std::filesystem::path& file, int m) {
  using Clock = std::chrono::steady_clock;
  SolverResult result;
  if (cfg.command.empty()) {
    result.detail = "empty solver command";
    return result;
  }
  if (!std::filesystem::exists(file)) {
    result.detail = "obligation file not found: " + file.string();
    return result;
  }

  std::vector<std::string> args = cfg.command;
  bool placed = false;
  for (auto& a : args) {
    if (const auto pos = a.find("{file}"); pos != std::string::npos) {
      a.replace(pos, 6, file.string());
      placed = true;
    }
  }
  if (!placed) args.push_back(file.string());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    result.detail = std::string("pipe: ") + std::strerror(errno);
    return result;
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, fds[1], STDERR_FILENO);

  const auto start = Clock::now();
  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(fds[1]);
  if (rc != 0) {
    ::close(fds[0]);
    result.detail = "spawn error for '" + args[0] + "': " + std::strerror(rc);
    return result;
  }

  std::string output;
  bool timed_out = false;
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(cfg.timeout_s));
  char buf[4096];
  while (true) {
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (remaining <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{fds[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(remaining, 1000)));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    const ssize_t n = ::read(fds[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fds[0]);
  if (timed_out) ::kill(pid, SIGKILL);

  int status = 0;
  rusage usage{};
  while (::wait4(pid, &status, 0, &usage) < 0 && errno == EINTR) {
  }
  result.wall_s = std::chrono::duration<double>(Clock::now() - start).count();
  result.peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;

  if (timed_out) {
    result.kind = SolverResult::Kind::Unknown;
    result.detail = "timeout";
    return result;
  }

  std::istringstream lines(output);
  std::string first;
  while (std::getline(lines, first)) {
    const auto b = first.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    first = first.substr(b, first.find_last_not_of(" \t\r") - b + 1);
    break;
  }
  if (first == "unsat") {
    result.kind = SolverResult::Kind::Unsat;
  } else if (first == "sat") {
    try {
      result.model = parse_model(output.substr(output.find("sat") + 3), m);
      result.kind = SolverResult::Kind::Sat;
    } catch (const SolverFailure& e) {
      result.kind = SolverResult::Kind::Failure;
      result.detail = e.what();
    }
  } else if (first == "unknown") {
    result.kind = SolverResult::Kind::Unknown;
    result.detail = "solver returned unknown";
  } else {
    result.kind = SolverResult::Kind::Failure;
    result.detail = "unexpected solver output";
    if (WIFEXITED(status)) result.detail += " (exit " + std::to_string(WEXITSTATUS(status)) + ")";
    if (WIFSIGNALED(status)) result.detail += " (signal " + std::to_string(WTERMSIG(status)) + ")";
    if (!output.empty()) result.detail += ": " + output.substr(0, 200);
  }
  return result;
}

}  // namespace qftv
