#include "cse/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "cse/simplify.hpp"

namespace cse {

const char* to_string(Sat s) {
  switch (s) {
    case Sat::Sat: return "sat";
    case Sat::Unsat: return "unsat";
    case Sat::Unknown: return "unknown";
  }
  return "?";
}

SymbolUniverse universe_of(const Flowgraph& fg) {
  SymbolUniverse u;
  u.ints.insert(fg.int_vars.begin(), fg.int_vars.end());
  u.arrays.insert(fg.array_vars.begin(), fg.array_vars.end());
  return u;
}

SymbolUniverse scan_universe(const FormulaPtr& phi) {
  SymbolUniverse u;
  collect_symbols(phi, u.ints, u.arrays);
  return u;
}

// ------------------------------------------------------------- emission --

namespace {

std::string mangle_sym(const std::string& v) { return "v_" + v; }
std::string mangle_arr(const std::string& v) { return "a_" + v; }
std::string mangle_param(int id) { return "k" + std::to_string(id); }

void emit_expr(std::ostream& os, const ExprPtr& e);

void emit_form(std::ostream& os, const FormulaPtr& f) {
  switch (f->kind) {
    case FormKind::BoolLit: os << (f->bval ? "true" : "false"); return;
    case FormKind::Cmp: {
      const char* op = nullptr;
      bool negate = false;
      switch (f->op) {
        case CmpOp::Eq: op = "="; break;
        case CmpOp::Ne: op = "="; negate = true; break;
        case CmpOp::Lt: op = "<"; break;
        case CmpOp::Le: op = "<="; break;
        case CmpOp::Gt: op = ">"; break;
        case CmpOp::Ge: op = ">="; break;
      }
      if (negate) os << "(not ";
      os << '(' << op << ' ';
      emit_expr(os, f->lhs);
      os << ' ';
      emit_expr(os, f->rhs);
      os << ')';
      if (negate) os << ')';
      return;
    }
    case FormKind::And:
    case FormKind::Or: {
      if (f->args.empty()) {
        os << (f->kind == FormKind::And ? "true" : "false");
        return;
      }
      if (f->args.size() == 1) {
        emit_form(os, f->args[0]);
        return;
      }
      os << (f->kind == FormKind::And ? "(and" : "(or");
      for (const auto& g : f->args) {
        os << ' ';
        emit_form(os, g);
      }
      os << ')';
      return;
    }
    case FormKind::Not:
      os << "(not ";
      emit_form(os, f->args[0]);
      os << ')';
      return;
    case FormKind::Implies:
      os << "(=> ";
      emit_form(os, f->args[0]);
      os << ' ';
      emit_form(os, f->args[1]);
      os << ')';
      return;
    case FormKind::Forall:
      // forall t in [lo,hi) . body  ==>  guarded universal
      os << "(forall ((" << f->bound << " Int)) (=> (and (<= ";
      emit_expr(os, f->lo);
      os << ' ' << f->bound << ") (< " << f->bound << ' ';
      emit_expr(os, f->hi);
      os << ")) ";
      emit_form(os, f->body);
      os << "))";
      return;
  }
}

void emit_expr(std::ostream& os, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::IntLit:
      if (e->num < 0)
        os << "(- " << -e->num << ')';
      else
        os << e->num;
      return;
    case ExprKind::Symbol: os << mangle_sym(e->name); return;
    case ExprKind::Param: os << mangle_param(e->param); return;
    case ExprKind::BoundVar: os << e->name; return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul: {
      const char* op = e->kind == ExprKind::Add ? "+" : e->kind == ExprKind::Sub ? "-" : "*";
      os << '(' << op << ' ';
      emit_expr(os, e->lhs);
      os << ' ';
      emit_expr(os, e->rhs);
      os << ')';
      return;
    }
    case ExprKind::Pow:
      os << "(ipow ";
      emit_expr(os, e->lhs);
      os << ' ';
      emit_expr(os, e->rhs);
      os << ')';
      return;
    case ExprKind::Select:
      os << '(' << mangle_arr(e->name) << ' ';
      emit_expr(os, e->lhs);
      os << ')';
      return;
    case ExprKind::Ite:
      os << "(ite ";
      emit_form(os, e->cond);
      os << ' ';
      emit_expr(os, e->lhs);
      os << ' ';
      emit_expr(os, e->rhs);
      os << ')';
      return;
  }
}

std::string emit_script(const FormulaPtr& phi, const SymbolUniverse& uni,
                        const std::string& logic) {
  std::ostringstream os;
  if (!logic.empty()) os << "(set-logic " << logic << ")\n";
  for (const auto& v : uni.ints) os << "(declare-const " << mangle_sym(v) << " Int)\n";
  for (const auto& v : uni.arrays)
    os << "(declare-fun " << mangle_arr(v) << " (Int) Int)\n";
  std::set<int> params;
  collect_params(phi, params);
  for (int p : params) os << "(declare-const " << mangle_param(p) << " Int)\n";
  if (contains_pow(phi)) {
    os << "(declare-fun ipow (Int Int) Int)\n"
       << "(assert (forall ((b Int)) (= (ipow b 0) 1)))\n"
       << "(assert (forall ((b Int) (k Int)) (=> (>= k 0) "
          "(= (ipow b (+ k 1)) (* b (ipow b k))))))\n";
  }
  os << "(assert ";
  emit_form(os, phi);
  os << ")\n(check-sat)\n";
  return os.str();
}

}  // namespace

std::string emit(const FormulaPtr& phi, const SymbolUniverse& uni, const std::string& logic) {
  return emit_script(phi, uni, logic);
}

std::string emit(const FormulaPtr& phi, const Flowgraph& fg, const std::string& logic) {
  SymbolUniverse used = scan_universe(phi);
  SymbolUniverse decl = universe_of(fg);
  for (const auto& v : used.ints)
    if (!decl.ints.count(v))
      throw UndeclaredSymbol("symbol ~" + v + " not declared in program " + fg.name);
  for (const auto& v : used.arrays)
    if (!decl.arrays.count(v))
      throw UndeclaredSymbol("array symbol " + v + " not declared in program " + fg.name);
  return emit_script(phi, decl, logic);
}

// ------------------------------------------------------------ evaluator --

namespace {

struct EvalEnv {
  std::map<std::string, long long> scalars;
  std::map<int, long long> params;
  std::map<std::pair<std::string, long long>, long long> cells;
  std::map<std::string, long long> bound;
  long long budget = -1;  // formula/expr node visits; <0 means unlimited

  bool spend() {
    if (budget < 0) return true;
    return --budget >= 0;
  }
};

constexpr long long kQuantWidthCap = 64;

std::optional<long long> eval_expr(const ExprPtr& e, EvalEnv& env);

std::optional<bool> eval_form(const FormulaPtr& f, EvalEnv& env) {
  if (!env.spend()) return std::nullopt;
  switch (f->kind) {
    case FormKind::BoolLit: return f->bval;
    case FormKind::Cmp: {
      auto l = eval_expr(f->lhs, env);
      auto r = eval_expr(f->rhs, env);
      if (!l || !r) return std::nullopt;
      switch (f->op) {
        case CmpOp::Eq: return *l == *r;
        case CmpOp::Ne: return *l != *r;
        case CmpOp::Lt: return *l < *r;
        case CmpOp::Le: return *l <= *r;
        case CmpOp::Gt: return *l > *r;
        case CmpOp::Ge: return *l >= *r;
      }
      return std::nullopt;
    }
    case FormKind::And: {
      for (const auto& g : f->args) {
        auto r = eval_form(g, env);
        if (!r) return std::nullopt;
        if (!*r) return false;
      }
      return true;
    }
    case FormKind::Or: {
      for (const auto& g : f->args) {
        auto r = eval_form(g, env);
        if (!r) return std::nullopt;
        if (*r) return true;
      }
      return false;
    }
    case FormKind::Not: {
      auto r = eval_form(f->args[0], env);
      if (!r) return std::nullopt;
      return !*r;
    }
    case FormKind::Implies: {
      auto a = eval_form(f->args[0], env);
      if (!a) return std::nullopt;
      if (!*a) return true;
      return eval_form(f->args[1], env);
    }
    case FormKind::Forall: {
      auto lo = eval_expr(f->lo, env);
      auto hi = eval_expr(f->hi, env);
      if (!lo || !hi) return std::nullopt;
      if (*hi - *lo > kQuantWidthCap) return std::nullopt;
      std::optional<long long> saved;
      if (auto it = env.bound.find(f->bound); it != env.bound.end()) saved = it->second;
      std::optional<bool> result = true;
      for (long long t = *lo; t < *hi; ++t) {
        env.bound[f->bound] = t;
        auto r = eval_form(f->body, env);
        if (!r || !*r) {
          result = r;
          break;
        }
      }
      if (saved) env.bound[f->bound] = *saved; else env.bound.erase(f->bound);
      return result;
    }
  }
  return std::nullopt;
}

std::optional<long long> eval_expr(const ExprPtr& e, EvalEnv& env) {
  if (!env.spend()) return std::nullopt;
  switch (e->kind) {
    case ExprKind::IntLit: return e->num;
    case ExprKind::Symbol: {
      auto it = env.scalars.find(e->name);
      if (it == env.scalars.end()) return std::nullopt;
      return it->second;
    }
    case ExprKind::Param: {
      auto it = env.params.find(e->param);
      if (it == env.params.end()) return std::nullopt;
      return it->second;
    }
    case ExprKind::BoundVar: {
      auto it = env.bound.find(e->name);
      if (it == env.bound.end()) return std::nullopt;
      return it->second;
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul: {
      auto l = eval_expr(e->lhs, env);
      auto r = eval_expr(e->rhs, env);
      if (!l || !r) return std::nullopt;
      long long out = 0;
      bool ovf = false;
      switch (e->kind) {
        case ExprKind::Add: ovf = __builtin_add_overflow(*l, *r, &out); break;
        case ExprKind::Sub: ovf = __builtin_sub_overflow(*l, *r, &out); break;
        default: ovf = __builtin_mul_overflow(*l, *r, &out); break;
      }
      if (ovf) return std::nullopt;
      return out;
    }
    case ExprKind::Pow: {
      auto b = eval_expr(e->lhs, env);
      auto x = eval_expr(e->rhs, env);
      if (!b || !x || *x < 0 || *x > 62) return std::nullopt;
      long long r = 1;
      for (long long i = 0; i < *x; ++i)
        if (__builtin_mul_overflow(r, *b, &r)) return std::nullopt;
      return r;
    }
    case ExprKind::Select: {
      auto idx = eval_expr(e->lhs, env);
      if (!idx) return std::nullopt;
      auto it = env.cells.find({e->name, *idx});
      if (it == env.cells.end()) return std::nullopt;
      return it->second;
    }
    case ExprKind::Ite: {
      auto c = eval_form(e->cond, env);
      if (!c) return std::nullopt;
      return eval_expr(*c ? e->lhs : e->rhs, env);
    }
  }
  return std::nullopt;
}

// Enumerates the array cells an evaluation of f would touch under the
// scalar/param assignment in env. Returns false when an index cannot be
// evaluated (nested unknown cell, unbounded quantifier, budget).
bool collect_cells(const FormulaPtr& f, EvalEnv& env,
                   std::set<std::pair<std::string, long long>>& out);

bool collect_cells(const ExprPtr& e, EvalEnv& env,
                   std::set<std::pair<std::string, long long>>& out) {
  if (!env.spend()) return false;
  switch (e->kind) {
    case ExprKind::IntLit:
    case ExprKind::Symbol:
    case ExprKind::Param:
    case ExprKind::BoundVar: return true;
    case ExprKind::Select: {
      if (!collect_cells(e->lhs, env, out)) return false;
      auto idx = eval_expr(e->lhs, env);
      if (!idx) return false;  // index reads an unknown cell; unsupported
      out.insert({e->name, *idx});
      return true;
    }
    case ExprKind::Ite:
      return collect_cells(e->cond, env, out) && collect_cells(e->lhs, env, out) &&
             collect_cells(e->rhs, env, out);
    default: return collect_cells(e->lhs, env, out) && collect_cells(e->rhs, env, out);
  }
}

bool collect_cells(const FormulaPtr& f, EvalEnv& env,
                   std::set<std::pair<std::string, long long>>& out) {
  if (!env.spend()) return false;
  switch (f->kind) {
    case FormKind::BoolLit: return true;
    case FormKind::Cmp:
      return collect_cells(f->lhs, env, out) && collect_cells(f->rhs, env, out);
    case FormKind::Forall: {
      auto lo = eval_expr(f->lo, env);
      auto hi = eval_expr(f->hi, env);
      if (!lo || !hi) return false;
      if (*hi - *lo > kQuantWidthCap) return false;
      std::optional<long long> saved;
      if (auto it = env.bound.find(f->bound); it != env.bound.end()) saved = it->second;
      bool ok = true;
      for (long long t = *lo; t < *hi && ok; ++t) {
        env.bound[f->bound] = t;
        ok = collect_cells(f->body, env, out);
      }
      if (saved) env.bound[f->bound] = *saved; else env.bound.erase(f->bound);
      return ok;
    }
    default:
      for (const auto& g : f->args)
        if (!collect_cells(g, env, out)) return false;
      return true;
  }
}

void collect_literals(const ExprPtr& e, std::set<long long>& out) {
  switch (e->kind) {
    case ExprKind::IntLit: out.insert(e->num); return;
    case ExprKind::Symbol:
    case ExprKind::Param:
    case ExprKind::BoundVar: return;
    case ExprKind::Select: collect_literals(e->lhs, out); return;
    case ExprKind::Ite:
      collect_literals(e->lhs, out);
      collect_literals(e->rhs, out);
      return;
    default:
      collect_literals(e->lhs, out);
      collect_literals(e->rhs, out);
      return;
  }
}

void collect_literals(const FormulaPtr& f, std::set<long long>& out) {
  switch (f->kind) {
    case FormKind::BoolLit: return;
    case FormKind::Cmp:
      collect_literals(f->lhs, out);
      collect_literals(f->rhs, out);
      return;
    case FormKind::Forall:
      collect_literals(f->lo, out);
      collect_literals(f->hi, out);
      collect_literals(f->body, out);
      return;
    default:
      for (const auto& g : f->args) collect_literals(g, out);
      return;
  }
}

// ------------------------------------------------------------- presolve --

constexpr long long kPresolveBudget = 2'000'000;
constexpr long long kBigValue = 1'000'003;

std::optional<Model> presolve_sat(const FormulaPtr& f) {
  std::set<std::string> scalars, arrays;
  collect_symbols(f, scalars, arrays);
  std::set<int> params;
  collect_params(f, params);

  if (scalars.size() + params.size() > 7) return std::nullopt;

  std::set<long long> lits;
  collect_literals(f, lits);
  std::vector<long long> pool = {-1, 0, 1, 2, 3, 5};
  if (!lits.empty()) {
    long long mn = *lits.begin(), mx = *lits.rbegin();
    if (lits.size() <= 8) {
      for (long long v : lits) pool.insert(pool.end(), {v - 1, v, v + 1});
    } else {
      pool.insert(pool.end(), {mn - 1, mn, mn + 1, mx - 1, mx, mx + 1});
    }
  }
  pool.push_back(kBigValue);
  pool.push_back(-kBigValue);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<long long> param_pool = {0, 1, 2, 3, 5};

  std::vector<std::string> svars(scalars.begin(), scalars.end());
  std::vector<int> pvars(params.begin(), params.end());
  const size_t n = svars.size() + pvars.size();

  EvalEnv env;
  env.budget = kPresolveBudget;

  std::vector<size_t> odo(n, 0);
  auto domain_size = [&](size_t i) {
    return i < svars.size() ? pool.size() : param_pool.size();
  };
  while (true) {
    env.scalars.clear();
    env.params.clear();
    for (size_t i = 0; i < svars.size(); ++i) env.scalars[svars[i]] = pool[odo[i]];
    for (size_t i = 0; i < pvars.size(); ++i)
      env.params[pvars[i]] = param_pool[odo[svars.size() + i]];

    std::set<std::pair<std::string, long long>> cellset;
    env.cells.clear();
    bool cells_ok = collect_cells(f, env, cellset);
    if (env.budget <= 0) return std::nullopt;
    if (cells_ok && cellset.size() <= 5) {
      std::vector<long long> cpool = {0, 1, -1};
      for (const auto& [sv, v] : env.scalars) {
        cpool.push_back(v);
        cpool.push_back(v + 1);
      }
      std::sort(cpool.begin(), cpool.end());
      cpool.erase(std::unique(cpool.begin(), cpool.end()), cpool.end());
      if (cpool.size() > 8) cpool.resize(8);

      std::vector<std::pair<std::string, long long>> cells(cellset.begin(), cellset.end());
      std::vector<size_t> codo(cells.size(), 0);
      while (true) {
        for (size_t i = 0; i < cells.size(); ++i) env.cells[cells[i]] = cpool[codo[i]];
        auto r = eval_form(f, env);
        if (env.budget <= 0) return std::nullopt;
        if (r && *r) {
          Model m;
          for (const auto& [sv, v] : env.scalars) m.ints["~" + sv] = v;
          for (const auto& [p, v] : env.params) m.ints["k#" + std::to_string(p)] = v;
          for (const auto& [cell, v] : env.cells)
            m.ints[cell.first + "(" + std::to_string(cell.second) + ")"] = v;
          return m;
        }
        // advance cell odometer
        size_t i = 0;
        for (; i < cells.size(); ++i) {
          if (++codo[i] < cpool.size()) break;
          codo[i] = 0;
        }
        if (i == cells.size()) break;
      }
    }

    // advance scalar/param odometer
    size_t i = 0;
    for (; i < n; ++i) {
      if (++odo[i] < domain_size(i)) break;
      odo[i] = 0;
    }
    if (i == n) return std::nullopt;
  }
}

// --------------------------------------------------------- child process --

struct ProcResult {
  std::string out;
  bool spawned = false;
  bool timed_out = false;
  std::string error;
};

ProcResult run_process(const std::vector<std::string>& argv, int timeout_ms) {
  ProcResult res;
  int pipefd[2];
  if (pipe(pipefd) != 0) {
    res.error = "pipe failed";
    return res;
  }
  pid_t pid = fork();
  if (pid < 0) {
    close(pipefd[0]);
    close(pipefd[1]);
    res.error = "fork failed";
    return res;
  }
  if (pid == 0) {
    // child
    dup2(pipefd[1], STDOUT_FILENO);
    close(pipefd[0]);
    close(pipefd[1]);
    int devnull = open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    std::vector<char*> cargv;
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }
  close(pipefd[1]);
  res.spawned = true;

  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  char buf[4096];
  bool open_ = true;
  while (open_) {
    auto now = std::chrono::steady_clock::now();
    int remain = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
    if (remain <= 0) {
      res.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    struct pollfd pfd = {pipefd[0], POLLIN, 0};
    int pr = poll(&pfd, 1, remain);
    if (pr <= 0) {
      res.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    ssize_t n = read(pipefd[0], buf, sizeof buf);
    if (n > 0)
      res.out.append(buf, static_cast<size_t>(n));
    else
      open_ = false;
  }
  close(pipefd[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (!res.timed_out && WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    res.spawned = false;
    res.error = "cannot execute " + argv[0];
  }
  return res;
}

// ------------------------------------------------------- logging, replay --

std::atomic<long> g_query_counter{0};

struct Stats {
  std::atomic<long> queries{0}, presolve_sat{0}, external{0}, unknown{0};
};
Stats g_stats;

std::mutex g_replay_mutex;
std::map<std::string, std::map<std::string, std::string>> g_replay_cache;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::map<std::string, std::string>& replay_index(const std::string& dir) {
  std::lock_guard<std::mutex> lock(g_replay_mutex);
  auto it = g_replay_cache.find(dir);
  if (it != g_replay_cache.end()) return it->second;
  auto& idx = g_replay_cache[dir];
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const auto path = entry.path();
    if (path.extension() != ".smt2") continue;
    fs::path ans = path;
    ans.replace_extension(".out");
    if (!fs::exists(ans, ec)) continue;
    idx[read_file(path.string())] = read_file(ans.string());
  }
  return idx;
}

std::string first_token(const std::string& out) {
  size_t i = 0;
  while (i < out.size() && std::isspace(static_cast<unsigned char>(out[i]))) ++i;
  size_t j = i;
  while (j < out.size() && !std::isspace(static_cast<unsigned char>(out[j]))) ++j;
  return out.substr(i, j - i);
}

// Parses scalar entries of a z3 get-model answer:
//   (define-fun v_i () Int 5)   /   (define-fun k0 () Int (- 1))
Model parse_model(const std::string& out) {
  Model m;
  m.raw = out;
  std::string flat;
  flat.reserve(out.size());
  for (char c : out) flat += (c == '\n' || c == '\t') ? ' ' : c;
  const std::string tag = "(define-fun ";
  size_t pos = 0;
  while ((pos = flat.find(tag, pos)) != std::string::npos) {
    pos += tag.size();
    size_t nameEnd = flat.find(' ', pos);
    if (nameEnd == std::string::npos) break;
    std::string name = flat.substr(pos, nameEnd - pos);
    size_t p = flat.find_first_not_of(' ', nameEnd);
    if (p == std::string::npos) break;
    if (flat.compare(p, 2, "()") != 0) continue;  // function (array) model, skip
    p = flat.find("Int", p);
    if (p == std::string::npos) break;
    p = flat.find_first_not_of(' ', p + 3);
    if (p == std::string::npos) break;
    long long sign = 1;
    if (flat[p] == '(') {
      // (- N)
      size_t q = flat.find_first_not_of(' ', p + 1);
      if (q == std::string::npos || flat[q] != '-') continue;
      p = flat.find_first_not_of(' ', q + 1);
      sign = -1;
    }
    if (p == std::string::npos || !std::isdigit(static_cast<unsigned char>(flat[p])))
      continue;
    size_t end = p;
    while (end < flat.size() && std::isdigit(static_cast<unsigned char>(flat[end]))) ++end;
    long long v = sign * std::stoll(flat.substr(p, end - p));
    std::string pretty;
    if (name.rfind("v_", 0) == 0)
      pretty = "~" + name.substr(2);
    else if (name.size() > 1 && name[0] == 'k' &&
             std::isdigit(static_cast<unsigned char>(name[1])))
      pretty = "k#" + name.substr(1);
    if (!pretty.empty()) m.ints[pretty] = v;
    pos = end;
  }
  return m;
}

}  // namespace

std::optional<bool> eval_under_model(const FormulaPtr& phi, const Model& m) {
  EvalEnv env;
  for (const auto& [k, v] : m.ints) {
    if (k.size() > 1 && k[0] == '~') {
      env.scalars[k.substr(1)] = v;
    } else if (k.rfind("k#", 0) == 0) {
      env.params[std::atoi(k.c_str() + 2)] = v;
    } else {
      auto open = k.find('(');
      if (open != std::string::npos && k.back() == ')') {
        env.cells[{k.substr(0, open),
                   std::stoll(k.substr(open + 1, k.size() - open - 2))}] = v;
      }
    }
  }
  return eval_form(phi, env);
}

SolverStats solver_stats_snapshot() {
  return {g_stats.queries.load(), g_stats.presolve_sat.load(), g_stats.external.load(),
          g_stats.unknown.load()};
}
void solver_stats_reset() {
  g_stats.queries = 0;
  g_stats.presolve_sat = 0;
  g_stats.external = 0;
  g_stats.unknown = 0;
}

SatResult satisfiable(const FormulaPtr& phi, const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  g_stats.queries++;

  SatResult res;
  FormulaPtr f = simplify(phi);
  if (f->kind == FormKind::BoolLit) {
    res.verdict = f->bval ? Sat::Sat : Sat::Unsat;
    if (f->bval) res.model = Model{};
    res.from_presolve = true;
    res.millis = elapsed();
    return res;
  }

  if (cfg.presolve) {
    if (auto m = presolve_sat(f)) {
      g_stats.presolve_sat++;
      res.verdict = Sat::Sat;
      res.model = std::move(*m);
      res.from_presolve = true;
      res.millis = elapsed();
      return res;
    }
  }

  // full script: option prelude + declarations + assertion + check
  std::ostringstream script;
  if (cfg.timeout_ms > 0) script << "(set-option :timeout " << cfg.timeout_ms << ")\n";
  script << emit_script(f, scan_universe(f), cfg.logic);
  if (cfg.request_models) script << "(get-model)\n";
  const std::string text = script.str();

  long qid = g_query_counter++;
  std::string query_path;
  if (!cfg.log_dir.empty()) {
    std::filesystem::create_directories(cfg.log_dir);
    query_path = cfg.log_dir + "/q" + std::to_string(qid) + ".smt2";
  } else {
    query_path = std::filesystem::temp_directory_path().string() + "/cse-" +
                 std::to_string(getpid()) + "-" + std::to_string(qid) + ".smt2";
  }

  std::string raw;
  if (!cfg.replay_dir.empty()) {
    const auto& idx = replay_index(cfg.replay_dir);
    auto it = idx.find(text);
    if (it == idx.end()) {
      g_stats.unknown++;
      res.verdict = Sat::Unknown;
      res.diagnostic = "replay miss: no logged answer for this query";
      res.millis = elapsed();
      return res;
    }
    raw = it->second;
  } else {
    {
      std::ofstream qf(query_path, std::ios::binary);
      qf << text;
    }
    g_stats.external++;
    const char* env_solver = std::getenv("CSE_SOLVER");
    std::string solver = env_solver && *env_solver ? env_solver : cfg.solver_path;
    // hard backstop over the solver's own soft timeout
    ProcResult pr = run_process({solver, query_path}, cfg.timeout_ms + 2000);
    if (!cfg.log_dir.empty()) {
      std::ofstream af(cfg.log_dir + "/q" + std::to_string(qid) + ".out",
                       std::ios::binary);
      af << pr.out;
    } else {
      std::error_code ec;
      std::filesystem::remove(query_path, ec);
    }
    if (!pr.spawned) {
      g_stats.unknown++;
      res.verdict = Sat::Unknown;
      res.diagnostic = pr.error;
      res.millis = elapsed();
      return res;
    }
    if (pr.timed_out && pr.out.empty()) {
      g_stats.unknown++;
      res.verdict = Sat::Unknown;
      res.diagnostic = "solver timeout after " + std::to_string(cfg.timeout_ms) + " ms";
      res.millis = elapsed();
      return res;
    }
    raw = pr.out;
  }

  std::string tok = first_token(raw);
  if (tok == "sat") {
    res.verdict = Sat::Sat;
    if (cfg.request_models) res.model = parse_model(raw);
  } else if (tok == "unsat") {
    res.verdict = Sat::Unsat;
  } else {
    g_stats.unknown++;
    res.verdict = Sat::Unknown;
    res.diagnostic = tok.empty() ? "no solver output" : "solver answered: " + tok;
  }
  res.millis = elapsed();
  return res;
}

}  // namespace cse
