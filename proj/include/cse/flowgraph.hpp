#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cse/expr.hpp"

namespace cse {

struct ParseError : std::runtime_error {
  enum class Kind { Syntax, Semantic };
  Kind kind;
  int line;
  int col;
  ParseError(Kind k, int ln, int c, const std::string& msg)
      : std::runtime_error(msg), kind(k), line(ln), col(c) {}
};

struct UnknownLocation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One edge instruction: either `v := e` or `assume c`. The textual `skip`
/// is parsed as `assume true`.
struct Instr {
  enum class Kind { Assign, Assume };
  Kind kind;
  std::string var;  // Assign target
  ExprPtr rhs;      // Assign right-hand side (variable reads as Symbol nodes)
  FormulaPtr cond;  // Assume condition
};

Instr mk_assign(std::string var, ExprPtr rhs);
Instr mk_assume(FormulaPtr cond);

struct Edge {
  std::string src;
  std::string dst;
  std::vector<Instr> body;  // non-empty
  int index = -1;           // declaration order
};

/// The program under analysis: locations plus instruction-labelled edges.
/// Immutable after construction.
struct Flowgraph {
  std::string name;
  std::vector<std::string> locations;  // first-mention order
  std::string start;
  std::set<std::string> exits;
  std::set<std::string> errors;
  std::vector<std::string> int_vars;    // declaration order
  std::vector<std::string> array_vars;  // declaration order
  std::vector<Edge> edges;
  std::vector<std::string> warnings;  // e.g. unreachable locations

  bool has_location(const std::string& l) const;
  bool is_terminal(const std::string& l) const {
    return exits.count(l) || errors.count(l);
  }
  bool is_int_var(const std::string& v) const;
  bool is_array_var(const std::string& v) const;
  std::set<std::string> var_universe() const;

  /// All edges with src = l, in declaration order.
  std::vector<const Edge*> successors(const std::string& l) const;
};

/// Parses and validates the textual flowgraph format. Throws ParseError.
Flowgraph parse_flowgraph(const std::string& text);
Flowgraph parse_flowgraph_file(const std::string& path);

/// Canonical textual form; parse(print(fg)) prints byte-identically.
std::string print_flowgraph(const Flowgraph& fg);

std::string to_string(const Instr& in, PrintStyle style = PrintStyle::Source);

/// A path: a start location plus a sequence of edges whose consecutive
/// endpoints agree. An empty edge list is the single-location path.
struct Path {
  std::string start;
  std::vector<const Edge*> edges;

  std::string last_loc() const { return edges.empty() ? start : edges.back()->dst; }
  std::string loc_string() const;  // concatenated location ids
  bool well_formed() const;
};

}  // namespace cse
