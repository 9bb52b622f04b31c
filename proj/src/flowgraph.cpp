#include "cse/flowgraph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>

namespace cse {

Instr mk_assign(std::string var, ExprPtr rhs) {
  return Instr{Instr::Kind::Assign, std::move(var), std::move(rhs), nullptr};
}
Instr mk_assume(FormulaPtr cond) {
  return Instr{Instr::Kind::Assume, "", nullptr, std::move(cond)};
}

bool Flowgraph::has_location(const std::string& l) const {
  return std::find(locations.begin(), locations.end(), l) != locations.end();
}
bool Flowgraph::is_int_var(const std::string& v) const {
  return std::find(int_vars.begin(), int_vars.end(), v) != int_vars.end();
}
bool Flowgraph::is_array_var(const std::string& v) const {
  return std::find(array_vars.begin(), array_vars.end(), v) != array_vars.end();
}

std::set<std::string> Flowgraph::var_universe() const {
  std::set<std::string> u(int_vars.begin(), int_vars.end());
  u.insert(array_vars.begin(), array_vars.end());
  return u;
}

std::vector<const Edge*> Flowgraph::successors(const std::string& l) const {
  if (!has_location(l)) throw UnknownLocation("unknown location: " + l);
  std::vector<const Edge*> out;
  for (const Edge& e : edges)
    if (e.src == l) out.push_back(&e);
  return out;
}

std::string Path::loc_string() const {
  std::string s = start;
  for (const Edge* e : edges) s += e->dst;
  return s;
}

bool Path::well_formed() const {
  std::string cur = start;
  for (const Edge* e : edges) {
    if (e->src != cur) return false;
    cur = e->dst;
  }
  return true;
}

// ---------------------------------------------------------------- lexer --

namespace {

struct Token {
  enum class Type { Ident, Number, Punct, End };
  Type type;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : src_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_ = {Token::Type::End, "", line_, col_};
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      tok_.type = Token::Type::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      tok_.type = Token::Type::Number;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    // multi-char punctuation first
    static const char* two[] = {"->", ":=", "==", "!=", "<=", ">=", "&&", "||"};
    for (const char* p : two) {
      if (src_.compare(pos_, 2, p) == 0) {
        tok_ = {Token::Type::Punct, p, line_, col_};
        bump();
        bump();
        return;
      }
    }
    static const std::string singles = ":;[]()+-*<>!,";
    if (singles.find(c) != std::string::npos) {
      tok_ = {Token::Type::Punct, std::string(1, c), line_, col_};
      bump();
      return;
    }
    throw ParseError(ParseError::Kind::Syntax, line_, col_,
                     std::string("unexpected character '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

[[noreturn]] void syntax_error(const Token& t, const std::string& msg) {
  throw ParseError(ParseError::Kind::Syntax, t.line, t.col, msg);
}
[[noreturn]] void semantic_error(const Token& t, const std::string& msg) {
  throw ParseError(ParseError::Kind::Semantic, t.line, t.col, msg);
}

const std::set<std::string> kKeywords = {"program", "int",  "array", "start",
                                         "exit",    "error", "edge",  "assume",
                                         "skip",    "true",  "false"};

// ---------------------------------------------------------------- parser --

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Flowgraph run() {
    expect_keyword("program");
    fg_.name = expect_ident("program name");
    while (lex_.peek().type != Token::Type::End) parse_line();
    if (fg_.start.empty())
      syntax_error(lex_.peek(), "missing 'start' line");
    validate();
    return std::move(fg_);
  }

 private:
  void parse_line() {
    Token t = lex_.peek();
    if (t.type != Token::Type::Ident) syntax_error(t, "expected a directive");
    if (t.text == "int") {
      lex_.next();
      do declare(expect_ident_tok("variable name"), /*array=*/false);
      while (lex_.peek().type == Token::Type::Ident && !kKeywords.count(lex_.peek().text));
    } else if (t.text == "array") {
      lex_.next();
      do declare(expect_ident_tok("variable name"), /*array=*/true);
      while (lex_.peek().type == Token::Type::Ident && !kKeywords.count(lex_.peek().text));
    } else if (t.text == "start") {
      lex_.next();
      if (!fg_.start.empty()) semantic_error(t, "duplicate 'start' line");
      fg_.start = touch_location(expect_ident("location"));
    } else if (t.text == "exit") {
      lex_.next();
      do fg_.exits.insert(touch_location(expect_ident("location")));
      while (lex_.peek().type == Token::Type::Ident && !kKeywords.count(lex_.peek().text));
    } else if (t.text == "error") {
      lex_.next();
      while (lex_.peek().type == Token::Type::Ident && !kKeywords.count(lex_.peek().text))
        fg_.errors.insert(touch_location(expect_ident("location")));
    } else if (t.text == "edge") {
      parse_edge();
    } else {
      syntax_error(t, "unknown directive '" + t.text + "'");
    }
  }

  void declare(const Token& name, bool array) {
    if (fg_.is_int_var(name.text) || fg_.is_array_var(name.text))
      semantic_error(name, "duplicate declaration of '" + name.text + "'");
    (array ? fg_.array_vars : fg_.int_vars).push_back(name.text);
  }

  std::string touch_location(const std::string& id) {
    if (!fg_.has_location(id)) fg_.locations.push_back(id);
    return id;
  }

  void parse_edge() {
    Token kw = lex_.next();  // 'edge'
    Edge e;
    e.src = touch_location(expect_ident("source location"));
    expect_punct("->");
    e.dst = touch_location(expect_ident("target location"));
    expect_punct(":");
    e.body.push_back(parse_instr());
    while (lex_.peek().type == Token::Type::Punct && lex_.peek().text == ";") {
      lex_.next();
      e.body.push_back(parse_instr());
    }
    e.index = static_cast<int>(fg_.edges.size());
    edge_tokens_.push_back(kw);
    fg_.edges.push_back(std::move(e));
  }

  Instr parse_instr() {
    Token t = lex_.peek();
    if (t.type != Token::Type::Ident) syntax_error(t, "expected an instruction");
    if (t.text == "skip") {
      lex_.next();
      return mk_assume(f_true());
    }
    if (t.text == "assume") {
      lex_.next();
      return mk_assume(parse_bool());
    }
    Token lhs = lex_.next();
    if (kKeywords.count(lhs.text)) syntax_error(lhs, "expected an instruction");
    if (fg_.is_array_var(lhs.text))
      semantic_error(lhs, "assignment to array '" + lhs.text + "'");
    if (!fg_.is_int_var(lhs.text))
      semantic_error(lhs, "undeclared variable '" + lhs.text + "'");
    expect_punct(":=");
    return mk_assign(lhs.text, parse_int_expr());
  }

  FormulaPtr parse_bool() {  // disjunction
    FormulaPtr f = parse_conj();
    while (at_punct("||")) {
      lex_.next();
      f = mk_or({f, parse_conj()});
    }
    return f;
  }

  FormulaPtr parse_conj() {
    FormulaPtr f = parse_bool_unary();
    while (at_punct("&&")) {
      lex_.next();
      f = mk_and({f, parse_bool_unary()});
    }
    return f;
  }

  FormulaPtr parse_bool_unary() {
    Token t = lex_.peek();
    if (at_punct("!")) {
      lex_.next();
      return mk_not(parse_bool_unary());
    }
    if (t.type == Token::Type::Ident && t.text == "true") {
      lex_.next();
      return f_true();
    }
    if (t.type == Token::Type::Ident && t.text == "false") {
      lex_.next();
      return f_false();
    }
    if (at_punct("(")) {
      // Either a parenthesised boolean or a parenthesised arithmetic
      // operand of a comparison; try boolean first by lookahead.
      return parse_cmp_or_paren();
    }
    return parse_cmp();
  }

  // A '(' can open either a boolean group or an integer subexpression.
  // Scan ahead to the matching ')' and classify by what follows or by the
  // operators found inside.
  FormulaPtr parse_cmp_or_paren() {
    if (paren_is_boolean()) {
      lex_.next();  // '('
      FormulaPtr f = parse_bool();
      expect_punct(")");
      return f;
    }
    return parse_cmp();
  }

  bool paren_is_boolean() {
    // Cheap classification: a boolean group contains a comparison or a
    // boolean operator at depth >= 1 before its matching ')'.
    Lexer probe = lex_;
    Token open = probe.next();
    (void)open;
    int depth = 1;
    while (depth > 0) {
      Token t = probe.next();
      if (t.type == Token::Type::End) return false;
      if (t.type == Token::Type::Punct) {
        if (t.text == "(") ++depth;
        else if (t.text == ")") --depth;
        else if (t.text == "==" || t.text == "!=" || t.text == "<" ||
                 t.text == "<=" || t.text == ">" || t.text == ">=" ||
                 t.text == "&&" || t.text == "||" || t.text == "!")
          return true;
      }
    }
    return false;
  }

  FormulaPtr parse_cmp() {
    ExprPtr l = parse_int_expr();
    Token t = lex_.peek();
    CmpOp op;
    if (at_punct("==")) op = CmpOp::Eq;
    else if (at_punct("!=")) op = CmpOp::Ne;
    else if (at_punct("<=")) op = CmpOp::Le;
    else if (at_punct(">=")) op = CmpOp::Ge;
    else if (at_punct("<")) op = CmpOp::Lt;
    else if (at_punct(">")) op = CmpOp::Gt;
    else syntax_error(t, "expected a comparison operator");
    lex_.next();
    return mk_cmp(op, l, parse_int_expr());
  }

  ExprPtr parse_int_expr() {  // additive
    ExprPtr e = parse_term();
    while (at_punct("+") || at_punct("-")) {
      bool add = lex_.next().text == "+";
      ExprPtr r = parse_term();
      e = add ? mk_add(e, r) : mk_sub(e, r);
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (at_punct("*")) {
      lex_.next();
      e = mk_mul(e, parse_unary());
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (at_punct("-")) {
      lex_.next();
      return mk_sub(mk_int(0), parse_unary());
    }
    return parse_atom();
  }

  ExprPtr parse_atom() {
    Token t = lex_.peek();
    if (t.type == Token::Type::Number) {
      lex_.next();
      try {
        return mk_int(std::stoll(t.text));
      } catch (const std::out_of_range&) {
        syntax_error(t, "integer literal out of range");
      }
    }
    if (at_punct("(")) {
      lex_.next();
      ExprPtr e = parse_int_expr();
      expect_punct(")");
      return e;
    }
    if (t.type == Token::Type::Ident && !kKeywords.count(t.text)) {
      lex_.next();
      if (fg_.is_array_var(t.text)) {
        expect_punct("[");
        ExprPtr idx = parse_int_expr();
        expect_punct("]");
        return mk_select(t.text, idx);
      }
      if (!fg_.is_int_var(t.text))
        semantic_error(t, "undeclared variable '" + t.text + "'");
      if (at_punct("["))
        semantic_error(t, "'" + t.text + "' is not an array");
      return mk_sym(t.text);
    }
    syntax_error(t, "expected an expression");
  }

  bool at_punct(const std::string& p) {
    return lex_.peek().type == Token::Type::Punct && lex_.peek().text == p;
  }

  void expect_punct(const std::string& p) {
    if (!at_punct(p)) syntax_error(lex_.peek(), "expected '" + p + "'");
    lex_.next();
  }

  void expect_keyword(const std::string& kw) {
    Token t = lex_.peek();
    if (t.type != Token::Type::Ident || t.text != kw)
      syntax_error(t, "expected '" + kw + "'");
    lex_.next();
  }

  Token expect_ident_tok(const std::string& what) {
    Token t = lex_.peek();
    if (t.type != Token::Type::Ident) syntax_error(t, "expected " + what);
    if (kKeywords.count(t.text))
      syntax_error(t, "keyword '" + t.text + "' used as " + what);
    return lex_.next();
  }

  std::string expect_ident(const std::string& what) { return expect_ident_tok(what).text; }

  void validate() {
    for (const auto& l : fg_.exits)
      if (fg_.errors.count(l))
        semantic_error(Token{Token::Type::End, "", 0, 0},
                       "location '" + l + "' is both exit and error");
    for (size_t i = 0; i < fg_.edges.size(); ++i) {
      const Edge& e = fg_.edges[i];
      if (fg_.is_terminal(e.src))
        semantic_error(edge_tokens_[i],
                       "edge from " + std::string(fg_.exits.count(e.src) ? "exit" : "error") +
                           " location '" + e.src + "'");
    }
    // reachability warning
    std::set<std::string> seen{fg_.start};
    std::deque<std::string> work{fg_.start};
    while (!work.empty()) {
      std::string l = work.front();
      work.pop_front();
      for (const Edge& e : fg_.edges)
        if (e.src == l && seen.insert(e.dst).second) work.push_back(e.dst);
    }
    std::string unreachable;
    for (const auto& l : fg_.locations)
      if (!seen.count(l)) unreachable += (unreachable.empty() ? "" : ", ") + l;
    if (!unreachable.empty())
      fg_.warnings.push_back("unreachable locations: " + unreachable);
  }

  Lexer lex_;
  Flowgraph fg_;
  std::vector<Token> edge_tokens_;
};

}  // namespace

Flowgraph parse_flowgraph(const std::string& text) { return Parser(text).run(); }

Flowgraph parse_flowgraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_flowgraph(ss.str());
}

std::string to_string(const Instr& in, PrintStyle style) {
  if (in.kind == Instr::Kind::Assign)
    return in.var + " := " + to_string(in.rhs, style);
  return "assume " + to_string(in.cond, style);
}

std::string print_flowgraph(const Flowgraph& fg) {
  std::ostringstream os;
  os << "program " << fg.name << "\n";
  if (!fg.int_vars.empty()) {
    os << "int";
    for (const auto& v : fg.int_vars) os << ' ' << v;
    os << "\n";
  }
  if (!fg.array_vars.empty()) {
    os << "array";
    for (const auto& v : fg.array_vars) os << ' ' << v;
    os << "\n";
  }
  os << "start " << fg.start << "\n";
  if (!fg.exits.empty()) {
    os << "exit";
    for (const auto& l : fg.exits) os << ' ' << l;
    os << "\n";
  }
  if (!fg.errors.empty()) {
    os << "error";
    for (const auto& l : fg.errors) os << ' ' << l;
    os << "\n";
  }
  for (const Edge& e : fg.edges) {
    os << "edge " << e.src << " -> " << e.dst << " : ";
    for (size_t i = 0; i < e.body.size(); ++i) {
      if (i) os << " ; ";
      os << to_string(e.body[i], PrintStyle::Source);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace cse
