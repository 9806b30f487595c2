#include "dtpasp/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <set>

namespace dtpasp {
namespace {

enum class Tok {
  Ident,     // lowercase-led identifier
  Variable,  // uppercase- or '_'-led identifier
  Number,
  ColonColon,
  If,  // :-
  Semicolon,
  Comma,
  Dot,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Colon,
  Not,    // `not` or `\+`
  Count,  // #count
  CmpLt,
  CmpLe,
  CmpGt,
  CmpGe,
  CmpEq,
  CmpNe,
  Minus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::End, "", line, col};
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number(line, col);
    if (std::islower(static_cast<unsigned char>(c))) return ident(line, col);
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') return variable(line, col);
    switch (c) {
      case ':':
        if (peek(1) == ':') return sym(Tok::ColonColon, 2, line, col);
        if (peek(1) == '-') return sym(Tok::If, 2, line, col);
        return sym(Tok::Colon, 1, line, col);
      case ';': return sym(Tok::Semicolon, 1, line, col);
      case ',': return sym(Tok::Comma, 1, line, col);
      case '.': return sym(Tok::Dot, 1, line, col);
      case '(': return sym(Tok::LParen, 1, line, col);
      case ')': return sym(Tok::RParen, 1, line, col);
      case '{': return sym(Tok::LBrace, 1, line, col);
      case '}': return sym(Tok::RBrace, 1, line, col);
      case '<':
        if (peek(1) == '=') return sym(Tok::CmpLe, 2, line, col);
        return sym(Tok::CmpLt, 1, line, col);
      case '>':
        if (peek(1) == '=') return sym(Tok::CmpGe, 2, line, col);
        return sym(Tok::CmpGt, 1, line, col);
      case '=':
        if (peek(1) == '=') return sym(Tok::CmpEq, 2, line, col);
        return sym(Tok::CmpEq, 1, line, col);
      case '!':
        if (peek(1) == '=') return sym(Tok::CmpNe, 2, line, col);
        break;
      case '-': return sym(Tok::Minus, 1, line, col);
      case '\\':
        if (peek(1) == '+') return sym(Tok::Not, 2, line, col);
        break;
      case '#': {
        std::size_t p = pos_ + 1;
        std::string word;
        while (p < src_.size() && std::isalpha(static_cast<unsigned char>(src_[p])))
          word += src_[p++];
        if (word == "count") {
          advance(p - pos_);
          return {Tok::Count, "#count", line, col};
        }
        throw ParseError("unknown aggregate '#" + word + "'", line, col);
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  char peek(std::size_t off) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }
  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }
  Token sym(Tok k, std::size_t len, int line, int col) {
    std::string text(src_.substr(pos_, len));
    advance(len);
    return {k, text, line, col};
  }
  Token number(int line, int col) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
    // A '.' is part of the number only when a digit follows; otherwise it
    // is the statement terminator.
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      advance(1);
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        advance(p - pos_);
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
      }
    }
    return {Tok::Number, std::string(src_.substr(start, pos_ - start)), line, col};
  }
  Token ident(int line, int col) {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      advance(1);
    std::string text(src_.substr(start, pos_ - start));
    if (text == "not") return {Tok::Not, text, line, col};
    return {Tok::Ident, text, line, col};
  }
  Token variable(int line, int col) {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      advance(1);
    return {Tok::Variable, std::string(src_.substr(start, pos_ - start)), line, col};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { tok_ = lexer_.next(); }

  Program run() {
    Program p;
    while (tok_.kind != Tok::End) statement(p);
    validate(p);
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, tok_.line, tok_.column); }

  Token eat(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what + ", got '" + tok_.text + "'");
    Token t = tok_;
    tok_ = lexer_.next();
    return t;
  }
  bool accept(Tok kind) {
    if (tok_.kind != kind) return false;
    tok_ = lexer_.next();
    return true;
  }

  double number_value(const Token& t) { return std::strtod(t.text.c_str(), nullptr); }

  void statement(Program& p) {
    if (tok_.kind == Tok::Number) {
      Token num = tok_;
      tok_ = lexer_.next();
      if (tok_.kind == Tok::LBrace)
        throw ParseError("explicit choice bounds are not supported", num.line, num.column);
      eat(Tok::ColonColon, "'::'");
      Atom a = atom();
      eat(Tok::Dot, "'.'");
      double prob = number_value(num);
      if (prob < 0.0 || prob > 1.0)
        throw ParseError("probability " + num.text + " outside [0,1]", num.line, num.column);
      if (!a.ground())
        throw ParseError("probabilistic fact " + a.to_string() + " is not ground", num.line,
                         num.column);
      p.prob_facts.push_back({std::move(a), prob});
      return;
    }
    if (tok_.kind == Tok::Ident && tok_.text == "decision") {
      Token kw = tok_;
      tok_ = lexer_.next();
      if (tok_.kind == Tok::Dot) {  // plain fact named "decision"
        tok_ = lexer_.next();
        p.rules.push_back({{Atom{"decision", {}}}, {}, Rule::Kind::Fact});
        return;
      }
      Atom a = atom();
      eat(Tok::Dot, "'.'");
      if (!a.ground())
        throw ParseError("decision atom " + a.to_string() + " is not ground", kw.line, kw.column);
      p.decisions.push_back(std::move(a));
      return;
    }
    if (tok_.kind == Tok::Ident && tok_.text == "utility") {
      Token kw = tok_;
      tok_ = lexer_.next();
      eat(Tok::LParen, "'('");
      Atom a = atom();
      eat(Tok::Comma, "','");
      bool neg = accept(Tok::Minus);
      Token num = eat(Tok::Number, "number");
      eat(Tok::RParen, "')'");
      eat(Tok::Dot, "'.'");
      if (!a.ground())
        throw ParseError("utility on non-ground atom " + a.to_string(), kw.line, kw.column);
      double r = number_value(num);
      p.utilities.push_back({std::move(a), neg ? -r : r});
      return;
    }
    if (tok_.kind == Tok::LBrace) {
      tok_ = lexer_.next();
      Atom a = atom();
      eat(Tok::RBrace, "'}'");
      Rule r;
      r.kind = Rule::Kind::Choice;
      r.head.push_back(std::move(a));
      if (accept(Tok::If)) r.body = body();
      eat(Tok::Dot, "'.'");
      p.rules.push_back(std::move(r));
      return;
    }
    if (accept(Tok::If)) {  // constraint
      Rule r;
      r.kind = Rule::Kind::Constraint;
      r.body = body();
      eat(Tok::Dot, "'.'");
      p.rules.push_back(std::move(r));
      return;
    }
    // Disjunctive / normal rule or fact.
    Rule r;
    r.head.push_back(atom());
    while (accept(Tok::Semicolon)) r.head.push_back(atom());
    if (accept(Tok::If)) r.body = body();
    eat(Tok::Dot, "'.'");
    if (r.head.size() > 1)
      r.kind = Rule::Kind::Disjunctive;
    else
      r.kind = r.body.empty() ? Rule::Kind::Fact : Rule::Kind::Normal;
    p.rules.push_back(std::move(r));
  }

  std::vector<BodyElement> body() {
    std::vector<BodyElement> out;
    do {
      if (tok_.kind == Tok::Count) {
        out.push_back(BodyElement::agg(aggregate()));
      } else if (accept(Tok::Not)) {
        out.push_back(BodyElement::lit({atom(), false}));
      } else {
        out.push_back(BodyElement::lit({atom(), true}));
      }
    } while (accept(Tok::Comma));
    return out;
  }

  AggregateAtom aggregate() {
    eat(Tok::Count, "#count");
    eat(Tok::LBrace, "'{'");
    AggregateAtom agg;
    do {
      AggregateElement el;
      el.terms.push_back(term());
      while (accept(Tok::Comma)) el.terms.push_back(term());
      eat(Tok::Colon, "':'");
      el.condition.push_back(accept(Tok::Not) ? Literal{atom(), false} : Literal{atom(), true});
      while (accept(Tok::Comma))
        el.condition.push_back(accept(Tok::Not) ? Literal{atom(), false} : Literal{atom(), true});
      agg.elements.push_back(std::move(el));
    } while (accept(Tok::Semicolon));
    eat(Tok::RBrace, "'}'");
    switch (tok_.kind) {
      case Tok::CmpLt: agg.comparator = Comparator::Lt; break;
      case Tok::CmpLe: agg.comparator = Comparator::Le; break;
      case Tok::CmpGt: agg.comparator = Comparator::Gt; break;
      case Tok::CmpGe: agg.comparator = Comparator::Ge; break;
      case Tok::CmpEq: agg.comparator = Comparator::Eq; break;
      case Tok::CmpNe: agg.comparator = Comparator::Ne; break;
      default: fail("expected comparison operator after aggregate");
    }
    tok_ = lexer_.next();
    if (tok_.kind == Tok::Number) {
      agg.guard = Term::integer(static_cast<std::int64_t>(number_value(tok_)));
      tok_ = lexer_.next();
    } else if (tok_.kind == Tok::Variable) {
      agg.guard = Term::variable(tok_.text);
      tok_ = lexer_.next();
    } else {
      fail("expected aggregate guard (integer or variable)");
    }
    return agg;
  }

  Atom atom() {
    Token name = eat(Tok::Ident, "atom name");
    Atom a;
    a.predicate = name.text;
    if (accept(Tok::LParen)) {
      a.args.push_back(term());
      while (accept(Tok::Comma)) a.args.push_back(term());
      eat(Tok::RParen, "')'");
    }
    return a;
  }

  Term term() {
    if (tok_.kind == Tok::Ident) {
      Term t = Term::constant(tok_.text);
      tok_ = lexer_.next();
      return t;
    }
    if (tok_.kind == Tok::Variable) {
      Term t = Term::variable(tok_.text);
      tok_ = lexer_.next();
      return t;
    }
    bool neg = accept(Tok::Minus);
    if (tok_.kind == Tok::Number) {
      if (tok_.text.find('.') != std::string::npos) fail("term must be an integer, not a real");
      auto v = static_cast<std::int64_t>(number_value(tok_));
      tok_ = lexer_.next();
      return Term::integer(neg ? -v : v);
    }
    fail("expected term");
  }

  void validate(const Program& p) {
    std::set<std::string> facts, decisions;
    for (const auto& pf : p.prob_facts)
      if (!facts.insert(pf.atom.to_string()).second)
        fail("duplicate probabilistic fact " + pf.atom.to_string());
    for (const auto& d : p.decisions) {
      std::string key = d.to_string();
      if (!decisions.insert(key).second) fail("duplicate decision atom " + key);
      if (facts.count(key))
        fail("atom " + key + " declared both probabilistic fact and decision");
    }
    std::set<std::string> utils;
    for (const auto& u : p.utilities) {
      std::string key = u.atom.to_string();
      if (!utils.insert(key).second) fail("duplicate utility attribute on " + key);
      if (decisions.count(key) || facts.count(key))
        fail("utility on " + std::string(decisions.count(key) ? "decision atom " : "probabilistic fact ") +
             key + "; add a rule r_" + key + " :- " + key + " and attach the utility to its head");
    }
    for (const auto& r : p.rules) {
      for (const auto& h : r.head) {
        std::string key = h.to_string();
        if (h.ground() && (facts.count(key) || decisions.count(key)))
          fail("atom " + key + " appears in a rule head (disjoint condition violated)");
        // Non-ground heads could still ground onto a fact/decision atom;
        // the grounder re-checks after instantiation.
      }
    }
  }

  Lexer lexer_;
  Token tok_;
};

}  // namespace

Program parse(std::string_view source) { return Parser(source).run(); }

}  // namespace dtpasp
