#include "ltlfuc/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ltlfuc {

bool is_reserved_name(std::string_view name) {
  return name == kEndVar || name.starts_with(kActivationPrefix) || name.starts_with(kPastPrefix);
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

ReservedIdentifierError::ReservedIdentifierError(std::size_t line, std::size_t column,
                                                 const std::string& name)
    : ParseError(line, column, "reserved identifier '" + name + "'"), name_(name) {}

namespace {

enum class Tok { Ident, True, False, LParen, RParen, Not, And, Or, Implies, Iff, Unary, Binary, End };

struct Token {
  Tok kind;
  std::string text;
  Op op = Op::True;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool keyword_op(std::string_view word, Tok& kind, Op& op) {
  if (word.size() != 1)
    return false;
  switch (word[0]) {
  case 'X': kind = Tok::Unary; op = Op::Next; return true;
  case 'N': kind = Tok::Unary; op = Op::WeakNext; return true;
  case 'F': kind = Tok::Unary; op = Op::Eventually; return true;
  case 'G': kind = Tok::Unary; op = Op::Globally; return true;
  case 'Y': kind = Tok::Unary; op = Op::Yesterday; return true;
  case 'Z': kind = Tok::Unary; op = Op::WeakYesterday; return true;
  case 'O': kind = Tok::Unary; op = Op::Once; return true;
  case 'H': kind = Tok::Unary; op = Op::Historically; return true;
  case 'U': kind = Tok::Binary; op = Op::Until; return true;
  case 'R': kind = Tok::Binary; op = Op::Release; return true;
  case 'S': kind = Tok::Binary; op = Op::Since; return true;
  case 'T': kind = Tok::Binary; op = Op::Trigger; return true;
  default: return false;
  }
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        if (t.text == "true")
          t.kind = Tok::True;
        else if (t.text == "false")
          t.kind = Tok::False;
        else if (!keyword_op(t.text, t.kind, t.op))
          t.kind = Tok::Ident;
      } else if (c == '(') {
        advance();
        t.kind = Tok::LParen;
      } else if (c == ')') {
        advance();
        t.kind = Tok::RParen;
      } else if (c == '!') {
        advance();
        t.kind = Tok::Not;
      } else if (c == '&') {
        advance();
        t.kind = Tok::And;
      } else if (c == '|') {
        advance();
        t.kind = Tok::Or;
      } else if (text_.substr(pos_, 2) == "->") {
        advance(2);
        t.kind = Tok::Implies;
      } else if (text_.substr(pos_, 3) == "<->") {
        advance(3);
        t.kind = Tok::Iff;
      } else {
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

private:
  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n; ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {}

  Formula parse_all() {
    if (peek().kind == Tok::End)
      fail("empty input");
    Formula f = parse_iff();
    if (peek().kind != Tok::End)
      fail("unexpected token after formula");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string where = t.kind == Tok::End ? "end of input" : "'" + describe(t) + "'";
    throw ParseError(t.line, t.column, msg + " at " + where);
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Not: return "!";
    case Tok::And: return "&";
    case Tok::Or: return "|";
    case Tok::Implies: return "->";
    case Tok::Iff: return "<->";
    default: return t.text;
    }
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (peek().kind == Tok::Iff) {
      take();
      return iff(lhs, parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      take();
      return implies(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    if (peek().kind == Tok::Or) {
      take();
      return disj(lhs, parse_or());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_binary_temporal();
    if (peek().kind == Tok::And) {
      take();
      return conj(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_binary_temporal() {
    Formula lhs = parse_unary();
    if (peek().kind == Tok::Binary) {
      Op op = take().op;
      return Formula::binary(op, lhs, parse_binary_temporal());
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      take();
      return neg(parse_unary());
    }
    if (t.kind == Tok::Unary) {
      Op op = take().op;
      return Formula::unary(op, parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::True: take(); return top();
    case Tok::False: take(); return bottom();
    case Tok::Ident: {
      if (!opts_.allow_reserved && is_reserved_name(t.text))
        throw ReservedIdentifierError(t.line, t.column, t.text);
      return var(take().text);
    }
    case Tok::LParen: {
      take();
      Formula f = parse_iff();
      if (peek().kind != Tok::RParen)
        fail("expected ')'");
      take();
      return f;
    }
    default: fail("expected formula");
    }
  }

  std::vector<Token> toks_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  return Parser(Lexer(text).run(), opts).parse_all();
}

Spec parse_spec(std::string_view text, std::string name, const ParseOptions& opts) {
  return make_spec(std::move(name), split_conjuncts(parse_formula(text, opts)));
}

Spec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path.stem().string());
}

} // namespace ltlfuc
