#include <cctype>

#include "gadgetlab/error.hpp"
#include "gadgetlab/formula.hpp"

namespace gadgetlab {

namespace {

enum class Tok { Ident, Const, LParen, RParen, Comma, Dot, Eq, Neq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_keyword(const std::string& s) {
  return s == "exists" || s == "forall" || s == "and" || s == "or" || s == "not" || s == "true" ||
         s == "false";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  Expr parse() {
    Expr e = formula();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (ident_start(c)) {
        while (i < text_.size() && ident_char(text_[i])) ++i;
        tokens_.push_back({Tok::Ident, std::string(text_.substr(start, i - start)), start});
        continue;
      }
      if (c == '@') {
        ++i;
        std::size_t name_start = i;
        while (i < text_.size() && ident_char(text_[i])) ++i;
        if (i == name_start) throw error_at(start, "expected constant name after '@'");
        tokens_.push_back({Tok::Const, std::string(text_.substr(name_start, i - name_start)), start});
        continue;
      }
      if (c == '!' && i + 1 < text_.size() && text_[i + 1] == '=') {
        tokens_.push_back({Tok::Neq, "!=", start});
        i += 2;
        continue;
      }
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '=': kind = Tok::Eq; break;
        default: throw error_at(start, std::string("unexpected character '") + c + "'");
      }
      tokens_.push_back({kind, std::string(1, c), start});
      ++i;
    }
    tokens_.push_back({Tok::End, "end of input", text_.size()});
  }

  ParseError error_at(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return ParseError(message, line, column);
  }

  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw error_at(t.offset, message);
  }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool peek_word(const char* word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    advance();
  }

  Expr formula() {
    if (peek_word("exists") || peek_word("forall")) return quantified();
    return disjunction();
  }

  Expr quantified() {
    bool is_exists = advance().text == "exists";
    const Token& v = peek();
    if (v.kind != Tok::Ident || is_keyword(v.text)) fail(v, "expected variable name");
    std::string name = advance().text;
    expect(Tok::Dot, "'.' after quantified variable");
    Expr body = formula();
    return is_exists ? fo::exists(name, std::move(body)) : fo::forall(name, std::move(body));
  }

  Expr disjunction() {
    std::vector<Expr> parts{conjunction()};
    while (peek_word("or")) {
      advance();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? std::move(parts[0]) : fo::disj(std::move(parts));
  }

  Expr conjunction() {
    std::vector<Expr> parts{literal()};
    while (peek_word("and")) {
      advance();
      parts.push_back(literal());
    }
    return parts.size() == 1 ? std::move(parts[0]) : fo::conj(std::move(parts));
  }

  Expr literal() {
    if (peek_word("not")) {
      advance();
      return fo::neg(literal());
    }
    if (peek_word("exists") || peek_word("forall")) return quantified();
    return atom();
  }

  Expr::RawTerm term() {
    const Token& t = peek();
    if (t.kind == Tok::Const) return fo::constant(advance().text);
    if (t.kind == Tok::Ident && !is_keyword(t.text)) return fo::var(advance().text);
    fail(t, "expected a term");
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      advance();
      Expr inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (peek_word("true")) {
      advance();
      return fo::truth();
    }
    if (peek_word("false")) {
      advance();
      return fo::falsity();
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text) && peek(1).kind == Tok::LParen) {
      std::string name = advance().text;
      advance();
      std::vector<Expr::RawTerm> terms{term()};
      while (peek().kind == Tok::Comma) {
        advance();
        terms.push_back(term());
      }
      expect(Tok::RParen, "')' closing the argument list");
      return fo::atom(std::move(name), std::move(terms));
    }
    Expr::RawTerm lhs = term();
    if (peek().kind == Tok::Eq) {
      advance();
      return fo::eq(std::move(lhs), term());
    }
    if (peek().kind == Tok::Neq) {
      advance();
      return fo::neg(fo::eq(std::move(lhs), term()));
    }
    fail(peek(), "expected '=' or '!='");
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::optional<std::vector<std::string>>& free_order) {
  Expr e = Parser(text).parse();
  Formula f = Formula::from_expr(e, free_order);
  f.relations_used();  // rejects inconsistent arities
  return f;
}

Formula parse_formula(std::string_view text, const Language& language,
                      const std::optional<std::vector<std::string>>& free_order) {
  Formula f = parse_formula(text, free_order);
  f.check_language(language);
  return f;
}

}  // namespace gadgetlab
