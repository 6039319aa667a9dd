#include "mgl/parse.hpp"

#include <cctype>
#include <vector>

#include "mgl/error.hpp"

namespace mgl {
namespace {

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

struct Token {
  enum class Kind { Ident, LParen, RParen, LBrace, RBrace, Colon, Dot, Arrow, End };
  Kind kind;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token out = current_;
    advance();
    return out;
  }

  void expect(Token::Kind kind, const char* what) {
    if (current_.kind != kind)
      fail(ErrorCode::ParseError,
           std::string("expected ") + what + " near \"" + describe() + "\"");
    advance();
  }

  std::string describe() const {
    return current_.kind == Token::Kind::End ? "<end of input>" : current_.text;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) {
      current_ = Token{Token::Kind::End, ""};
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '(': current_ = {Token::Kind::LParen, "("}; ++pos_; return;
      case ')': current_ = {Token::Kind::RParen, ")"}; ++pos_; return;
      case '{': current_ = {Token::Kind::LBrace, "{"}; ++pos_; return;
      case '}': current_ = {Token::Kind::RBrace, "}"}; ++pos_; return;
      case ':': current_ = {Token::Kind::Colon, ":"}; ++pos_; return;
      case '.': current_ = {Token::Kind::Dot, "."}; ++pos_; return;
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          current_ = {Token::Kind::Arrow, "->"};
          pos_ += 2;
          return;
        }
        fail(ErrorCode::ParseError, "stray '-' in input");
    }
    if (ident_start(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      current_ = {Token::Kind::Ident, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    fail(ErrorCode::ParseError, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_{Token::Kind::End, ""};
};

class Parser {
 public:
  Parser(const Signature& sig, std::string_view src) : sig_(sig), lex_(src) {}

  Type type_toplevel() {
    Type t = type();
    finish();
    return t;
  }

  Term term_toplevel() {
    Term t = term();
    finish();
    return t;
  }

 private:
  void finish() {
    if (lex_.peek().kind != Token::Kind::End)
      fail(ErrorCode::ParseError, "trailing input near \"" + lex_.describe() + "\"");
  }

  bool type_var_bound(const std::string& name) const {
    for (auto it = type_binders_.rbegin(); it != type_binders_.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  const Type* term_var_type(const std::string& name) const {
    for (auto it = term_binders_.rbegin(); it != term_binders_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  Type type() {
    if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "Pi") {
      lex_.take();
      Token binder = lex_.take();
      if (binder.kind != Token::Kind::Ident)
        fail(ErrorCode::ParseError, "expected a type variable after Pi");
      lex_.expect(Token::Kind::Dot, "'.'");
      type_binders_.push_back(binder.text);
      Type body = type();
      type_binders_.pop_back();
      return Type::forall(binder.text, body);
    }
    Type left = type_atom();
    if (lex_.peek().kind == Token::Kind::Arrow) {
      lex_.take();
      return Type::arrow(left, type());
    }
    return left;
  }

  Type type_atom() {
    const Token& tok = lex_.peek();
    if (tok.kind == Token::Kind::LParen) {
      lex_.take();
      Type inner = type();
      lex_.expect(Token::Kind::RParen, "')'");
      return inner;
    }
    if (tok.kind == Token::Kind::Ident) {
      Token ident = lex_.take();
      if (ident.text == "t") return Type::prop();
      if (type_var_bound(ident.text)) return Type::var(ident.text);
      if (sig_.has_sort(ident.text)) return Type::base(ident.text);
      fail(ErrorCode::UnknownSort, "sort " + ident.text + " is not declared");
    }
    fail(ErrorCode::ParseError, "expected a type near \"" + lex_.describe() + "\"");
  }

  Term term() {
    const Token& tok = lex_.peek();
    if (tok.kind == Token::Kind::Ident && tok.text == "lam") {
      lex_.take();
      Token binder = lex_.take();
      if (binder.kind != Token::Kind::Ident)
        fail(ErrorCode::ParseError, "expected a variable after lam");
      lex_.expect(Token::Kind::Colon, "':'");
      Type binder_type = type();
      lex_.expect(Token::Kind::Dot, "'.'");
      term_binders_.emplace_back(binder.text, binder_type);
      Term body = term();
      term_binders_.pop_back();
      return Term::lam(binder.text, binder_type, body);
    }
    if (tok.kind == Token::Kind::Ident && tok.text == "Lam") {
      lex_.take();
      Token binder = lex_.take();
      if (binder.kind != Token::Kind::Ident)
        fail(ErrorCode::ParseError, "expected a type variable after Lam");
      lex_.expect(Token::Kind::Dot, "'.'");
      type_binders_.push_back(binder.text);
      Term body = term();
      type_binders_.pop_back();
      return Term::ty_lam(binder.text, body);
    }
    Term head = term_atom();
    while (true) {
      const Token& next = lex_.peek();
      if (next.kind == Token::Kind::LBrace) {
        lex_.take();
        Type argument = type();
        lex_.expect(Token::Kind::RBrace, "'}'");
        head = Term::ty_app(head, argument);
        continue;
      }
      if (next.kind == Token::Kind::LParen || next.kind == Token::Kind::Ident) {
        if (next.kind == Token::Kind::Ident &&
            (next.text == "lam" || next.text == "Lam"))
          fail(ErrorCode::ParseError, "abstractions as arguments need parentheses");
        head = Term::app(head, term_atom());
        continue;
      }
      return head;
    }
  }

  Term term_atom() {
    const Token& tok = lex_.peek();
    if (tok.kind == Token::Kind::LParen) {
      lex_.take();
      Term inner = term();
      lex_.expect(Token::Kind::RParen, "')'");
      return inner;
    }
    if (tok.kind == Token::Kind::Ident) {
      Token ident = lex_.take();
      if (const Type* bound = term_var_type(ident.text)) return Term::var(ident.text, *bound);
      if (auto declared = sig_.constant_type(ident.text))
        return Term::constant(ident.text, *declared);
      fail(ErrorCode::ParseError, "unknown identifier " + ident.text);
    }
    fail(ErrorCode::ParseError, "expected a term near \"" + lex_.describe() + "\"");
  }

  const Signature& sig_;
  Lexer lex_;
  std::vector<std::pair<std::string, Type>> term_binders_;
  std::vector<std::string> type_binders_;
};

}  // namespace

Type parse_type(const Signature& sig, std::string_view src) {
  return Parser(sig, src).type_toplevel();
}

Term parse_term(const Signature& sig, std::string_view src) {
  return Parser(sig, src).term_toplevel();
}

}  // namespace mgl
