#include "fnnlint/frontend/lexer.hpp"

#include <array>
#include <cctype>
#include <string>

#include "fnnlint/error.hpp"

namespace fnnlint::frontend {

std::string_view to_string(TokenKind k) noexcept {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Int: return "integer";
    case TokenKind::Float: return "float";
    case TokenKind::String: return "string";
    case TokenKind::Bool: return "bool";
    case TokenKind::None: return "None";
    case TokenKind::Punct: return "punctuation";
    case TokenKind::Newline: return "newline";
    case TokenKind::Indent: return "indent";
    case TokenKind::Dedent: return "dedent";
    case TokenKind::Eof: return "end of file";
  }
  return "?";
}

namespace {

constexpr std::array<std::string_view, 5> kPunct3{"**=", "//=", ">>=", "<<=", "..."};
constexpr std::array<std::string_view, 19> kPunct2{"**", "//", "==", "!=", "<=", ">=", "->", "+=", "-=", "*=",
                                                   "/=", "%=", "&=", "|=", "^=", "@=", ":=", "<<", ">>"};
constexpr std::string_view kPunct1 = "()[]{},:.;@=+-*/%<>&|^~";

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {
    // Skip a UTF-8 byte order mark; offsets stay relative to the full text.
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") i_ = 3;
  }

  std::vector<SourceToken> run() {
    indents_.push_back(0);
    at_line_start_ = true;
    while (true) {
      if (at_line_start_ && depth_ == 0) {
        if (!handle_indentation()) break;
      }
      if (eof()) break;
      const char c = peek();
      if (c == '\n' || c == '\r') {
        const Pos p = pos();
        const std::size_t b = i_;
        consume_newline();
        if (depth_ == 0) {
          emit(TokenKind::Newline, "\n", p, b);
          at_line_start_ = true;
        }
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\f') {
        advance();
        continue;
      }
      if (c == '#') {
        while (!eof() && peek() != '\n' && peek() != '\r') advance();
        continue;
      }
      if (c == '\\' && (peek(1) == '\n' || peek(1) == '\r')) {
        advance();
        consume_newline();
        continue;
      }
      lex_token();
    }
    // A trailing logical line without its terminator gets no Newline token.
    const Pos end = pos();
    while (indents_.size() > 1) {
      indents_.pop_back();
      emit(TokenKind::Dedent, "", end, i_);
    }
    emit(TokenKind::Eof, "", end, i_);
    return std::move(out_);
  }

private:
  bool eof() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }
  Pos pos() const { return {line_, col_}; }

  void advance() {
    const auto c = static_cast<unsigned char>(src_[i_++]);
    // Continuation bytes of a UTF-8 sequence do not start a new column.
    if ((c & 0xC0) != 0x80) ++col_;
  }

  void consume_newline() {
    if (peek() == '\r' && peek(1) == '\n') ++i_;
    ++i_;
    ++line_;
    col_ = 1;
  }

  void emit(TokenKind k, std::string text, Pos p, std::size_t begin) {
    out_.push_back({k, std::move(text), p, begin, i_});
  }

  /// Measures leading whitespace of the next non-blank line and emits
  /// Indent/Dedent tokens. Returns false at end of input.
  bool handle_indentation() {
    while (true) {
      int width = 0;
      while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\f')) {
        width = peek() == '\t' ? (width / 8 + 1) * 8 : width + 1;
        advance();
      }
      if (eof()) return false;
      if (peek() == '#') {
        while (!eof() && peek() != '\n' && peek() != '\r') advance();
      }
      if (eof()) return false;
      if (peek() == '\n' || peek() == '\r') {
        consume_newline();
        continue;
      }
      at_line_start_ = false;
      const Pos p = pos();
      if (width > indents_.back()) {
        indents_.push_back(width);
        emit(TokenKind::Indent, "", p, i_);
      } else {
        while (width < indents_.back()) {
          indents_.pop_back();
          emit(TokenKind::Dedent, "", p, i_);
        }
        if (width != indents_.back()) throw LexError("inconsistent dedent", p.line, p.col);
      }
      return true;
    }
  }

  void lex_token() {
    const char c = peek();
    const auto uc = static_cast<unsigned char>(c);
    if (ident_start(uc)) {
      std::size_t n = 0;
      while (n < 2 && std::string_view("rRbBuUfF").find(peek(n)) != std::string_view::npos) ++n;
      if (n > 0 && (peek(n) == '\'' || peek(n) == '"')) {
        lex_string(n);
        return;
      }
      lex_ident();
      return;
    }
    if (c == '\'' || c == '"') {
      lex_string(0);
      return;
    }
    if (std::isdigit(uc) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      return;
    }
    lex_punct();
  }

  void lex_ident() {
    const Pos p = pos();
    const std::size_t b = i_;
    while (!eof() && ident_char(static_cast<unsigned char>(peek()))) advance();
    std::string text(src_.substr(b, i_ - b));
    TokenKind k = TokenKind::Ident;
    if (text == "True" || text == "False") k = TokenKind::Bool;
    if (text == "None") k = TokenKind::None;
    emit(k, std::move(text), p, b);
  }

  void lex_string(std::size_t prefix_len) {
    const Pos p = pos();
    const std::size_t b = i_;
    bool raw = false;
    for (std::size_t k = 0; k < prefix_len; ++k) {
      raw = raw || peek() == 'r' || peek() == 'R';
      advance();
    }
    const char q = peek();
    const bool triple = peek(1) == q && peek(2) == q;
    for (int k = 0; k < (triple ? 3 : 1); ++k) advance();
    std::string value;
    while (true) {
      if (eof()) throw LexError("unterminated string", p.line, p.col);
      const char c = peek();
      if (!triple && (c == '\n' || c == '\r')) throw LexError("unterminated string", p.line, p.col);
      if (c == q && (!triple || (peek(1) == q && peek(2) == q))) {
        for (int k = 0; k < (triple ? 3 : 1); ++k) advance();
        break;
      }
      if (c == '\\' && !eof()) {
        const char n = peek(1);
        if (n == '\n' || n == '\r') {
          advance();
          consume_newline();
          continue;
        }
        advance();
        if (raw) {
          value += '\\';
          value += n;
        } else if (n == 'x' && std::isxdigit(static_cast<unsigned char>(peek(1))) &&
                   std::isxdigit(static_cast<unsigned char>(peek(2)))) {
          advance();
          const std::string hex{peek(), peek(1)};
          value += static_cast<char>(std::stoi(hex, nullptr, 16));
          advance();
        } else {
          switch (n) {
            case 'a': value += '\a'; break;
            case 'b': value += '\b'; break;
            case 'f': value += '\f'; break;
            case 'v': value += '\v'; break;
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case 'r': value += '\r'; break;
            case '0': value += '\0'; break;
            default: value += n; break;
          }
        }
        if (n == '\0') throw LexError("unterminated string", p.line, p.col);
        advance();
        continue;
      }
      if (c == '\n' || c == '\r') {
        value += '\n';
        consume_newline();
        continue;
      }
      value += c;
      advance();
    }
    emit(TokenKind::String, std::move(value), p, b);
  }

  void lex_number() {
    const Pos p = pos();
    const std::size_t b = i_;
    std::string digits;
    const auto take_digits = [&](auto pred) {
      while (!eof() && (pred(static_cast<unsigned char>(peek())) || peek() == '_')) {
        if (peek() != '_') digits += peek();
        advance();
      }
    };
    const auto is_dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    if (peek() == '0' && std::string_view("xXoObB").find(peek(1)) != std::string_view::npos && peek(1) != '\0') {
      const char base = static_cast<char>(std::tolower(static_cast<unsigned char>(peek(1))));
      digits += '0';
      digits += base;
      advance();
      advance();
      take_digits([](unsigned char ch) { return std::isxdigit(ch) != 0; });
      emit(TokenKind::Int, std::move(digits), p, b);
      return;
    }
    bool is_float = false;
    take_digits(is_dec);
    if (peek() == '.' && !(peek(1) == '.' && peek(2) == '.')) {
      is_float = true;
      digits += '.';
      advance();
      take_digits(is_dec);
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      is_float = true;
      digits += 'e';
      advance();
      if (peek() == '+' || peek() == '-') {
        digits += peek();
        advance();
      }
      take_digits(is_dec);
    }
    if (peek() == 'j' || peek() == 'J') {
      is_float = true;
      advance();
    }
    if (ident_start(static_cast<unsigned char>(peek()))) throw LexError("invalid numeric literal", p.line, p.col);
    emit(is_float ? TokenKind::Float : TokenKind::Int, std::move(digits), p, b);
  }

  void lex_punct() {
    const Pos p = pos();
    const std::size_t b = i_;
    const std::string_view rest = src_.substr(i_);
    for (auto op : kPunct3) {
      if (rest.substr(0, 3) == op) return punct(op, p, b);
    }
    for (auto op : kPunct2) {
      if (rest.substr(0, 2) == op) return punct(op, p, b);
    }
    const char c = peek();
    if (kPunct1.find(c) == std::string_view::npos) {
      throw LexError(std::string("illegal character '") + c + "'", p.line, p.col);
    }
    if (c == '(' || c == '[' || c == '{') ++depth_;
    if ((c == ')' || c == ']' || c == '}') && depth_ > 0) --depth_;
    punct(std::string_view(&src_[i_], 1), p, b);
  }

  void punct(std::string_view op, Pos p, std::size_t b) {
    for (std::size_t k = 0; k < op.size(); ++k) advance();
    emit(TokenKind::Punct, std::string(op), p, b);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
  bool at_line_start_ = true;
  std::vector<int> indents_;
  std::vector<SourceToken> out_;
};

}  // namespace

std::vector<SourceToken> tokenize(std::string_view source) {
  return Lexer(source).run();
}

}  // namespace fnnlint::frontend
