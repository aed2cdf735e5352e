#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "fnnlint/error.hpp"
#include "fnnlint/frontend/syntax.hpp"

namespace fnnlint::frontend {

const Expr* Expr::keyword(std::string_view name) const {
  for (std::size_t i = 0; i < keyword_names.size(); ++i) {
    if (keyword_names[i] == name) return &keyword_values[i];
  }
  return nullptr;
}

namespace {

constexpr std::array<std::string_view, 13> kCompoundKeywords{"if", "elif", "else", "for", "while", "with", "def",
                                                             "class", "try", "except", "finally", "async", "match"};

constexpr std::array<std::string_view, 7> kKeywordOps{"and", "or", "in", "is", "not", "if", "else"};

bool is_punct(const SourceToken& t, std::string_view p) { return t.kind == TokenKind::Punct && t.text == p; }
bool is_word(const SourceToken& t, std::string_view w) { return t.kind == TokenKind::Ident && t.text == w; }
bool is_opener(const SourceToken& t) { return is_punct(t, "(") || is_punct(t, "[") || is_punct(t, "{"); }
bool is_closer(const SourceToken& t) { return is_punct(t, ")") || is_punct(t, "]") || is_punct(t, "}"); }

bool is_binary_op(const SourceToken& t) {
  static constexpr std::array<std::string_view, 20> kOps{"+", "-", "*", "/", "//", "%", "@", "<<", ">>", "&",
                                                         "|", "^", "<", ">", "<=", ">=", "==", "!=", ":=", "->"};
  if (t.kind == TokenKind::Punct) return std::find(kOps.begin(), kOps.end(), t.text) != kOps.end();
  return t.kind == TokenKind::Ident && (t.text == "and" || t.text == "or" || t.text == "in" || t.text == "is" ||
                                        t.text == "not");
}

class ExprParser {
public:
  ExprParser(std::span<const SourceToken> toks, std::size_t first, std::size_t last)
      : t_(toks), i_(first), last_(last) {}

  Expr parse_all() {
    Expr e = expression();
    if (i_ != last_) fail("end of expression");
    return e;
  }

private:
  bool done() const { return i_ >= last_; }
  const SourceToken& cur() const { return t_[std::min(i_, last_ == 0 ? 0 : last_ - 1)]; }
  const SourceToken& at(std::size_t k) const { return t_[k]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const SourceToken& t = done() ? (i_ < t_.size() ? t_[i_] : t_.back()) : t_[i_];
    throw ParseError(expected, t.span.line, t.span.col);
  }

  void expect_punct(std::string_view p) {
    if (done() || !is_punct(t_[i_], p)) fail("'" + std::string(p) + "'");
    ++i_;
  }

  Expr start_at(std::size_t k) const {
    Expr e;
    e.begin = t_[k].span;
    e.offset = t_[k].begin;
    return e;
  }

  void finish(Expr& e) const {
    const SourceToken& lastTok = t_[i_ - 1];
    e.end = lastTok.span;
    e.end_offset = lastTok.end;
  }

  Expr make_other(std::size_t from) const {
    Expr e = start_at(from);
    e.kind = ExprKind::Other;
    finish(e);
    return e;
  }

  /// Skips to just past the closer matching an opener already consumed.
  void skip_balanced() {
    int depth = 1;
    while (!done()) {
      if (is_opener(t_[i_])) ++depth;
      if (is_closer(t_[i_]) && --depth == 0) {
        ++i_;
        return;
      }
      ++i_;
    }
    fail("closing bracket");
  }

  /// Skips a lambda or comprehension tail up to a top-level ',' or closer.
  void skip_to_boundary() {
    int depth = 0;
    while (!done()) {
      const SourceToken& t = t_[i_];
      if (depth == 0 && (is_punct(t, ",") || is_closer(t))) return;
      if (is_opener(t)) ++depth;
      if (is_closer(t)) --depth;
      ++i_;
    }
  }

  Expr expression() {
    if (done()) fail("expression");
    const std::size_t start = i_;
    if (is_word(t_[i_], "lambda")) {
      skip_to_boundary();
      return make_other(start);
    }
    Expr e = binary();
    if (!done() && is_word(t_[i_], "if")) {
      ++i_;
      binary();
      if (done() || !is_word(t_[i_], "else")) fail("'else'");
      ++i_;
      expression();
      return make_other(start);
    }
    return e;
  }

  Expr binary() {
    const std::size_t start = i_;
    Expr e = unary();
    bool composite = false;
    while (!done() && is_binary_op(t_[i_])) {
      // "not in" / "is not" are two tokens.
      ++i_;
      if (!done() && (is_word(t_[i_], "not") || is_word(t_[i_], "in"))) ++i_;
      unary();
      composite = true;
    }
    return composite ? make_other(start) : e;
  }

  Expr unary() {
    if (done()) fail("expression");
    const std::size_t start = i_;
    const SourceToken& t = t_[i_];
    if (is_punct(t, "-") || is_punct(t, "+") || is_punct(t, "~") || is_word(t, "not") || is_word(t, "await") ||
        is_punct(t, "*") || is_punct(t, "**")) {
      ++i_;
      Expr operand = unary();
      if (is_punct(t, "-") || is_punct(t, "+")) {
        const bool neg = is_punct(t, "-");
        if (operand.kind == ExprKind::Int) {
          operand.int_value = neg ? -operand.int_value : operand.int_value;
        } else if (operand.kind == ExprKind::Float) {
          operand.float_value = neg ? -operand.float_value : operand.float_value;
        } else {
          return make_other(start);
        }
        operand.begin = t.span;
        operand.offset = t.begin;
        return operand;
      }
      return make_other(start);
    }
    Expr base = postfix();
    if (!done() && is_punct(t_[i_], "**")) {
      ++i_;
      unary();
      return make_other(start);
    }
    return base;
  }

  Expr postfix() {
    const std::size_t start = i_;
    Expr e = atom();
    while (!done()) {
      const SourceToken& t = t_[i_];
      if (is_punct(t, ".")) {
        ++i_;
        if (done() || t_[i_].kind != TokenKind::Ident) fail("attribute name");
        if (e.kind == ExprKind::Name) {
          e.path.push_back(t_[i_].text);
          ++i_;
          finish(e);
        } else {
          ++i_;
          e = make_other(start);
        }
      } else if (is_punct(t, "(")) {
        const std::size_t name_tok = i_ - 1;
        ++i_;
        Expr call = start_at(start);
        call_arguments(call);
        finish(call);
        call.close_pos = t_[i_ - 1].span;
        if (e.kind == ExprKind::Name) {
          call.kind = ExprKind::Call;
          call.path = std::move(e.path);
          call.name_pos = t_[name_tok].span;
          e = std::move(call);
        } else {
          e = make_other(start);
        }
      } else if (is_punct(t, "[")) {
        ++i_;
        skip_balanced();
        e = make_other(start);
      } else {
        break;
      }
    }
    return e;
  }

  void call_arguments(Expr& call) {
    while (true) {
      if (done()) fail("')'");
      if (is_punct(t_[i_], ")")) {
        ++i_;
        return;
      }
      if (t_[i_].kind == TokenKind::Ident && i_ + 1 < last_ && is_punct(t_[i_ + 1], "=")) {
        call.keyword_names.push_back(t_[i_].text);
        i_ += 2;
        call.keyword_values.push_back(expression());
      } else {
        const std::size_t start = i_;
        Expr arg = expression();
        if (!done() && is_word(t_[i_], "for")) {
          skip_to_boundary();
          arg = make_other(start);
        }
        call.items.push_back(std::move(arg));
      }
      if (done()) fail("')'");
      if (is_punct(t_[i_], ",")) {
        ++i_;
      } else if (!is_punct(t_[i_], ")")) {
        fail("',' or ')'");
      }
    }
  }

  /// Elements of a tuple or list up to `closer`. Returns false when the
  /// contents were a comprehension and got skipped.
  bool sequence(Expr& e, std::string_view closer, bool& saw_comma) {
    saw_comma = false;
    while (true) {
      if (done()) fail("'" + std::string(closer) + "'");
      if (is_punct(t_[i_], closer)) {
        ++i_;
        return true;
      }
      e.items.push_back(expression());
      if (!done() && is_word(t_[i_], "for")) {
        skip_balanced();
        return false;
      }
      if (done()) fail("'" + std::string(closer) + "'");
      if (is_punct(t_[i_], ",")) {
        saw_comma = true;
        ++i_;
      } else if (!is_punct(t_[i_], closer)) {
        fail("',' or '" + std::string(closer) + "'");
      }
    }
  }

  Expr atom() {
    if (done()) fail("expression");
    const std::size_t start = i_;
    const SourceToken& t = t_[i_];
    Expr e = start_at(start);
    switch (t.kind) {
      case TokenKind::Ident: {
        if (std::find(kKeywordOps.begin(), kKeywordOps.end(), t.text) != kKeywordOps.end()) fail("expression");
        ++i_;
        e.kind = ExprKind::Name;
        e.path.push_back(t.text);
        break;
      }
      case TokenKind::Int: {
        ++i_;
        e.kind = ExprKind::Int;
        const std::string& s = t.text;
        int base = 10;
        std::size_t skip = 0;
        if (s.size() > 1 && s[0] == '0' && std::isalpha(static_cast<unsigned char>(s[1]))) {
          base = s[1] == 'x' ? 16 : (s[1] == 'o' ? 8 : 2);
          skip = 2;
        }
        auto [ptr, ec] = std::from_chars(s.data() + skip, s.data() + s.size(), e.int_value, base);
        if (ec != std::errc() || ptr != s.data() + s.size()) e.kind = ExprKind::Other;
        break;
      }
      case TokenKind::Float:
        ++i_;
        e.kind = ExprKind::Float;
        e.float_value = std::strtod(t.text.c_str(), nullptr);
        break;
      case TokenKind::String:
        e.kind = ExprKind::String;
        while (!done() && t_[i_].kind == TokenKind::String) e.str_value += t_[i_++].text;
        break;
      case TokenKind::Bool:
        ++i_;
        e.kind = ExprKind::Bool;
        e.bool_value = t.text == "True";
        break;
      case TokenKind::None:
        ++i_;
        e.kind = ExprKind::None;
        break;
      case TokenKind::Punct: {
        if (t.text == "(") {
          ++i_;
          bool comma = false;
          const bool plain = sequence(e, ")", comma);
          if (!plain) return make_other(start);
          if (e.items.size() == 1 && !comma) {
            Expr inner = std::move(e.items.front());
            return inner;
          }
          e.kind = ExprKind::Tuple;
        } else if (t.text == "[") {
          ++i_;
          bool comma = false;
          if (!sequence(e, "]", comma)) return make_other(start);
          e.kind = ExprKind::List;
        } else if (t.text == "{") {
          ++i_;
          skip_balanced();
          return make_other(start);
        } else if (t.text == "...") {
          ++i_;
          return make_other(start);
        } else {
          fail("expression");
        }
        break;
      }
      default:
        fail("expression");
    }
    finish(e);
    return e;
  }

  std::span<const SourceToken> t_;
  std::size_t i_;
  std::size_t last_;
};

std::vector<std::string> dotted(std::span<const SourceToken> t, std::size_t& i, std::size_t last) {
  std::vector<std::string> path;
  while (true) {
    if (i >= last || t[i].kind != TokenKind::Ident) {
      const SourceToken& at = t[std::min(i, t.size() - 1)];
      throw ParseError("module name", at.span.line, at.span.col);
    }
    path.push_back(t[i++].text);
    if (i < last && is_punct(t[i], ".")) {
      ++i;
      continue;
    }
    return path;
  }
}

std::optional<std::string> alias(std::span<const SourceToken> t, std::size_t& i, std::size_t last) {
  if (i < last && is_word(t[i], "as")) {
    ++i;
    if (i >= last || t[i].kind != TokenKind::Ident) {
      const SourceToken& at = t[std::min(i, t.size() - 1)];
      throw ParseError("alias name", at.span.line, at.span.col);
    }
    return t[i++].text;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Statement> split_statements(std::span<const SourceToken> tokens) {
  std::vector<Statement> out;
  int depth = 0;
  bool inline_suite = false;
  std::size_t i = 0;
  while (i < tokens.size() && tokens[i].kind != TokenKind::Eof) {
    const SourceToken& t = tokens[i];
    if (t.kind == TokenKind::Indent) {
      ++depth;
      ++i;
      continue;
    }
    if (t.kind == TokenKind::Dedent) {
      --depth;
      ++i;
      continue;
    }
    if (t.kind == TokenKind::Newline) {
      inline_suite = false;
      ++i;
      continue;
    }
    if (is_punct(t, ";")) {
      ++i;
      continue;
    }
    Statement s;
    s.first = i;
    s.depth = depth + (inline_suite ? 1 : 0);
    s.compound = is_punct(t, "@") ||
                 (t.kind == TokenKind::Ident &&
                  std::find(kCompoundKeywords.begin(), kCompoundKeywords.end(), t.text) != kCompoundKeywords.end());
    int brackets = 0;
    std::size_t j = i;
    for (; j < tokens.size(); ++j) {
      const SourceToken& u = tokens[j];
      if (u.kind == TokenKind::Newline || u.kind == TokenKind::Eof || u.kind == TokenKind::Indent ||
          u.kind == TokenKind::Dedent) {
        break;
      }
      if (brackets == 0 && is_punct(u, ";")) break;
      if (is_opener(u)) ++brackets;
      if (is_closer(u) && brackets > 0) --brackets;
    }
    s.last = j;
    if (s.compound) inline_suite = true;
    out.push_back(s);
    i = j;
  }
  return out;
}

Expr parse_expression(std::span<const SourceToken> tokens, std::size_t first, std::size_t last) {
  return ExprParser(tokens, first, last).parse_all();
}

std::vector<ImportBinding> parse_import(std::span<const SourceToken> t, std::size_t first, std::size_t last) {
  std::vector<ImportBinding> out;
  std::size_t i = first;
  const auto expect_end = [&] {
    if (i != last) throw ParseError("end of import statement", t[i].span.line, t[i].span.col);
  };
  if (is_word(t[i], "import")) {
    ++i;
    while (true) {
      auto path = dotted(t, i, last);
      auto as = alias(t, i, last);
      // `import a.b` binds `a`; `import a.b as c` binds `c` to a.b.
      if (as) {
        out.push_back({*as, path});
      } else {
        out.push_back({path.front(), {path.front()}});
      }
      if (i < last && is_punct(t[i], ",")) {
        ++i;
        continue;
      }
      break;
    }
    expect_end();
    return out;
  }
  if (!is_word(t[i], "from")) throw ParseError("'import' or 'from'", t[i].span.line, t[i].span.col);
  ++i;
  std::vector<std::string> module;
  while (i < last && (is_punct(t[i], ".") || is_punct(t[i], "..."))) ++i;
  if (i < last && !is_word(t[i], "import")) module = dotted(t, i, last);
  if (i >= last || !is_word(t[i], "import")) {
    const SourceToken& at = t[std::min(i, t.size() - 1)];
    throw ParseError("'import'", at.span.line, at.span.col);
  }
  ++i;
  if (i < last && is_punct(t[i], "*")) {
    ++i;
    expect_end();
    return out;
  }
  const bool paren = i < last && is_punct(t[i], "(");
  if (paren) ++i;
  while (true) {
    if (paren && i < last && is_punct(t[i], ")")) break;
    if (i >= last || t[i].kind != TokenKind::Ident) {
      const SourceToken& at = t[std::min(i, t.size() - 1)];
      throw ParseError("imported name", at.span.line, at.span.col);
    }
    const std::string name = t[i++].text;
    auto as = alias(t, i, last);
    std::vector<std::string> target = module;
    target.push_back(name);
    out.push_back({as.value_or(name), std::move(target)});
    if (i < last && is_punct(t[i], ",")) {
      ++i;
      continue;
    }
    break;
  }
  if (paren) {
    if (i >= last || !is_punct(t[i], ")")) {
      const SourceToken& at = t[std::min(i, t.size() - 1)];
      throw ParseError("')'", at.span.line, at.span.col);
    }
    ++i;
  }
  expect_end();
  return out;
}

}  // namespace fnnlint::frontend
