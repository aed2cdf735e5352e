#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fnnlint/frontend/lexer.hpp"

namespace fnnlint::frontend {

enum class ExprKind { Int, Float, String, Bool, None, Name, Call, Tuple, List, Other };

/// Expression tree for the interpreted subset. Anything beyond literals,
/// dotted names, calls on dotted names, tuples and lists parses to Other,
/// which keeps its source range but no structure.
struct Expr {
  ExprKind kind = ExprKind::Other;
  Pos begin;
  Pos end;  // position of the last token
  std::size_t offset = 0;
  std::size_t end_offset = 0;

  std::int64_t int_value = 0;
  double float_value = 0.0;
  bool bool_value = false;
  std::string str_value;

  /// Name: the dotted path. Call: the callee's dotted path.
  std::vector<std::string> path;
  /// Tuple/List elements, or Call positional arguments.
  std::vector<Expr> items;
  /// Call keyword arguments (parallel vectors).
  std::vector<std::string> keyword_names;
  std::vector<Expr> keyword_values;
  /// Call: position of the callee's final identifier.
  Pos name_pos;
  /// Call: position of the closing parenthesis.
  Pos close_pos;

  bool is_number() const noexcept { return kind == ExprKind::Int || kind == ExprKind::Float; }
  const Expr* keyword(std::string_view name) const;
};

/// A call on a dotted name: callee path, positional and keyword arguments.
using CallExpr = Expr;

/// A simple statement as a token range [first, last).
struct Statement {
  std::size_t first = 0;
  std::size_t last = 0;
  /// Indentation depth; inline suites (`if x: f()`) count one deeper.
  int depth = 0;
  /// Starts with a compound-statement keyword or a decorator.
  bool compound = false;
};

std::vector<Statement> split_statements(std::span<const SourceToken> tokens);

/// Parses tokens[first, last) as exactly one expression. Throws ParseError.
Expr parse_expression(std::span<const SourceToken> tokens, std::size_t first, std::size_t last);

struct ImportBinding {
  /// Local name introduced by the statement.
  std::string local;
  /// Full dotted path it stands for.
  std::vector<std::string> target;
};

/// Parses an `import ...` or `from ... import ...` statement. A star import
/// yields no bindings. Throws ParseError.
std::vector<ImportBinding> parse_import(std::span<const SourceToken> tokens, std::size_t first, std::size_t last);

}  // namespace fnnlint::frontend
