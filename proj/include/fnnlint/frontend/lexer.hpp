#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fnnlint::frontend {

/// 1-based line and column (columns count code points).
struct Pos {
  int line = 0;
  int col = 0;

  friend auto operator<=>(const Pos&, const Pos&) = default;
};

enum class TokenKind { Ident, Int, Float, String, Bool, None, Punct, Newline, Indent, Dedent, Eof };

std::string_view to_string(TokenKind k) noexcept;

struct SourceToken {
  TokenKind kind = TokenKind::Eof;
  /// Identifier/punctuator text, decoded string value, or the number with
  /// digit separators removed.
  std::string text;
  Pos span;
  /// Byte range of the token in the source ([begin, end)).
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Tokenizes Python-style source: comments and blank lines are dropped,
/// newlines inside brackets are joined, and indentation changes become
/// Indent/Dedent tokens. A Newline is emitted for each line terminator that
/// ends a logical line. Throws LexError on an unterminated string, an
/// illegal character or an inconsistent dedent.
std::vector<SourceToken> tokenize(std::string_view source);

}  // namespace fnnlint::frontend
