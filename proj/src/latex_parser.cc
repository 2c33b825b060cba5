// Copyright 2026 The MathQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mathqa/latex_parser.h"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latex_tables.h"

namespace mathqa {

UnsupportedConstruct::UnsupportedConstruct(std::string token, size_t position)
    : LatexParseError("unsupported construct '" + token + "' at position " +
                          std::to_string(position),
                      position),
      token_(std::move(token)) {}

SyntaxError::SyntaxError(const std::string &message, size_t position)
    : LatexParseError(
          "syntax error at position " + std::to_string(position) + ": " +
              message,
          position) {}

namespace {

constexpr int kMaxDepth = 200;

enum class TokenKind {
  kEnd,
  kNumber,
  kLetter,   // single ASCII letter
  kWord,     // multi-letter name from \mathrm{...}
  kGreek,    // Greek identifier, text holds the command name without '\'
  kPi,
  kEuler,    // explicit \mathrm{e}
  kFunction, // text holds sin, cos, tan, log, ln, exp, sqrt
  kFrac,
  kSymbol,   // text holds the symbol: + - * / ^ _ = ( ) [ ] { } \{ \} | , ...
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  size_t pos = 0;
  size_t end = 0;

  bool Is(std::string_view symbol) const {
    return kind == TokenKind::kSymbol && text == symbol;
  }
};

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Rejects unknown commands up front so that the error names the first
// offending command rather than whatever the grammar tripped over later.
void CheckCommands(std::string_view src) {
  for (size_t i = 0; i < src.size(); ++i) {
    if (src[i] != '\\') continue;
    size_t start = i;
    ++i;
    if (i >= src.size()) throw SyntaxError("dangling backslash", start);
    if (!IsAsciiLetter(src[i])) {
      char c = src[i];
      if (c == ',' || c == ';' || c == '!' || c == ':' || c == ' ' ||
          c == '{' || c == '}') {
        continue;
      }
      throw UnsupportedConstruct(std::string("\\") + c, start);
    }
    size_t j = i;
    while (j < src.size() && IsAsciiLetter(src[j])) ++j;
    std::string name(src.substr(i, j - i));
    if (!latex::IsKnownCommand(name)) {
      throw UnsupportedConstruct("\\" + name, start);
    }
    i = j - 1;
  }
}

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  const Token &Peek() {
    if (!peeked_) {
      peek_ = Lex(false);
      peeked_ = true;
    }
    return peek_;
  }

  Token Next() {
    Token t = Peek();
    Consume();
    return t;
  }

  void Consume() {
    Peek();
    pos_ = peek_.end;
    peeked_ = false;
  }

  // Reads a macro argument without a surrounding brace: a single digit,
  // a single letter or one command. "\frac12" reads as two arguments.
  Token NextArgument() {
    peeked_ = false;
    Token t = Lex(true);
    pos_ = t.end;
    return t;
  }

  size_t position() const { return pos_; }
  void Rewind(size_t pos) {
    pos_ = pos;
    peeked_ = false;
  }

 private:
  void SkipIgnorable() {
    for (;;) {
      while (pos_ < src_.size() &&
             (std::isspace(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '~')) {
        ++pos_;
      }
      if (pos_ + 1 >= src_.size() || src_[pos_] != '\\') return;
      char c = src_[pos_ + 1];
      if (c == ',' || c == ';' || c == '!' || c == ':' || c == ' ') {
        pos_ += 2;
        continue;
      }
      if (!IsAsciiLetter(c)) return;
      size_t j = pos_ + 1;
      while (j < src_.size() && IsAsciiLetter(src_[j])) ++j;
      std::string_view name = src_.substr(pos_ + 1, j - pos_ - 1);
      if (!latex::IsPresentationCommand(name)) return;
      pos_ = j;
      if (name == "left" || name == "right" || name.starts_with("big") ||
          name.starts_with("Big")) {
        // A "." delimiter is invisible.
        size_t k = pos_;
        while (k < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[k]))) {
          ++k;
        }
        if (k < src_.size() && src_[k] == '.') pos_ = k + 1;
      }
    }
  }

  Token Make(TokenKind kind, std::string text, size_t start, size_t end) {
    return Token{kind, std::move(text), start, end};
  }

  // Content of a wrapper such as \mathrm{...}: braced text or one character.
  std::string ReadWrapperContent(size_t *cursor, size_t start) {
    size_t k = *cursor;
    while (k < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[k]))) {
      ++k;
    }
    if (k >= src_.size()) throw SyntaxError("missing argument", start);
    if (src_[k] != '{') {
      *cursor = k + 1;
      return std::string(1, src_[k]);
    }
    int depth = 0;
    std::string content;
    for (size_t m = k; m < src_.size(); ++m) {
      char c = src_[m];
      if (c == '{') {
        if (depth++ > 0) content += c;
      } else if (c == '}') {
        if (--depth == 0) {
          *cursor = m + 1;
          return content;
        }
        content += c;
      } else {
        content += c;
      }
    }
    throw SyntaxError("unbalanced braces", start);
  }

  Token LexWrapper(std::string_view command, size_t start, size_t cursor) {
    std::string raw = ReadWrapperContent(&cursor, start);
    size_t first = raw.find_first_not_of(" \t\n");
    if (first == std::string::npos) {
      throw SyntaxError("empty \\" + std::string(command), start);
    }
    size_t last = raw.find_last_not_of(" \t\n");
    std::string content = raw.substr(first, last - first + 1);
    if (content.find_first_of(" \t\n") != std::string::npos) {
      // Several words: prose, not a symbol.
      throw UnsupportedConstruct("\\" + std::string(command), start);
    }
    if (content == "e") return Make(TokenKind::kEuler, "e", start, cursor);
    if (latex::IsFunctionName(content) && content != "sqrt") {
      return Make(TokenKind::kFunction, content, start, cursor);
    }
    bool letters = true, digits = true;
    for (char c : content) {
      letters = letters && IsAsciiLetter(c);
      digits = digits && (IsDigit(c) || c == '.');
    }
    if (letters) {
      return Make(content.size() == 1 ? TokenKind::kLetter : TokenKind::kWord,
                  content, start, cursor);
    }
    if (digits && IsDigit(content[0])) {
      return Make(TokenKind::kNumber, content, start, cursor);
    }
    if (content.size() > 1 && content[0] == '\\') {
      std::string name = content.substr(1);
      if (latex::IsGreek(name)) return Make(TokenKind::kGreek, name, start, cursor);
      if (name == "pi") return Make(TokenKind::kPi, "pi", start, cursor);
    }
    throw UnsupportedConstruct("\\" + std::string(command), start);
  }

  Token LexCommand(size_t start) {
    size_t j = start + 1;
    if (j >= src_.size()) throw SyntaxError("dangling backslash", start);
    if (!IsAsciiLetter(src_[j])) {
      char c = src_[j];
      if (c == '{') return Make(TokenKind::kSymbol, "\\{", start, j + 1);
      if (c == '}') return Make(TokenKind::kSymbol, "\\}", start, j + 1);
      throw UnsupportedConstruct(std::string("\\") + c, start);
    }
    while (j < src_.size() && IsAsciiLetter(src_[j])) ++j;
    std::string name(src_.substr(start + 1, j - start - 1));
    if (name == "pi") return Make(TokenKind::kPi, name, start, j);
    if (latex::IsGreek(name)) return Make(TokenKind::kGreek, name, start, j);
    if (latex::IsFunctionName(name)) return Make(TokenKind::kFunction, name, start, j);
    if (name == "frac" || name == "cfrac" || name == "dfrac" || name == "tfrac") {
      return Make(TokenKind::kFrac, name, start, j);
    }
    if (name == "cdot" || name == "times") return Make(TokenKind::kSymbol, "*", start, j);
    if (name == "div") return Make(TokenKind::kSymbol, "/", start, j);
    if (name == "lvert" || name == "rvert" || name == "vert") {
      return Make(TokenKind::kSymbol, "|", start, j);
    }
    if (latex::IsWrapperCommand(name)) return LexWrapper(name, start, j);
    throw UnsupportedConstruct("\\" + name, start);
  }

  Token Lex(bool argument) {
    SkipIgnorable();
    size_t start = pos_;
    if (start >= src_.size()) return Make(TokenKind::kEnd, "", start, start);
    char c = src_[start];
    if (c == '\\') return LexCommand(start);
    if (IsDigit(c) || (c == '.' && start + 1 < src_.size() && IsDigit(src_[start + 1]) && !argument)) {
      if (argument) return Make(TokenKind::kNumber, std::string(1, c), start, start + 1);
      size_t j = start;
      while (j < src_.size() && IsDigit(src_[j])) ++j;
      if (j + 1 < src_.size() && src_[j] == '.' && IsDigit(src_[j + 1])) {
        ++j;
        while (j < src_.size() && IsDigit(src_[j])) ++j;
      }
      return Make(TokenKind::kNumber, std::string(src_.substr(start, j - start)), start, j);
    }
    if (IsAsciiLetter(c)) return Make(TokenKind::kLetter, std::string(1, c), start, start + 1);
    if (c == '.' && src_.substr(start).starts_with("...")) {
      throw UnsupportedConstruct("...", start);
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      size_t len = latex::Utf8Length(static_cast<unsigned char>(c));
      std::string ch(src_.substr(start, len));
      auto mapped = latex::MapUnicode(ch);
      if (!mapped) throw UnsupportedConstruct(ch, start);
      size_t end = start + ch.size();
      switch (mapped->kind) {
        case latex::UnicodeKind::kPi:
          return Make(TokenKind::kPi, "pi", start, end);
        case latex::UnicodeKind::kGreek:
          return Make(TokenKind::kGreek, mapped->text, start, end);
        case latex::UnicodeKind::kSymbol:
          return Make(TokenKind::kSymbol, mapped->text, start, end);
      }
    }
    return Make(TokenKind::kSymbol, std::string(1, c), start, start + 1);
  }

  std::string_view src_;
  size_t pos_ = 0;
  bool peeked_ = false;
  Token peek_;
};

bool IsUnsupportedSymbol(const Token &t) {
  static const std::set<std::string> kUnsupported = {
      ",", ";", "<", ">", "!", "&", "'", ":", "\"", "?", "@", "#", "%", "$"};
  return t.kind == TokenKind::kSymbol && kUnsupported.count(t.text) > 0;
}

std::string CloserFor(const std::string &open) {
  if (open == "(") return ")";
  if (open == "[") return "]";
  if (open == "\\{") return "\\}";
  return "}";
}

Function FunctionFromName(const std::string &name) {
  if (name == "sin") return Function::kSin;
  if (name == "cos") return Function::kCos;
  if (name == "tan") return Function::kTan;
  if (name == "log") return Function::kLog;
  if (name == "ln") return Function::kLn;
  if (name == "exp") return Function::kExp;
  return Function::kSqrt;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : scanner_(src) {}

  Equation ParseEquation() {
    std::vector<Expression> sides;
    if (auto header = TryHeader()) {
      sides.push_back(std::move(*header));
    } else {
      sides.push_back(ParseAdditive());
    }
    while (scanner_.Peek().Is("=")) {
      scanner_.Consume();
      sides.push_back(ParseAdditive());
    }
    const Token &t = scanner_.Peek();
    if (t.kind != TokenKind::kEnd) Unexpected(t);
    return Equation(std::move(sides));
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser *p) : parser(p) {
      if (++parser->depth_ > kMaxDepth) {
        throw SyntaxError("nesting too deep", parser->scanner_.position());
      }
    }
    ~DepthGuard() { --parser->depth_; }
    Parser *parser;
  };

  [[noreturn]] void Unexpected(const Token &t) {
    if (t.kind == TokenKind::kEnd) throw SyntaxError("unexpected end of input", t.pos);
    if (IsUnsupportedSymbol(t)) throw UnsupportedConstruct(t.text, t.pos);
    throw SyntaxError("unexpected '" + t.text + "'", t.pos);
  }

  void Expect(std::string_view symbol) {
    Token t = scanner_.Next();
    if (!t.Is(symbol)) {
      if (t.kind == TokenKind::kEnd || !IsUnsupportedSymbol(t)) {
        throw SyntaxError("expected '" + std::string(symbol) + "'", t.pos);
      }
      throw UnsupportedConstruct(t.text, t.pos);
    }
  }

  static bool IsIdentifierStart(const Token &t) {
    return t.kind == TokenKind::kLetter || t.kind == TokenKind::kGreek ||
           t.kind == TokenKind::kWord;
  }

  // "f(x) =" or "\zeta(s, t) =" at the start of a definition.
  std::optional<Expression> TryHeader() {
    size_t saved = scanner_.position();
    try {
      Token t = scanner_.Next();
      if (!IsIdentifierStart(t)) {
        scanner_.Rewind(saved);
        return std::nullopt;
      }
      std::string name = IdentifierName(t);
      if (!scanner_.Peek().Is("(")) {
        scanner_.Rewind(saved);
        return std::nullopt;
      }
      scanner_.Consume();
      std::vector<Expression> params;
      for (;;) {
        Token p = scanner_.Next();
        if (!IsIdentifierStart(p)) {
          scanner_.Rewind(saved);
          return std::nullopt;
        }
        params.push_back(Expression::Identifier(IdentifierName(p)));
        const Token &sep = scanner_.Peek();
        if (sep.Is(",")) {
          scanner_.Consume();
          continue;
        }
        if (sep.Is(")")) {
          scanner_.Consume();
          break;
        }
        scanner_.Rewind(saved);
        return std::nullopt;
      }
      if (!scanner_.Peek().Is("=")) {
        scanner_.Rewind(saved);
        return std::nullopt;
      }
      return Expression::Header(std::move(name), std::move(params));
    } catch (const LatexParseError &) {
      scanner_.Rewind(saved);
      return std::nullopt;
    }
  }

  Expression ParseAdditive() {
    DepthGuard guard(this);
    Expression lhs = ParseExplicit();
    for (;;) {
      const Token &t = scanner_.Peek();
      if (t.Is("+") || t.Is("-")) {
        BinaryOp op = t.Is("+") ? BinaryOp::kAdd : BinaryOp::kSubtract;
        scanner_.Consume();
        lhs = Expression::Binary(op, std::move(lhs), ParseExplicit());
      } else {
        return lhs;
      }
    }
  }

  Expression ParseExplicit() {
    Expression lhs = ParseSigned();
    for (;;) {
      const Token &t = scanner_.Peek();
      if (t.Is("*") || t.Is("/")) {
        BinaryOp op = t.Is("*") ? BinaryOp::kMultiply : BinaryOp::kDivide;
        scanner_.Consume();
        lhs = Expression::Binary(op, std::move(lhs), ParseSigned());
      } else {
        return lhs;
      }
    }
  }

  Expression ParseSigned() {
    DepthGuard guard(this);
    const Token &t = scanner_.Peek();
    if (t.Is("-")) {
      scanner_.Consume();
      return Expression::Negate(ParseSigned());
    }
    if (t.Is("+")) {
      scanner_.Consume();
      return ParseSigned();
    }
    return ParseImplicit(false);
  }

  bool CanStartFactor(const Token &t, bool stop_at_function) const {
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kLetter:
      case TokenKind::kWord:
      case TokenKind::kGreek:
      case TokenKind::kPi:
      case TokenKind::kEuler:
      case TokenKind::kFrac:
        return true;
      case TokenKind::kFunction:
        return !stop_at_function;
      case TokenKind::kSymbol:
        if (t.text == "(" || t.text == "[" || t.text == "\\{" || t.text == "{") return true;
        if (t.text == "|") return abs_depth_ == 0;
        return false;
      case TokenKind::kEnd:
        return false;
    }
    return false;
  }

  // Juxtaposed factors. Inside an unparenthesized function argument
  // ("\sin 2x \cos y") the product stops at the next function.
  Expression ParseImplicit(bool function_argument) {
    if (!CanStartFactor(scanner_.Peek(), false) && !scanner_.Peek().Is("|")) {
      Unexpected(scanner_.Peek());
    }
    Expression lhs = ParsePostfix();
    while (CanStartFactor(scanner_.Peek(), function_argument)) {
      lhs = Expression::Binary(BinaryOp::kMultiply, std::move(lhs), ParsePostfix());
    }
    return lhs;
  }

  static bool IsBareIdentifier(const Expression &e) {
    return e.kind() == NodeKind::kIdentifier &&
           e.name().find('_') == std::string::npos;
  }

  Expression ParsePostfix() {
    DepthGuard guard(this);
    bool has_power = false;
    Expression base = ParsePrimary(&has_power);
    for (;;) {
      const Token &t = scanner_.Peek();
      if (t.Is("^")) {
        if (has_power) throw SyntaxError("double superscript", t.pos);
        scanner_.Consume();
        base = Expression::Binary(BinaryOp::kPower, std::move(base), ParseArgument());
        has_power = true;
      } else if (t.Is("_")) {
        // x^2_0: subscript written after the superscript.
        size_t pos = t.pos;
        if (base.IsBinary(BinaryOp::kPower) && IsBareIdentifier(base.child(0))) {
          scanner_.Consume();
          std::string name = base.child(0).name() + "_" + ReadSubscript(pos);
          base = Expression::Binary(BinaryOp::kPower, Expression::Identifier(name),
                                    base.child(1));
        } else {
          throw SyntaxError("subscript on a non-identifier", pos);
        }
      } else if (t.Is("'") || t.Is("!")) {
        throw UnsupportedConstruct(t.text, t.pos);
      } else {
        return base;
      }
    }
  }

  std::string IdentifierName(const Token &t) {
    std::string base;
    if (t.kind == TokenKind::kGreek) {
      base = "\\" + t.text;
    } else {
      base = t.text;
    }
    if (scanner_.Peek().Is("_")) {
      size_t pos = scanner_.Peek().pos;
      scanner_.Consume();
      return base + "_" + ReadSubscript(pos);
    }
    return base;
  }

  // Subscripts are labels, not expressions: "x_{k+1}" names one identifier.
  std::string ReadSubscript(size_t pos) {
    Token t = scanner_.NextArgument();
    std::string out;
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kLetter:
      case TokenKind::kWord:
        out = t.text;
        break;
      case TokenKind::kGreek:
        out = "\\" + t.text;
        break;
      case TokenKind::kPi:
        out = "\\pi";
        break;
      case TokenKind::kEuler:
        out = "e";
        break;
      case TokenKind::kSymbol:
        if (t.text == "{") {
          out = ReadRawSubscriptGroup(t.pos);
          break;
        }
        [[fallthrough]];
      default:
        throw SyntaxError("bad subscript", pos);
    }
    if (out.empty()) throw SyntaxError("empty subscript", pos);
    return out;
  }

  std::string ReadRawSubscriptGroup(size_t open_pos) {
    std::string out;
    int depth = 1;
    for (;;) {
      Token t = scanner_.Next();
      switch (t.kind) {
        case TokenKind::kEnd:
          throw SyntaxError("unbalanced braces", open_pos);
        case TokenKind::kNumber:
        case TokenKind::kLetter:
        case TokenKind::kWord:
          out += t.text;
          break;
        case TokenKind::kGreek:
          out += "\\" + t.text;
          break;
        case TokenKind::kPi:
          out += "\\pi";
          break;
        case TokenKind::kEuler:
          out += "e";
          break;
        case TokenKind::kSymbol:
          if (t.text == "{") {
            ++depth;
          } else if (t.text == "}") {
            if (--depth == 0) return out;
          } else if (t.text == "+" || t.text == "-" || t.text == ",") {
            out += t.text;
          } else {
            throw UnsupportedConstruct(t.text, t.pos);
          }
          break;
        default:
          throw UnsupportedConstruct(t.text, t.pos);
      }
    }
  }

  // Argument of ^, \frac, \sqrt: a braced group or a single token.
  Expression ParseArgument() {
    DepthGuard guard(this);
    Token t = scanner_.NextArgument();
    if (t.Is("{")) return ParseGroupBody("}");
    return PrimaryFromToken(t, nullptr);
  }

  Expression ParseGroupBody(const std::string &closer) {
    int saved_abs = abs_depth_;
    abs_depth_ = 0;
    Expression inner = ParseAdditive();
    abs_depth_ = saved_abs;
    Expect(closer);
    return inner;
  }

  Expression ParsePrimary(bool *has_power) {
    Token t = scanner_.Next();
    return PrimaryFromToken(t, has_power);
  }

  Expression PrimaryFromToken(const Token &t, bool *has_power) {
    switch (t.kind) {
      case TokenKind::kNumber: {
        double value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
          throw SyntaxError("bad number '" + t.text + "'", t.pos);
        }
        return Expression::Number(value);
      }
      case TokenKind::kLetter:
        if (t.text == "e" && !scanner_.Peek().Is("_") && scanner_.Peek().Is("^")) {
          return Expression::MakeConstant(Constant::kEuler);
        }
        return Expression::Identifier(IdentifierName(t));
      case TokenKind::kWord:
      case TokenKind::kGreek:
        return Expression::Identifier(IdentifierName(t));
      case TokenKind::kPi:
        return Expression::MakeConstant(Constant::kPi);
      case TokenKind::kEuler:
        return Expression::MakeConstant(Constant::kEuler);
      case TokenKind::kFunction:
        return ParseFunction(t, has_power);
      case TokenKind::kFrac: {
        Expression num = ParseArgument();
        Expression den = ParseArgument();
        return Expression::Fraction(std::move(num), std::move(den));
      }
      case TokenKind::kSymbol:
        if (t.text == "(" || t.text == "[" || t.text == "\\{" || t.text == "{") {
          return ParseGroupBody(CloserFor(t.text));
        }
        if (t.text == "|") {
          ++abs_depth_;
          Expression inner = ParseAdditive();
          Expect("|");
          --abs_depth_;
          return Expression::Apply(Function::kAbs, {std::move(inner)});
        }
        Unexpected(t);
      case TokenKind::kEnd:
        Unexpected(t);
    }
    Unexpected(t);
  }

  Expression ParseFunction(const Token &t, bool *has_power) {
    Function fn = FunctionFromName(t.text);
    if (fn == Function::kSqrt) {
      std::optional<Expression> index;
      if (scanner_.Peek().Is("[")) {
        scanner_.Consume();
        index = ParseGroupBody("]");
      }
      Expression radicand = ParseArgument();
      std::vector<Expression> args;
      args.push_back(std::move(radicand));
      if (index) args.push_back(std::move(*index));
      return Expression::Apply(fn, std::move(args));
    }
    std::optional<Expression> base;
    std::optional<Expression> power;
    for (;;) {
      const Token &p = scanner_.Peek();
      if (p.Is("_") && fn == Function::kLog && !base) {
        scanner_.Consume();
        base = ParseArgument();
      } else if (p.Is("^") && !power) {
        scanner_.Consume();
        power = ParseArgument();
      } else {
        break;
      }
    }
    Expression arg = ParseFunctionOperand(t);
    std::vector<Expression> args;
    args.push_back(std::move(arg));
    if (base) args.push_back(std::move(*base));
    Expression applied = Expression::Apply(fn, std::move(args));
    if (power) {
      if (has_power) *has_power = true;
      return Expression::Binary(BinaryOp::kPower, std::move(applied), std::move(*power));
    }
    return applied;
  }

  Expression ParseFunctionOperand(const Token &fn) {
    const Token &t = scanner_.Peek();
    if (t.Is("(") || t.Is("[") || t.Is("{") || t.Is("\\{")) {
      std::string open = t.text;
      scanner_.Consume();
      return ParseGroupBody(CloserFor(open));
    }
    if (!CanStartFactor(t, true)) {
      throw SyntaxError("missing argument for \\" + fn.text, fn.end);
    }
    return ParseImplicit(true);
  }

  Scanner scanner_;
  int depth_ = 0;
  int abs_depth_ = 0;
};

std::string_view StripTrailingPunctuation(std::string_view src) {
  for (;;) {
    while (!src.empty() && std::isspace(static_cast<unsigned char>(src.back()))) {
      src.remove_suffix(1);
    }
    if (src.empty()) return src;
    char c = src.back();
    bool escaped = src.size() >= 2 && src[src.size() - 2] == '\\';
    bool ellipsis = src.size() >= 2 && src[src.size() - 2] == '.';
    if ((c == '.' || c == ',' || c == ';') && !escaped && !ellipsis) {
      src.remove_suffix(1);
      continue;
    }
    return src;
  }
}

// Blanks braces enclosing the whole input, as in "{\displaystyle ...}".
// Byte offsets are unchanged.
void BlankOuterBraces(std::string &src) {
  for (;;) {
    size_t first = src.find_first_not_of(" \t\r\n");
    size_t last = src.find_last_not_of(" \t\r\n");
    if (first == std::string::npos || src[first] != '{' || src[last] != '}') return;
    int depth = 0;
    size_t close = std::string::npos;
    for (size_t i = first; i <= last; ++i) {
      if (src[i] == '\\') {
        ++i;
      } else if (src[i] == '{') {
        ++depth;
      } else if (src[i] == '}' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close != last) return;
    src[first] = ' ';
    src[last] = ' ';
  }
}

}  // namespace

Equation ParseLatex(std::string_view source) {
  std::string src(StripTrailingPunctuation(source));
  BlankOuterBraces(src);
  size_t first = 0;
  while (first < src.size() && std::isspace(static_cast<unsigned char>(src[first]))) ++first;
  if (first == src.size()) throw SyntaxError("empty formula", 0);
  CheckCommands(src);
  Parser parser(src);
  return parser.ParseEquation();
}

}  // namespace mathqa
