#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <tuple>

#include "qcsp/errors.hpp"
#include "qcsp/formula.hpp"

namespace qcsp {
namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool ident_start() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    if (!ident_start()) fail("expected a name");
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') break;
      out += c;
      advance();
    }
    return out;
  }

  int integer() {
    skip();
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, value);
    if (end == pos_ || ec != std::errc{} || ptr != text_.data() + end) fail("expected an integer");
    while (pos_ < end) advance();
    return value;
  }

  // Peeks the next identifier without consuming it.
  std::string peek_ident() {
    const auto saved = std::tuple{pos_, line_, column_};
    std::string out = ident_start() ? ident() : std::string{};
    std::tie(pos_, line_, column_) = saved;
    return out;
  }

  [[noreturn]] void fail(const std::string& message) {
    skip();
    throw ParseError(message, line_, column_);
  }

  // Position of the next token.
  int line() {
    skip();
    return line_;
  }
  int column() {
    skip();
    return column_;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "in" || s == "edge" || s == "eq" || s == "true";
}

}  // namespace

PHSentence parse_sentence(std::string_view text) {
  Lexer lex(text);
  PHSentence s;
  std::set<std::string> bound;
  // Blocks until the first token that is not a quantifier keyword.
  while (true) {
    const std::string word = lex.peek_ident();
    if (word != "forall" && word != "exists") break;
    lex.ident();
    QuantBlock b;
    b.quantifier = word == "forall" ? Quantifier::kForall : Quantifier::kExists;
    while (lex.ident_start() && lex.peek_ident() != "in") {
      const int line = lex.line(), col = lex.column();
      std::string v = lex.ident();
      if (keyword(v)) lex.fail("'" + v + "' is reserved");
      if (!bound.insert(v).second) throw ParseError("variable '" + v + "' quantified twice", line, col);
      b.variables.push_back(std::move(v));
    }
    if (b.variables.empty()) lex.fail("quantifier block needs a variable");
    if (lex.peek_ident() == "in") {
      lex.ident();
      lex.expect('{');
      std::vector<int> range{lex.integer()};
      while (lex.accept(',')) range.push_back(lex.integer());
      lex.expect('}');
      std::set<int> sorted(range.begin(), range.end());
      if (sorted.size() != range.size()) lex.fail("range lists a vertex twice");
      if (*sorted.begin() < 1) lex.fail("range vertices start at 1");
      b.range = std::vector<int>(sorted.begin(), sorted.end());
    }
    s.blocks.push_back(std::move(b));
    lex.expect(';');
  }
  if (s.blocks.empty()) lex.fail("expected 'forall' or 'exists'");

  if (lex.peek_ident() == "true") {
    lex.ident();
  } else {
    do {
      const std::string kind = lex.ident();
      if (kind != "edge" && kind != "eq") lex.fail("expected 'edge' or 'eq', got '" + kind + "'");
      lex.expect('(');
      const int l1 = lex.line(), c1 = lex.column();
      const std::string a = lex.ident();
      lex.expect(',');
      const int l2 = lex.line(), c2 = lex.column();
      const std::string b = lex.ident();
      lex.expect(')');
      if (!bound.contains(a)) throw ParseError("variable '" + a + "' unquantified", l1, c1);
      if (!bound.contains(b)) throw ParseError("variable '" + b + "' unquantified", l2, c2);
      s.matrix.push_back({kind == "edge" ? AtomKind::kEdge : AtomKind::kEqual, a, b});
    } while (lex.accept('&'));
  }
  if (!lex.at_end()) lex.fail("unexpected trailing input");
  return s;
}

std::string serialize(const Formula& f) {
  std::ostringstream out;
  for (const auto& b : f.blocks) {
    out << to_string(b.quantifier);
    for (const auto& v : b.variables) out << ' ' << v;
    if (b.range) {
      out << " in {";
      for (std::size_t i = 0; i < b.range->size(); ++i) out << (i ? "," : "") << (*b.range)[i];
      out << '}';
    }
    out << "; ";
  }
  if (f.matrix.empty()) {
    out << "true";
  } else {
    for (std::size_t i = 0; i < f.matrix.size(); ++i) {
      const auto& a = f.matrix[i];
      out << (i ? " & " : "") << (a.kind == AtomKind::kEdge ? "edge(" : "eq(") << a.left << ','
          << a.right << ')';
    }
  }
  return out.str();
}

}  // namespace qcsp
