#include "expr.hpp"

#include <cctype>

namespace fermat::cli {

namespace {

enum class Tok { number, ident, lparen, rparen, plus, minus, star, caret, slash, comma, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t position;
};

std::string_view token_name(Tok k) {
  switch (k) {
    case Tok::number: return "number";
    case Tok::ident: return "name";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::caret: return "'^'";
    case Tok::slash: return "'/'";
    case Tok::comma: return "','";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

[[noreturn]] void expected_error(std::size_t position, std::vector<std::string> expected, std::string_view found) {
  std::string message = "at position " + std::to_string(position) + ": expected " + join(expected) +
                        ", found " + std::string(found);
  throw ParseError(position, std::move(expected), message);
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digit = [&](std::size_t k) { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c) || (c == '.' && digit(i + 1))) {
      while (digit(i)) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (digit(i)) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (digit(k)) {
          i = k;
          while (digit(i)) ++i;
        }
      }
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '^': k = Tok::caret; break;
      case '/': k = Tok::slash; break;
      case ',': k = Tok::comma; break;
      default: {
        std::string shown = std::isprint(c) ? std::string("'") + static_cast<char>(c) + "'"
                                            : "byte " + std::to_string(static_cast<unsigned>(c));
        throw ParseError(i, {"number", "name", "operator"}, "at position " + std::to_string(i) +
                                                                ": unexpected character " + shown);
      }
    }
    out.push_back({k, std::string(1, static_cast<char>(c)), i});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Tok::end) expected_error(peek().position, {"'+'", "'-'", "'*'", "end of input"}, describe(peek()));
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + t.text + "'";
  }

  Token expect(Tok k) {
    if (peek().kind != k) expected_error(peek().position, {std::string(token_name(k))}, describe(peek()));
    return next();
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > max_nesting) {
        throw ParseError(p_.peek().position, {}, "expression nested deeper than " + std::to_string(max_nesting));
      }
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  static Expr binary(Expr::Kind k, Expr a, Expr b, std::size_t position) {
    Expr e{k, Rational(0), {}, {}, position};
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr expr() {
    DepthGuard guard(*this);
    Expr lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      Token op = next();
      Expr rhs = term();
      lhs = binary(op.kind == Tok::plus ? Expr::Kind::add : Expr::Kind::sub, std::move(lhs), std::move(rhs),
                   op.position);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (peek().kind == Tok::star) {
      Token op = next();
      Expr rhs = unary();
      lhs = binary(Expr::Kind::mul, std::move(lhs), std::move(rhs), op.position);
    }
    return lhs;
  }

  Expr unary() {
    DepthGuard guard(*this);
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) {
      Token op = next();
      Expr inner = unary();
      if (op.kind == Tok::plus) return inner;
      Expr e{Expr::Kind::negate, Rational(0), {}, {}, op.position};
      e.args.push_back(std::move(inner));
      return e;
    }
    return factor();
  }

  Rational integer_literal() {
    const Token& t = peek();
    if (t.kind != Tok::number || t.text.find_first_not_of("0123456789") != std::string::npos) {
      expected_error(t.position, {"integer"}, describe(t));
    }
    next();
    return parse_rational(t.text);
  }

  Expr factor() {
    Expr base = atom();
    if (peek().kind != Tok::caret) return base;
    Token caret = next();
    Rational exponent;
    if (peek().kind == Tok::lparen) {
      next();
      exponent = integer_literal();
      if (peek().kind == Tok::slash) {
        std::size_t at = next().position;
        Rational den = integer_literal();
        if (den == 0) throw ParseError(at + 1, {"nonzero integer"}, "zero denominator in exponent");
        exponent /= den;
      }
      expect(Tok::rparen);
    } else if (peek().kind == Tok::number) {
      exponent = integer_literal();
    } else {
      expected_error(peek().position, {"'('", "integer"}, describe(peek()));
    }
    bool generator = base.kind == Expr::Kind::generator;
    if (!generator && mp::denominator(exponent) != 1) {
      throw ParseError(caret.position, {"integer exponent"},
                       "at position " + std::to_string(caret.position) + ": only t takes fractional exponents");
    }
    if (exponent > max_integer_power) {
      throw ParseError(caret.position, {"smaller exponent"},
                       "exponent exceeds " + std::to_string(max_integer_power));
    }
    Expr e{Expr::Kind::power, exponent, {}, {}, caret.position};
    e.args.push_back(std::move(base));
    return e;
  }

  Expr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::number: {
        next();
        Rational v;
        try {
          v = parse_rational(t.text);
        } catch (const Error&) {
          throw ParseError(t.position, {"number"}, "malformed number '" + t.text + "'");
        }
        if (peek().kind == Tok::slash) {
          std::size_t at = next().position;
          Rational den = integer_literal();
          if (den == 0) throw ParseError(at + 1, {"nonzero integer"}, "zero denominator");
          if (t.text.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError(t.position, {"integer"}, "rational literals take integer numerators");
          }
          v /= den;
        }
        return Expr{Expr::Kind::number, v, {}, {}, t.position};
      }
      case Tok::ident: {
        next();
        if (t.text == "t") return Expr{Expr::Kind::generator, Rational(1), "t", {}, t.position};
        if (peek().kind == Tok::lparen) {
          next();
          Expr e{Expr::Kind::call, Rational(0), t.text, {}, t.position};
          e.args.push_back(expr());
          expect(Tok::rparen);
          return e;
        }
        return Expr{Expr::Kind::variable, Rational(0), t.text, {}, t.position};
      }
      case Tok::lparen: {
        next();
        Expr e = expr();
        expect(Tok::rparen);
        return e;
      }
      default:
        expected_error(t.position, {"number", "'t'", "name", "'('", "'-'"}, describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

void collect(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::variable) out.insert(e.name);
  for (const auto& a : e.args) collect(a, out);
}

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(lex(text)).parse(); }

std::string to_sexpr(const Expr& e) {
  auto wrap = [&](std::string_view op) {
    std::string out = "(" + std::string(op);
    for (const auto& a : e.args) out += " " + to_sexpr(a);
    return out + ")";
  };
  switch (e.kind) {
    case Expr::Kind::number: return to_string(e.value);
    case Expr::Kind::generator: return "t";
    case Expr::Kind::variable: return e.name;
    case Expr::Kind::negate: return wrap("neg");
    case Expr::Kind::add: return wrap("+");
    case Expr::Kind::sub: return wrap("-");
    case Expr::Kind::mul: return wrap("*");
    case Expr::Kind::power: return "(^ " + to_sexpr(e.args[0]) + " " + to_string(e.value) + ")";
    case Expr::Kind::call: return wrap(e.name);
  }
  return "?";
}

std::set<std::string> variables(const Expr& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

MultiPoly to_multipoly(const Expr& e, const std::vector<std::string>& vars) {
  std::size_t n = vars.size();
  switch (e.kind) {
    case Expr::Kind::number: return MultiPoly::constant(n, e.value);
    case Expr::Kind::variable:
      for (std::size_t i = 0; i < n; ++i) {
        if (vars[i] == e.name) return MultiPoly::variable(n, i);
      }
      fail(ErrorCode::unknown_name, "unknown variable '" + e.name + "'");
    case Expr::Kind::negate: return MultiPoly::constant(n, Rational(0)) - to_multipoly(e.args[0], vars);
    case Expr::Kind::add: return to_multipoly(e.args[0], vars) + to_multipoly(e.args[1], vars);
    case Expr::Kind::sub: return to_multipoly(e.args[0], vars) - to_multipoly(e.args[1], vars);
    case Expr::Kind::mul: return to_multipoly(e.args[0], vars) * to_multipoly(e.args[1], vars);
    case Expr::Kind::power:
      if (e.args[0].kind == Expr::Kind::generator) break;
      return to_multipoly(e.args[0], vars).pow(mp::numerator(e.value).convert_to<unsigned>());
    case Expr::Kind::generator:
    case Expr::Kind::call: break;
  }
  fail(ErrorCode::invalid_argument, "polynomials may not contain t or function calls");
}

std::vector<Rational> parse_poly_descriptor(std::string_view body) {
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw ParseError(5, {"'['"}, "poly descriptor must look like poly:[c0,c1,...]");
  }
  std::vector<Rational> out;
  std::string_view inner = body.substr(1, body.size() - 2);
  std::size_t offset = 6;
  for (;;) {
    std::size_t comma = inner.find(',');
    std::string_view item = inner.substr(0, comma);
    try {
      out.push_back(parse_rational(item));
    } catch (const Error&) {
      throw ParseError(offset, {"number"}, "malformed coefficient '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
    offset += comma + 1;
  }
  return out;
}

}  // namespace fermat::cli
