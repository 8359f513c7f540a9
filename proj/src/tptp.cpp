#include "sepfol/tptp.hpp"

#include <cctype>
#include <set>

namespace sepfol {

namespace {

enum class Tok {
  LParen, RParen, LBracket, RBracket, Comma, Colon, Dot,
  Bang, Question, Tilde, And, Or, Implies, Iff, Eq, Neq,
  True, False, Lower, Upper, Number, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::End, "", line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      auto single = [&](Tok k) {
        t.kind = k;
        t.text = std::string(1, c);
        advance();
      };
      switch (c) {
        case '(': single(Tok::LParen); break;
        case ')': single(Tok::RParen); break;
        case '[': single(Tok::LBracket); break;
        case ']': single(Tok::RBracket); break;
        case ',': single(Tok::Comma); break;
        case ':': single(Tok::Colon); break;
        case '.': single(Tok::Dot); break;
        case '?': single(Tok::Question); break;
        case '~': single(Tok::Tilde); break;
        case '&': single(Tok::And); break;
        case '|': single(Tok::Or); break;
        case '!':
          if (peek(1) == '=') {
            t.kind = Tok::Neq;
            t.text = "!=";
            advance(2);
          } else {
            single(Tok::Bang);
          }
          break;
        case '=':
          if (peek(1) == '>') {
            t.kind = Tok::Implies;
            t.text = "=>";
            advance(2);
          } else {
            single(Tok::Eq);
          }
          break;
        case '<':
          if (peek(1) == '=' && peek(2) == '>') {
            t.kind = Tok::Iff;
            t.text = "<=>";
            advance(3);
          } else {
            throw ParseError("unsupported connective", line_, column_);
          }
          break;
        case '$': {
          std::string word = read_word(1);
          if (word == "$true")
            t.kind = Tok::True;
          else if (word == "$false")
            t.kind = Tok::False;
          else
            throw ParseError("unknown defined symbol '" + word + "'", t.line, t.column);
          t.text = word;
          break;
        }
        default:
          if (std::islower(static_cast<unsigned char>(c))) {
            t.kind = Tok::Lower;
            t.text = read_word(0);
          } else if (std::isupper(static_cast<unsigned char>(c))) {
            t.kind = Tok::Upper;
            t.text = read_word(0);
          } else if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::Number;
            t.text = read_word(0);
          } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
          }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

  void advance(std::size_t n = 1) {
    while (n-- > 0 && pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  std::string read_word(std::size_t skip) {
    std::size_t start = pos_;
    advance(skip);
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    return text_.substr(start, pos_ - start);
  }

  void skip_space() {
    for (;;) {
      if (pos_ >= text_.size()) return;
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        int line = line_, column = column_;
        advance(2);
        while (pos_ < text_.size() && !(text_[pos_] == '*' && peek(1) == '/')) advance();
        if (pos_ >= text_.size()) throw ParseError("unterminated comment", line, column);
        advance(2);
      } else {
        return;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
    default: return "token";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Problem problem(std::string name) {
    Problem p;
    p.name = std::move(name);
    std::set<std::string> labels;
    while (cur().kind != Tok::End) {
      const Token& head = cur();
      if (head.kind != Tok::Lower || head.text != "fof") fail("expected 'fof'");
      next();
      expect(Tok::LParen);
      const Token& label = cur();
      if (label.kind != Tok::Lower && label.kind != Tok::Upper && label.kind != Tok::Number)
        fail("expected formula name");
      std::string label_text = label.text;
      if (!labels.insert(label_text).second)
        throw ParseError("duplicate formula name '" + label_text + "'", label.line, label.column);
      next();
      expect(Tok::Comma);
      const Token& role = cur();
      Role r;
      if (role.kind == Tok::Lower && role.text == "axiom")
        r = Role::Axiom;
      else if (role.kind == Tok::Lower && role.text == "conjecture")
        r = Role::Conjecture;
      else
        fail("expected role 'axiom' or 'conjecture'");
      next();
      expect(Tok::Comma);
      Formula f = formula();
      expect(Tok::RParen);
      expect(Tok::Dot);
      try {
        p.signature.merge(extract_signature(f));
      } catch (const ArityConflict& e) {
        throw ArityConflict(std::string(e.what()) + " (in '" + label_text + "')");
      }
      p.formulas.push_back({label_text, r, std::move(f)});
    }
    return p;
  }

  Formula single() {
    Formula f = formula();
    if (cur().kind != Tok::End) fail("trailing input after formula");
    extract_signature(f);
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void next() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = cur();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(message + ", found " + found, t.line, t.column);
  }

  void expect(Tok k) {
    if (cur().kind != k) fail(std::string("expected ") + describe(k));
    next();
  }

  Formula formula() {
    Formula lhs = implication();
    while (cur().kind == Tok::Iff) {
      next();
      lhs = Formula::equivalence(lhs, implication());
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (cur().kind == Tok::Implies) {
      next();
      return Formula::implication(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    std::size_t width = 0;
    Formula lhs = conjunction(width);
    bool mixed = width > 1;
    while (cur().kind == Tok::Or) {
      Token op = cur();
      next();
      std::size_t w = 0;
      Formula rhs = conjunction(w);
      if (mixed || w > 1)
        throw ParseError("'&' and '|' must be separated by parentheses", op.line, op.column);
      lhs = Formula::disjunction(lhs, rhs);
    }
    return lhs;
  }

  Formula conjunction(std::size_t& width) {
    Formula lhs = unary();
    width = 1;
    while (cur().kind == Tok::And) {
      next();
      lhs = Formula::conjunction(lhs, unary());
      ++width;
    }
    return lhs;
  }

  Formula unary() {
    switch (cur().kind) {
      case Tok::Tilde:
        next();
        return Formula::negation(unary());
      case Tok::Bang:
      case Tok::Question:
        return quantified();
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::True:
        next();
        return Formula::truth();
      case Tok::False:
        next();
        return Formula::falsity();
      case Tok::Lower:
      case Tok::Upper:
        return atomic();
      default:
        fail("expected formula");
    }
  }

  Formula quantified() {
    Quantifier q = cur().kind == Tok::Bang ? Quantifier::Forall : Quantifier::Exists;
    next();
    expect(Tok::LBracket);
    std::vector<std::string> vars;
    for (;;) {
      if (cur().kind != Tok::Upper) fail("expected variable");
      vars.push_back(cur().text);
      next();
      if (cur().kind == Tok::Comma) {
        next();
        continue;
      }
      break;
    }
    expect(Tok::RBracket);
    expect(Tok::Colon);
    return Formula::quantified(q, vars, unary());
  }

  Formula atomic() {
    bool is_var = cur().kind == Tok::Upper;
    Term lhs = term();
    if (cur().kind == Tok::Eq) {
      next();
      return Formula::equality(lhs, term());
    }
    if (cur().kind == Tok::Neq) {
      next();
      return Formula::negation(Formula::equality(lhs, term()));
    }
    if (is_var) fail("expected '=' or '!=' after variable");
    return Formula::atom(lhs.name(), lhs.args());
  }

  Term term() {
    const Token& t = cur();
    if (t.kind == Tok::Upper) {
      std::string name = t.text;
      next();
      return Term::variable(name);
    }
    if (t.kind != Tok::Lower) fail("expected term");
    std::string name = t.text;
    next();
    if (cur().kind != Tok::LParen) return Term::constant(name);
    next();
    std::vector<Term> args;
    for (;;) {
      args.push_back(term());
      if (cur().kind == Tok::Comma) {
        next();
        continue;
      }
      break;
    }
    expect(Tok::RParen);
    return Term::apply(name, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printing

void print_term(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_application()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ',';
      print_term(t.args()[i], out);
    }
    out += ')';
  }
}

void print_formula(const Formula& phi, std::string& out);

void print_operand(const Formula& phi, std::string& out) {
  bool wrap = phi.is_binary() || phi.is_quantifier();
  if (wrap) out += '(';
  print_formula(phi, out);
  if (wrap) out += ')';
}

const char* connective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::And: return " & ";
    case Formula::Kind::Or: return " | ";
    case Formula::Kind::Implies: return " => ";
    default: return " <=> ";
  }
}

void print_formula(const Formula& phi, std::string& out) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::Atom:
      out += phi.symbol();
      if (!phi.terms().empty()) {
        out += '(';
        for (std::size_t i = 0; i < phi.terms().size(); ++i) {
          if (i) out += ',';
          print_term(phi.terms()[i], out);
        }
        out += ')';
      }
      return;
    case K::Equality:
      print_term(phi.terms()[0], out);
      out += " = ";
      print_term(phi.terms()[1], out);
      return;
    case K::Truth:
      out += "$true";
      return;
    case K::Falsity:
      out += "$false";
      return;
    case K::Not:
      if (phi.operand().kind() == K::Equality) {
        print_term(phi.operand().terms()[0], out);
        out += " != ";
        print_term(phi.operand().terms()[1], out);
        return;
      }
      out += '~';
      print_operand(phi.operand(), out);
      return;
    case K::Forall:
    case K::Exists: {
      out += phi.kind() == K::Forall ? "![" : "?[";
      const Formula* body = &phi;
      bool first = true;
      while (body->kind() == phi.kind()) {
        if (!first) out += ',';
        out += body->symbol();
        first = false;
        body = &body->operand();
      }
      out += "]: ";
      if (body->is_binary()) {
        out += '(';
        print_formula(*body, out);
        out += ')';
      } else {
        print_formula(*body, out);
      }
      return;
    }
    case K::And:
    case K::Or:
    case K::Iff:
      // left-associative chains print without inner parentheses
      if (phi.left().kind() == phi.kind())
        print_formula(phi.left(), out);
      else
        print_operand(phi.left(), out);
      out += connective(phi.kind());
      print_operand(phi.right(), out);
      return;
    case K::Implies:
      print_operand(phi.left(), out);
      out += connective(phi.kind());
      if (phi.right().kind() == K::Implies)
        print_formula(phi.right(), out);
      else
        print_operand(phi.right(), out);
      return;
  }
}

}  // namespace

Problem parse_tptp(const std::string& text, std::string name) {
  return Parser(Lexer(text).run()).problem(std::move(name));
}

Formula parse_formula(const std::string& text) { return Parser(Lexer(text).run()).single(); }

std::string print_tptp(const Formula& phi) {
  std::string out;
  print_formula(phi, out);
  return out;
}

std::string print_tptp(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string print_fof(const std::string& label, Role role, const Formula& phi) {
  return "fof(" + label + ", " + (role == Role::Axiom ? "axiom" : "conjecture") + ", " + print_tptp(phi) + ").";
}

}  // namespace sepfol
