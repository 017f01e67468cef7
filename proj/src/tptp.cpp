/**
 * @file tptp.cpp
 * Recursive-descent parser and printer for the CNF dialect.
 */
#include "prover/tptp.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace prover {

std::vector<Clause> Problem::initial_clauses() const {
  std::vector<Clause> out;
  out.reserve(axioms.size() + negated_conjecture.size());
  for (const auto& c : axioms) out.push_back(c);
  for (const auto& c : negated_conjecture) out.push_back(c);
  return out;
}

namespace {

enum class Tok {
  end,
  lower_word,   // also bare integers
  upper_word,
  quoted,
  lparen,
  rparen,
  comma,
  period,
  pipe,
  tilde,
  dollar_word,  // $false etc.
  equals,       // = and != — recognized so we can reject them clearly
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (c == '(') return take(t, Tok::lparen);
    if (c == ')') return take(t, Tok::rparen);
    if (c == ',') return take(t, Tok::comma);
    if (c == '.') return take(t, Tok::period);
    if (c == '|') return take(t, Tok::pipe);
    if (c == '~') return take(t, Tok::tilde);
    if (c == '=') return take(t, Tok::equals);
    if (c == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      advance();
      return take(t, Tok::equals);
    }
    if (c == '$') {
      advance();
      t.kind = Tok::dollar_word;
      t.text = "$" + read_word();
      return t;
    }
    if (c == '\'') {
      advance();
      t.kind = Tok::quoted;
      while (pos_ < text_.size() && text_[pos_] != '\'') {
        t.text += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) {
        throw ParseError(ParseError::Kind::syntax, "unterminated quoted name", t.line, t.col);
      }
      advance();  // closing quote
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::lower_word;
      t.text = read_word();
      return t;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::upper_word;
      t.text = read_word();
      return t;
    }
    throw ParseError(ParseError::Kind::syntax,
                     std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  Token take(Token& t, Tok kind) {
    t.kind = kind;
    t.text = text_[pos_];
    advance();
    return t;
  }

  std::string read_word() {
    std::string w;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        w += c;
        advance();
      } else {
        break;
      }
    }
    return w;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(Problem& problem, const IncludeResolver& resolver) : problem_(problem), resolver_(resolver) {}

  void parse_text(const std::string& text) {
    Lexer lex(text);
    current_ = lex.next();
    while (current_.kind != Tok::end) {
      parse_statement(lex);
    }
  }

  void parse_include_text(const std::string& key, const std::string& text) {
    if (!active_includes_.insert(key).second) {
      throw ParseError(ParseError::Kind::include_cycle, "include cycle through '" + key + "'",
                       current_.line, current_.col);
    }
    // Each included file gets its own lexer/current token.
    const Token saved = current_;
    parse_text(text);
    current_ = saved;
    active_includes_.erase(key);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::syntax, msg, current_.line, current_.col);
  }

  void expect(Lexer& lex, Tok kind, const char* what) {
    if (current_.kind != kind) fail(std::string("expected ") + what);
    current_ = lex.next();
  }

  void parse_statement(Lexer& lex) {
    if (current_.kind != Tok::lower_word) fail("expected 'cnf' or 'include' statement");
    const std::string keyword = current_.text;
    const Token at = current_;
    if (keyword == "include") {
      current_ = lex.next();
      parse_include(lex);
      return;
    }
    if (keyword == "fof" || keyword == "tff" || keyword == "thf" || keyword == "tcf") {
      throw ParseError(ParseError::Kind::unsupported,
                       "'" + keyword + "' statements are not supported; only the CNF dialect is accepted",
                       at.line, at.col);
    }
    if (keyword != "cnf") fail("expected 'cnf' or 'include' statement");
    current_ = lex.next();
    parse_cnf(lex);
  }

  void parse_include(Lexer& lex) {
    expect(lex, Tok::lparen, "'('");
    if (current_.kind != Tok::quoted && current_.kind != Tok::lower_word) {
      fail("expected include path");
    }
    const std::string path = current_.text;
    const Token at = current_;
    current_ = lex.next();
    if (current_.kind == Tok::comma) {
      throw ParseError(ParseError::Kind::unsupported, "include with formula selection is not supported",
                       current_.line, current_.col);
    }
    expect(lex, Tok::rparen, "')'");
    expect(lex, Tok::period, "'.'");
    if (!resolver_) {
      throw ParseError(ParseError::Kind::io, "no include resolver configured for '" + path + "'",
                       at.line, at.col);
    }
    std::string text;
    try {
      text = resolver_(path);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(ParseError::Kind::io, "cannot resolve include '" + path + "': " + e.what(),
                       at.line, at.col);
    }
    parse_include_text(path, text);
  }

  void parse_cnf(Lexer& lex) {
    expect(lex, Tok::lparen, "'('");
    if (current_.kind != Tok::lower_word && current_.kind != Tok::quoted &&
        current_.kind != Tok::upper_word) {
      fail("expected clause name");
    }
    current_ = lex.next();
    expect(lex, Tok::comma, "','");
    if (current_.kind != Tok::lower_word) fail("expected clause role");
    const std::string role = current_.text;
    const Token role_at = current_;
    current_ = lex.next();
    expect(lex, Tok::comma, "','");

    // Variables are clause-local; fresh ids come from the problem counter.
    clause_vars_.clear();
    Clause clause = parse_formula(lex);

    expect(lex, Tok::rparen, "')'");
    expect(lex, Tok::period, "'.'");

    if (role == "axiom" || role == "hypothesis" || role == "lemma") {
      clause.id = static_cast<ClauseId>(problem_.axioms.size() + problem_.negated_conjecture.size());
      problem_.axioms.push_back(std::move(clause));
    } else if (role == "negated_conjecture") {
      clause.id = static_cast<ClauseId>(problem_.axioms.size() + problem_.negated_conjecture.size());
      problem_.negated_conjecture.push_back(std::move(clause));
    } else if (role == "conjecture") {
      throw ParseError(ParseError::Kind::unsupported,
                       "CNF conjectures are not supported; negate the conjecture first",
                       role_at.line, role_at.col);
    } else {
      throw ParseError(ParseError::Kind::syntax, "unknown clause role '" + role + "'",
                       role_at.line, role_at.col);
    }
  }

  Clause parse_formula(Lexer& lex) {
    // Optional single outer parenthesization.
    bool parenthesized = false;
    if (current_.kind == Tok::lparen) {
      parenthesized = true;
      current_ = lex.next();
    }
    if (current_.kind == Tok::dollar_word) {
      if (current_.text != "$false") fail("unknown defined symbol '" + current_.text + "'");
      current_ = lex.next();
      if (parenthesized) expect(lex, Tok::rparen, "')'");
      return Clause{};
    }
    std::vector<Literal> literals;
    literals.push_back(parse_literal(lex));
    while (current_.kind == Tok::pipe) {
      current_ = lex.next();
      literals.push_back(parse_literal(lex));
    }
    if (parenthesized) expect(lex, Tok::rparen, "')'");
    return make_clause(std::move(literals));
  }

  Literal parse_literal(Lexer& lex) {
    bool negated = false;
    if (current_.kind == Tok::tilde) {
      negated = true;
      current_ = lex.next();
    }
    if (current_.kind == Tok::dollar_word) {
      fail("defined symbols are only allowed as a whole '$false' formula");
    }
    if (current_.kind != Tok::lower_word) fail("expected predicate symbol");
    const Token sym = current_;
    current_ = lex.next();
    std::vector<Term> args;
    if (current_.kind == Tok::lparen) {
      current_ = lex.next();
      args.push_back(parse_term(lex));
      while (current_.kind == Tok::comma) {
        current_ = lex.next();
        args.push_back(parse_term(lex));
      }
      expect(lex, Tok::rparen, "')'");
    }
    check_no_equality();
    const SymbolId pred = intern(sym, SymbolKind::predicate, static_cast<int>(args.size()));
    return Literal{negated, pred, std::move(args)};
  }

  Term parse_term(Lexer& lex) {
    if (current_.kind == Tok::upper_word) {
      const std::string name = current_.text;
      current_ = lex.next();
      auto it = clause_vars_.find(name);
      if (it == clause_vars_.end()) {
        const VarId v = problem_.next_var++;
        clause_vars_.emplace(name, v);
        problem_.var_names.emplace(v, name);
        return Term::variable(v);
      }
      return Term::variable(it->second);
    }
    if (current_.kind != Tok::lower_word) fail("expected term");
    const Token sym = current_;
    current_ = lex.next();
    std::vector<Term> args;
    if (current_.kind == Tok::lparen) {
      current_ = lex.next();
      args.push_back(parse_term(lex));
      while (current_.kind == Tok::comma) {
        current_ = lex.next();
        args.push_back(parse_term(lex));
      }
      expect(lex, Tok::rparen, "')'");
    }
    check_no_equality();
    const SymbolId f = intern(sym, SymbolKind::functor, static_cast<int>(args.size()));
    return Term::application(f, std::move(args));
  }

  void check_no_equality() const {
    if (current_.kind == Tok::equals) {
      throw ParseError(ParseError::Kind::unsupported,
                       "equality literals are not supported by this prover",
                       current_.line, current_.col);
    }
  }

  SymbolId intern(const Token& tok, SymbolKind kind, int arity) {
    if (kind == SymbolKind::predicate) {
      if (auto id = problem_.signature.find_predicate(tok.text)) {
        const int expected = problem_.signature.predicate(*id).arity;
        if (expected != arity) {
          throw ParseError(ParseError::Kind::arity_mismatch,
                           "predicate '" + tok.text + "' used with arity " + std::to_string(arity) +
                               " but first seen with arity " + std::to_string(expected),
                           tok.line, tok.col);
        }
        return *id;
      }
      return problem_.signature.add_predicate(tok.text, arity);
    }
    if (auto id = problem_.signature.find_functor(tok.text)) {
      const int expected = problem_.signature.functor(*id).arity;
      if (expected != arity) {
        throw ParseError(ParseError::Kind::arity_mismatch,
                         "functor '" + tok.text + "' used with arity " + std::to_string(arity) +
                             " but first seen with arity " + std::to_string(expected),
                         tok.line, tok.col);
      }
      return *id;
    }
    return problem_.signature.add_functor(tok.text, arity);
  }

  Problem& problem_;
  const IncludeResolver& resolver_;
  Token current_;
  std::unordered_map<std::string, VarId> clause_vars_;
  std::unordered_set<std::string> active_includes_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Problem parse_tptp_cnf(const std::string& text, const IncludeResolver& resolver,
                       const std::string& name) {
  Problem problem;
  problem.name = name;
  Parser parser(problem, resolver);
  parser.parse_text(text);
  if (problem.axioms.empty() && problem.negated_conjecture.empty()) {
    throw ParseError(ParseError::Kind::syntax, "input contains no clauses", 1, 1);
  }
  return problem;
}

Problem load_problem(const std::filesystem::path& path) {
  return load_problem(path, path.parent_path());
}

Problem load_problem(const std::filesystem::path& path, const std::filesystem::path& include_root) {
  const std::string text = read_file(path);
  IncludeResolver resolver = [&include_root](const std::string& rel) {
    return read_file(include_root / rel);
  };
  Problem p = parse_tptp_cnf(text, resolver, path.stem().string());
  p.source_files.push_back(path.string());
  return p;
}

namespace {

// Per-clause display names: remembered names where available, uniquified so
// two distinct variables never print alike, fallback X<n>.
std::unordered_map<VarId, std::string> display_names(const Clause& c, const VarNames* names) {
  std::unordered_map<VarId, std::string> out;
  std::unordered_set<std::string> used;
  std::vector<VarId> order;
  std::unordered_set<VarId> seen;

  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_variable) {
      if (seen.insert(t.var_id()).second) order.push_back(t.var_id());
      return;
    }
    for (const auto& a : t.args) walk(a);
  };
  for (const auto& lit : c.literals) {
    for (const auto& t : lit.args) walk(t);
  }

  int fresh = 0;
  for (const VarId v : order) {
    std::string name;
    if (names) {
      auto it = names->find(v);
      if (it != names->end()) name = it->second;
    }
    if (name.empty() || used.count(name)) {
      do {
        name = "X" + std::to_string(fresh++);
      } while (used.count(name));
    }
    used.insert(name);
    out.emplace(v, name);
  }
  return out;
}

void print_term(std::string& out, const Term& t, const Signature& sig,
                const std::unordered_map<VarId, std::string>& vnames) {
  if (t.is_variable) {
    out += vnames.at(t.var_id());
    return;
  }
  out += sig.functor(t.functor()).name;
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      print_term(out, t.args[i], sig, vnames);
    }
    out += ')';
  }
}

}  // namespace

std::string term_to_string(const Term& t, const Signature& sig, const VarNames* names) {
  Clause wrapper;  // reuse the clause-level display-name machinery
  wrapper.literals.push_back(Literal{false, 0, {t}});
  const auto vnames = display_names(wrapper, names);
  std::string out;
  print_term(out, t, sig, vnames);
  return out;
}

std::string serialize_clause(const Clause& c, const Signature& sig, const VarNames* names) {
  if (c.empty()) return "$false";
  const auto vnames = display_names(c, names);
  std::string out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) out += " | ";
    const Literal& lit = c.literals[i];
    if (lit.negated) out += '~';
    out += sig.predicate(lit.predicate).name;
    if (!lit.args.empty()) {
      out += '(';
      for (std::size_t j = 0; j < lit.args.size(); ++j) {
        if (j) out += ',';
        print_term(out, lit.args[j], sig, vnames);
      }
      out += ')';
    }
  }
  return out;
}

std::string serialize_problem(const Problem& p) {
  std::string out;
  out += "% " + p.name + "\n";
  for (std::size_t i = 0; i < p.axioms.size(); ++i) {
    out += "cnf(a" + std::to_string(i) + ", axiom, " +
           serialize_clause(p.axioms[i], p.signature, &p.var_names) + ").\n";
  }
  for (std::size_t i = 0; i < p.negated_conjecture.size(); ++i) {
    out += "cnf(nc" + std::to_string(i) + ", negated_conjecture, " +
           serialize_clause(p.negated_conjecture[i], p.signature, &p.var_names) + ").\n";
  }
  return out;
}

}  // namespace prover
