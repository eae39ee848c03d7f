#include "ratindex/datalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "ratindex/cnf.hpp"
#include "ratindex/error.hpp"
#include "ratindex/reachability.hpp"

namespace ratindex {

namespace {

struct Token {
  enum class Kind { Ident, LParen, RParen, Comma, Dot, Implies, Query, End } kind;
  std::string text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%' || c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), line});
      i = j;
    } else if (text.substr(i, 2) == ":-") {
      out.push_back({Token::Kind::Implies, ":-", line});
      i += 2;
    } else if (text.substr(i, 2) == "?-") {
      out.push_back({Token::Kind::Query, "?-", line});
      i += 2;
    } else if (c == '(' || c == ')' || c == ',' || c == '.') {
      Token::Kind k = c == '(' ? Token::Kind::LParen
                      : c == ')' ? Token::Kind::RParen
                      : c == ',' ? Token::Kind::Comma
                                 : Token::Kind::Dot;
      out.push_back({k, std::string(1, c), line});
      ++i;
    } else {
      throw Error(ErrorCode::Syntax, "line " + std::to_string(line) + ": unexpected character '" +
                                         std::string(1, c) + "'");
    }
  }
  out.push_back({Token::Kind::End, "", line});
  return out;
}

struct Atom {
  std::string predicate;
  std::vector<std::string> args;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ChainProgram run() {
    ChainProgram p;
    while (peek().kind != Token::Kind::End) {
      if (peek().kind == Token::Kind::Query) {
        next();
        p.query = expect(Token::Kind::Ident, "predicate name").text;
        if (peek().kind == Token::Kind::Dot) next();
        continue;
      }
      std::size_t line = peek().line;
      Atom head = atom();
      expect(Token::Kind::Implies, "':-'");
      std::vector<Atom> body{atom()};
      while (peek().kind == Token::Kind::Comma) {
        next();
        body.push_back(atom());
      }
      expect(Token::Kind::Dot, "'.'");
      check_chain(head, body, line);
      ChainRule r{head.predicate, {}, line};
      for (const Atom& a : body) r.body.push_back(a.predicate);
      p.rules.push_back(std::move(r));
    }
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Syntax, "line " + std::to_string(peek().line) + ": expected " + what +
                                       (peek().text.empty() ? "" : ", found '" + peek().text + "'"));
  }

  const Token& expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail(what);
    return next();
  }

  Atom atom() {
    Atom a;
    std::size_t line = peek().line;
    a.predicate = expect(Token::Kind::Ident, "predicate name").text;
    expect(Token::Kind::LParen, "'('");
    a.args.push_back(expect(Token::Kind::Ident, "variable").text);
    while (peek().kind == Token::Kind::Comma) {
      next();
      a.args.push_back(expect(Token::Kind::Ident, "variable").text);
    }
    expect(Token::Kind::RParen, "')'");
    if (a.args.size() != 2)
      throw Error(ErrorCode::NonBinaryPredicate, "line " + std::to_string(line) + ": predicate '" +
                                                     a.predicate + "' has " + std::to_string(a.args.size()) +
                                                     " arguments, chain rules need 2");
    return a;
  }

  static std::string render(const Atom& head, const std::vector<Atom>& body) {
    auto one = [](const Atom& a) { return a.predicate + "(" + a.args[0] + ", " + a.args[1] + ")"; };
    std::string s = one(head) + " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) s += (i ? ", " : "") + one(body[i]);
    return s + ".";
  }

  static void check_chain(const Atom& head, const std::vector<Atom>& body, std::size_t line) {
    const std::string& x = head.args[0];
    const std::string& y = head.args[1];
    bool ok = x != y && body.front().args[0] == x && body.back().args[1] == y;
    std::set<std::string> seen{x, y};
    for (std::size_t i = 0; ok && i + 1 < body.size(); ++i) {
      const std::string& z = body[i].args[1];
      ok = z == body[i + 1].args[0] && seen.insert(z).second;
    }
    if (!ok)
      throw Error(ErrorCode::NonChainRule,
                  "line " + std::to_string(line) + ": rule '" + render(head, body) + "' is not a chain rule");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

template <class F>
std::vector<std::string> collect(const ChainProgram& p, F keep) {
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    if (keep(s) && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const ChainRule& r : p.rules) {
    add(r.head);
    for (const auto& b : r.body) add(b);
  }
  return out;
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

}  // namespace

std::vector<std::string> ChainProgram::idb_predicates() const {
  std::set<std::string> heads;
  for (const ChainRule& r : rules) heads.insert(r.head);
  return collect(*this, [&](const std::string& s) { return heads.count(s) > 0; });
}

std::vector<std::string> ChainProgram::edb_predicates() const {
  std::set<std::string> heads;
  for (const ChainRule& r : rules) heads.insert(r.head);
  return collect(*this, [&](const std::string& s) { return heads.count(s) == 0; });
}

ChainProgram parse_chain_program(std::string_view text) {
  ChainProgram p = Parser(tokenize(text)).run();
  if (p.rules.empty()) throw Error(ErrorCode::Syntax, "program has no rules");
  if (p.query.empty()) p.query = p.rules.front().head;
  auto idb = p.idb_predicates();
  if (std::find(idb.begin(), idb.end(), p.query) == idb.end())
    throw Error(ErrorCode::UndeclaredSymbol, "query predicate '" + p.query + "' is not defined by any rule");
  return p;
}

std::string edb_terminal_name(std::string_view predicate) {
  std::string s(predicate);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

Grammar chain_to_cfg(const ChainProgram& p) {
  Grammar g;
  std::map<std::string, std::string> nonterminal_owner;  // grammar name -> predicate
  std::map<std::string, std::string> terminal_owner;
  std::map<std::string, Symbol> symbol_of;
  auto claim = [](std::map<std::string, std::string>& owner, const std::string& name, const std::string& pred) {
    auto [it, inserted] = owner.emplace(name, pred);
    if (!inserted && it->second != pred)
      throw Error(ErrorCode::DuplicateSymbol,
                  "predicates '" + it->second + "' and '" + pred + "' both map to '" + name + "'");
  };

  std::string start = capitalized(p.query);
  claim(nonterminal_owner, start, p.query);
  g.set_start(g.add_nonterminal(start));
  for (const auto& idb : p.idb_predicates()) {
    std::string name = capitalized(idb);
    claim(nonterminal_owner, name, idb);
    symbol_of[idb] = Symbol::nonterminal(g.add_nonterminal(name));
  }
  for (const auto& edb : p.edb_predicates()) {
    std::string t = edb_terminal_name(edb);
    claim(terminal_owner, t, edb);
    symbol_of[edb] = Symbol::terminal(g.add_terminal(t));
  }
  for (const ChainRule& r : p.rules) {
    std::vector<Symbol> rhs;
    for (const auto& b : r.body) rhs.push_back(symbol_of.at(b));
    g.add_production(symbol_of.at(r.head).id, std::move(rhs));
  }
  return g;
}

std::vector<std::pair<NodeId, NodeId>> evaluate(const ChainProgram& p, const LabeledGraph& d) {
  Grammar g = chain_to_cfg(p);
  for (const auto& t : g.terminals())
    if (!d.find_label(t))
      throw Error(ErrorCode::UnknownEdbLabel, "edb label '" + t + "' does not occur in the graph");
  try {
    return all_pairs_reach(to_cnf(g), d).start_facts();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyLanguage) return {};
    throw;
  }
}

}  // namespace ratindex
