#include "ratindex/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ratindex/error.hpp"

namespace ratindex {

TerminalId Grammar::add_terminal(std::string_view name) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) {
    if (it->second.is_terminal()) return it->second.id;
    throw Error(ErrorCode::DuplicateSymbol,
                "symbol '" + key + "' declared as both terminal and nonterminal");
  }
  auto id = static_cast<TerminalId>(terminals_.size());
  terminals_.push_back(key);
  index_.emplace(std::move(key), Symbol::terminal(id));
  return id;
}

NonterminalId Grammar::add_nonterminal(std::string_view name) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) {
    if (it->second.is_nonterminal()) return it->second.id;
    throw Error(ErrorCode::DuplicateSymbol,
                "symbol '" + key + "' declared as both terminal and nonterminal");
  }
  auto id = static_cast<NonterminalId>(nonterminals_.size());
  nonterminals_.push_back(key);
  index_.emplace(std::move(key), Symbol::nonterminal(id));
  return id;
}

ProductionId Grammar::add_production(NonterminalId lhs, std::vector<Symbol> rhs) {
  if (lhs >= nonterminals_.size())
    throw Error(ErrorCode::InvalidArgument, "production lhs out of range");
  for (const Symbol& s : rhs) {
    std::size_t bound = s.is_terminal() ? terminals_.size() : nonterminals_.size();
    if (s.id >= bound) throw Error(ErrorCode::InvalidArgument, "production symbol out of range");
  }
  productions_.push_back(Production{lhs, std::move(rhs)});
  return static_cast<ProductionId>(productions_.size() - 1);
}

void Grammar::set_start(NonterminalId start) {
  if (start >= nonterminals_.size())
    throw Error(ErrorCode::InvalidArgument, "start symbol out of range");
  start_ = start;
}

const std::string& Grammar::symbol_name(Symbol s) const {
  return s.is_terminal() ? terminal_name(s.id) : nonterminal_name(s.id);
}

std::optional<TerminalId> Grammar::find_terminal(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end() || !it->second.is_terminal()) return std::nullopt;
  return it->second.id;
}

std::optional<NonterminalId> Grammar::find_nonterminal(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end() || !it->second.is_nonterminal()) return std::nullopt;
  return it->second.id;
}

bool Grammar::single_char_terminals() const {
  return std::all_of(terminals_.begin(), terminals_.end(),
                     [](const std::string& t) { return t.size() == 1; });
}

namespace {

constexpr std::string_view kEpsilon = "\xCE\xB5";  // ε in UTF-8

enum class TokenKind { Identifier, Quoted, Arrow, Bar, Epsilon };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

[[noreturn]] void syntax_error(std::size_t line, std::size_t column, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << msg;
  throw Error(ErrorCode::Syntax, os.str());
}

std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    std::size_t col = i + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (line.substr(i, 2) == "->") {
      out.push_back({TokenKind::Arrow, "->", col});
      i += 2;
    } else if (c == '|') {
      out.push_back({TokenKind::Bar, "|", col});
      ++i;
    } else if (line.substr(i, kEpsilon.size()) == kEpsilon) {
      out.push_back({TokenKind::Epsilon, std::string(kEpsilon), col});
      i += kEpsilon.size();
    } else if (c == '\'' || c == '"') {
      std::size_t end = line.find(c, i + 1);
      if (end == std::string_view::npos) syntax_error(line_no, col, "unterminated quoted terminal");
      if (end == i + 1) syntax_error(line_no, col, "empty quoted terminal");
      out.push_back({TokenKind::Quoted, std::string(line.substr(i + 1, end - i - 1)), col});
      i = end + 1;
    } else if (is_ident_char(c) && c != '\'') {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      out.push_back({TokenKind::Identifier, std::string(line.substr(i, j - i)), col});
      i = j;
    } else {
      syntax_error(line_no, col, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

bool is_nonterminal_name(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name.front()));
}

bool is_bare_terminal_name(std::string_view name) {
  if (name.empty() || is_nonterminal_name(name)) return false;
  if (name.front() == '\'') return false;
  return std::all_of(name.begin(), name.end(), is_ident_char);
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  // Pass 1: tokenize and collect left-hand sides.
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++line_no;
    auto tokens = tokenize_line(raw, line_no);
    if (!tokens.empty()) lines.push_back(Line{line_no, std::move(tokens)});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::Syntax, "grammar has no productions");

  Grammar g;
  for (const Line& line : lines) {
    const auto& t = line.tokens;
    if (t.front().kind == TokenKind::Bar) continue;  // continuation
    if (t.front().kind != TokenKind::Identifier || !is_nonterminal_name(t.front().text))
      syntax_error(line.number, t.front().column,
                   "expected nonterminal (uppercase identifier) on the left-hand side");
    if (t.size() < 2 || t[1].kind != TokenKind::Arrow)
      syntax_error(line.number, t.size() < 2 ? t.front().column + t.front().text.size() : t[1].column,
                   "expected '->'");
    g.add_nonterminal(t.front().text);
  }
  g.set_start(0);

  // Pass 2: bodies.
  std::optional<NonterminalId> current;
  for (const Line& line : lines) {
    const auto& t = line.tokens;
    std::size_t i = 0;
    if (t.front().kind == TokenKind::Bar) {
      if (!current) syntax_error(line.number, t.front().column, "continuation line without a preceding production");
    } else {
      current = *g.find_nonterminal(t.front().text);
      i = 2;
    }
    std::vector<Symbol> body;
    bool saw_epsilon = false;
    bool leading_bar = t.front().kind == TokenKind::Bar;
    if (leading_bar) i = 1;
    auto flush = [&] {
      g.add_production(*current, std::move(body));
      body.clear();
      saw_epsilon = false;
    };
    for (; i < t.size(); ++i) {
      const Token& tok = t[i];
      switch (tok.kind) {
        case TokenKind::Arrow:
          syntax_error(line.number, tok.column, "unexpected '->'");
        case TokenKind::Bar:
          flush();
          break;
        case TokenKind::Epsilon:
          if (!body.empty()) syntax_error(line.number, tok.column, "epsilon must stand alone in an alternative");
          saw_epsilon = true;
          break;
        case TokenKind::Quoted:
          if (saw_epsilon) syntax_error(line.number, tok.column, "epsilon must stand alone in an alternative");
          body.push_back(Symbol::terminal(g.add_terminal(tok.text)));
          break;
        case TokenKind::Identifier:
          if (saw_epsilon) syntax_error(line.number, tok.column, "epsilon must stand alone in an alternative");
          if (is_nonterminal_name(tok.text)) {
            auto nt = g.find_nonterminal(tok.text);
            if (!nt) {
              std::ostringstream os;
              os << "line " << line.number << ", column " << tok.column
                 << ": nonterminal '" << tok.text << "' has no production";
              throw Error(ErrorCode::UndeclaredSymbol, os.str());
            }
            body.push_back(Symbol::nonterminal(*nt));
          } else {
            body.push_back(Symbol::terminal(g.add_terminal(tok.text)));
          }
          break;
      }
    }
    flush();
  }
  return g;
}

std::string format_grammar(const Grammar& g) {
  std::vector<std::vector<const Production*>> by_lhs(g.nonterminal_count());
  std::vector<NonterminalId> order;
  // Start symbol first so the output parses back with the same start.
  order.push_back(g.start());
  for (const Production& p : g.productions()) {
    if (by_lhs[p.lhs].empty() && p.lhs != g.start()) order.push_back(p.lhs);
    by_lhs[p.lhs].push_back(&p);
  }
  std::ostringstream os;
  for (NonterminalId a : order) {
    if (by_lhs[a].empty()) continue;
    os << g.nonterminal_name(a) << " ->";
    bool first = true;
    for (const Production* p : by_lhs[a]) {
      if (!first) os << " |";
      first = false;
      if (p->rhs.empty()) os << ' ' << kEpsilon;
      for (const Symbol& s : p->rhs) {
        const std::string& name = g.symbol_name(s);
        if (s.is_terminal() && !is_bare_terminal_name(name)) {
          char quote = name.find('\'') == std::string::npos ? '\'' : '"';
          os << ' ' << quote << name << quote;
        } else {
          os << ' ' << name;
        }
      }
    }
    os << '\n';
  }
  return os.str();
}

Word parse_word(const Grammar& g, std::string_view text) {
  Word w;
  auto lookup = [&](std::string_view sym) {
    auto t = g.find_terminal(sym);
    if (!t) throw Error(ErrorCode::Alphabet, "symbol '" + std::string(sym) + "' is not in the alphabet");
    return *t;
  };
  bool has_space = std::any_of(text.begin(), text.end(),
                               [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (has_space) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i) w.push_back(lookup(text.substr(i, j - i)));
      i = j;
    }
    return w;
  }
  if (g.single_char_terminals()) {
    for (std::size_t i = 0; i < text.size(); ++i) w.push_back(lookup(text.substr(i, 1)));
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    std::optional<TerminalId> best;
    std::size_t best_len = 0;
    for (TerminalId t = 0; t < g.terminal_count(); ++t) {
      const std::string& name = g.terminal_name(t);
      if (name.size() > best_len && text.substr(i, name.size()) == name) {
        best = t;
        best_len = name.size();
      }
    }
    if (!best) throw Error(ErrorCode::Alphabet, "no terminal matches at offset " + std::to_string(i) + " of '" + std::string(text) + "'");
    w.push_back(*best);
    i += best_len;
  }
  return w;
}

std::string format_word(const Grammar& g, std::span<const TerminalId> word) {
  std::string out;
  bool spaced = !g.single_char_terminals();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (spaced && i > 0) out += ' ';
    out += g.terminal_name(word[i]);
  }
  return out;
}

}  // namespace ratindex
