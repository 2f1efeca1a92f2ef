#include "bes/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

#include "bes/errors.hpp"

namespace bes {

namespace {

struct InternKey {
  Conn kind;
  const Formula::Node* a;
  const Formula::Node* b;
  std::string name;
  bool operator==(const InternKey&) const = default;
};

struct InternKeyHash {
  size_t operator()(const InternKey& k) const {
    size_t h = static_cast<size_t>(k.kind);
    h = h * 0x9e3779b97f4a7c15ULL + reinterpret_cast<uintptr_t>(k.a);
    h = h * 0x9e3779b97f4a7c15ULL + reinterpret_cast<uintptr_t>(k.b);
    h = h * 0x9e3779b97f4a7c15ULL + std::hash<std::string>{}(k.name);
    return h;
  }
};

std::mutex g_intern_mutex;
std::unordered_map<InternKey, std::unique_ptr<Formula::Node>, InternKeyHash>& intern_table() {
  static auto* t = new std::unordered_map<InternKey, std::unique_ptr<Formula::Node>, InternKeyHash>();
  return *t;
}
uint32_t g_next_id = 0;

const Formula::Node* intern(Conn kind, const Formula::Node* a, const Formula::Node* b,
                            std::string name) {
  std::lock_guard<std::mutex> lock(g_intern_mutex);
  InternKey key{kind, a, b, name};
  auto& table = intern_table();
  auto it = table.find(key);
  if (it != table.end()) return it->second.get();
  auto node = std::make_unique<Formula::Node>();
  node->kind = kind;
  node->a = a;
  node->b = b;
  node->name = std::move(name);
  node->id = g_next_id++;
  switch (kind) {
    case Conn::Atom:
    case Conn::Bottom:
      node->depth = 0;
      node->node_count = 1;
      break;
    case Conn::Implies:
      node->depth = 1 + std::max(a->depth, b->depth);
      node->node_count = 1 + a->node_count + b->node_count;
      break;
    case Conn::Box:
    case Conn::Diamond:
      node->depth = 1 + a->depth;
      node->node_count = 1 + a->node_count;
      break;
  }
  const Formula::Node* raw = node.get();
  table.emplace(std::move(key), std::move(node));
  return raw;
}

Formula wrap(const Formula::Node* n) {
  // Formula's private constructor is inaccessible here; rebuild through the
  // public factories to keep a single interning path.
  switch (n->kind) {
    case Conn::Atom: return Formula::atom(n->name);
    case Conn::Bottom: return Formula::bottom();
    case Conn::Implies: return Formula::implies(wrap(n->a), wrap(n->b));
    case Conn::Box: return Formula::box(wrap(n->a));
    case Conn::Diamond: return Formula::diamond(wrap(n->a));
  }
  return Formula::bottom();
}

}  // namespace

Formula Formula::atom(std::string_view name) {
  return Formula(intern(Conn::Atom, nullptr, nullptr, std::string(name)));
}
Formula Formula::bottom() { return Formula(intern(Conn::Bottom, nullptr, nullptr, {})); }
Formula Formula::implies(Formula l, Formula r) {
  return Formula(intern(Conn::Implies, l.node_, r.node_, {}));
}
Formula Formula::box(Formula body) { return Formula(intern(Conn::Box, body.node_, nullptr, {})); }
Formula Formula::diamond(Formula body) {
  return Formula(intern(Conn::Diamond, body.node_, nullptr, {}));
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("syntax error at position " + std::to_string(pos) + ": expected " + expected,
                     pos, expected);
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (text.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  Formula parse_implication() {
    Formula lhs = parse_unary();
    skip_ws();
    if (eat("->")) return Formula::implies(lhs, parse_implication());
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (eat("~")) return Formula::neg(parse_unary());
    if (eat("[]")) return Formula::box(parse_unary());
    if (eat("<>")) return Formula::diamond(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    skip_ws();
    if (eat("(")) {
      Formula inner = parse_implication();
      if (!eat(")")) fail("')'");
      return inner;
    }
    if (pos >= text.size()) fail("atom, 'bot', '~', '[]', '<>' or '('");
    char c = text[pos];
    if (c >= 'a' && c <= 'z') {
      size_t start = pos;
      pos++;
      while (pos < text.size() &&
             ((text[pos] >= 'a' && text[pos] <= 'z') || (text[pos] >= '0' && text[pos] <= '9') ||
              text[pos] == '_'))
        pos++;
      std::string_view name = text.substr(start, pos - start);
      if (name == "bot") return Formula::bottom();
      return Formula::atom(name);
    }
    fail("atom, 'bot', '~', '[]', '<>' or '('");
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p{text};
  Formula f = p.parse_implication();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("end of input or '->'");
  return f;
}

namespace {

void render_rec(Formula f, std::string& out, bool implies_needs_parens) {
  switch (f.kind()) {
    case Conn::Atom:
      out += f.atom_name();
      break;
    case Conn::Bottom:
      out += "bot";
      break;
    case Conn::Implies: {
      if (implies_needs_parens) out += '(';
      render_rec(f.left(), out, true);  // right-associative: left side parenthesized
      out += " -> ";
      render_rec(f.right(), out, false);
      if (implies_needs_parens) out += ')';
      break;
    }
    case Conn::Box:
      out += "[]";
      render_rec(f.body(), out, true);
      break;
    case Conn::Diamond:
      out += "<>";
      render_rec(f.body(), out, true);
      break;
  }
}

}  // namespace

std::string render(Formula f) {
  std::string out;
  render_rec(f, out, false);
  return out;
}

Formula rewrite_diamond(Formula f) {
  switch (f.kind()) {
    case Conn::Atom:
    case Conn::Bottom:
      return f;
    case Conn::Implies:
      return Formula::implies(rewrite_diamond(f.left()), rewrite_diamond(f.right()));
    case Conn::Box:
      return Formula::box(rewrite_diamond(f.body()));
    case Conn::Diamond:
      return Formula::neg(Formula::box(Formula::neg(rewrite_diamond(f.body()))));
  }
  return f;
}

namespace {

void collect_subformulas(Formula f, std::vector<Formula>& out, std::set<uint32_t>& seen) {
  if (seen.count(f.id())) return;
  switch (f.kind()) {
    case Conn::Atom:
    case Conn::Bottom:
      break;
    case Conn::Implies:
      collect_subformulas(f.left(), out, seen);
      collect_subformulas(f.right(), out, seen);
      break;
    case Conn::Box:
    case Conn::Diamond:
      collect_subformulas(f.body(), out, seen);
      break;
  }
  if (seen.insert(f.id()).second) out.push_back(f);
}

}  // namespace

std::vector<Formula> subformulas(Formula f) {
  std::vector<Formula> out;
  std::set<uint32_t> seen;
  collect_subformulas(f, out, seen);
  return out;
}

std::vector<std::string> atoms_of(Formula f) {
  std::set<std::string> names;
  for (Formula s : subformulas(f))
    if (s.kind() == Conn::Atom) names.insert(s.atom_name());
  return std::vector<std::string>(names.begin(), names.end());
}

AtomAlphabet::AtomAlphabet(std::vector<std::string> a) : atoms(std::move(a)) {
  if (atoms.empty()) throw std::invalid_argument("alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& name : atoms)
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate atom in alphabet: " + name);
}

int AtomAlphabet::index_of(std::string_view name) const {
  for (size_t i = 0; i < atoms.size(); i++)
    if (atoms[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<Formula> enumerate_formulas(const AtomAlphabet& alphabet, int max_depth,
                                        bool allow_modal) {
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  constexpr size_t kMaxFormulas = 2'000'000;
  std::vector<Formula> all;
  for (const auto& a : alphabet.atoms) all.push_back(Formula::atom(a));
  all.push_back(Formula::bottom());
  size_t layer_begin = 0;
  for (int d = 1; d <= max_depth; d++) {
    size_t layer_end = all.size();
    std::vector<Formula> next;
    for (size_t i = 0; i < layer_end; i++)
      for (size_t j = 0; j < layer_end; j++) {
        Formula cand = Formula::implies(all[i], all[j]);
        if (cand.depth() == static_cast<uint32_t>(d)) next.push_back(cand);
      }
    if (allow_modal)
      for (size_t i = layer_begin; i < layer_end; i++) {
        next.push_back(Formula::box(all[i]));
        next.push_back(Formula::diamond(all[i]));
      }
    if (all.size() + next.size() > kMaxFormulas)
      throw SizeLimitError("formula enumeration exceeds " + std::to_string(kMaxFormulas));
    layer_begin = layer_end;
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

}  // namespace bes
