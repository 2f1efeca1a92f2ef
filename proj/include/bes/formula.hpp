#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bes {

enum class Conn : uint8_t { Atom, Bottom, Implies, Box, Diamond };

// Immutable, interned formula handle. Structurally equal formulas share one
// node, so equality is pointer equality and `id()` is stable for memo keys.
class Formula {
 public:
  struct Node {
    Conn kind;
    const Node* a;  // Implies left / Box,Diamond body
    const Node* b;  // Implies right
    std::string name;
    uint32_t id;
    uint32_t depth;       // atoms and bottom have depth 0
    uint32_t node_count;
  };

  Formula() : node_(nullptr) {}

  static Formula atom(std::string_view name);
  static Formula bottom();
  static Formula implies(Formula l, Formula r);
  static Formula box(Formula body);
  static Formula diamond(Formula body);
  static Formula neg(Formula f) { return implies(f, bottom()); }

  bool valid() const { return node_ != nullptr; }
  Conn kind() const { return node_->kind; }
  const std::string& atom_name() const { return node_->name; }
  Formula left() const { return Formula(node_->a); }
  Formula right() const { return Formula(node_->b); }
  Formula body() const { return Formula(node_->a); }
  uint32_t id() const { return node_->id; }
  uint32_t depth() const { return node_->depth; }
  uint32_t node_count() const { return node_->node_count; }

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator!=(const Formula& o) const { return node_ != o.node_; }
  bool operator<(const Formula& o) const { return id() < o.id(); }

 private:
  explicit Formula(const Node* n) : node_(n) {}
  const Node* node_;
};

// Grammar (ASCII): atoms [a-z][a-z0-9_]* except the keyword `bot`; `bot` is
// falsum; `~f` sugars to `f -> bot`; `[]f` box; `<>f` diamond; `->` is
// right-associative with lowest precedence; unary operators bind tightest.
Formula parse_formula(std::string_view text);

// Canonical minimal-parenthesis rendering; round-trips through parse_formula.
std::string render(Formula f);

// Replaces every Diamond(b) with Implies(Box(Implies(b', Bottom)), Bottom).
Formula rewrite_diamond(Formula f);

// All distinct subformulas, children before parents, f itself last.
std::vector<Formula> subformulas(Formula f);

// Sorted, duplicate-free atom names occurring in f.
std::vector<std::string> atoms_of(Formula f);

struct AtomAlphabet {
  std::vector<std::string> atoms;  // canonical index order used everywhere

  explicit AtomAlphabet(std::vector<std::string> a);
  int index_of(std::string_view name) const;  // -1 if absent
  size_t size() const { return atoms.size(); }
  bool operator==(const AtomAlphabet&) const = default;
};

// Exhaustive, duplicate-free list of all formulas of AST depth <= max_depth
// over the alphabet, in a deterministic layer-by-layer order.
std::vector<Formula> enumerate_formulas(const AtomAlphabet& alphabet, int max_depth,
                                        bool allow_modal);

}  // namespace bes
