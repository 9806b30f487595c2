#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtpasp/ast.hpp"

namespace dtpasp {

using AtomId = int;

struct GroundLiteral {
  AtomId atom = -1;
  bool positive = true;
  bool operator==(const GroundLiteral&) const = default;
};

struct GroundAggregate {
  struct Element {
    std::string tuple;  // canonical term-tuple key, distinct tuples are counted
    std::vector<GroundLiteral> condition;
    bool operator==(const Element&) const = default;
  };
  std::vector<Element> elements;
  Comparator comparator = Comparator::Eq;
  std::int64_t guard = 0;
  bool operator==(const GroundAggregate&) const = default;
};

struct GroundBodyElement {
  enum class Kind { Literal, Aggregate };
  Kind kind = Kind::Literal;
  GroundLiteral literal;
  GroundAggregate aggregate;
  bool operator==(const GroundBodyElement&) const = default;
};

struct GroundRule {
  std::vector<AtomId> head;  // empty for constraints
  std::vector<GroundBodyElement> body;
  bool has_aggregate() const {
    for (const auto& b : body)
      if (b.kind == GroundBodyElement::Kind::Aggregate) return true;
    return false;
  }
};

// Variable-free program over an indexed atom universe. Choice rules have
// already been translated into pairs of normal rules with a fresh
// auxiliary atom (flagged in `aux`).
struct GroundProgram {
  std::vector<Atom> atoms;
  std::unordered_map<std::string, AtomId> atom_index;
  std::vector<bool> aux;  // per atom: choice-translation auxiliary

  std::vector<GroundRule> rules;
  std::vector<std::pair<AtomId, double>> prob_facts;
  std::vector<AtomId> decisions;
  std::vector<std::pair<AtomId, double>> utilities;

  AtomId find_atom(const std::string& printed) const {
    auto it = atom_index.find(printed);
    return it == atom_index.end() ? -1 : it->second;
  }
  std::size_t atom_count() const { return atoms.size(); }
};

// Grounds a program: global-then-local variable substitution over the
// Herbrand universe, choice-rule translation, and pruning of atoms that
// no rule or fact can derive.
GroundProgram ground(const Program& p);

}  // namespace dtpasp
