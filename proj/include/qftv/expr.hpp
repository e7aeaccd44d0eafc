// Hash-consed Boolean expression DAG over the input variables b1..bm.
//
// Nodes are created through simplifying constructors, so structurally equal
// expressions share one id and trivial identities (x^x, x&0, x&x, ...) never
// materialize. Children always have smaller ids than their parents.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qftv/circuit.hpp"

namespace qftv {

using ExprId = std::uint32_t;

enum class Op : std::uint8_t { False, True, Var, Xor, And };

struct ExprNode {
  Op op;
  std::uint32_t lhs;  // variable index for Var
  std::uint32_t rhs;
};

/// Total assignment to b1..bm, addressed 1-based.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int m) : values_(static_cast<std::size_t>(m), 0) {}

  /// b1 is the most significant bit of `index`.
  static Assignment from_index(std::uint64_t index, int m);
  std::uint64_t to_index() const;

  int size() const noexcept { return static_cast<int>(values_.size()); }
  bool operator[](int var) const { return values_.at(static_cast<std::size_t>(var - 1)) != 0; }
  void set(int var, bool value) { values_.at(static_cast<std::size_t>(var - 1)) = value ? 1 : 0; }

  /// "b1=1 b2=0 ..."
  std::string to_string() const;
  bool operator==(const Assignment&) const = default;

 private:
  std::vector<std::uint8_t> values_;
};

/// Single-threaded; give each worker its own store.
class ExprStore {
 public:
  static constexpr ExprId kFalse = 0;
  static constexpr ExprId kTrue = 1;

  ExprStore();

  ExprId constant(bool value) const { return value ? kTrue : kFalse; }
  ExprId var(int index);
  ExprId mk_xor(ExprId a, ExprId b);
  ExprId mk_and(ExprId a, ExprId b);
  ExprId mk_not(ExprId a) { return mk_xor(a, kTrue); }
  ExprId mk_or(ExprId a, ExprId b) { return mk_xor(mk_xor(a, b), mk_and(a, b)); }

  const ExprNode& node(ExprId id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t bytes() const noexcept;

  bool is_const(ExprId id) const { return id == kFalse || id == kTrue; }

  bool eval(ExprId id, const Assignment& a) const;
  /// Evaluates many roots with one linear sweep over the DAG.
  std::vector<std::uint8_t> eval_all(const std::vector<ExprId>& roots, const Assignment& a) const;

  /// Largest variable index referenced below `id`, 0 if none.
  int max_var(ExprId id) const;

  std::string to_string(ExprId id) const;

 private:
  ExprId intern(Op op, std::uint32_t lhs, std::uint32_t rhs);

  std::vector<ExprNode> nodes_;
  std::unordered_map<std::uint64_t, ExprId> xor_table_;
  std::unordered_map<std::uint64_t, ExprId> and_table_;
  std::unordered_map<std::uint32_t, ExprId> var_table_;
};

}  // namespace qftv
