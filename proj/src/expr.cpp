#include "qftv/expr.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace qftv {

Assignment Assignment::from_index(std::uint64_t index, int m) {
  Assignment a(m);
  for (int v = 1; v <= m; ++v) a.set(v, ((index >> (m - v)) & 1U) != 0);
  return a;
}

std::uint64_t Assignment::to_index() const {
  std::uint64_t index = 0;
  for (std::uint8_t bit : values_) index = (index << 1) | bit;
  return index;
}

std::string Assignment::to_string() const {
  std::string s;
  for (int v = 1; v <= size(); ++v) {
    if (v > 1) s += ' ';
    s += "b" + std::to_string(v) + "=" + ((*this)[v] ? "1" : "0");
  }
  return s;
}

ExprStore::ExprStore() {
  nodes_.push_back({Op::False, 0, 0});
  nodes_.push_back({Op::True, 0, 0});
}

ExprId ExprStore::var(int index) {
  if (index < 1) throw Error("variable index must be >= 1");
  const auto key = static_cast<std::uint32_t>(index);
  if (auto it = var_table_.find(key); it != var_table_.end()) return it->second;
  const auto id = static_cast<ExprId>(nodes_.size());
  nodes_.push_back({Op::Var, key, 0});
  var_table_.emplace(key, id);
  return id;
}

ExprId ExprStore::intern(Op op, std::uint32_t lhs, std::uint32_t rhs) {
  auto& table = op == Op::Xor ? xor_table_ : and_table_;
  const std::uint64_t key = (std::uint64_t{lhs} << 32) | rhs;
  if (auto it = table.find(key); it != table.end()) return it->second;
  const auto id = static_cast<ExprId>(nodes_.size());
  nodes_.push_back({op, lhs, rhs});
  table.emplace(key, id);
  return id;
}

ExprId ExprStore::mk_xor(ExprId a, ExprId b) {
  if (a == b) return kFalse;
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  // x ^ (x ^ y) = y
  if (nodes_[b].op == Op::Xor) {
    if (nodes_[b].lhs == a) return nodes_[b].rhs;
    if (nodes_[b].rhs == a) return nodes_[b].lhs;
  }
  if (nodes_[a].op == Op::Xor) {
    if (nodes_[a].lhs == b) return nodes_[a].rhs;
    if (nodes_[a].rhs == b) return nodes_[a].lhs;
  }
  if (a > b) std::swap(a, b);
  return intern(Op::Xor, a, b);
}

ExprId ExprStore::mk_and(ExprId a, ExprId b) {
  if (a == b) return a;
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  if (a > b) std::swap(a, b);
  return intern(Op::And, a, b);
}

std::size_t ExprStore::bytes() const noexcept {
  // Node vector plus a rough per-entry cost for the unique tables.
  return nodes_.capacity() * sizeof(ExprNode) +
         (xor_table_.size() + and_table_.size() + var_table_.size()) * 32;
}

std::vector<std::uint8_t> ExprStore::eval_all(const std::vector<ExprId>& roots,
                                              const Assignment& a) const {
  ExprId top = 0;
  for (ExprId r : roots) top = std::max(top, r);
  std::vector<std::uint8_t> value(static_cast<std::size_t>(top) + 1, 0);
  std::vector<std::uint8_t> live(value.size(), 0);
  std::vector<ExprId> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    const ExprId cur = stack.back();
    stack.pop_back();
    if (live[cur]) continue;
    live[cur] = 1;
    const ExprNode& n = nodes_.at(cur);
    if (n.op == Op::Xor || n.op == Op::And) {
      stack.push_back(n.lhs);
      stack.push_back(n.rhs);
    }
  }
  for (ExprId id = 0; id <= top; ++id) {
    if (!live[id]) continue;
    const ExprNode& n = nodes_[id];
    switch (n.op) {
      case Op::False: value[id] = 0; break;
      case Op::True: value[id] = 1; break;
      case Op::Var:
        if (static_cast<int>(n.lhs) > a.size()) {
          throw Error("variable b" + std::to_string(n.lhs) + " is not assigned");
        }
        value[id] = a[static_cast<int>(n.lhs)] ? 1 : 0;
        break;
      case Op::Xor: value[id] = value[n.lhs] ^ value[n.rhs]; break;
      case Op::And: value[id] = value[n.lhs] & value[n.rhs]; break;
    }
  }
  std::vector<std::uint8_t> out;
  out.reserve(roots.size());
  for (ExprId r : roots) out.push_back(value[r]);
  return out;
}

bool ExprStore::eval(ExprId id, const Assignment& a) const { return eval_all({id}, a)[0] != 0; }

int ExprStore::max_var(ExprId id) const {
  int best = 0;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(id) + 1, 0);
  std::vector<ExprId> stack{id};
  while (!stack.empty()) {
    const ExprId cur = stack.back();
    stack.pop_back();
    if (seen[cur]) continue;
    seen[cur] = 1;
    const ExprNode& n = nodes_[cur];
    if (n.op == Op::Var) best = std::max(best, static_cast<int>(n.lhs));
    if (n.op == Op::Xor || n.op == Op::And) {
      stack.push_back(n.lhs);
      stack.push_back(n.rhs);
    }
  }
  return best;
}

std::string ExprStore::to_string(ExprId id) const {
  const ExprNode& n = nodes_.at(id);
  switch (n.op) {
    case Op::False: return "0";
    case Op::True: return "1";
    case Op::Var: return "b" + std::to_string(n.lhs);
    case Op::Xor: return "(" + to_string(n.lhs) + " ^ " + to_string(n.rhs) + ")";
    case Op::And: return "(" + to_string(n.lhs) + " & " + to_string(n.rhs) + ")";
  }
  return "?";
}

}  // namespace qftv
