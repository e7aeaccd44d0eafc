#include "qftv/anf.hpp"

#include <algorithm>

namespace qftv {

namespace {

bool monomial_less(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Monomial monomial_union(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

AnfPoly AnfPoly::one() {
  AnfPoly p;
  p.terms_.emplace_back();
  return p;
}

AnfPoly AnfPoly::variable(std::uint32_t index) {
  AnfPoly p;
  p.terms_.push_back({index});
  return p;
}

AnfPoly AnfPoly::from_terms(std::vector<Monomial> terms) {
  for (auto& t : terms) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  std::sort(terms.begin(), terms.end(), monomial_less);
  AnfPoly p;
  p.terms_.reserve(terms.size());
  for (std::size_t k = 0; k < terms.size();) {
    std::size_t run = k + 1;
    while (run < terms.size() && terms[run] == terms[k]) ++run;
    if ((run - k) % 2 == 1) p.terms_.push_back(std::move(terms[k]));
    k = run;
  }
  return p;
}

AnfPoly AnfPoly::operator^(const AnfPoly& other) const {
  AnfPoly out;
  out.terms_.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (*a == *b) {
      ++a;
      ++b;
    } else if (monomial_less(*a, *b)) {
      out.terms_.push_back(*a++);
    } else {
      out.terms_.push_back(*b++);
    }
  }
  out.terms_.insert(out.terms_.end(), a, terms_.end());
  out.terms_.insert(out.terms_.end(), b, other.terms_.end());
  return out;
}

AnfPoly AnfPoly::times(const AnfPoly& other, std::size_t budget) const {
  if (is_zero() || other.is_zero()) return {};
  if (terms_.size() > budget / other.terms_.size()) {
    throw AnfOverflow("ANF product of " + std::to_string(terms_.size()) + " x " +
                      std::to_string(other.terms_.size()) + " terms exceeds budget " +
                      std::to_string(budget));
  }
  std::vector<Monomial> product;
  product.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) product.push_back(monomial_union(a, b));
  }
  return from_terms(std::move(product));
}

bool AnfPoly::eval(const Assignment& a) const {
  bool acc = false;
  for (const auto& t : terms_) {
    bool term = true;
    for (auto v : t) term = term && a[static_cast<int>(v)];
    acc ^= term;
  }
  return acc;
}

std::string AnfPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " ^ ";
    if (t.empty()) {
      s += "1";
      continue;
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += "*";
      s += "b" + std::to_string(t[k]);
    }
  }
  return s;
}

const AnfPoly& AnfNormalizer::normalize(ExprId root) {
  if (auto it = memo_.find(root); it != memo_.end()) return it->second;
  // Post-order over the DAG without recursion; chains can be long.
  std::vector<std::pair<ExprId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (memo_.count(id)) continue;
    const ExprNode& n = store_.node(id);
    switch (n.op) {
      case Op::False: memo_.emplace(id, AnfPoly::zero()); continue;
      case Op::True: memo_.emplace(id, AnfPoly::one()); continue;
      case Op::Var: memo_.emplace(id, AnfPoly::variable(n.lhs)); continue;
      case Op::Xor:
      case Op::And: break;
    }
    if (!expanded) {
      stack.push_back({id, true});
      stack.push_back({n.lhs, false});
      stack.push_back({n.rhs, false});
      continue;
    }
    const AnfPoly& l = memo_.at(n.lhs);
    const AnfPoly& r = memo_.at(n.rhs);
    memo_.emplace(id, n.op == Op::Xor ? (l ^ r) : l.times(r, budget_));
  }
  return memo_.at(root);
}

AnfPoly anf_normalize(const ExprStore& store, ExprId id, std::size_t budget) {
  AnfNormalizer norm(store, budget);
  return norm.normalize(id);
}

}  // namespace qftv
