// Algebraic normal form (Zhegalkin polynomials): a Boolean function as an XOR
// of AND-monomials. The representation is canonical, so two expressions are
// equivalent exactly when their polynomials compare equal.

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qftv/expr.hpp"

namespace qftv {

/// Sorted, duplicate-free variable indices. The empty monomial is 1.
using Monomial = std::vector<std::uint32_t>;

/// Thrown when a polynomial product would exceed the configured term budget.
class AnfOverflow : public Error {
 public:
  using Error::Error;
};

class AnfPoly {
 public:
  AnfPoly() = default;  // zero

  static AnfPoly zero() { return {}; }
  static AnfPoly one();
  static AnfPoly variable(std::uint32_t index);
  /// Builds from arbitrary monomials, applying x^x = 0 cancellation.
  static AnfPoly from_terms(std::vector<Monomial> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_constant() const noexcept { return !terms_.empty() && terms_.front().empty(); }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  AnfPoly operator^(const AnfPoly& other) const;
  /// Product with a cap on the number of intermediate monomials.
  AnfPoly times(const AnfPoly& other, std::size_t budget) const;

  bool eval(const Assignment& a) const;
  std::string to_string() const;

  bool operator==(const AnfPoly&) const = default;

 private:
  std::vector<Monomial> terms_;  // sorted by (degree, lexicographic)
};

inline constexpr std::size_t kDefaultAnfBudget = std::size_t{1} << 20;

/// Normalizes nodes of one ExprStore, memoizing every visited node. Distinct
/// normalizers share nothing, so concurrent use on distinct instances is safe.
class AnfNormalizer {
 public:
  explicit AnfNormalizer(const ExprStore& store, std::size_t budget = kDefaultAnfBudget)
      : store_(store), budget_(budget) {}

  const AnfPoly& normalize(ExprId id);

 private:
  const ExprStore& store_;
  std::size_t budget_;
  std::unordered_map<ExprId, AnfPoly> memo_;
};

/// One-shot convenience wrapper.
AnfPoly anf_normalize(const ExprStore& store, ExprId id, std::size_t budget = kDefaultAnfBudget);

}  // namespace qftv
