#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "abyss/oracle.hpp"

namespace abyss {

inline Surd eps(std::size_t k) { return Surd(pow2(-static_cast<long>(k))); }

/// Preconditions of algorithms that are not a single collapsed query.
struct PreconditionRule {
  std::string id;
  std::string anchor;
};

inline const std::vector<PreconditionRule>& precondition_rules() {
  static const std::vector<PreconditionRule> rules = {
      {"cousin-rational-prefix",
       "for quasi-continuous or lsco psi the balls centred at rationals already cover [0,1]; for cliquish or usco psi "
       "they can have total length below 1"},
      {"regulated-one-sided-limits", "one-sided limits of a regulated function are limits along rationals"},
      {"nbv-partition-sup",
       "for normalised BV the variation is a supremum over rational partitions; a removable discontinuity breaks "
       "this"},
  };
  return rules;
}

/// The anchor text of a collapse rule or precondition rule.
inline std::string rule_anchor(const std::string& id) {
  for (auto& r : collapse_rules())
    if (r.id == id) return r.anchor;
  for (auto& r : precondition_rules())
    if (r.id == id) return r.anchor;
  return {};
}

/// Refuses unless f carries one of the listed tags.
inline void require_class(const SymbolicFn& f, std::initializer_list<ClassTag> tags, const std::string& needed,
                          const std::string& rule, const std::string& operation) {
  if (!f.tags().any_of(tags))
    throw RefusedQuery(needed, rule,
                       operation + " refused for " + f.name() + ": requires " + needed + " (rule " + rule + ": " +
                           rule_anchor(rule) + ")");
}

/// A rational lower bound for a positive value, positive itself.
inline Rational positive_lower(const Surd& v) {
  if (v.sign() <= 0) throw DomainError("expected a positive value, got " + v.str());
  for (unsigned bits = 8;; bits += 8) {
    Rational r = v.enclose(bits).first;
    if (r > 0) return r;
  }
}

/// The width-2^-k interval centred at `mid`.
inline DyadicInterval centred_interval(const Rational& mid, std::size_t k) {
  Rational half = pow2(-static_cast<long>(k) - 1);
  return {mid - half, mid + half};
}

inline std::string describe(const DyadicInterval& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }

}  // namespace abyss
