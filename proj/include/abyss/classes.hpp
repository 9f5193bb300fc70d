#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "abyss/errors.hpp"

namespace abyss {

enum class ClassTag : std::uint8_t {
  Continuous,
  QuasiContinuous,
  Cliquish,
  SimplyContinuous,
  Usco,
  Lsco,
  BV,
  NormalisedBV,
  Regulated,
  Baire1,
  // f >= 0 and f vanishes at every irrational point. Not one of the classical
  // classes; it licenses the same rational collapse of "sup over a ball" that
  // quasi-continuity does, which is what Thomae-style functions need.
  RationalSupported,
};

inline constexpr ClassTag kAllTags[] = {
    ClassTag::Continuous, ClassTag::QuasiContinuous, ClassTag::Cliquish, ClassTag::SimplyContinuous,
    ClassTag::Usco,       ClassTag::Lsco,            ClassTag::BV,       ClassTag::NormalisedBV,
    ClassTag::Regulated,  ClassTag::Baire1,          ClassTag::RationalSupported,
};

inline std::string_view to_string(ClassTag t) {
  switch (t) {
    case ClassTag::Continuous: return "continuous";
    case ClassTag::QuasiContinuous: return "quasi-continuous";
    case ClassTag::Cliquish: return "cliquish";
    case ClassTag::SimplyContinuous: return "simply-continuous";
    case ClassTag::Usco: return "usco";
    case ClassTag::Lsco: return "lsco";
    case ClassTag::BV: return "BV";
    case ClassTag::NormalisedBV: return "normalised-BV";
    case ClassTag::Regulated: return "regulated";
    case ClassTag::Baire1: return "Baire-1";
    case ClassTag::RationalSupported: return "rational-supported";
  }
  return "?";
}

inline ClassTag parse_class_tag(std::string_view name) {
  for (ClassTag t : kAllTags)
    if (to_string(t) == name) return t;
  throw DomainError("unknown class tag '" + std::string(name) + "'");
}

/// A set of class tags, always kept closed under the implications between
/// the classes (continuous => quasi-continuous => simply continuous => cliquish,
/// usco/lsco => Baire-1, normalised-BV => BV => regulated => Baire-1, ...).
class ClassSet {
 public:
  ClassSet() = default;
  ClassSet(std::initializer_list<ClassTag> tags) {
    for (ClassTag t : tags) bits_ |= bit(t);
    close();
  }

  bool has(ClassTag t) const noexcept { return (bits_ & bit(t)) != 0; }
  bool any_of(std::initializer_list<ClassTag> tags) const noexcept {
    for (ClassTag t : tags)
      if (has(t)) return true;
    return false;
  }

  ClassSet with(ClassTag t) const {
    ClassSet out = *this;
    out.bits_ |= bit(t);
    out.close();
    return out;
  }
  /// Drops a tag without re-closing, so anything implying it stays absent too.
  ClassSet without(ClassTag t) const {
    ClassSet out = *this;
    out.bits_ &= static_cast<std::uint16_t>(~bit(t));
    return out;
  }

  friend ClassSet operator&(ClassSet a, ClassSet b) {
    ClassSet out;
    out.bits_ = a.bits_ & b.bits_;
    out.close();
    return out;
  }
  friend bool operator==(const ClassSet&, const ClassSet&) = default;

  /// Is every tag of this set also in `other`?
  bool subset_of(const ClassSet& other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (ClassTag t : kAllTags)
      if (has(t)) out.emplace_back(to_string(t));
    return out;
  }

 private:
  static constexpr std::uint16_t bit(ClassTag t) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(t)); }

  void close() {
    struct Rule {
      ClassTag from, to;
    };
    static constexpr Rule rules[] = {
        {ClassTag::Continuous, ClassTag::QuasiContinuous}, {ClassTag::Continuous, ClassTag::Usco},
        {ClassTag::Continuous, ClassTag::Lsco},            {ClassTag::Continuous, ClassTag::Regulated},
        {ClassTag::QuasiContinuous, ClassTag::SimplyContinuous},
        {ClassTag::SimplyContinuous, ClassTag::Cliquish},  {ClassTag::NormalisedBV, ClassTag::BV},
        {ClassTag::BV, ClassTag::Regulated},               {ClassTag::Regulated, ClassTag::Baire1},
        {ClassTag::Usco, ClassTag::Baire1},                {ClassTag::Lsco, ClassTag::Baire1},
        {ClassTag::Baire1, ClassTag::Cliquish},
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (auto r : rules)
        if (has(r.from) && !has(r.to)) {
          bits_ |= bit(r.to);
          changed = true;
        }
    }
  }

  std::uint16_t bits_ = 0;
};

}  // namespace abyss
