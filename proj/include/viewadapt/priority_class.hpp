#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace viewadapt {

// Pair of (first-level, second-level) priority levels. The digit is 1 for the
// low level and 2 for the high level, so C21 means "participant in the main
// FOV, camera in the wide coverage only".
enum class PriorityClass { C11, C12, C21, C22 };

inline constexpr std::array<PriorityClass, 4> kAllClasses = {
    PriorityClass::C11, PriorityClass::C12, PriorityClass::C21, PriorityClass::C22};

// low = 0, medium = 1, high = 2
constexpr int class_rank(PriorityClass c) {
  switch (c) {
    case PriorityClass::C11: return 0;
    case PriorityClass::C12:
    case PriorityClass::C21: return 1;
    case PriorityClass::C22: return 2;
  }
  return 0;
}

constexpr std::size_t class_index(PriorityClass c) { return static_cast<std::size_t>(c); }

constexpr std::string_view to_string(PriorityClass c) {
  switch (c) {
    case PriorityClass::C11: return "C11";
    case PriorityClass::C12: return "C12";
    case PriorityClass::C21: return "C21";
    case PriorityClass::C22: return "C22";
  }
  return "?";
}

inline std::optional<PriorityClass> parse_priority_class(std::string_view s) {
  for (PriorityClass c : kAllClasses) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

}  // namespace viewadapt
