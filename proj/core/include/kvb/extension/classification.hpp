#pragma once

#include <string_view>

namespace kvb {

/// Whether an extension keeps the Friedrichs lower bound. The Friedrichs
/// extension itself is reported separately.
enum class Classification { Top, NotTop, Friedrichs };

constexpr std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Top: return "Top";
    case Classification::NotTop: return "NotTop";
    case Classification::Friedrichs: return "Friedrichs";
  }
  return "?";
}

/// Extension label on a one-dimensional family: a finite coupling, or the
/// Friedrichs extension (coupling = ∞).
class Coupling {
 public:
  static constexpr Coupling friedrichs() noexcept { return Coupling(); }
  static constexpr Coupling finite(double value) noexcept { return Coupling(value); }

  constexpr bool is_friedrichs() const noexcept { return friedrichs_; }
  constexpr double value() const noexcept { return value_; }

 private:
  constexpr Coupling() = default;
  constexpr explicit Coupling(double v) : friedrichs_(false), value_(v) {}

  bool friedrichs_ = true;
  double value_ = 0.0;
};

}  // namespace kvb
