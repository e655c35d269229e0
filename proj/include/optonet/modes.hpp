#pragma once

#include <array>
#include <string>
#include <string_view>

#include "optonet/errors.hpp"

namespace optonet {

/// The four bosonic modes of the network. Enumerator order is the quadrature
/// ordering of the fluctuation vector: (X_b1, Y_b1, X_b2, Y_b2, X_as, Y_as, X_a, Y_a).
enum class Mode { b1, b2, as, a };

inline constexpr std::array<Mode, 4> kAllModes{Mode::b1, Mode::b2, Mode::as, Mode::a};

inline constexpr std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::b1: return "b1";
    case Mode::b2: return "b2";
    case Mode::as: return "as";
    case Mode::a: return "a";
  }
  return "?";
}

inline Mode parse_mode(std::string_view name) {
  for (Mode m : kAllModes)
    if (mode_name(m) == name) return m;
  throw ContractError("unknown mode name '" + std::string(name) + "' (expected b1, b2, as or a)");
}

/// Quadrature layout of a drift/covariance matrix. With the auxiliary cavity
/// masked out the (X_as, Y_as) block is deleted and the layout is (b1, b2, a).
class ModeOrdering {
 public:
  constexpr ModeOrdering() = default;
  constexpr explicit ModeOrdering(bool aux_present) : aux_present_(aux_present) {}

  constexpr bool aux_present() const { return aux_present_; }
  constexpr int mode_count() const { return aux_present_ ? 4 : 3; }
  constexpr int dimension() const { return 2 * mode_count(); }

  constexpr bool contains(Mode m) const { return aux_present_ || m != Mode::as; }

  /// Row/column index of the X quadrature of `m`; Y sits at x_index(m) + 1.
  int x_index(Mode m) const {
    if (!contains(m)) throw ContractError("mode 'as' is not present in the three-mode system");
    int slot = static_cast<int>(m);
    if (!aux_present_ && m == Mode::a) slot = 2;
    return 2 * slot;
  }
  int y_index(Mode m) const { return x_index(m) + 1; }

  friend constexpr bool operator==(ModeOrdering, ModeOrdering) = default;

 private:
  bool aux_present_ = true;
};

}  // namespace optonet
