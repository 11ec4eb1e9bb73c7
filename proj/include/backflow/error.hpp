#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace backflow {

enum class Errc {
  invalid_argument,
  invalid_case,
  node_density_too_small,
  node_singular,
  scale_not_positive,
  no_sign_change,
  mode_count_out_of_range,
  index_out_of_range,
  proportionality_broken,
};

[[nodiscard]] constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::invalid_case: return "InvalidCase";
    case Errc::node_density_too_small: return "NodeDensityTooSmall";
    case Errc::node_singular: return "NodeSingular";
    case Errc::scale_not_positive: return "ScaleNotPositive";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::mode_count_out_of_range: return "ModeCountOutOfRange";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::proportionality_broken: return "ProportionalityBroken";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace backflow
