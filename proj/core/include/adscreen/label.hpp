#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace adscreen {

/// Two-class scheme: cognitively normal control vs Alzheimer's diagnosis.
/// `ad` is the positive class for headline metrics.
enum class Label : unsigned char { cn = 0, ad = 1 };

inline constexpr std::string_view label_name(Label label) noexcept {
  return label == Label::ad ? "ad" : "cn";
}

/// Case-insensitive parse of "ad" / "cn"; nullopt for anything else.
std::optional<Label> parse_label(std::string_view token);

/// Counts indexed by static_cast<size_t>(Label).
using ClassCounts = std::array<std::size_t, 2>;

ClassCounts count_classes(std::span<const Label> labels);

}  // namespace adscreen
