#pragma once

#include <string>
#include <string_view>

namespace adscreen::detail {

/// Strict UTF-8 validation (no overlongs, surrogates, or code points above U+10FFFF).
bool is_valid_utf8(std::string_view bytes) noexcept;

/// Unicode NFC normalisation of valid UTF-8 text.
std::string to_nfc(std::string_view utf8);

}  // namespace adscreen::detail
