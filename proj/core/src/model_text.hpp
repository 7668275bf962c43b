#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>

#include "adscreen/csv.hpp"
#include "adscreen/error.hpp"
#include "adscreen/trained_model.hpp"

namespace adscreen::detail {

/// Whitespace-separated reader for the plain-text artifact formats.
/// Every failure is a DataError naming the source.
class TokenReader {
 public:
  TokenReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::string word() {
    std::string token;
    if (!(in_ >> token)) fail("unexpected end of input");
    return token;
  }

  void expect(std::string_view keyword) {
    const std::string token = word();
    if (token != keyword) fail("expected '" + std::string(keyword) + "', found '" + token + "'");
  }

  double real() {
    const std::string token = word();
    const auto v = parse_double(token);
    if (!v) fail("expected a number, found '" + token + "'");
    return *v;
  }

  std::int64_t integer() {
    const std::string token = word();
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      fail("expected an integer, found '" + token + "'");
    }
    return v;
  }

  std::uint64_t count() {
    const std::string token = word();
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      fail("expected a count, found '" + token + "'");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw DataError(source_ + ": " + message);
  }

 private:
  std::istream& in_;
  std::string source_;
};

void write_model_body(std::ostream& out, const TrainedModel& model);
TrainedModel read_model_body(TokenReader& in);

}  // namespace adscreen::detail
