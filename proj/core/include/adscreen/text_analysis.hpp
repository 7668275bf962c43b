#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adscreen {

/// Lowercase word tokens; never empty, never containing whitespace.
struct TokenSequence {
  std::vector<std::string> tokens;

  [[nodiscard]] std::size_t size() const noexcept { return tokens.size(); }
  [[nodiscard]] bool empty() const noexcept { return tokens.empty(); }
  [[nodiscard]] auto begin() const noexcept { return tokens.begin(); }
  [[nodiscard]] auto end() const noexcept { return tokens.end(); }
  const std::string& operator[](std::size_t i) const noexcept { return tokens[i]; }

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

/// Splits on whitespace and punctuation and lowercases. Apostrophes (ASCII or
/// U+2019) survive only between two word characters, so "don't" stays whole.
/// Letters, digits and combining marks of any script are word characters.
TokenSequence tokenize(std::string_view utf8_text);

/// Space-joined tokens; tokenize(join_tokens(s)) == s.
std::string join_tokens(const TokenSequence& seq);

enum class PosTag : unsigned char { verb, noun, pronoun, adverb, adjective, other };

inline constexpr std::size_t kPosTagCount = 6;

std::string_view pos_tag_name(PosTag tag) noexcept;
std::optional<PosTag> parse_pos_tag(std::string_view name) noexcept;

struct TaggedToken {
  std::string token;
  PosTag tag = PosTag::other;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct TaggedSequence {
  std::vector<TaggedToken> pairs;

  [[nodiscard]] std::size_t size() const noexcept { return pairs.size(); }
  [[nodiscard]] bool empty() const noexcept { return pairs.empty(); }
  [[nodiscard]] TokenSequence tokens() const;

  friend bool operator==(const TaggedSequence&, const TaggedSequence&) = default;
};

struct SuffixRule {
  std::string suffix;
  PosTag tag = PosTag::other;
};

/// Word lookup table with ordered suffix fallbacks and a default tag.
class PosLexicon {
 public:
  PosLexicon(std::map<std::string, PosTag, std::less<>> entries,
             std::vector<SuffixRule> suffix_rules, PosTag default_tag = PosTag::noun);

  /// Lexicon hit, else first suffix rule whose suffix is a proper suffix of
  /// the word, else the default tag.
  [[nodiscard]] PosTag tag(std::string_view word) const;

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const std::vector<SuffixRule>& suffix_rules() const noexcept { return rules_; }
  [[nodiscard]] PosTag default_tag() const noexcept { return default_tag_; }

  /// Bundled ~5k-word lexicon with the standard suffix rules.
  static const PosLexicon& builtin();

  /// ly -> adverb; ing, ed, ize -> verb; ous, ful, ive, able -> adjective.
  static std::vector<SuffixRule> default_suffix_rules();

  /// Parses `word<TAB>tag` lines (`#` comments and blank lines ignored) and
  /// attaches the default suffix rules. Throws DataError naming the line.
  static PosLexicon parse(std::istream& in, std::string_view source_name);
  static PosLexicon load(const std::filesystem::path& path);

 private:
  std::map<std::string, PosTag, std::less<>> entries_;
  std::vector<SuffixRule> rules_;
  PosTag default_tag_;
};

TaggedSequence pos_tag(const TokenSequence& seq, const PosLexicon& lexicon);

/// Reads a pre-tagged document: one `token<TAB>tag` per line. Tokens are
/// lowercased; blank lines are skipped.
TaggedSequence parse_pretagged(std::istream& in, std::string_view source_name);
TaggedSequence load_pretagged(const std::filesystem::path& path);

}  // namespace adscreen
