#include "adscreen/text_analysis.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <array>
#include <fstream>
#include <istream>
#include <sstream>

#include "adscreen/csv.hpp"
#include "adscreen/error.hpp"

namespace adscreen {

namespace detail {
extern const std::string_view kDefaultLexiconText;
}

namespace {

constexpr std::array<std::string_view, kPosTagCount> kTagNames = {
    "verb", "noun", "pronoun", "adverb", "adjective", "other"};

bool is_word_char(UChar32 cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  if (u_hasBinaryProperty(cp, UCHAR_ALPHABETIC) || u_isdigit(cp)) return true;
  const auto type = static_cast<UCharCategory>(u_charType(cp));
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

bool is_apostrophe(UChar32 cp) { return cp == 0x27 || cp == 0x2019; }

void append_utf8(std::string& out, UChar32 cp) {
  std::array<char, U8_MAX_LENGTH> buf{};
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf.data(), len, U8_MAX_LENGTH, cp, error);
  if (!error) out.append(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace

TokenSequence tokenize(std::string_view text) {
  // Decode once so apostrophes can look ahead one code point.
  std::vector<UChar32> cps;
  cps.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < length;) {
    UChar32 cp = 0;
    U8_NEXT(s, i, length, cp);
    cps.push_back(cp < 0 ? 0xFFFD : cp);
  }

  TokenSequence seq;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) seq.tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const UChar32 cp = cps[i];
    if (is_word_char(cp)) {
      append_utf8(current, u_tolower(cp));
    } else if (is_apostrophe(cp) && !current.empty() && i + 1 < cps.size() &&
               is_word_char(cps[i + 1])) {
      current.push_back('\'');
    } else {
      flush();
    }
  }
  flush();
  return seq;
}

std::string join_tokens(const TokenSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(' ');
    out += seq[i];
  }
  return out;
}

std::string_view pos_tag_name(PosTag tag) noexcept { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<PosTag> parse_pos_tag(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

TokenSequence TaggedSequence::tokens() const {
  TokenSequence seq;
  seq.tokens.reserve(pairs.size());
  for (const auto& p : pairs) seq.tokens.push_back(p.token);
  return seq;
}

PosLexicon::PosLexicon(std::map<std::string, PosTag, std::less<>> entries,
                       std::vector<SuffixRule> suffix_rules, PosTag default_tag)
    : entries_(std::move(entries)), rules_(std::move(suffix_rules)), default_tag_(default_tag) {
  for (const auto& rule : rules_) {
    if (rule.suffix.empty()) throw PreconditionError("suffix rules must be non-empty");
  }
}

PosTag PosLexicon::tag(std::string_view word) const {
  if (const auto it = entries_.find(word); it != entries_.end()) return it->second;
  for (const auto& rule : rules_) {
    if (word.size() > rule.suffix.size() && word.ends_with(rule.suffix)) return rule.tag;
  }
  return default_tag_;
}

std::vector<SuffixRule> PosLexicon::default_suffix_rules() {
  return {{"ly", PosTag::adverb},     {"ing", PosTag::verb},       {"ed", PosTag::verb},
          {"ize", PosTag::verb},      {"ous", PosTag::adjective},  {"ful", PosTag::adjective},
          {"ive", PosTag::adjective}, {"able", PosTag::adjective}};
}

PosLexicon PosLexicon::parse(std::istream& in, std::string_view source_name) {
  std::map<std::string, PosTag, std::less<>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_fields(view, '\t');
    const auto tag = fields.size() == 2 ? parse_pos_tag(fields[1]) : std::nullopt;
    if (!tag || fields[0].empty()) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                      ": expected 'word<TAB>tag' with tag in verb|noun|pronoun|adverb|adjective|other");
    }
    entries[fields[0]] = *tag;
  }
  return PosLexicon(std::move(entries), default_suffix_rules(), PosTag::noun);
}

PosLexicon PosLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return parse(in, path.string());
}

const PosLexicon& PosLexicon::builtin() {
  static const PosLexicon lexicon = [] {
    std::istringstream in{std::string(detail::kDefaultLexiconText)};
    return parse(in, "<builtin lexicon>");
  }();
  return lexicon;
}

TaggedSequence pos_tag(const TokenSequence& seq, const PosLexicon& lexicon) {
  TaggedSequence out;
  out.pairs.reserve(seq.size());
  for (const auto& token : seq) out.pairs.push_back({token, lexicon.tag(token)});
  return out;
}

TaggedSequence parse_pretagged(std::istream& in, std::string_view source_name) {
  TaggedSequence out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line, '\t');
    const auto tag = fields.size() == 2 ? parse_pos_tag(fields[1]) : std::nullopt;
    const TokenSequence word = fields.empty() ? TokenSequence{} : tokenize(fields[0]);
    if (!tag || word.size() != 1) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                      ": expected a single word, a TAB, and a known tag");
    }
    out.pairs.push_back({word[0], *tag});
  }
  return out;
}

TaggedSequence load_pretagged(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open pre-tagged file " + path.string());
  return parse_pretagged(in, path.string());
}

}  // namespace adscreen
