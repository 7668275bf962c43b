#include <doctest.h>

#include <sstream>

#include "support.hpp"

using namespace adscreen;
using support::toks;

namespace {

PosLexicon tiny_lexicon() {
  return PosLexicon({{"he", PosTag::pronoun}, {"runs", PosTag::verb}},
                    PosLexicon::default_suffix_rules(), PosTag::noun);
}

std::vector<PosTag> tags_of(const TaggedSequence& t) {
  std::vector<PosTag> out;
  for (const auto& p : t.pairs) out.push_back(p.tag);
  return out;
}

}  // namespace

TEST_SUITE("text_analysis") {

TEST_CASE("tokenize lowercases and strips punctuation") {
  CHECK(tokenize("The boy, the BOY!") == toks({"the", "boy", "the", "boy"}));
  CHECK(tokenize("").empty());
  CHECK(tokenize(" \t\n ").empty());
}

TEST_CASE("internal apostrophes stay inside the token") {
  CHECK(tokenize("don't stop") == toks({"don't", "stop"}));
  // A typographic apostrophe folds to the ASCII one so lexicon lookups agree.
  CHECK(tokenize("don\xE2\x80\x99t") == toks({"don't"}));
  CHECK(tokenize("'quoted' boys'") == toks({"quoted", "boys"}));
}

TEST_CASE("digits and non-ASCII letters are word characters") {
  CHECK(tokenize("Room 101, 2nd floor") == toks({"room", "101", "2nd", "floor"}));
  CHECK(tokenize("CAF\xC3\x89 na\xC3\xAFve") == toks({"caf\xC3\xA9", "na\xC3\xAFve"}));
}

TEST_CASE("tokenize is idempotent on its joined output") {
  const char* samples[] = {"The boy, the BOY!", "uh... well -- he's (maybe) up there?!",
                           "a  b\tc\nd", "It's 5 o'clock; don't"};
  for (const char* s : samples) {
    const TokenSequence once = tokenize(s);
    CHECK(tokenize(join_tokens(once)) == once);
    for (const auto& t : once) {
      CHECK_FALSE(t.empty());
      CHECK(t.find_first_of(" \t\n") == std::string::npos);
    }
  }
}

TEST_CASE("pos_tag uses lexicon hits, then suffix rules, then the default") {
  const PosLexicon lex = tiny_lexicon();
  const TaggedSequence t = pos_tag(toks({"he", "runs"}), lex);
  CHECK(t.pairs == std::vector<TaggedToken>{{"he", PosTag::pronoun}, {"runs", PosTag::verb}});
  CHECK(tags_of(pos_tag(toks({"quickly"}), lex)) == std::vector<PosTag>{PosTag::adverb});
  CHECK(tags_of(pos_tag(toks({"zorblax"}), lex)) == std::vector<PosTag>{PosTag::noun});
}

TEST_CASE("suffix rules apply in order to proper suffixes only") {
  const PosLexicon lex = tiny_lexicon();
  CHECK(lex.tag("walking") == PosTag::verb);
  CHECK(lex.tag("jumped") == PosTag::verb);
  CHECK(lex.tag("organize") == PosTag::verb);
  CHECK(lex.tag("famous") == PosTag::adjective);
  CHECK(lex.tag("hopeful") == PosTag::adjective);
  CHECK(lex.tag("active") == PosTag::adjective);
  CHECK(lex.tag("readable") == PosTag::adjective);
  CHECK(lex.tag("ly") == PosTag::noun);  // the whole word is not a proper suffix match

  const PosLexicon ordered({}, {{"ing", PosTag::adjective}, {"ng", PosTag::verb}}, PosTag::other);
  CHECK(ordered.tag("sing") == PosTag::adjective);
  CHECK(ordered.tag("long") == PosTag::verb);
  CHECK(ordered.tag("cat") == PosTag::other);
  CHECK_THROWS_AS(PosLexicon({}, {{"", PosTag::verb}}), PreconditionError);
}

TEST_CASE("tagging preserves length and is deterministic") {
  const TokenSequence seq = tokenize(
      "the boy is quickly reaching for the cookie jar while his mother dries the dishes");
  const TaggedSequence a = pos_tag(seq, PosLexicon::builtin());
  CHECK(a.size() == seq.size());
  CHECK(a.tokens() == seq);
  CHECK(pos_tag(seq, PosLexicon::builtin()) == a);
  CHECK(pos_tag(TokenSequence{}, PosLexicon::builtin()).empty());
}

TEST_CASE("builtin lexicon covers common words") {
  const PosLexicon& lex = PosLexicon::builtin();
  CHECK(lex.size() > 4000);
  CHECK(lex.tag("he") == PosTag::pronoun);
  CHECK(lex.tag("she") == PosTag::pronoun);
  CHECK(lex.tag("they") == PosTag::pronoun);
  CHECK(lex.tag("boy") == PosTag::noun);
  CHECK(lex.tag("the") == PosTag::other);
  CHECK(lex.default_tag() == PosTag::noun);
}

TEST_CASE("lexicon parsing") {
  std::istringstream ok("# comment\n\nrun\tverb\nblue\tadjective\n");
  const PosLexicon lex = PosLexicon::parse(ok, "mem");
  CHECK(lex.size() == 2);
  CHECK(lex.tag("run") == PosTag::verb);
  CHECK(lex.suffix_rules().size() == PosLexicon::default_suffix_rules().size());

  std::istringstream bad("run\tverb\nblue\tcolour\n");
  try {
    (void)PosLexicon::parse(bad, "mem");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
  }
}

TEST_CASE("pre-tagged documents") {
  std::istringstream in("He\tpronoun\n\nruns\tverb\nfast\tadverb\n");
  const TaggedSequence t = parse_pretagged(in, "doc");
  CHECK(t.pairs == std::vector<TaggedToken>{
                       {"he", PosTag::pronoun}, {"runs", PosTag::verb}, {"fast", PosTag::adverb}});
  std::istringstream bad("runs verb\n");
  CHECK_THROWS_AS((void)parse_pretagged(bad, "doc"), DataError);
}

TEST_CASE("tag names round-trip") {
  for (std::size_t i = 0; i < kPosTagCount; ++i) {
    const auto tag = static_cast<PosTag>(i);
    CHECK(parse_pos_tag(pos_tag_name(tag)) == tag);
  }
  CHECK_FALSE(parse_pos_tag("determiner").has_value());
}

}  // TEST_SUITE
