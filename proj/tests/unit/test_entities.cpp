#include <gtest/gtest.h>

#include "repetext/corpus.hpp"
#include "repetext/entities.hpp"
#include "repetext/error.hpp"
#include "repetext/repeats.hpp"

using namespace repetext;

namespace {

const char* kKooning = R"([{"canonical": "William de Kooning", "aliases": ["de Kooning"], "category": "person"}])";

}  // namespace

TEST(Gazetteer, AliasesShareOneId) {
  const auto g = parse_gazetteer(kKooning);
  ASSERT_EQ(g.entities().size(), 1u);
  EXPECT_EQ(g.alias_index().at({"de", "Kooning"}), 0u);
  EXPECT_EQ(g.alias_index().at({"William", "de", "Kooning"}), 0u);
  EXPECT_EQ(g.longest_alias(), 3u);
}

TEST(Gazetteer, SharedAliasCollides) {
  const char* doc = R"([{"canonical": "Paris", "aliases": []}, {"canonical": "Paris of Troy", "aliases": ["Paris"]}])";
  try {
    parse_gazetteer(doc);
    FAIL() << "expected CollisionError";
  } catch (const CollisionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("Paris of Troy"), std::string::npos);
  }
}

TEST(Gazetteer, EmptyAndMalformed) {
  EXPECT_TRUE(parse_gazetteer("[]").entities().empty());
  EXPECT_THROW(parse_gazetteer(R"([{"canonical": "X", "aliases": [""]}])"), FormatError);
  EXPECT_THROW(parse_gazetteer(R"([{"canonical": "X", "aliases": [" , "]}])"), FormatError);
  EXPECT_THROW(parse_gazetteer("{not json"), FormatError);
  EXPECT_THROW(parse_gazetteer(R"([{"aliases": []}])"), FormatError);
}

TEST(Mentions, LongestMatchWins) {
  const auto corpus = load_corpus("de Kooning met William de Kooning");
  const auto mentions = find_mentions(corpus, parse_gazetteer(kKooning));
  ASSERT_EQ(mentions.size(), 2u);
  EXPECT_EQ(mentions[0].entity_id, mentions[1].entity_id);
  EXPECT_EQ(mentions[0].token_span, (TokenSpan{0, 2}));
  EXPECT_EQ(mentions[1].token_span, (TokenSpan{3, 6}));
}

TEST(Mentions, EmptyGazetteerFindsNothing) {
  EXPECT_TRUE(find_mentions(load_corpus("Anything at all"), parse_gazetteer("[]")).empty());
}

TEST(Mentions, CaseInsensitiveObjectForm) {
  const auto g = parse_gazetteer(R"({"case_sensitive": false, "entities": [{"canonical": "La Mancha"}]})");
  const auto mentions = find_mentions(load_corpus("off to la mancha and LA MANCHA"), g);
  EXPECT_EQ(mentions.size(), 2u);
}

TEST(Mentions, Deterministic) {
  const auto corpus = load_corpus("de Kooning.\n\nWilliam de Kooning, de Kooning");
  const auto g = parse_gazetteer(kKooning);
  EXPECT_EQ(find_mentions(corpus, g), find_mentions(corpus, g));
}

TEST(Candidates, MultiWordName) {
  const auto candidates = candidate_entities(load_corpus("Gaetano Donizetti being still another person"));
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0], (Candidate{{"Gaetano", "Donizetti"}, 1}));
}

TEST(Candidates, SentenceInitialSinglesExcluded) {
  EXPECT_TRUE(candidate_entities(load_corpus("The dog. The cat.")).empty());
}

TEST(Candidates, ConnectorJoinsRun) {
  const auto candidates = candidate_entities(load_corpus("Alexander the Great spoke"));
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0].text(), "Alexander the Great");
}

TEST(Candidates, MidSentenceSingleCountsAndTrailingConnectorDropped) {
  const auto candidates = candidate_entities(load_corpus("we saw Rome of old. we saw Rome again"));
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0], (Candidate{{"Rome"}, 2}));
}

TEST(RepeatEntitiesTest, OnlyRepeatBearingParagraphs) {
  const auto corpus = load_corpus("de Kooning here\n\nthe same old words\n\nthe same old words");
  const auto mentions = find_mentions(corpus, parse_gazetteer(kKooning));
  const auto set = extract_repeats(corpus);
  auto result = entities_in_repeats(mentions, set, 3);
  EXPECT_TRUE(result.entities.empty());
  EXPECT_TRUE(result.paragraphs.empty());

  const auto corpus2 = load_corpus("de Kooning and the same old words\n\nthe same old words");
  const auto mentions2 = find_mentions(corpus2, parse_gazetteer(kKooning));
  result = entities_in_repeats(mentions2, extract_repeats(corpus2), 3);
  EXPECT_EQ(result.entities, (std::set<EntityId>{0}));
  EXPECT_EQ(result.paragraphs, (std::set<std::size_t>{0}));
  EXPECT_TRUE(mentions_in_fragments(mentions2, extract_repeats(corpus2), 3).empty());
}
