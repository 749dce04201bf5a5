#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace senticl {

/// One SentiWordNet 3.0 data line: a scored synset and its member terms.
struct SynsetRecord {
  char pos_tag = '\0';     // one of a, n, v, r
  std::string synset_id;   // 8-digit offset, kept verbatim
  double positivity = 0.0;
  double negativity = 0.0;
  std::vector<std::pair<std::string, int>> terms;  // (lemma, sense number)
};

/// Per-word scores averaged over every synset the word appears in.
/// objectivity == 1 - positivity - negativity by construction.
struct WordScore {
  double positivity = 0.0;
  double negativity = 0.0;
  double objectivity = 1.0;
};

class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  SentimentLexicon(std::unordered_map<std::string, WordScore> entries,
                   std::size_t record_count)
      : entries_(std::move(entries)), record_count_(record_count) {}

  /// Case-insensitive lookup. Absence is a value, never fabricated scores.
  std::optional<WordScore> lookup(std::string_view lemma) const;

  std::size_t size() const { return entries_.size(); }
  std::size_t record_count() const { return record_count_; }
  const std::unordered_map<std::string, WordScore>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, WordScore> entries_;
  std::size_t record_count_ = 0;
};

/// Parses SentiWordNet 3.0 data lines (tab-separated
/// `POS ID PosScore NegScore SynsetTerms Gloss`, `#` comments skipped).
/// Throws ParseError on malformed lines, DataError on empty input.
std::vector<SynsetRecord> parse_swn_records(std::istream& in);

/// Averages positivity/negativity/objectivity per lemma across all synsets
/// of all parts of speech containing it.
SentimentLexicon build_lexicon(const std::vector<SynsetRecord>& records);

SentimentLexicon parse_swn_file(std::istream& in);

/// Opens and parses a SentiWordNet file; DataError names the path on failure.
SentimentLexicon load_swn_file(const std::filesystem::path& path);

/// ASCII lowercasing; bytes outside A-Z pass through, so UTF-8 is preserved.
std::string to_lower(std::string_view s);

}  // namespace senticl
