#include "senticl/swn_lexicon.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "senticl/errors.hpp"

namespace senticl {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_score(std::string_view field, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("unparsable score '" + std::string(field) + "'", line);
  if (value < 0.0 || value > 1.0)
    throw ParseError("score outside [0,1]", line);
  return value;
}

bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::vector<SynsetRecord> parse_swn_records(std::istream& in) {
  std::vector<SynsetRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || blank(line)) continue;

    auto fields = split(line, '\t');
    // Glosses in some distributions contain tabs; everything from the sixth
    // column on is gloss and needs no further splitting.
    if (fields.size() < 6)
      throw ParseError("expected 6 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       lineno);

    SynsetRecord rec;
    if (fields[0].size() != 1 ||
        std::string_view("anvr").find(fields[0][0]) == std::string_view::npos)
      throw ParseError("bad part-of-speech tag '" + std::string(fields[0]) + "'",
                       lineno);
    rec.pos_tag = fields[0][0];
    rec.synset_id = std::string(fields[1]);
    rec.positivity = parse_score(fields[2], lineno);
    rec.negativity = parse_score(fields[3], lineno);
    if (rec.positivity + rec.negativity > 1.0)
      throw ParseError("scores sum exceeds 1", lineno);

    for (std::string_view term : split(fields[4], ' ')) {
      if (term.empty()) continue;
      std::size_t hash = term.rfind('#');
      if (hash == std::string_view::npos || hash == 0)
        throw ParseError("malformed synset term '" + std::string(term) + "'",
                         lineno);
      int sense = 0;
      std::string_view num = term.substr(hash + 1);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), sense);
      if (ec != std::errc() || ptr != num.data() + num.size())
        throw ParseError("malformed sense number in '" + std::string(term) + "'",
                         lineno);
      rec.terms.emplace_back(to_lower(term.substr(0, hash)), sense);
    }
    if (rec.terms.empty())
      throw ParseError("synset has no terms", lineno);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw DataError("empty SentiWordNet input");
  return records;
}

SentimentLexicon build_lexicon(const std::vector<SynsetRecord>& records) {
  struct Acc {
    double pos = 0.0, neg = 0.0;
    std::size_t n = 0;
  };
  std::unordered_map<std::string, Acc> acc;
  for (const SynsetRecord& rec : records) {
    for (const auto& [lemma, sense] : rec.terms) {
      (void)sense;  // sense numbers carry no weight; every synset counts once
      Acc& a = acc[lemma];
      a.pos += rec.positivity;
      a.neg += rec.negativity;
      a.n += 1;
    }
  }
  std::unordered_map<std::string, WordScore> entries;
  entries.reserve(acc.size());
  for (const auto& [lemma, a] : acc) {
    WordScore ws;
    ws.positivity = a.pos / static_cast<double>(a.n);
    ws.negativity = a.neg / static_cast<double>(a.n);
    ws.objectivity = 1.0 - ws.positivity - ws.negativity;
    entries.emplace(lemma, ws);
  }
  return SentimentLexicon(std::move(entries), records.size());
}

SentimentLexicon parse_swn_file(std::istream& in) {
  return build_lexicon(parse_swn_records(in));
}

SentimentLexicon load_swn_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open SentiWordNet file: " + path.string());
  return parse_swn_file(in);
}

std::optional<WordScore> SentimentLexicon::lookup(std::string_view lemma) const {
  auto it = entries_.find(to_lower(lemma));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace senticl
