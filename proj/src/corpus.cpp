#include "senticl/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "senticl/errors.hpp"
#include "senticl/swn_lexicon.hpp"  // to_lower

namespace senticl {

namespace {

struct TreeParser {
  std::string_view line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos), 0);
  }

  char peek() const { return pos < line.size() ? line[pos] : '\0'; }

  void skip_space() {
    while (pos < line.size() && line[pos] == ' ') ++pos;
  }

  void expect(char c, const char* what) {
    if (peek() != c) fail(what);
    ++pos;
  }

  // Parses `(label children...)` or `(label token)`, appending leaf tokens.
  // Returns the node label.
  int parse_node(std::vector<std::string>& tokens) {
    expect('(', "expected '('");
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("non-digit node label");
    int label = peek() - '0';
    ++pos;
    if (label > 4) fail("node label out of range 0-4");
    expect(' ', "expected space after label");
    skip_space();

    if (peek() == '(') {
      while (peek() == '(') {
        parse_node(tokens);
        skip_space();
      }
    } else {
      std::size_t start = pos;
      while (pos < line.size() && line[pos] != ')' && line[pos] != '(' &&
             line[pos] != ' ')
        ++pos;
      if (pos == start) fail("empty leaf");
      tokens.push_back(to_lower(line.substr(start, pos - start)));
      skip_space();
    }
    if (peek() != ')') fail("unbalanced at end of line");
    ++pos;
    return label;
  }
};

bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Example parse_ptb_tree_line(std::string_view line) {
  TreeParser p{line};
  Example ex;
  ex.label = p.parse_node(ex.tokens);
  p.skip_space();
  if (p.pos != line.size()) p.fail("trailing characters after tree");
  if (ex.tokens.empty()) p.fail("tree has zero leaves");
  return ex;
}

std::vector<Example> load_ptb_stream(std::istream& in, std::string_view split_name) {
  std::vector<Example> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    try {
      Example ex = parse_ptb_tree_line(line);
      ex.id = static_cast<int>(out.size());
      out.push_back(std::move(ex));
    } catch (const ParseError& e) {
      throw ParseError(std::string(split_name) + ": " + e.what(), lineno);
    }
  }
  if (out.empty())
    throw DataError("empty split: " + std::string(split_name));
  return out;
}

Dataset load_dataset(std::istream& train, std::istream& dev, std::istream& test) {
  Dataset ds;
  ds.train = load_ptb_stream(train, "train");
  ds.dev = load_ptb_stream(dev, "dev");
  ds.test = load_ptb_stream(test, "test");
  return ds;
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  return in;
}

}  // namespace

Dataset load_sst_dir(const std::filesystem::path& dir) {
  auto train = open_or_throw(dir / "train.txt");
  auto dev = open_or_throw(dir / "dev.txt");
  auto test = open_or_throw(dir / "test.txt");
  return load_dataset(train, dev, test);
}

std::vector<Example> load_tsv(std::istream& in) {
  std::vector<Example> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("missing tab separator", lineno);
    std::string_view label_field(line.data(), tab);
    if (label_field.size() != 1 || label_field[0] < '0' || label_field[0] > '9')
      throw ParseError("unparsable label '" + std::string(label_field) + "'",
                       lineno);
    int label = label_field[0] - '0';
    if (label > 4) throw ParseError("label out of range", lineno);

    Example ex;
    ex.label = label;
    std::istringstream words(line.substr(tab + 1));
    std::string w;
    while (words >> w) ex.tokens.push_back(to_lower(w));
    if (ex.tokens.empty()) throw ParseError("empty sentence", lineno);
    ex.id = static_cast<int>(out.size());
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<Example> load_tsv_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return load_tsv(in);
}

Dataset load_tsv_dataset(const std::filesystem::path& train,
                         const std::filesystem::path& dev,
                         const std::filesystem::path& test) {
  Dataset ds;
  ds.train = load_tsv_file(train);
  ds.dev = load_tsv_file(dev);
  ds.test = load_tsv_file(test);
  if (ds.train.empty()) throw DataError("empty split: train");
  if (ds.dev.empty()) throw DataError("empty split: dev");
  if (ds.test.empty()) throw DataError("empty split: test");
  return ds;
}

std::unordered_set<std::string> vocabulary(const Dataset& ds) {
  std::unordered_set<std::string> vocab;
  for (const auto* split : {&ds.train, &ds.dev, &ds.test})
    for (const Example& ex : *split)
      for (const std::string& tok : ex.tokens) vocab.insert(tok);
  return vocab;
}

}  // namespace senticl
