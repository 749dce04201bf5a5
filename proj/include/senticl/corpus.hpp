#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace senticl {

/// A tokenized, labeled sentence. Tokens are lowercase; label is 0..4.
struct Example {
  int id = 0;
  std::vector<std::string> tokens;
  int label = 0;
};

struct Dataset {
  std::vector<Example> train;
  std::vector<Example> dev;
  std::vector<Example> test;
};

/// Parses one parenthesized sentiment tree (`(3 (2 good) (2 movie))`).
/// The root label becomes the example label; leaves become lowercase tokens
/// in surface order. Sub-phrase labels are ignored. Throws ParseError with
/// the character offset on malformed input.
Example parse_ptb_tree_line(std::string_view line);

/// One tree per line; blank lines are skipped. Errors carry split name and
/// line number; an empty split is an error.
std::vector<Example> load_ptb_stream(std::istream& in, std::string_view split_name);

Dataset load_dataset(std::istream& train, std::istream& dev, std::istream& test);

/// Expects train.txt / dev.txt / test.txt under `dir`.
Dataset load_sst_dir(const std::filesystem::path& dir);

/// Generic `label<TAB>sentence` ingestion; whitespace-tokenized, lowercased.
/// An empty stream yields an empty list.
std::vector<Example> load_tsv(std::istream& in);
std::vector<Example> load_tsv_file(const std::filesystem::path& path);

Dataset load_tsv_dataset(const std::filesystem::path& train,
                         const std::filesystem::path& dev,
                         const std::filesystem::path& test);

/// All distinct tokens across the three splits (already lowercase).
std::unordered_set<std::string> vocabulary(const Dataset& ds);

}  // namespace senticl
