#include "senticl/embeddings.hpp"

#include <charconv>
#include <fstream>

#include "senticl/errors.hpp"
#include "senticl/rng.hpp"
#include "senticl/swn_lexicon.hpp"  // to_lower

namespace senticl {

namespace {

// Splits on single spaces; GloVe files never use tabs or repeated spaces.
std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(' ', start);
    if (pos == std::string_view::npos) {
      if (start < s.size()) out.push_back(s.substr(start));
      break;
    }
    if (pos > start) out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_component(std::string_view field, std::size_t lineno) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("unparsable float '" + std::string(field) + "'", lineno);
  return v;
}

}  // namespace

EmbeddingTable parse_glove(std::istream& in, std::optional<int> expected_dim,
                           const std::unordered_set<std::string>* vocab) {
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  int dim = expected_dim.value_or(0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    auto fields = split_fields(line);
    if (dim == 0) {
      if (fields.size() < 2) throw ParseError("too few fields", lineno);
      dim = static_cast<int>(fields.size()) - 1;
    }
    if (static_cast<int>(fields.size()) < dim + 1)
      throw ParseError("dimension mismatch", lineno);

    std::size_t word_fields = fields.size() - static_cast<std::size_t>(dim);
    std::string word;
    for (std::size_t i = 0; i < word_fields; ++i) {
      if (i) word += ' ';
      word += fields[i];
    }
    word = to_lower(word);
    if (vocab && !vocab->count(word)) continue;
    if (vectors.count(word)) continue;  // first occurrence wins

    Eigen::VectorXd vec(dim);
    for (int j = 0; j < dim; ++j)
      vec[j] = parse_component(fields[word_fields + static_cast<std::size_t>(j)],
                               lineno);
    vectors.emplace(std::move(word), std::move(vec));
  }
  if (dim == 0) throw DataError("no vectors in embedding input");
  return EmbeddingTable(dim, std::move(vectors));
}

EmbeddingTable load_glove_file(const std::filesystem::path& path,
                               std::optional<int> expected_dim,
                               const std::unordered_set<std::string>* vocab) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings file: " + path.string());
  return parse_glove(in, expected_dim, vocab);
}

const Eigen::VectorXd* EmbeddingTable::find(std::string_view word) const {
  auto it = vectors_.find(to_lower(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

Eigen::VectorXd EmbeddingTable::oov_vector(std::string_view word) const {
  if (policy_ == OovPolicy::zero) return Eigen::VectorXd::Zero(dimension_);
  std::string key = to_lower(word);
  Rng rng(Rng::mix(fnv1a(key.data(), key.size()), /*stream=*/0x00fULL));
  Eigen::VectorXd v(dimension_);
  for (int i = 0; i < dimension_; ++i) v[i] = rng.uniform(-oov_scale_, oov_scale_);
  return v;
}

namespace {

void fill_rows(const EmbeddingTable& table, std::span<const std::string> tokens,
               int valid, Eigen::MatrixXd& out) {
  for (int i = 0; i < valid; ++i) {
    const std::string& word = tokens[static_cast<std::size_t>(i)];
    const Eigen::VectorXd* v = table.find(word);
    if (v)
      out.row(i) = v->transpose();
    else
      out.row(i) = table.oov_vector(word).transpose();
  }
}

}  // namespace

EmbeddedSentence embed_sequence(const EmbeddingTable& table,
                                std::span<const std::string> tokens, int max_len) {
  require(max_len > 0, "embed_sequence: max_len must be positive");
  int valid = static_cast<int>(std::min<std::size_t>(tokens.size(),
                                                     static_cast<std::size_t>(max_len)));
  EmbeddedSentence out;
  out.rows = Eigen::MatrixXd::Zero(max_len, table.dimension());
  out.valid_length = valid;
  fill_rows(table, tokens, valid, out.rows);
  return out;
}

Eigen::MatrixXd embed_valid(const EmbeddingTable& table,
                            std::span<const std::string> tokens, int max_len) {
  require(max_len > 0, "embed_valid: max_len must be positive");
  int valid = static_cast<int>(std::min<std::size_t>(tokens.size(),
                                                     static_cast<std::size_t>(max_len)));
  Eigen::MatrixXd rows(valid, table.dimension());
  fill_rows(table, tokens, valid, rows);
  return rows;
}

Eigen::VectorXd mean_pool(const Eigen::MatrixXd& rows, int valid_length) {
  if (valid_length < 1) throw std::invalid_argument("mean_pool: empty sentence");
  require(valid_length <= rows.rows(), "mean_pool: valid_length exceeds rows");
  return rows.topRows(valid_length).colwise().sum().transpose() /
         static_cast<double>(valid_length);
}

}  // namespace senticl
