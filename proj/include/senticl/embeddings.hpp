#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace senticl {

enum class OovPolicy { zero, hash_uniform };

/// GloVe-style word vectors, frozen after load. Keys are lowercase; the
/// first occurrence wins when case-folding collides (GloVe files are
/// frequency-ordered).
class EmbeddingTable {
 public:
  EmbeddingTable(int dimension,
                 std::unordered_map<std::string, Eigen::VectorXd> vectors,
                 OovPolicy policy = OovPolicy::zero, double oov_scale = 0.25)
      : dimension_(dimension),
        vectors_(std::move(vectors)),
        policy_(policy),
        oov_scale_(oov_scale) {}

  int dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  OovPolicy oov_policy() const { return policy_; }
  void set_oov_policy(OovPolicy p, double scale = 0.25) {
    policy_ = p;
    oov_scale_ = scale;
  }

  /// nullptr when the (lowercased) word is absent.
  const Eigen::VectorXd* find(std::string_view word) const;

  /// Row for an out-of-vocabulary word under the current policy.
  Eigen::VectorXd oov_vector(std::string_view word) const;

 private:
  int dimension_;
  std::unordered_map<std::string, Eigen::VectorXd> vectors_;
  OovPolicy policy_;
  double oov_scale_;
};

/// Parses `word v1 ... vd` lines. The dimension comes from the first line
/// unless `expected_dim` is given; a line with fewer fields is a dimension
/// mismatch. Lines with extra leading fields fold them into a multi-token
/// key (some distributions contain such entries); those keys are unreachable
/// from whitespace tokenization. `vocab` restricts loading when non-null.
EmbeddingTable parse_glove(std::istream& in,
                           std::optional<int> expected_dim = std::nullopt,
                           const std::unordered_set<std::string>* vocab = nullptr);

EmbeddingTable load_glove_file(const std::filesystem::path& path,
                               std::optional<int> expected_dim = std::nullopt,
                               const std::unordered_set<std::string>* vocab = nullptr);

/// max_len x dimension matrix; rows past valid_length are zero.
struct EmbeddedSentence {
  Eigen::MatrixXd rows;
  int valid_length = 0;
};

EmbeddedSentence embed_sequence(const EmbeddingTable& table,
                                std::span<const std::string> tokens, int max_len);

/// Same contents as embed_sequence but only the valid rows; the classifiers
/// never read past valid_length, so this is the training fast path.
Eigen::MatrixXd embed_valid(const EmbeddingTable& table,
                            std::span<const std::string> tokens, int max_len);

/// Arithmetic mean of the first valid_length rows.
Eigen::VectorXd mean_pool(const Eigen::MatrixXd& rows, int valid_length);

}  // namespace senticl
