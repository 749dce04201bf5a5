#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "senticl/corpus.hpp"
#include "senticl/embeddings.hpp"
#include "senticl/nnet.hpp"

namespace senticl {

inline constexpr int kClassCount = 5;
inline constexpr int kCnnFilters = 50;
inline constexpr std::array<int, 3> kCnnWidths = {3, 4, 5};
inline constexpr int kMlpHidden = 100;

/// Feed-forward difficulty model: [input_dim, 100, 50, 5], ReLU hidden
/// layers, softmax output. input_dim is 9 for the full feature set or 8
/// when net objectivity is dropped.
class AuxModel {
 public:
  AuxModel(int input_dim, std::uint64_t seed);

  Eigen::VectorXd forward(const Eigen::VectorXd& features) const;  // probabilities
  /// Accumulates gradients scaled by `weight`; returns weight * loss.
  double loss_and_backward(const Eigen::VectorXd& features, int label,
                           double weight = 1.0);

  int input_dim() const { return input_dim_; }
  ParamStore& params() { return store_; }
  const ParamStore& params() const { return store_; }

 private:
  ParamStore store_;
  int input_dim_;
  std::unique_ptr<DenseLayer> fc1_, fc2_, fc3_;
};

struct AuxConfig {
  int input_dim = 9;
  int epochs = 30;
  int batch = 32;
  double lr = 0.01;
};

struct AuxTrainResult {
  double train_acc = 0.0;
  double dev_acc = 0.0;
  int best_epoch = 0;  // 0 when dev is empty or epochs == 0
};

/// Selects the aux input columns: all nine features, or eight with net
/// objectivity (column 3) dropped.
Eigen::MatrixXd aux_inputs(const Eigen::MatrixXd& features9, int input_dim);

/// Adam + cross-entropy on shuffled minibatches for a fixed epoch budget;
/// the best-dev-accuracy snapshot is restored before returning (final
/// parameters when dev is empty).
AuxTrainResult train_aux(AuxModel& model, const Eigen::MatrixXd& X,
                         const std::vector<int>& y, const Eigen::MatrixXd& Xdev,
                         const std::vector<int>& ydev, const AuxConfig& cfg,
                         std::uint64_t seed);

/// Lowest index wins ties.
int argmax_lowest(const Eigen::VectorXd& v);

double aux_accuracy(const AuxModel& model, const Eigen::MatrixXd& X,
                    const std::vector<int>& y);

/// Per-example squared distance between the predicted distribution and the
/// one-hot label, summed over the 5 classes. High means hard.
struct DifficultyRanking {
  std::vector<double> scores;
};

DifficultyRanking difficulty_scores(const AuxModel& model,
                                    const Eigen::MatrixXd& X,
                                    const std::vector<int>& y);

/// CSV `id,score`, one row per example in id order.
void write_ranking_csv(std::ostream& out, const DifficultyRanking& ranking);
/// Accepts rows in any order; ids must cover 0..n-1 exactly once.
DifficultyRanking read_ranking_csv(std::istream& in);

enum class ModelKind { mlp_mean_embedding, kim_cnn };
std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view s);

/// A 5-class sentence classifier over frozen embeddings.
class Classifier {
 public:
  virtual ~Classifier() = default;

  /// x holds one embedding row per time step; rows past valid_len are ignored.
  virtual Eigen::VectorXd forward(const Eigen::MatrixXd& x, int valid_len) const = 0;
  virtual double loss_and_backward(const Eigen::MatrixXd& x, int valid_len,
                                   int label, double weight = 1.0) = 0;
  virtual ModelKind kind() const = 0;

  ParamStore& params() { return store_; }
  const ParamStore& params() const { return store_; }

 protected:
  ParamStore store_;
};

std::unique_ptr<Classifier> make_classifier(ModelKind kind, int embed_dim,
                                            std::uint64_t seed);

/// Embeds corpus examples on demand for training and evaluation.
class SentenceProvider {
 public:
  SentenceProvider(const EmbeddingTable& table, const std::vector<Example>& examples,
                   int max_len)
      : table_(&table), examples_(&examples), max_len_(max_len) {}

  std::size_t size() const { return examples_->size(); }
  int label(int id) const { return (*examples_)[static_cast<std::size_t>(id)].label; }
  Eigen::MatrixXd embed(int id) const {
    return embed_valid(*table_, (*examples_)[static_cast<std::size_t>(id)].tokens,
                       max_len_);
  }

 private:
  const EmbeddingTable* table_;
  const std::vector<Example>* examples_;
  int max_len_;
};

/// Minibatch Adam descent on cross-entropy over exactly `ordered_ids` in the
/// given order (consecutive chunks of sgd_batch; gradients averaged within a
/// chunk). Returns the mean loss over the stream. Throws on an empty stream.
double train_on_stream(Classifier& model, const std::vector<int>& ordered_ids,
                       const SentenceProvider& data, int sgd_batch, double lr);

}  // namespace senticl
