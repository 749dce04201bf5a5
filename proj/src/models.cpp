#include "senticl/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "senticl/errors.hpp"

namespace senticl {

namespace {

std::vector<int> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
  Rng rng(seed);
  rng.shuffle(ids);
  return ids;
}

}  // namespace

AuxModel::AuxModel(int input_dim, std::uint64_t seed) : input_dim_(input_dim) {
  require(input_dim > 0, "AuxModel: input_dim must be positive");
  Rng rng(seed);
  fc1_ = std::make_unique<DenseLayer>(store_, "fc1", input_dim, 100, rng);
  fc2_ = std::make_unique<DenseLayer>(store_, "fc2", 100, 50, rng);
  fc3_ = std::make_unique<DenseLayer>(store_, "fc3", 50, kClassCount, rng);
}

Eigen::VectorXd AuxModel::forward(const Eigen::VectorXd& features) const {
  require(features.size() == input_dim_, "AuxModel::forward: dimension mismatch");
  Eigen::VectorXd h1 = relu(fc1_->forward(features));
  Eigen::VectorXd h2 = relu(fc2_->forward(h1));
  return softmax(fc3_->forward(h2));
}

double AuxModel::loss_and_backward(const Eigen::VectorXd& features, int label,
                                   double weight) {
  require(features.size() == input_dim_, "AuxModel: dimension mismatch");
  Eigen::VectorXd a1 = fc1_->forward(features);
  Eigen::VectorXd h1 = relu(a1);
  Eigen::VectorXd a2 = fc2_->forward(h1);
  Eigen::VectorXd h2 = relu(a2);
  Eigen::VectorXd logits = fc3_->forward(h2);
  SoftmaxXent sx = softmax_xent(logits, label);

  Eigen::VectorXd dh2 = fc3_->backward(h2, (sx.dlogits * weight).eval());
  Eigen::VectorXd dh1 = fc2_->backward(h1, relu_backward(a2, dh2));
  fc1_->backward(features, relu_backward(a1, dh1));
  return weight * sx.loss;
}

Eigen::MatrixXd aux_inputs(const Eigen::MatrixXd& features9, int input_dim) {
  require(features9.cols() == 9, "aux_inputs: expected 9 feature columns");
  if (input_dim == 9) return features9;
  require(input_dim == 8, "aux_inputs: input_dim must be 8 or 9");
  // Drop net objectivity (column 3); it is affinely determined by l, P, N.
  Eigen::MatrixXd out(features9.rows(), 8);
  out.leftCols(3) = features9.leftCols(3);
  out.rightCols(5) = features9.rightCols(5);
  return out;
}

int argmax_lowest(const Eigen::VectorXd& v) {
  require(v.size() > 0, "argmax_lowest: empty vector");
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

double aux_accuracy(const AuxModel& model, const Eigen::MatrixXd& X,
                    const std::vector<int>& y) {
  require(X.rows() == static_cast<Eigen::Index>(y.size()),
          "aux_accuracy: row/label count mismatch");
  require(!y.empty(), "aux_accuracy: empty split");
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    if (argmax_lowest(model.forward(X.row(i).transpose())) ==
        y[static_cast<std::size_t>(i)])
      ++correct;
  return static_cast<double>(correct) / static_cast<double>(y.size());
}

AuxTrainResult train_aux(AuxModel& model, const Eigen::MatrixXd& X,
                         const std::vector<int>& y, const Eigen::MatrixXd& Xdev,
                         const std::vector<int>& ydev, const AuxConfig& cfg,
                         std::uint64_t seed) {
  require(X.cols() == model.input_dim(), "train_aux: feature dimension mismatch");
  require(X.rows() == static_cast<Eigen::Index>(y.size()),
          "train_aux: row/label count mismatch");
  require(Xdev.rows() == static_cast<Eigen::Index>(ydev.size()),
          "train_aux: dev row/label count mismatch");
  require(X.rows() > 0, "train_aux: empty training set");
  require(cfg.batch >= 1 && cfg.lr > 0.0 && cfg.epochs >= 0,
          "train_aux: bad config");

  AuxTrainResult result;
  const bool has_dev = !ydev.empty();
  double best_dev = -1.0;
  std::vector<Eigen::MatrixXd> best_values = model.params().values_copy();

  const std::size_t n = y.size();
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    auto ids = shuffled_indices(n, Rng::mix(Rng::mix(seed, 0xA10), epoch));
    for (std::size_t start = 0; start < n; start += cfg.batch) {
      const std::size_t stop = std::min(n, start + cfg.batch);
      const double w = 1.0 / static_cast<double>(stop - start);
      for (std::size_t k = start; k < stop; ++k) {
        int id = ids[k];
        model.loss_and_backward(X.row(id).transpose(),
                                y[static_cast<std::size_t>(id)], w);
      }
      model.params().adam_step(cfg.lr);
    }
    if (has_dev) {
      double acc = aux_accuracy(model, Xdev, ydev);
      if (acc > best_dev) {
        best_dev = acc;
        best_values = model.params().values_copy();
        result.best_epoch = epoch;
      }
    }
  }
  if (has_dev && cfg.epochs > 0) {
    model.params().set_values(best_values);
    result.dev_acc = best_dev;
  } else if (has_dev) {
    result.dev_acc = aux_accuracy(model, Xdev, ydev);
  }
  result.train_acc = aux_accuracy(model, X, y);
  return result;
}

DifficultyRanking difficulty_scores(const AuxModel& model,
                                    const Eigen::MatrixXd& X,
                                    const std::vector<int>& y) {
  require(X.rows() == static_cast<Eigen::Index>(y.size()),
          "difficulty_scores: row/label count mismatch");
  DifficultyRanking ranking;
  ranking.scores.reserve(y.size());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const int label = y[static_cast<std::size_t>(i)];
    require(label >= 0 && label < kClassCount, "difficulty_scores: bad label");
    Eigen::VectorXd p = model.forward(X.row(i).transpose());
    Eigen::VectorXd target = Eigen::VectorXd::Zero(kClassCount);
    target[label] = 1.0;
    ranking.scores.push_back((p - target).squaredNorm());
  }
  return ranking;
}

void write_ranking_csv(std::ostream& out, const DifficultyRanking& ranking) {
  out << "id,score\n";
  out.precision(17);
  for (std::size_t i = 0; i < ranking.scores.size(); ++i)
    out << i << ',' << ranking.scores[i] << '\n';
}

DifficultyRanking read_ranking_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::size_t, double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "id,score") continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("ranking csv: missing comma", lineno);
    std::size_t id = 0;
    double score = 0.0;
    auto [p1, e1] = std::from_chars(line.data(), line.data() + comma, id);
    auto [p2, e2] = std::from_chars(line.data() + comma + 1,
                                    line.data() + line.size(), score);
    if (e1 != std::errc() || p1 != line.data() + comma || e2 != std::errc() ||
        p2 != line.data() + line.size())
      throw ParseError("ranking csv: unparsable row", lineno);
    if (!std::isfinite(score) || score < 0.0)
      throw ParseError("ranking csv: score must be finite and non-negative", lineno);
    rows.emplace_back(id, score);
  }
  if (rows.empty()) throw DataError("ranking csv: no rows");
  DifficultyRanking ranking;
  ranking.scores.assign(rows.size(), -1.0);
  for (const auto& [id, score] : rows) {
    if (id >= rows.size()) throw DataError("ranking csv: id out of range");
    if (ranking.scores[id] >= 0.0) throw DataError("ranking csv: duplicate id");
    ranking.scores[id] = score;
  }
  return ranking;
}

std::string to_string(ModelKind kind) {
  return kind == ModelKind::kim_cnn ? "kim_cnn" : "mlp_mean_embedding";
}

ModelKind model_kind_from_string(std::string_view s) {
  if (s == "kim_cnn") return ModelKind::kim_cnn;
  if (s == "mlp_mean_embedding") return ModelKind::mlp_mean_embedding;
  throw DataError("unknown model kind: " + std::string(s));
}

namespace {

/// Mean-pooled embedding into a [dim, 100, 5] ReLU MLP.
class MeanEmbeddingMlp final : public Classifier {
 public:
  MeanEmbeddingMlp(int embed_dim, std::uint64_t seed) {
    Rng rng(seed);
    fc1_ = std::make_unique<DenseLayer>(store_, "fc1", embed_dim, kMlpHidden, rng);
    fc2_ = std::make_unique<DenseLayer>(store_, "fc2", kMlpHidden, kClassCount, rng);
  }

  Eigen::VectorXd forward(const Eigen::MatrixXd& x, int valid_len) const override {
    Eigen::VectorXd pooled = mean_pool(x, valid_len);
    return softmax(fc2_->forward(relu(fc1_->forward(pooled))));
  }

  double loss_and_backward(const Eigen::MatrixXd& x, int valid_len, int label,
                           double weight) override {
    Eigen::VectorXd pooled = mean_pool(x, valid_len);
    Eigen::VectorXd a1 = fc1_->forward(pooled);
    Eigen::VectorXd h1 = relu(a1);
    SoftmaxXent sx = softmax_xent(fc2_->forward(h1), label);
    Eigen::VectorXd dh1 = fc2_->backward(h1, (sx.dlogits * weight).eval());
    fc1_->backward(pooled, relu_backward(a1, dh1));
    return weight * sx.loss;
  }

  ModelKind kind() const override { return ModelKind::mlp_mean_embedding; }

 private:
  std::unique_ptr<DenseLayer> fc1_, fc2_;
};

/// 50 filters per width in {3,4,5}, max-over-time, softmax head.
class KimCnn final : public Classifier {
 public:
  KimCnn(int embed_dim, std::uint64_t seed) {
    Rng rng(seed);
    conv_ = std::make_unique<ConvMaxLayer>(
        store_, "conv", std::vector<int>(kCnnWidths.begin(), kCnnWidths.end()),
        kCnnFilters, embed_dim, rng);
    fc_ = std::make_unique<DenseLayer>(store_, "fc", conv_->out_dim(), kClassCount,
                                       rng);
  }

  Eigen::VectorXd forward(const Eigen::MatrixXd& x, int valid_len) const override {
    return softmax(fc_->forward(conv_->forward(x, valid_len)));
  }

  double loss_and_backward(const Eigen::MatrixXd& x, int valid_len, int label,
                           double weight) override {
    ConvMaxLayer::Cache cache;
    Eigen::VectorXd pooled = conv_->forward(x, valid_len, &cache);
    SoftmaxXent sx = softmax_xent(fc_->forward(pooled), label);
    Eigen::VectorXd dpooled = fc_->backward(pooled, (sx.dlogits * weight).eval());
    conv_->backward(x, valid_len, cache, dpooled);
    return weight * sx.loss;
  }

  ModelKind kind() const override { return ModelKind::kim_cnn; }

 private:
  std::unique_ptr<ConvMaxLayer> conv_;
  std::unique_ptr<DenseLayer> fc_;
};

}  // namespace

std::unique_ptr<Classifier> make_classifier(ModelKind kind, int embed_dim,
                                            std::uint64_t seed) {
  require(embed_dim > 0, "make_classifier: embed_dim must be positive");
  if (kind == ModelKind::kim_cnn)
    return std::make_unique<KimCnn>(embed_dim, seed);
  return std::make_unique<MeanEmbeddingMlp>(embed_dim, seed);
}

double train_on_stream(Classifier& model, const std::vector<int>& ordered_ids,
                       const SentenceProvider& data, int sgd_batch, double lr) {
  require(!ordered_ids.empty(), "train_on_stream: empty stream");
  require(sgd_batch >= 1 && lr > 0.0, "train_on_stream: bad config");
  double total_loss = 0.0;
  const std::size_t n = ordered_ids.size();
  for (std::size_t start = 0; start < n; start += sgd_batch) {
    const std::size_t stop = std::min(n, start + sgd_batch);
    const double w = 1.0 / static_cast<double>(stop - start);
    for (std::size_t k = start; k < stop; ++k) {
      const int id = ordered_ids[k];
      Eigen::MatrixXd x = data.embed(id);
      total_loss += model.loss_and_backward(x, static_cast<int>(x.rows()),
                                            data.label(id), w) /
                    w;
    }
    model.params().adam_step(lr);
  }
  return total_loss / static_cast<double>(n);
}

}  // namespace senticl
