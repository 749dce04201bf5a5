#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "senticl/rng.hpp"

namespace senticl {

/// One named parameter tensor with its gradient and Adam moments.
/// Vectors are stored as n x 1 matrices.
struct ParamBlock {
  std::string name;
  Eigen::MatrixXd value;
  Eigen::MatrixXd grad;
  Eigen::MatrixXd moment1;
  Eigen::MatrixXd moment2;
};

/// Flat storage for every parameter of one model. A store is confined to one
/// training run at a time; forward-only use of frozen values is safe
/// concurrently.
class ParamStore {
 public:
  ParamBlock& add(const std::string& name, Eigen::Index rows, Eigen::Index cols);
  ParamBlock& block(std::string_view name);
  const ParamBlock& block(std::string_view name) const;
  const std::vector<std::unique_ptr<ParamBlock>>& blocks() const { return blocks_; }

  std::size_t parameter_count() const;
  /// Row-major flat addressing across blocks in insertion order.
  double get_flat(std::size_t index) const;
  void set_flat(std::size_t index, double value);
  double grad_flat(std::size_t index) const;

  void zero_grads();

  /// Bias-corrected Adam update (beta1 0.9, beta2 0.999, eps 1e-8); zeroes
  /// the gradients and advances the step counter.
  void adam_step(double lr);
  long step() const { return step_; }

  std::vector<Eigen::MatrixXd> values_copy() const;
  void set_values(const std::vector<Eigen::MatrixXd>& values);

  /// Snapshot of names, shapes, and row-major values only.
  nlohmann::json to_json() const;
  /// Restores values into matching blocks; shapes must agree.
  void load_json(const nlohmann::json& manifest);
  void save_file(const std::filesystem::path& path) const;
  void load_file(const std::filesystem::path& path);

 private:
  std::vector<std::unique_ptr<ParamBlock>> blocks_;
  long step_ = 0;
};

/// Glorot-uniform initialization: U(+-sqrt(6 / (fan_in + fan_out))).
void glorot_init(Eigen::MatrixXd& m, int fan_in, int fan_out, Rng& rng);

/// y = W x + b. Stateless; callers keep the activations they need.
class DenseLayer {
 public:
  DenseLayer(ParamStore& store, const std::string& name, int in_dim, int out_dim,
             Rng& rng);

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  /// Accumulates dW and db from (x, dy); returns dx.
  Eigen::VectorXd backward(const Eigen::VectorXd& x, const Eigen::VectorXd& dy);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }

 private:
  ParamBlock* weight_;
  ParamBlock* bias_;
  int in_dim_, out_dim_;
};

Eigen::VectorXd relu(const Eigen::VectorXd& x);
/// Gradient gate on the pre-activation (derivative 0 at x <= 0).
Eigen::VectorXd relu_backward(const Eigen::VectorXd& pre, const Eigen::VectorXd& dy);

/// Valid 1-D convolution over time with bias, ReLU, and max-over-time,
/// concatenated across filter widths. When a sentence is shorter than a
/// width, that width sees a single all-zero window so its output is
/// relu(bias); training never throws on short inputs.
class ConvMaxLayer {
 public:
  ConvMaxLayer(ParamStore& store, const std::string& name,
               std::vector<int> widths, int filters, int dim, Rng& rng);

  struct Cache {
    // Per width, per filter: winning window position (-1 for the degenerate
    // zero window) and the winning pre-activation.
    std::vector<std::vector<int>> argmax;
    std::vector<std::vector<double>> max_pre;
  };

  /// x must have at least valid_len rows of `dim` columns.
  Eigen::VectorXd forward(const Eigen::MatrixXd& x, int valid_len,
                          Cache* cache = nullptr) const;
  /// Accumulates kernel and bias gradients. Inputs are frozen embeddings, so
  /// no input gradient is produced.
  void backward(const Eigen::MatrixXd& x, int valid_len, const Cache& cache,
                const Eigen::VectorXd& dy);

  int out_dim() const { return static_cast<int>(widths_.size()) * filters_; }
  const std::vector<int>& widths() const { return widths_; }
  int filters() const { return filters_; }

 private:
  std::vector<int> widths_;
  int filters_, dim_;
  std::vector<ParamBlock*> kernels_;  // filters x (width * dim)
  std::vector<ParamBlock*> biases_;   // filters x 1
};

/// Numerically stable softmax cross-entropy against an integer label.
struct SoftmaxXent {
  double loss = 0.0;
  Eigen::VectorXd probs;
  Eigen::VectorXd dlogits;  // probs - onehot(label)
};
SoftmaxXent softmax_xent(const Eigen::VectorXd& logits, int label);
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
};

/// Central-difference gradient check over a random subset of at least
/// `min_params` parameters (all of them when the model is smaller).
/// `loss_fn` must not touch gradients; `backward_fn` must return the loss
/// and accumulate gradients into the store. Relative error per parameter is
/// |ga - gn| / max(|ga|, |gn|, 1e-8).
GradCheckResult grad_check(ParamStore& store,
                           const std::function<double()>& loss_fn,
                           const std::function<double()>& backward_fn,
                           std::uint64_t seed, std::size_t min_params = 200,
                           double h = 1e-5);

}  // namespace senticl
