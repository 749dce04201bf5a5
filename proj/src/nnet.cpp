#include "senticl/nnet.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "senticl/errors.hpp"

namespace senticl {

ParamBlock& ParamStore::add(const std::string& name, Eigen::Index rows,
                            Eigen::Index cols) {
  require(rows > 0 && cols > 0, "ParamStore::add: dimensions must be positive");
  for (const auto& b : blocks_)
    require(b->name != name, "ParamStore::add: duplicate block '" + name + "'");
  auto block = std::make_unique<ParamBlock>();
  block->name = name;
  block->value = Eigen::MatrixXd::Zero(rows, cols);
  block->grad = Eigen::MatrixXd::Zero(rows, cols);
  block->moment1 = Eigen::MatrixXd::Zero(rows, cols);
  block->moment2 = Eigen::MatrixXd::Zero(rows, cols);
  blocks_.push_back(std::move(block));
  return *blocks_.back();
}

ParamBlock& ParamStore::block(std::string_view name) {
  for (const auto& b : blocks_)
    if (b->name == name) return *b;
  throw std::invalid_argument("ParamStore: no block named '" + std::string(name) + "'");
}

const ParamBlock& ParamStore::block(std::string_view name) const {
  return const_cast<ParamStore*>(this)->block(name);
}

std::size_t ParamStore::parameter_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += static_cast<std::size_t>(b->value.size());
  return n;
}

namespace {

// Maps a flat index to (block, row, col) in row-major order.
struct FlatRef {
  Eigen::MatrixXd* m;
  Eigen::Index r, c;
};

FlatRef locate(const std::vector<std::unique_ptr<ParamBlock>>& blocks,
               std::size_t index, bool grad) {
  for (const auto& b : blocks) {
    std::size_t n = static_cast<std::size_t>(b->value.size());
    if (index < n) {
      Eigen::Index cols = b->value.cols();
      auto i = static_cast<Eigen::Index>(index);
      return {grad ? &b->grad : &b->value, i / cols, i % cols};
    }
    index -= n;
  }
  throw std::invalid_argument("ParamStore: flat index out of range");
}

}  // namespace

double ParamStore::get_flat(std::size_t index) const {
  FlatRef f = locate(blocks_, index, false);
  return (*f.m)(f.r, f.c);
}

void ParamStore::set_flat(std::size_t index, double value) {
  FlatRef f = locate(blocks_, index, false);
  (*f.m)(f.r, f.c) = value;
}

double ParamStore::grad_flat(std::size_t index) const {
  FlatRef f = locate(blocks_, index, true);
  return (*f.m)(f.r, f.c);
}

void ParamStore::zero_grads() {
  for (const auto& b : blocks_) b->grad.setZero();
}

void ParamStore::adam_step(double lr) {
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  ++step_;
  const double corr1 = 1.0 - std::pow(beta1, static_cast<double>(step_));
  const double corr2 = 1.0 - std::pow(beta2, static_cast<double>(step_));
  for (const auto& b : blocks_) {
    b->moment1 = beta1 * b->moment1 + (1.0 - beta1) * b->grad;
    b->moment2 = beta2 * b->moment2 + (1.0 - beta2) * b->grad.cwiseProduct(b->grad);
    b->value.array() -= lr * (b->moment1.array() / corr1) /
                        ((b->moment2.array() / corr2).sqrt() + eps);
    b->grad.setZero();
  }
}

std::vector<Eigen::MatrixXd> ParamStore::values_copy() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b->value);
  return out;
}

void ParamStore::set_values(const std::vector<Eigen::MatrixXd>& values) {
  require(values.size() == blocks_.size(), "set_values: block count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i].rows() == blocks_[i]->value.rows() &&
                values[i].cols() == blocks_[i]->value.cols(),
            "set_values: shape mismatch");
    blocks_[i]->value = values[i];
  }
}

nlohmann::json ParamStore::to_json() const {
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& b : blocks_) {
    nlohmann::json entry;
    entry["name"] = b->name;
    entry["rows"] = b->value.rows();
    entry["cols"] = b->value.cols();
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(b->value.size()));
    for (Eigen::Index r = 0; r < b->value.rows(); ++r)
      for (Eigen::Index c = 0; c < b->value.cols(); ++c)
        flat.push_back(b->value(r, c));
    entry["values"] = std::move(flat);
    manifest.push_back(std::move(entry));
  }
  return manifest;
}

void ParamStore::load_json(const nlohmann::json& manifest) {
  require(manifest.is_array() && manifest.size() == blocks_.size(),
          "parameter manifest: block count mismatch");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const nlohmann::json& entry = manifest[i];
    ParamBlock& b = *blocks_[i];
    require(entry.at("name").get<std::string>() == b.name,
            "parameter manifest: block name mismatch");
    auto rows = entry.at("rows").get<Eigen::Index>();
    auto cols = entry.at("cols").get<Eigen::Index>();
    require(rows == b.value.rows() && cols == b.value.cols(),
            "parameter manifest: shape mismatch for '" + b.name + "'");
    const auto& values = entry.at("values");
    require(static_cast<Eigen::Index>(values.size()) == b.value.size(),
            "parameter manifest: value count mismatch");
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        b.value(r, c) = values[k++].get<double>();
  }
}

void ParamStore::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write parameter file: " + path.string());
  out << to_json().dump();
}

void ParamStore::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open parameter file: " + path.string());
  load_json(nlohmann::json::parse(in));
}

void glorot_init(Eigen::MatrixXd& m, int fan_in, int fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-bound, bound);
}

DenseLayer::DenseLayer(ParamStore& store, const std::string& name, int in_dim,
                       int out_dim, Rng& rng)
    : in_dim_(in_dim), out_dim_(out_dim) {
  weight_ = &store.add(name + ".W", out_dim, in_dim);
  bias_ = &store.add(name + ".b", out_dim, 1);
  glorot_init(weight_->value, in_dim, out_dim, rng);
}

Eigen::VectorXd DenseLayer::forward(const Eigen::VectorXd& x) const {
  require(x.size() == in_dim_, "DenseLayer::forward: shape mismatch");
  return weight_->value * x + bias_->value.col(0);
}

Eigen::VectorXd DenseLayer::backward(const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& dy) {
  require(x.size() == in_dim_ && dy.size() == out_dim_,
          "DenseLayer::backward: shape mismatch");
  weight_->grad.noalias() += dy * x.transpose();
  bias_->grad.col(0) += dy;
  return weight_->value.transpose() * dy;
}

Eigen::VectorXd relu(const Eigen::VectorXd& x) { return x.cwiseMax(0.0); }

Eigen::VectorXd relu_backward(const Eigen::VectorXd& pre,
                              const Eigen::VectorXd& dy) {
  return (pre.array() > 0.0).select(dy, Eigen::VectorXd::Zero(dy.size()));
}

ConvMaxLayer::ConvMaxLayer(ParamStore& store, const std::string& name,
                           std::vector<int> widths, int filters, int dim,
                           Rng& rng)
    : widths_(std::move(widths)), filters_(filters), dim_(dim) {
  require(!widths_.empty() && filters_ > 0 && dim_ > 0,
          "ConvMaxLayer: dimensions must be positive");
  for (int w : widths_) {
    require(w > 0, "ConvMaxLayer: filter width must be positive");
    ParamBlock& k = store.add(name + ".w" + std::to_string(w) + ".K", filters_,
                              static_cast<Eigen::Index>(w) * dim_);
    glorot_init(k.value, w * dim_, filters_, rng);
    kernels_.push_back(&k);
    biases_.push_back(&store.add(name + ".w" + std::to_string(w) + ".b", filters_, 1));
  }
}

Eigen::VectorXd ConvMaxLayer::forward(const Eigen::MatrixXd& x, int valid_len,
                                      Cache* cache) const {
  require(x.cols() == dim_, "ConvMaxLayer::forward: dimension mismatch");
  require(valid_len >= 1 && valid_len <= x.rows(),
          "ConvMaxLayer::forward: bad valid_len");
  Eigen::VectorXd out(out_dim());
  if (cache) {
    cache->argmax.assign(widths_.size(), std::vector<int>(filters_, -1));
    cache->max_pre.assign(widths_.size(), std::vector<double>(filters_, 0.0));
  }
  for (std::size_t wi = 0; wi < widths_.size(); ++wi) {
    const int w = widths_[wi];
    const Eigen::MatrixXd& K = kernels_[wi]->value;
    const Eigen::VectorXd& b = biases_[wi]->value.col(0);
    const int positions = valid_len - w + 1;
    for (int f = 0; f < filters_; ++f) {
      double best = 0.0;
      int best_pos = -1;
      if (positions >= 1) {
        for (int p = 0; p < positions; ++p) {
          double pre = b[f];
          for (int r = 0; r < w; ++r)
            pre += K.row(f).segment(static_cast<Eigen::Index>(r) * dim_, dim_)
                       .dot(x.row(p + r));
          if (best_pos < 0 || pre > best) {
            best = pre;
            best_pos = p;
          }
        }
      } else {
        // Sentence shorter than the filter: one all-zero window.
        best = b[f];
        best_pos = -1;
      }
      if (cache) {
        cache->argmax[wi][static_cast<std::size_t>(f)] = best_pos;
        cache->max_pre[wi][static_cast<std::size_t>(f)] = best;
      }
      out[static_cast<Eigen::Index>(wi) * filters_ + f] = best > 0.0 ? best : 0.0;
    }
  }
  return out;
}

void ConvMaxLayer::backward(const Eigen::MatrixXd& x, int valid_len,
                            const Cache& cache, const Eigen::VectorXd& dy) {
  require(dy.size() == out_dim(), "ConvMaxLayer::backward: shape mismatch");
  for (std::size_t wi = 0; wi < widths_.size(); ++wi) {
    const int w = widths_[wi];
    Eigen::MatrixXd& dK = kernels_[wi]->grad;
    Eigen::MatrixXd& db = biases_[wi]->grad;
    for (int f = 0; f < filters_; ++f) {
      if (cache.max_pre[wi][static_cast<std::size_t>(f)] <= 0.0) continue;
      const double g = dy[static_cast<Eigen::Index>(wi) * filters_ + f];
      if (g == 0.0) continue;
      db(f, 0) += g;
      const int p = cache.argmax[wi][static_cast<std::size_t>(f)];
      if (p < 0) continue;  // degenerate zero window: kernel sees zeros
      require(p + w <= valid_len, "ConvMaxLayer::backward: stale cache");
      for (int r = 0; r < w; ++r)
        dK.row(f).segment(static_cast<Eigen::Index>(r) * dim_, dim_) +=
            g * x.row(p + r);
    }
  }
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double m = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - m).exp();
  return e / e.sum();
}

SoftmaxXent softmax_xent(const Eigen::VectorXd& logits, int label) {
  require(label >= 0 && label < logits.size(), "softmax_xent: label out of range");
  SoftmaxXent res;
  res.probs = softmax(logits);
  res.loss = -std::log(res.probs[label]);
  res.dlogits = res.probs;
  res.dlogits[label] -= 1.0;
  return res;
}

GradCheckResult grad_check(ParamStore& store,
                           const std::function<double()>& loss_fn,
                           const std::function<double()>& backward_fn,
                           std::uint64_t seed, std::size_t min_params, double h) {
  const std::size_t total = store.parameter_count();
  std::unordered_set<std::size_t> picked;
  if (total <= min_params) {
    for (std::size_t i = 0; i < total; ++i) picked.insert(i);
  } else {
    Rng rng(seed);
    while (picked.size() < min_params)
      picked.insert(static_cast<std::size_t>(rng.below(total)));
  }

  store.zero_grads();
  backward_fn();

  GradCheckResult res;
  for (std::size_t i : picked) {
    const double analytic = store.grad_flat(i);
    const double saved = store.get_flat(i);
    store.set_flat(i, saved + h);
    const double lp = loss_fn();
    store.set_flat(i, saved - h);
    const double lm = loss_fn();
    store.set_flat(i, saved);
    const double numeric = (lp - lm) / (2.0 * h);
    const double rel = std::abs(analytic - numeric) /
                       std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    res.max_rel_error = std::max(res.max_rel_error, rel);
    ++res.checked;
  }
  store.zero_grads();
  return res;
}

}  // namespace senticl
