#include "senticl/swn_features.hpp"

#include <cmath>
#include <functional>

#include "senticl/errors.hpp"

namespace senticl {

FeatureVector extract(const SentimentLexicon& lexicon, const Example& example) {
  require(!example.tokens.empty(), "extract: example has no tokens");
  FeatureVector fv;
  fv.length = static_cast<double>(example.tokens.size());
  for (const std::string& tok : example.tokens) {
    if (auto ws = lexicon.lookup(tok)) {
      fv.net_pos += ws->positivity;
      fv.net_neg += ws->negativity;
      fv.net_obj += ws->objectivity;
    } else {
      fv.net_obj += 1.0;
    }
  }
  fv.abs_diff = std::abs(fv.net_pos - fv.net_neg);
  fv.scaled_pos = fv.net_pos / fv.length;
  fv.scaled_neg = fv.net_neg / fv.length;
  fv.scaled_obj = fv.net_obj / fv.length;
  fv.scaled_abs_diff = fv.abs_diff / fv.length;
  return fv;
}

std::vector<FeatureVector> extract_all(const SentimentLexicon& lexicon,
                                       const std::vector<Example>& examples) {
  std::vector<FeatureVector> out;
  out.reserve(examples.size());
  for (const Example& ex : examples) out.push_back(extract(lexicon, ex));
  return out;
}

NormalizationSpec fit_normalizer(const std::vector<FeatureVector>& training) {
  require(!training.empty(), "fit_normalizer: no feature vectors");
  NormalizationSpec spec;
  const double n = static_cast<double>(training.size());
  for (const FeatureVector& fv : training) {
    auto row = fv.to_array();
    for (std::size_t j = 0; j < 9; ++j) spec.mean[j] += row[j];
  }
  for (std::size_t j = 0; j < 9; ++j) spec.mean[j] /= n;
  for (const FeatureVector& fv : training) {
    auto row = fv.to_array();
    for (std::size_t j = 0; j < 9; ++j)
      spec.max_abs_dev[j] =
          std::max(spec.max_abs_dev[j], std::abs(row[j] - spec.mean[j]));
  }
  return spec;
}

std::array<double, 9> normalize(const NormalizationSpec& spec,
                                const FeatureVector& fv) {
  std::array<double, 9> out{};
  auto row = fv.to_array();
  for (std::size_t j = 0; j < 9; ++j)
    out[j] = spec.max_abs_dev[j] > 0.0
                 ? (row[j] - spec.mean[j]) / spec.max_abs_dev[j]
                 : 0.0;
  return out;
}

Eigen::MatrixXd feature_matrix(const std::vector<FeatureVector>& fvs) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(fvs.size()), 9);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = fvs[static_cast<std::size_t>(i)].to_array();
    for (Eigen::Index j = 0; j < 9; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

Eigen::MatrixXd normalized_matrix(const NormalizationSpec& spec,
                                  const std::vector<FeatureVector>& fvs) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(fvs.size()), 9);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = normalize(spec, fvs[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < 9; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

namespace {

void write_csv(std::ostream& out,
               const std::function<std::array<double, 9>(std::size_t)>& row_of,
               std::size_t n) {
  out << "id";
  for (const char* name : kFeatureNames) out << ',' << name;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < n; ++i) {
    out << i;
    for (double x : row_of(i)) out << ',' << x;
    out << '\n';
  }
}

}  // namespace

void write_features_csv(std::ostream& out, const std::vector<FeatureVector>& fvs) {
  write_csv(out, [&](std::size_t i) { return fvs[i].to_array(); }, fvs.size());
}

void write_normalized_csv(std::ostream& out, const NormalizationSpec& spec,
                          const std::vector<FeatureVector>& fvs) {
  write_csv(out, [&](std::size_t i) { return normalize(spec, fvs[i]); },
            fvs.size());
}

}  // namespace senticl
