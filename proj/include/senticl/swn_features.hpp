#pragma once

#include <Eigen/Core>
#include <array>
#include <ostream>
#include <vector>

#include "senticl/corpus.hpp"
#include "senticl/swn_lexicon.hpp"

namespace senticl {

/// The nine per-sentence lexicon features. A token found in the lexicon
/// contributes its (P, N, O) triple; an absent token contributes (0, 0, 1),
/// so O + P + N always equals the token count.
struct FeatureVector {
  double length = 0.0;        // l
  double net_pos = 0.0;       // P
  double net_neg = 0.0;       // N
  double net_obj = 0.0;       // O
  double abs_diff = 0.0;      // AD = |P - N|
  double scaled_pos = 0.0;    // P / l
  double scaled_neg = 0.0;    // N / l
  double scaled_obj = 0.0;    // O / l
  double scaled_abs_diff = 0.0;  // AD / l

  std::array<double, 9> to_array() const {
    return {length,     net_pos,    net_neg,    net_obj,   abs_diff,
            scaled_pos, scaled_neg, scaled_obj, scaled_abs_diff};
  }
};

inline constexpr std::array<const char*, 9> kFeatureNames = {
    "l", "P", "N", "O", "AD", "P_l", "N_l", "O_l", "AD_l"};

FeatureVector extract(const SentimentLexicon& lexicon, const Example& example);

std::vector<FeatureVector> extract_all(const SentimentLexicon& lexicon,
                                       const std::vector<Example>& examples);

/// Per-feature mean and max absolute deviation, fitted on the training split
/// only. Mean-centering then max-abs-deviation scaling maps the training
/// column into [-1, 1] with mean 0; a constant column maps to 0.
struct NormalizationSpec {
  std::array<double, 9> mean{};
  std::array<double, 9> max_abs_dev{};
};

NormalizationSpec fit_normalizer(const std::vector<FeatureVector>& training);

std::array<double, 9> normalize(const NormalizationSpec& spec,
                                const FeatureVector& fv);

/// n x 9 matrices in kFeatureNames column order.
Eigen::MatrixXd feature_matrix(const std::vector<FeatureVector>& fvs);
Eigen::MatrixXd normalized_matrix(const NormalizationSpec& spec,
                                  const std::vector<FeatureVector>& fvs);

/// CSV export, header `id,l,P,N,O,AD,P_l,N_l,O_l,AD_l`.
void write_features_csv(std::ostream& out, const std::vector<FeatureVector>& fvs);
void write_normalized_csv(std::ostream& out, const NormalizationSpec& spec,
                          const std::vector<FeatureVector>& fvs);

}  // namespace senticl
