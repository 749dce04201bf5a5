#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "senticl/corpus.hpp"
#include "senticl/errors.hpp"
#include "senticl/swn_features.hpp"
#include "senticl/swn_lexicon.hpp"
#include "test_support.hpp"

using namespace senticl;
using senticl::testing::fixture;

namespace {

SentimentLexicon good_only_lexicon() {
  std::istringstream in("a\t00000001\t0.5\t0.25\tgood#1\tg\n");
  return parse_swn_file(in);
}

Example example_of(std::vector<std::string> tokens) {
  Example e;
  e.tokens = std::move(tokens);
  e.label = 2;
  return e;
}

FeatureVector fv_with_length(double l) {
  FeatureVector fv;
  fv.length = l;
  fv.net_obj = l;
  fv.scaled_obj = 1.0;
  return fv;
}

}  // namespace

TEST_SUITE("swn_features") {

TEST_CASE("single in-lexicon token") {
  FeatureVector fv = extract(good_only_lexicon(), example_of({"good"}));
  CHECK(fv.length == 1.0);
  CHECK(fv.net_pos == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fv.net_neg == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fv.net_obj == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fv.abs_diff == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fv.scaled_pos == fv.net_pos);
  CHECK(fv.scaled_neg == fv.net_neg);
  CHECK(fv.scaled_obj == fv.net_obj);
  CHECK(fv.scaled_abs_diff == fv.abs_diff);
}

TEST_CASE("out-of-lexicon tokens contribute full objectivity") {
  FeatureVector fv = extract(good_only_lexicon(), example_of({"zz", "qq"}));
  CHECK(fv.length == 2.0);
  CHECK(fv.net_pos == 0.0);
  CHECK(fv.net_neg == 0.0);
  CHECK(fv.net_obj == 2.0);
  CHECK(fv.abs_diff == 0.0);
  CHECK(fv.scaled_pos == 0.0);
  CHECK(fv.scaled_neg == 0.0);
  CHECK(fv.scaled_obj == 1.0);
  CHECK(fv.scaled_abs_diff == 0.0);
}

TEST_CASE("mixed sentence matches a brute-force per-token loop") {
  SentimentLexicon lex = good_only_lexicon();
  FeatureVector fv = extract(lex, example_of({"good", "zz"}));
  CHECK(fv.length == 2.0);
  CHECK(fv.net_pos == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fv.net_neg == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fv.net_obj == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(fv.abs_diff == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fv.scaled_pos == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fv.scaled_neg == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(fv.scaled_obj == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(fv.scaled_abs_diff == doctest::Approx(0.125).epsilon(1e-12));

  // Independent accumulation over tokens.
  double p = 0.0, n = 0.0, o = 0.0;
  for (const std::string& tok : {std::string("good"), std::string("zz")}) {
    if (auto s = lex.lookup(tok)) {
      p += s->positivity;
      n += s->negativity;
      o += s->objectivity;
    } else {
      o += 1.0;
    }
  }
  CHECK(fv.net_pos == doctest::Approx(p).epsilon(1e-15));
  CHECK(fv.net_neg == doctest::Approx(n).epsilon(1e-15));
  CHECK(fv.net_obj == doctest::Approx(o).epsilon(1e-15));
}

TEST_CASE("fit_normalizer computes mean and max absolute deviation") {
  std::vector<FeatureVector> fvs = {fv_with_length(1), fv_with_length(2),
                                    fv_with_length(3)};
  NormalizationSpec spec = fit_normalizer(fvs);
  CHECK(spec.mean[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(spec.max_abs_dev[0] == doctest::Approx(1.0).epsilon(1e-15));

  SUBCASE("constant column has zero deviation") {
    std::vector<FeatureVector> constant = {fv_with_length(5), fv_with_length(5)};
    NormalizationSpec s = fit_normalizer(constant);
    CHECK(s.mean[0] == 5.0);
    CHECK(s.max_abs_dev[0] == 0.0);
  }
  SUBCASE("two-point column") {
    std::vector<FeatureVector> two = {fv_with_length(0), fv_with_length(4)};
    NormalizationSpec s = fit_normalizer(two);
    CHECK(s.mean[0] == 2.0);
    CHECK(s.max_abs_dev[0] == 2.0);
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS_AS(fit_normalizer({}), std::invalid_argument);
  }
}

TEST_CASE("normalize maps the training column into [-1, 1] with mean 0") {
  std::vector<FeatureVector> fvs = {fv_with_length(1), fv_with_length(2),
                                    fv_with_length(3)};
  NormalizationSpec spec = fit_normalizer(fvs);
  CHECK(normalize(spec, fvs[0])[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(normalize(spec, fvs[1])[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(normalize(spec, fvs[2])[0] == doctest::Approx(1.0).epsilon(1e-15));

  SUBCASE("constant features map to zero") {
    std::vector<FeatureVector> constant = {fv_with_length(5), fv_with_length(5)};
    NormalizationSpec s = fit_normalizer(constant);
    CHECK(normalize(s, constant[0])[0] == 0.0);
  }
  SUBCASE("out-of-range inputs are not clamped") {
    CHECK(normalize(spec, fv_with_length(5))[0] ==
          doctest::Approx(3.0).epsilon(1e-15));
  }
}

TEST_CASE("fixture corpus satisfies the feature identities") {
  SentimentLexicon lex = load_swn_file(fixture("swn_fixture.txt"));
  Dataset ds = load_sst_dir(fixture("sst_fixture"));
  std::vector<FeatureVector> fvs = extract_all(lex, ds.train);
  REQUIRE(fvs.size() == ds.train.size());
  for (std::size_t i = 0; i < fvs.size(); ++i) {
    const FeatureVector& fv = fvs[i];
    CHECK(fv.length == static_cast<double>(ds.train[i].tokens.size()));
    CHECK(std::abs(fv.net_obj + fv.net_pos + fv.net_neg - fv.length) < 1e-9);
    CHECK(fv.abs_diff == std::abs(fv.net_pos - fv.net_neg));
    CHECK(fv.abs_diff <= std::max(fv.net_pos, fv.net_neg) + 1e-12);
    CHECK(std::max(fv.net_pos, fv.net_neg) <= fv.length + 1e-12);
    CHECK(fv.scaled_pos == fv.net_pos / fv.length);
    CHECK(fv.scaled_neg == fv.net_neg / fv.length);
    CHECK(fv.scaled_obj == fv.net_obj / fv.length);
    CHECK(fv.scaled_abs_diff == fv.abs_diff / fv.length);
  }
}

TEST_CASE("features are invariant to token order") {
  SentimentLexicon lex = load_swn_file(fixture("swn_fixture.txt"));
  Dataset ds = load_sst_dir(fixture("sst_fixture"));
  for (const Example& e : ds.train) {
    Example reversed = e;
    std::reverse(reversed.tokens.begin(), reversed.tokens.end());
    auto a = extract(lex, e).to_array();
    auto b = extract(lex, reversed).to_array();
    for (int k = 0; k < 9; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
  }
}

TEST_CASE("normalized training matrix is centered and bounded") {
  SentimentLexicon lex = load_swn_file(fixture("swn_fixture.txt"));
  Dataset ds = load_sst_dir(fixture("sst_fixture"));
  std::vector<FeatureVector> fvs = extract_all(lex, ds.train);
  NormalizationSpec spec = fit_normalizer(fvs);
  Eigen::MatrixXd m = normalized_matrix(spec, fvs);
  REQUIRE(m.rows() == static_cast<Eigen::Index>(fvs.size()));
  REQUIRE(m.cols() == 9);
  for (int c = 0; c < 9; ++c) {
    CHECK(std::abs(m.col(c).mean()) < 1e-9);
    CHECK(m.col(c).cwiseAbs().maxCoeff() <= 1.0 + 1e-9);
  }
}

TEST_CASE("empty sentence is rejected") {
  CHECK_THROWS_AS(extract(good_only_lexicon(), example_of({})),
                  std::invalid_argument);
}

TEST_CASE("csv export has the documented header and one row per example") {
  SentimentLexicon lex = good_only_lexicon();
  std::vector<FeatureVector> fvs =
      extract_all(lex, {example_of({"good"}), example_of({"zz", "qq"})});
  std::ostringstream out;
  write_features_csv(out, fvs);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "id,l,P,N,O,AD,P_l,N_l,O_l,AD_l");
  int rows = 0;
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
}

}  // TEST_SUITE
