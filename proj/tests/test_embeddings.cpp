#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "senticl/embeddings.hpp"
#include "senticl/errors.hpp"
#include "test_support.hpp"

using namespace senticl;
using senticl::testing::fixture;

TEST_SUITE("embeddings") {

TEST_CASE("parses a single line and infers the dimension") {
  std::istringstream in("the 0.1 0.2 0.3\n");
  EmbeddingTable table = parse_glove(in);
  CHECK(table.dimension() == 3);
  const Eigen::VectorXd* v = table.find("the");
  REQUIRE(v != nullptr);
  CHECK((*v)[0] == 0.1);
  CHECK((*v)[1] == 0.2);
  CHECK((*v)[2] == 0.3);
}

TEST_CASE("dimension mismatch is reported with the line number") {
  std::istringstream in("the 0.1 0.2 0.3\ncat 0.4 0.5\n");
  try {
    parse_glove(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("dimension mismatch") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("empty stream is an error") {
  std::istringstream in("");
  CHECK_THROWS_WITH_AS(parse_glove(in), doctest::Contains("no vectors"),
                       DataError);
}

TEST_CASE("first occurrence wins on case-fold collisions") {
  std::istringstream in("The 1 0\nthe 2 0\n");
  EmbeddingTable table = parse_glove(in);
  CHECK(table.size() == 1);
  REQUIRE(table.find("the") != nullptr);
  CHECK((*table.find("the"))[0] == 1.0);
}

TEST_CASE("golden fixture reproduces the file's numbers bit-for-bit") {
  EmbeddingTable table = load_glove_file(fixture("glove_fixture.txt"));
  CHECK(table.dimension() == 16);
  CHECK(table.size() == 76);
  const Eigen::VectorXd* the = table.find("the");
  REQUIRE(the != nullptr);
  // Literal values copied from the first fixture line; from_chars and the
  // compiler's literal conversion must agree exactly.
  const double expected[16] = {0.2779,  0.3276,  0.0274,  -0.5593,
                               0.4113,  0.3590,  0.1692,  -0.5295,
                               0.1014,  0.2355,  -0.4584, -0.4148,
                               -0.2904, -0.5528, -0.4392, 0.4765};
  for (int i = 0; i < 16; ++i) CHECK((*the)[i] == expected[i]);
  const Eigen::VectorXd* fun = table.find("fun");
  REQUIRE(fun != nullptr);
  CHECK((*fun)[0] == -0.2482);
  CHECK((*fun)[15] == 0.1904);
}

TEST_CASE("vocabulary filter restricts loading") {
  std::unordered_set<std::string> vocab{"the", "fun"};
  EmbeddingTable table =
      load_glove_file(fixture("glove_fixture.txt"), std::nullopt, &vocab);
  CHECK(table.size() == 2);
  CHECK(table.find("movie") == nullptr);
}

TEST_CASE("expected dimension is enforced") {
  std::istringstream in("the 0.1 0.2 0.3\n");
  CHECK_THROWS_AS(parse_glove(in, 5), ParseError);
}

TEST_CASE("embed_sequence pads and truncates") {
  std::istringstream in("the 0.1 0.2 0.3\n");
  EmbeddingTable table = parse_glove(in);

  SUBCASE("short sentence pads with zeros") {
    EmbeddedSentence s = embed_sequence(table, std::vector<std::string>{"the"}, 2);
    CHECK(s.valid_length == 1);
    REQUIRE(s.rows.rows() == 2);
    REQUIRE(s.rows.cols() == 3);
    CHECK(s.rows(0, 0) == 0.1);
    CHECK(s.rows(0, 2) == 0.3);
    CHECK(s.rows(1, 0) == 0.0);
    CHECK(s.rows(1, 2) == 0.0);
  }
  SUBCASE("long sentence truncates to max_len") {
    std::vector<std::string> tokens(60, "the");
    EmbeddedSentence s = embed_sequence(table, tokens, 50);
    CHECK(s.valid_length == 50);
    CHECK(s.rows.rows() == 50);
  }
  SUBCASE("output shape is always max_len x dimension") {
    for (int n : {0, 1, 3, 7}) {
      std::vector<std::string> tokens(static_cast<std::size_t>(n), "the");
      EmbeddedSentence s = embed_sequence(table, tokens, 5);
      CHECK(s.rows.rows() == 5);
      CHECK(s.rows.cols() == 3);
      CHECK(s.valid_length == std::min(n, 5));
    }
  }
}

TEST_CASE("oov policies") {
  std::istringstream in("the 0.1 0.2 0.3\n");
  EmbeddingTable table = parse_glove(in);

  SUBCASE("zero policy gives a zero row") {
    EmbeddedSentence s =
        embed_sequence(table, std::vector<std::string>{"zzz"}, 1);
    CHECK(s.rows.row(0).norm() == 0.0);
  }
  SUBCASE("hash_uniform is deterministic per word and nonzero") {
    table.set_oov_policy(OovPolicy::hash_uniform);
    Eigen::VectorXd a = table.oov_vector("zzz");
    Eigen::VectorXd b = table.oov_vector("zzz");
    Eigen::VectorXd c = table.oov_vector("qqq");
    CHECK(a == b);
    CHECK(a.norm() > 0.0);
    CHECK(a != c);
  }
}

TEST_CASE("mean_pool") {
  Eigen::MatrixXd rows(2, 2);
  rows << 2, 0, 0, 2;

  SUBCASE("averages the valid rows") {
    Eigen::VectorXd m = mean_pool(rows, 2);
    CHECK(m[0] == doctest::Approx(1.0));
    CHECK(m[1] == doctest::Approx(1.0));
  }
  SUBCASE("valid_length 1 returns the first row") {
    Eigen::VectorXd m = mean_pool(rows, 1);
    CHECK(m[0] == 2.0);
    CHECK(m[1] == 0.0);
  }
  SUBCASE("valid_length 0 is an error") {
    CHECK_THROWS_WITH_AS(mean_pool(rows, 0), doctest::Contains("empty sentence"),
                         std::invalid_argument);
  }
  SUBCASE("permutation invariance") {
    Eigen::MatrixXd swapped(2, 2);
    swapped << 0, 2, 2, 0;
    CHECK(mean_pool(rows, 2) == mean_pool(swapped, 2));
  }
}

TEST_CASE("embed_valid returns exactly the valid rows") {
  std::istringstream in("the 0.1 0.2 0.3\n");
  EmbeddingTable table = parse_glove(in);
  Eigen::MatrixXd rows =
      embed_valid(table, std::vector<std::string>{"the", "the", "the"}, 2);
  CHECK(rows.rows() == 2);
  CHECK(rows.cols() == 3);
}

}  // TEST_SUITE
