#include <doctest.h>

#include <string>
#include <vector>

#include "qbek/errors.hpp"
#include "qbek/normalizer.hpp"

using namespace qbek;

TEST_CASE("keyphrase normalization lowercases, stems and collapses spaces") {
  PorterNormalizer porter;
  CHECK(normalize_keyphrase("Neural  Networks", porter) == "neural network");
  CHECK(normalize_keyphrase("GPU", porter) == "gpu");
  CHECK(normalize_keyphrase("", porter) == "");
  CHECK(normalize_keyphrase("   ", porter) == "");
  CHECK(normalize_keyphrase("\tdeep   learning\n", porter) == "deep learn");
}

TEST_CASE("hyphens act as token separators") {
  PorterNormalizer porter;
  CHECK(normalize_keyphrase("state-of-the-art", porter) ==
        normalize_keyphrase("state of the art", porter));
  CHECK(normalize_keyphrase("spin\xe2\x80\x90orbit", porter) ==  // U+2010 hyphen
        normalize_keyphrase("spin orbit", porter));
}

TEST_CASE("edge punctuation is stripped but interior punctuation kept") {
  PorterNormalizer porter;
  CHECK(normalize_keyphrase("networks,", porter) == "network");
  CHECK(normalize_keyphrase("\"quoted phrase\"", porter) == "quot phrase");
  CHECK(normalize_keyphrase("(3.5)", porter) == "3.5");
  CHECK(normalize_keyphrase("... !!", porter) == "");
}

TEST_CASE("normalization is idempotent on its own output") {
  PorterNormalizer porter;
  for (const char* p : {"Neural  Networks", "state-of-the-art", "GPU", "sky diving",
                        "graph structures", "automating", "querying indexes"}) {
    std::string once = normalize_keyphrase(p, porter);
    CHECK(normalize_keyphrase(once, porter) == once);
  }
}

TEST_CASE("identity normalizer keeps tokens as written") {
  IdentityNormalizer id;
  CHECK(normalize_keyphrase("Neural  Networks", id) == "neural networks");
}

TEST_CASE("factory resolves names and rejects unknown ones") {
  CHECK(make_normalizer("porter")->name() == "porter");
  CHECK(make_normalizer("identity")->name() == "identity");
  CHECK(make_normalizer("external:cat")->name() == "external:cat");
  CHECK_THROWS_AS(make_normalizer("snowball"), ConfigError);
  CHECK_THROWS_AS(make_normalizer("external:"), ConfigError);
}

TEST_CASE("external normalizer speaks the line protocol") {
  ExternalCommandNormalizer upper("tr 'a-z' 'A-Z'");
  std::vector<std::string> out = upper.normalize_batch({"alpha", "beta"});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == "ALPHA");
  CHECK(out[1] == "BETA");
  CHECK(normalize_keyphrase("Alpha Beta", upper) == "ALPHA BETA");
}

TEST_CASE("external normalizer failures are reported") {
  ExternalCommandNormalizer failing("false");
  CHECK_THROWS_AS(failing.normalize("x"), ExternalNormalizerFailure);
  ExternalCommandNormalizer miscounting("head -n 1");
  CHECK_THROWS_AS(miscounting.normalize_batch({"a", "b"}), ExternalNormalizerFailure);
  ExternalCommandNormalizer missing("/nonexistent/binary-xyz");
  CHECK_THROWS_AS(missing.normalize("x"), ExternalNormalizerFailure);
}
