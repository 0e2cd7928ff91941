#include <cstring>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tweetpol/error.hpp"
#include "tweetpol/fileio.hpp"

using namespace tweetpol;

TEST_CASE("sha256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("hex floats round-trip exactly") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> values{0.0, -0.0, 1.0, -1.5, 1e-300, std::numeric_limits<double>::denorm_min(),
                             std::numeric_limits<double>::max()};
  for (int i = 0; i < 1000; ++i) values.push_back(u(gen) * std::pow(10.0, i % 40 - 20));
  for (double v : values) {
    const std::string text = to_hex_float(v);
    const double back = from_hex_float(text);
    CHECK(std::memcmp(&v, &back, sizeof v) == 0);
  }
  CHECK(from_hex_float("0x1p+0") == 1.0);
  CHECK_THROWS_AS(from_hex_float("1.0"), Error);
  CHECK_THROWS_AS(from_hex_float("0x1p+0junk"), Error);
}

TEST_CASE("atomic writes replace content and leave no temp files") {
  testing::TempDir dir;
  const auto p = dir / "out.txt";
  write_file_atomic(p, "first");
  write_file_atomic(p, "second");
  CHECK(testing::slurp(p) == "second");
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    (void)entry;
    ++files;
  }
  CHECK(files == 1);
  CHECK(sha256_file(p) == sha256_hex("second"));
  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x", "y"), Error);
}
