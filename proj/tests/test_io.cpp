/* Copyright 2026 The skeatopo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "skeatopo/io.hpp"
#include "support.hpp"

using namespace skeatopo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "skeatopo_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Png, MaskRoundTrip) {
  std::mt19937 rng(1);
  const BinaryMask m = support::random_mask(rng, 37, 19, 0.4);
  const fs::path p = scratch("mask.png");
  io::write_mask(p, m);
  EXPECT_EQ(io::read_mask(p), m);
}

TEST(Png, AnyNonZeroGrayIsBoundary) {
  const fs::path p = scratch("gray.png");
  io::detail::write_gray_png(p, 3, 1, 8, {0, 1, 200});
  const BinaryMask m = io::read_mask(p);
  EXPECT_EQ(m[0], 0);
  EXPECT_EQ(m[1], 1);
  EXPECT_EQ(m[2], 1);
}

TEST(Png, LabelRoundTripUses16Bits) {
  LabelMap l(5, 4);
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<std::int32_t>(i * 3000);
  const fs::path p = scratch("labels.png");
  io::write_labels(p, l);
  EXPECT_EQ(io::read_labels(p), l);
  l[0] = 70000;
  EXPECT_THROW(io::write_labels(p, l), Error);
}

TEST(Png, GarbageIsRejected) {
  const fs::path p = scratch("garbage.png");
  std::ofstream(p) << "definitely not a png";
  EXPECT_THROW(io::read_mask(p), Error);
  EXPECT_THROW(io::read_mask(scratch("missing.png")), Error);
}

TEST(Fras, RoundTripIsBitExact) {
  ScalarField a(4, 3), b(4, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<float>(0.1 * i);
    b[i] = static_cast<float>(-1.0 / (i + 1));
  }
  const fs::path p = scratch("two.fras");
  io::write_fras(p, io::to_fras({&a, &b}));
  const io::FloatRaster r = io::read_fras(p);
  EXPECT_EQ(r.channels, 2u);
  EXPECT_EQ(r.channel(0), a);
  EXPECT_EQ(r.channel(1), b);
  EXPECT_EQ(fs::file_size(p), 16u + 4u * 24u);
}

TEST(Fras, HeaderLayout) {
  const fs::path p = scratch("one.fras");
  io::write_field(p, ScalarField(2, 1, 1.0));
  std::ifstream is(p, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), {});
  const std::vector<unsigned char> want{'F', 'R', 'A', 'S', 2, 0, 0, 0, 1, 0, 0, 0,
                                        1, 0, 0, 0, 0, 0, 0x80, 0x3F, 0, 0, 0x80, 0x3F};
  EXPECT_EQ(bytes, want);
}

TEST(Fras, TruncatedOrForeignFilesAreRejected) {
  const fs::path p = scratch("short.fras");
  io::write_field(p, ScalarField(3, 3, 0.5));
  fs::resize_file(p, fs::file_size(p) - 4);
  EXPECT_THROW(io::read_fras(p), Error);
  std::ofstream(p, std::ios::binary) << "RAST";
  EXPECT_THROW(io::read_fras(p), Error);
}

TEST(Fras, ProbabilitiesFromOneOrTwoChannels) {
  ScalarField p1(3, 2, 0.25);
  const fs::path one = scratch("p1.fras");
  io::write_field(one, p1);
  const ProbabilityPair a = io::read_probabilities(one);
  EXPECT_EQ(a.p0[0], 0.75);

  ScalarField p0(3, 2, 0.75);
  const fs::path two = scratch("p01.fras");
  io::write_fras(two, io::to_fras({&p0, &p1}));
  const ProbabilityPair b = io::read_probabilities(two);
  EXPECT_EQ(b.p1, p1);

  ScalarField bad(3, 2, 0.9);
  io::write_fras(two, io::to_fras({&bad, &p1}));
  EXPECT_THROW(io::read_probabilities(two), Error);
}

TEST(Json, NineSignificantDigits) {
  EXPECT_EQ(io::json_number(0.1234567891234), 0.123456789);
  EXPECT_EQ(io::json_number(2.0), 2.0);
  EXPECT_THROW(io::json_number(std::nan("")), Error);
}

TEST(Json, MetricReportFieldNames) {
  const auto j = io::to_json(MetricReport{});
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"vi_split", "vi_merge", "vi", "ari", "map",
                                            "betti_error", "dice"}));
}

TEST(Json, SynthSpecRoundTrip) {
  SynthSpec s;
  s.width = 80;
  s.seed = 12345678901234ull;
  s.kind = SynthKind::lattice;
  s.errors = {{ErrorType::thicken, 2}};
  const SynthSpec back = io::synth_spec_from_json(nlohmann::json::parse(io::to_json(s).dump()));
  EXPECT_EQ(io::to_json(back), io::to_json(s));
  EXPECT_THROW(io::synth_spec_from_json(nlohmann::json{{"width", 3}}), Error);
}
