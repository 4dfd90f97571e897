#include <gtest/gtest.h>

#include <random>

#include "flicker/image_io.hpp"
#include "flicker/reducer.hpp"
#include "flicker/synth.hpp"
#include "oracles.hpp"

namespace flicker {
namespace {

Frame solid(PaletteColor c, std::size_t w, std::size_t h) { return Frame(w, h, palette_code(c)); }

Frame random_frame(std::mt19937& rng, std::size_t w, std::size_t h) {
  std::uniform_int_distribution<int> byte(0, 255);
  Frame f(w, h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = rgb_from_bytes(static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                          static_cast<std::uint8_t>(byte(rng)));
  }
  return f;
}

TEST(MeanPixel, Examples) {
  EXPECT_EQ(mean_pixel({1, 0, 0}, {0, 0, 1}), (Rgb{0.5, 0, 0.5}));
  EXPECT_EQ(mean_pixel({0.3, 0.7, 0.1}, {0.3, 0.7, 0.1}), (Rgb{0.3, 0.7, 0.1}));
  EXPECT_EQ(mean_pixel(palette_code(PaletteColor::Black), palette_code(PaletteColor::White)),
            (Rgb{0.5, 0.5, 0.5}));
}

TEST(MeanPixel, CommutativeValidIdempotent) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 10000; ++k) {
    const Rgb a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
    EXPECT_EQ(mean_pixel(a, b), mean_pixel(b, a));
    EXPECT_TRUE(is_valid(mean_pixel(a, b)));
    EXPECT_EQ(mean_pixel(a, a), a);
  }
}

TEST(ReconstructFrame, Examples) {
  std::mt19937 rng(8);
  const auto a = random_frame(rng, 6, 5);
  const auto b = random_frame(rng, 6, 5);
  EXPECT_EQ(reconstruct_frame(a, b, FlickerMap(6, 5)).frame, a);

  FlickerMap all(3, 2);
  std::fill(all.flags.begin(), all.flags.end(), std::uint8_t{1});
  const auto grey = reconstruct_frame(solid(PaletteColor::Black, 3, 2), solid(PaletteColor::White, 3, 2), all);
  EXPECT_EQ(grey.frame, Frame(3, 2, Rgb{0.5, 0.5, 0.5}));

  FlickerMap one(6, 5, 4);
  one.set(17);
  const auto r = reconstruct_frame(a, b, one);
  Frame expected = a;
  expected[17] = mean_pixel(a[17], b[17]);
  EXPECT_EQ(r.frame, expected);
  EXPECT_EQ(r.source_pair, 4U);
  EXPECT_EQ(r.mask, one);
}

TEST(ReconstructFrame, FullMeanAveragesEverything) {
  std::mt19937 rng(12);
  const auto a = random_frame(rng, 4, 4);
  const auto b = random_frame(rng, 4, 4);
  const auto r = reconstruct_frame(a, b, FlickerMap(4, 4), true);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(r.frame[i], mean_pixel(a[i], b[i]));
}

TEST(ReconstructFrame, DimensionMismatch) {
  EXPECT_THROW(reconstruct_frame(Frame(2, 2), Frame(2, 3), FlickerMap(2, 2)), InputError);
  EXPECT_THROW(reconstruct_frame(Frame(2, 2), Frame(2, 2), FlickerMap(3, 2)), InputError);
}

TEST(ReconstructFrame, MatchesNaiveReconstruction) {
  std::mt19937 rng(21);
  for (std::size_t w = 1; w <= 8; ++w)
    for (std::size_t h = 1; h <= 8; ++h) {
      const auto a = random_frame(rng, w, h);
      const auto b = random_frame(rng, w, h);
      const auto flags = oracle::naive_detect(a, b, kDefaultThreshold);
      const auto map = compare_frames(a, b);
      EXPECT_EQ(reconstruct_frame(a, b, map).frame, oracle::naive_reconstruct(a, b, flags));
    }
}

TEST(InsertFrames, Examples) {
  std::mt19937 rng(30);
  const auto a = solid(PaletteColor::Black, 4, 4);
  auto b = a;
  b[5] = palette_code(PaletteColor::White);

  FrameSequence clean{{a, a, a}};
  const auto clean_maps = detect_sequence(clean).maps;
  EXPECT_EQ(insert_frames(clean, clean_maps).frames, clean.frames);

  FrameSequence two{{a, b}};
  auto out = insert_frames(two, detect_sequence(two).maps);
  ASSERT_EQ(out.size(), 3U);
  EXPECT_EQ(out[0], a);
  EXPECT_EQ(out[2], b);
  EXPECT_EQ(out[1][5], (Rgb{0.5, 0.5, 0.5}));
  EXPECT_EQ(out[1][4], a[4]);

  FrameSequence three{{a, b, b}};
  EXPECT_EQ(insert_frames(three, detect_sequence(three).maps).size(), 4U);
}

TEST(InsertFrames, LengthAndOriginalsPreserved) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    FrameSequence seq;
    const int n = 2 + trial % 6;
    for (int k = 0; k < n; ++k) {
      seq.frames.push_back(trial % 3 == 0 && k % 2 ? seq.frames.back() : random_frame(rng, 5, 3));
    }
    const auto maps = detect_sequence(seq).maps;
    std::size_t flagged_pairs = 0;
    for (const auto& m : maps) flagged_pairs += m.any() ? 1 : 0;
    const auto out = insert_frames(seq, maps);
    ASSERT_EQ(out.size(), seq.size() + flagged_pairs);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      EXPECT_EQ(encode_ppm(out[pos]), encode_ppm(seq[k]));
      pos += 1 + (k < maps.size() && maps[k].any() ? 1 : 0);
    }
  }
}

TEST(InsertFrames, ReplaceModeKeepsLength) {
  const auto a = solid(PaletteColor::Black, 3, 3);
  auto b = a;
  b[4] = palette_code(PaletteColor::White);
  FrameSequence seq{{a, b, a}};
  const auto maps = detect_sequence(seq).maps;
  const auto out = insert_frames(seq, maps, {ReduceMode::replace});
  ASSERT_EQ(out.size(), 3U);
  EXPECT_EQ(out[0], a);
  EXPECT_EQ(out[1][4], (Rgb{0.5, 0.5, 0.5}));
  // Pair (b, a) flags pixel 4 as well; mean of the originals is the same grey.
  EXPECT_EQ(out[2][4], (Rgb{0.5, 0.5, 0.5}));
}

TEST(InsertFrames, MapMismatch) {
  FrameSequence seq{{Frame(2, 2), Frame(2, 2), Frame(2, 2)}};
  EXPECT_THROW(insert_frames(seq, {FlickerMap(2, 2)}), InputError);
  EXPECT_THROW(insert_frames(seq, {FlickerMap(2, 2), FlickerMap(3, 2)}), InputError);
}

TEST(HalvingInvariant, ExactInMemoryWithinOneByteAfterExport) {
  std::mt19937 rng(40);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_frame(rng, 9, 9);
    const auto b = random_frame(rng, 9, 9);
    const auto map = compare_frames(a, b);
    const auto r = reconstruct_frame(a, b, map).frame;
    const auto exported = decode_ppm(encode_ppm(r));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!map.flags[i]) continue;
      const double ch_a[] = {a[i].r, a[i].g, a[i].b};
      const double ch_b[] = {b[i].r, b[i].g, b[i].b};
      const double ch_r[] = {r[i].r, r[i].g, r[i].b};
      const double ch_e[] = {exported[i].r, exported[i].g, exported[i].b};
      for (int c = 0; c < 3; ++c) {
        const double half = std::abs(ch_b[c] - ch_a[c]) / 2.0;
        EXPECT_NEAR(std::abs(ch_r[c] - ch_a[c]), half, 1e-15);
        EXPECT_NEAR(std::abs(ch_r[c] - ch_b[c]), half, 1e-15);
        EXPECT_LE(std::abs(std::abs(ch_e[c] - ch_a[c]) - half), 1.0 / 255.0 + 1e-12);
      }
    }
  }
}

TEST(ReductionReport, NoFlags) {
  FrameSequence seq{{solid(PaletteColor::Cyan, 4, 4), solid(PaletteColor::Cyan, 4, 4)}};
  const auto out = insert_frames(seq, detect_sequence(seq).maps);
  const auto r = reduction_report(seq, out);
  EXPECT_EQ(r.before_ratio, 0.0);
  EXPECT_EQ(r.after_ratio, 0.0);
  EXPECT_EQ(r.percent_reduction, 0.0);
  EXPECT_EQ(r.flagged_pairs, 0U);
}

TEST(ReductionReport, SinglePixelBlackWhiteStepHalves) {
  const auto a = solid(PaletteColor::Black, 5, 5);
  auto b = a;
  b[12] = palette_code(PaletteColor::White);
  FrameSequence seq{{a, b}};
  const auto out = insert_frames(seq, detect_sequence(seq).maps);
  const auto r = reduction_report(seq, out);
  EXPECT_EQ(r.max_step_before, 1.0);
  EXPECT_EQ(r.max_step_after, 0.5);
  EXPECT_EQ(r.frames_after, 3U);
  EXPECT_EQ(r.flagged_pairs, 1U);
}

TEST(ReductionReport, SyntheticInjection) {
  InjectionSpec spec;  // 100x100, 10 frames, 6% Black/White
  const auto s = generate(spec);
  const auto det = detect_sequence(s.sequence);
  const auto out = insert_frames(s.sequence, det.maps);
  const auto r = reduction_report(s.sequence, out);
  EXPECT_EQ(r.before_ratio, 0.06);
  // Oracle: re-detect the output directly.
  EXPECT_EQ(r.after_ratio, detect_sequence(out).report.aggregate_ratio);
  EXPECT_DOUBLE_EQ(r.percent_reduction, 100.0 * (0.06 - r.after_ratio) / 0.06);
  EXPECT_LT(r.after_ratio, r.before_ratio);
  EXPECT_EQ(r.max_step_before, 1.0);
  EXPECT_EQ(r.max_step_after, 0.5);
}

TEST(ReductionReport, ReplaceModeAndMismatch) {
  const auto a = solid(PaletteColor::Black, 3, 3);
  auto b = a;
  b[0] = palette_code(PaletteColor::White);
  FrameSequence seq{{a, b}};
  const auto det = detect_sequence(seq);
  const auto replaced = insert_frames(seq, det.maps, {ReduceMode::replace});
  const auto r = reduction_report(seq, replaced, {}, ReduceMode::replace);
  EXPECT_EQ(r.max_step_after, 0.5);
  EXPECT_THROW(reduction_report(seq, replaced, {}, ReduceMode::insert), InputError);
}

TEST(ReductionReport, StepsNeverGrowAtFlaggedLocations) {
  std::mt19937 rng(50);
  for (int trial = 0; trial < 20; ++trial) {
    FrameSequence seq;
    for (int k = 0; k < 4; ++k) seq.frames.push_back(random_frame(rng, 6, 6));
    const auto out = insert_frames(seq, detect_sequence(seq).maps);
    const auto r = reduction_report(seq, out);
    EXPECT_LE(r.max_step_after, r.max_step_before);
  }
}

}  // namespace
}  // namespace flicker
