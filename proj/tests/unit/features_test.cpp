#include "lowlight/features.hpp"

#include "oracles.hpp"
#include "synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <thread>

using namespace lowlight;

#ifndef LOWLIGHT_TEST_DATA_DIR
#error "LOWLIGHT_TEST_DATA_DIR must point at tests/data"
#endif

namespace {

ExtractorSpec tiny_model_spec(Pooling pooling = Pooling::Average) {
    ExtractorSpec spec;
    spec.kind = ExtractorKind::DeepModel;
    spec.model_path = std::filesystem::path(LOWLIGHT_TEST_DATA_DIR) / "tiny_trunk.onnx";
    spec.input_size = 32;
    spec.pooled_dim = 8;
    spec.pooling = pooling;
    return spec;
}

// 32x32 image with R = x/31, G = y/31, B = 0.25.
ImageBuffer ramp_image() {
    std::vector<double> data;
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
            data.push_back(x / 31.0);
            data.push_back(y / 31.0);
            data.push_back(0.25);
        }
    }
    return ImageBuffer(32, 32, std::move(data));
}

}  // namespace

TEST(Fallback, ConstantImage) {
    const auto f = extract_fallback(ImageBuffer::filled(20, 13, 0.3, 0.6, 0.9));
    ASSERT_EQ(f.values.size(), FallbackExtractor::kDimension);
    const double luma = 0.299 * 0.3 + 0.587 * 0.6 + 0.114 * 0.9;
    for (std::size_t i = 0; i < 256; ++i) {
        EXPECT_NEAR(f.values[i], luma, 1e-12) << i;
    }
    EXPECT_EQ(f.values[256], 1.0);
    for (std::size_t i = 257; i < 272; ++i) {
        EXPECT_EQ(f.values[i], 0.0);
    }
}

TEST(Fallback, CheckerboardBlocksAverage) {
    std::vector<double> data;
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
            const double v = (x + y) % 2 == 0 ? 1.0 : 0.0;
            data.insert(data.end(), {v, v, v});
        }
    }
    const auto f = extract_fallback(ImageBuffer(32, 32, std::move(data)));
    // Each 2x2 block holds two white and two black pixels.
    for (std::size_t i = 0; i < 256; ++i) {
        EXPECT_NEAR(f.values[i], 0.5, 1e-12);
    }
}

TEST(Fallback, MatchesBruteForceOracle) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> dim(1, 45);
    for (int trial = 0; trial < 40; ++trial) {
        const auto img = synthetic::random_image(dim(rng), dim(rng), rng);
        const auto got = extract_fallback(img).values;
        const auto want = oracle::fallback_features(img);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            ASSERT_NEAR(got[i], want[i], 1e-12) << "trial " << trial << " entry " << i << " size "
                                                << img.width() << "x" << img.height();
        }
    }
}

TEST(Fallback, Deterministic) {
    std::mt19937_64 rng(2);
    const auto img = synthetic::random_image(30, 20, rng);
    EXPECT_EQ(extract_fallback(img).values, extract_fallback(img).values);
}

TEST(FeatureDistance, MetricAxioms) {
    FeatureVector a{{0.0, 0.0}, "x"};
    FeatureVector b{{3.0, 4.0}, "x"};
    EXPECT_EQ(feature_distance(a, b), 5.0);
    EXPECT_EQ(feature_distance(b, b), 0.0);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        FeatureVector u{std::vector<double>(16), "x"}, v{std::vector<double>(16), "x"},
            w{std::vector<double>(16), "x"};
        for (std::size_t i = 0; i < 16; ++i) {
            u.values[i] = n(rng);
            v.values[i] = n(rng);
            w.values[i] = n(rng);
        }
        const double uv = feature_distance(u, v);
        EXPECT_GT(uv, 0.0);
        EXPECT_EQ(uv, feature_distance(v, u));
        EXPECT_LE(uv, feature_distance(u, w) + feature_distance(w, v) + 1e-12);
    }
}

TEST(FeatureDistance, RejectsIncomparableVectors) {
    EXPECT_THROW(feature_distance({{1.0}, "a"}, {{1.0}, "b"}), FeatureError);
    EXPECT_THROW(feature_distance({{1.0}, "a"}, {{1.0, 2.0}, "a"}), FeatureError);
}

TEST(ExtractorSpec, Validation) {
    ExtractorSpec spec;
    spec.kind = ExtractorKind::DeepModel;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.model_path = "model.onnx";
    EXPECT_NO_THROW(spec.validate());
    spec.pooled_dim = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(DeepExtractor, MissingOrCorruptModel) {
    ExtractorSpec spec = tiny_model_spec();
    spec.model_path = "/nonexistent/model.onnx";
    EXPECT_THROW(DeepExtractor{spec}, FeatureError);

    const auto bad = std::filesystem::temp_directory_path() / "lowlight_corrupt.onnx";
    {
        std::ofstream(bad) << "definitely not protobuf";
    }
    spec.model_path = bad;
    EXPECT_THROW(DeepExtractor{spec}, FeatureError);
}

TEST(DeepExtractor, OutputShapeMismatch) {
    ExtractorSpec spec = tiny_model_spec();
    spec.pooled_dim = 512;
    DeepExtractor extractor(spec);
    EXPECT_THROW(extractor.extract(ramp_image()), FeatureError);
}

// Reference values from running the same trunk in PyTorch on ramp_image().
TEST(DeepExtractor, MatchesReferenceRuntime) {
    const double avg[] = {0.0001836, 0.0589873, 0.2492519, 0.0460052,
                          0.0096110, 0.0412394, 0.0351247, 0.0851857};
    const double max[] = {0.0312182, 0.2590435, 0.5998449, 0.5073928,
                          0.1230425, 0.1913987, 0.3645157, 0.6003987};
    const auto img = ramp_image();
    const auto f_avg = DeepExtractor(tiny_model_spec(Pooling::Average)).extract(img);
    const auto f_max = DeepExtractor(tiny_model_spec(Pooling::Max)).extract(img);
    ASSERT_EQ(f_avg.values.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(f_avg.values[i], avg[i], 2e-6) << i;
        EXPECT_NEAR(f_max.values[i], max[i], 2e-6) << i;
    }
    EXPECT_NE(f_avg.extractor_id, f_max.extractor_id);
}

TEST(DeepExtractor, ResizesAndIsDeterministic) {
    std::mt19937_64 rng(4);
    const auto img = synthetic::random_image(45, 27, rng);
    const auto extractor = make_extractor(tiny_model_spec());
    const auto a = extractor->extract(img);
    const auto b = extractor->extract(img);
    EXPECT_EQ(a.values, b.values);
    for (double v : a.values) {
        EXPECT_TRUE(std::isfinite(v));
    }
    EXPECT_EQ(extract_deep(img, tiny_model_spec()).values, a.values);
}

TEST(DeepExtractor, ConcurrentCallsMatchSerial) {
    std::mt19937_64 rng(8);
    std::vector<ImageBuffer> images;
    for (int i = 0; i < 8; ++i) {
        images.push_back(synthetic::random_image(32, 32, rng));
    }
    const auto extractor = make_extractor(tiny_model_spec());
    std::vector<FeatureVector> serial;
    for (const auto& img : images) {
        serial.push_back(extractor->extract(img));
    }
    std::vector<FeatureVector> parallel(images.size());
    {
        std::vector<std::jthread> threads;
        for (std::size_t i = 0; i < images.size(); ++i) {
            threads.emplace_back([&, i] { parallel[i] = extractor->extract(images[i]); });
        }
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        EXPECT_EQ(parallel[i].values, serial[i].values);
    }
}
