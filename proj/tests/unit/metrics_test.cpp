#include "lowlight/metrics.hpp"

#include "oracles.hpp"
#include "synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lowlight;

namespace {

ImageBuffer grey(std::size_t w, std::size_t h, double v) { return ImageBuffer::filled(w, h, v, v, v); }

}  // namespace

TEST(Psnr, IdenticalIsInfinite) {
    std::mt19937_64 rng(1);
    const auto img = synthetic::random_image8(8, 8, rng);
    EXPECT_TRUE(std::isinf(psnr(img, img)));
}

TEST(Psnr, UniformOffsetOfOneLevel) {
    const auto a = grey(16, 16, 100.0 / 255.0);
    const auto b = grey(16, 16, 101.0 / 255.0);
    EXPECT_NEAR(psnr(a, b), 20.0 * std::log10(255.0), 1e-9);
}

TEST(Psnr, SizeMismatchThrows) {
    EXPECT_THROW(psnr(grey(4, 4, 0.1), grey(4, 5, 0.1)), std::invalid_argument);
}

TEST(Ssim, IdenticalIsOne) {
    std::mt19937_64 rng(2);
    const auto img = synthetic::random_image8(20, 17, rng);
    EXPECT_EQ(ssim(img, img), 1.0);
}

TEST(Ssim, MatchesWindowedOracle) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const auto a = synthetic::random_image8(24, 19, rng);
        const auto b = synthetic::random_image8(24, 19, rng);
        EXPECT_NEAR(ssim(a, b), oracle::ssim_windowed(a, b), 1e-6);
    }
}

TEST(Ssim, RejectsSmallImages) {
    EXPECT_THROW(ssim(grey(10, 30, 0.2), grey(10, 30, 0.2)),
                 std::invalid_argument);
}

TEST(Report, CsvLayout) {
    EXPECT_EQ(report_csv_header(),
              "image_id,entropy_before,entropy_after,brightness_before,brightness_after,b,c,gamma,psnr,ssim,"
              "runtime_ms");
    MetricsReport r;
    r.image_id = "a/b.png";
    r.entropy_before = 3.5;
    r.entropy_after = 3.5;
    r.mean_brightness_before = 0.1;
    r.mean_brightness_after = 0.4;
    r.params = {12.5, 1.25, 1.5};
    r.runtime_ms = 42;
    EXPECT_EQ(to_csv_row(r), "a/b.png,3.5,3.5,0.1,0.4,12.5,1.25,1.5,,,42");
    r.psnr = std::numeric_limits<double>::infinity();
    r.ssim = 1.0;
    EXPECT_EQ(to_csv_row(r), "a/b.png,3.5,3.5,0.1,0.4,12.5,1.25,1.5,identical,1,42");
}

TEST(Report, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 48.130803608679102, -7.25, 1e-12}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(Metrics, Symmetric) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 5; ++i) {
        const auto a = synthetic::random_image8(16, 16, rng);
        const auto b = synthetic::random_image8(16, 16, rng);
        EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
        EXPECT_EQ(psnr(a, b), psnr(b, a));
    }
}

TEST(Psnr, BlackVersusWhiteIsZero) {
    EXPECT_DOUBLE_EQ(psnr(grey(8, 8, 0.0), grey(8, 8, 1.0)), 0.0);
}
