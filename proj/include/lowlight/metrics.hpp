#pragma once

#include "lowlight/enhance.hpp"
#include "lowlight/image.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lowlight {

/// PSNR in dB over all RGB samples on the 0..255 scale. Identical images
/// give +infinity. Throws std::invalid_argument on a size mismatch.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

struct SsimOptions {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 255.0;
};

/// Mean SSIM of the BT.601 luma planes (0..255 scale) over every position
/// where the Gaussian window fits entirely inside the image.
/// Throws std::invalid_argument on a size mismatch or an image smaller than
/// the window.
double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimOptions& opts = {});

struct MetricsReport {
    std::string image_id;
    double entropy_before = 0.0;
    double entropy_after = 0.0;
    double mean_brightness_before = 0.0;
    double mean_brightness_after = 0.0;
    std::optional<double> psnr;
    std::optional<double> ssim;
    EnhanceParams params;
    std::int64_t runtime_ms = 0;
    /// Scores computed by external tools (for example BRISQUE), merged by name.
    std::map<std::string, double> external_scores;
};

/// CSV column order.
const std::vector<std::string>& report_columns();

std::string report_csv_header();

/// One CSV row without a trailing newline. PSNR of identical images is
/// written as "identical"; absent reference metrics are empty fields.
std::string to_csv_row(const MetricsReport& report);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

}  // namespace lowlight
