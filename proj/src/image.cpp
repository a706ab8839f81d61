#include "lowlight/image.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace lowlight {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext;
}

std::uint8_t quantize(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::round(v * 255.0), 0.0, 255.0));
}

}  // namespace

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width_ == 0 || height_ == 0) {
        throw ImageError("image dimensions must be non-zero");
    }
    if (data_.size() != width_ * height_ * kChannels) {
        throw ImageError("pixel data length does not match width*height*3");
    }
    for (double v : data_) {
        // Negated form also rejects NaN.
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ImageError("pixel value outside [0,1]");
        }
    }
}

ImageBuffer ImageBuffer::filled(std::size_t width, std::size_t height, double r, double g, double b) {
    std::vector<double> data(width * height * kChannels);
    for (std::size_t i = 0; i < data.size(); i += kChannels) {
        data[i] = r;
        data[i + 1] = g;
        data[i + 2] = b;
    }
    return ImageBuffer(width, height, std::move(data));
}

ImageBuffer ImageBuffer::from_rgb8(std::size_t width, std::size_t height,
                                   std::span<const std::uint8_t> rgb) {
    std::vector<double> data(rgb.size());
    std::transform(rgb.begin(), rgb.end(), data.begin(),
                   [](std::uint8_t v) { return static_cast<double>(v) / 255.0; });
    return ImageBuffer(width, height, std::move(data));
}

std::vector<std::uint8_t> ImageBuffer::to_rgb8() const {
    std::vector<std::uint8_t> out(data_.size());
    std::transform(data_.begin(), data_.end(), out.begin(), quantize);
    return out;
}

bool is_supported_image(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

ImageBuffer load_image(const std::filesystem::path& path) {
    if (!is_supported_image(path)) {
        throw ImageError("unsupported image format: " + path.string());
    }
    // IMREAD_COLOR yields 8-bit BGR regardless of source depth or alpha.
    cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (bgr.empty()) {
        throw ImageError("cannot read image: " + path.string());
    }
    if (bgr.cols <= 0 || bgr.rows <= 0) {
        throw ImageError("zero-dimension image: " + path.string());
    }
    cv::Mat rgb;
    cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
    if (!rgb.isContinuous()) {
        rgb = rgb.clone();
    }
    const auto width = static_cast<std::size_t>(rgb.cols);
    const auto height = static_cast<std::size_t>(rgb.rows);
    return ImageBuffer::from_rgb8(width, height,
                                  std::span<const std::uint8_t>(rgb.ptr<std::uint8_t>(0),
                                                                width * height * 3));
}

void save_image(const ImageBuffer& img, const std::filesystem::path& path) {
    if (!is_supported_image(path)) {
        throw ImageError("unsupported image format: " + path.string());
    }
    std::vector<std::uint8_t> bytes = img.to_rgb8();
    cv::Mat rgb(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC3, bytes.data());
    cv::Mat bgr;
    cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), bgr);
    } catch (const cv::Exception& e) {
        throw ImageError("cannot write image " + path.string() + ": " + e.what());
    }
    if (!ok) {
        throw ImageError("cannot write image: " + path.string());
    }
}

GrayImage to_grayscale(const ImageBuffer& img) {
    GrayImage gray{img.width(), img.height(), std::vector<double>(img.pixel_count())};
    const auto data = img.data();
    for (std::size_t i = 0; i < gray.values.size(); ++i) {
        const double y = kLumaR * data[3 * i] + kLumaG * data[3 * i + 1] + kLumaB * data[3 * i + 2];
        // The weights sum to 1 only up to rounding.
        gray.values[i] = std::min(y, 1.0);
    }
    return gray;
}

GrayHistogram histogram256(const GrayImage& gray) {
    GrayHistogram hist;
    for (double y : gray.values) {
        const double level = std::floor(y * 255.0 + 0.5);
        const auto bin = static_cast<std::size_t>(std::clamp(level, 0.0, 255.0));
        ++hist.bins[bin];
    }
    hist.total = gray.values.size();
    return hist;
}

double shannon_entropy(const GrayHistogram& hist) {
    if (hist.total == 0) {
        throw std::invalid_argument("entropy of an empty histogram");
    }
    const double total = static_cast<double>(hist.total);
    double entropy = 0.0;
    for (std::uint64_t count : hist.bins) {
        if (count == 0) {
            continue;
        }
        const double p = static_cast<double>(count) / total;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

double mean_brightness(const ImageBuffer& img) {
    double sum = 0.0;
    for (double v : img.data()) {
        sum += v;
    }
    return sum / static_cast<double>(img.data().size());
}

double image_entropy(const ImageBuffer& img) {
    return shannon_entropy(histogram256(to_grayscale(img)));
}

}  // namespace lowlight
