#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace lowlight {

/// Raised for malformed images and unreadable or unwritable image files.
class ImageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * RGB image with normalized samples.
 *
 * Samples are doubles in [0,1], row-major, channel-interleaved (R,G,B).
 * The buffer is immutable once constructed; operators return new buffers.
 */
class ImageBuffer {
public:
    static constexpr std::size_t kChannels = 3;

    /// Throws ImageError on zero dimensions, a size mismatch, or any sample
    /// outside [0,1] (NaN included).
    ImageBuffer(std::size_t width, std::size_t height, std::vector<double> data);

    /// Uniform image where every pixel is (r, g, b).
    static ImageBuffer filled(std::size_t width, std::size_t height, double r, double g, double b);

    /// Builds from 8-bit RGB bytes, dividing each by 255.
    static ImageBuffer from_rgb8(std::size_t width, std::size_t height, std::span<const std::uint8_t> rgb);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }
    std::span<const double> data() const noexcept { return data_; }

    double at(std::size_t x, std::size_t y, std::size_t channel) const {
        return data_[(y * width_ + x) * kChannels + channel];
    }

    /// Quantizes every sample with round(v * 255).
    std::vector<std::uint8_t> to_rgb8() const;

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

/// Single-channel image in [0,1], row-major.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> values;

    double at(std::size_t x, std::size_t y) const { return values[y * width + x]; }
};

/// 256-bin histogram over quantized gray levels.
struct GrayHistogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

// BT.601 luma weights.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

/// Loads an 8-bit PNG, JPEG or BMP file as RGB. Alpha is dropped.
ImageBuffer load_image(const std::filesystem::path& path);

/// Writes with round(v*255) quantization. The format follows the extension.
void save_image(const ImageBuffer& img, const std::filesystem::path& path);

/// True for the extensions load_image accepts (case-insensitive).
bool is_supported_image(const std::filesystem::path& path);

GrayImage to_grayscale(const ImageBuffer& img);

/// Bin index is floor(y*255 + 0.5) clamped to [0,255].
GrayHistogram histogram256(const GrayImage& gray);

/// Shannon entropy in bits. Throws std::invalid_argument on an empty histogram.
double shannon_entropy(const GrayHistogram& hist);

/// Mean over every channel sample.
double mean_brightness(const ImageBuffer& img);

/// Convenience: entropy of the grayscale histogram of an RGB image.
double image_entropy(const ImageBuffer& img);

}  // namespace lowlight
