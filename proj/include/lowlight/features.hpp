#pragma once

#include "lowlight/image.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowlight {

class FeatureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output of a feature extractor. Vectors from different extractors are not
/// comparable.
struct FeatureVector {
    std::vector<double> values;
    std::string extractor_id;
};

enum class ExtractorKind { DeepModel, Fallback };
enum class Pooling { Average, Max };

struct ExtractorSpec {
    ExtractorKind kind = ExtractorKind::Fallback;
    std::filesystem::path model_path;
    /// Side of the square network input.
    int input_size = 224;
    std::size_t pooled_dim = 512;
    Pooling pooling = Pooling::Average;
    // ImageNet channel statistics used by the torchvision VGG16 weights.
    std::array<double, 3> mean{0.485, 0.456, 0.406};
    std::array<double, 3> stddev{0.229, 0.224, 0.225};

    void validate() const;
};

/**
 * Maps an image to a fixed-length feature vector.
 *
 * Implementations must be callable concurrently from several threads and
 * return exactly what a serial call would.
 */
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;

    virtual FeatureVector extract(const ImageBuffer& img) const = 0;
    virtual std::size_t dimension() const noexcept = 0;
    virtual const std::string& id() const noexcept = 0;
};

/**
 * Model-free extractor, 272 values:
 *
 *  - [0, 256): BT.601 gray image area-averaged onto a 16x16 grid. Cell
 *    (row, col) covers the continuous rectangle
 *    [col*W/16, (col+1)*W/16) x [row*H/16, (row+1)*H/16); each pixel
 *    contributes its gray value times its overlap area with the cell,
 *    divided by the cell area. Row-major.
 *  - [256, 272): histogram of gradient magnitudes sqrt(gx^2 + gy^2) with
 *    forward differences gx = g(x+1,y) - g(x,y), gy = g(x,y+1) - g(x,y)
 *    (zero on the last column/row). Bin k collects magnitudes in
 *    [k/16, (k+1)/16), the last bin also everything >= 15/16. Counts are
 *    divided by the pixel count.
 */
class FallbackExtractor final : public FeatureExtractor {
public:
    static constexpr std::size_t kGrid = 16;
    static constexpr std::size_t kGradientBins = 16;
    static constexpr std::size_t kDimension = kGrid * kGrid + kGradientBins;

    FeatureVector extract(const ImageBuffer& img) const override;
    std::size_t dimension() const noexcept override { return kDimension; }
    const std::string& id() const noexcept override { return id_; }

private:
    std::string id_ = "fallback-grid16-grad16";
};

/**
 * ONNX-backed extractor (OpenCV DNN runtime).
 *
 * The model takes one float tensor 1x3xSxS (S = input_size, RGB, channel
 * normalized with spec.mean/spec.stddev) and yields either a 1xC vector or
 * a 1xCxhxw feature map, which is pooled per channel to 1x1. C must equal
 * spec.pooled_dim.
 */
class DeepExtractor final : public FeatureExtractor {
public:
    explicit DeepExtractor(const ExtractorSpec& spec);
    ~DeepExtractor() override;

    DeepExtractor(const DeepExtractor&) = delete;
    DeepExtractor& operator=(const DeepExtractor&) = delete;

    FeatureVector extract(const ImageBuffer& img) const override;
    std::size_t dimension() const noexcept override;
    const std::string& id() const noexcept override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::shared_ptr<const FeatureExtractor> make_extractor(const ExtractorSpec& spec);

FeatureVector extract_fallback(const ImageBuffer& img);

/// One-shot deep extraction; loads the model on every call.
FeatureVector extract_deep(const ImageBuffer& img, const ExtractorSpec& spec);

/// Euclidean distance. Throws FeatureError when the vectors come from
/// different extractors or differ in length.
double feature_distance(const FeatureVector& a, const FeatureVector& b);

}  // namespace lowlight
