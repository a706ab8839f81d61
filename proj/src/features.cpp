#include "lowlight/features.hpp"

#include <opencv2/core.hpp>
#include <opencv2/dnn.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace lowlight {

namespace {

// Overlap lengths between unit pixels and grid cells along one axis, in
// units of 1/kGrid pixel. Pixel p spans [kGrid*p, kGrid*p + kGrid) and cell k
// spans [k*length, (k+1)*length) on that scale, so all overlaps are integers.
std::vector<std::vector<std::size_t>> axis_overlaps(std::size_t length, std::size_t grid) {
    std::vector<std::vector<std::size_t>> overlaps(grid, std::vector<std::size_t>(length, 0));
    for (std::size_t k = 0; k < grid; ++k) {
        const std::size_t cell_lo = k * length;
        const std::size_t cell_hi = (k + 1) * length;
        for (std::size_t p = 0; p < length; ++p) {
            const std::size_t lo = std::max(cell_lo, grid * p);
            const std::size_t hi = std::min(cell_hi, grid * p + grid);
            overlaps[k][p] = hi > lo ? hi - lo : 0;
        }
    }
    return overlaps;
}

}  // namespace

void ExtractorSpec::validate() const {
    if (pooled_dim == 0) {
        throw std::invalid_argument("pooled_dim must be positive");
    }
    if (kind == ExtractorKind::DeepModel) {
        if (model_path.empty()) {
            throw std::invalid_argument("deep extractor requires a model path");
        }
        if (input_size <= 0) {
            throw std::invalid_argument("input_size must be positive");
        }
        for (double s : stddev) {
            if (!(s > 0.0)) {
                throw std::invalid_argument("normalization stddev must be positive");
            }
        }
    }
}

FeatureVector FallbackExtractor::extract(const ImageBuffer& img) const {
    const GrayImage gray = to_grayscale(img);
    const std::size_t w = gray.width;
    const std::size_t h = gray.height;

    FeatureVector out{std::vector<double>(kDimension, 0.0), id_};

    const auto ox = axis_overlaps(w, kGrid);
    const auto oy = axis_overlaps(h, kGrid);
    const double cell_area = static_cast<double>(w) * static_cast<double>(h);
    // Row pass then column pass; the weights are separable.
    std::vector<double> rows(kGrid * w, 0.0);
    for (std::size_t r = 0; r < kGrid; ++r) {
        for (std::size_t y = 0; y < h; ++y) {
            if (oy[r][y] == 0) {
                continue;
            }
            const double wy = static_cast<double>(oy[r][y]);
            for (std::size_t x = 0; x < w; ++x) {
                rows[r * w + x] += wy * gray.at(x, y);
            }
        }
    }
    for (std::size_t r = 0; r < kGrid; ++r) {
        for (std::size_t col = 0; col < kGrid; ++col) {
            double acc = 0.0;
            for (std::size_t x = 0; x < w; ++x) {
                acc += static_cast<double>(ox[col][x]) * rows[r * w + x];
            }
            out.values[r * kGrid + col] = acc / cell_area;
        }
    }

    auto& grad = out.values;
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double g = gray.at(x, y);
            const double gx = x + 1 < w ? gray.at(x + 1, y) - g : 0.0;
            const double gy = y + 1 < h ? gray.at(x, y + 1) - g : 0.0;
            const double mag = std::sqrt(gx * gx + gy * gy);
            const auto bin = std::min(kGradientBins - 1,
                                      static_cast<std::size_t>(std::floor(mag * kGradientBins)));
            grad[kGrid * kGrid + bin] += 1.0;
        }
    }
    const double pixels = static_cast<double>(w * h);
    for (std::size_t k = 0; k < kGradientBins; ++k) {
        grad[kGrid * kGrid + k] /= pixels;
    }
    return out;
}

struct DeepExtractor::Impl {
    ExtractorSpec spec;
    std::string id;
    mutable std::mutex mutex;
    mutable cv::dnn::Net net;
};

DeepExtractor::DeepExtractor(const ExtractorSpec& spec) : impl_(std::make_unique<Impl>()) {
    spec.validate();
    if (spec.kind != ExtractorKind::DeepModel) {
        throw std::invalid_argument("DeepExtractor needs a deep-model spec");
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(spec.model_path, ec)) {
        throw FeatureError("model file not found: " + spec.model_path.string());
    }
    impl_->spec = spec;
    try {
        impl_->net = cv::dnn::readNetFromONNX(spec.model_path.string());
    } catch (const cv::Exception& e) {
        throw FeatureError("cannot load model " + spec.model_path.string() + ": " + e.what());
    }
    if (impl_->net.empty()) {
        throw FeatureError("model has no layers: " + spec.model_path.string());
    }
    impl_->net.setPreferableBackend(cv::dnn::DNN_BACKEND_OPENCV);
    impl_->net.setPreferableTarget(cv::dnn::DNN_TARGET_CPU);
    impl_->id = "onnx:" + spec.model_path.filename().string() + ":" +
                std::to_string(spec.input_size) + ":" +
                (spec.pooling == Pooling::Average ? "avg" : "max");
}

DeepExtractor::~DeepExtractor() = default;

std::size_t DeepExtractor::dimension() const noexcept { return impl_->spec.pooled_dim; }

const std::string& DeepExtractor::id() const noexcept { return impl_->id; }

FeatureVector DeepExtractor::extract(const ImageBuffer& img) const {
    const ExtractorSpec& spec = impl_->spec;
    const int side = spec.input_size;

    cv::Mat rgb(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_32FC3);
    const auto data = img.data();
    for (int y = 0; y < rgb.rows; ++y) {
        auto* row = rgb.ptr<float>(y);
        for (std::size_t i = 0; i < img.width() * 3; ++i) {
            row[i] = static_cast<float>(data[static_cast<std::size_t>(y) * img.width() * 3 + i]);
        }
    }
    cv::Mat resized;
    if (rgb.cols == side && rgb.rows == side) {
        resized = rgb;
    } else {
        cv::resize(rgb, resized, cv::Size(side, side), 0.0, 0.0, cv::INTER_LINEAR);
    }

    const int blob_shape[] = {1, 3, side, side};
    cv::Mat blob(4, blob_shape, CV_32F);
    auto* dst = blob.ptr<float>();
    const std::size_t plane = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
    for (int y = 0; y < side; ++y) {
        const auto* row = resized.ptr<float>(y);
        for (int x = 0; x < side; ++x) {
            for (std::size_t ch = 0; ch < 3; ++ch) {
                const double v = (row[x * 3 + static_cast<int>(ch)] - spec.mean[ch]) / spec.stddev[ch];
                dst[ch * plane + static_cast<std::size_t>(y) * side + x] = static_cast<float>(v);
            }
        }
    }

    cv::Mat output;
    {
        std::lock_guard lock(impl_->mutex);
        try {
            impl_->net.setInput(blob);
            output = impl_->net.forward().clone();
        } catch (const cv::Exception& e) {
            throw FeatureError(std::string("model inference failed: ") + e.what());
        }
    }

    std::size_t channels = 0;
    std::size_t spatial = 1;
    if (output.dims == 2) {
        channels = static_cast<std::size_t>(output.total());
    } else if (output.dims == 4 && output.size[0] == 1) {
        channels = static_cast<std::size_t>(output.size[1]);
        spatial = static_cast<std::size_t>(output.size[2]) * static_cast<std::size_t>(output.size[3]);
    } else {
        throw FeatureError("unexpected model output rank " + std::to_string(output.dims));
    }
    if (channels != spec.pooled_dim) {
        throw FeatureError("model yields " + std::to_string(channels) + " channels, expected " +
                           std::to_string(spec.pooled_dim));
    }

    FeatureVector out{std::vector<double>(channels), impl_->id};
    const auto* src = output.ptr<float>();
    for (std::size_t ch = 0; ch < channels; ++ch) {
        const float* begin = src + ch * spatial;
        if (spec.pooling == Pooling::Average) {
            double sum = 0.0;
            for (std::size_t i = 0; i < spatial; ++i) {
                sum += begin[i];
            }
            out.values[ch] = sum / static_cast<double>(spatial);
        } else {
            out.values[ch] = *std::max_element(begin, begin + spatial);
        }
        if (!std::isfinite(out.values[ch])) {
            throw FeatureError("model produced a non-finite feature");
        }
    }
    return out;
}

std::shared_ptr<const FeatureExtractor> make_extractor(const ExtractorSpec& spec) {
    spec.validate();
    if (spec.kind == ExtractorKind::DeepModel) {
        return std::make_shared<DeepExtractor>(spec);
    }
    return std::make_shared<FallbackExtractor>();
}

FeatureVector extract_fallback(const ImageBuffer& img) { return FallbackExtractor{}.extract(img); }

FeatureVector extract_deep(const ImageBuffer& img, const ExtractorSpec& spec) {
    return DeepExtractor(spec).extract(img);
}

double feature_distance(const FeatureVector& a, const FeatureVector& b) {
    if (a.extractor_id != b.extractor_id) {
        throw FeatureError("feature vectors from different extractors: " + a.extractor_id + " vs " +
                           b.extractor_id);
    }
    if (a.values.size() != b.values.size()) {
        throw FeatureError("feature vectors differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace lowlight
