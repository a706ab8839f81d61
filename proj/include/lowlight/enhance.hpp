#pragma once

#include "lowlight/image.hpp"

namespace lowlight {

/// Genome of one candidate: brightness shift in 8-bit units, contrast
/// factor and gamma.
struct EnhanceParams {
    double b = 0.0;
    double c = 1.0;
    double gamma = 1.0;

    friend bool operator==(const EnhanceParams&, const EnhanceParams&) = default;
};

/// Closed per-gene search interval.
struct GeneRange {
    double lo;
    double hi;

    double width() const noexcept { return hi - lo; }
};

struct ParamBounds {
    GeneRange b{-10.0, 60.0};
    GeneRange c{1.0, 2.0};
    GeneRange gamma{1.0, 2.0};

    /// Throws std::invalid_argument unless lo < hi for every gene, c_lo > 0
    /// and gamma_lo > 0.
    void validate() const;
    bool contains(const EnhanceParams& e) const noexcept;
};

/// clamp(v + b/255, 0, 1) on every sample.
ImageBuffer apply_brightness(const ImageBuffer& img, double b);
/// clamp(c*v, 0, 1). Throws std::invalid_argument for c <= 0.
ImageBuffer apply_contrast(const ImageBuffer& img, double c);
/// clamp(v^(1/gamma), 0, 1). Throws std::invalid_argument for gamma <= 0.
ImageBuffer apply_gamma(const ImageBuffer& img, double gamma);

/// Brightness, then contrast, then gamma.
ImageBuffer enhance(const ImageBuffer& img, const EnhanceParams& e);

/// Same as enhance() but rejects parameters outside `bounds`.
ImageBuffer enhance(const ImageBuffer& img, const EnhanceParams& e, const ParamBounds& bounds);

EnhanceParams clip_params(const EnhanceParams& e, const ParamBounds& bounds);

}  // namespace lowlight
