#include "lowlight/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lowlight {

namespace {

template <typename PixelMap>
ImageBuffer map_samples(const ImageBuffer& img, PixelMap&& map) {
    const auto in = img.data();
    std::vector<double> out(in.size());
    std::transform(in.begin(), in.end(), out.begin(),
                   [&](double v) { return std::clamp(map(v), 0.0, 1.0); });
    return ImageBuffer(img.width(), img.height(), std::move(out));
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

void ParamBounds::validate() const {
    for (const GeneRange* r : {&b, &c, &gamma}) {
        if (!std::isfinite(r->lo) || !std::isfinite(r->hi) || !(r->lo < r->hi)) {
            throw std::invalid_argument("parameter bounds need finite lo < hi");
        }
    }
    if (c.lo <= 0.0 || gamma.lo <= 0.0) {
        throw std::invalid_argument("contrast and gamma bounds must be positive");
    }
}

bool ParamBounds::contains(const EnhanceParams& e) const noexcept {
    return e.b >= b.lo && e.b <= b.hi && e.c >= c.lo && e.c <= c.hi && e.gamma >= gamma.lo &&
           e.gamma <= gamma.hi;
}

ImageBuffer apply_brightness(const ImageBuffer& img, double b) {
    require_finite(b, "brightness shift");
    const double shift = b / 255.0;
    return map_samples(img, [shift](double v) { return v + shift; });
}

ImageBuffer apply_contrast(const ImageBuffer& img, double c) {
    require_finite(c, "contrast");
    if (c <= 0.0) {
        throw std::invalid_argument("contrast must be positive");
    }
    return map_samples(img, [c](double v) { return c * v; });
}

ImageBuffer apply_gamma(const ImageBuffer& img, double gamma) {
    require_finite(gamma, "gamma");
    if (gamma <= 0.0) {
        throw std::invalid_argument("gamma must be positive");
    }
    const double exponent = 1.0 / gamma;
    return map_samples(img, [exponent](double v) { return v == 0.0 ? 0.0 : std::pow(v, exponent); });
}

ImageBuffer enhance(const ImageBuffer& img, const EnhanceParams& e) {
    require_finite(e.b, "brightness shift");
    require_finite(e.c, "contrast");
    require_finite(e.gamma, "gamma");
    if (e.c <= 0.0 || e.gamma <= 0.0) {
        throw std::invalid_argument("contrast and gamma must be positive");
    }
    // Fused form of the three stages; each step rounds exactly as the
    // standalone operators do.
    const double shift = e.b / 255.0;
    const double exponent = 1.0 / e.gamma;
    return map_samples(img, [&](double v) {
        const double bright = std::clamp(v + shift, 0.0, 1.0);
        const double contrast = std::clamp(e.c * bright, 0.0, 1.0);
        return contrast == 0.0 ? 0.0 : std::pow(contrast, exponent);
    });
}

ImageBuffer enhance(const ImageBuffer& img, const EnhanceParams& e, const ParamBounds& bounds) {
    if (!bounds.contains(e)) {
        throw std::invalid_argument("enhancement parameters outside bounds");
    }
    return enhance(img, e);
}

EnhanceParams clip_params(const EnhanceParams& e, const ParamBounds& bounds) {
    return {std::clamp(e.b, bounds.b.lo, bounds.b.hi), std::clamp(e.c, bounds.c.lo, bounds.c.hi),
            std::clamp(e.gamma, bounds.gamma.lo, bounds.gamma.hi)};
}

}  // namespace lowlight
