#include "lowlight/metrics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lowlight {

namespace {

void require_same_size(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("images differ in size");
    }
}

std::vector<double> gaussian_kernel(int size, double sigma) {
    std::vector<double> k(static_cast<std::size_t>(size));
    const double centre = (size - 1) / 2.0;
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - centre;
        k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
        sum += k[static_cast<std::size_t>(i)];
    }
    for (double& v : k) {
        v /= sum;
    }
    return k;
}

// "Valid" separable filtering: output is (w - n + 1) x (h - n + 1).
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t w, std::size_t h,
                                 const std::vector<double>& k) {
    const std::size_t n = k.size();
    const std::size_t ow = w - n + 1;
    const std::size_t oh = h - n + 1;
    std::vector<double> horizontal(ow * h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += k[i] * src[y * w + x + i];
            }
            horizontal[y * ow + x] = acc;
        }
    }
    std::vector<double> out(ow * oh);
    for (std::size_t y = 0; y < oh; ++y) {
        for (std::size_t x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += k[i] * horizontal[(y + i) * ow + x];
            }
            out[y * ow + x] = acc;
        }
    }
    return out;
}

std::vector<double> scaled_luma(const ImageBuffer& img, double scale) {
    GrayImage g = to_grayscale(img);
    for (double& v : g.values) {
        v *= scale;
    }
    return std::move(g.values);
}

}  // namespace

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_size(a, b);
    const auto da = a.data();
    const auto db = b.data();
    double sum = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double d = (da[i] - db[i]) * 255.0;
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(da.size());
    if (mse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimOptions& opts) {
    require_same_size(a, b);
    if (opts.window < 1 || !(opts.sigma > 0.0)) {
        throw std::invalid_argument("invalid SSIM window");
    }
    const auto n = static_cast<std::size_t>(opts.window);
    const std::size_t w = a.width();
    const std::size_t h = a.height();
    if (w < n || h < n) {
        throw std::invalid_argument("image smaller than the SSIM window");
    }

    const auto x = scaled_luma(a, opts.dynamic_range);
    const auto y = scaled_luma(b, opts.dynamic_range);
    std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const auto k = gaussian_kernel(opts.window, opts.sigma);
    const auto mu_x = filter_valid(x, w, h, k);
    const auto mu_y = filter_valid(y, w, h, k);
    const auto e_xx = filter_valid(xx, w, h, k);
    const auto e_yy = filter_valid(yy, w, h, k);
    const auto e_xy = filter_valid(xy, w, h, k);

    const double c1 = std::pow(opts.k1 * opts.dynamic_range, 2);
    const double c2 = std::pow(opts.k2 * opts.dynamic_range, 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double var_x = e_xx[i] - mx * mx;
        const double var_y = e_yy[i] - my * my;
        const double cov = e_xy[i] - mx * my;
        const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
        const double den = (mx * mx + my * my + c1) * (var_x + var_y + c2);
        sum += num / den;
    }
    return sum / static_cast<double>(mu_x.size());
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> columns{
        "image_id", "entropy_before", "entropy_after", "brightness_before", "brightness_after",
        "b",        "c",              "gamma",         "psnr",              "ssim",
        "runtime_ms"};
    return columns;
}

std::string report_csv_header() {
    std::string header;
    for (const auto& c : report_columns()) {
        if (!header.empty()) {
            header += ',';
        }
        header += c;
    }
    return header;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    return quoted + '"';
}

}  // namespace

std::string to_csv_row(const MetricsReport& r) {
    std::ostringstream out;
    out << csv_field(r.image_id) << ',' << format_number(r.entropy_before) << ','
        << format_number(r.entropy_after) << ',' << format_number(r.mean_brightness_before) << ','
        << format_number(r.mean_brightness_after) << ',' << format_number(r.params.b) << ','
        << format_number(r.params.c) << ',' << format_number(r.params.gamma) << ',';
    if (r.psnr) {
        out << (std::isinf(*r.psnr) ? std::string("identical") : format_number(*r.psnr));
    }
    out << ',';
    if (r.ssim) {
        out << format_number(*r.ssim);
    }
    out << ',' << r.runtime_ms;
    return out.str();
}

}  // namespace lowlight
