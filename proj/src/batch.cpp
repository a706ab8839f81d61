#include "lowlight/batch.hpp"

#include "lowlight/image.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <thread>
#include <variant>

namespace lowlight {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<fs::path> discover_inputs(const fs::path& dir) {
    std::vector<fs::path> found;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && is_supported_image(entry.path())) {
            found.push_back(entry.path().lexically_relative(dir));
        }
    }
    std::sort(found.begin(), found.end(), [](const fs::path& a, const fs::path& b) {
        return a.generic_string() < b.generic_string();
    });
    return found;
}

std::uint64_t stable_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t image_seed(std::uint64_t run_seed, const std::string& image_id) {
    return run_seed ^ stable_hash(image_id);
}

namespace {

struct ImageResult {
    MetricsReport report;
    ImageTrace trace;
};

using Outcome = std::variant<ImageResult, ImageFailure>;

bool is_within(const fs::path& candidate, const fs::path& root) {
    const auto rel = candidate.lexically_relative(root);
    return !rel.empty() && *rel.begin() != "..";
}

void ensure_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    const fs::path probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) {
            throw ConfigError("output directory is not writable: " + dir.string());
        }
    }
    fs::remove(probe, ec);
}

Outcome process_image(const RunConfig& cfg, const std::shared_ptr<const FeatureExtractor>& extractor,
                      const fs::path& relative) {
    const std::string id = relative.generic_string();
    const auto started = std::chrono::steady_clock::now();
    try {
        const ImageBuffer original = load_image(cfg.input_dir / relative);

        moea::EvolutionConfig evo = cfg.evolution;
        evo.rng_seed = image_seed(cfg.seed, id);
        const auto result = moea::evolve(original, extractor, cfg.bounds, cfg.penalty, evo);
        // Report on the 8-bit image that is actually written.
        const ImageBuffer enhanced = ImageBuffer::from_rgb8(
            original.width(), original.height(), enhance(original, result.best.params).to_rgb8());

        ImageResult out;
        out.report.image_id = id;
        out.report.entropy_before = image_entropy(original);
        out.report.entropy_after = image_entropy(enhanced);
        out.report.mean_brightness_before = mean_brightness(original);
        out.report.mean_brightness_after = mean_brightness(enhanced);
        out.report.params = result.best.params;

        if (cfg.reference_dir) {
            const fs::path ref_path = *cfg.reference_dir / relative;
            if (fs::is_regular_file(ref_path)) {
                const ImageBuffer reference = load_image(ref_path);
                out.report.psnr = psnr(enhanced, reference);
                if (std::min(reference.width(), reference.height()) >=
                    static_cast<std::size_t>(SsimOptions{}.window)) {
                    out.report.ssim = ssim(enhanced, reference);
                }
            }
        }

        const fs::path target = cfg.output_dir / relative;
        fs::create_directories(target.parent_path());
        save_image(enhanced, target);

        out.trace = {id, result.history};
        if (cfg.record_timing) {
            out.report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - started)
                                        .count();
        }
        return out;
    } catch (const std::exception& e) {
        return ImageFailure{id, e.what()};
    }
}

json report_to_json(const MetricsReport& r) {
    json j;
    j["image_id"] = r.image_id;
    j["entropy_before"] = r.entropy_before;
    j["entropy_after"] = r.entropy_after;
    j["brightness_before"] = r.mean_brightness_before;
    j["brightness_after"] = r.mean_brightness_after;
    j["b"] = r.params.b;
    j["c"] = r.params.c;
    j["gamma"] = r.params.gamma;
    if (r.psnr) {
        j["psnr"] = std::isinf(*r.psnr) ? json("identical") : json(*r.psnr);
    } else {
        j["psnr"] = nullptr;
    }
    j["ssim"] = r.ssim ? json(*r.ssim) : json(nullptr);
    j["runtime_ms"] = r.runtime_ms;
    j["external_scores"] = r.external_scores;
    return j;
}

std::map<std::string, double> field_means(const std::vector<MetricsReport>& reports) {
    std::map<std::string, double> sums;
    std::map<std::string, std::size_t> counts;
    auto add = [&](const std::string& key, double v) {
        sums[key] += v;
        ++counts[key];
    };
    for (const auto& r : reports) {
        add("entropy_before", r.entropy_before);
        add("entropy_after", r.entropy_after);
        add("brightness_before", r.mean_brightness_before);
        add("brightness_after", r.mean_brightness_after);
        add("b", r.params.b);
        add("c", r.params.c);
        add("gamma", r.params.gamma);
        add("runtime_ms", static_cast<double>(r.runtime_ms));
        if (r.psnr && std::isfinite(*r.psnr)) {
            add("psnr", *r.psnr);
        }
        if (r.ssim) {
            add("ssim", *r.ssim);
        }
    }
    std::map<std::string, double> means;
    for (const auto& [key, sum] : sums) {
        means[key] = sum / static_cast<double>(counts[key]);
    }
    return means;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
}

}  // namespace

RunSummary run_batch(const RunConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    cfg.validate();
    ensure_writable(cfg.output_dir);

    std::shared_ptr<const FeatureExtractor> extractor;
    try {
        extractor = make_extractor(cfg.extractor);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("cannot create feature extractor: ") + e.what());
    }

    std::vector<fs::path> inputs;
    try {
        inputs = discover_inputs(cfg.input_dir);
    } catch (const fs::filesystem_error& e) {
        throw ConfigError(std::string("cannot scan input directory: ") + e.what());
    }
    // Outputs nested inside the input tree must not be picked up as inputs.
    const fs::path in_abs = fs::weakly_canonical(cfg.input_dir);
    const fs::path out_abs = fs::weakly_canonical(cfg.output_dir);
    if (is_within(out_abs, in_abs)) {
        const fs::path out_rel = out_abs.lexically_relative(in_abs);
        std::erase_if(inputs, [&](const fs::path& p) { return is_within(p, out_rel); });
    }

    std::vector<std::optional<Outcome>> outcomes(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) {
            outcomes[i] = process_image(cfg, extractor, inputs[i]);
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t n = std::max<std::size_t>(1, std::min(cfg.workers, inputs.size()));
        for (std::size_t t = 0; t < n; ++t) {
            pool.emplace_back(worker);
        }
    }

    RunSummary summary;
    for (auto& outcome : outcomes) {
        if (auto* ok = std::get_if<ImageResult>(&*outcome)) {
            summary.reports.push_back(std::move(ok->report));
            summary.traces.push_back(std::move(ok->trace));
        } else {
            summary.failures.push_back(std::get<ImageFailure>(*outcome));
        }
    }
    summary.images_processed = summary.reports.size();
    summary.means = field_means(summary.reports);
    if (cfg.record_timing) {
        summary.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
    }

    std::string csv = report_csv_header() + "\n";
    for (const auto& r : summary.reports) {
        csv += to_csv_row(r) + "\n";
    }
    write_text(cfg.output_dir / "report.csv", csv);
    write_text(cfg.output_dir / "report.json", report_json(summary));
    if (cfg.trace) {
        write_text(cfg.output_dir / "trace.jsonl", trace_jsonl(summary.traces));
    }
    return summary;
}

std::string report_json(const RunSummary& summary) {
    json root;
    root["images"] = json::array();
    for (const auto& r : summary.reports) {
        root["images"].push_back(report_to_json(r));
    }
    root["failures"] = json::array();
    for (const auto& f : summary.failures) {
        root["failures"].push_back({{"image_id", f.image_id}, {"error", f.error}});
    }
    root["summary"] = {{"images_processed", summary.images_processed},
                       {"failures", summary.failures.size()},
                       {"means", summary.means},
                       {"wall_time_ms", summary.wall_time_ms}};
    return root.dump(2) + "\n";
}

std::string trace_jsonl(const std::vector<ImageTrace>& traces) {
    std::string out;
    for (const auto& t : traces) {
        for (const auto& g : t.generations) {
            json line{{"image_id", t.image_id},
                      {"generation", g.generation},
                      {"best_entropy", g.best_entropy},
                      {"best_f2", g.best_f2},
                      {"mean_f2", g.mean_f2},
                      {"mutation_rate", g.mutation_rate},
                      {"front_size", g.front_size}};
            out += line.dump() + "\n";
        }
    }
    return out;
}

}  // namespace lowlight
