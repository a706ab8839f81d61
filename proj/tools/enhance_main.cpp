// Batch low-light enhancement driver.

#include "lowlight/batch.hpp"
#include "lowlight/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Per-image low-light enhancement by multi-objective parameter search"};

    std::string input;
    std::string output;
    std::optional<std::string> reference;
    std::optional<std::string> config_file;
    std::optional<std::string> model;
    bool fallback_features = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    bool trace = false;
    bool no_timing = false;
    std::optional<std::string> pooling;
    std::optional<int> input_size;

    app.add_option("--input", input, "Directory of input images (searched recursively)");
    app.add_option("--output", output, "Directory for enhanced images and reports");
    app.add_option("--reference", reference, "Directory of reference images for PSNR/SSIM");
    app.add_option("--config", config_file, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    auto* model_opt = app.add_option(
        "--model", model,
        "ONNX feature model: input 1x3xSxS float RGB (ImageNet-normalized), output 1xC or 1xCxhxw");
    auto* fallback_opt =
        app.add_flag("--fallback-features", fallback_features, "Use the built-in model-free extractor");
    model_opt->excludes(fallback_opt);
    app.add_option("--seed", seed, "Run seed (64-bit)");
    app.add_option("--workers", workers, "Images processed concurrently")->check(CLI::PositiveNumber);
    app.add_flag("--trace", trace, "Write per-generation records to trace.jsonl");
    app.add_flag("--no-timing", no_timing, "Write 0 for runtime fields (byte-stable reports)");
    app.add_option("--pooling", pooling, "Feature-map pooling for --model")
        ->check(CLI::IsMember({"average", "max"}));
    app.add_option("--input-size", input_size, "Square model input side for --model")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    lowlight::RunSummary summary;
    try {
        lowlight::RunConfig cfg;
        if (config_file) {
            cfg = lowlight::load_config_file(*config_file, cfg);
        }
        if (!input.empty()) {
            cfg.input_dir = input;
        }
        if (!output.empty()) {
            cfg.output_dir = output;
        }
        if (reference) {
            cfg.reference_dir = *reference;
        }
        if (model) {
            cfg.extractor.kind = lowlight::ExtractorKind::DeepModel;
            cfg.extractor.model_path = *model;
        }
        if (fallback_features) {
            cfg.extractor.kind = lowlight::ExtractorKind::Fallback;
        }
        if (pooling) {
            cfg.extractor.pooling =
                *pooling == "max" ? lowlight::Pooling::Max : lowlight::Pooling::Average;
        }
        if (input_size) {
            cfg.extractor.input_size = *input_size;
        }
        if (seed) {
            cfg.seed = *seed;
        }
        if (workers) {
            cfg.workers = *workers;
        }
        if (trace) {
            cfg.trace = true;
        }
        if (no_timing) {
            cfg.record_timing = false;
        }
        summary = lowlight::run_batch(cfg);
    } catch (const lowlight::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }

    for (const auto& f : summary.failures) {
        std::cerr << "failed: " << f.image_id << ": " << f.error << "\n";
    }
    std::cout << "processed " << summary.images_processed << " image(s), " << summary.failures.size()
              << " failure(s)\n";
    return summary.failures.empty() ? kExitOk : kExitPartial;
}
