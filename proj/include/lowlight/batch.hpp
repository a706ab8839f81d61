#pragma once

#include "lowlight/config.hpp"
#include "lowlight/metrics.hpp"
#include "lowlight/moea/evolve.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lowlight {

/// Supported images under `dir`, recursively, as paths relative to `dir`
/// sorted by their generic string form. Throws std::filesystem::filesystem_error
/// if the directory cannot be read.
std::vector<std::filesystem::path> discover_inputs(const std::filesystem::path& dir);

/// FNV-1a over the bytes of `text`.
std::uint64_t stable_hash(std::string_view text);

/// Per-image seed: run seed XOR the stable hash of the relative path.
std::uint64_t image_seed(std::uint64_t run_seed, const std::string& image_id);

struct ImageFailure {
    std::string image_id;
    std::string error;
};

struct ImageTrace {
    std::string image_id;
    std::vector<moea::GenerationStats> generations;
};

struct RunSummary {
    std::size_t images_processed = 0;
    std::vector<ImageFailure> failures;
    std::vector<MetricsReport> reports;
    std::vector<ImageTrace> traces;
    /// Mean of each numeric report field over processed images; PSNR and
    /// SSIM only over images that have them (identical-image PSNR excluded).
    std::map<std::string, double> means;
    std::int64_t wall_time_ms = 0;
};

/**
 * Enhances every discovered image and writes, under cfg.output_dir:
 * the enhanced images (mirroring the input layout), report.csv,
 * report.json and, with cfg.trace, trace.jsonl.
 *
 * Images are spread across cfg.workers threads; outputs do not depend on
 * the worker count. A failing image is recorded and skipped. Throws
 * ConfigError if the config is invalid or the output directory cannot be
 * written.
 */
RunSummary run_batch(const RunConfig& cfg);

std::string report_json(const RunSummary& summary);
std::string trace_jsonl(const std::vector<ImageTrace>& traces);

}  // namespace lowlight
