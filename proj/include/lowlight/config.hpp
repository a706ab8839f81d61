#pragma once

#include "lowlight/enhance.hpp"
#include "lowlight/features.hpp"
#include "lowlight/fitness.hpp"
#include "lowlight/moea/individual.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace lowlight {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::filesystem::path input_dir;
    std::filesystem::path output_dir;
    std::optional<std::filesystem::path> reference_dir;
    ExtractorSpec extractor;
    ParamBounds bounds;
    PenaltyConfig penalty;
    moea::EvolutionConfig evolution;
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    bool trace = false;
    /// When false, runtime fields are written as 0 so reruns are byte-identical.
    bool record_timing = true;

    /// Throws ConfigError describing the first invalid field.
    void validate() const;
};

/**
 * Overlays a JSON config file onto `base`. Every key is optional:
 *
 *   {
 *     "input": "dir", "output": "dir", "reference": "dir",
 *     "seed": 42, "workers": 4, "trace": true, "record_timing": true,
 *     "extractor": {"kind": "fallback" | "deep", "model_path": "vgg16.onnx",
 *                   "input_size": 224, "pooled_dim": 512,
 *                   "pooling": "average" | "max",
 *                   "mean": [r, g, b], "stddev": [r, g, b]},
 *     "bounds": {"b": [-10, 60], "c": [1, 2], "gamma": [1, 2]},
 *     "penalty": {"lo": 0.35, "hi": 0.7, "lambda": 30},
 *     "evolution": {"pop_size": 50, "generations": 5, "crossover_prob": 0.85,
 *                   "mutation_prob_start": 0.3, "mutation_prob_end": 0.2,
 *                   "local_search_steps": 8, "local_search_fraction": 0.1,
 *                   "local_search_sigma_fraction": 0.02, "blend_alpha": 0.5,
 *                   "mutation_sigma_fraction": 0.1, "diversity_threshold": 5,
 *                   "eval_threads": 1}
 *   }
 *
 * Unknown keys are rejected. Relative paths resolve against the working
 * directory.
 */
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// Same as load_config_file() but from JSON text.
RunConfig parse_config(const std::string& json_text, RunConfig base = {});

}  // namespace lowlight
