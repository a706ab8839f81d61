#include "lowlight/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace lowlight {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown config key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) {
        try {
            out = obj.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
        }
    }
}

void read_range(const json& obj, const char* key, GeneRange& out) {
    if (!obj.contains(key)) {
        return;
    }
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(std::string("bound '") + key + "' must be [lo, hi]");
    }
    out = {v[0].get<double>(), v[1].get<double>()};
}

void read_extractor(const json& obj, ExtractorSpec& spec) {
    reject_unknown(obj, {"kind", "model_path", "input_size", "pooled_dim", "pooling", "mean", "stddev"},
                   "extractor");
    if (obj.contains("kind")) {
        const auto kind = obj.at("kind").get<std::string>();
        if (kind == "deep") {
            spec.kind = ExtractorKind::DeepModel;
        } else if (kind == "fallback") {
            spec.kind = ExtractorKind::Fallback;
        } else {
            throw ConfigError("extractor kind must be 'deep' or 'fallback'");
        }
    }
    if (obj.contains("model_path")) {
        spec.model_path = obj.at("model_path").get<std::string>();
    }
    read(obj, "input_size", spec.input_size);
    read(obj, "pooled_dim", spec.pooled_dim);
    if (obj.contains("pooling")) {
        const auto pooling = obj.at("pooling").get<std::string>();
        if (pooling == "average") {
            spec.pooling = Pooling::Average;
        } else if (pooling == "max") {
            spec.pooling = Pooling::Max;
        } else {
            throw ConfigError("pooling must be 'average' or 'max'");
        }
    }
    read(obj, "mean", spec.mean);
    read(obj, "stddev", spec.stddev);
}

void read_evolution(const json& obj, moea::EvolutionConfig& evo) {
    reject_unknown(obj,
                   {"pop_size", "generations", "crossover_prob", "mutation_prob_start",
                    "mutation_prob_end", "local_search_steps", "local_search_fraction",
                    "local_search_sigma_fraction", "blend_alpha", "mutation_sigma_fraction",
                    "diversity_threshold", "eval_threads"},
                   "evolution");
    read(obj, "pop_size", evo.pop_size);
    read(obj, "generations", evo.generations);
    read(obj, "crossover_prob", evo.crossover_prob);
    read(obj, "mutation_prob_start", evo.mutation_prob_start);
    read(obj, "mutation_prob_end", evo.mutation_prob_end);
    read(obj, "local_search_steps", evo.local_search_steps);
    read(obj, "local_search_fraction", evo.local_search_fraction);
    read(obj, "local_search_sigma_fraction", evo.local_search_sigma_fraction);
    read(obj, "blend_alpha", evo.blend_alpha);
    read(obj, "mutation_sigma_fraction", evo.mutation_sigma_fraction);
    read(obj, "diversity_threshold", evo.diversity_threshold);
    read(obj, "eval_threads", evo.eval_threads);
}

}  // namespace

void RunConfig::validate() const {
    std::error_code ec;
    if (input_dir.empty() || !std::filesystem::is_directory(input_dir, ec)) {
        throw ConfigError("input directory does not exist: " + input_dir.string());
    }
    if (output_dir.empty()) {
        throw ConfigError("output directory is required");
    }
    if (reference_dir && !std::filesystem::is_directory(*reference_dir, ec)) {
        throw ConfigError("reference directory does not exist: " + reference_dir->string());
    }
    if (workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    try {
        extractor.validate();
        bounds.validate();
        penalty.validate();
        evolution.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

RunConfig parse_config(const std::string& json_text, RunConfig base) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root,
                   {"input", "output", "reference", "seed", "workers", "trace", "record_timing",
                    "extractor", "bounds", "penalty", "evolution"},
                   "config");
    try {
        if (root.contains("input")) {
            base.input_dir = root.at("input").get<std::string>();
        }
        if (root.contains("output")) {
            base.output_dir = root.at("output").get<std::string>();
        }
        if (root.contains("reference")) {
            base.reference_dir = std::filesystem::path(root.at("reference").get<std::string>());
        }
        read(root, "seed", base.seed);
        read(root, "workers", base.workers);
        read(root, "trace", base.trace);
        read(root, "record_timing", base.record_timing);
        if (root.contains("extractor")) {
            read_extractor(root.at("extractor"), base.extractor);
        }
        if (root.contains("bounds")) {
            const json& b = root.at("bounds");
            reject_unknown(b, {"b", "c", "gamma"}, "bounds");
            read_range(b, "b", base.bounds.b);
            read_range(b, "c", base.bounds.c);
            read_range(b, "gamma", base.bounds.gamma);
        }
        if (root.contains("penalty")) {
            const json& p = root.at("penalty");
            reject_unknown(p, {"lo", "hi", "lambda"}, "penalty");
            read(p, "lo", base.penalty.lo);
            read(p, "hi", base.penalty.hi);
            read(p, "lambda", base.penalty.lambda);
        }
        if (root.contains("evolution")) {
            read_evolution(root.at("evolution"), base.evolution);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

}  // namespace lowlight
