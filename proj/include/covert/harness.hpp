#ifndef COVERT_HARNESS_HPP
#define COVERT_HARNESS_HPP

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "covert/design.hpp"

namespace covert::harness {

using Json = nlohmann::json;

enum class Kind { design, reliability, covertness, lemma1, contour, verify };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);

struct ExperimentConfig {
    Kind kind = Kind::design;
    design::ChannelModel channel;
    design::Mode mode = design::Mode::paper;
    int L = 0, B = 0;
    std::int64_t trials = 0;
    std::uint64_t master_seed = 0;
    design::Overrides overrides;
    std::string output_path;  // empty = stdout summary only
    Json extra;               // kind-specific knobs (bands, grids, n lists)

    static ExperimentConfig from_json(const Json& j);
    Json to_json() const;

    // FNV-1a over the canonical (key-sorted) serialization.
    std::string config_hash() const;

    // Validates through derive_params; returns the derived parameters.
    design::CodeParams derive() const;
};

ExperimentConfig load_config(const std::string& path);

struct RunRecord {
    std::string config_hash;
    std::string timestamp;
    std::string build_id;
    Json metrics;          // summary metrics
    std::vector<Json> rows;  // per-trial / per-cell records
    bool all_pass = true;

    Json summary_json() const;
    // Summary JSON then one JSON line per row, each carrying config_hash.
    void write_jsonl(const std::string& path) const;
};

RunRecord run_reliability(const ExperimentConfig& cfg);
RunRecord run_covertness(const ExperimentConfig& cfg);
RunRecord run_verify(const ExperimentConfig& cfg);

// Lemma-1 sweep over (q, eps_d, n) grids; CSV-shaped rows.
RunRecord run_lemma1(const ExperimentConfig& cfg);

std::string fnv1a_hex(const std::string& data);

}  // namespace covert::harness

#endif
