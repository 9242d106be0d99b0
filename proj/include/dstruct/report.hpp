#pragma once

// Batch runner surface: gamble-pair files in, per-pair reports out, rendered
// as a human table, path-level CSV, or lossless JSON.

#include <cstdint>
#include <string>
#include <vector>

#include "dstruct/compensatory.hpp"
#include "dstruct/model.hpp"
#include "dstruct/reduction.hpp"

namespace dstruct {

struct BatchPair {
    std::string id;
    Gamble x;
    Gamble y;
};

struct BatchFile {
    std::vector<BatchPair> pairs;
};

struct BatchError {
    std::string where;  // pair id or index
    std::string message;
};

struct BatchParseResult {
    BatchFile batch;
    std::vector<BatchError> errors;
    bool ok() const { return errors.empty(); }
};

// Batch schema:
// {"pairs": [{"id": str, "x": [[p,v],...], "y": [[p,v],...],
//             "ambiguous": {"x": [[lo,hi]|null,...], "y": [...]}}]}
// Validation problems are collected per pair, anchored by id.
BatchParseResult parse_batch(const std::string& path);
BatchParseResult parse_batch_text(const std::string& text);

enum class ModelPick { X, Y, Indifferent, Split };

std::string to_string(ModelPick m);

struct CompensatorySummary {
    double ev_x = 0.0, ev_y = 0.0;
    double eu_x = 0.0, eu_y = 0.0;
    double pt_x = 0.0, pt_y = 0.0;
    Outcome ev_order = Outcome::Indifferent;
    Outcome eu_order = Outcome::Indifferent;
    Outcome pt_order = Outcome::Indifferent;
    ModelPick model_pick = ModelPick::Indifferent;
    bool agrees_ev = false, agrees_eu = false, agrees_pt = false;
};

struct PairReport {
    std::string id;
    ReductionTree tree;
    std::vector<ReductionPath> paths;
    ChoiceDistribution distribution;
    ReductionTrace sampled;
    double sampled_time = 0.0;
    TimeParams time_params;  // the unit costs the times were computed with
    CompensatorySummary comp;
};

// Deterministic: pair i is sampled with seed + i, reports keep batch order.
// The compensatory baselines use the bundled presets u = power(0.88),
// w = inverse_s(0.61).
std::vector<PairReport> run_batch(const BatchFile& batch, const SubstitutionScheme& scheme,
                                  const ReductionPolicy& policy, std::uint64_t seed);

enum class RenderFormat { Table, Csv, Json };

std::string render(const std::vector<PairReport>& reports, RenderFormat format);

// Inverse of render(..., Json); rendering the parsed reports again
// reproduces the input byte for byte.
std::vector<PairReport> parse_reports(const std::string& json_text);

}  // namespace dstruct
