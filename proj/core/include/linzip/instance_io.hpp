#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "linzip/set_model.hpp"

namespace linzip {

enum class InstanceFormat { Json, Csv };

/// JSON: {"elements": [...], "sets": {"name": [members...], ...}}. "elements" is optional
/// (first-appearance order is used when absent); "sets" may also be an array of
/// {"name": ..., "members": [...]} objects. Set order follows the file.
SetSystem parse_instance_json(std::string_view text);

/// CSV membership matrix: header row = (corner cell, element names...), then one row per set:
/// (set name, 0/1 cells...).
SetSystem parse_instance_csv(std::string_view text);

/// Reads a file; the format defaults to the extension (.csv -> CSV, anything else JSON).
/// Errors are ParseError with the path prefixed.
SetSystem parse_instance(const std::filesystem::path& path, std::optional<InstanceFormat> format = std::nullopt);

/// Canonical JSON form, accepted by parse_instance_json.
std::string instance_to_json(const SetSystem& sys);

struct SyntheticParams {
    std::size_t sets = 20;
    std::size_t elements = 40;
    /// Probability that a member slot reuses an element already placed in an earlier set.
    double density = 0.3;
    std::uint64_t seed = 1;
};

/// Co-authorship-style instance: sets ("publications") of 1-6 elements ("authors"). Each member
/// slot reuses a previously used element with probability `density`, otherwise takes a fresh
/// one. Density 0 yields pairwise-disjoint sets; density 1 makes every set after the first
/// reuse earlier elements only, so the intersection graph is connected. Deterministic per seed.
/// Throws std::invalid_argument unless sets >= 1, elements >= sets and density in [0, 1].
SetSystem generate_synthetic(const SyntheticParams& params);

}  // namespace linzip
