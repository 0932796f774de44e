// Run manifests: `key=value` lines written next to an output file as
// `<output>.manifest`.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace polytess {

using Manifest = std::vector<std::pair<std::string, std::string>>;

/// UTC time in ISO 8601 form.
std::string utc_timestamp();

/// Writes `<output_path>.manifest`; returns false if the file cannot be
/// written.
bool write_manifest(const std::string& output_path, const Manifest& entries);

}  // namespace polytess
