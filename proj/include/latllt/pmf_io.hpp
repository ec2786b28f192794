#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "latllt/lattice.hpp"

namespace latllt {

/// Parses {"v0": number, "D": number, "probs": {"<offset>": number, ...}}.
/// Malformed documents raise Error(InvalidInput); mass problems surface as
/// the usual LatticePmf errors.
LatticePmf parse_pmf_json(std::string_view text);
LatticePmf load_pmf_json(const std::filesystem::path& path);
std::string to_pmf_json(const LatticePmf& pmf);

} // namespace latllt
