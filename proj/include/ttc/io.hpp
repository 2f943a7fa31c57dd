#pragma once

// File formats. Everything on disk is 1-based.
//
// Instance (JSON):
//   {"n": 4, "preferences": [[1,2,3,4], ...], "endowment": null | [..], "label": "..", "seed": 7}
//   "seed" is optional and omitted when absent.
// Preferences (CSV): row i is agent i's ranking, comma separated, no header.
// Allocation (JSON):
//   {"method": "classical", "assignment": {"1": 1, ...}, "trace": [...]}
//   classical trace: [{"round": 1, "cycles": [[1], [2, 5]]}, ...]
//   spectral trace:  [{"agent": 1, "object": 1}, ...] in pick order

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ttc/model.hpp"

namespace ttc {

/// Malformed syntax or schema (as opposed to a semantically invalid market).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Instance parse_instance_json(std::string_view text);
PreferenceProfile parse_preferences_csv(std::string_view text);

/// Canonical form: parse_instance_json(serialize_instance(x)) == x, and
/// serialize_instance(parse_instance_json(s)) == s for canonical s.
std::string serialize_instance(const Instance &instance);

std::string serialize_allocation(const Allocation &allocation);
Allocation parse_allocation_json(std::string_view text);

/// Dispatches on extension: .csv reads preferences only, anything else is JSON.
Instance read_instance_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);
std::string read_text_file(const std::filesystem::path &path);

/// "1→1 2→3 3→2 4→4"
std::string format_assignment(const Allocation &allocation);

} // namespace ttc
