#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "entropart/clebsch_gordan.hpp"
#include "entropart/entropy.hpp"
#include "entropart/prob.hpp"

namespace entropart::io {

enum class InputFormat { detect, csv, json };

/// CSV: one real per line, blank lines ignored, an optional non-numeric
/// first line taken as a header. JSON: a flat array of numbers. `detect`
/// picks JSON when the first non-blank character is '['.
/// Throws parse on malformed or empty input.
std::vector<double> read_values(std::string_view text,
                                InputFormat format = InputFormat::detect);

/// Reads a whole file ("-" is stdin); a .json extension forces JSON.
std::vector<double> read_values_file(const std::filesystem::path& path);

/// Shortest representation that round-trips (at most 17 significant
/// digits).
std::string format_double(double value);

nlohmann::json to_json(const Distribution& dist);
nlohmann::json to_json(const InequalityReport& report);
nlohmann::json to_json(const CGTable& table);

}  // namespace entropart::io
