#include "entropart/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "entropart/error.hpp"

namespace entropart::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), out);
  return !token.empty() && ec == std::errc{} &&
         ptr == token.data() + token.size();
}

std::vector<double> read_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    double value = 0.0;
    if (!parse_double(line, value)) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) +
                                        ": '" + std::string(line) +
                                        "' is not a real number");
    }
    seen_content = true;
    values.push_back(value);
  }
  return values;
}

std::vector<double> read_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorKind::parse, "JSON input must be a flat array of numbers");
  }
  std::vector<double> values;
  values.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number()) {
      throw Error(ErrorKind::parse, "JSON element " + std::to_string(i) +
                                        " is not a number");
    }
    values.push_back(doc[i].get<double>());
  }
  return values;
}

}  // namespace

std::vector<double> read_values(std::string_view text, InputFormat format) {
  if (format == InputFormat::detect) {
    const std::string_view body = trim(text);
    format = !body.empty() && body.front() == '[' ? InputFormat::json
                                                  : InputFormat::csv;
  }
  std::vector<double> values =
      format == InputFormat::json ? read_json(text) : read_csv(text);
  if (values.empty()) {
    throw Error(ErrorKind::parse, "input holds no values");
  }
  return values;
}

std::vector<double> read_values_file(const std::filesystem::path& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorKind::parse, "cannot open '" + path.string() + "'");
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const InputFormat format = path.extension() == ".json" ? InputFormat::json
                                                         : InputFormat::detect;
  return read_values(text, format);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

nlohmann::json to_json(const Distribution& dist) {
  return nlohmann::json(std::vector<double>(dist.probs().begin(),
                                            dist.probs().end()));
}

nlohmann::json to_json(const InequalityReport& report) {
  nlohmann::json entropies = nlohmann::json::object();
  for (const auto& [name, value] : report.entropies) entropies[name] = value;
  return {
      {"kind", to_string(report.kind)},
      {"shape", std::vector<Extent>(report.shape.factors().begin(),
                                    report.shape.factors().end())},
      {"grouping", report.grouping},
      {"base", report.base.label()},
      {"entropies", std::move(entropies)},
      {"residual", report.residual},
      {"tolerance", report.tolerance},
      {"holds", report.holds},
  };
}

nlohmann::json to_json(const CGTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& entry : table.entries) {
    const Rational& r = entry.value.radicand();
    entries.push_back({
        {"m1", entry.m1.twice},
        {"m2", entry.m2.twice},
        {"sign", entry.value.sign()},
        {"radicand_num", boost::multiprecision::numerator(r).str()},
        {"radicand_den", boost::multiprecision::denominator(r).str()},
    });
  }
  return {
      {"j1", table.couple.j1.twice},
      {"j2", table.couple.j2.twice},
      {"j", table.couple.j.twice},
      {"m", table.couple.m.twice},
      {"shape", std::vector<Extent>(table.shape.factors().begin(),
                                    table.shape.factors().end())},
      {"entries", std::move(entries)},
  };
}

}  // namespace entropart::io
