#include "densitylab/cli/spec_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>

#include "densitylab/errors.hpp"

namespace densitylab::cli {
namespace {

u64 as_positive(const json& j, std::string_view what) {
  if (!j.is_number_unsigned() || j.get<u64>() == 0) {
    throw ValidationError(std::string(what) + " must be a positive integer");
  }
  return j.get<u64>();
}

const json& require(const json& params, const char* key, std::string_view kind) {
  if (!params.contains(key)) {
    throw ValidationError(std::string(kind) + " params require \"" + key + "\"");
  }
  return params.at(key);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  for (std::size_t start = 0;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

u64 parse_plain(std::string_view text, std::string_view what) {
  u64 v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("invalid " + std::string(what) + ": \"" + std::string(text) + "\"");
  }
  return v;
}

SetSpec parse_compact(std::string_view name, std::string_view body) {
  if (name == "example2") {
    u64 j = 0;
    u64 depth = 0;
    for (auto field : split(body, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string_view::npos) throw ValidationError("example2 expects j=<int>,depth=<int>");
      const auto key = field.substr(0, eq);
      const u64 v = parse_plain(field.substr(eq + 1), key);
      if (key == "j") {
        j = v;
      } else if (key == "depth") {
        depth = v;
      } else {
        throw ValidationError("unknown example2 parameter \"" + std::string(key) + "\"");
      }
    }
    if (depth > std::numeric_limits<unsigned>::max()) throw ValidationError("example2 depth out of range");
    return SetSpec::example2(j, static_cast<unsigned>(depth));
  }
  if (name == "explicit") {
    std::vector<u64> elements;
    if (!body.empty()) {
      for (auto e : split(body, ',')) elements.push_back(parse_plain(e, "element"));
    }
    return SetSpec::explicit_list(std::move(elements));
  }
  if (name == "intervals" || name == "interval_union") {
    std::vector<Interval> parts;
    for (auto e : split(body, ',')) {
      const auto dash = e.find('-');
      if (dash == std::string_view::npos) throw ValidationError("intervals expects a-b,c-d");
      parts.push_back({parse_plain(e.substr(0, dash), "interval start"), parse_plain(e.substr(dash + 1), "interval end")});
    }
    return SetSpec::interval_union(IntervalSet::from_components(std::move(parts)));
  }
  throw ValidationError("unknown set kind \"" + std::string(name) + "\"");
}

}  // namespace

json to_json(const IntervalSet& set) {
  json out = json::array();
  for (const auto& c : set.components()) out.push_back({c.lo, c.hi});
  return out;
}

IntervalSet interval_set_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("an interval set must be an array of [a, b] pairs");
  std::vector<Interval> parts;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw ValidationError("interval components must be [a, b] pairs");
    parts.push_back({as_positive(pair[0], "interval start"), as_positive(pair[1], "interval end")});
  }
  return IntervalSet::from_components(std::move(parts));
}

json to_json(const SetSpec& spec) {
  json params = json::object();
  switch (spec.kind()) {
    case SetKind::explicit_list:
      params["elements"] = std::vector<u64>(spec.elements().begin(), spec.elements().end());
      break;
    case SetKind::interval_union:
      params["components"] = to_json(spec.intervals());
      break;
    case SetKind::example2:
      params["j"] = spec.j();
      params["depth"] = spec.depth();
      break;
    default:
      break;
  }
  return {{"kind", std::string(to_string(spec.kind()))}, {"params", params}};
}

SetSpec set_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ValidationError("a set spec must be an object with a string \"kind\"");
  }
  const auto name = j["kind"].get<std::string>();
  const auto kind = parse_set_kind(name);
  if (!kind) throw ValidationError("unknown set kind \"" + name + "\"");
  const json params = j.value("params", json::object());
  if (!params.is_object()) throw ValidationError("\"params\" must be an object");
  switch (*kind) {
    case SetKind::explicit_list: {
      const auto& elements = require(params, "elements", name);
      if (!elements.is_array()) throw ValidationError("explicit elements must be an array");
      std::vector<u64> out;
      for (const auto& e : elements) out.push_back(as_positive(e, "element"));
      return SetSpec::explicit_list(std::move(out));
    }
    case SetKind::interval_union:
      return SetSpec::interval_union(interval_set_from_json(require(params, "components", name)));
    case SetKind::example2: {
      const u64 jv = as_positive(require(params, "j", name), "j");
      const u64 depth = as_positive(require(params, "depth", name), "depth");
      if (depth > std::numeric_limits<unsigned>::max()) throw ValidationError("example2 depth out of range");
      return SetSpec::example2(jv, static_cast<unsigned>(depth));
    }
    case SetKind::squarefree: return SetSpec::squarefree();
    case SetKind::primes: return SetSpec::primes();
    case SetKind::full: return SetSpec::full();
    case SetKind::even: return SetSpec::even();
  }
  throw ValidationError("unknown set kind \"" + name + "\"");
}

SetSpec parse_set_argument(std::string_view text) {
  if (text.empty()) throw ValidationError("empty set argument");
  if (text.front() == '{') {
    const auto j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("set argument is not valid JSON");
    return set_spec_from_json(j);
  }
  if (text == "empty") return SetSpec::empty();
  if (const auto kind = parse_set_kind(text); kind && *kind != SetKind::explicit_list &&
                                              *kind != SetKind::interval_union && *kind != SetKind::example2) {
    return set_spec_from_json({{"kind", std::string(text)}});
  }
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    return parse_compact(text.substr(0, colon), text.substr(colon + 1));
  }
  const std::filesystem::path path{std::string(text)};
  std::ifstream in(path);
  if (!in) throw ValidationError("unknown set \"" + std::string(text) + "\" (not a family name or readable file)");
  const auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ValidationError("set file " + path.string() + " is not valid JSON");
  return set_spec_from_json(j);
}

u64 parse_count(std::string_view text) {
  const auto e = text.find_first_of("eE");
  if (e == std::string_view::npos) return parse_plain(text, "integer");
  const auto mantissa = text.substr(0, e);
  auto exponent_text = text.substr(e + 1);
  if (!exponent_text.empty() && exponent_text.front() == '+') exponent_text.remove_prefix(1);
  const u64 exponent = parse_plain(exponent_text, "exponent");
  const auto dot = mantissa.find('.');
  std::string digits(mantissa.substr(0, dot));
  u64 fraction = 0;
  if (dot != std::string_view::npos) {
    const auto tail = mantissa.substr(dot + 1);
    digits += tail;
    fraction = tail.size();
    while (fraction > 0 && digits.back() == '0') {
      digits.pop_back();
      --fraction;
    }
  }
  if (digits.empty() || fraction > exponent) {
    throw ValidationError("\"" + std::string(text) + "\" is not an exact integer");
  }
  std::optional<u64> value = parse_plain(digits, "mantissa");
  for (u64 i = 0; i < exponent - fraction && value; ++i) value = checked_mul(*value, 10);
  if (!value) throw ValidationError("\"" + std::string(text) + "\" exceeds the 64-bit range");
  return *value;
}

}  // namespace densitylab::cli
