#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "ccnr/states.hpp"

namespace ccnr {

namespace {

struct FamilyInfo {
  Family family;
  const char* name;
  std::vector<std::string> params;
};

const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> table = {
      {Family::MaxMixed, "max_mixed", {"d"}},
      {Family::MaxEntangled, "max_entangled", {"d"}},
      {Family::BellDiagonal, "bell_diagonal", {"w0", "w1", "w2", "w3"}},
      {Family::Werner2, "werner2", {"phi"}},
      {Family::Isotropic, "isotropic", {"d", "f"}},
      {Family::TilesUpb, "tiles_upb", {}},
      {Family::PyramidUpb, "pyramid_upb", {}},
      {Family::Horodecki3x3, "horodecki3x3", {"a"}},
      {Family::HorodeckiMix, "horodecki_mix", {"a", "p"}},
      {Family::TwoByTwoFamily, "two_by_two_family", {"a", "p"}},
      {Family::RandomMixed, "random_mixed", {"m", "n", "rank", "seed"}},
      {Family::RandomSeparable, "random_separable", {"m", "n", "terms", "seed"}},
  };
  return table;
}

const FamilyInfo& info(Family f) {
  for (const FamilyInfo& entry : family_table()) {
    if (entry.family == f) return entry;
  }
  throw PreconditionError("unknown family");
}

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw PreconditionError("state spec: parameter " + key + " has invalid value '" + text + "'");
  }
  return value;
}

double param(const StateSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw PreconditionError(std::string(to_string(spec.family)) + ": missing parameter " + key);
  }
  return it->second;
}

std::uint64_t integer_param(const StateSpec& spec, const std::string& key, double min_value) {
  const double v = param(spec, key);
  if (v != std::floor(v) || v < min_value || v > 9.0e15) {
    std::ostringstream msg;
    msg << to_string(spec.family) << ": parameter " << key << " = " << v
        << " must be an integer >= " << min_value;
    throw PreconditionError(msg.str());
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

const char* to_string(Family f) { return info(f).name; }

Family family_from_string(const std::string& name) {
  for (const FamilyInfo& entry : family_table()) {
    if (name == entry.name) return entry.family;
  }
  std::string known;
  for (const FamilyInfo& entry : family_table()) {
    if (!known.empty()) known += ", ";
    known += entry.name;
  }
  throw PreconditionError("unknown state family '" + name + "' (known: " + known + ")");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families = [] {
    std::vector<Family> out;
    for (const FamilyInfo& entry : family_table()) out.push_back(entry.family);
    return out;
  }();
  return families;
}

std::vector<std::string> family_parameters(Family f) { return info(f).params; }

std::string StateSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << ccnr::to_string(family);
  for (const std::string& key : family_parameters(family)) {
    const auto it = params.find(key);
    if (it != params.end()) out << ' ' << key << '=' << it->second;
  }
  return out.str();
}

StateSpec parse_state_spec(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw PreconditionError("state spec: empty");
  StateSpec spec{family_from_string(tokens.front()), {}};
  const auto allowed = family_parameters(spec.family);
  for (std::size_t t = 1; t < tokens.size(); ++t) {
    const std::string& token = tokens[t];
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw PreconditionError("state spec: expected key=value, got '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (spec.family == Family::BellDiagonal && key == "weights") {
      std::vector<std::string> parts;
      std::stringstream ss(value);
      std::string part;
      while (std::getline(ss, part, ',')) parts.push_back(part);
      if (parts.size() != 4) {
        throw PreconditionError("bell_diagonal: weights needs 4 comma-separated values");
      }
      for (std::size_t k = 0; k < 4; ++k) {
        const std::string name = "w" + std::to_string(k);
        spec.params[name] = parse_number(name, parts[k]);
      }
      continue;
    }
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw PreconditionError(std::string(to_string(spec.family)) + ": unknown parameter '" +
                              key + "'");
    }
    if (spec.params.contains(key)) {
      throw PreconditionError("state spec: parameter " + key + " given twice");
    }
    spec.params[key] = parse_number(key, value);
  }
  return spec;
}

StateSpec parse_state_spec(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return parse_state_spec(tokens);
}

BipartiteState build(const StateSpec& spec) {
  for (const auto& [key, value] : spec.params) {
    const auto allowed = family_parameters(spec.family);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw PreconditionError(std::string(to_string(spec.family)) + ": unknown parameter '" +
                              key + "'");
    }
  }
  switch (spec.family) {
    case Family::MaxMixed: return max_mixed(integer_param(spec, "d", 1));
    case Family::MaxEntangled: return max_entangled(integer_param(spec, "d", 1));
    case Family::BellDiagonal:
      return bell_diagonal({param(spec, "w0"), param(spec, "w1"), param(spec, "w2"),
                            param(spec, "w3")});
    case Family::Werner2: return werner2(param(spec, "phi"));
    case Family::Isotropic: return isotropic(integer_param(spec, "d", 2), param(spec, "f"));
    case Family::TilesUpb: return tiles_upb();
    case Family::PyramidUpb: return pyramid_upb();
    case Family::Horodecki3x3: return horodecki3x3(param(spec, "a"));
    case Family::HorodeckiMix: return horodecki_mix(param(spec, "a"), param(spec, "p"));
    case Family::TwoByTwoFamily: return two_by_two_family(param(spec, "a"), param(spec, "p"));
    case Family::RandomMixed:
      return random_mixed(integer_param(spec, "m", 1), integer_param(spec, "n", 1),
                          integer_param(spec, "rank", 1), integer_param(spec, "seed", 0));
    case Family::RandomSeparable:
      return random_separable(integer_param(spec, "m", 1), integer_param(spec, "n", 1),
                              integer_param(spec, "terms", 1), integer_param(spec, "seed", 0))
          .state;
  }
  throw PreconditionError("build: unhandled family");
}

}  // namespace ccnr
