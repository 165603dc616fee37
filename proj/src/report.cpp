#include "tqd/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace tqd {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot serialize a non-finite number");
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write_scalar(std::string& out, const Json& j) {
  if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else {
    out += j.dump();
  }
}

void write(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      out += Json(key).dump();
      out += ": ";
      write(out, value, indent + 2);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = true;
    for (const auto& v : j) flat = flat && is_scalar(v);
    if (flat) {
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ", ";
        first = false;
        write_scalar(out, v);
      }
      out += "]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      write(out, v, indent + 2);
    }
    out += "\n" + close + "]";
  } else {
    write_scalar(out, j);
  }
}

}  // namespace

std::string dump_report(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += '\n';
  return out;
}

Json to_json(const Table<double>& t) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < t.rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < t.cols; ++c) row.push_back(t(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ExclusionMatching& m) {
  Json prep = Json::array();
  for (auto p : m.outcome_to_preparation) prep.push_back(p + 1);
  return Json{{"outcome_to_preparation", std::move(prep)}, {"certified_amplitude", m.certified_amplitude}};
}

Json model_to_json(const OnticModel& model) {
  Json parties = Json::object();
  Json epistemic = Json::object();
  for (const auto& p : model.parties) {
    parties[p.name] = p.points;
    Json states = Json::object();
    for (const auto& s : p.states) states[s.label] = s.probabilities;
    epistemic[p.name] = std::move(states);
  }
  Json response = Json::object();
  for (std::size_t r = 0; r < model.response.rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < model.response.cols; ++c) row.push_back(model.response(r, c));
    response[std::to_string(r)] = std::move(row);
  }
  return Json{{"schema_version", kSchemaVersion},
              {"parties", std::move(parties)},
              {"epistemic", std::move(epistemic)},
              {"response", std::move(response)}};
}

namespace {

std::vector<double> probability_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw std::invalid_argument(where + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

OnticModel model_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("model file: top level must be an object");
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion) {
    throw std::invalid_argument("model file: unsupported or missing schema_version (expected \"1\")");
  }
  for (const char* key : {"parties", "epistemic", "response"}) {
    if (!j.contains(key) || !j[key].is_object()) {
      throw std::invalid_argument(std::string("model file: missing object \"") + key + "\"");
    }
  }
  OnticModel model;
  for (const auto& [name, points] : j["parties"].items()) {
    if (!points.is_array()) throw std::invalid_argument("model file: parties." + name + " must be an array");
    Party party{name, {}, {}};
    for (const auto& p : points) {
      if (!p.is_string()) throw std::invalid_argument("model file: point labels must be strings");
      party.points.push_back(p.get<std::string>());
    }
    if (!j["epistemic"].contains(name)) throw std::invalid_argument("model file: no epistemic states for " + name);
    const auto& states = j["epistemic"][name];
    if (!states.is_object() || states.size() != 2) {
      throw std::invalid_argument("model file: party " + name + " needs exactly two epistemic states");
    }
    std::size_t s = 0;
    for (const auto& [label, probs] : states.items()) {
      party.states[s++] = {label, probability_array(probs, "epistemic." + name + "." + label)};
    }
    model.parties.push_back(std::move(party));
  }
  if (j["epistemic"].size() != model.parties.size()) {
    throw std::invalid_argument("model file: epistemic names a party not listed in parties");
  }

  const auto& response = j["response"];
  const std::size_t rows = model.joint_points();
  if (response.size() != rows) {
    throw std::invalid_argument("model file: response must have one row per joint point (" + std::to_string(rows) +
                                ")");
  }
  std::size_t cols = 0;
  std::set<std::size_t> seen;
  std::vector<std::pair<std::size_t, std::vector<double>>> entries;
  for (const auto& [key, row] : response.items()) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw std::invalid_argument("model file: response key \"" + key + "\" is not a joint point index");
    }
    if (idx >= rows || !seen.insert(idx).second) {
      throw std::invalid_argument("model file: response key " + key + " out of range or repeated");
    }
    auto values = probability_array(row, "response." + key);
    if (cols == 0) cols = values.size();
    if (values.size() != cols) throw std::invalid_argument("model file: response rows differ in length");
    entries.emplace_back(idx, std::move(values));
  }
  model.response = Table<double>(rows, cols);
  for (const auto& [idx, values] : entries)
    for (std::size_t c = 0; c < cols; ++c) model.response(idx, c) = values[c];
  if (cols != model.preparations()) {
    throw std::invalid_argument("model file: response must have 2^parties outcomes");
  }
  validate(model);
  return model;
}

}  // namespace tqd
