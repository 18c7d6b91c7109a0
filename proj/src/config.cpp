#include "wrinkle/config.hpp"

#include <initializer_list>
#include <set>

#include <json.hpp>

#include "wrinkle/errors.hpp"
#include "wrinkle/report.hpp"
#include "wrinkle/scaling.hpp"

namespace wrinkle {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ValidationError("config.type", where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.contains(k))
      throw ValidationError("config.unknown_key",
                            "unknown key '" + (where.empty() ? k : where + "." + k) + "'");
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("config.type", "bad value for '" + where + key + "'");
  }
}

void apply_override(json& root, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ValidationError("config.override", "override '" + item + "' is not key=value");
  const std::string path = item.substr(0, eq), text = item.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ValidationError("config.override", "empty key in '" + path + "'");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) (*node)[key] = json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, std::span<const std::string> overrides) {
  json root = json::parse(text, nullptr, false, true);
  if (root.is_discarded()) throw ValidationError("config.parse", "config is not valid JSON");
  for (const auto& o : overrides) apply_override(root, o);

  check_keys(root, "", {"alpha_s", "r0", "R", "h", "grid", "sweep", "output", "jobs", "seed",
                        "lemma1_cases", "unit"});
  RunConfig c;
  read(root, "alpha_s", c.params.alpha_s, "");
  read(root, "r0", c.params.r0, "");
  read(root, "R", c.params.R, "");
  read(root, "h", c.params.h, "");
  read(root, "unit", c.unit, "");
  read(root, "output", c.output, "");
  read(root, "jobs", c.jobs, "");
  read(root, "lemma1_cases", c.lemma1_cases, "");
  if (root.contains("seed")) {
    std::uint64_t seed = 0;
    read(root, "seed", seed, "");
    c.seed = seed;
  }
  if (root.contains("grid")) {
    const json& g = root["grid"];
    check_keys(g, "grid", {"n", "refinement"});
    read(g, "n", c.grid.n, "grid.");
    if (g.contains("refinement")) {
      std::string name;
      read(g, "refinement", name, "grid.");
      c.grid.refinement = parse_refinement(name);
    }
  }
  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    check_keys(s, "sweep", {"h", "start", "stop", "points", "budget"});
    read(s, "h", c.sweep.h, "sweep.");
    read(s, "start", c.sweep.start, "sweep.");
    read(s, "budget", c.sweep.budget, "sweep.");
    if (s.contains("stop")) {
      double stop = 0;
      read(s, "stop", stop, "sweep.");
      c.sweep.stop = stop;
    }
    if (s.contains("points")) {
      int points = 0;
      read(s, "points", points, "sweep.");
      c.sweep.points = points;
    }
    if (c.sweep.stop.has_value() != c.sweep.points.has_value())
      throw ValidationError("config.sweep", "sweep.stop and sweep.points go together");
    if (!c.sweep.h.empty() && c.sweep.stop)
      throw ValidationError("config.sweep", "give either sweep.h or a geometric range");
  }
  if (c.jobs < 0) throw ValidationError("config.jobs", "jobs must be non-negative");
  validate_params(c.params);
  return c;
}

RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const ValidationError&) {
    throw ValidationError("config.missing", "cannot read config file " + path.string());
  }
  return parse_config(text, overrides);
}

std::string config_json(const RunConfig& c) {
  json j = {{"alpha_s", c.params.alpha_s},
            {"r0", c.params.r0},
            {"R", c.params.R},
            {"h", c.params.h},
            {"grid", {{"n", c.grid.n}, {"refinement", std::string(to_string(c.grid.refinement))}}},
            {"unit", c.unit},
            {"output", c.output},
            {"jobs", c.jobs},
            {"lemma1_cases", c.lemma1_cases}};
  json s = {{"start", c.sweep.start}, {"budget", c.sweep.budget}};
  if (!c.sweep.h.empty()) s["h"] = c.sweep.h;
  if (c.sweep.stop) s["stop"] = *c.sweep.stop;
  if (c.sweep.points) s["points"] = *c.sweep.points;
  j["sweep"] = s;
  if (c.seed) j["seed"] = *c.seed;
  return j.dump(2) + "\n";
}

std::vector<double> sweep_h_list(const RunConfig& c) {
  if (!c.sweep.h.empty()) return c.sweep.h;
  if (c.sweep.stop) return geometric_h(c.sweep.start, *c.sweep.stop, *c.sweep.points);
  return default_h_list(c.params, c.sweep.start, c.sweep.budget);
}

}  // namespace wrinkle
