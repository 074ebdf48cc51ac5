#include "nonrev/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nonrev {

ChainSpec chain_from_json(const Json& j) {
  if (!j.contains("states") || !j["states"].is_array())
    throw InvalidSpec("chain JSON needs a \"states\" array");
  std::vector<std::string> labels;
  for (const auto& s : j["states"]) labels.push_back(s.get<std::string>());
  const int n = static_cast<int>(labels.size());
  if (n < 2) throw InvalidSpec("chain needs at least two states");

  Matrix rates = Matrix::Zero(n, n);
  if (j.contains("rates")) {
    for (const auto& entry : j["rates"]) {
      if (!entry.is_array() || entry.size() != 3)
        throw InvalidSpec("rate entries must be [x, y, value]");
      const int x = entry[0].get<int>();
      const int y = entry[1].get<int>();
      if (x < 0 || y < 0 || x >= n || y >= n || x == y)
        throw InvalidSpec("rate entry has bad state indices");
      rates(x, y) = entry[2].get<double>();
    }
  }
  return ChainSpec(std::move(rates), std::move(labels));
}

Json chain_to_json(const ChainSpec& spec) {
  Json j;
  Json states = Json::array();
  for (int x = 0; x < spec.n_states(); ++x) states.push_back(spec.label(x));
  j["states"] = std::move(states);
  Json rates = Json::array();
  for (int x = 0; x < spec.n_states(); ++x)
    for (int y = 0; y < spec.n_states(); ++y)
      if (spec.rate(x, y) > 0.0)
        rates.push_back(Json::array({x, y, spec.rate(x, y)}));
  j["rates"] = std::move(rates);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec("cannot parse " + path + ": " + e.what());
  }
  return j;
}

ChainSpec load_chain(const std::string& path) {
  return chain_from_json(load_json_file(path));
}

EdgeField edge_field_from_json(const Json& j, const EdgeSet& support) {
  if (!j.contains("edges") || !j["edges"].is_array())
    throw InvalidSpec("edge field JSON needs an \"edges\" array");
  Vector v = Vector::Zero(support.size());
  for (const auto& entry : j["edges"]) {
    if (!entry.is_array() || entry.size() != 3)
      throw InvalidSpec("edge entries must be [x, y, value]");
    const int x = entry[0].get<int>();
    const int y = entry[1].get<int>();
    const int e = support.index(x, y);
    if (e < 0)
      throw InvalidSpec("edge (" + std::to_string(x) + "," +
                        std::to_string(y) + ") is not on the chain support");
    const double value = entry[2].get<double>();
    v(e) = x < y ? value : -value;
  }
  return EdgeField(support, std::move(v));
}

Json edge_field_to_json(const EdgeField& field) {
  Json edges = Json::array();
  for (int e = 0; e < field.size(); ++e) {
    const auto [x, y] = field.support.edge(e);
    edges.push_back(Json::array({x, y, field.values(e)}));
  }
  Json j;
  j["edges"] = std::move(edges);
  return j;
}

Density density_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : j.at("values");
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
  v /= v.sum();
  return Density(std::move(v));
}

Json density_to_json(const Density& rho) {
  Json values = Json::array();
  for (int i = 0; i < rho.size(); ++i) values.push_back(rho(i));
  Json j;
  j["values"] = std::move(values);
  return j;
}

GridModel grid_from_json(const Json& j) {
  const int n = j.at("n_cells").get<int>();
  const auto read = [&](const char* key) {
    const Json& arr = j.at(key);
    Vector v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
    return v;
  };
  return GridModel(n, read("drift"), read("diffusion"));
}

Json grid_to_json(const GridModel& model) {
  Json j;
  j["n_cells"] = model.n_cells;
  Json drift = Json::array();
  Json diffusion = Json::array();
  for (int f = 0; f < model.n_cells; ++f) {
    drift.push_back(model.drift(f));
    diffusion.push_back(model.diffusion(f));
  }
  j["drift"] = std::move(drift);
  j["diffusion"] = std::move(diffusion);
  return j;
}

GridModel load_grid(const std::string& path) {
  return grid_from_json(load_json_file(path));
}

namespace {

void dump_value(const Json& j, std::string& out, bool pretty, int depth) {
  const std::string pad =
      pretty ? std::string(2 * static_cast<std::size_t>(depth) + 2, ' ') : "";
  const std::string close_pad =
      pretty ? std::string(2 * static_cast<std::size_t>(depth), ' ') : "";
  const char* nl = pretty ? "\n" : "";
  const char* colon = pretty ? ": " : ":";

  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nl;
        out += pad;
        out += Json(it.key()).dump();
        out += colon;
        dump_value(it.value(), out, pretty, depth + 1);
      }
      if (!first) {
        out += nl;
        out += close_pad;
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        out += nl;
        out += pad;
        dump_value(item, out, pretty, depth + 1);
      }
      if (!first) {
        out += nl;
        out += close_pad;
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, bool pretty) {
  std::string out;
  dump_value(j, out, pretty, 0);
  return out;
}

}  // namespace nonrev
