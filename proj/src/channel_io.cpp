#include "augustin/channel_io.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "augustin/gaussian.hpp"
#include "augustin/shift_examples.hpp"

namespace augustin {

using nlohmann::json;

namespace {

std::vector<std::string> parse_labels(const json& j, const char* what) {
  std::vector<std::string> out;
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  for (const auto& v : j) {
    if (v.is_string())
      out.push_back(v.get<std::string>());
    else if (v.is_number())
      out.push_back(v.dump());
    else
      throw SchemaError(std::string(what) + " labels must be strings or numbers");
  }
  return out;
}

std::map<std::string, std::string> parse_query(const std::string& q) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < q.size()) {
    std::size_t amp = q.find('&', pos);
    std::string item = q.substr(pos, amp == std::string::npos ? amp : amp - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw SchemaError("preset parameter without value: " + item);
    kv[item.substr(0, eq)] = item.substr(eq + 1);
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }
  return kv;
}

double get_num(const std::map<std::string, std::string>& kv,
               const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw SchemaError("preset parameter " + key + " is not a number");
  }
}

ChannelDocument from_family(std::string name, ShiftFamily fam,
                            const std::string& family_tag) {
  ChannelDocument doc{std::move(name), std::move(fam.channel),
                      std::move(fam.cost), std::move(fam.analytic), {}};
  doc.metadata["analytic_dual"] = {
      {"family", family_tag},
      {"lambda_min", doc.analytic->lambda_min_finite},
      {"plateau", doc.analytic->plateau},
      {"center", doc.analytic->center.weights()}};
  return doc;
}

}  // namespace

ChannelDocument parse_channel_document(const json& j) {
  if (!j.is_object()) throw SchemaError("document must be a JSON object");
  static const char* known[] = {"schema", "name",     "inputs",
                                "outputs", "rows", "cost", "metadata"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw SchemaError("unknown field: " + it.key());
  }
  if (!j.contains("schema") || !j["schema"].is_number_integer() ||
      j["schema"].get<int>() != 1)
    throw SchemaError("missing or unsupported schema version");
  for (const char* k : {"name", "inputs", "outputs", "rows"})
    if (!j.contains(k)) throw SchemaError(std::string("missing field: ") + k);

  auto inputs = parse_labels(j["inputs"], "inputs");
  auto outputs = parse_labels(j["outputs"], "outputs");
  if (!j["rows"].is_array() || j["rows"].size() != inputs.size())
    throw SchemaError("rows must be one array per input");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j["rows"]) {
    if (!r.is_array() || r.size() != outputs.size())
      throw SchemaError("row length must match the output count");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw SchemaError("row entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }

  ChannelDocument doc{j["name"].get<std::string>(),
                      Channel(std::move(rows), inputs, outputs),
                      std::nullopt,
                      std::nullopt,
                      json::object()};

  if (j.contains("cost")) {
    const auto& jc = j["cost"];
    if (!jc.is_array() || jc.size() != inputs.size())
      throw SchemaError("cost must be one vector per input");
    std::vector<std::vector<double>> costs;
    std::size_t dim = 0;
    for (const auto& c : jc) {
      if (!c.is_array() || c.empty())
        throw SchemaError("cost rows must be non-empty arrays");
      if (dim == 0) dim = c.size();
      if (c.size() != dim) throw SchemaError("ragged cost rows");
      std::vector<double> v;
      for (const auto& e : c) {
        if (!e.is_number()) throw SchemaError("cost entries must be numbers");
        v.push_back(e.get<double>());
      }
      costs.push_back(std::move(v));
    }
    try {
      doc.cost = CostSpec(dim, std::move(costs));
    } catch (const std::exception& e) {
      throw SchemaError(std::string("invalid cost: ") + e.what());
    }
  }

  if (j.contains("metadata")) {
    if (!j["metadata"].is_object())
      throw SchemaError("metadata must be an object");
    doc.metadata = j["metadata"];
    if (doc.metadata.contains("analytic_dual")) {
      const auto& ad = doc.metadata["analytic_dual"];
      if (!ad.contains("lambda_min") || !ad.contains("plateau") ||
          !ad.contains("center"))
        throw SchemaError("analytic_dual needs lambda_min, plateau, center");
      std::vector<double> center = ad["center"].get<std::vector<double>>();
      doc.analytic = AnalyticDualCurve{ad["lambda_min"].get<double>(),
                                       ad["plateau"].get<double>(),
                                       Prob(std::move(center))};
    }
  }
  return doc;
}

json channel_document_to_json(const ChannelDocument& doc) {
  json j;
  j["schema"] = 1;
  j["name"] = doc.name;
  j["inputs"] = doc.channel.input_labels();
  j["outputs"] = doc.channel.output_labels();
  json rows = json::array();
  for (std::size_t x = 0; x < doc.channel.num_inputs(); ++x) {
    auto r = doc.channel.row(x);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  j["rows"] = rows;
  if (doc.cost) {
    json costs = json::array();
    for (std::size_t x = 0; x < doc.cost->num_inputs(); ++x)
      costs.push_back(doc.cost->cost(x));
    j["cost"] = costs;
  }
  if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
  return j;
}

ChannelDocument build_preset(const std::string& spec) {
  std::string body = spec.substr(std::string("preset:").size());
  std::string name = body;
  std::map<std::string, std::string> kv;
  if (auto qpos = body.find('?'); qpos != std::string::npos) {
    name = body.substr(0, qpos);
    kv = parse_query(body.substr(qpos + 1));
  }

  if (name == "bsc") {
    double delta = get_num(kv, "delta", 0.1);
    if (!(delta >= 0.0 && delta <= 1.0))
      throw SchemaError("preset:bsc needs delta in [0,1]");
    return ChannelDocument{
        "bsc(" + std::to_string(delta) + ")",
        Channel({{1.0 - delta, delta}, {delta, 1.0 - delta}}),
        std::nullopt, std::nullopt, json::object()};
  }
  if (name == "identity") {
    int n = static_cast<int>(get_num(kv, "n", 2));
    if (n < 1) throw SchemaError("preset:identity needs n >= 1");
    std::vector<std::vector<double>> rows(
        n, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
    return ChannelDocument{"identity(" + std::to_string(n) + ")",
                           Channel(std::move(rows)), std::nullopt,
                           std::nullopt, json::object()};
  }
  if (name == "affine") {
    int N = static_cast<int>(get_num(kv, "N", 8));
    return from_family("affine(N=" + std::to_string(N) + ")",
                       build_affine_example(N), "affine");
  }
  if (name == "nonusc") {
    int N = static_cast<int>(get_num(kv, "N", 8));
    return from_family("nonusc(N=" + std::to_string(N) + ")",
                       build_nonusc_example(N), "nonusc");
  }
  if (name == "product") {
    int N = static_cast<int>(get_num(kv, "N", 2));
    return from_family("product(N=" + std::to_string(N) + ")",
                       build_product_example(N), "product");
  }
  if (name == "gauss-disc") {
    double sigma2 = get_num(kv, "sigma2", 1.0);
    int cells = static_cast<int>(get_num(kv, "cells", 1600));
    double range = get_num(kv, "range", 8.0);
    int inputs = static_cast<int>(get_num(kv, "inputs", 41));
    if (sigma2 <= 0.0 || cells < 2 || range <= 0.0 || inputs < 1)
      throw SchemaError("preset:gauss-disc parameters out of range");
    std::vector<double> points;
    double half = range / 2.0;
    for (int i = 0; i < inputs; ++i)
      points.push_back(inputs == 1 ? 0.0
                                   : -half + range / (inputs - 1) * i / 2.0 * 2.0);
    auto [ch, cost] = discretize_scalar_gaussian(
        sigma2, points, -range, range, static_cast<std::size_t>(cells));
    return ChannelDocument{"gauss-disc", std::move(ch), std::move(cost),
                           std::nullopt, json::object()};
  }
  throw SchemaError("unknown preset: " + name);
}

ChannelDocument load_channel_document(const std::string& path_or_preset) {
  if (path_or_preset.rfind("preset:", 0) == 0)
    return build_preset(path_or_preset);
  std::ifstream in(path_or_preset);
  if (!in) throw SchemaError("cannot open channel file: " + path_or_preset);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_channel_document(j);
}

}  // namespace augustin
