// Channel documents: the versioned JSON schema consumed and emitted by the
// CLI, plus the named presets (BSC, identity, the shift-invariant example
// families, discretized Gaussians).

#ifndef AUGUSTIN_CHANNEL_IO_HPP
#define AUGUSTIN_CHANNEL_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "augustin/capacity.hpp"
#include "augustin/core.hpp"

namespace augustin {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChannelDocument {
  std::string name;
  Channel channel;
  std::optional<CostSpec> cost;
  std::optional<AnalyticDualCurve> analytic;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Parses `{"schema":1, "name", "inputs", "outputs", "rows", "cost"?,
/// "metadata"?}`.  Unknown top-level fields are rejected.
ChannelDocument parse_channel_document(const nlohmann::json& j);

nlohmann::json channel_document_to_json(const ChannelDocument& doc);

/// Builds a preset from a `preset:name?key=value&...` string:
///   preset:bsc?delta=0.1          preset:identity?n=4
///   preset:affine?N=8             preset:nonusc?N=8
///   preset:product?N=2
///   preset:gauss-disc?sigma2=1&cells=1600&range=8
ChannelDocument build_preset(const std::string& spec);

/// Loads either a preset string or a JSON file path.
ChannelDocument load_channel_document(const std::string& path_or_preset);

}  // namespace augustin

#endif  // AUGUSTIN_CHANNEL_IO_HPP
