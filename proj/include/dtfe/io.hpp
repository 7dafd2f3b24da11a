#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dtfe/estimators.hpp"
#include "dtfe/geometry.hpp"
#include "dtfe/montecarlo.hpp"

namespace dtfe {

// CSV uses CRLF row endings and a header row.  Patterns round-trip
// exactly: coordinates are written with full precision.
void write_pattern_csv(std::ostream& out, const PointPattern& pattern);
PointPattern read_pattern_csv(std::istream& in);

// Tessellation structure as a JSON document: effective coordinates,
// ghost flags, cells, volumes, facet neighbours, and any jitter applied.
nlohmann::ordered_json tessellation_json(const Tessellation& tess);

// Per-cell field table: cell id, field value, cell volume.
void write_field_csv(std::ostream& out, const IntensityEstimate& est);

nlohmann::ordered_json moment_report_json(const MomentReport& report);

// Experiment configuration document.
struct ExperimentConfig {
  int dim = 1;
  Window window;
  std::string intensity = "constant{1}";
  double bound = 0.0;  // thinning bound; 0 = derive from the intensity
  Point x0{0.0, 0.0};
  double bandwidth = 0.5;
  long replicates = 100;
  std::uint64_t seed = 1;
  bool parallel = true;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

// Minimal structural validator for the subset of JSON Schema the report
// schema uses: type, properties, required, items, enum.  Returns true and
// leaves error empty on success.
bool validate_against_schema(const nlohmann::json& schema,
                             const nlohmann::json& doc, std::string* error);

}  // namespace dtfe
