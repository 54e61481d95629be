#pragma once

#include <string>

#include <json.hpp>

#include "paraairy/diagnostics.hpp"
#include "paraairy/iteration.hpp"
#include "paraairy/norms.hpp"

namespace paraairy {

/// All JSON output goes through dump_canonical: object keys sort (nlohmann
/// objects are ordered maps) and doubles print in shortest round-trip form,
/// so byte stability only depends on the computed values.
std::string dump_canonical(const nlohmann::json& j);

nlohmann::json to_json(const NormReport& r);
nlohmann::json to_json(const ProbeResult& r);
nlohmann::json to_json(const ConvergenceTrace& t);
nlohmann::json record_json(const OuterIterationRecord& r);

/// One JSON object per line, one line per outer iteration.
std::string trace_jsonl(const ConvergenceTrace& t);

/// Rows t,x,re,im over every stride-th time slice.
std::string snapshots_csv(const SpaceTimeField& u, double t_end, int stride);

struct FieldCsv {
  int n_points = 0;
  double length = 0.0;
  std::vector<Complex> samples;
};

/// Reads an `x,re,im` table; the grid is inferred from the rows (uniform
/// spacing, power-of-two count).
FieldCsv read_field_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace paraairy
