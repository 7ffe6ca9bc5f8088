#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chsplice/eval_harness.hpp"
#include "json.hpp"

namespace chsplice::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "chsplice-report/1";

Json config_to_json(const ScenarioConfig& cfg);
Json report_to_json(const ScenarioReport& report);

/// Canonical serialized report. Identical reports give identical bytes.
std::string serialize_report(const ScenarioReport& report);

/// One row of a recovered-path table: what `simulate` writes as
/// recovered.csv and `splice` writes as splice.csv.
struct RecoveredRow {
  std::size_t packet = 0;
  std::size_t rank = 0;
  std::size_t grid_index = 0;
  double delay_ns = 0.0;
  double gain_magnitude = 0.0;
  double gain_phase_rad = 0.0;
};

inline constexpr const char* kRecoveredHeader =
    "packet,rank,grid_index,delay_ns,gain_magnitude,gain_phase_rad";
inline constexpr const char* kPeaksHeader =
    "packet,path,true_delay_ns,est_delay_ns,error_samples,matched";
inline constexpr const char* kEcdfHeader = "rank,delay_ns,probability";

/// Rows for one packet. Gains are coefficients divided by sqrt(stacked_length).
std::vector<RecoveredRow> recovered_rows(std::size_t packet,
                                         const std::vector<RecoveredPath>& paths,
                                         std::size_t stacked_length);

void write_recovered_csv(std::ostream& os, const std::vector<RecoveredRow>& rows);
void write_peaks_csv(std::ostream& os, const ScenarioReport& report);
void write_ecdf_csv(std::ostream& os, const ScenarioReport& report);

}  // namespace chsplice::cli
