#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sagin/experiment.hpp"

namespace sagin {

enum class OutputFormat { Csv, JsonLines };

inline constexpr const char* kCsvHeader =
    "strategy,n_devices,replication,round,avg_utility,normalized_utility,mean_risk_probability,"
    "mean_queuing_delay,converged,shares";

/// Nine significant digits.
std::string format_double(double v);
std::string format_shares(const std::vector<double>& shares);

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
void write_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& out);
std::string record_to_json(const ExperimentRecord& record);
ExperimentRecord record_from_json(const std::string& line);

/// Writes the records sorted by (strategy, n_devices, replication). Throws IoError with the path.
void emit(std::vector<ExperimentRecord> records, const std::string& path, OutputFormat format);

void write_trace_csv(const std::vector<TraceRow>& rows, std::ostream& out);
void emit_trace(const std::vector<TraceRow>& rows, const std::string& path);

} // namespace sagin
