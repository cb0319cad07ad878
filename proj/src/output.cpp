#include "sagin/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace sagin {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_shares(const std::vector<double>& shares) {
    std::string s;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        if (i) s += ';';
        s += format_double(shares[i]);
    }
    return s;
}

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.strategy << ',' << r.n_devices << ',' << r.replication << ',' << r.round << ','
            << format_double(r.avg_utility) << ',' << format_double(r.normalized_utility) << ','
            << format_double(r.mean_risk_probability) << ',' << format_double(r.mean_queuing_delay) << ','
            << (r.converged ? "true" : "false") << ',' << format_shares(r.shares) << '\n';
    }
}

std::string record_to_json(const ExperimentRecord& r) {
    const nlohmann::ordered_json j = {
        {"strategy", r.strategy},
        {"n_devices", r.n_devices},
        {"replication", r.replication},
        {"round", r.round},
        {"avg_utility", r.avg_utility},
        {"normalized_utility", r.normalized_utility},
        {"mean_risk_probability", r.mean_risk_probability},
        {"mean_queuing_delay", r.mean_queuing_delay},
        {"converged", r.converged},
        {"shares", r.shares},
    };
    return j.dump();
}

ExperimentRecord record_from_json(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    ExperimentRecord r;
    r.strategy = j.at("strategy").get<std::string>();
    r.n_devices = j.at("n_devices").get<std::size_t>();
    r.replication = j.at("replication").get<std::size_t>();
    r.round = j.at("round").get<std::size_t>();
    r.avg_utility = j.at("avg_utility").get<double>();
    r.normalized_utility = j.at("normalized_utility").get<double>();
    r.mean_risk_probability = j.at("mean_risk_probability").get<double>();
    r.mean_queuing_delay = j.at("mean_queuing_delay").get<double>();
    r.converged = j.at("converged").get<bool>();
    r.shares = j.at("shares").get<std::vector<double>>();
    return r;
}

void write_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    for (const auto& r : records) out << record_to_json(r) << '\n';
}

void emit(std::vector<ExperimentRecord> records, const std::string& path, OutputFormat format) {
    sort_records(records);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    if (format == OutputFormat::Csv) write_csv(records, out);
    else write_jsonl(records, out);
    out.flush();
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

void write_trace_csv(const std::vector<TraceRow>& rows, std::ostream& out) {
    out << "strategy,n_devices,replication,round,avg_utility,shares\n";
    for (const auto& t : rows)
        out << t.strategy << ',' << t.n_devices << ',' << t.replication << ',' << t.round << ','
            << format_double(t.avg_utility) << ',' << format_shares(t.shares) << '\n';
}

void emit_trace(const std::vector<TraceRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open trace file '" + path + "'");
    write_trace_csv(rows, out);
    out.flush();
    if (!out) throw IoError("failed writing trace file '" + path + "'");
}

} // namespace sagin
