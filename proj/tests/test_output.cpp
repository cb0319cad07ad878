#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sagin/output.hpp"
#include "sagin/seeding.hpp"

using namespace sagin;

namespace {

ExperimentRecord sample_record() {
    ExperimentRecord r;
    r.strategy = "evolutionary";
    r.n_devices = 300;
    r.replication = 2;
    r.round = 739;
    r.avg_utility = 1.0807771234567;
    r.normalized_utility = 0.99947412345;
    r.mean_risk_probability = 1.0 / 3.0;
    r.mean_queuing_delay = 0.106419;
    r.converged = true;
    r.shares = {0.35, 0.3, 0.2, 0.15};
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("empty record list writes only the header") {
    std::ostringstream out;
    write_csv({}, out);
    CHECK(out.str() ==
          "strategy,n_devices,replication,round,avg_utility,normalized_utility,mean_risk_probability,"
          "mean_queuing_delay,converged,shares\n");
}

TEST_CASE("csv rows use nine significant digits") {
    std::ostringstream out;
    write_csv({sample_record()}, out);
    const std::string body = out.str().substr(out.str().find('\n') + 1);
    CHECK(body == "evolutionary,300,2,739,1.08077712,0.999474123,0.333333333,0.106419,true,0.35;0.3;0.2;0.15\n");
    CHECK(format_double(123456789012.0) == "1.23456789e+11");
}

TEST_CASE("json lines round-trip") {
    const auto r = sample_record();
    const auto back = record_from_json(record_to_json(r));
    CHECK(back == r);
    CHECK(record_to_json(r).find("\"mean_queuing_delay\"") != std::string::npos);
}

TEST_CASE("emit sorts rows and surfaces the path on failure") {
    auto a = sample_record();
    auto b = sample_record();
    auto c = sample_record();
    b.strategy = "random";
    b.n_devices = 100;
    c.n_devices = 100;
    const std::string path = "emit_sorted.csv";
    emit({b, a, c}, path, OutputFormat::Csv);
    std::istringstream in(slurp(path));
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1].rfind("evolutionary,100,", 0) == 0);
    CHECK(rows[2].rfind("evolutionary,300,", 0) == 0);
    CHECK(rows[3].rfind("random,100,", 0) == 0);
    std::remove(path.c_str());

    try {
        emit({a}, "/nonexistent-dir/out.csv", OutputFormat::Csv);
        FAIL("wrote to a missing directory");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
    }
}

TEST_CASE("jsonl emit mirrors the records") {
    const std::string path = "emit_records.jsonl";
    emit({sample_record()}, path, OutputFormat::JsonLines);
    const std::string text = slurp(path);
    CHECK(record_from_json(text.substr(0, text.find('\n'))) == sample_record());
    std::remove(path.c_str());
}

TEST_CASE("trace rows") {
    std::ostringstream out;
    write_trace_csv({{"evolutionary", 100, 0, 3, 0.5, {0.5, 0.5}}}, out);
    CHECK(out.str() == "strategy,n_devices,replication,round,avg_utility,shares\nevolutionary,100,0,3,0.5,0.5;0.5\n");
}

TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
    CHECK(derive_seed(5, "demand") == derive_seed(5, "demand"));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
}
