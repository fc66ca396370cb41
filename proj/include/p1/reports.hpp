#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "p1/integrator.hpp"

namespace p1 {

struct TableRow {
    std::string quantity;
    double computed = kNaN;
    std::string reference;  // printed digits
    double abs_error = kNaN;
    bool pass = false;
};

struct TableReport {
    std::string id;
    double tol = 0;
    std::vector<TableRow> rows;
    double seconds = 0;
    bool pass() const;
};

// Table n in 1..4; n = 0 gives the constants and bounds sheet.
// tol <= 0 keeps the per-table default (1e-5 for table 1, 1e-6 otherwise, 1e-12 for constants).
TableReport run_table(int n, const SolveConfig& cfg, double tol = 0);

struct ConjectureReport {
    int id = 0;
    std::string statement;
    int checked = 0;
    int violations = 0;
    double worst_margin = kNaN;  // smallest slack of the tested inequality (negative on violation)
    std::vector<std::string> notes;
    double seconds = 0;
    bool pass() const { return violations == 0; }
};

ConjectureReport scan_conjecture(int id, const SolveConfig& cfg, std::uint64_t seed = 1);

void emit_csv(std::ostream& os, const TableReport& r);
nlohmann::json to_json(const TableReport& r);
nlohmann::json to_json(const ConjectureReport& r);
void print_pretty(std::ostream& os, const TableReport& r);
void print_pretty(std::ostream& os, const ConjectureReport& r);

}  // namespace p1
