#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nhqfi::acceptance {

struct Check {
    std::string what;
    double measured = 0;
    double expected = 0;
    double tolerance = 0;  // |measured - expected| <= tolerance unless `note` says otherwise
    bool pass = false;
    std::string note;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0;
    double budget_seconds = 0;  // 0: no runtime limit
    std::string error;          // exception text when the run aborted
    bool pass() const;
};

constexpr int count = 11;

CriterionResult run(int id);
std::vector<CriterionResult> run_all();

// "criterion 3: PASS  QFI route equivalence (12.3 s)"
std::string summary_line(const CriterionResult& r);
// Summary line followed by one indented line per check.
std::string report(const CriterionResult& r);
nlohmann::json to_json(const CriterionResult& r);

}  // namespace nhqfi::acceptance
