#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "nhqfi/acceptance.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    std::vector<int> ids;
    bool quiet = false;
    app.add_option("--criterion", ids, "criterion number (repeatable); default all");
    app.add_flag("--quiet", quiet, "summary lines only");
    CLI11_PARSE(app, argc, argv);
    if (ids.empty())
        for (int i = 1; i <= nhqfi::acceptance::count; ++i) ids.push_back(i);

    bool all = true;
    std::vector<nhqfi::acceptance::CriterionResult> results;
    for (int id : ids) {
        results.push_back(nhqfi::acceptance::run(id));
        const auto& r = results.back();
        std::cout << (quiet ? nhqfi::acceptance::summary_line(r) + "\n" : nhqfi::acceptance::report(r)) << std::flush;
        all = all && r.pass();
    }
    if (ids.size() > 1) {
        std::cout << "\nsummary\n";
        for (const auto& r : results) std::cout << nhqfi::acceptance::summary_line(r) << '\n';
    }
    return all ? 0 : 1;
}
