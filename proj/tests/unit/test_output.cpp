#include <doctest.h>

#include <cmath>
#include <limits>

#include "nhqfi/figures.hpp"
#include "nhqfi/table.hpp"

using namespace nhqfi;

TEST_SUITE("output") {

TEST_CASE("numbers round-trip exactly")
{
    for (double v : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 0.0}) CHECK(table::number(table::fmt(v)) == v);
    CHECK(std::isnan(table::number(table::fmt(std::nan("")))));
    CHECK(table::number(table::fmt(-INFINITY)) == -INFINITY);
}

TEST_CASE("csv round trip")
{
    table::Table t;
    t.columns = {"a", "b"};
    t.add({"1", "x_y"});
    t.add({"2", "plain"});
    const auto back = table::parse_csv(table::to_csv(t));
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
    CHECK(back.numbers("a") == std::vector<double>{1, 2});
    CHECK_THROWS(back.column("missing"));
}

TEST_CASE("figures are deterministic and SVG comes from CSV")
{
    KeyValues cfg;
    for (const auto& name : {"fig2", "figS2"}) {
        const auto a = figures::make(name, cfg);
        const auto b = figures::make(name, cfg);
        REQUIRE(a.panels.size() == b.panels.size());
        for (std::size_t i = 0; i < a.panels.size(); ++i) {
            const auto csv = table::to_csv(a.panels[i].data);
            CHECK(csv == table::to_csv(b.panels[i].data));
            const auto svg = figures::render_svg(a.panels[i], csv);
            CHECK(svg.find("<svg") != std::string::npos);
            CHECK(svg == figures::render_svg(b.panels[i], table::to_csv(b.panels[i].data)));
        }
    }
    CHECK_THROWS(figures::make("nope", cfg));
}

TEST_CASE("config list ranges")
{
    const auto kv = KeyValues::parse("ns = 10:20:5\nxs = 0.5, 1.5\n# comment\n");
    CHECK(kv.get_int_list("ns", {}) == std::vector<int>{10, 15, 20});
    CHECK(kv.get_list("xs", {}) == std::vector<double>{0.5, 1.5});
    CHECK(kv.get_int("missing", 7) == 7);
}

}
