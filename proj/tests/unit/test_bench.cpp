#include <doctest.h>

#include <cmath>

#include "nhqfi/bench.hpp"

using namespace nhqfi;

TEST_SUITE("bench") {

TEST_CASE("both solvers give the same spectrum")
{
    for (int n : {31, 64, 200}) {
        const auto s = bench::bench_spec(n, 0.5);
        CHECK(bench::spectra_agreement(s, 1e-8) < 1e-10);
        CHECK(bench::solve(s, bench::Method::banded_specialized).size() == n);
    }
}

TEST_CASE("small run produces accepted records and csv")
{
    bench::BenchOptions o;
    o.ns = {40, 60, 80, 100};
    o.repeats = 2;
    const auto recs = bench::run_bench(o);
    REQUIRE(recs.size() == 8);
    for (const auto& r : recs) {
        CHECK(r.accepted);
        CHECK(r.max_residual < 1e-8);
        CHECK(r.peak_mem_bytes > 0);
    }
    const auto sc = bench::scaling_fit(recs);
    CHECK(sc.size() == 2);
    const auto csv = bench::bench_csv(recs);
    CHECK(csv.rfind("N,method,wall_seconds_median,wall_seconds_iqr,peak_mem_bytes,max_residual", 0) == 0);
}

TEST_CASE("scaling fit needs four sizes")
{
    bench::BenchOptions o;
    o.ns = {20, 30, 40};
    o.repeats = 1;
    CHECK_THROWS_AS(bench::scaling_fit(bench::run_bench(o)), Error);
}

}
