// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: box search, formula evaluation over witness grids,
// and the axiom checker.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "mvf/formula.hpp"
#include "mvf/sampling.hpp"

using namespace mvf;
using clock_type = std::chrono::high_resolution_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    FieldPtr f = Field::make(ConcreteGroup({Value::parse("2"), Value::parse("3")}), false);
    HahnDiff d{HahnOps{f}, IdentityAuto{}};

    {
        // full box scan: the target is unreachable, so both modes visit
        // every vector
        Scalar lo(rat(1, 5)), eps(rat(1, 1000000));
        auto t0 = clock_type::now();
        auto rs = search_box(f->group(), lo - eps, true, lo + eps, true, 90, ExecMode::serial);
        double ts = ms_since(t0);
        t0 = clock_type::now();
        auto rp = search_box(f->group(), lo - eps, true, lo + eps, true, 90, ExecMode::parallel);
        double tp = ms_since(t0);
        if (rs.has_value() != rp.has_value()) std::printf("MISMATCH in search_box\n");
        report("search_box (181^2 vectors)", ts, tp);
    }

    {
        WitnessConfig<HahnSeries> cfg;
        cfg.fallback = grid_witnesses(d.ops, 3, 2);
        PPoint a = parse_point(d.ops, "[t^(1/2) : 1]");
        Formula phi = Formula::phi();
        auto t0 = clock_type::now();
        auto rs = evaluate(d, phi, {{"x", a}}, cfg, ExecMode::serial);
        double ts = ms_since(t0);
        t0 = clock_type::now();
        auto rp = evaluate(d, phi, {{"x", a}}, cfg, ExecMode::parallel);
        double tp = ms_since(t0);
        if (!(rs.value == rp.value)) std::printf("MISMATCH in evaluate\n");
        std::snprintf(nullptr, 0, "%zu", cfg.fallback->points.size());
        std::printf("  (phi over %zu witnesses)\n", cfg.fallback->points.size());
        report("evaluate phi", ts, tp);
    }

    {
        Sampler s(1);
        std::vector<IntPolynomial> polys;
        for (int i = 0; i < 12; ++i)
            polys.push_back(s.polynomial(static_cast<size_t>(s.range(1, 3)), 3, 5, 3));
        std::vector<PPoint> points;
        for (int i = 0; i < 600; ++i) points.push_back(s.point(f, 3, 2, 5));
        TwistAuto tw(f->group(), {{Value::parse("2"), Rat(-1)}, {Value::parse("3"), Rat(1)}});
        HahnDiff dt{HahnOps{f}, tw};
        auto t0 = clock_type::now();
        auto rs = check_axioms(dt, polys, points, ExecMode::serial);
        double ts = ms_since(t0);
        t0 = clock_type::now();
        auto rp = check_axioms(dt, polys, points, ExecMode::parallel);
        double tp = ms_since(t0);
        if (rs.violations.size() != rp.violations.size()) std::printf("MISMATCH in check_axioms\n");
        report("check_axioms (600 points)", ts, tp);
    }

    return 0;
}
