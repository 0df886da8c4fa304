// Benchmark: population evaluation fan-out, one thread vs OpenMP team.
// The parallel path must agree with the serial reference bit for bit.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "flapevo/evolve.hpp"

using namespace flapevo;

namespace {

double eval_ms(std::vector<Individual>& pop, const EvalContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    evaluate_population(pop, ctx);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int population = 64;
    double duration_s = 0.6;
    if (argc > 1) population = std::atoi(argv[1]);
    if (argc > 2) duration_s = std::atof(argv[2]);
    if (population < 4 || population % 2 != 0) {
        std::fprintf(stderr, "usage: %s [population(even,>=4)] [sim_duration_s]\n", argv[0]);
        return 2;
    }

    EvolutionConfig cfg;
    cfg.population = population;
    cfg.sim.duration_s = duration_s;
    cfg.sim.settle_cycles = 1;
    cfg.sim.average_cycles = 1;

    cfg.parallel = false;
    EvalContext serial_ctx(cfg);
    std::vector<Individual> serial_pop = initial_population(serial_ctx);
    for (Individual& ind : serial_pop) ind.evaluated = false;

    cfg.parallel = true;
    EvalContext parallel_ctx(cfg);
    std::vector<Individual> parallel_pop = serial_pop;

    const double serial_ms = eval_ms(serial_pop, serial_ctx);
    const double parallel_ms = eval_ms(parallel_pop, parallel_ctx);

    int mismatches = 0;
    for (std::size_t i = 0; i < serial_pop.size(); ++i) {
        const ObjectiveVector& a = serial_pop[i].objectives;
        const ObjectiveVector& b = parallel_pop[i].objectives;
        if (a.lift_n != b.lift_n || a.drive_cost != b.drive_cost ||
            a.feasibility != b.feasibility || a.raw_lift_n != b.raw_lift_n ||
            a.power_w != b.power_w || a.torque_nm != b.torque_nm || a.aborted != b.aborted) {
            ++mismatches;
        }
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("population %d, sim duration %.3g s, threads %d\n", population, duration_s,
                threads);
    std::printf("serial:   %10.1f ms\n", serial_ms);
    std::printf("parallel: %10.1f ms  (speedup %.2fx)\n", parallel_ms,
                parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0);
    std::printf("objective mismatches: %d\n", mismatches);
    return mismatches == 0 ? 0 : 1;
}
