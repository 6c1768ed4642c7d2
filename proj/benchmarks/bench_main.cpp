#include <benchmark/benchmark.h>

#include <random>

#include "hexctl/controllers.hpp"
#include "hexctl/plant.hpp"

using namespace hexctl;

namespace {

void BM_RotorThrustSolve(benchmark::State& state) {
    const RotorParams params = RotorParams::from_radius(0.15);
    RotorInflow inflow;
    inflow.omega = 600.0;
    inflow.collective = 0.22;
    inflow.normal = 0.4;
    inflow.tangential = 1.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rotor_thrust(inflow, params));
    }
}
BENCHMARK(BM_RotorThrustSolve);

void BM_PlantStep(benchmark::State& state) {
    const PlantConfig cfg;
    const double trim = hover_trim_pitch(cfg);
    MixedCommand cmd;
    cmd.collective.fill(trim);
    RigidBodyState s;
    for (auto _ : state) {
        s = plant_step(s, cmd, cfg).state;
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PlantStep);

void BM_Inference(benchmark::State& state) {
    const int rules = static_cast<int>(state.range(0));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RuleBase rb(2);
    for (int i = 0; i < rules; ++i) {
        Eigen::VectorXd c(2);
        c << u(rng), u(rng);
        FuzzyRule rule = make_isotropic_rule(c, 0.5);
        rule.consequent << u(rng), u(rng), u(rng);
        rb.add(std::move(rule));
    }
    Eigen::VectorXd z(2);
    z << 0.2, -0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(infer(rb, z));
    }
}
BENCHMARK(BM_Inference)->Arg(1)->Arg(5)->Arg(10);

void BM_GControllerTick(benchmark::State& state) {
    GController ctrl{GControllerConfig{}};
    double t = 0.0;
    for (auto _ : state) {
        const double e = 1.0 - 0.3 * std::sin(2.0 * t);
        benchmark::DoNotOptimize(ctrl.step(e, 1e-3));
        t += 1e-3;
    }
}
BENCHMARK(BM_GControllerTick);

}  // namespace

BENCHMARK_MAIN();
