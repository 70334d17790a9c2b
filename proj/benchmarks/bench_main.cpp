#include <random>

#include <benchmark/benchmark.h>

#include "lcss/dataset.hpp"
#include "lcss/duality.hpp"
#include "lcss/local_cohomology.hpp"
#include "lcss/snf.hpp"
#include "lcss/spectral.hpp"

using namespace lcss;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<long> entry(-40, 40);
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = entry(rng);
    return a;
}

void BM_SmithNormalForm(benchmark::State& state)
{
    std::mt19937_64 rng(7);
    const IntMatrix a = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(4, 32);

void BM_GammaB(benchmark::State& state)
{
    const GradedModulePresentation m = load_builtin("tmf-N-p2").module;
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_x(m, Multiplier::parse("B"), Window{0, 200}));
}
BENCHMARK(BM_GammaB)->Unit(benchmark::kMillisecond);

void BM_E2TwoGenerator(benchmark::State& state)
{
    const GradedModulePresentation m = load_builtin("tmf-N-p2").module;
    const IdealSpec ideal = IdealSpec::parse("2,B", 2);
    FunctorOptions opt;
    opt.policy.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_e2(m, ideal, Window{-20, 175}, opt));
}
BENCHMARK(BM_E2TwoGenerator)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_AndersonPipeline(benchmark::State& state)
{
    const Dataset d = load_builtin("tmf-N-p2");
    const IdealSpec ideal = IdealSpec::parse("B", 2);
    const Window stems{-20, 172};
    for (auto _ : state) {
        const BigradedPage e2 = build_e2(d.module, ideal, Window{stems.lo, stems.hi + 1});
        const RuleSet rules = d.rules_for(ideal);
        const BigradedPage einf = run_spectral_sequence(e2, rules.differentials);
        const AbutmentGroup ab = assemble_abutment(einf, rules_on_page(einf, rules.extensions), stems);
        benchmark::DoNotOptimize(
            verify_duality(ab, homotopy_of(d.module), DualMode::anderson, 171, stems).pass());
    }
}
BENCHMARK(BM_AndersonPipeline)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
