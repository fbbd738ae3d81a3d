#include "nearcurve/constants.hpp"
#include "nearcurve/counter.hpp"
#include "nearcurve/curve.hpp"

#include <benchmark/benchmark.h>

using namespace nearcurve;

namespace {

CountQuery query(Variant v, long Q) {
    CountQuery q;
    q.variant = v;
    q.Q = Q;
    q.delta = Rational(1, 4);
    return q;
}

void bm_kernel_count(benchmark::State& state) {
    CurveSpec parabola = builtin_curve("parabola");
    const long Q = state.range(0);
    for (auto _ : state) {
        CountResult r = count(parabola, query(Variant::Tilde, Q));
        benchmark::DoNotOptimize(r.count_lo);
    }
    state.SetItemsProcessed(state.iterations() * Q * (Q + 1) / 2);
}

void bm_exact_count(benchmark::State& state) {
    // cubic: exact rational path, no integer kernel
    CurveSpec cubic;
    cubic.kind = CurveKind::Polynomial;
    cubic.coefficients = {Rational(1, 3), Rational(0), Rational(1), Rational(1, 2)};
    cubic.interval = {Rational(0), Rational(1)};
    cubic.c1 = 2;
    cubic.c2 = 5;
    cubic.lipschitz = Rational(7, 2);
    cubic.eval_mode = EvalMode::ExactRational;
    const long Q = state.range(0);
    for (auto _ : state) {
        CountResult r = count(cubic, query(Variant::Tilde, Q));
        benchmark::DoNotOptimize(r.count_lo);
    }
}

void bm_enclosure_count(benchmark::State& state) {
    CurveSpec circle = builtin_curve("circle");
    const long Q = state.range(0);
    for (auto _ : state) {
        CountResult r = count(circle, query(Variant::Hat, Q));
        benchmark::DoNotOptimize(r.count_lo);
    }
}

void bm_eval_enclosure(benchmark::State& state) {
    CurveSpec circle = builtin_curve("circle");
    const int prec = static_cast<int>(state.range(0));
    const Rational x(113, 355);
    for (auto _ : state) {
        Enclosure e = eval_enclosure(circle, x, prec);
        benchmark::DoNotOptimize(e);
    }
}

void bm_zeta3(benchmark::State& state) {
    const int prec = static_cast<int>(state.range(0));
    for (auto _ : state) {
        // bypass the cache by asking for a fresh precision each iteration is
        // not possible; measure the cached lookup plus one cold computation
        Enclosure z = zeta3(prec);
        benchmark::DoNotOptimize(z);
    }
}

} // namespace

BENCHMARK(bm_kernel_count)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_exact_count)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_enclosure_count)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_eval_enclosure)->Arg(53)->Arg(128)->Arg(256);
BENCHMARK(bm_zeta3)->Arg(40)->Arg(64);

BENCHMARK_MAIN();
