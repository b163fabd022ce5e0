#include <benchmark/benchmark.h>

#include "sarkit/channel.hpp"
#include "sarkit/rangeproc.hpp"
#include "sarkit/waveform.hpp"

using namespace sarkit;

namespace {

struct Fixture {
    waveform::OfdmParams params;
    waveform::CodeSymbols code;
    ComplexSignal rx;

    Fixture() {
        code = waveform::generate_code(params, 1);
        const auto rf = waveform::upconvert(generate_symbol(params, code), params.fc);
        rx = channel::propagate(rf, params, 120e-9, cplx(1.0, 0.0));
    }
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

static void BM_Demodulate(benchmark::State& state) {
    auto& f = fixture();
    const auto baseband = rangeproc::downconvert(f.rx, f.params.fc);
    for (auto _ : state) {
        auto d = rangeproc::demodulate(baseband, f.params);
        benchmark::DoNotOptimize(d.d.data());
    }
}
BENCHMARK(BM_Demodulate);

static void BM_RangeCompress(benchmark::State& state) {
    auto& f = fixture();
    const auto d = rangeproc::spectral_divide(
        rangeproc::demodulate(rangeproc::downconvert(f.rx, f.params.fc), f.params), f.code);
    const int oversample = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto profile = rangeproc::range_compress(d, rangeproc::Window::kHann, oversample,
                                                 f.params);
        benchmark::DoNotOptimize(profile.r.data());
    }
}
BENCHMARK(BM_RangeCompress)->Arg(1)->Arg(4)->Arg(8);

static void BM_FullMonoChain(benchmark::State& state) {
    auto& f = fixture();
    const rangeproc::ProcessingConfig cfg{rangeproc::Window::kHann, 8, 0.0};
    for (auto _ : state) {
        auto profile = rangeproc::process_mono(f.rx, f.params, f.code, cfg);
        benchmark::DoNotOptimize(profile.r.data());
    }
}
BENCHMARK(BM_FullMonoChain);

static void BM_SfoSynthesis(benchmark::State& state) {
    // chirp-z path of the channel (receiver grid with delta_s != 1)
    waveform::OfdmParams p;
    scene::Scene scn;
    scn.tx = scene::linear_trajectory({0.0, 0.0, 10.0}, {0.0, 0.0, 0.0}, p.f_prf, 1, "tx");
    scn.rx = {scene::linear_trajectory({0.0, -2.0, 10.0}, {0.0, 0.0, 0.0}, p.f_prf, 1, "bi1")};
    scn.targets = {{{20.0, 0.0, 0.0}, cplx(1.0, 0.0)}};
    channel::ErrorConfig cfg;
    cfg.delta_s = 1.0 - 2e6 / p.fs;
    for (auto _ : state) {
        auto campaign = channel::simulate_campaign(scn, p, cfg, 1, 1);
        benchmark::DoNotOptimize(campaign.receivers[1].measurements[0].rx_radar.data.data());
    }
}
BENCHMARK(BM_SfoSynthesis);

BENCHMARK_MAIN();
