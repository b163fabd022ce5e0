#include <benchmark/benchmark.h>

#include "sarkit/channel.hpp"
#include "sarkit/imaging.hpp"
#include "sarkit/rangeproc.hpp"

using namespace sarkit;

namespace {

struct Fixture {
    waveform::OfdmParams params;
    scene::Trajectory traj;
    std::vector<rangeproc::RangeProfile> profiles;

    Fixture() {
        const int count = 64;
        scene::Scene scn;
        scn.tx = scene::linear_trajectory({0.0, -0.32, 10.0}, {0.0, 1.0, 0.0}, params.f_prf,
                                          count, "tx");
        scn.targets = {{{15.0, 0.0, 0.0}, cplx(1.0, 0.0)}};
        channel::ErrorConfig cfg;
        const auto campaign = channel::simulate_campaign(scn, params, cfg, count);
        const rangeproc::ProcessingConfig pc{rangeproc::Window::kHann, 8, 0.0};
        for (const auto& meas : campaign.receivers[0].measurements) {
            auto p = rangeproc::process_mono(meas.rx_radar, params, campaign.code, pc);
            p.m = meas.m;
            p.t_m = meas.t_m;
            profiles.push_back(std::move(p));
        }
        traj = scn.tx;
    }
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

static void BM_Backproject(benchmark::State& state) {
    auto& f = fixture();
    imaging::PixelGrid grid;
    grid.origin = {10.0, -5.0, 0.0};
    grid.du = grid.dv = 0.1;
    grid.nu = grid.nv = static_cast<int>(state.range(0));
    imaging::BackprojectOptions options;
    options.mode = imaging::BpMode::kMono;
    options.threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto image = imaging::backproject(f.profiles, f.traj, f.traj, grid, f.params, options);
        benchmark::DoNotOptimize(image.a.data());
    }
    state.SetItemsProcessed(state.iterations() * grid.nu * grid.nv *
                            static_cast<long>(f.profiles.size()));
}
BENCHMARK(BM_Backproject)->Args({64, 1})->Args({128, 1})->Args({128, 4})->Args({256, 4});

BENCHMARK_MAIN();
