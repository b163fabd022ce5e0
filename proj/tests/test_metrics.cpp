#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sarkit/channel.hpp"
#include "sarkit/constants.hpp"
#include "sarkit/metrics.hpp"
#include "sarkit/rng.hpp"
#include "test_helpers.hpp"

using namespace sarkit;
using namespace sarkit::metrics;
using sarkit::testing::full_params;
using sarkit::testing::small_params;

TEST_CASE("coherence factor limits") {
    SUBCASE("identical phasors give exactly 1") {
        std::vector<cplx> s(200, cplx(0.3, -0.4));
        CHECK(coherence_factor(s) == doctest::Approx(1.0).epsilon(1e-14));
        std::vector<cplx> ones(7, cplx(1.0, 0.0));
        CHECK(coherence_factor(ones) == 1.0);
    }
    SUBCASE("alternating signs cancel to 0") {
        std::vector<cplx> s;
        for (int m = 0; m < 200; ++m) s.emplace_back(m % 2 ? 1.0 : -1.0, 0.0);
        CHECK(coherence_factor(s) == doctest::Approx(0.0));
    }
    SUBCASE("200 uniform phases land near 1/M") {
        Rng rng(314);
        std::vector<cplx> s;
        for (int m = 0; m < 200; ++m) {
            const double ph = rng.uniform(-kPi, kPi);
            s.emplace_back(std::cos(ph), std::sin(ph));
        }
        const double gamma = coherence_factor(s);
        CHECK(gamma > 0.05 / 200.0);
        CHECK(gamma < 10.0 / 200.0);
    }
    SUBCASE("all-zero input is rejected") {
        std::vector<cplx> s(4, cplx(0.0, 0.0));
        CHECK_THROWS_AS(coherence_factor(s), std::invalid_argument);
    }
}

TEST_CASE("coherence factor invariances") {
    Rng rng(500);
    std::vector<cplx> s;
    for (int m = 0; m < 64; ++m) s.emplace_back(rng.gauss(), rng.gauss());
    const double base = coherence_factor(s);

    auto scaled = s;
    const cplx gain = 7.3 * cplx(std::cos(0.9), std::sin(0.9));
    for (auto& v : scaled) v *= gain;
    CHECK(coherence_factor(scaled) == doctest::Approx(base).epsilon(1e-12));

    SUBCASE("gamma = 1 only for equal values") {
        std::vector<cplx> unequal{cplx(1.0, 0.0), cplx(0.5, 0.0)};
        CHECK(coherence_factor(unequal) < 1.0);
    }
}

TEST_CASE("gamma degrades monotonically with the CPE bound (seed-averaged)") {
    const double levels[4] = {0.0, kPi / 4.0, kPi / 2.0, kPi};
    double means[4] = {0.0, 0.0, 0.0, 0.0};
    for (int li = 0; li < 4; ++li) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            channel::ErrorConfig cfg;
            cfg.seed = 9000 + seed;
            cfg.cpe_max = levels[li];
            const auto draws = channel::draw_slow_time_errors(cfg, 200);
            std::vector<cplx> s;
            s.reserve(draws.size());
            for (const auto& d : draws) s.emplace_back(std::cos(d.phi_cpe), std::sin(d.phi_cpe));
            means[li] += coherence_factor(s);
        }
        means[li] /= 50.0;
    }
    CHECK(means[0] == doctest::Approx(1.0));
    CHECK(means[1] >= means[2]);
    CHECK(means[2] >= means[3]);
    CHECK(means[3] < 0.05);
}

TEST_CASE("phase series is flat for a static ideal scene and spreads under CPE") {
    auto p = small_params();
    scene::Scene scn;
    scn.tx = scene::linear_trajectory({0.0, 0.0, 10.0}, {0.0, 0.0, 0.0}, p.f_prf, 24, "tx");
    scn.rx = {scene::linear_trajectory({0.0, -2.0, 10.0}, {0.0, 0.0, 0.0}, p.f_prf, 24, "bi1")};
    scn.targets = {{{40.0, 0.0, 0.0}, cplx(1.0, 0.0)}};

    channel::ErrorConfig ideal;
    ideal.seed = 21;
    channel::ErrorConfig errored = ideal;
    errored.cpe_max = kPi;

    const rangeproc::ProcessingConfig pc{rangeproc::Window::kNone, 4, 0.0};
    auto run = [&](const channel::ErrorConfig& cfg, bool corrected) {
        const auto campaign = channel::simulate_campaign(scn, p, cfg, 24);
        std::vector<rangeproc::RangeProfile> profiles;
        for (const auto& meas : campaign.receivers[1].measurements) {
            profiles.push_back(corrected
                                   ? rangeproc::process_bistatic(meas.rx_radar,
                                                                 *meas.rx_sidelink, p,
                                                                 campaign.code, pc)
                                   : rangeproc::process_uncorrected(meas.rx_radar, p,
                                                                    campaign.code, pc));
        }
        return profiles;
    };

    auto spread = [](const std::vector<double>& phases) {
        double lo = phases[0], hi = phases[0];
        for (double ph : phases) {
            lo = std::min(lo, ph);
            hi = std::max(hi, ph);
        }
        return hi - lo;
    };

    const auto flat = run(ideal, false);
    const auto flat_phases = phase_series(flat, average_peak_cell(flat));
    CHECK(spread(flat_phases) < 1e-3);

    const auto noisy = run(errored, false);
    const auto noisy_phases = phase_series(noisy, average_peak_cell(noisy));
    CHECK(spread(noisy_phases) > kPi / 2.0);

    const auto fixed = run(errored, true);
    const auto fixed_phases = phase_series(fixed, average_peak_cell(fixed));
    CHECK(spread(noisy_phases) / std::max(spread(fixed_phases), 1e-12) > 100.0);
}

TEST_CASE("3 dB resolution of the ideal and Hann-windowed range response") {
    auto p = full_params();
    // single ideal target near mid-profile
    const double tof = 120e-9;
    rangeproc::SubcarrierData d;
    d.d.resize(static_cast<std::size_t>(p.n_subcarriers));
    for (int n = 0; n < p.n_subcarriers; ++n) {
        const double ph = -kTwoPi * (n * p.delta_f + p.fc) * tof;
        d.d[static_cast<std::size_t>(n)] = cplx(std::cos(ph), std::sin(ph));
    }

    auto width_of = [&](rangeproc::Window w) {
        const auto profile = rangeproc::range_compress(d, w, 16, p);
        const auto peak = rangeproc::peak_cell(profile);
        imaging::Profile1D cut;
        const long half = 16 * 6;
        for (long i = -half; i <= half; ++i) {
            const auto c = static_cast<std::size_t>(static_cast<long>(peak.cell) + i);
            cut.offset_m.push_back(static_cast<double>(i) * profile.cell_size);
            cut.value_db.push_back(20.0 * std::log10(std::abs(profile.r[c]) /
                                                     std::abs(peak.value)));
        }
        return resolution_3db(cut);
    };

    const double rect = width_of(rangeproc::Window::kNone);
    const double hann = width_of(rangeproc::Window::kHann);
    CHECK(rect == doctest::Approx(0.886 * kC0 / (2.0 * p.bandwidth())).epsilon(0.02));
    CHECK(rect == doctest::Approx(0.324).epsilon(0.02));
    CHECK(hann / rect == doctest::Approx(1.63).epsilon(0.05));
}

TEST_CASE("resolution fails cleanly on flat or clipped cuts") {
    imaging::Profile1D flat;
    for (int i = 0; i < 16; ++i) {
        flat.offset_m.push_back(i);
        flat.value_db.push_back(0.0);
    }
    CHECK_THROWS(resolution_3db(flat));

    imaging::Profile1D clipped;
    for (int i = 0; i < 5; ++i) {
        clipped.offset_m.push_back(i);
        clipped.value_db.push_back(-0.1 * i);  // peak at the edge, no left crossing
    }
    CHECK_THROWS(resolution_3db(clipped));
}

TEST_CASE("peak position error on synthetic images") {
    imaging::SarImage image;
    image.grid.origin = {0.0, 0.0, 0.0};
    image.grid.du = image.grid.dv = 0.1;
    image.grid.nu = image.grid.nv = 41;
    image.a.assign(41 * 41, cplx(0.0, 0.0));
    auto blob = [&](int cu, int cv) {
        for (auto& v : image.a) v = cplx(0.0, 0.0);
        for (int iv = 0; iv < 41; ++iv)
            for (int iu = 0; iu < 41; ++iu) {
                const double r2 = (iu - cu) * (iu - cu) + (iv - cv) * (iv - cv);
                image.at(iu, iv) = cplx(std::exp(-r2 / 8.0), 0.0);
            }
    };

    blob(20, 20);
    const scene::Vec3 truth{2.0, 2.0, 0.0};
    CHECK(peak_position_error(image, truth) < 1e-6);

    blob(21, 20);  // shifted by exactly one pixel
    CHECK(peak_position_error(image, truth) == doctest::Approx(0.1).epsilon(1e-3));

    CHECK_THROWS_AS(peak_position_error(image, {9.0, 0.0, 0.0}), std::out_of_range);
}
