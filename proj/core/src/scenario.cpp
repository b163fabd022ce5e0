#include "sarkit/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sarkit/constants.hpp"

namespace sarkit::cli {

namespace {

std::vector<scene::PointTarget> default_targets() {
    return {{{5.0, 0.0, 0.0}, {1.0, 0.0}},
            {{10.0, -4.0, 0.0}, {1.0, 0.0}},
            {{15.0, 0.0, 0.0}, {1.0, 0.0}},
            {{20.0, 4.0, 0.0}, {1.0, 0.0}},
            {{25.0, 0.0, 0.0}, {1.0, 0.0}}};
}

imaging::PixelGrid default_grid() {
    imaging::PixelGrid grid;
    grid.origin = {3.0, -6.0, 0.0};
    grid.u_axis = {1.0, 0.0, 0.0};
    grid.v_axis = {0.0, 1.0, 0.0};
    grid.du = 0.05;
    grid.dv = 0.05;
    grid.nu = 481;
    grid.nv = 241;
    return grid;
}

struct ParseCursor {
    std::string file;
    int line = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error(file + ":" + std::to_string(line) + ": " + what);
    }
};

double to_double(const std::string& value, const ParseCursor& at) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) at.fail("trailing characters in number '" + value + "'");
        return v;
    } catch (const std::exception&) {
        at.fail("expected a number, got '" + value + "'");
    }
}

long to_long(const std::string& value, const ParseCursor& at) {
    const double v = to_double(value, at);
    if (v != std::floor(v)) at.fail("expected an integer, got '" + value + "'");
    return static_cast<long>(v);
}

std::vector<double> to_vector(const std::string& value, const ParseCursor& at) {
    std::istringstream in(value);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(to_double(tok, at));
    if (out.empty()) at.fail("expected numbers");
    return out;
}

scene::Vec3 to_vec3(const std::string& value, const ParseCursor& at) {
    const auto v = to_vector(value, at);
    if (v.size() != 3) at.fail("expected 3 components");
    return {v[0], v[1], v[2]};
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

scene::Trajectory Scenario::tx_trajectory() const {
    return scene::linear_trajectory(tx_start, tx_velocity, params.f_prf, measurements, "tx");
}

scene::Trajectory Scenario::rx_trajectory(std::size_t index) const {
    scene::Trajectory traj = scene::linear_trajectory(
        tx_start + rx_offsets.at(index), tx_velocity, params.f_prf, measurements,
        "bi" + std::to_string(index + 1));
    return traj;
}

scene::Scene Scenario::make_scene() const {
    scene::Scene scn;
    scn.tx = tx_trajectory();
    for (std::size_t r = 0; r < rx_offsets.size(); ++r) scn.rx.push_back(rx_trajectory(r));
    scn.targets = targets;
    scn.r_cal = r_cal;
    return scn;
}

void Scenario::validate() const {
    params.validate();
    errors.validate();
    grid.validate();
    if (measurements < 1) throw std::invalid_argument("scenario: measurements >= 1 required");
    if (pn_order < 3 || pn_order > 20)
        throw std::invalid_argument("scenario: pn_order must be in [3, 20]");
    if (trigger_threshold <= 0.0 || trigger_threshold > 1.0)
        throw std::invalid_argument("scenario: trigger_threshold in (0, 1] required");
    if (processing.oversample < 1)
        throw std::invalid_argument("scenario: oversample >= 1 required");
    if (processing.streams < 1) throw std::invalid_argument("scenario: streams >= 1 required");
    for (const auto& t : targets) {
        if (!std::isfinite(t.pos.x) || !std::isfinite(t.pos.y) || !std::isfinite(t.pos.z) ||
            std::isnan(t.reflectivity.real()) || std::isnan(t.reflectivity.imag()))
            throw std::invalid_argument("scenario: non-finite target");
    }
}

Scenario parse_scenario(const std::string& text, const std::string& name) {
    Scenario sc;
    sc.targets = default_targets();
    sc.grid = default_grid();

    bool targets_overridden = false;
    bool rx_overridden = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    ParseCursor at{name, 0};
    while (std::getline(in, raw)) {
        ++at.line;
        std::string line = trim(raw);
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = trim(line.substr(0, comment));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') at.fail("malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"ofdm",       "frame", "scene",   "errors",
                                          "processing", "grid",  "campaign", "sweeps"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) at.fail("unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) at.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) at.fail("expected 'key = value'");

        auto unknown = [&]() { at.fail("unknown key '" + key + "' in [" + section + "]"); };

        if (section == "ofdm") {
            if (key == "fc_hz") sc.params.fc = to_double(value, at);
            else if (key == "subcarriers") sc.params.n_subcarriers = static_cast<int>(to_long(value, at));
            else if (key == "delta_f_hz") sc.params.delta_f = to_double(value, at);
            else if (key == "symbol_T_s") sc.params.symbol_T = to_double(value, at);
            else if (key == "cp_T_s") sc.params.cp_T = to_double(value, at);
            else if (key == "sample_rate_hz") sc.params.fs = to_double(value, at);
            else if (key == "adc_bits") sc.params.adc_bits = static_cast<int>(to_long(value, at));
            else if (key == "f_prf_hz") sc.params.f_prf = to_double(value, at);
            else unknown();
        } else if (section == "frame") {
            if (key == "pn_order") sc.pn_order = static_cast<int>(to_long(value, at));
            else if (key == "trigger_threshold") sc.trigger_threshold = to_double(value, at);
            else unknown();
        } else if (section == "scene") {
            if (key == "tx_start") sc.tx_start = to_vec3(value, at);
            else if (key == "tx_velocity") sc.tx_velocity = to_vec3(value, at);
            else if (key == "r_cal_m") sc.r_cal = to_double(value, at);
            else if (key == "target") {
                if (!targets_overridden) {
                    sc.targets.clear();
                    targets_overridden = true;
                }
                const auto v = to_vector(value, at);
                if (v.size() != 3 && v.size() != 4 && v.size() != 5)
                    at.fail("target = x y z [refl_re [refl_im]]");
                scene::PointTarget t;
                t.pos = {v[0], v[1], v[2]};
                t.reflectivity = cplx(v.size() > 3 ? v[3] : 1.0, v.size() > 4 ? v[4] : 0.0);
                sc.targets.push_back(t);
            } else if (key == "rx_offset") {
                if (!rx_overridden) {
                    sc.rx_offsets.clear();
                    rx_overridden = true;
                }
                if (value != "none") sc.rx_offsets.push_back(to_vec3(value, at));
            } else unknown();
        } else if (section == "errors") {
            if (key == "delta_s") sc.errors.delta_s = to_double(value, at);
            else if (key == "delta_c") sc.errors.delta_c = to_double(value, at);
            else if (key == "cpe_max_rad") sc.errors.cpe_max = to_double(value, at);
            else if (key == "to_max_s") sc.errors.to_max = to_double(value, at);
            else if (key == "loc_sigma_m") sc.errors.loc_sigma = to_double(value, at);
            else if (key == "loc_window") sc.errors.loc_window = static_cast<int>(to_long(value, at));
            else if (key == "noise_sigma") sc.errors.noise_sigma = to_double(value, at);
            else unknown();
        } else if (section == "processing") {
            if (key == "window") {
                if (value == "none") sc.processing.window = rangeproc::Window::kNone;
                else if (value == "hann") sc.processing.window = rangeproc::Window::kHann;
                else at.fail("window must be 'none' or 'hann'");
            } else if (key == "oversample") sc.processing.oversample = static_cast<int>(to_long(value, at));
            else if (key == "r_cal_hat_m") sc.processing.r_cal_hat = to_double(value, at);
            else if (key == "streams") sc.processing.streams = static_cast<int>(to_long(value, at));
            else if (key == "dr_max_m") sc.processing.dr_max = to_double(value, at);
            else if (key == "v_max_mps") sc.processing.v_max = to_double(value, at);
            else if (key == "dt_max_chirp_s") sc.processing.dt_max_chirp = to_double(value, at);
            else unknown();
        } else if (section == "grid") {
            if (key == "origin") sc.grid.origin = to_vec3(value, at);
            else if (key == "u_axis") sc.grid.u_axis = to_vec3(value, at);
            else if (key == "v_axis") sc.grid.v_axis = to_vec3(value, at);
            else if (key == "du_m") sc.grid.du = to_double(value, at);
            else if (key == "dv_m") sc.grid.dv = to_double(value, at);
            else if (key == "nu") sc.grid.nu = static_cast<int>(to_long(value, at));
            else if (key == "nv") sc.grid.nv = static_cast<int>(to_long(value, at));
            else unknown();
        } else if (section == "campaign") {
            if (key == "measurements") sc.measurements = static_cast<int>(to_long(value, at));
            else if (key == "seed") sc.seed = static_cast<std::uint64_t>(to_long(value, at));
            else unknown();
        } else if (section == "sweeps") {
            if (key == "sfo_hz") sc.sweeps.sfo_hz = to_vector(value, at);
            else if (key == "cfo_hz") sc.sweeps.cfo_hz = to_vector(value, at);
            else if (key == "cpe_rad") sc.sweeps.cpe_rad = to_vector(value, at);
            else if (key == "to_s") sc.sweeps.to_s = to_vector(value, at);
            else if (key == "loc_m") sc.sweeps.loc_m = to_vector(value, at);
            else unknown();
        } else {
            at.fail("key '" + key + "' outside any section");
        }
    }

    if (sc.sweeps.cpe_rad.empty()) sc.sweeps.cpe_rad = {0.0, kPi / 4.0, kPi / 2.0, kPi};
    if (sc.sweeps.loc_m.empty()) {
        const double lambda = kC0 / sc.params.fc;
        sc.sweeps.loc_m = {0.0, lambda / 16.0, lambda / 8.0, lambda / 4.0};
    }
    sc.errors.seed = sc.seed;

    try {
        sc.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(name + ": validation failed: " + e.what());
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

}  // namespace sarkit::cli
