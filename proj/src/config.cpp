#include "loracap/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace loracap {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw std::runtime_error("configuration key '" + std::string(key) + "': cannot parse '" +
                                 std::string(value) + "' as a number");
    return out;
}

long parse_long(std::string_view key, std::string_view value) {
    long out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw std::runtime_error("configuration key '" + std::string(key) + "': cannot parse '" +
                                 std::string(value) + "' as an integer");
    return out;
}

int parse_int(std::string_view key, std::string_view value) {
    return static_cast<int>(parse_long(key, value));
}

}  // namespace

void apply_key_value(RunConfig& rc, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "profile") rc.profile = std::string(value);
    else if (key == "phy.sf") rc.sf = parse_int(key, value);
    else if (key == "phy.bw_hz") rc.bw_hz = parse_double(key, value);
    else if (key == "phy.cr_index") rc.cr_index = parse_int(key, value);
    else if (key == "phy.n_preamble") rc.n_preamble = parse_int(key, value);
    else if (key == "phy.ih") rc.ih = parse_int(key, value);
    else if (key == "phy.de") rc.de = parse_int(key, value);
    else if (key == "phy.payload_bytes") rc.payload_bytes = parse_int(key, value);
    else if (key == "harvester.e_volts") rc.e_volts = parse_double(key, value);
    else if (key == "harvester.p_watts") rc.p_watts = parse_double(key, value);
    else if (key == "loads.off_ohms") rc.load_off = parse_double(key, value);
    else if (key == "loads.sleep_ohms") rc.load_sleep = parse_double(key, value);
    else if (key == "loads.idle_ohms") rc.load_idle = parse_double(key, value);
    else if (key == "loads.tx_ohms") rc.load_tx = parse_double(key, value);
    else if (key == "loads.listen_ohms") rc.load_listen = parse_double(key, value);
    else if (key == "loads.rx_ohms") rc.load_rx = parse_double(key, value);
    else if (key == "device.c_farads") rc.c_farads = parse_double(key, value);
    else if (key == "device.v_min_volts") rc.v_min_volts = parse_double(key, value);
    else if (key == "device.v_sl_volts") rc.v_sl_volts = parse_double(key, value);
    else if (key == "device.v_sl_fraction") rc.v_sl_fraction = parse_double(key, value);
    else if (key == "device.rx1_delay_s") rc.rx1_delay_s = parse_double(key, value);
    else if (key == "device.rx2_delay_s") rc.rx2_delay_s = parse_double(key, value);
    else if (key == "traffic.interval_s") rc.interval_s = parse_double(key, value);
    else if (key == "traffic.n_packets") rc.n_packets = parse_long(key, value);
    else
        throw std::runtime_error("unknown configuration key '" + std::string(key) + "'");
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path.string() + "'");
    RunConfig rc;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = line;
        if (const auto hash = sv.find('#'); hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        sv = trim(sv);
        if (sv.empty())
            continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 'section.key = value'");
        try {
            apply_key_value(rc, sv.substr(0, eq), sv.substr(eq + 1));
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return rc;
}

RunConfig merge(RunConfig base, const RunConfig& over) {
    const auto take = [](auto& dst, const auto& src) {
        if (src)
            dst = src;
    };
    take(base.profile, over.profile);
    take(base.sf, over.sf);
    take(base.bw_hz, over.bw_hz);
    take(base.cr_index, over.cr_index);
    take(base.n_preamble, over.n_preamble);
    take(base.ih, over.ih);
    take(base.de, over.de);
    take(base.payload_bytes, over.payload_bytes);
    take(base.e_volts, over.e_volts);
    take(base.p_watts, over.p_watts);
    take(base.load_off, over.load_off);
    take(base.load_sleep, over.load_sleep);
    take(base.load_idle, over.load_idle);
    take(base.load_tx, over.load_tx);
    take(base.load_listen, over.load_listen);
    take(base.load_rx, over.load_rx);
    take(base.c_farads, over.c_farads);
    take(base.v_min_volts, over.v_min_volts);
    take(base.v_sl_volts, over.v_sl_volts);
    take(base.v_sl_fraction, over.v_sl_fraction);
    take(base.rx1_delay_s, over.rx1_delay_s);
    take(base.rx2_delay_s, over.rx2_delay_s);
    take(base.interval_s, over.interval_s);
    take(base.n_packets, over.n_packets);
    return base;
}

const std::vector<std::string>& known_profiles() {
    static const std::vector<std::string> profiles = {"sx1272-paper"};
    return profiles;
}

Materialized materialize(const RunConfig& rc, std::string_view profile) {
    bool known = false;
    for (const auto& p : known_profiles())
        known = known || p == profile;
    if (!known) {
        std::string names;
        for (const auto& p : known_profiles())
            names += (names.empty() ? "" : ", ") + p;
        throw std::runtime_error("unknown profile '" + std::string(profile) +
                                 "' (known: " + names + ")");
    }

    Materialized m;
    m.device = sx1272_paper_device();
    m.traffic = TrafficConfig{};

    if (rc.sf) m.device.phy.sf = *rc.sf;
    if (rc.bw_hz) m.device.phy.bw_hz = *rc.bw_hz;
    if (rc.cr_index) m.device.phy.cr_index = *rc.cr_index;
    if (rc.n_preamble) m.device.phy.n_preamble = *rc.n_preamble;
    if (rc.ih) m.device.phy.ih = *rc.ih;
    if (rc.de) m.device.phy.de = *rc.de;
    if (rc.payload_bytes) m.device.phy.payload_bytes = *rc.payload_bytes;

    if (rc.e_volts || rc.p_watts)
        m.device.harvester = make_harvester(rc.e_volts.value_or(m.device.harvester.e_volts),
                                            rc.p_watts.value_or(m.device.harvester.p_watts));

    if (rc.load_off) m.device.loads.at(SystemState::Off) = *rc.load_off;
    if (rc.load_sleep) m.device.loads.at(SystemState::Sleep) = *rc.load_sleep;
    if (rc.load_idle) m.device.loads.at(SystemState::Idle) = *rc.load_idle;
    if (rc.load_tx) m.device.loads.at(SystemState::Tx) = *rc.load_tx;
    if (rc.load_listen) m.device.loads.at(SystemState::Listen) = *rc.load_listen;
    if (rc.load_rx) m.device.loads.at(SystemState::Rx) = *rc.load_rx;

    if (rc.c_farads) m.device.c_farads = *rc.c_farads;
    if (rc.v_min_volts) m.device.v_min_volts = *rc.v_min_volts;
    if (rc.v_sl_volts && rc.v_sl_fraction)
        throw std::runtime_error(
            "set either device.v_sl_volts or device.v_sl_fraction, not both");
    if (rc.v_sl_volts) m.device.v_sl_volts = *rc.v_sl_volts;
    if (rc.v_sl_fraction) m.device.v_sl_volts = *rc.v_sl_fraction * m.device.harvester.e_volts;
    if (rc.rx1_delay_s) m.device.rx1_delay_s = *rc.rx1_delay_s;
    if (rc.rx2_delay_s) m.device.rx2_delay_s = *rc.rx2_delay_s;

    if (rc.interval_s) m.traffic.interval_s = *rc.interval_s;
    if (rc.n_packets) m.traffic.n_packets = *rc.n_packets;

    m.warnings = validate(m.device);
    if (!(m.traffic.interval_s > 0.0))
        throw std::invalid_argument("traffic.interval_s must be positive");
    if (m.traffic.n_packets < 1)
        throw std::invalid_argument("traffic.n_packets must be >= 1");
    return m;
}

}  // namespace loracap
