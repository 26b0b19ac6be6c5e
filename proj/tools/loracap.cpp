// Command-line front end: airtime math, feasibility solvers and the
// traffic simulator, with CSV output suitable for plotting.

#include <CLI11.hpp>

#include "loracap/config.hpp"
#include "loracap/csv.hpp"
#include "loracap/grid.hpp"
#include "loracap/simkit.hpp"
#include "loracap/solvers.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace loracap;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string profile = "sx1272-paper";
    std::string out_path;
    std::vector<std::string> sets;
    CLI::Option* profile_opt = nullptr;
};

void add_common(CLI::App* sub, CommonArgs& c) {
    sub->add_option("--config", c.config_path, "file of section.key = value lines");
    c.profile_opt = sub->add_option("--profile", c.profile, "built-in parameter profile")
                        ->capture_default_str();
    sub->add_option("--out", c.out_path, "write the result to FILE instead of stdout");
    sub->add_option("--set", c.sets,
                    "override a configuration key, e.g. --set device.v_min_volts=1.8");
}

// the --profile flag beats a `profile` key from the config file
std::string effective_profile(const CommonArgs& c, const RunConfig& rc) {
    if (c.profile_opt && c.profile_opt->count())
        return c.profile;
    return rc.profile.value_or(c.profile);
}

// profile < config file < --set; dedicated flags are merged on top by the
// individual subcommands.
RunConfig gather(const CommonArgs& c) {
    RunConfig rc;
    if (!c.config_path.empty())
        rc = load_config_file(c.config_path);
    RunConfig sets;
    for (const std::string& kv : c.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects key=value (got '" + kv + "')");
        apply_key_value(sets, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return merge(rc, sets);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << text;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings)
        std::cerr << "warning: " << w << "\n";
}

// Scalar override flags shared by the subcommands.
struct ScalarFlags {
    int sf = 0, cr = 0, n_preamble = 0, ih = 0, de = 0, payload = 0;
    double bw = 0.0, e = 0.0, c = 0.0;
    long packets = 0;
    CLI::Option* o_sf = nullptr;
    CLI::Option* o_cr = nullptr;
    CLI::Option* o_preamble = nullptr;
    CLI::Option* o_ih = nullptr;
    CLI::Option* o_de = nullptr;
    CLI::Option* o_payload = nullptr;
    CLI::Option* o_bw = nullptr;
    CLI::Option* o_e = nullptr;
    CLI::Option* o_c = nullptr;
    CLI::Option* o_packets = nullptr;

    void add_phy(CLI::App* sub, bool with_sf_payload) {
        if (with_sf_payload) {
            o_sf = sub->add_option("--sf", sf, "spreading factor (7..12)");
            o_payload = sub->add_option("--payload", payload, "payload bytes");
        }
        o_bw = sub->add_option("--bw", bw, "bandwidth [Hz]");
        o_cr = sub->add_option("--cr", cr, "coding rate index (1 <=> 4/5)");
        o_preamble = sub->add_option("--preamble", n_preamble, "programmed preamble symbols");
        o_ih = sub->add_option("--ih", ih, "1 = implicit header, 0 = explicit header");
        o_de = sub->add_option("--de", de, "1 = low data rate optimization");
        o_e = sub->add_option("--e", e, "harvester source voltage E [V]");
    }
    void add_capacitance(CLI::App* sub) {
        o_c = sub->add_option("--c", c, "capacitance [F]");
    }
    void add_packets(CLI::App* sub) {
        o_packets = sub->add_option("--packets", packets, "number of uplink packets");
    }

    void apply(RunConfig& rc) const {
        if (o_sf && o_sf->count()) rc.sf = sf;
        if (o_payload && o_payload->count()) rc.payload_bytes = payload;
        if (o_bw && o_bw->count()) rc.bw_hz = bw;
        if (o_cr && o_cr->count()) rc.cr_index = cr;
        if (o_preamble && o_preamble->count()) rc.n_preamble = n_preamble;
        if (o_ih && o_ih->count()) rc.ih = ih;
        if (o_de && o_de->count()) rc.de = de;
        if (o_e && o_e->count()) rc.e_volts = e;
        if (o_c && o_c->count()) rc.c_farads = c;
        if (o_packets && o_packets->count()) rc.n_packets = packets;
    }
};

std::string pretty_seconds(double s) {
    char buf[64];
    if (s < 1.0)
        std::snprintf(buf, sizeof buf, "%.6g ms", s * 1e3);
    else
        std::snprintf(buf, sizeof buf, "%.6g s", s);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* bool_cell(bool b) {
    return b ? "true" : "false";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "feasibility toolkit for battery-less (capacitor powered) LoRaWAN class A devices"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    // ---- airtime ----------------------------------------------------------
    auto* airtime_cmd = app.add_subcommand("airtime", "LoRa symbol/preamble/packet timings");
    CommonArgs airtime_common;
    ScalarFlags airtime_flags;
    bool airtime_csv = false;
    add_common(airtime_cmd, airtime_common);
    airtime_flags.add_phy(airtime_cmd, true);
    airtime_cmd->add_flag("--csv", airtime_csv, "emit machine-readable CSV");
    airtime_cmd->callback([&] {
        RunConfig rc = gather(airtime_common);
        airtime_flags.apply(rc);
        const Materialized m = materialize(rc, effective_profile(airtime_common, rc));
        print_warnings(m.warnings);
        const PhyConfig& phy = m.device.phy;
        const double t_sym = symbol_duration(phy.sf, phy.bw_hz);
        const double t_preamble = preamble_duration(phy);
        const int s_payload = payload_symbol_count(phy);
        const double t_packet = time_on_air(phy);
        std::string text;
        if (airtime_csv) {
            text += csv::line({"sf", "bw_hz", "cr_index", "n_preamble", "ih", "de",
                               "payload_bytes", "t_sym_s", "t_preamble_s", "s_payload",
                               "t_packet_s"});
            text += csv::line({csv::num(phy.sf), csv::num(phy.bw_hz), csv::num(phy.cr_index),
                               csv::num(phy.n_preamble), csv::num(phy.ih), csv::num(phy.de),
                               csv::num(phy.payload_bytes), csv::num(t_sym),
                               csv::num(t_preamble), csv::num(s_payload), csv::num(t_packet)});
        } else {
            text += "t_sym       " + fmt_g(t_sym) + " s (" + pretty_seconds(t_sym) + ")\n";
            text += "t_preamble  " + fmt_g(t_preamble) + " s (" + pretty_seconds(t_preamble) +
                    ")\n";
            text += "s_payload   " + csv::num(s_payload) + " symbols\n";
            text += "t_packet    " + fmt_g(t_packet) + " s (" + pretty_seconds(t_packet) + ")\n";
        }
        write_output(text, airtime_common.out_path);
    });

    // ---- min-v ------------------------------------------------------------
    auto* minv_cmd =
        app.add_subcommand("min-v", "minimum start voltage for a complete uplink cycle");
    CommonArgs minv_common;
    ScalarFlags minv_flags;
    std::string minv_sf, minv_payload, minv_eh;
    add_common(minv_cmd, minv_common);
    bool minv_csv = false;
    minv_cmd->add_flag("--csv", minv_csv, "output is always CSV; accepted for uniformity");
    (void)minv_csv;
    minv_flags.add_phy(minv_cmd, false);
    minv_flags.add_capacitance(minv_cmd);
    auto* minv_sf_opt = minv_cmd->add_option("--sf", minv_sf, "spreading factor grid");
    auto* minv_pl_opt = minv_cmd->add_option("--payload", minv_payload, "payload bytes grid");
    auto* minv_eh_opt = minv_cmd->add_option("--eh", minv_eh, "harvest power grid [W]");
    minv_cmd->callback([&] {
        RunConfig rc = gather(minv_common);
        minv_flags.apply(rc);
        const Materialized base = materialize(rc, effective_profile(minv_common, rc));
        print_warnings(base.warnings);
        const auto ehs = minv_eh_opt->count()
                             ? parse_grid(minv_eh)
                             : std::vector<double>{base.device.harvester.p_watts};
        const auto sfs = minv_sf_opt->count() ? parse_int_grid(minv_sf)
                                              : std::vector<int>{base.device.phy.sf};
        const auto payloads = minv_pl_opt->count()
                                  ? parse_int_grid(minv_payload)
                                  : std::vector<int>{base.device.phy.payload_bytes};
        std::string text = csv::line(
            {"p_harvester_w", "sf", "payload_bytes", "value", "feasible", "binding_phase"});
        for (double eh : ehs)
            for (int sf : sfs)
                for (int pl : payloads) {
                    DeviceConfig d = base.device;
                    d.harvester = make_harvester(d.harvester.e_volts, eh);
                    d.phy.sf = sf;
                    d.phy.payload_bytes = pl;
                    const FeasibilityResult r = min_start_voltage(d);
                    text += csv::line({csv::num(eh), csv::num(sf), csv::num(pl),
                                       r.value ? csv::num(*r.value) : std::string(),
                                       bool_cell(r.feasible), csv::field(r.binding_phase)});
                }
        write_output(text, minv_common.out_path);
    });

    // ---- min-c ------------------------------------------------------------
    auto* minc_cmd =
        app.add_subcommand("min-c", "minimum capacitance for a complete uplink cycle");
    CommonArgs minc_common;
    ScalarFlags minc_flags;
    std::string minc_sf, minc_payload, minc_eh;
    double minc_vstart = 0.0;
    add_common(minc_cmd, minc_common);
    bool minc_csv = false;
    minc_cmd->add_flag("--csv", minc_csv, "output is always CSV; accepted for uniformity");
    (void)minc_csv;
    minc_flags.add_phy(minc_cmd, false);
    auto* minc_sf_opt = minc_cmd->add_option("--sf", minc_sf, "spreading factor grid");
    auto* minc_pl_opt = minc_cmd->add_option("--payload", minc_payload, "payload bytes grid");
    auto* minc_eh_opt = minc_cmd->add_option("--eh", minc_eh, "harvest power grid [W]");
    auto* minc_vstart_opt =
        minc_cmd->add_option("--vstart", minc_vstart, "cycle start voltage [V] (default E)");
    minc_cmd->callback([&] {
        RunConfig rc = gather(minc_common);
        minc_flags.apply(rc);
        const Materialized base = materialize(rc, effective_profile(minc_common, rc));
        print_warnings(base.warnings);
        const auto ehs = minc_eh_opt->count()
                             ? parse_grid(minc_eh)
                             : std::vector<double>{base.device.harvester.p_watts};
        const auto sfs = minc_sf_opt->count() ? parse_int_grid(minc_sf)
                                              : std::vector<int>{base.device.phy.sf};
        const auto payloads = minc_pl_opt->count()
                                  ? parse_int_grid(minc_payload)
                                  : std::vector<int>{base.device.phy.payload_bytes};
        const double v_start =
            minc_vstart_opt->count() ? minc_vstart : base.device.harvester.e_volts;
        std::string text = csv::line(
            {"p_harvester_w", "sf", "payload_bytes", "value", "feasible", "binding_phase"});
        for (double eh : ehs)
            for (int sf : sfs)
                for (int pl : payloads) {
                    DeviceConfig d = base.device;
                    d.harvester = make_harvester(d.harvester.e_volts, eh);
                    d.phy.sf = sf;
                    d.phy.payload_bytes = pl;
                    const FeasibilityResult r = min_capacitance(d, v_start);
                    text += csv::line({csv::num(eh), csv::num(sf), csv::num(pl),
                                       r.value ? csv::num(*r.value) : std::string(),
                                       bool_cell(r.feasible), csv::field(r.binding_phase)});
                }
        write_output(text, minc_common.out_path);
    });

    // ---- wake-time --------------------------------------------------------
    auto* wake_cmd =
        app.add_subcommand("wake-time", "off-state charge time up to a turn-on threshold");
    CommonArgs wake_common;
    ScalarFlags wake_flags;
    std::string wake_threshold, wake_eh;
    double wake_vstart = 0.0;
    add_common(wake_cmd, wake_common);
    bool wake_csv = false;
    wake_cmd->add_flag("--csv", wake_csv, "output is always CSV; accepted for uniformity");
    (void)wake_csv;
    wake_flags.add_phy(wake_cmd, true);
    wake_flags.add_capacitance(wake_cmd);
    auto* wake_th_opt = wake_cmd->add_option("--threshold", wake_threshold,
                                             "turn-on threshold grid, fraction of E");
    auto* wake_eh_opt = wake_cmd->add_option("--eh", wake_eh, "harvest power grid [W]");
    wake_cmd->add_option("--vstart", wake_vstart, "start voltage [V]")->capture_default_str();
    wake_cmd->callback([&] {
        RunConfig rc = gather(wake_common);
        wake_flags.apply(rc);
        const Materialized base = materialize(rc, effective_profile(wake_common, rc));
        print_warnings(base.warnings);
        if (!wake_th_opt->count())
            throw std::runtime_error("wake-time needs --threshold (fractions of E)");
        const auto thresholds = parse_grid(wake_threshold);
        const auto ehs = wake_eh_opt->count()
                             ? parse_grid(wake_eh)
                             : std::vector<double>{base.device.harvester.p_watts};
        std::string text = csv::line(
            {"p_harvester_w", "threshold_fraction", "value", "feasible", "binding_phase"});
        for (double eh : ehs)
            for (double th : thresholds) {
                DeviceConfig d = base.device;
                d.harvester = make_harvester(d.harvester.e_volts, eh);
                const auto t = wake_time(d, wake_vstart, th);
                text += csv::line({csv::num(eh), csv::num(th),
                                   t ? csv::num(*t) : std::string(), bool_cell(t.has_value()),
                                   std::string()});
            }
        write_output(text, wake_common.out_path);
    });

    // ---- simulate ---------------------------------------------------------
    auto* sim_cmd =
        app.add_subcommand("simulate", "periodic-uplink packet delivery ratio simulation");
    CommonArgs sim_common;
    ScalarFlags sim_flags;
    std::string sim_vsl, sim_interval, sim_sf, sim_payload, sim_eh, sim_c;
    std::string sim_trace, sim_initial_state = "off";
    double sim_initial_v = 0.0;
    add_common(sim_cmd, sim_common);
    bool sim_csv = false;
    sim_cmd->add_flag("--csv", sim_csv, "output is always CSV; accepted for uniformity");
    (void)sim_csv;
    sim_flags.add_phy(sim_cmd, false);
    sim_flags.add_packets(sim_cmd);
    auto* sim_vsl_opt =
        sim_cmd->add_option("--vsl-frac", sim_vsl, "turn-on threshold grid, fraction of E");
    auto* sim_int_opt =
        sim_cmd->add_option("--interval", sim_interval, "uplink interval grid [s]");
    auto* sim_sf_opt = sim_cmd->add_option("--sf", sim_sf, "spreading factor grid");
    auto* sim_pl_opt = sim_cmd->add_option("--payload", sim_payload, "payload bytes grid");
    auto* sim_eh_opt = sim_cmd->add_option("--eh", sim_eh, "harvest power grid [W]");
    auto* sim_c_opt = sim_cmd->add_option("--c", sim_c, "capacitance grid [F]");
    sim_cmd->add_option("--trace", sim_trace,
                        "write the event timeline of a single run to FILE");
    auto* sim_iv_opt =
        sim_cmd->add_option("--initial-v", sim_initial_v, "start voltage [V] (default v_min)");
    auto* sim_is_opt = sim_cmd->add_option("--initial-state", sim_initial_state,
                                           "start state, off or sleep (default off)");
    sim_cmd->callback([&] {
        RunConfig rc = gather(sim_common);
        sim_flags.apply(rc);
        const Materialized base = materialize(rc, effective_profile(sim_common, rc));
        print_warnings(base.warnings);

        SweepAxes axes;
        if (sim_vsl_opt->count()) axes.v_sl_fraction = parse_grid(sim_vsl);
        if (sim_int_opt->count()) axes.interval_s = parse_grid(sim_interval);
        if (sim_sf_opt->count()) axes.sf = parse_int_grid(sim_sf);
        if (sim_pl_opt->count()) axes.payload_bytes = parse_int_grid(sim_payload);
        if (sim_eh_opt->count()) axes.p_harvester_w = parse_grid(sim_eh);
        if (sim_c_opt->count()) axes.c_farads = parse_grid(sim_c);

        const auto dim = [](const auto& ax) -> std::size_t { return ax.empty() ? 1 : ax.size(); };
        const std::size_t cells = dim(axes.v_sl_fraction) * dim(axes.interval_s) *
                                  dim(axes.sf) * dim(axes.payload_bytes) *
                                  dim(axes.p_harvester_w) * dim(axes.c_farads);

        std::string text =
            csv::line({"v_sl_fraction", "interval_s", "sf", "payload_bytes", "p_harvester_w",
                       "c_farads", "attempted", "tx_success", "cycle_success", "pdr_tx",
                       "pdr_cycle", "off_time_s"});
        const auto append_row = [&](const SweepRow& row) {
            const SimResult& r = row.result;
            text += csv::line({csv::num(row.v_sl_fraction), csv::num(row.interval_s),
                               csv::num(row.sf), csv::num(row.payload_bytes),
                               csv::num(row.p_harvester_w), csv::num(row.c_farads),
                               csv::num(r.attempted), csv::num(r.tx_success),
                               csv::num(r.cycle_success), csv::num(r.pdr_tx),
                               csv::num(r.pdr_cycle), csv::num(r.off_time_s)});
        };

        if (cells == 1) {
            DeviceConfig d = base.device;
            TrafficConfig tr = base.traffic;
            const double e = d.harvester.e_volts;
            double vsl_fraction = d.v_sl_volts / e;
            if (!axes.v_sl_fraction.empty()) {
                vsl_fraction = axes.v_sl_fraction[0];
                d.v_sl_volts = vsl_fraction * e;
            }
            if (!axes.interval_s.empty()) tr.interval_s = axes.interval_s[0];
            if (!axes.sf.empty()) d.phy.sf = axes.sf[0];
            if (!axes.payload_bytes.empty()) d.phy.payload_bytes = axes.payload_bytes[0];
            if (!axes.p_harvester_w.empty())
                d.harvester = make_harvester(e, axes.p_harvester_w[0]);
            if (!axes.c_farads.empty()) d.c_farads = axes.c_farads[0];

            const double initial_v = sim_iv_opt->count() ? sim_initial_v : d.v_min_volts;
            SystemState initial_state = SystemState::Off;
            if (sim_initial_state == "sleep")
                initial_state = SystemState::Sleep;
            else if (sim_initial_state != "off")
                throw std::runtime_error("--initial-state must be 'off' or 'sleep'");

            const SimResult r = simulate(d, tr, initial_v, initial_state, !sim_trace.empty());
            if (!sim_trace.empty()) {
                std::string trace_text;
                for (const TraceEvent& ev : r.timeline)
                    trace_text += csv::num(ev.t_s) + "\t" + ev.event + "\t" +
                                  csv::num(ev.v_volts) + "\n";
                std::ofstream tf(sim_trace, std::ios::binary);
                if (!tf)
                    throw std::runtime_error("cannot open trace file '" + sim_trace + "'");
                tf << trace_text;
            }
            append_row(SweepRow{vsl_fraction, tr.interval_s, d.phy.sf, d.phy.payload_bytes,
                                d.harvester.p_watts, d.c_farads, r});
        } else {
            if (!sim_trace.empty())
                throw std::runtime_error("--trace needs a single grid point");
            if (sim_iv_opt->count() || sim_is_opt->count())
                throw std::runtime_error(
                    "--initial-v/--initial-state apply to single runs only (sweeps cold-start)");
            for (const SweepRow& row : sweep(base.device, base.traffic, axes))
                append_row(row);
        }
        write_output(text, sim_common.out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
