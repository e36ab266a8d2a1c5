#include "twinmarket/sim/baseline_compare.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "twinmarket/analytics/performance.hpp"
#include "twinmarket/sim/json_reader.hpp"
#include "twinmarket/sim/reports.hpp"

namespace twinmarket::sim {

namespace {

void read_metrics(const json& j, ReferenceMetrics& m) {
    JsonReader r(j, "reference.metrics");
    r.get("kurtosis", m.kurtosis);
    r.get("leverage", m.leverage);
    r.get("volume_corr", m.volume_corr);
    r.get("volume_p", m.volume_p);
    r.get("garch_persistence", m.garch_persistence);
    r.finish();
}

SFRow single_row(const std::string& name, std::span<const double> prices, std::span<const double> volumes) {
    const auto f = analytics::stylized_facts(prices, volumes);
    SFRow row;
    row.system = name;
    row.runs = 1;
    row.metrics.kurtosis = f.kurtosis;
    row.metrics.leverage = f.leverage;
    row.metrics.volume_corr = f.volume_corr;
    row.metrics.volume_p = f.volume_p;
    if (f.garch) {
        row.metrics.garch_persistence = f.garch->persistence();
        row.converged = f.garch->converged ? 1 : 0;
    }
    return row;
}

}  // namespace

BaselineCompareConfig baseline_config_from_json(const json& j) {
    BaselineCompareConfig c;
    JsonReader rd(j, "compare");
    rd.get("seeds", c.seeds);
    if (const json* h = rd.child("hpm")) {
        JsonReader r(*h, "hpm");
        r.get("p_star", c.hpm.p_star);
        r.get("p0", c.hpm.p0);
        r.get("phi", c.hpm.phi);
        r.get("chi", c.hpm.chi);
        r.get("alpha0", c.hpm.alpha0);
        r.get("alpha_n", c.hpm.alpha_n);
        r.get("alpha_p", c.hpm.alpha_p);
        r.get("sigma_f", c.hpm.sigma_f);
        r.get("sigma_c", c.hpm.sigma_c);
        r.get("mu", c.hpm.mu);
        r.get("beta", c.hpm.beta);
        r.get("price_scale", c.hpm.price_scale);
        r.get("T", c.hpm.T);
        r.finish();
    }
    if (const json* b = rd.child("bh")) {
        JsonReader r(*b, "bh");
        if (const json* types = r.child("types")) {
            if (!types->is_array()) throw ConfigError("bh.types must be an array");
            c.bh.types.clear();
            for (const auto& t : *types) {
                baselines::BeliefType bt;
                JsonReader tr(t, "bh.types[]");
                tr.get("trend", bt.trend);
                tr.get("bias", bt.bias);
                tr.get("cost", bt.cost);
                tr.finish();
                c.bh.types.push_back(bt);
            }
        }
        r.get("intensity", c.bh.intensity);
        r.get("R", c.bh.R);
        r.get("memory", c.bh.memory);
        r.get("p_star", c.bh.p_star);
        r.get("sigma", c.bh.sigma);
        r.get("sv_persistence", c.bh.sv_persistence);
        r.get("sv_vol", c.bh.sv_vol);
        r.get("T", c.bh.T);
        r.finish();
    }
    rd.get("engine_run", c.engine_run);
    if (const json* ref = rd.child("reference")) {
        JsonReader r(*ref, "reference");
        r.get("series", c.reference_series);
        if (const json* m = r.child("metrics")) {
            ReferenceMetrics rm;
            read_metrics(*m, rm);
            c.reference_metrics = rm;
        }
        r.finish();
    }
    rd.finish();
    if (c.seeds.empty()) throw ConfigError("seeds must not be empty");
    try {
        c.hpm.validate();
        c.bh.validate();
    } catch (const ParameterDomain& e) {
        throw ConfigError(e.what());
    }
    return c;
}

BaselineCompareConfig load_baseline_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingData("cannot open " + path.string());
    try {
        return baseline_config_from_json(json::parse(in, nullptr, true, true));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::optional<double> median(std::vector<double> xs) {
    if (xs.empty()) return std::nullopt;
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

SFRow baseline_row(const std::string& name, const std::vector<std::vector<double>>& price_runs) {
    std::vector<double> k, lev, pers;
    SFRow row;
    row.system = name;
    for (const auto& prices : price_runs) {
        const auto f = analytics::stylized_facts(prices, {});
        ++row.runs;
        if (f.kurtosis) k.push_back(*f.kurtosis);
        if (f.leverage) lev.push_back(*f.leverage);
        if (f.garch && f.garch->converged) {
            ++row.converged;
            pers.push_back(f.garch->persistence());
        }
    }
    row.metrics.kurtosis = median(k);
    row.metrics.leverage = median(lev);
    row.metrics.garch_persistence = median(pers);
    return row;
}

std::vector<SFRow> compare_baselines(const BaselineCompareConfig& cfg) {
    std::vector<SFRow> rows;
    if (cfg.reference_metrics) {
        SFRow r;
        r.system = "Real Data";
        r.metrics = *cfg.reference_metrics;
        rows.push_back(r);
    } else if (!cfg.reference_series.empty()) {
        const auto [p, v] = read_price_series(cfg.reference_series);
        rows.push_back(single_row("Real Data", p, v));
    }

    std::vector<std::vector<double>> hpm_runs, bh_runs;
    for (auto seed : cfg.seeds) {
        auto hp = cfg.hpm;
        hp.seed = seed;
        hpm_runs.push_back(baselines::simulate_hpm(hp).prices);
        auto bp = cfg.bh;
        bp.seed = seed;
        bh_runs.push_back(baselines::simulate_bh(bp).prices);
    }
    rows.push_back(baseline_row("HPM", hpm_runs));
    rows.push_back(baseline_row("BH", bh_runs));

    if (!cfg.engine_run.empty()) {
        const auto in = inputs_from_log(EventLog::read(std::filesystem::path(cfg.engine_run) / "events.jsonl"));
        rows.push_back(single_row("TwinMarket", composite_closes(in), composite_volumes(in)));
    }
    return rows;
}

std::string render_table(const std::vector<SFRow>& rows) {
    std::ostringstream os;
    os << "system\truns\tkurtosis\tleverage\tvolume_corr\tvolume_p\tgarch_persistence\tgarch_converged\n";
    for (const auto& r : rows) {
        os << r.system << '\t' << r.runs << '\t' << fmt_num(r.metrics.kurtosis) << '\t' << fmt_num(r.metrics.leverage)
           << '\t' << fmt_num(r.metrics.volume_corr) << '\t' << fmt_num(r.metrics.volume_p) << '\t'
           << fmt_num(r.metrics.garch_persistence) << '\t' << r.converged << '\n';
    }
    return os.str();
}

}  // namespace twinmarket::sim
