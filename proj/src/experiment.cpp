#include "wpbc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace wpbc {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::string canonical_parameter(const std::string& name) {
    if (name == "D" || name == "duty_cycle") return "duty_cycle";
    if (name == "beta") return "beta";
    if (name == "lambda_p") return "lambda_p";
    if (name == "c_bar") return "c_bar";
    if (name == "theta" || name == "theta_db") return "theta_db";
    if (name == "P_c" || name == "p_c_dbm") return "p_c_dbm";
    if (name == "eta" || name == "eta_dbm") return "eta_dbm";
    throw ConfigError("unknown sweep parameter '" + name + "'");
}

void apply_parameter(ModelConfig& m, const std::string& canonical, double v) {
    if (canonical == "duty_cycle")
        m.duty_cycle = v;
    else if (canonical == "beta")
        m.beta = v;
    else if (canonical == "lambda_p")
        m.lambda_p = v;
    else if (canonical == "c_bar")
        m.c_bar = v;
    else if (canonical == "theta_db")
        m.theta = db_to_linear(v);
    else if (canonical == "p_c_dbm")
        m.circuit_power = dbm_to_watts(v);
    else if (canonical == "eta_dbm")
        m.eta = dbm_to_watts(v);
    else
        throw ConfigError("unknown sweep parameter '" + canonical + "'");
}

Mode parse_mode(const std::string& v) {
    if (v == "success") return Mode::success;
    if (v == "outage") return Mode::outage;
    if (v == "capacity") return Mode::capacity;
    if (v == "laplace") return Mode::laplace;
    if (v == "bound") return Mode::bound;
    if (v == "sweep") return Mode::sweep;
    if (v == "optimize") return Mode::optimize;
    if (v == "region") return Mode::region;
    throw ConfigError("unknown mode '" + v + "'");
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::success: return "success";
        case Mode::outage: return "outage";
        case Mode::capacity: return "capacity";
        case Mode::laplace: return "laplace";
        case Mode::bound: return "bound";
        case Mode::sweep: return "sweep";
        case Mode::optimize: return "optimize";
        case Mode::region: return "region";
    }
    return "?";
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        for (std::size_t i = 0; i < header.size(); ++i)
            out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << row[i];
            out << '\n';
        }
    }
};

json cluster_json(const ClusterModel& cluster) {
    if (const auto* m = std::get_if<MaternCluster>(&cluster))
        return {{"type", "matern"}, {"radius", m->radius}};
    return {{"type", "thomas"}, {"sigma2", std::get<ThomasCluster>(cluster).sigma2}};
}

json resolved_config(const ExperimentSpec& spec) {
    const ModelConfig& m = spec.model;
    json j;
    j["model"] = {{"lambda_p", m.lambda_p},
                  {"c_bar", m.c_bar},
                  {"duty_cycle", m.duty_cycle},
                  {"beta", m.beta},
                  {"eta_watts", m.eta},
                  {"eta_dbm", watts_to_dbm(m.eta)},
                  {"g", m.g},
                  {"circuit_power_watts", m.circuit_power},
                  {"circuit_power_dbm", watts_to_dbm(m.circuit_power)},
                  {"alpha1", m.alpha1},
                  {"alpha2", m.alpha2},
                  {"theta_linear", m.theta},
                  {"theta_db", 10.0 * std::log10(m.theta)},
                  {"d2d_distance", m.d2d_distance},
                  {"cluster", cluster_json(m.cluster)}};
    j["sim"] = {{"window_radius", spec.sim.window_radius},
                {"trials", spec.sim.trials},
                {"seed", spec.sim.seed},
                {"workers", spec.sim.workers},
                {"intra_interference", spec.sim.intra_interference},
                {"inter_interference", spec.sim.inter_interference}};
    j["quad"] = {{"rel_tol", spec.quad.rel_tol},
                 {"abs_tol", spec.quad.abs_tol},
                 {"max_subdivisions", spec.quad.max_subdivisions},
                 {"outer_truncation_radius", spec.quad.outer_truncation_radius}};
    j["mode"] = mode_name(spec.mode);
    j["metric"] = spec.metric;
    j["estimators"] = {{"mc", spec.estimator_mc}, {"analytic", spec.estimator_analytic}};
    if (spec.mode == Mode::sweep) {
        json sw;
        sw["parameters"] = spec.sweep.parameters;
        sw["values"] = spec.sweep.values;
        j["sweep"] = sw;
    }
    if (spec.mode == Mode::laplace) j["s_values"] = spec.s_values;
    if (spec.mode == Mode::region) {
        j["epsilon"] = spec.epsilon;
        j["grid_step"] = spec.grid_step;
    }
    return j;
}

void write_manifest(const std::string& path, const ExperimentSpec& spec,
                    const RunOutput& out, double wall_seconds, const json& extra) {
    json j = resolved_config(spec);
    j["tool"] = "wpbc";
    j["version"] = "0.1.0";
    j["output_csv"] = out.csv_path;
    j["rows"] = out.rows;
    j["wall_time_seconds"] = wall_seconds;
    if (!extra.is_null()) j["result"] = extra;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open manifest file: " + path);
    f << j.dump(2) << '\n';
}

struct MetricResult {
    std::optional<Estimate> mc;
    std::optional<double> analytic;
};

MetricResult eval_metric(const ExperimentSpec& spec, const ModelConfig& m,
                         const std::string& metric, double s = 0.0) {
    MetricResult r;
    SimConfig sim = spec.sim;
    sim.model = m;
    if (spec.estimator_mc) {
        if (metric == "success")
            r.mc = estimate_success(sim);
        else if (metric == "capacity")
            r.mc = estimate_capacity(sim);
        else if (metric == "outage")
            r.mc = estimate_power_outage(sim);
        else if (metric == "laplace")
            r.mc = estimate_laplace(sim, s);
        else
            throw ConfigError("unknown metric '" + metric + "'");
    }
    if (spec.estimator_analytic) {
        if (metric == "success")
            r.analytic = success_lower_bound(m, spec.quad).value;
        else if (metric == "capacity")
            r.analytic = capacity_approx(m);
        else if (metric == "outage")
            r.analytic = power_outage(m);
        else if (metric == "laplace")
            r.analytic = charfun_intra(s, m, spec.quad).value * charfun_inter(s, m, spec.quad).value;
        else
            throw ConfigError("unknown metric '" + metric + "'");
    }
    return r;
}

std::vector<std::string> result_cells(const ExperimentSpec& spec, const MetricResult& r) {
    std::vector<std::string> cells;
    cells.push_back(r.mc ? format_value(r.mc->value) : "");
    cells.push_back(r.mc ? format_value(r.mc->std_error) : "");
    cells.push_back(r.analytic ? format_value(*r.analytic) : "");
    cells.push_back(std::to_string(spec.sim.trials));
    cells.push_back(std::to_string(spec.sim.seed));
    return cells;
}

std::vector<std::string> result_header() {
    return {"mc_value", "mc_std_error", "analytic_value", "trials", "seed"};
}

}  // namespace

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spec file: " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key)) throw ConfigError("duplicate key '" + key + "'");
        kv[key] = val;
    }

    ExperimentSpec spec;
    auto take = [&kv](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    // cluster model
    std::string cluster_kind = take("cluster").value_or("thomas");
    if (cluster_kind == "thomas") {
        double s2 = 4.0;
        if (auto v = take("thomas_sigma2")) s2 = parse_double("thomas_sigma2", *v);
        spec.model.cluster = ThomasCluster{s2};
        if (kv.count("matern_radius")) throw ConfigError("matern_radius given for a thomas cluster");
    } else if (cluster_kind == "matern") {
        double a = 2.0;
        if (auto v = take("matern_radius")) a = parse_double("matern_radius", *v);
        spec.model.cluster = MaternCluster{a};
        if (kv.count("thomas_sigma2")) throw ConfigError("thomas_sigma2 given for a matern cluster");
    } else {
        throw ConfigError("key 'cluster': expected thomas or matern, got '" + cluster_kind + "'");
    }

    if (auto v = take("lambda_p")) spec.model.lambda_p = parse_double("lambda_p", *v);
    if (auto v = take("c_bar")) spec.model.c_bar = parse_double("c_bar", *v);
    if (auto v = take("duty_cycle")) spec.model.duty_cycle = parse_double("duty_cycle", *v);
    if (auto v = take("beta")) spec.model.beta = parse_double("beta", *v);
    if (auto v = take("eta_dbm")) spec.model.eta = dbm_to_watts(parse_double("eta_dbm", *v));
    if (auto v = take("g")) spec.model.g = parse_double("g", *v);
    if (auto v = take("p_c_dbm")) spec.model.circuit_power = dbm_to_watts(parse_double("p_c_dbm", *v));
    if (auto v = take("alpha1")) spec.model.alpha1 = parse_double("alpha1", *v);
    if (auto v = take("alpha2")) spec.model.alpha2 = parse_double("alpha2", *v);
    if (auto v = take("theta_db")) spec.model.theta = db_to_linear(parse_double("theta_db", *v));
    if (auto v = take("d2d_distance")) spec.model.d2d_distance = parse_double("d2d_distance", *v);

    if (auto v = take("window_radius")) spec.sim.window_radius = parse_double("window_radius", *v);
    if (auto v = take("trials")) spec.sim.trials = parse_uint("trials", *v);
    if (auto v = take("seed")) spec.sim.seed = parse_uint("seed", *v);
    if (auto v = take("workers")) spec.sim.workers = static_cast<unsigned>(parse_uint("workers", *v));
    if (auto v = take("intra_interference")) spec.sim.intra_interference = parse_bool("intra_interference", *v);
    if (auto v = take("inter_interference")) spec.sim.inter_interference = parse_bool("inter_interference", *v);

    if (auto v = take("rel_tol")) spec.quad.rel_tol = parse_double("rel_tol", *v);
    if (auto v = take("abs_tol")) spec.quad.abs_tol = parse_double("abs_tol", *v);
    if (auto v = take("max_subdivisions"))
        spec.quad.max_subdivisions = static_cast<int>(parse_uint("max_subdivisions", *v));
    if (auto v = take("outer_truncation_radius")) {
        spec.quad.outer_truncation_radius = parse_double("outer_truncation_radius", *v);
    } else {
        // keep the analytic PB integral and the simulated PB window over
        // the same region
        spec.quad.outer_truncation_radius = spec.sim.window_radius;
    }

    if (auto v = take("mode")) spec.mode = parse_mode(*v);
    if (auto v = take("output_path")) spec.output_path = *v;
    if (auto v = take("metric")) spec.metric = *v;
    if (auto v = take("estimators")) {
        spec.estimator_mc = v->find("mc") != std::string::npos;
        spec.estimator_analytic = v->find("analytic") != std::string::npos;
        if (!spec.estimator_mc && !spec.estimator_analytic)
            throw ConfigError("key 'estimators': need at least one of mc, analytic");
    }

    auto read_sweep_axis = [&](const char* p_key, const char* v_key, const char* min_key,
                               const char* max_key, const char* steps_key) {
        auto p = take(p_key);
        if (!p) return false;
        spec.sweep.parameters.push_back(canonical_parameter(*p));
        if (auto vals = take(v_key)) {
            spec.sweep.values.push_back(parse_list(v_key, *vals));
        } else {
            auto lo = take(min_key), hi = take(max_key), st = take(steps_key);
            if (!lo || !hi || !st)
                throw ConfigError(std::string("sweep axis '") + *p +
                                  "': give explicit values or min/max/steps");
            const double a = parse_double(min_key, *lo);
            const double b = parse_double(max_key, *hi);
            const std::uint64_t n = parse_uint(steps_key, *st);
            if (n < 1) throw ConfigError(std::string(steps_key) + " must be >= 1");
            std::vector<double> axis;
            for (std::uint64_t i = 0; i < n; ++i)
                axis.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
            spec.sweep.values.push_back(axis);
        }
        return true;
    };
    const bool axis1 = read_sweep_axis("sweep_parameter", "sweep_values", "sweep_min", "sweep_max", "sweep_steps");
    const bool axis2 = read_sweep_axis("sweep_parameter2", "sweep_values2", "sweep_min2", "sweep_max2", "sweep_steps2");
    if (axis2 && !axis1) throw ConfigError("sweep_parameter2 given without sweep_parameter");

    if (auto v = take("s_values")) spec.s_values = parse_list("s_values", *v);
    if (auto v = take("epsilon")) spec.epsilon = parse_double("epsilon", *v);
    if (auto v = take("grid_step")) spec.grid_step = parse_double("grid_step", *v);

    if (auto v = take("objective")) {
        if (*v == "success_lower_bound")
            spec.opt.objective = Objective::success_lower_bound;
        else if (*v == "capacity_approx")
            spec.opt.objective = Objective::capacity_approx;
        else if (*v == "mc_success")
            spec.opt.objective = Objective::mc_success;
        else if (*v == "mc_capacity")
            spec.opt.objective = Objective::mc_capacity;
        else
            throw ConfigError("unknown objective '" + *v + "'");
    }
    if (auto v = take("variable")) {
        if (*v == "D" || *v == "duty_cycle")
            spec.opt.variable = OptVariable::duty_cycle;
        else if (*v == "beta")
            spec.opt.variable = OptVariable::beta;
        else if (*v == "joint")
            spec.opt.variable = OptVariable::joint;
        else
            throw ConfigError("unknown variable '" + *v + "'");
    }
    if (auto v = take("duty_lo")) spec.opt.duty_lo = parse_double("duty_lo", *v);
    if (auto v = take("duty_hi")) spec.opt.duty_hi = parse_double("duty_hi", *v);
    if (auto v = take("beta_lo")) spec.opt.beta_lo = parse_double("beta_lo", *v);
    if (auto v = take("beta_hi")) spec.opt.beta_hi = parse_double("beta_hi", *v);
    if (auto v = take("budget")) spec.opt.budget = static_cast<int>(parse_uint("budget", *v));

    if (!kv.empty()) throw ConfigError("unknown key '" + kv.begin()->first + "'");
    return spec;
}

void apply_overrides(ExperimentSpec& spec, const Overrides& ov) {
    if (ov.seed) spec.sim.seed = *ov.seed;
    if (ov.trials) spec.sim.trials = *ov.trials;
    if (ov.workers) spec.sim.workers = *ov.workers;
}

void validate(const ExperimentSpec& spec) {
    try {
        SimConfig sim = spec.sim;
        sim.model = spec.model;
        validate(sim);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (spec.mode == Mode::sweep) {
        if (spec.sweep.parameters.empty())
            throw ConfigError("mode sweep requires sweep_parameter");
        if (spec.metric != "success" && spec.metric != "capacity" && spec.metric != "outage")
            throw ConfigError("sweep metric must be success, capacity or outage");
        // every sweep point must satisfy the model invariants
        std::vector<std::size_t> idx(spec.sweep.parameters.size(), 0);
        const auto& vals = spec.sweep.values;
        const std::size_t n1 = vals[0].size();
        const std::size_t n2 = vals.size() > 1 ? vals[1].size() : 1;
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                ModelConfig m = spec.model;
                apply_parameter(m, spec.sweep.parameters[0], vals[0][i]);
                if (vals.size() > 1) apply_parameter(m, spec.sweep.parameters[1], vals[1][j]);
                try {
                    validate(m);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError("sweep point " + spec.sweep.parameters[0] + "=" +
                                      format_value(vals[0][i]) +
                                      (vals.size() > 1 ? " " + spec.sweep.parameters[1] + "=" +
                                                             format_value(vals[1][j])
                                                       : "") +
                                      ": " + e.what());
                }
            }
        }
    }
    if (spec.mode == Mode::laplace) {
        for (double s : spec.s_values)
            if (!(s >= 0.0)) throw ConfigError("s_values must be >= 0");
    }
    if (spec.mode == Mode::region) {
        if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0))
            throw ConfigError("epsilon must lie in (0,1)");
        if (!(spec.grid_step > 0.0 && spec.grid_step <= 0.5))
            throw ConfigError("grid_step must lie in (0, 0.5]");
    }
    if (spec.mode == Mode::optimize) {
        try {
            validate(spec.opt);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
}

RunOutput run_experiment(const ExperimentSpec& spec_in) {
    ExperimentSpec spec = spec_in;
    validate(spec);
    const auto t0 = std::chrono::steady_clock::now();

    Csv csv;
    json extra;
    if (spec.mode == Mode::success || spec.mode == Mode::outage || spec.mode == Mode::capacity ||
        spec.mode == Mode::bound) {
        csv.header = result_header();
        ExperimentSpec s = spec;
        std::string metric = mode_name(spec.mode);
        if (spec.mode == Mode::bound) {
            metric = "success";
            s.estimator_mc = false;
            s.estimator_analytic = true;
        }
        csv.rows.push_back(result_cells(s, eval_metric(s, s.model, metric)));
    } else if (spec.mode == Mode::laplace) {
        csv.header = {"s"};
        for (auto& h : result_header()) csv.header.push_back(h);
        for (double s : spec.s_values) {
            auto cells = result_cells(spec, eval_metric(spec, spec.model, "laplace", s));
            cells.insert(cells.begin(), format_value(s));
            csv.rows.push_back(cells);
        }
    } else if (spec.mode == Mode::sweep) {
        csv.header = spec.sweep.parameters;
        for (auto& h : result_header()) csv.header.push_back(h);
        const auto& vals = spec.sweep.values;
        const std::size_t n1 = vals[0].size();
        const std::size_t n2 = vals.size() > 1 ? vals[1].size() : 1;
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                ModelConfig m = spec.model;
                apply_parameter(m, spec.sweep.parameters[0], vals[0][i]);
                if (vals.size() > 1) apply_parameter(m, spec.sweep.parameters[1], vals[1][j]);
                auto cells = result_cells(spec, eval_metric(spec, m, spec.metric));
                if (vals.size() > 1) cells.insert(cells.begin(), format_value(vals[1][j]));
                cells.insert(cells.begin(), format_value(vals[0][i]));
                csv.rows.push_back(cells);
            }
        }
    } else if (spec.mode == Mode::optimize) {
        ObjectiveContext ctx{spec.model, spec.quad, spec.sim};
        ctx.sim.model = spec.model;
        csv.header = {"eval_index", "duty_cycle", "beta", "value"};
        if (spec.opt.variable == OptVariable::joint) {
            const auto res = maximize_joint(spec.opt, ctx);
            for (std::size_t i = 0; i < res.trace.size(); ++i)
                csv.rows.push_back({std::to_string(i), format_value(res.trace[i].duty),
                                    format_value(res.trace[i].beta), format_value(res.trace[i].value)});
            extra = {{"duty_cycle", res.duty},
                     {"beta", res.beta},
                     {"value", res.value},
                     {"budget_exhausted", res.budget_exhausted}};
        } else {
            const auto res = maximize_1d(spec.opt, ctx);
            for (std::size_t i = 0; i < res.trace.size(); ++i)
                csv.rows.push_back({std::to_string(i), format_value(res.trace[i].duty),
                                    format_value(res.trace[i].beta), format_value(res.trace[i].value)});
            extra = {{"arg", res.arg}, {"value", res.value}, {"unimodal", res.unimodal}};
        }
    } else {  // region
        const FeasibleRegion region = feasible_region(spec.model, spec.epsilon, spec.grid_step, spec.quad);
        csv.header = {"duty_cycle", "beta", "feasible", "status"};
        for (std::size_t i = 0; i < region.duty_values.size(); ++i) {
            for (std::size_t j = 0; j < region.beta_values.size(); ++j) {
                const auto cell = region.at(i, j);
                csv.rows.push_back({format_value(region.duty_values[i]),
                                    format_value(region.beta_values[j]),
                                    cell == FeasibleRegion::Cell::feasible ? "1" : "0",
                                    cell == FeasibleRegion::Cell::failed ? "failed" : "ok"});
            }
        }
    }

    RunOutput out;
    out.csv_path = spec.output_path;
    out.manifest_path = spec.output_path + ".manifest.json";
    out.rows = csv.rows.size();
    csv.write(out.csv_path);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out.manifest_path, spec, out, wall, extra);
    return out;
}

std::vector<RunOutput> reproduce_figures(const std::string& out_dir, const Overrides& ov) {
    std::filesystem::create_directories(out_dir);

    std::vector<double> unit_grid;
    for (int i = 1; i <= 19; ++i) unit_grid.push_back(static_cast<double>(i) / 20.0);
    const std::vector<double> cbar_values{3.0, 4.0, 5.0};
    const std::vector<double> lambda_grid{0.01, 0.02, 0.03, 0.04, 0.05, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0};

    auto base_spec = [&](const char* file, const char* param, const std::vector<double>& grid,
                         const char* metric, std::uint64_t trials) {
        ExperimentSpec spec;
        spec.mode = Mode::sweep;
        spec.metric = metric;
        spec.sweep.parameters = {param, "c_bar"};
        spec.sweep.values = {grid, cbar_values};
        spec.sim.trials = trials;
        spec.output_path = out_dir + "/" + file;
        apply_overrides(spec, ov);
        spec.quad.outer_truncation_radius = spec.sim.window_radius;
        return spec;
    };

    // the lambda_p sweep covers dense networks where each trial carries
    // many more clusters, so it runs fewer trials per point by default
    const std::uint64_t t_fig = ov.trials.value_or(kFigureTrials);
    const std::uint64_t t_lambda = ov.trials.value_or(kFigureTrials / 4);

    std::vector<RunOutput> outputs;
    outputs.push_back(run_experiment(base_spec("ps_vs_beta.csv", "beta", unit_grid, "success", t_fig)));
    outputs.push_back(run_experiment(base_spec("ps_vs_D.csv", "duty_cycle", unit_grid, "success", t_fig)));
    outputs.push_back(run_experiment(
        base_spec("capacity_vs_lambda_p.csv", "lambda_p", lambda_grid, "capacity", t_lambda)));
    outputs.push_back(run_experiment(base_spec("capacity_vs_beta.csv", "beta", unit_grid, "capacity", t_fig)));
    return outputs;
}

}  // namespace wpbc
