#include "nlew/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "nlew/bisect.hpp"
#include "nlew/parallel.hpp"

namespace nlew {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

int GridAxis::points() const {
    if (fixed) return 1;
    return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
}

double GridAxis::at(int i) const {
    if (fixed) return start;
    const double v = start + i * step;
    return std::min(v, stop);
}

namespace {

GridAxis parse_axis(const std::string& name, const Json& spec,
                    const std::string& field) {
    GridAxis axis;
    axis.name = name;
    if (spec.is_number()) {
        axis.fixed = true;
        axis.start = axis.stop = spec.get<double>();
        return axis;
    }
    if (!spec.is_object())
        throw std::invalid_argument(field + ": expected a number or {start,stop,step}");
    axis.start = spec.at("start").get<double>();
    axis.stop = spec.at("stop").get<double>();
    if (axis.stop < axis.start)
        throw std::invalid_argument(field + ": stop must be >= start");
    if (axis.stop == axis.start) {
        axis.fixed = true;
        return axis;
    }
    // default grid density: 200 points per axis
    axis.step = spec.value("step", (axis.stop - axis.start) / 199.0);
    if (axis.step <= 0) throw std::invalid_argument(field + ".step must be > 0");
    return axis;
}

std::vector<GridAxis> parse_axes(const Json& section,
                                 const std::vector<ParamRange>& declared,
                                 const std::string& prefix) {
    std::vector<GridAxis> axes;
    const Json params = section.value("params", Json::object());
    for (const auto& r : declared) {
        if (!params.contains(r.name))
            throw std::invalid_argument(prefix + ".params." + r.name + " is required");
        axes.push_back(parse_axis(r.name, params.at(r.name),
                                  prefix + ".params." + r.name));
    }
    for (const auto& [key, _] : params.items()) {
        const bool known = std::any_of(declared.begin(), declared.end(),
                                       [&](const ParamRange& r) { return r.name == key; });
        if (!known)
            throw std::invalid_argument(prefix + ".params." + key + " is not a parameter");
    }
    return axes;
}

}  // namespace

SweepConfig parse_sweep_config(const Json& j) {
    SweepConfig config;
    if (!j.contains("state")) throw std::invalid_argument("state section is required");
    config.state_family = j.at("state").value("family", "");
    const StateFamilyInfo& sf = family_info(config.state_family);  // throws if unknown
    config.state_axes = parse_axes(j.at("state"), sf.params, "state");

    if (!j.contains("kinds") || !j.at("kinds").is_array() || j.at("kinds").empty())
        throw std::invalid_argument("kinds must be a non-empty array");
    for (const auto& name : j.at("kinds"))
        config.kinds.push_back(kind_from_string(name.get<std::string>()));

    const bool needs_witness =
        std::any_of(config.kinds.begin(), config.kinds.end(), kind_needs_witness);
    if (j.contains("witness")) {
        config.witness_family = j.at("witness").value("family", "");
        const WitnessFamilyInfo* wf = nullptr;
        for (const auto& info : witness_registry())
            if (info.id == config.witness_family) wf = &info;
        if (!wf)
            throw std::invalid_argument("witness.family: unknown witness " +
                                        config.witness_family);
        if (!(wf->dims == sf.dims))
            throw std::invalid_argument("witness.family: dimension mismatch with state");
        config.witness_axes = parse_axes(j.at("witness"), wf->params, "witness");
    } else if (needs_witness) {
        throw std::invalid_argument("witness section is required for the chosen kinds");
    }

    config.seed = j.value("seed", uint64_t{42});
    config.bisect_tol = j.value("bisect_tol", 1e-4);
    config.sepmax_restarts = j.value("sepmax_restarts", 64);
    config.sepmax_cache = j.value("sepmax_cache", std::string{});
    if (j.contains("sepmax_override"))
        config.sepmax_override = j.at("sepmax_override").get<double>();
    if (config.bisect_tol <= 0) throw std::invalid_argument("bisect_tol must be > 0");
    return config;
}

double cached_sep_max(const WitnessOperator& w, int restarts, uint64_t seed,
                      const std::string& cache_path) {
    if (w.family == "wlp") return closed_form_wlp(w.params.at(0));
    std::ostringstream key;
    key << w.family;
    for (double p : w.params) key << '|' << format_double(p);
    key << "|r" << restarts << "|s" << seed;

    Json cache = Json::object();
    if (!cache_path.empty()) {
        std::ifstream in(cache_path);
        if (in) {
            try {
                in >> cache;
            } catch (...) {
                cache = Json::object();
            }
        }
        if (cache.contains(key.str())) return cache.at(key.str()).get<double>();
    }
    const double value = seesaw_max(w.matrix * w.matrix, w.dims, restarts, seed).max_value;
    if (!cache_path.empty()) {
        cache[key.str()] = value;
        std::ofstream out(cache_path);
        if (out) out << cache.dump(2) << '\n';
    }
    return value;
}

double detection_function(NlewKind kind, const WitnessOperator* w,
                          const DensityMatrix& rho, std::optional<double> sep_max) {
    switch (kind) {
        case NlewKind::CcnrL:
        case NlewKind::DvL: {
            const NlewEvaluation e = evaluate(kind, nullptr, rho);
            return std::max(e.value, -e.lmax_wl);
        }
        case NlewKind::CcnrNl:
        case NlewKind::DvNl: {
            // When the built linear operator has lmax <= 0 the nonlinear
            // construction is undefined; report the (positive) validity gap
            // so bisection can find the boundary.
            const NlewEvaluation lin =
                evaluate(kind == NlewKind::CcnrNl ? NlewKind::CcnrL : NlewKind::DvL,
                         nullptr, rho);
            if (lin.lmax_wl <= 0) return -lin.lmax_wl;
            return std::max(evaluate(kind, nullptr, rho).value, -lin.lmax_wl);
        }
        default: return evaluate(kind, w, rho, sep_max).value;
    }
}

namespace {

struct GridShape {
    std::vector<GridAxis> axes;  // state then witness
    int state_count = 0;

    int total() const {
        int n = 1;
        for (const auto& a : axes) n *= a.points();
        return n;
    }
    std::vector<double> values_at(int flat) const {
        std::vector<double> v(axes.size());
        for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
            const int n = axes[a].points();
            v[a] = axes[a].at(flat % n);
            flat /= n;
        }
        return v;
    }
};

struct Evaluator {
    const SweepConfig& config;
    GridShape shape;
    // sep_max per witness grid point, solved up front so the parallel row
    // loop never touches the sidecar cache concurrently
    std::vector<double> sep_max_by_witness;
    bool needs_sep_max = false;

    std::vector<double> state_params(const std::vector<double>& all) const {
        return {all.begin(), all.begin() + shape.state_count};
    }
    std::vector<double> witness_params(const std::vector<double>& all) const {
        return {all.begin() + shape.state_count, all.end()};
    }

    int witness_points() const {
        int n = 1;
        for (std::size_t a = shape.state_count; a < shape.axes.size(); ++a)
            n *= shape.axes[a].points();
        return n;
    }

    std::optional<WitnessOperator> make_w(const std::vector<double>& all) const {
        if (config.witness_family.empty()) return std::nullopt;
        return make_witness(config.witness_family, witness_params(all));
    }

    void prepare_sep_max() {
        needs_sep_max = std::any_of(config.kinds.begin(), config.kinds.end(),
                                    kind_needs_sep_max) &&
                        !config.witness_family.empty();
        if (!needs_sep_max || config.sepmax_override) return;
        const int n = witness_points();
        sep_max_by_witness.resize(n);
        for (int i = 0; i < n; ++i) {
            const std::vector<double> all = shape.values_at(i);  // state axes at index 0
            const auto w = make_w(all);
            sep_max_by_witness[i] = cached_sep_max(*w, config.sepmax_restarts,
                                                   config.seed, config.sepmax_cache);
        }
    }

    std::optional<double> sep_max_at(int flat) const {
        if (!needs_sep_max) return std::nullopt;
        if (config.sepmax_override) return config.sepmax_override;
        return sep_max_by_witness[flat % witness_points()];
    }

    // off-grid probe used by interval refinement
    std::optional<double> sep_max_probe(const WitnessOperator* w) const {
        if (!w || !needs_sep_max) return std::nullopt;
        if (config.sepmax_override) return config.sepmax_override;
        return cached_sep_max(*w, config.sepmax_restarts, config.seed,
                              config.sepmax_cache);
    }

    double detect_at(NlewKind kind, const std::vector<double>& all) const {
        try {
            const DensityMatrix rho =
                make_family_state(config.state_family, state_params(all));
            const auto w = make_w(all);
            std::optional<double> sm;
            if (kind_needs_sep_max(kind)) sm = sep_max_probe(w ? &*w : nullptr);
            return detection_function(kind, w ? &*w : nullptr, rho, sm);
        } catch (const std::exception&) {
            return kInf;
        }
    }
};

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool row_detected(const DetectionRow& row, std::size_t kind_idx) {
    return row.eval_ok[kind_idx] && row.evals[kind_idx].witness_valid &&
           row.evals[kind_idx].value < 0;
}

}  // namespace

DetectionReport run_detect(const SweepConfig& config) {
    GridShape shape;
    shape.axes = config.state_axes;
    shape.state_count = static_cast<int>(config.state_axes.size());
    shape.axes.insert(shape.axes.end(), config.witness_axes.begin(),
                      config.witness_axes.end());
    Evaluator ev{config, shape, {}, false};
    ev.prepare_sep_max();

    DetectionReport report;
    report.state_family = config.state_family;
    report.witness_family = config.witness_family;
    report.kinds = config.kinds;
    for (const auto& a : shape.axes) report.axis_names.push_back(a.name);

    const int total = shape.total();
    report.rows.resize(total);
    parallel_for(total, [&](int idx) {
        DetectionRow& row = report.rows[idx];
        row.params = shape.values_at(idx);
        row.tr_wl = kNaN;
        try {
            const DensityMatrix rho =
                make_family_state(config.state_family, ev.state_params(row.params));
            const PptResult ppt = ppt_classify(rho);
            row.ppt_class = ppt.npt ? "NPT" : "PPT";
            row.min_pt_eigenvalue = ppt.min_pt_eigenvalue;
            const auto w = ev.make_w(row.params);
            if (w) row.tr_wl = expectation(w->matrix, rho);
            for (NlewKind kind : config.kinds) {
                try {
                    std::optional<double> sm;
                    if (kind_needs_sep_max(kind)) sm = ev.sep_max_at(idx);
                    row.evals.push_back(evaluate(kind, w ? &*w : nullptr, rho, sm));
                    row.eval_ok.push_back(true);
                    row.eval_error.emplace_back();
                } catch (const std::exception& err) {
                    row.evals.emplace_back();
                    row.eval_ok.push_back(false);
                    row.eval_error.emplace_back(err.what());
                }
            }
        } catch (const std::exception& err) {
            row.ppt_class = "ERROR";
            row.min_pt_eigenvalue = kNaN;
            for (std::size_t i = 0; i < config.kinds.size(); ++i) {
                row.evals.emplace_back();
                row.eval_ok.push_back(false);
                row.eval_error.emplace_back(err.what());
            }
        }
    });

    // Interval extraction: anchor at the most negative detection value, then
    // scan each swept axis and refine run endpoints by bisection.
    for (std::size_t ki = 0; ki < config.kinds.size(); ++ki) {
        const NlewKind kind = config.kinds[ki];
        int anchor = -1;
        double best = kInf;
        for (int idx = 0; idx < total; ++idx) {
            if (!row_detected(report.rows[idx], ki)) continue;
            if (report.rows[idx].evals[ki].value < best) {
                best = report.rows[idx].evals[ki].value;
                anchor = idx;
            }
        }
        if (anchor < 0) continue;
        const std::vector<double> anchor_params = report.rows[anchor].params;

        for (std::size_t ax = 0; ax < shape.axes.size(); ++ax) {
            const GridAxis& axis = shape.axes[ax];
            const int n = axis.points();
            if (n < 2) continue;
            std::vector<double> probe = anchor_params;
            std::vector<bool> det(n);
            for (int i = 0; i < n; ++i) {
                probe[ax] = axis.at(i);
                det[i] = ev.detect_at(kind, probe) < 0;
            }
            auto refine = [&](double lo, double hi) {
                probe[ax] = lo;
                const double flo = ev.detect_at(kind, probe);
                probe[ax] = hi;
                const double fhi = ev.detect_at(kind, probe);
                if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo < 0) == (fhi < 0))
                    return 0.5 * (lo + hi);
                return bisect_root(
                    [&](double x) {
                        probe[ax] = x;
                        const double v = ev.detect_at(kind, probe);
                        return std::isfinite(v) ? v : 1.0;
                    },
                    lo, hi, config.bisect_tol);
            };
            for (int i = 0; i < n;) {
                if (!det[i]) {
                    ++i;
                    continue;
                }
                int j = i;
                while (j + 1 < n && det[j + 1]) ++j;
                DetectionInterval interval;
                interval.kind = kind;
                interval.axis = axis.name;
                interval.anchor = anchor_params;
                interval.lo_at_domain_edge = (i == 0);
                interval.hi_at_domain_edge = (j == n - 1);
                interval.lo = interval.lo_at_domain_edge ? axis.at(0)
                                                         : refine(axis.at(i - 1), axis.at(i));
                interval.hi = interval.hi_at_domain_edge ? axis.at(n - 1)
                                                         : refine(axis.at(j), axis.at(j + 1));
                // re-evaluate: midpoint detects, just-outside points do not
                probe[ax] = 0.5 * (interval.lo + interval.hi);
                interval.verified = ev.detect_at(kind, probe) < 0;
                const double margin = 2 * config.bisect_tol;
                if (!interval.lo_at_domain_edge) {
                    probe[ax] = interval.lo - margin;
                    interval.verified =
                        interval.verified && !(ev.detect_at(kind, probe) < 0);
                }
                if (!interval.hi_at_domain_edge) {
                    probe[ax] = interval.hi + margin;
                    interval.verified =
                        interval.verified && !(ev.detect_at(kind, probe) < 0);
                }
                report.intervals.push_back(std::move(interval));
                i = j + 1;
            }
        }
    }
    return report;
}

std::string detection_csv(const DetectionReport& report) {
    std::ostringstream out;
    out << "family";
    for (const auto& name : report.axis_names) out << ',' << name;
    out << ",ppt_class,tr_wl";
    for (NlewKind kind : report.kinds) out << ',' << to_string(kind);
    out << ",intermediates_digest\n";
    for (const auto& row : report.rows) {
        out << report.state_family;
        for (double p : row.params) out << ',' << format_double(p);
        out << ',' << row.ppt_class << ',' << format_double(row.tr_wl);
        std::string digest_src;
        for (std::size_t i = 0; i < report.kinds.size(); ++i) {
            if (row.eval_ok[i]) {
                out << ',' << format_double(row.evals[i].value);
                digest_src += evaluation_to_json(row.evals[i]).dump();
            } else {
                out << ",error";
                digest_src += row.eval_error[i];
            }
        }
        char hex[20];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a(digest_src)));
        out << ',' << hex << '\n';
    }
    return out.str();
}

Json detection_json(const DetectionReport& report) {
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json evals = Json::array();
        for (std::size_t i = 0; i < report.kinds.size(); ++i) {
            if (row.eval_ok[i]) {
                Json e = evaluation_to_json(row.evals[i]);
                e["detected"] = row_detected(row, i);
                evals.push_back(e);
            } else {
                evals.push_back({{"kind", to_string(report.kinds[i])},
                                 {"error", row.eval_error[i]},
                                 {"detected", false}});
            }
        }
        rows.push_back({{"params", row.params},
                        {"ppt_class", row.ppt_class},
                        {"min_pt_eigenvalue", row.min_pt_eigenvalue},
                        {"tr_wl", std::isnan(row.tr_wl) ? Json() : Json(row.tr_wl)},
                        {"evaluations", evals}});
    }
    Json intervals = Json::array();
    for (const auto& iv : report.intervals)
        intervals.push_back({{"kind", to_string(iv.kind)},
                             {"axis", iv.axis},
                             {"lo", iv.lo},
                             {"hi", iv.hi},
                             {"lo_at_domain_edge", iv.lo_at_domain_edge},
                             {"hi_at_domain_edge", iv.hi_at_domain_edge},
                             {"verified", iv.verified},
                             {"anchor", iv.anchor}});
    Json kinds = Json::array();
    for (NlewKind kind : report.kinds) kinds.push_back(to_string(kind));
    return {{"state_family", report.state_family},
            {"witness_family", report.witness_family},
            {"axes", report.axis_names},
            {"kinds", kinds},
            {"rows", rows},
            {"intervals", intervals}};
}

}  // namespace nlew
