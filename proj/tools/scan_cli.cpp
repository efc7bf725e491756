#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "nlew/reproduce.hpp"
#include "nlew/scan.hpp"

namespace fs = std::filesystem;
using nlew::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::vector<double> ordered_params(const std::string& witness_id,
                                   const std::vector<std::string>& kv) {
    const nlew::WitnessFamilyInfo* info = nullptr;
    for (const auto& w : nlew::witness_registry())
        if (w.id == witness_id) info = &w;
    if (!info) throw std::invalid_argument("unknown witness family: " + witness_id);
    std::vector<double> params(info->params.size(), 0.0);
    std::vector<bool> seen(info->params.size(), false);
    for (const auto& item : kv) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--param expects name=value, got " + item);
        const std::string name = item.substr(0, eq);
        bool found = false;
        for (std::size_t i = 0; i < info->params.size(); ++i) {
            if (info->params[i].name != name) continue;
            params[i] = std::stod(item.substr(eq + 1));
            seen[i] = found = true;
        }
        if (!found)
            throw std::invalid_argument("witness " + witness_id +
                                        " has no parameter " + name);
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw std::invalid_argument("missing --param " + info->params[i].name);
    return params;
}

int run_detect_cmd(const std::string& config_path, const std::string& out_dir,
                   const std::string& format, std::optional<uint64_t> seed) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot read config " + config_path);
    Json j;
    in >> j;
    nlew::SweepConfig config = nlew::parse_sweep_config(j);
    if (seed) config.seed = *seed;
    if (config.sepmax_cache.empty())
        config.sepmax_cache = (fs::path(out_dir) / "sepmax_cache.json").string();

    const nlew::DetectionReport report = nlew::run_detect(config);
    if (format == "csv" || format == "both")
        write_file(fs::path(out_dir) / "detect.csv", nlew::detection_csv(report));
    if (format == "json" || format == "both")
        write_file(fs::path(out_dir) / "detect.json",
                   nlew::detection_json(report).dump(2) + "\n");
    std::cout << "rows: " << report.rows.size()
              << ", detection intervals: " << report.intervals.size() << "\n";
    for (const auto& iv : report.intervals)
        std::cout << "  " << nlew::to_string(iv.kind) << " " << iv.axis << " in ["
                  << nlew::format_double(iv.lo) << ", " << nlew::format_double(iv.hi)
                  << "]" << (iv.hi_at_domain_edge ? " (up to domain edge)" : "")
                  << (iv.lo_at_domain_edge ? " (from domain edge)" : "") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlinear entanglement witness batch tool"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", format = "both";
    std::string witness_id, operator_kind = "witness";
    std::vector<std::string> params;
    int samples = 10000, restarts = 64, criterion = 0, property_samples = 1000;
    uint64_t seed = 42;
    bool seed_set = false;

    auto* detect = app.add_subcommand("detect", "parameter sweep with interval extraction");
    detect->add_option("--config", config_path, "JSON sweep configuration")->required();
    detect->add_option("--out", out_dir, "output directory");
    detect->add_option("--format", format, "csv, json, or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    detect->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });

    auto* certify = app.add_subcommand("certify", "sample-based witness certification");
    certify->add_option("--witness", witness_id, "witness family id")->required();
    certify->add_option("--param", params, "witness parameter name=value");
    certify->add_option("--samples", samples, "separable sample count");
    certify->add_option("--seed", seed, "sampling seed");
    certify->add_option("--out", out_dir, "output directory");

    auto* sepmax = app.add_subcommand("sepmax", "separable maximum of Tr(W^2 rho)");
    sepmax->add_option("--witness", witness_id, "witness family id")->required();
    sepmax->add_option("--param", params, "witness parameter name=value");
    sepmax->add_option("--restarts", restarts, "random restarts");
    sepmax->add_option("--seed", seed, "restart seed");
    sepmax->add_option("--out", out_dir, "output directory");

    auto* decomp = app.add_subcommand("decompose", "local observable decomposition");
    decomp->add_option("--witness", witness_id, "witness family id")->required();
    decomp->add_option("--param", params, "witness parameter name=value");
    decomp->add_option("--operator", operator_kind, "witness, square, or fbasic")
        ->check(CLI::IsMember({"witness", "square", "fbasic"}));
    decomp->add_option("--out", out_dir, "output directory");
    decomp->add_option("--format", format, "csv, json, or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    auto* reproduce = app.add_subcommand("reproduce", "run every reference checkpoint");
    reproduce->add_option("--out", out_dir, "output directory");
    reproduce->add_option("--criterion", criterion, "run a single criterion (1-13)");
    reproduce->add_option("--samples", samples, "separable samples per evaluator");
    reproduce->add_option("--property-samples", property_samples,
                          "samples per inequality battery");
    reproduce->add_option("--seed", seed, "sampling seed");

    auto* registry = app.add_subcommand("registry", "print state and witness registries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;  // --help stays success
    }

    try {
        if (detect->parsed()) {
            return run_detect_cmd(config_path, out_dir, format,
                                  seed_set ? std::optional<uint64_t>(seed)
                                           : std::nullopt);
        }
        if (certify->parsed()) {
            const nlew::WitnessOperator w =
                nlew::make_witness(witness_id, ordered_params(witness_id, params));
            nlew::CertifySettings settings;
            settings.samples = samples;
            settings.seed = seed;
            const nlew::CertificationReport report = nlew::certify_witness(w, settings);
            const Json j = nlew::certification_to_json(report);
            write_file(fs::path(out_dir) / "certify.json", j.dump(2) + "\n");
            std::cout << j.dump(2) << "\n";
            return report.suspect ? kExitFailure : kExitOk;
        }
        if (sepmax->parsed()) {
            const nlew::WitnessOperator w =
                nlew::make_witness(witness_id, ordered_params(witness_id, params));
            const std::string cache =
                (fs::path(out_dir) / "sepmax_cache.json").string();
            nlew::SepMaxResult result;
            if (w.family == "wlp") {
                result.max_value = nlew::closed_form_wlp(w.params[0]);
                result.converged = true;
                std::cout << "closed form: " << nlew::format_double(result.max_value)
                          << "\n";
            } else {
                result = nlew::seesaw_max(w.matrix * w.matrix, w.dims, restarts, seed);
                std::cout << "seesaw max: " << nlew::format_double(result.max_value)
                          << " (restarts " << result.restarts_used << ")\n";
            }
            nlew::cached_sep_max(w, restarts, seed, cache);
            write_file(fs::path(out_dir) / "sepmax.json",
                       nlew::sepmax_to_json(result).dump(2) + "\n");
            return kExitOk;
        }
        if (decomp->parsed()) {
            const nlew::WitnessOperator w =
                nlew::make_witness(witness_id, ordered_params(witness_id, params));
            nlew::Matrix op = w.matrix;
            if (operator_kind == "square") op = w.matrix * w.matrix;
            if (operator_kind == "fbasic") op = nlew::f_basic(w);
            const nlew::DecompositionResult d = nlew::decompose(op, w.dims);
            if (format == "csv" || format == "both")
                write_file(fs::path(out_dir) / "decomposition.csv",
                           nlew::decomposition_to_csv(d));
            if (format == "json" || format == "both")
                write_file(fs::path(out_dir) / "decomposition.json",
                           nlew::decomposition_to_json(d).dump(2) + "\n");
            std::cout << "residual: " << nlew::format_double(d.residual) << "\n";
            return kExitOk;
        }
        if (reproduce->parsed()) {
            nlew::ReproduceOptions options;
            options.battery_samples = samples;
            options.property_samples = property_samples;
            options.seed = seed;
            const auto results = nlew::run_reproduction(options, criterion);
            for (const auto& r : results) {
                const char* tag = r.is_note ? "NOTE" : (r.passed ? "PASS" : "FAIL");
                std::cout << tag << " " << r.id << " — " << r.detail << "\n";
            }
            write_file(fs::path(out_dir) / "reproduce.json",
                       nlew::reproduction_json(results).dump(2) + "\n");
            return nlew::reproduction_failed(results) ? kExitFailure : kExitOk;
        }
        if (registry->parsed()) {
            const Json j = {{"states", nlew::state_registry_json()},
                            {"witnesses", nlew::witness_registry_json()}};
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitFailure;
    }
    return kExitConfig;
}
