#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nacksim/plot.hpp"
#include "nacksim/runner.hpp"

namespace fs = std::filesystem;
using namespace nacksim;

namespace {

std::string out_root(const std::string& flag_value) {
    if (!flag_value.empty())
        return flag_value;
    if (const char* env = std::getenv("NACKSIM_OUT"))
        return env;
    return ".";
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string stem_of(const std::string& scenario_path) {
    return fs::path(scenario_path).stem().string();
}

Scenario load_with_overrides(const std::string& path, std::uint64_t* seed, double* duration,
                             const std::vector<std::string>& sets) {
    Scenario sc = load_scenario(path);
    if (seed)
        sc.seed = *seed;
    if (duration)
        sc.duration_s = *duration;
    for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("--set expects key=value, got " + kv);
        apply_override(sc, kv.substr(0, eq), kv.substr(eq + 1));
    }
    validate(sc);
    return sc;
}

void write_run(const fs::path& dir, const std::string& stem, const RunResult& rr) {
    write_file(dir / (stem + ".csv"), rr.series_csv);
    write_file(dir / (stem + ".summary.csv"), rr.summary_csv);
    write_file(dir / (stem + ".manifest.scn"), rr.manifest);
    std::cout << "wrote " << (dir / (stem + ".csv")).string() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nacksim: NDN/CCNx NACK security experiment runner"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, axis, values_csv, kind, csv_path, image_path;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    double duration = 0;
    bool seed_set = false, duration_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("scenario", scenario_path, "scenario file (.scn)")->required();
        cmd->add_option("--seed", seed, "override run.seed")->each([&](const std::string&) {
            seed_set = true;
        });
        cmd->add_option("--duration", duration, "override run.duration_s")
            ->each([&](const std::string&) { duration_set = true; });
        cmd->add_option("--set", sets, "override any key, e.g. --set consumers.mcp=0.3");
        cmd->add_option("-o,--out", out_dir, "output directory (default $NACKSIM_OUT or .)");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "execute one scenario");
    add_common(run_cmd);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a scenario once per axis value");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--axis", axis, "sweep axis key (default from [sweep])");
    sweep_cmd->add_option("--values", values_csv, "comma-separated values");

    CLI::App* plot_cmd = app.add_subcommand("plot", "render a figure from a sweep CSV");
    plot_cmd->add_option("--kind", kind, "fig2|fig3|fig5|fig6|bloom_fp")->required();
    plot_cmd->add_option("--csv", csv_path, "input CSV (optional for bloom_fp)");
    plot_cmd->add_option("-o,--out", image_path, "output SVG path")->required();
    plot_cmd->add_option("--seed", seed, "seed for generated bloom_fp points");

    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and validate a scenario");
    add_common(validate_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run_cmd)) {
            Scenario sc = load_with_overrides(scenario_path, seed_set ? &seed : nullptr,
                                              duration_set ? &duration : nullptr, sets);
            RunResult rr = run_scenario(sc);
            write_run(out_root(out_dir), stem_of(scenario_path), rr);
        } else if (app.got_subcommand(sweep_cmd)) {
            Scenario sc = load_with_overrides(scenario_path, seed_set ? &seed : nullptr,
                                              duration_set ? &duration : nullptr, sets);
            std::string use_axis = axis.empty() ? sc.sweep_axis : axis;
            std::vector<std::string> use_values = sc.sweep_values;
            if (!values_csv.empty()) {
                use_values.clear();
                std::size_t pos = 0;
                while (pos <= values_csv.size()) {
                    auto next = values_csv.find(',', pos);
                    use_values.push_back(next == std::string::npos
                                             ? values_csv.substr(pos)
                                             : values_csv.substr(pos, next - pos));
                    if (next == std::string::npos)
                        break;
                    pos = next + 1;
                }
            }
            if (use_axis.empty())
                throw ScenarioError("no sweep axis: set [sweep] axis or pass --axis");
            SweepResult sr = run_sweep(sc, use_axis, use_values);
            fs::path dir = out_root(out_dir);
            std::string stem = stem_of(scenario_path);
            for (const auto& [value, rr] : sr.runs)
                write_run(dir, stem + "_" + value, rr);
            write_file(dir / (stem + ".sweep.csv"), sr.merged_csv);
            std::cout << "wrote " << (dir / (stem + ".sweep.csv")).string() << '\n';
        } else if (app.got_subcommand(plot_cmd)) {
            std::string csv_text;
            if (!csv_path.empty()) {
                std::ifstream in(csv_path, std::ios::binary);
                if (!in)
                    throw std::runtime_error("cannot open csv: " + csv_path);
                std::ostringstream buf;
                buf << in.rdbuf();
                csv_text = buf.str();
            }
            std::string svg = render_figure(figure_kind_from(kind), csv_text, seed ? seed : 1);
            write_file(image_path, svg);
            std::cout << "wrote " << image_path << '\n';
        } else if (app.got_subcommand(validate_cmd)) {
            load_with_overrides(scenario_path, seed_set ? &seed : nullptr,
                                duration_set ? &duration : nullptr, sets);
            std::cout << scenario_path << ": ok\n";
        }
    } catch (const ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return 2;
    } catch (const PlotError& e) {
        std::cerr << "plot error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
