// Command-line front end: solve, table, sweep-p.

#include "ebsg/banded.hpp"
#include "ebsg/commands.hpp"
#include "ebsg/format.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ebsg;

int main(int argc, char** argv)
{
    CLI::App app{"Exponential B-spline Galerkin solver for the 1-D advection-diffusion equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    auto* solve = app.add_subcommand("solve", "Run one configuration and write profile CSVs");
    solve->add_option("--config", config_path, "Configuration file")->required();
    solve->add_option("--out-dir", out_dir, "Directory for profile CSV files");

    int which = 0;
    double tolerance_scale = 1.0;
    auto* table = app.add_subcommand("table", "Reproduce one of the reference tables (2, 3 or 4)");
    table->add_option("which", which, "Table number")->required()->check(CLI::IsMember({2, 3, 4}));
    table->add_option("--tolerance-scale", tolerance_scale, "Multiply acceptance tolerances")
        ->check(CLI::PositiveNumber);

    double p_min = 0.0;
    double p_max = 0.0;
    int count = 0;
    auto* sweep = app.add_subcommand("sweep-p", "Error as a function of the tension parameter");
    sweep->add_option("--config", config_path, "Configuration file")->required();
    sweep->add_option("--min", p_min, "Smallest p")->required();
    sweep->add_option("--max", p_max, "Largest p")->required();
    sweep->add_option("--count", count, "Number of log-spaced samples")->required();
    sweep->add_option("--out-dir", out_dir, "Directory for sweep_p.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (*solve) {
            const RunConfig config = load_config(config_path);
            cmd_solve(config, out_dir, std::cout);
            return kExitSuccess;
        }
        if (*table) {
            const TableReport report = run_table(which, tolerance_scale);
            print_table(report, std::cout);
            return report.pass ? kExitSuccess : kExitTolerance;
        }
        if (*sweep) {
            const RunConfig config = load_config(config_path);
            const SweepReport report = cmd_sweep_p(config, p_min, p_max, count);
            std::filesystem::create_directories(out_dir);
            write_sweep_csv(std::filesystem::path(out_dir) / "sweep_p.csv", report);
            std::cout << "p,Linf\n";
            for (std::size_t i = 0; i < report.p.size(); ++i) {
                std::cout << format_double(report.p[i]) << ',' << format_double(report.linf[i])
                          << '\n';
            }
            std::cout << "argmin p=" << format_double(report.best_p)
                      << " Linf=" << format_double(report.best_linf) << '\n';
            return kExitSuccess;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
