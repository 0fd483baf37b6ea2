#ifndef EBSG_COMMANDS_HPP
#define EBSG_COMMANDS_HPP

#include "ebsg/config.hpp"
#include "ebsg/problems.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebsg {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitSuccess = 0,
    kExitUsage = 1,
    kExitNumerical = 2,
    kExitTolerance = 3,
};

/// Output file could not be written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error metrics of a run at its final time.
struct FinalMetrics {
    double courant = 0.0;
    double h = 0.0;
    double linf = 0.0;
    Peak peak;
    double runtime_s = 0.0;
};

FinalMetrics solve_metrics(const ProblemSpec& problem, const ExactSolution& exact,
                           int quad_order = kDefaultQuadratureOrder);

struct SolveSummary {
    double courant = 0.0;
    double h = 0.0;
    double dt = 0.0;
    double p = 0.0;
    double linf = 0.0;
    double peak = 0.0;
    double peak_x = 0.0;
    double runtime_s = 0.0;
    std::vector<std::filesystem::path> profiles;
};

/// `Cr=<v> h=<v> dt=<v> p=<v> Linf=<v> peak=<v> peak_x=<v> runtime_s=<v>`
std::string summary_line(const SolveSummary& s);

/// Writes `x,numeric,exact,abs_error` rows, one per knot.
void write_profile(const std::filesystem::path& path, std::span<const double> x,
                   std::span<const double> numeric, std::span<const double> exact);

std::string profile_filename(double t);

/** Runs one configuration, writes a profile CSV per snapshot into out_dir and
 * prints the summary line to `out`.
 */
SolveSummary cmd_solve(const RunConfig& config, const std::filesystem::path& out_dir,
                       std::ostream& out);

struct TableRow {
    double courant = 0.0;
    double h = 0.0;
    double dt = 0.0;
    double p = 0.0;
    double computed = 0.0;
    double expected = 0.0;
    double deviation = 0.0;  // absolute for peak tables, relative otherwise
    double tolerance = 0.0;
    bool pass = false;
    double runtime_s = 0.0;
};

struct PulseCentreTrial {
    double x0 = 0.0;
    std::vector<TableRow> rows;
    bool pass = false;
};

struct TableReport {
    int which = 0;
    std::string title;
    bool relative = false;
    std::vector<TableRow> rows;
    /// Table 4 only: reruns at alternative pulse centres when the default fails.
    std::vector<PulseCentreTrial> centre_trials;
    bool pass = false;
};

inline constexpr double kPeakTolerance = 0.02;
inline constexpr double kErrorRelativeTolerance = 0.15;
inline constexpr double kDefaultPulseCentre = 1.0;

/// Rows of the peak-concentration table (2), channel error table (3) or pulse error table (4).
std::vector<TableRow> table_rows(int which, double tolerance_scale, double pulse_centre);

TableReport run_table(int which, double tolerance_scale = 1.0);
void print_table(const TableReport& report, std::ostream& out);

struct SweepReport {
    std::vector<double> p;
    std::vector<double> linf;
    double best_p = 0.0;
    double best_linf = 0.0;
};

/// Log-spaced tension sweep; endpoints are included exactly.
SweepReport cmd_sweep_p(const RunConfig& config, double p_min, double p_max, int count);
void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report);

}  // namespace ebsg

#endif
