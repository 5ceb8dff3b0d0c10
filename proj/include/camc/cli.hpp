#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "camc/amc_verify.hpp"

namespace camc {

struct WulffConfig {
    std::string gamma = "isotropic";
    int nu3_samples = 64;
    int azimuth_samples = 128;
    std::string out;
};

struct TwizzlerConfig {
    std::string gamma = "isotropic";
    double Lambda = 1.0;
    double A = 0.5;
    double omega = 1.0;
    std::string branch = "minus";
    double s_max = 0.0;  // 0: one sled period
    double step = 1e-3;
    double ds = 0.04;
    int theta_samples = 160;
    double turns = 1.0;
    double C = 0.0;
    std::string out;  // OBJ
    std::string sled_csv;
    std::string curve_csv;
    std::string svg;  // generating curve polyline
};

struct GraphConfig {
    std::string gamma = "isotropic";
    double lambda = 0.0;
    double Lambda = 0.0;
    double C = 0.0;
    double r_min = 1.0;
    double r_max = 3.0;
    double step = 1e-3;
    int root = 0;
    int theta_samples = 128;
    std::string out;  // .csv profile table or .obj swept surface
};

struct PNormConfig {
    std::string mode = "check";  // catenoid | helicoid | check
    int p = 4;
    double c = 0.5;
    double a_min = 1.0;
    double a_max = 3.0;
    double h = 0.01;
    double axis_gap = 0.2;
    int angular_samples = 256;
    int radial_samples = 64;
    std::string out;  // CSV for catenoid/helicoid, optional JSON summary for check
};

struct VerifyConfig {
    std::string gamma = "isotropic";
    std::string in;
    std::string report;
    bool has_target = false;
    double target = 0.0;
    double relative_amplitude = 1e-4;
};

enum class Figure { Fig1, Fig2 };

struct FiguresConfig {
    std::vector<Figure> which{Figure::Fig1, Figure::Fig2};
    std::string outdir;
};

/// Parsed command line. Numeric parameters are validated during parsing.
struct RunConfig {
    std::string command;  // wulff | twizzler | graph | pnorm | verify | figures | help
    bool json = false;
    std::string help;
    WulffConfig wulff;
    TwizzlerConfig twizzler;
    GraphConfig graph;
    PNormConfig pnorm;
    VerifyConfig verify;
    FiguresConfig figures;
};

/// Throws UsageError on unknown flags, missing subcommands or invalid values.
RunConfig parse_args(int argc, const char* const* argv);

struct FigureResult {
    Figure figure = Figure::Fig1;
    std::vector<std::string> files;
    MeshEnergyReport report;
    double tolerance = 0.0;
    bool pass = false;
};

/// Wulff OBJ, sled CSV+SVG, generating-curve CSV+SVG, twizzler OBJ and the
/// verify report for one figure, written into `outdir` (created if needed).
FigureResult run_figures(Figure which, const std::string& outdir);

/// Executes a parsed configuration; returns the process exit code.
int run(const RunConfig& config, std::ostream& out);

/// parse_args + run with error reporting; usage errors exit with 2, other
/// failures with 1.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace camc
