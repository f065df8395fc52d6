#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <faso/faso.hpp>

namespace {

int run_solve(const std::string& file, const faso::SolveOptions& opts, bool json,
              bool dump_ground, bool dump_models, bool water_report) {
    faso::SolveReport report = faso::solve_file(file, opts);

    for (const auto& d : report.errors) std::cerr << faso::format_diagnostic(d) << "\n";
    if (report.status == faso::SolveStatus::ResourceError) return 2;
    if (report.status == faso::SolveStatus::InputError) return 1;

    if (dump_ground) std::cout << faso::print_program(report.ground.to_program());
    if (dump_models)
        for (const auto& model : report.models) std::cout << faso::model_to_json(model) << "\n";

    if (json)
        std::cout << faso::report_to_json(report) << "\n";
    else
        std::cout << faso::report_to_text(report);

    if (water_report)
        std::cout << faso::water_report_text(report, faso::Tolerance{opts.epsilon});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy answer set optimization engine"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "solve a .faso program and rank its answer sets");
    std::string file;
    solve->add_option("file", file, "program file (.faso)")->required();
    std::string strategy = "pareto";
    solve->add_option("--strategy", strategy, "ranking strategy")
        ->check(CLI::IsMember({"pareto", "maximal"}))
        ->capture_default_str();
    bool json = false;
    solve->add_flag("--json", json, "emit the report as JSON");
    double epsilon = 1e-9;
    solve->add_option("--epsilon", epsilon, "absolute tolerance for grade comparisons")
        ->envname("FASO_EPSILON")
        ->capture_default_str();
    size_t max_models = static_cast<size_t>(-1);
    solve->add_option("--max-models", max_models, "cap on enumerated answer sets");
    size_t budget = 10'000'000;
    solve->add_option("--budget", budget, "grounding instance budget")->capture_default_str();
    bool dump_ground = false;
    solve->add_flag("--dump-ground", dump_ground, "emit the ground program");
    bool dump_models = false;
    solve->add_flag("--dump-models", dump_models, "emit each answer set as JSON");
    bool water_report = false;
    solve->add_flag("--water-report", water_report,
                    "decode objective/constraint grades and total benefits from the optimal "
                    "model (water allocation encoding)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    faso::SolveOptions opts;
    opts.strategy = strategy == "maximal" ? faso::Strategy::Maximal : faso::Strategy::Pareto;
    opts.epsilon = epsilon;
    opts.max_models = max_models;
    opts.budget = budget;
    return run_solve(file, opts, json, dump_ground, dump_models, water_report);
}
