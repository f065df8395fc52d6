#pragma once

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "faso/generator.hpp"
#include "faso/grounder.hpp"
#include "faso/parser.hpp"
#include "faso/preference.hpp"
#include "faso/validate.hpp"

namespace faso {

struct SolveOptions {
    Strategy strategy = Strategy::Pareto;
    double epsilon = 1e-9;
    size_t max_models = static_cast<size_t>(-1);
    size_t budget = 10'000'000;
};

enum class SolveStatus { Ok, InputError, ResourceError };

struct SolveReport {
    SolveStatus status = SolveStatus::Ok;
    Strategy strategy = Strategy::Pareto;
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;
    std::vector<FuzzyAnswerSet> models;
    RankResult ranking;
    GroundProgram ground; // fully instantiated, including preference sets
    double solve_seconds = 0.0;
};

// parse -> validate -> ground -> generate -> instantiate preference sets
// -> rank.
inline SolveReport solve_text(std::string_view text, const std::string& name,
                              const SolveOptions& opts = {}) {
    auto started = std::chrono::steady_clock::now();
    SolveReport report;
    report.strategy = opts.strategy;

    ParseResult parsed = parse_program(text, name);
    for (auto& d : parsed.diagnostics) {
        if (d.severity == Severity::Error)
            report.errors.push_back(std::move(d));
        else
            report.warnings.push_back(std::move(d));
    }
    if (!report.errors.empty()) {
        report.status = SolveStatus::InputError;
        return report;
    }

    std::vector<Diagnostic> validation = validate_program(parsed.program);
    for (auto& d : validation) {
        if (d.severity == Severity::Error)
            report.errors.push_back(std::move(d));
        else
            report.warnings.push_back(std::move(d));
    }
    if (!report.errors.empty()) {
        report.status = SolveStatus::InputError;
        return report;
    }

    Tolerance tol{opts.epsilon};
    try {
        GroundingOptions gopts;
        gopts.instance_budget = opts.budget;
        report.ground = ground_program(parsed.program, tol, gopts, &report.warnings);

        GenerateOptions genopts;
        genopts.max_models = opts.max_models;
        report.models = generate_answer_sets(report.ground, tol, genopts, &report.warnings);

        ground_preference_sets(report.ground, report.models, tol, &report.warnings);

        PreferenceEvaluator evaluator(report.models, tol, &report.warnings);
        report.ranking = evaluator.rank(report.ground.pref, opts.strategy);
    } catch (const ResourceLimitError& e) {
        report.status = SolveStatus::ResourceError;
        report.errors.push_back(make_error(e.what()));
        return report;
    } catch (const FragmentError& e) {
        report.status = SolveStatus::InputError;
        report.errors.push_back(make_error(e.what()));
        return report;
    }

    report.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

inline SolveReport solve_file(const std::string& path, const SolveOptions& opts = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        SolveReport report;
        report.status = SolveStatus::InputError;
        report.strategy = opts.strategy;
        report.errors.push_back(make_error("cannot open file '" + path + "'"));
        return report;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return solve_text(buffer.str(), path, opts);
}

} // namespace faso
