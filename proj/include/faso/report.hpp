#pragma once

#include <cstdio>
#include <optional>
#include <string>

#include "faso/engine.hpp"
#include "faso/printer.hpp"

namespace faso {

namespace report_detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

inline std::string grade_fixed(double g, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, g);
    return buf;
}

} // namespace report_detail

// One answer set as a JSON object from literal text to grade.  Grades
// carry nine decimal places; literal keys are in canonical order, so the
// bytes are deterministic.
inline std::string model_to_json(const FuzzyAnswerSet& model) {
    using namespace report_detail;
    std::string out = "{";
    bool first = true;
    for (const auto& [lit, g] : model.literals()) {
        if (!first) out += ',';
        first = false;
        out += '"';
        out += json_escape(literal_to_string(lit));
        out += "\":";
        out += grade_fixed(g, 9);
    }
    out += '}';
    return out;
}

inline std::string report_to_json(const SolveReport& report) {
    using namespace report_detail;
    std::string out = "{\"models\":[";
    for (size_t i = 0; i < report.models.size(); ++i) {
        if (i) out += ',';
        out += "{\"index\":";
        out += std::to_string(report.models[i].index());
        out += ",\"literals\":";
        out += model_to_json(report.models[i]);
        out += '}';
    }
    out += "],\"optimal\":[";
    for (size_t i = 0; i < report.ranking.optimal.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(report.ranking.optimal[i]);
    }
    out += "],\"strategy\":\"";
    out += strategy_text(report.strategy);
    out += "\",\"warnings\":[";
    for (size_t i = 0; i < report.warnings.size(); ++i) {
        if (i) out += ',';
        out += '"';
        out += json_escape(report.warnings[i].message);
        out += '"';
    }
    out += "]}";
    return out;
}

// Text report; grades round to two decimals.
inline std::string report_to_text(const SolveReport& report) {
    using namespace report_detail;
    std::string out;
    out += "models: " + std::to_string(report.models.size()) + "\n";
    for (const auto& model : report.models) {
        out += "  model " + std::to_string(model.index()) + ": {";
        bool first = true;
        for (const auto& [lit, g] : model.literals()) {
            if (!first) out += ", ";
            first = false;
            out += literal_to_string(lit);
            out += ':';
            out += grade_fixed(g, 2);
        }
        out += "}\n";
    }
    out += "strategy: ";
    out += strategy_text(report.strategy);
    out += "\noptimal:";
    for (int idx : report.ranking.optimal) out += " model " + std::to_string(idx);
    out += "\n";
    if (!report.warnings.empty())
        out += "warnings: " + std::to_string(report.warnings.size()) + "\n";
    char timing[64];
    std::snprintf(timing, sizeof(timing), "time: %.3fs\n", report.solve_seconds);
    out += timing;
    return out;
}

// Decoded quantities of the water-allocation encoding: the allocation
// vector, both membership grades, and the total benefits summed from the
// firm literals.
struct WaterReport {
    double x1 = 0, x2 = 0, x3 = 0;
    double objective_grade = 0;
    double constraint_grade = 0;
    std::optional<double> total_benefits;
};

inline std::optional<WaterReport> decode_water_model(const FuzzyAnswerSet& model,
                                                     const Tolerance& tol) {
    WaterReport out;
    const Literal* objective = nullptr;
    for (const auto& [lit, g] : model.literals()) {
        if ((lit.predicate == "obj" || lit.predicate == "objective") && lit.args.size() == 4 &&
            lit.args[0].is_number() && lit.args[1].is_number() && lit.args[2].is_number()) {
            objective = &lit;
            out.objective_grade = g;
        }
    }
    if (!objective) return std::nullopt;
    out.x1 = objective->args[0].number;
    out.x2 = objective->args[1].number;
    out.x3 = objective->args[2].number;

    bool constr_found = false;
    for (const auto& [lit, g] : model.literals()) {
        if (lit.predicate != "constr" || lit.args.size() != 4) continue;
        if (!lit.args[0].is_number()) continue;
        if (tol.eq(lit.args[0].number, out.x1) && tol.eq(lit.args[1].number, out.x2) &&
            tol.eq(lit.args[2].number, out.x3)) {
            out.constraint_grade = g;
            constr_found = true;
        }
    }
    if (!constr_found) return std::nullopt;

    double total = 0;
    int firms = 0;
    for (const auto& [lit, g] : model.literals()) {
        if (lit.args.size() != 2 || !lit.args[0].is_number() || !lit.args[1].is_number())
            continue;
        double x = lit.args[0].number;
        if ((lit.predicate == "firm1" || lit.predicate == "firm_1") && tol.eq(x, out.x1)) {
            total += lit.args[1].number;
            ++firms;
        } else if ((lit.predicate == "firm2" || lit.predicate == "firm_2") && tol.eq(x, out.x2)) {
            total += lit.args[1].number;
            ++firms;
        } else if ((lit.predicate == "firm3" || lit.predicate == "firm_3") && tol.eq(x, out.x3)) {
            total += lit.args[1].number;
            ++firms;
        }
    }
    if (firms == 3) out.total_benefits = total;
    return out;
}

inline std::string water_report_text(const SolveReport& report, const Tolerance& tol) {
    using namespace report_detail;
    std::string out;
    for (int idx : report.ranking.optimal) {
        const FuzzyAnswerSet* model = nullptr;
        for (const auto& m : report.models)
            if (m.index() == idx) model = &m;
        if (!model) continue;
        auto decoded = decode_water_model(*model, tol);
        if (!decoded) {
            out += "water report: model " + std::to_string(idx) +
                   " has no objective/constr literals; skipping\n";
            continue;
        }
        out += "water report (model " + std::to_string(idx) + "):\n";
        out += "  x = (" + number_to_string(decoded->x1) + ", " + number_to_string(decoded->x2) +
               ", " + number_to_string(decoded->x3) + ")\n";
        out += "  objective grade D_g = " + grade_fixed(decoded->objective_grade, 2) + "\n";
        out += "  constraint grade D_c = " + grade_fixed(decoded->constraint_grade, 2) + "\n";
        if (decoded->total_benefits)
            out += "  total benefits T(X) = " + grade_fixed(*decoded->total_benefits, 2) + "\n";
    }
    if (out.empty()) out = "water report: no optimal model to decode\n";
    return out;
}

} // namespace faso
