#pragma once

#include <string>
#include <vector>

namespace faso {

struct SourceSpan {
    std::string file;
    int line = 1;   // 1-based
    int column = 1; // 1-based
    int length = 0; // characters
};

enum class Severity { Error, Warning };

// Errors prevent downstream phases; warnings do not.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
};

inline Diagnostic make_error(std::string message, SourceSpan span = {}) {
    return Diagnostic{Severity::Error, std::move(message), std::move(span)};
}

inline Diagnostic make_warning(std::string message, SourceSpan span = {}) {
    return Diagnostic{Severity::Warning, std::move(message), std::move(span)};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

inline std::string format_diagnostic(const Diagnostic& d) {
    std::string out;
    if (!d.span.file.empty()) {
        out += d.span.file;
        out += ':';
        out += std::to_string(d.span.line);
        out += ':';
        out += std::to_string(d.span.column);
        out += ": ";
    }
    out += d.severity == Severity::Error ? "error: " : "warning: ";
    out += d.message;
    return out;
}

} // namespace faso
