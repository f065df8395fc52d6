#pragma once

#include "faso/aggregates.hpp"
#include "faso/ast.hpp"
#include "faso/diagnostics.hpp"
#include "faso/engine.hpp"
#include "faso/generator.hpp"
#include "faso/grade.hpp"
#include "faso/grounder.hpp"
#include "faso/interpretation.hpp"
#include "faso/parser.hpp"
#include "faso/preference.hpp"
#include "faso/printer.hpp"
#include "faso/report.hpp"
#include "faso/term.hpp"
#include "faso/validate.hpp"
