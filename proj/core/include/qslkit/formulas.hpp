#pragma once

#include <string_view>
#include <vector>

namespace qslkit {

struct FormulaEntry {
    std::string_view topic;
    std::string_view expression;
    std::string_view operation;  // library entry point that evaluates it
};

/// Index of the closed forms and bounds the library implements.
const std::vector<FormulaEntry>& formula_index();

}  // namespace qslkit
