#include "pmono/case_id.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "pmono/errors.hpp"

namespace pmono {

std::string_view to_string(CaseId c) {
    switch (c) {
        case CaseId::SL2R: return "SL2R";
        case CaseId::GL2R: return "GL2R";
        case CaseId::PGL2R: return "PGL2R";
    }
    return "?";
}

CaseId case_from_string(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    for (CaseId c : kAllCases)
        if (to_string(c) == upper) return c;
    throw UsageError("unknown case '" + std::string(name) + "' (expected sl2r, gl2r or pgl2r)");
}

}  // namespace pmono
