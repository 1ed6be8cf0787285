#pragma once

#include <string_view>

namespace pmono {

enum class CaseId { SL2R, GL2R, PGL2R };

inline constexpr CaseId kAllCases[] = {CaseId::SL2R, CaseId::GL2R, CaseId::PGL2R};

std::string_view to_string(CaseId c);
// Accepts "sl2r", "SL2R", etc. Throws UsageError otherwise.
CaseId case_from_string(std::string_view name);

}  // namespace pmono
