#ifndef VVMF_CHECK_HPP
#define VVMF_CHECK_HPP

#include <string>

namespace vvmf
{

// One named verification outcome inside a report.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

} // namespace vvmf

#endif
