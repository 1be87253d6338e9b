#ifndef VVMF_CLI_HPP
#define VVMF_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <vvmf/denom_analysis.hpp>
#include <vvmf/hypergeom.hpp>
#include <vvmf/json_io.hpp>

namespace vvmf::cli
{

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1, ///< a verification ran and reported a failure
    kUsage = 2,       ///< bad command line, unreadable file or malformed JSON
    kInvalid = 3,     ///< input parsed but violates a defining relation
    kPipeline = 4,    ///< the two independent computations disagree
};

struct RunConfig {
    InstanceParams instance;
    std::size_t kmax = 40;
    Method method = Method::Both;
    std::uint64_t factor_bound = kDefaultFactorBound;
    std::string output;       ///< empty: stdout
    std::string format = "json";
};

/// Throws nlohmann::json::parse_error for malformed text, ConfigError or
/// ValidationError for unusable content.
RunConfig parse_config(const std::string &text);

/// Built-in instances: "m2" (r = sqrt 2) and "m5" (r = sqrt 5), both k0 = 0, l = (0, 1/2).
InstanceParams seed_instance(const std::string &name);

/// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace vvmf::cli

#endif
