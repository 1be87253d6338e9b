#ifndef VVMF_JSON_IO_HPP
#define VVMF_JSON_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <vvmf/denom_analysis.hpp>
#include <vvmf/exact_arith.hpp>
#include <vvmf/hypergeom.hpp>
#include <vvmf/mlde_params.hpp>
#include <vvmf/qseries.hpp>

namespace vvmf
{

using Json = nlohmann::ordered_json;

/// Structurally valid JSON that does not describe a usable input.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Rationals travel as "p/q" strings, integers as decimal strings.
Json to_json(const BigRat &q);
Json to_json(const BigInt &z);
Json to_json(const QuadNum &z); // {"rat", "surd", "M"}
Json to_json(const std::vector<QuadNum> &v);
Json to_json(const std::vector<BigInt> &v);
Json to_json(const RatSeries &s);    // {"lead", "coeffs"}
Json to_json(const OffsetSeries &s); // {"base", "coeffs"}
Json to_json(const MonomialMap &m);  // [{"G": a, "E4": b, "coeff": ...}]
Json to_json(const InstanceParams &p);
Json to_json(const CheckResult &c);

BigRat rat_from_json(const Json &j);
QuadNum quad_from_json(const Json &j);
OffsetSeries offset_series_from_json(const Json &j);
MonomialMap monomial_map_from_json(const Json &j);

/// Exponent form {"k0", "l1", "l2", "r": {"rat", "surd", "M", "conjugate_pair"}}
/// or coefficient form {"k0", "a", "b", "c", "M"}; throws ConfigError or ValidationError.
InstanceParams instance_from_json(const Json &j);

Json to_json(const MinimalForm &mf, const DerivComponents &dc, const std::vector<CheckResult> &residual);
Json to_json(const DenomReport &r);
Json to_json(const GeneralReport &r);
Json to_json(const ProbeVerdict &v);

} // namespace vvmf

#endif
