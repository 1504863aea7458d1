#ifndef DIGITDIM_SERIALIZATION_HPP
#define DIGITDIM_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "digitdim/analytic.hpp"
#include "digitdim/certify.hpp"
#include "digitdim/consequences.hpp"

namespace digitdim {

/// Key order is insertion order, so documents serialize deterministically.
using Json = nlohmann::ordered_json;

std::string tool_version();

/// [lo, hi] as decimal strings, lo rounded down and hi rounded up.
Json to_json(const Enclosure& x);
/// Parses [lo, hi] rounding lo down and hi up, so the result contains the
/// printed interval.
Enclosure enclosure_from_json(const Json& j, Precision prec);

/// Keys: system, direction, L, delta, tau, grid_count, grid_max, grid_min,
/// lipschitz, slack, threshold, verdict, precision_bits, tool_version.
/// Wall time is not part of the document, so equal runs serialize equally.
Json to_json(const Certificate& cert);
/// Throws ParameterError on a malformed document or when the stored verdict
/// does not follow from the stored enclosures.
Certificate certificate_from_json(const Json& j);

Json to_json(const BoundBracket& b);
Json to_json(const RefineResult& r);
Json to_json(const AnalyticBound& b);
Json to_json(const SmallestBase& s, const Rational& threshold, BaseCriterion kind);
Json to_json(const ExponentReport& r);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

} // namespace digitdim

#endif
