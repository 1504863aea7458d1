#include "digitdim/serialization.hpp"

#include "digitdim/errors.hpp"

#ifndef DIGITDIM_VERSION
#define DIGITDIM_VERSION "0.0.0"
#endif

namespace digitdim {

std::string tool_version()
{
    return std::string("digitdim ") + DIGITDIM_VERSION;
}

Json to_json(const Enclosure& x)
{
    return Json::array({x.lower_decimal(), x.upper_decimal()});
}

Enclosure enclosure_from_json(const Json& j, Precision prec)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw ParameterError("enclosure must be a [lo, hi] pair of decimal strings");
    return Enclosure::from_decimal(j[0].get<std::string>(), j[1].get<std::string>(), prec);
}

Json to_json(const Certificate& cert)
{
    Json j;
    j["system"] = cert.system;
    j["direction"] = to_string(cert.direction);
    j["L"] = cert.level;
    j["delta"] = to_string(cert.delta);
    j["tau"] = to_string(cert.tau);
    j["grid_count"] = cert.grid_count;
    j["grid_max"] = to_json(cert.grid_max);
    j["grid_min"] = to_json(cert.grid_min);
    j["lipschitz"] = to_json(cert.lipschitz);
    j["slack"] = to_json(cert.slack);
    j["threshold"] = to_json(cert.threshold);
    j["verdict"] = to_string(cert.verdict);
    j["precision_bits"] = cert.precision.bits;
    j["tool_version"] = tool_version();
    return j;
}

Certificate certificate_from_json(const Json& j)
{
    try {
        Certificate c;
        c.precision = Precision{j.at("precision_bits").get<long>()};
        if (c.precision.bits < 2)
            throw ParameterError("precision_bits must be >= 2");
        c.system = parse_system(j.at("system").get<std::string>()).describe();
        c.direction = parse_direction(j.at("direction").get<std::string>());
        c.level = j.at("L").get<int>();
        c.delta = parse_rational(j.at("delta").get<std::string>());
        c.tau = parse_rational(j.at("tau").get<std::string>());
        c.grid_count = j.at("grid_count").get<std::int64_t>();
        c.grid_max = enclosure_from_json(j.at("grid_max"), c.precision);
        c.grid_min = enclosure_from_json(j.at("grid_min"), c.precision);
        c.lipschitz = enclosure_from_json(j.at("lipschitz"), c.precision);
        c.slack = enclosure_from_json(j.at("slack"), c.precision);
        c.threshold = enclosure_from_json(j.at("threshold"), c.precision);
        c.verdict = parse_verdict(j.at("verdict").get<std::string>());
        if (rederive_verdict(c) != c.verdict)
            throw ParameterError("stored verdict " + to_string(c.verdict) + " does not follow from the enclosures");
        return c;
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("malformed certificate: ") + e.what());
    }
}

Json to_json(const BoundBracket& b)
{
    Json j;
    j["L"] = b.level;
    j["delta"] = to_string(b.delta);
    j["lower"] = b.lower ? to_json(*b.lower) : Json(nullptr);
    j["upper"] = b.upper ? to_json(*b.upper) : Json(nullptr);
    return j;
}

Json to_json(const RefineResult& r)
{
    Json j;
    j["status"] = to_string(r.status);
    j["bracket"] = to_json(r.bracket);
    j["grid_points"] = r.grid_points;
    Json history = Json::array();
    for (const auto& b : r.history)
        history.push_back(to_json(b));
    j["history"] = std::move(history);
    j["tool_version"] = tool_version();
    return j;
}

Json to_json(const AnalyticBound& b)
{
    Json j;
    j["kind"] = to_string(b.kind);
    j["b"] = b.base;
    j["l"] = b.length;
    if (b.ap) {
        j["a"] = b.ap->offset;
        j["d"] = b.ap->step;
    }
    j["value"] = to_json(b.value);
    if (b.dimension)
        j["dimension"] = to_json(*b.dimension);
    if (b.kind != AnalyticKind::expsum)
        j["above_half"] = compare_threshold(b.value, Rational(1, 2)) == Comparison::above;
    j["warnings"] = b.warnings;
    j["tool_version"] = tool_version();
    return j;
}

Json to_json(const SmallestBase& s, const Rational& threshold, BaseCriterion kind)
{
    Json j;
    j["criterion"] = to_string(kind);
    j["threshold"] = to_string(threshold);
    j["b"] = s.base;
    j["value"] = to_json(s.value);
    j["previous_value"] = s.previous ? to_json(*s.previous) : Json(nullptr);
    j["precision_bits"] = s.precision.bits;
    j["tool_version"] = tool_version();
    return j;
}

Json to_json(const ExponentReport& r)
{
    Json j;
    j["system"] = r.system;
    j["v_source"] = r.v_source;
    j["kappa"] = to_json(r.kappa);
    j["v"] = to_json(r.v);
    j["E"] = to_json(r.counting_exponent);
    j["rho_counting"] = to_json(r.rho_counting);
    j["alpha_star"] = to_json(r.alpha_star);
    j["rho_intrinsic"] = to_json(r.rho_intrinsic);
    j["bd_product"] = to_json(r.bd_product);
    j["bd_holds"] = to_string(r.bd_holds);
    j["tool_version"] = tool_version();
    return j;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

} // namespace digitdim
