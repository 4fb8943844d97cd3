#include <kklab/report.hpp>

namespace kklab {

std::string root_token(const Root & value)
{
    if (value.index == 1 || value.is_zero())
        return to_string(value.radicand);
    Rational base = 1 / value.radicand;
    base.canonicalize();
    return "root:" + to_string(base) + ":" + std::to_string(value.index);
}

nlohmann::json enclosure_json(const Root & value, int digits)
{
    Enclosure e = enclose(value, digits);
    return {e.lower_string(), e.upper_string()};
}

nlohmann::json root_json(const Root & value, int digits)
{
    return {{"radicand", to_string(value.radicand)},
            {"index", std::to_string(value.index)},
            {"token", root_token(value)},
            {"enclosure", enclosure_json(value, digits)}};
}

} // namespace kklab
