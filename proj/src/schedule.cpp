#include "feaskit/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace feaskit {

PerturbationSchedule PerturbationSchedule::power_law(double nu, double r) {
    if (!(nu > 0.0)) throw InvalidParams("schedule: nu must be > 0");
    if (!(r > 0.0)) throw InvalidParams("schedule: r must be > 0");
    PerturbationSchedule s;
    s.kind = Kind::PowerLaw;
    s.nu = nu;
    s.r = r;
    return s;
}

double epsilon(const PerturbationSchedule& s, long k) {
    if (k < 0) throw InvalidParams("epsilon: k must be >= 0");
    if (s.kind == PerturbationSchedule::Kind::Zero) return 0.0;
    return s.nu * std::pow(static_cast<double>(k) + 1.0, -s.r);
}

PerturbationSchedule PerturbationSchedule::parse(const std::string& text) {
    if (text == "zero") return zero();
    const std::string prefix = "powerlaw:";
    if (text.rfind(prefix, 0) != 0) {
        throw ParseError("schedule: expected \"zero\" or \"powerlaw:nu=...,r=...\", got \"" + text + "\"");
    }
    double nu = 0.0, r = 0.0;
    bool have_nu = false, have_r = false;
    std::string rest = text.substr(prefix.size());
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string item = rest.substr(pos, comma - pos);
        const size_t eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("schedule: malformed item \"" + item + "\"");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        char* end = nullptr;
        const double num = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0') {
            throw ParseError("schedule: bad number \"" + val + "\" for " + key);
        }
        if (key == "nu") {
            nu = num;
            have_nu = true;
        } else if (key == "r") {
            r = num;
            have_r = true;
        } else {
            throw ParseError("schedule: unknown key \"" + key + "\"");
        }
        pos = comma + 1;
    }
    if (!have_nu || !have_r) throw ParseError("schedule: powerlaw needs both nu and r");
    try {
        return power_law(nu, r);
    } catch (const InvalidParams& e) {
        throw ParseError(std::string("schedule: ") + e.what());
    }
}

std::string PerturbationSchedule::to_string() const {
    if (kind == Kind::Zero) return "zero";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "powerlaw:nu=%g,r=%g", nu, r);
    return buf;
}

}  // namespace feaskit
