#include "voltspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace voltspec {

KernelConfig parse_kernel_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed kernel JSON: ") + e.what());
    }

    try {
        const std::string type = doc.at("type").get<std::string>();
        if (type == "finite") {
            std::vector<std::pair<double, double>> terms;
            for (const auto& entry : doc.at("terms")) {
                if (!entry.is_array() || entry.size() != 2)
                    throw ValidationError("each term must be a [c, gamma] pair");
                terms.emplace_back(entry[0].get<double>(), entry[1].get<double>());
            }
            return {make_exponential(std::move(terms)), std::nullopt};
        }
        if (type == "power_law") {
            PowerLawFamily family;
            family.amp = doc.at("A").get<double>();
            family.scale = doc.at("B").get<double>();
            family.alpha = doc.at("alpha").get<double>();
            family.beta = doc.at("beta").get<double>();
            family.truncation = doc.at("N").get<int>();
            return {from_power_law(family), family};
        }
        throw ValidationError("kernel type must be \"finite\" or \"power_law\"");
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad kernel config: ") + e.what());
    }
}

KernelConfig load_kernel(const std::string& path_or_inline) {
    if (!path_or_inline.empty() && path_or_inline.front() == '{')
        return parse_kernel_json(path_or_inline);
    std::ifstream in(path_or_inline);
    if (!in) throw ValidationError("cannot open kernel file: " + path_or_inline);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kernel_json(buf.str());
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace voltspec
