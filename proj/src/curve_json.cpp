#include "epicusp/curve_json.hpp"

#include <stdexcept>
#include <vector>

namespace epicusp {

nlohmann::json curve_to_json(const CurveSpec& spec) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : spec.terms()) {
        terms.push_back({{"freq", term.frequency}, {"w_re", term.weight.real()}, {"w_im", term.weight.imag()}});
    }
    return {{"terms", std::move(terms)}};
}

CurveSpec curve_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("terms") || !doc.at("terms").is_array()) {
        throw std::invalid_argument("curve JSON must be an object with a \"terms\" array");
    }
    std::vector<ExponentialTerm> terms;
    for (const auto& item : doc.at("terms")) {
        if (!item.is_object() || !item.contains("freq") || !item.at("freq").is_number_integer()) {
            throw std::invalid_argument("curve term needs an integer \"freq\"");
        }
        ExponentialTerm term;
        term.frequency = item.at("freq").get<int>();
        const double re = item.value("w_re", 0.0);
        const double im = item.value("w_im", 0.0);
        term.weight = Complex{re, im};
        terms.push_back(term);
    }
    return CurveSpec(std::move(terms));
}

CurveSpec parse_curve_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("curve JSON: ") + e.what());
    }
    return curve_from_json(doc);
}

}  // namespace epicusp
