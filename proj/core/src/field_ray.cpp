#include "dimerchain/field_ray.hpp"

namespace dimerchain {

FieldRay FieldRay::parse(const std::string& text) {
    if (text == "uniform") return uniform();
    if (text.rfind("ratio:", 0) == 0) return ratio(std::stod(text.substr(6)));
    if (text.rfind("fixed-even:", 0) == 0) return fixed_even(std::stod(text.substr(11)));
    throw std::invalid_argument("unknown field ray '" + text +
                                "' (expected uniform | ratio:<eta> | fixed-even:<b>)");
}

std::string FieldRay::describe() const {
    switch (kind_) {
        case Kind::uniform: return "uniform";
        case Kind::ratio: return "ratio:" + std::to_string(param_);
        case Kind::fixed_even: return "fixed-even:" + std::to_string(param_);
    }
    return "?";
}

} // namespace dimerchain
