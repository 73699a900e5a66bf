#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dimerchain {

/// One-parameter family of (b^o, b^e) field pairs swept by the harness.
///   uniform:      b^o = b^e = t
///   ratio eta:    b^o = t, b^e = t / eta      (fixed eta = b^o/b^e)
///   fixed even:   b^o = t, b^e held constant
class FieldRay {
public:
    enum class Kind { uniform, ratio, fixed_even };

    static FieldRay uniform() { return FieldRay(Kind::uniform, 0.0); }
    static FieldRay ratio(double eta) {
        if (eta == 0.0) throw std::invalid_argument("field ratio eta must be nonzero");
        return FieldRay(Kind::ratio, eta);
    }
    static FieldRay fixed_even(double b_even) { return FieldRay(Kind::fixed_even, b_even); }

    /// Parse "uniform", "ratio:<eta>" or "fixed-even:<b>".
    static FieldRay parse(const std::string& text);

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }

    std::pair<double, double> fields(double t) const {
        switch (kind_) {
            case Kind::uniform: return {t, t};
            case Kind::ratio: return {t, t / param_};
            case Kind::fixed_even: return {t, param_};
        }
        return {t, t};
    }

    std::string describe() const;

private:
    FieldRay(Kind k, double p) : kind_(k), param_(p) {}
    Kind kind_;
    double param_;
};

} // namespace dimerchain
