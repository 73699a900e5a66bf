#include "dimerchain/spec_io.hpp"

#include <fstream>

namespace dimerchain {

using nlohmann::json;

namespace {

AxisTriple triple_from_json(const json& j) {
    AxisTriple v;
    v.x = j.value("x", 0.0);
    v.y = j.value("y", 0.0);
    v.z = j.value("z", 0.0);
    return v;
}

json triple_to_json(const AxisTriple& v) {
    return json{{"x", v.x}, {"y", v.y}, {"z", v.z}};
}

} // namespace

ChainSpec spec_from_json(const json& j) {
    int n = j.at("n").get<int>();
    double s_o = 0.5, s_e = 0.5;
    if (j.contains("spins")) {
        s_o = j["spins"].value("odd", 0.5);
        s_e = j["spins"].value("even", 0.5);
    }
    AxisTriple vo, ve;
    if (j.contains("couplings")) {
        if (j["couplings"].contains("odd")) vo = triple_from_json(j["couplings"]["odd"]);
        if (j["couplings"].contains("even")) ve = triple_from_json(j["couplings"]["even"]);
    }
    FieldProfile field = FieldProfile::uniform(0.0);
    if (j.contains("field")) {
        const json& f = j["field"];
        std::string kind = f.value("kind", "uniform");
        auto vals = f.value("values", std::vector<double>{0.0});
        if (kind == "uniform") {
            field = FieldProfile::uniform(vals.at(0));
        } else if (kind == "alternating") {
            field = FieldProfile::alternating(vals.at(0), vals.at(1));
        } else if (kind == "per-site") {
            field = FieldProfile::per_site(vals);
        } else {
            throw std::invalid_argument("unknown field kind '" + kind + "'");
        }
    }
    Boundary boundary = Boundary::cyclic;
    if (j.value("boundary", "cyclic") == std::string("open")) boundary = Boundary::open;

    return build_dimer_chain(n, s_o, s_e, vo, ve, field, boundary);
}

json spec_to_json(const ChainSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["spins"] = {{"odd", spec.spin_odd}, {"even", spec.spin_even}};
    json couplings;
    AxisTriple vo = spec.couplings.at(Sublattice::odd, 1);
    AxisTriple ve = spec.couplings.at(Sublattice::even, 1);
    couplings["odd"] = triple_to_json(vo);
    if (!ve.is_zero()) couplings["even"] = triple_to_json(ve);
    j["couplings"] = couplings;

    json field;
    switch (spec.field.kind()) {
        case FieldProfile::Kind::uniform:
            field = {{"kind", "uniform"}, {"values", spec.field.values()}};
            break;
        case FieldProfile::Kind::alternating:
            field = {{"kind", "alternating"}, {"values", spec.field.values()}};
            break;
        case FieldProfile::Kind::per_site:
            field = {{"kind", "per-site"}, {"values", spec.field.values()}};
            break;
    }
    j["field"] = field;
    j["boundary"] = (spec.boundary == Boundary::cyclic) ? "cyclic" : "open";
    return j;
}

ChainSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file '" + path + "'");
    json j;
    in >> j;
    return spec_from_json(j);
}

void save_spec(const ChainSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write spec file '" + path + "'");
    out << spec_to_json(spec).dump(2) << "\n";
}

json factorized_to_json(const FactorizedState& fs) {
    json j;
    j["angles"] = fs.angles;
    json field;
    switch (fs.fields.kind()) {
        case FieldProfile::Kind::uniform:
            field = {{"kind", "uniform"}, {"values", fs.fields.values()}};
            break;
        case FieldProfile::Kind::alternating:
            field = {{"kind", "alternating"}, {"values", fs.fields.values()}};
            break;
        case FieldProfile::Kind::per_site:
            field = {{"kind", "per-site"}, {"values", fs.fields.values()}};
            break;
    }
    j["fields"] = field;
    j["energy"] = fs.energy;
    j["overlap"] = fs.overlap;
    j["chi"] = fs.chi;
    j["sign_pattern"] = fs.sign_pattern;
    j["rotated"] = fs.rotated;
    j["xx_case"] = fs.xx_case;
    return j;
}

} // namespace dimerchain
