#include "spec.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "bubblekit/errors.hpp"

namespace bubblekit::cli {

namespace {

class Reader {
public:
    explicit Reader(std::string file) : file_(std::move(file)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw SpecError(file_, pointer, message);
    }

    const Json& field(const Json& object, const std::string& pointer, const char* key) const {
        if (!object.is_object()) fail(pointer, "expected an object");
        if (!object.contains(key)) fail(pointer + "/" + key, "missing required field");
        return object.at(key);
    }

    std::string string(const Json& value, const std::string& pointer) const {
        if (!value.is_string()) fail(pointer, "expected a string");
        return value.get<std::string>();
    }

    const Json& array(const Json& value, const std::string& pointer) const {
        if (!value.is_array()) fail(pointer, "expected an array");
        return value;
    }

    double number(const Json& value, const std::string& pointer) const {
        if (!value.is_number()) fail(pointer, "expected a number");
        return value.get<double>();
    }

    Rat rat(const Json& value, const std::string& pointer) const {
        if (value.is_number_integer()) return Rat(value.get<long>());
        if (!value.is_string()) fail(pointer, "expected a rational such as \"9/10\"");
        try {
            return Rat::parse(value.get<std::string>());
        } catch (const Error& e) {
            fail(pointer, e.what());
        }
    }

    Germ germ(const Json& value, const std::string& pointer) const {
        const std::string text = string(value, pointer);
        try {
            return Germ::parse(text);
        } catch (const Error& e) {
            fail(pointer, e.what());
        }
    }

    std::vector<std::string> names(const Json& value, const std::string& pointer) const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        array(value, pointer);
        for (std::size_t k = 0; k < value.size(); ++k) {
            const std::string p = pointer + "/" + std::to_string(k);
            out.push_back(string(value[k], p));
            if (!seen.insert(out.back()).second) fail(p, "duplicate name \"" + out.back() + "\"");
        }
        return out;
    }

private:
    std::string file_;
};

Kind parse_kind(const Reader& r, const std::string& text) {
    if (text == "plane") return Kind::Plane;
    if (text == "sphere") return Kind::Sphere;
    if (text == "ghmonopole") return Kind::GhMonopole;
    if (text == "polyfamily") return Kind::PolyFamily;
    if (text == "curve") return Kind::Curve;
    r.fail("/kind", "unknown kind \"" + text + "\" (plane, sphere, ghmonopole, polyfamily, curve)");
}

// [{"name": ..., "germ": ..., "angle": ...}]; angle only when `angles` is set.
void read_points(const Reader& r, const Json& list, const std::string& pointer, Spec& spec, std::vector<Germ>& germs,
                 std::vector<Rat>* angles) {
    r.array(list, pointer);
    std::set<std::string> seen;
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string p = pointer + "/" + std::to_string(k);
        const std::string name = list[k].is_object() && list[k].contains("name")
                                     ? r.string(list[k]["name"], p + "/name")
                                     : "p" + std::to_string(k + 1);
        if (!seen.insert(name).second) r.fail(p + "/name", "duplicate name \"" + name + "\"");
        spec.names.push_back(name);
        germs.push_back(r.germ(r.field(list[k], p, "germ"), p + "/germ"));
        if (angles) angles->push_back(r.rat(r.field(list[k], p, "angle"), p + "/angle"));
    }
}

std::size_t index_of(const Reader& r, const std::vector<std::string>& names, const Json& value,
                     const std::string& pointer) {
    const std::string name = r.string(value, pointer);
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) r.fail(pointer, "unknown point \"" + name + "\"");
    return static_cast<std::size_t>(it - names.begin());
}

void read_sections(const Reader& r, const Json& root, Spec& spec) {
    if (!root.contains("sections")) return;
    const Json& sections = root["sections"];
    if (!sections.is_object()) r.fail("/sections", "expected an object of named germs");
    for (const auto& [name, value] : sections.items())
        spec.sections.emplace_back(name, r.germ(value, "/sections/" + name));
}

void read_verify(const Reader& r, const Json& root, Spec& spec) {
    VerifySettings& v = spec.verify;
    for (int k = 4; k <= 12; ++k) v.t_samples.push_back(std::ldexp(1.0, -k));
    v.t = 1.0 / 16;
    if (!root.contains("verify")) return;
    const Json& verify = root["verify"];
    if (!verify.is_object()) r.fail("/verify", "expected an object");
    if (verify.contains("t_samples")) {
        const Json& samples = r.array(verify["t_samples"], "/verify/t_samples");
        v.t_samples.clear();
        for (std::size_t k = 0; k < samples.size(); ++k)
            v.t_samples.push_back(r.number(samples[k], "/verify/t_samples/" + std::to_string(k)));
        if (v.t_samples.size() < 4) r.fail("/verify/t_samples", "at least four samples are needed");
    }
    if (verify.contains("t")) v.t = r.number(verify["t"], "/verify/t");
    if (verify.contains("rel_tol")) v.quadrature.rel_tol = r.number(verify["rel_tol"], "/verify/rel_tol");
    if (verify.contains("max_depth"))
        v.quadrature.max_depth = static_cast<unsigned>(r.number(verify["max_depth"], "/verify/max_depth"));
    try {
        v.quadrature.validate();
    } catch (const Error& e) {
        r.fail("/verify", e.what());
    }
    if (verify.contains("pairs")) {
        const Json& pairs = r.array(verify["pairs"], "/verify/pairs");
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const std::string p = "/verify/pairs/" + std::to_string(k);
            if (!pairs[k].is_array() || pairs[k].size() != 2) r.fail(p, "expected a pair of point names");
            v.pairs.emplace_back(index_of(r, spec.names, pairs[k][0], p + "/0"),
                                 index_of(r, spec.names, pairs[k][1], p + "/1"));
        }
    }
}

}  // namespace

const char* kind_name(Kind kind) {
    switch (kind) {
        case Kind::Plane: return "plane";
        case Kind::Sphere: return "sphere";
        case Kind::GhMonopole: return "ghmonopole";
        case Kind::PolyFamily: return "polyfamily";
        case Kind::Curve: return "curve";
    }
    return "?";
}

const Germ& Spec::section(const std::string& name) const {
    for (const auto& [n, g] : sections)
        if (n == name) return g;
    throw SpecError(file, "/sections/" + name, "no such section");
}

std::string Spec::section_pointer(const std::string& name) const { return "/sections/" + name; }

WeightVector Spec::weights(const std::string& text) const {
    const std::vector<std::string>& order = weight_order.empty() ? variables : weight_order;
    std::vector<Rat> given(order.size());
    std::vector<bool> set(order.size(), false);
    std::size_t position = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        std::string item = text.substr(start, comma - start);
        std::size_t slot = position++;
        if (const auto eq = item.find('='); eq != std::string::npos) {
            const std::string name = item.substr(0, eq);
            const auto it = std::find(order.begin(), order.end(), name);
            if (it == order.end()) throw InvalidArgument("--weights: unknown variable \"" + name + "\"");
            slot = static_cast<std::size_t>(it - order.begin());
            item = item.substr(eq + 1);
        }
        if (slot >= order.size())
            throw InvalidArgument("--weights: expected " + std::to_string(order.size()) + " weights");
        given[slot] = Rat::parse(item);
        set[slot] = true;
        start = comma + 1;
    }
    if (std::find(set.begin(), set.end(), false) != set.end())
        throw InvalidArgument("--weights: expected " + std::to_string(order.size()) + " weights");
    std::vector<Rat> out;
    for (const std::string& v : variables)
        out.push_back(given[static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin())]);
    return WeightVector(std::move(out));
}

std::string Spec::render_weights(const WeightVector& w) const {
    const std::vector<std::string>& order = weight_order.empty() ? variables : weight_order;
    std::string out;
    for (const std::string& name : order) {
        const auto k = static_cast<std::size_t>(std::find(variables.begin(), variables.end(), name) - variables.begin());
        out += (out.empty() ? "" : ", ") + name + "=" + w[k].to_string();
    }
    return out;
}

Spec load_spec(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw SpecError(file, "", "cannot open file");
    Json root;
    try {
        root = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SpecError(file, "", std::string("invalid JSON: ") + e.what());
    }
    const Reader r(file);
    Spec spec;
    spec.file = file;
    spec.kind = parse_kind(r, r.string(r.field(root, "", "kind"), "/kind"));

    switch (spec.kind) {
        case Kind::Plane:
        case Kind::Sphere: {
            std::vector<Rat> angles;
            read_points(r, r.field(root, "", "points"), "/points", spec, spec.family.points, &angles);
            try {
                spec.family.angles = AngleVector(std::move(angles));
            } catch (const Error& e) {
                r.fail("/points", e.what());
            }
            spec.family.ambient = spec.kind == Kind::Plane ? Ambient::Plane : Ambient::Sphere;
            try {
                spec.family.validate();
            } catch (const Error& e) {
                r.fail("/points", e.what());
            }
            read_sections(r, root, spec);
            read_verify(r, root, spec);
            break;
        }
        case Kind::GhMonopole:
            read_points(r, r.field(root, "", "paths"), "/paths", spec, spec.paths, nullptr);
            read_sections(r, root, spec);
            read_verify(r, root, spec);
            break;
        case Kind::PolyFamily: {
            spec.variables = r.names(r.field(root, "", "variables"), "/variables");
            if (root.contains("weight_order")) {
                spec.weight_order = r.names(root["weight_order"], "/weight_order");
                auto a = spec.weight_order;
                auto b = spec.variables;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (a != b) r.fail("/weight_order", "must list the same names as /variables");
            }
            const std::string text = r.string(r.field(root, "", "equation"), "/equation");
            try {
                spec.polynomial = PolyFamily::parse(text, spec.variables);
            } catch (const Error& e) {
                r.fail("/equation", e.what());
            }
            if (root.contains("schedule")) {
                const Json& schedule = r.array(root["schedule"], "/schedule");
                for (std::size_t k = 0; k < schedule.size(); ++k) {
                    const std::string p = "/schedule/" + std::to_string(k);
                    spec.schedule.push_back(r.string(schedule[k], p));
                    try {
                        spec.weights(spec.schedule.back());
                    } catch (const Error& e) {
                        r.fail(p, e.what());
                    }
                }
            }
            break;
        }
        case Kind::Curve: {
            std::vector<Component> components;
            const Json& list = r.array(r.field(root, "", "components"), "/components");
            for (std::size_t k = 0; k < list.size(); ++k) {
                const std::string p = "/components/" + std::to_string(k);
                Component c{static_cast<std::size_t>(r.number(r.field(list[k], p, "id"), p + "/id")), {}};
                const Json& marks = r.array(r.field(list[k], p, "marks"), p + "/marks");
                for (std::size_t m = 0; m < marks.size(); ++m)
                    c.marks.push_back(static_cast<std::size_t>(r.number(marks[m], p + "/marks/" + std::to_string(m))));
                components.push_back(std::move(c));
            }
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            const Json& elist = r.array(r.field(root, "", "edges"), "/edges");
            for (std::size_t k = 0; k < elist.size(); ++k) {
                const std::string p = "/edges/" + std::to_string(k);
                if (!elist[k].is_array() || elist[k].size() != 2) r.fail(p, "expected [a, b]");
                edges.emplace_back(static_cast<std::size_t>(r.number(elist[k][0], p + "/0")),
                                   static_cast<std::size_t>(r.number(elist[k][1], p + "/1")));
            }
            try {
                spec.curve = NodalCurve(std::move(components), std::move(edges));
            } catch (const Error& e) {
                r.fail("/components", e.what());
            }
            std::vector<Rat> angles;
            const Json& alist = r.array(r.field(root, "", "angles"), "/angles");
            for (std::size_t k = 0; k < alist.size(); ++k) angles.push_back(r.rat(alist[k], "/angles/" + std::to_string(k)));
            if (angles.size() != spec.curve.marked_count())
                r.fail("/angles", "expected " + std::to_string(spec.curve.marked_count()) + " angles");
            try {
                spec.angles = AngleVector(std::move(angles));
            } catch (const Error& e) {
                r.fail("/angles", e.what());
            }
            break;
        }
    }
    return spec;
}

}  // namespace bubblekit::cli
