#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "bubblekit/errors.hpp"
#include "spec.hpp"

using namespace bubblekit;
using namespace bubblekit::cli;

namespace {

enum class Format { Json, Dot, Csv };

struct Options {
    std::string file;
    std::string format;
    std::string output;
    std::string name;
    std::string weights;
    std::string c;
    bool automatic = false;
    bool cascade = false;
    std::string check;
};

/// A library error raised while processing the field at `pointer`.
struct Located : std::runtime_error {
    Located(std::string where, const Error& e)
        : std::runtime_error(e.what()), pointer(std::move(where)),
          numeric(dynamic_cast<const NumericError*>(&e) != nullptr) {}
    std::string pointer;
    bool numeric;
};

/// Bad command-line usage; not tied to a field of the spec.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& text, Format fallback) {
    if (text.empty()) return fallback;
    if (text == "json") return Format::Json;
    if (text == "dot") return Format::Dot;
    if (text == "csv") return Format::Csv;
    throw UsageError("--format must be json, dot or csv");
}

void require_kind(const Spec& spec, std::initializer_list<Kind> kinds, const char* command) {
    for (Kind k : kinds)
        if (spec.kind == k) return;
    throw SpecError(spec.file, "/kind",
                    std::string("command '") + command + "' does not accept kind \"" + kind_name(spec.kind) + "\"");
}

void unsupported(const Spec& spec, Format format, const char* command) {
    (void)spec;
    static const char* names[] = {"json", "dot", "csv"};
    throw UsageError(std::string("--format ") + names[static_cast<int>(format)] + " is not available for '" +
                          command + "'");
}

Json members_json(const std::vector<std::size_t>& members, const std::vector<std::string>& names) {
    Json out = Json::array();
    for (std::size_t m : members) out.push_back(names.empty() ? Json(m) : Json(names.at(m)));
    return out;
}

Json tree_json(const VanishingTree& tree, const std::vector<std::string>& names) {
    Json nodes = Json::array();
    for (NodeId id = 0; id < tree.size(); ++id) {
        const TreeNode& n = tree.node(id);
        Json node;
        node["id"] = id;
        node["members"] = members_json(n.members, names);
        node["split_order"] = n.split_order ? Json(*n.split_order) : Json(nullptr);
        node["children"] = n.children;
        nodes.push_back(std::move(node));
    }
    return nodes;
}

Json bubble_json(const BubbleModel& b, const std::vector<std::string>& names) {
    Json points = Json::array();
    for (const ConePoint& p : b.cone_points)
        points.push_back(Json{{"position", p.position.to_string()},
                              {"angle", p.angle.to_string()},
                              {"members", members_json(p.members, names)}});
    return Json{{"cone_points", points},
                {"gamma_infinity", b.gamma_infinity.to_string()},
                {"basepoint", b.basepoint.to_string()}};
}

const std::vector<Germ>& germs_of(const Spec& spec) {
    return spec.kind == Kind::GhMonopole ? spec.paths : spec.family.points;
}

void emit_tree(const Spec& spec, Format format, std::ostream& out) {
    require_kind(spec, {Kind::Plane, Kind::Sphere, Kind::GhMonopole}, "tree");
    const VanishingTree tree = build_tree(germs_of(spec));
    if (format == Format::Dot) {
        out << tree.to_dot(spec.names);
        return;
    }
    if (format != Format::Json) unsupported(spec, format, "tree");
    out << Json{{"kind", kind_name(spec.kind)}, {"nodes", tree_json(tree, spec.names)}}.dump(2) << '\n';
}

void emit_bubbles(const Spec& spec, Format format, std::ostream& out) {
    require_kind(spec, {Kind::Plane, Kind::Sphere}, "bubbles");
    if (format != Format::Json) unsupported(spec, format, "bubbles");
    const BubbleTreeReport report = bubble_tree(spec.family);
    Json limit = Json::array();
    for (const LimitPoint& p : report.limit)
        limit.push_back(Json{{"position", p.position.to_string()},
                             {"gamma", p.gamma.to_string()},
                             {"members", members_json(p.members, spec.names)}});
    Json trees = Json::array();
    for (const VanishingTree& t : report.trees) trees.push_back(tree_json(t, spec.names));
    Json bubbles = Json::array();
    for (const NodeBubble& b : report.bubbles) {
        Json entry = bubble_json(b.bubble, spec.names);
        entry["tree"] = b.tree;
        entry["node"] = b.node;
        entry["members"] = members_json(report.trees[b.tree].node(b.node).members, spec.names);
        bubbles.push_back(std::move(entry));
    }
    out << Json{{"kind", kind_name(spec.kind)}, {"limit", limit}, {"trees", trees}, {"bubbles", bubbles}}.dump(2)
        << '\n';
}

struct Regime {
    Rat from;
    std::optional<Rat> to;
    RescaledLimit limit;
};

std::vector<Regime> regimes(const SectionAnalysis& a) {
    std::vector<Regime> out;
    Rat previous(0);
    for (const Breakpoint* level : a.levels()) {
        out.push_back({previous, level->alpha, classify_rescaled_limit(a, (previous + level->alpha) / Rat(2))});
        out.push_back({level->alpha, level->alpha, classify_rescaled_limit(a, level->alpha)});
        previous = level->alpha;
    }
    out.push_back({previous, std::nullopt, classify_rescaled_limit(a, previous + Rat(1))});
    return out;
}

std::pair<std::string, std::string> describe(const RescaledLimit& limit) {
    if (const auto* c = std::get_if<ConeLimit>(&limit)) return {"cone", c->cone.gamma.to_string()};
    if (const auto* b = std::get_if<BubbleLimit>(&limit)) return {"bubble", b->bubble.gamma_infinity.to_string()};
    return {"plane", "1"};
}

void emit_ak(const Spec& spec, const std::string& name, Format format, std::ostream& out);

void emit_section(const Spec& spec, const std::string& name, Format format, std::ostream& out) {
    require_kind(spec, {Kind::Plane, Kind::Sphere, Kind::GhMonopole}, "section");
    if (spec.kind == Kind::GhMonopole) return emit_ak(spec, name, format, out);
    const Germ& s = spec.section(name);
    SectionAnalysis a;
    SectionPath path;
    try {
        a = alpha_exponents(spec.family, s);
        path = section_path(spec.family.points, s);
    } catch (const Error& e) {
        throw Located(spec.section_pointer(name), e);
    }
    const auto table = regimes(a);
    if (format == Format::Csv) {
        out << "alpha_from,alpha_to,limit,angle\n";
        for (const Regime& r : table) {
            const auto [kind, angle] = describe(r.limit);
            out << r.from.to_string() << ',' << (r.to ? r.to->to_string() : "inf") << ',' << kind << ',' << angle
                << '\n';
        }
        return;
    }
    if (format != Format::Json) unsupported(spec, format, "section");
    const VanishingTree tree = build_tree(spec.family.points);
    Json nodes = Json::array();
    for (std::size_t k = 0; k < path.nodes.size(); ++k)
        nodes.push_back(Json{{"members", members_json(tree.node(path.nodes[k]).members, spec.names)},
                             {"depth", path.depths[k]}});
    Json levels = Json::array();
    for (const Breakpoint* b : a.levels()) {
        Json level{{"depth", b->depth},
                   {"alpha", b->alpha.to_string()},
                   {"members", members_json(b->members, spec.names)},
                   {"cone_gamma", b->cone_gamma.to_string()}};
        level["bubble"] = bubble_json(b->bubble, spec.names);
        levels.push_back(std::move(level));
    }
    Json rows = Json::array();
    for (const Regime& r : table) {
        const auto [kind, angle] = describe(r.limit);
        rows.push_back(Json{{"alpha_from", r.from.to_string()},
                            {"alpha_to", r.to ? Json(r.to->to_string()) : Json(nullptr)},
                            {"limit", kind},
                            {"angle", angle}});
    }
    Json terminal = a.terminal.kind == SectionTerminal::Kind::MatchesGerm
                        ? Json{{"kind", "matches"}, {"germ", spec.names.at(a.terminal.germ)}}
                        : Json{{"kind", "generic"}};
    out << Json{{"section", name},
                {"germ", s.to_string()},
                {"path", nodes},
                {"cluster", members_json(a.cluster, spec.names)},
                {"gamma", a.gamma.to_string()},
                {"levels", levels},
                {"terminal", terminal},
                {"regimes", rows}}
               .dump(2)
        << '\n';
}

void emit_ak(const Spec& spec, const std::string& name, Format format, std::ostream& out) {
    require_kind(spec, {Kind::GhMonopole}, "ghlimits");
    if (format != Format::Json) unsupported(spec, format, "ghlimits");
    AkLimitReport report;
    try {
        report = ak_rescaled_limits({spec.paths, spec.section(name)});
    } catch (const Error& e) {
        throw Located(spec.section_pointer(name), e);
    }
    Json breakpoints = Json::array();
    for (const AkBreakpoint& b : report.breakpoints)
        breakpoints.push_back(Json{{"depth", b.depth},
                                   {"alpha", b.alpha.to_string()},
                                   {"members", members_json(b.members, spec.names)},
                                   {"bubble", b.bubble},
                                   {"monopoles", b.model.config.to_string()},
                                   {"basepoint", b.model.basepoint_type()}});
    Json cones = Json::array();
    for (const AkCone& c : report.cones)
        cones.push_back(Json{{"alpha_from", c.from.to_string()},
                             {"alpha_to", c.to ? Json(c.to->to_string()) : Json(nullptr)},
                             {"order", c.order}});
    out << Json{{"section", name},
                {"cluster", members_json(report.cluster, spec.names)},
                {"breakpoints", breakpoints},
                {"cones", cones}}
               .dump(2)
        << '\n';
}

Json weights_json(const NodalCurve& curve, const AngleVector& angles) {
    const NodeWeighting w = node_weights(curve, angles);
    Json out = Json::array();
    for (const DirectedWeight& d : w.weights)
        out.push_back(Json{{"from", d.from}, {"to", d.to}, {"weight", d.weight.to_string()}});
    return out;
}

void emit_stability(const Spec& spec, Format format, std::ostream& out) {
    require_kind(spec, {Kind::Plane, Kind::Sphere, Kind::Curve}, "stability");
    if (format != Format::Json) unsupported(spec, format, "stability");
    const AngleVector& angles = spec.kind == Kind::Curve ? spec.angles : spec.family.angles;
    Json report{{"kind", kind_name(spec.kind)}, {"curvature", angles.curvature().to_string()}};
    const bool gauss_bonnet = angles.curvature() == Rat(2);
    report["gauss_bonnet"] = gauss_bonnet;
    report["non_collapse"] = gauss_bonnet ? Json(non_collapse_check(angles)) : Json(nullptr);
    if (spec.kind == Kind::Curve) {
        report["node_weights"] = weights_json(spec.curve, angles);
        report["principal_component"] = principal_component(spec.curve, angles);
    } else {
        const auto clusters = spec.family.clusters();
        MarkedTuple tuple;
        tuple.labels.resize(spec.family.points.size());
        Json blocks = Json::array();
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            for (std::size_t m : clusters[j]) tuple.labels[m] = j;
            tuple.values.push_back({false, spec.family.points[clusters[j].front()].coefficient(0)});
            blocks.push_back(Json{{"members", members_json(clusters[j], spec.names)},
                                  {"curvature", angles.curvature(clusters[j]).to_string()}});
        }
        report["limit_blocks"] = blocks;
        report["limit_beta_stable"] = is_beta_stable(tuple, angles);
    }
    out << report.dump(2) << '\n';
}

void emit_resolve(const Spec& spec, Format format, std::ostream& out) {
    require_kind(spec, {Kind::Curve}, "resolve");
    if (format == Format::Dot) {
        const NodeWeighting w = node_weights(spec.curve, spec.angles);
        out << spec.curve.to_dot(&w);
        return;
    }
    if (format != Format::Json) unsupported(spec, format, "resolve");
    const MarkedTuple tuple = resolve(spec.curve, spec.angles);
    Json values = Json::array();
    for (const CP1Point& p : tuple.values) values.push_back(p.to_string());
    out << Json{{"principal_component", principal_component(spec.curve, spec.angles)},
                {"node_weights", weights_json(spec.curve, spec.angles)},
                {"labels", tuple.labels},
                {"values", values},
                {"beta_stable", is_beta_stable(tuple, spec.angles)}}
               .dump(2)
        << '\n';
}

Json rats(const std::vector<Rat>& values) {
    Json out = Json::array();
    for (const Rat& r : values) out.push_back(r.to_string());
    return out;
}

Json stage_json(const Spec& spec, const WeightVector& weights, const std::vector<Rat>& bps, const RescaleResult& r) {
    return Json{{"weights", spec.render_weights(weights)},
                {"breakpoints", rats(bps)},
                {"c", r.c_used.to_string()},
                {"rescaled", r.rescaled.to_string()},
                {"limit", r.limit.to_string()},
                {"dropped", r.dropped.to_string()}};
}

void emit_rescale(const Spec& spec, const Options& o, Format format, std::ostream& out) {
    require_kind(spec, {Kind::PolyFamily}, "rescale");
    if (format != Format::Json) unsupported(spec, format, "rescale");
    Json report{{"equation", spec.polynomial.to_string()}, {"variables", spec.variables}};
    if (o.cascade) {
        if (spec.schedule.empty()) throw SpecError(spec.file, "/schedule", "--cascade needs a schedule");
        std::vector<WeightVector> schedule;
        for (const std::string& w : spec.schedule) schedule.push_back(spec.weights(w));
        Json stages = Json::array();
        for (const CascadeStage& s : iterate_cascade(spec.polynomial, schedule))
            stages.push_back(stage_json(spec, s.weights, s.breakpoints, s.result));
        report["stages"] = stages;
        out << report.dump(2) << '\n';
        return;
    }
    if (o.weights.empty()) throw UsageError("rescale needs --weights or --cascade");
    WeightVector weights;
    try {
        weights = spec.weights(o.weights);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const std::vector<Rat> bps = breakpoints(spec.polynomial, weights);
    if (o.c.empty() && !o.automatic) {
        report["weights"] = spec.render_weights(weights);
        report["breakpoints"] = rats(bps);
    } else {
        Rat c;
        if (o.automatic) {
            if (bps.empty()) throw EmptyBreakpoints("no breakpoint for weights " + weights.to_string(), 0);
            c = bps.front();
        } else {
            try {
                c = Rat::parse(o.c);
            } catch (const Error& e) {
                throw UsageError(std::string("--c: ") + e.what());
            }
        }
        report.update(stage_json(spec, weights, bps, rescale(spec.polynomial, weights, c)));
    }
    out << report.dump(2) << '\n';
}

// Zero germ that keeps every stored term of the points when subtracted.
Germ origin(const FamilyConfig& family) {
    unsigned order = 1;
    for (const Germ& g : family.points) order = std::max(order, g.truncation_order());
    return Germ::zero(order);
}

void emit_verify(const Spec& spec, const std::string& check, Format format, std::ostream& out) {
    const VerifySettings& v = spec.verify;
    auto slope_report = [&](const SlopeFit& fit, Json extra) {
        if (format == Format::Csv) return write_csv(out, fit);
        if (format != Format::Json) unsupported(spec, format, "verify");
        extra["slope"] = fit.slope;
        extra["intercept"] = fit.intercept;
        extra["r2"] = fit.r2;
        Json samples = Json::array();
        for (auto [x, y] : fit.samples) samples.push_back(Json::array({x, y}));
        extra["samples"] = samples;
        out << extra.dump(2) << '\n';
    };
    if (check == "slope") {
        require_kind(spec, {Kind::Plane, Kind::Sphere}, "verify --check slope");
        if (v.pairs.empty()) throw SpecError(spec.file, "/verify/pairs", "no pairs to measure");
        if (format == Format::Csv && v.pairs.size() != 1)
            throw UsageError("--format csv needs exactly one pair");
        Json all = Json::array();
        for (auto [a, b] : v.pairs) {
            const SlopeFit fit =
                scaling_slope(spec.family, spec.family.points[a], spec.family.points[b], v.t_samples, v.quadrature);
            if (format == Format::Csv) return write_csv(out, fit);
            Json entry{{"a", spec.names[a]}, {"b", spec.names[b]}, {"slope", fit.slope}, {"r2", fit.r2}};
            all.push_back(std::move(entry));
        }
        if (format != Format::Json) unsupported(spec, format, "verify");
        out << Json{{"check", "slope"}, {"fits", all}}.dump(2) << '\n';
        return;
    }
    if (check == "cone_angles") {
        require_kind(spec, {Kind::Plane, Kind::Sphere}, "verify --check cone_angles");
        const ConeConfiguration frozen = ConeConfiguration::freeze(spec.family, v.t, origin(spec.family));
        Json rows = Json::array();
        for (std::size_t i = 0; i < frozen.positions.size(); ++i) {
            double gap = 1;
            bool first = true;
            for (std::size_t j = 0; j < frozen.positions.size(); ++j) {
                if (j == i) continue;
                const double d = std::abs(frozen.positions[j] - frozen.positions[i]);
                if (d == 0) throw NumericError("points collide at t = " + Json(v.t).dump());
                gap = first ? d : std::min(gap, d);
                first = false;
            }
            const double radii[3] = {gap / 8, gap / 16, gap / 32};
            rows.push_back(Json{{"point", spec.names[i]},
                                {"beta", frozen.angles[i]},
                                {"probe", cone_angle_probe(frozen, frozen.positions[i], radii, v.quadrature)}});
        }
        Json report{{"check", "cone_angles"}, {"t", v.t}, {"points", rows}};
        if (spec.kind == Kind::Plane) {
            double reach = 0;
            for (Complex p : frozen.positions) reach = std::max(reach, std::abs(p));
            reach = std::max(reach, 1.0);
            const double far[4] = {8 * reach, 16 * reach, 32 * reach, 64 * reach};
            report["gamma"] = (Rat(1) - spec.family.angles.curvature()).to_string();
            report["gamma_probe"] = cone_angle_at_infinity(frozen, far, v.quadrature);
        }
        if (format != Format::Json) unsupported(spec, format, "verify");
        out << report.dump(2) << '\n';
        return;
    }
    if (check == "sphere_area") {
        require_kind(spec, {Kind::Sphere}, "verify --check sphere_area");
        if (format != Format::Json) unsupported(spec, format, "verify");
        const ConeConfiguration frozen = ConeConfiguration::freeze(spec.family, v.t, origin(spec.family));
        out << Json{{"check", "sphere_area"}, {"t", v.t}, {"area", sphere_area(frozen, v.quadrature)}}.dump(2)
            << '\n';
        return;
    }
    if (check == "curvature") {
        require_kind(spec, {Kind::GhMonopole}, "verify --check curvature");
        if (spec.sections.empty()) throw SpecError(spec.file, "/sections", "a section is needed");
        const auto& [name, section] = spec.sections.front();
        const SlopeFit fit = curvature_blowup_slope({spec.paths, section}, v.t_samples);
        return slope_report(fit, Json{{"check", "curvature"}, {"section", name}});
    }
    throw UsageError("unknown check \"" + check + "\" (slope, cone_angles, sphere_area, curvature)");
}

int run(const std::string& command, const Options& o) {
    const Spec spec = load_spec(o.file);
    const Format format = parse_format(o.format, command == "tree" ? Format::Dot : Format::Json);
    std::ostringstream out;
    try {
        if (command == "tree") emit_tree(spec, format, out);
        else if (command == "bubbles") emit_bubbles(spec, format, out);
        else if (command == "section") emit_section(spec, o.name, format, out);
        else if (command == "stability") emit_stability(spec, format, out);
        else if (command == "resolve") emit_resolve(spec, format, out);
        else if (command == "ghlimits") emit_ak(spec, o.name, format, out);
        else if (command == "rescale") emit_rescale(spec, o, format, out);
        else if (command == "verify") emit_verify(spec, o.check, format, out);
    } catch (const AmbiguousTruncation& e) {
        const char* list = spec.kind == Kind::GhMonopole ? "/paths/" : "/points/";
        throw SpecError(spec.file, list + std::to_string(e.second()) + "/germ", e.what());
    }
    if (o.output.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(o.output);
        if (!(file << out.str())) throw std::runtime_error("cannot write " + o.output);
    }
    return 0;
}

// Field of the spec that a library error most likely refers to.
std::string default_pointer(const std::string& command) {
    if (command == "rescale") return "/equation";
    if (command == "resolve") return "/components";
    if (command == "verify") return "/verify";
    return "/points";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bubblekit: bubble trees of degenerating flat cone metrics"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("spec", o.file, "family specification (JSON)")->required();
        sub->add_option("--format", o.format, "json, dot or csv");
        sub->add_option("-o,--output", o.output, "write the report to a file");
        return sub;
    };
    common(app.add_subcommand("tree", "vanishing tree"));
    common(app.add_subcommand("bubbles", "bubble tree report"));
    common(app.add_subcommand("section", "rescaling exponents along a section"))
        ->add_option("--name", o.name, "section name")
        ->required();
    common(app.add_subcommand("stability", "Gauss-Bonnet, non-collapse and stability checks"));
    common(app.add_subcommand("resolve", "stable tuple of a nodal curve"));
    common(app.add_subcommand("ghlimits", "rescaled limits of a monopole family"))
        ->add_option("--name", o.name, "section name")
        ->required();
    auto* rescale_cmd = common(app.add_subcommand("rescale", "weighted rescaling"));
    rescale_cmd->add_option("--weights", o.weights, "weights in weight order, e.g. 1,3/2 or z=1,w=3/2");
    auto* c_opt = rescale_cmd->add_option("--c", o.c, "rescaling exponent");
    auto* auto_opt = rescale_cmd->add_flag("--auto", o.automatic, "use the smallest breakpoint");
    c_opt->excludes(auto_opt);
    rescale_cmd->add_flag("--cascade", o.cascade, "run the schedule of the spec file");
    common(app.add_subcommand("verify", "numeric checks"))
        ->add_option("--check", o.check, "slope, cone_angles, sphere_area or curvature")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Located& e) {
        std::cerr << "error: " << o.file << ":" << e.pointer << ": " << e.what() << '\n';
        return e.numeric ? 2 : 1;
    } catch (const NumericError& e) {
        std::cerr << "error: " << o.file << ":" << default_pointer(command) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << o.file << ":" << default_pointer(command) << ": " << e.what() << '\n';
        return 1;
    }
}
