#include "wavebound/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "wavebound/errors.hpp"
#include "wavebound/parallel.hpp"

namespace wavebound {

namespace {

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void expect_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) throw ConfigError(path.empty() ? "$" : path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
        if (!known) throw ConfigError(child(path, it.key()), "unknown key");
    }
}

const json* find(const json& j, const char* key)
{
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
    return v;
}

double positive(const json& j, const std::string& path)
{
    const double v = number(j, path);
    if (!(v > 0.0)) throw ConfigError(path, "must be positive");
    return v;
}

long long integer(const json& j, const std::string& path, long long minimum)
{
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    const long long v = j.get<long long>();
    if (v < minimum) throw ConfigError(path, "must be at least " + std::to_string(minimum));
    return v;
}

std::string string(const json& j, const std::string& path)
{
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

const json& array(const json& j, const std::string& path)
{
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    return j;
}

Vec2 point(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected [x1, x2]");
    return {number(j[0], item(path, 0)), number(j[1], item(path, 1))};
}

ShapeSpec parse_shape(const json& j, const std::string& path)
{
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    const json* kind = find(j, "kind");
    if (!kind) throw ConfigError(child(path, "kind"), "required");
    const std::string k = string(*kind, child(path, "kind"));
    ShapeSpec s;
    if (k == "circle") {
        expect_keys(j, path, {"kind", "center", "radius", "samples"});
        s.kind = ShapeKind::circle;
    } else if (k == "ellipse") {
        expect_keys(j, path, {"kind", "center", "semiaxes", "samples"});
        s.kind = ShapeKind::ellipse;
    } else if (k == "fourier") {
        expect_keys(j, path, {"kind", "center", "radius", "coeffs", "samples"});
        s.kind = ShapeKind::fourier;
    } else {
        throw ConfigError(child(path, "kind"), "must be circle, ellipse or fourier");
    }
    if (const json* c = find(j, "center")) s.center = point(*c, child(path, "center"));
    if (s.kind != ShapeKind::ellipse) {
        const json* r = find(j, "radius");
        if (!r) throw ConfigError(child(path, "radius"), "required");
        s.radius = positive(*r, child(path, "radius"));
    } else {
        const json* a = find(j, "semiaxes");
        if (!a) throw ConfigError(child(path, "semiaxes"), "required");
        const Vec2 ab = point(*a, child(path, "semiaxes"));
        if (!(ab.x1 > 0.0 && ab.x2 > 0.0)) throw ConfigError(child(path, "semiaxes"), "must be positive");
        s.semi_a = ab.x1;
        s.semi_b = ab.x2;
    }
    if (s.kind == ShapeKind::fourier) {
        const json* c = find(j, "coeffs");
        if (!c) throw ConfigError(child(path, "coeffs"), "required");
        const std::string cp = child(path, "coeffs");
        for (std::size_t i = 0; i < array(*c, cp).size(); ++i) {
            const Vec2 ab = point((*c)[i], item(cp, i));
            s.coeffs.emplace_back(ab.x1, ab.x2);
        }
    }
    if (const json* n = find(j, "samples")) s.samples = int(integer(*n, child(path, "samples"), 64));
    return s;
}

std::vector<cplx> complex_list(const json& j, const std::string& path)
{
    std::vector<cplx> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(complex_from_json(j[i], item(path, i)));
    return out;
}

G1Spec parse_g1(const json& j, const std::string& path)
{
    expect_keys(j, path, {"profile", "amplitude", "fourier", "sources"});
    const int forms = int(j.contains("profile")) + int(j.contains("fourier")) + int(j.contains("sources"));
    if (forms != 1) throw ConfigError(path, "exactly one of profile, fourier, sources is required");
    if (j.contains("amplitude") && !j.contains("profile")) throw ConfigError(child(path, "amplitude"), "only valid with profile");
    if (const json* p = find(j, "profile")) {
        const cplx amp = j.contains("amplitude") ? complex_from_json(j["amplitude"], child(path, "amplitude")) : cplx(1.0);
        const std::string name = string(*p, child(path, "profile"));
        try {
            return named_profile(name, amp);
        } catch (const ParameterError& e) {
            throw ConfigError(child(path, "profile"), e.what());
        }
    }
    if (const json* f = find(j, "fourier")) {
        const std::string fp = child(path, "fourier");
        expect_keys(*f, fp, {"a0", "cos", "sin"});
        FourierProfile prof;
        if (const json* a = find(*f, "a0")) prof.a0 = complex_from_json(*a, child(fp, "a0"));
        if (const json* c = find(*f, "cos")) prof.cos = complex_list(*c, child(fp, "cos"));
        if (const json* s = find(*f, "sin")) prof.sin = complex_list(*s, child(fp, "sin"));
        return prof;
    }
    const std::string sp = child(path, "sources");
    const json& list = array(j["sources"], sp);
    SourceField field;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string ip = item(sp, i);
        expect_keys(list[i], ip, {"position", "strength"});
        if (!list[i].contains("position")) throw ConfigError(child(ip, "position"), "required");
        PointSource s;
        s.position = point(list[i]["position"], child(ip, "position"));
        if (const json* st = find(list[i], "strength")) s.strength = complex_from_json(*st, child(ip, "strength"));
        field.sources.push_back(s);
    }
    return field;
}

BoundaryData parse_data(const json& j, const std::string& path)
{
    expect_keys(j, path, {"f", "g1", "g2"});
    BoundaryData d;
    if (const json* f = find(j, "f")) {
        const std::string fp = child(path, "f");
        for (std::size_t i = 0; i < array(*f, fp).size(); ++i) {
            const std::string ip = item(fp, i);
            const json& b = (*f)[i];
            expect_keys(b, ip, {"center", "radius", "amplitude"});
            if (!b.contains("center") || !b.contains("radius")) throw ConfigError(ip, "center and radius are required");
            VolumeBump v;
            v.center = point(b["center"], child(ip, "center"));
            v.radius = positive(b["radius"], child(ip, "radius"));
            if (const json* a = find(b, "amplitude")) v.amplitude = complex_from_json(*a, child(ip, "amplitude"));
            d.f.push_back(v);
        }
    }
    if (const json* g = find(j, "g1")) d.g1 = parse_g1(*g, child(path, "g1"));
    if (const json* g = find(j, "g2")) {
        const std::string gp = child(path, "g2");
        for (std::size_t i = 0; i < array(*g, gp).size(); ++i) {
            const std::string ip = item(gp, i);
            const json& b = (*g)[i];
            expect_keys(b, ip, {"center", "radius", "amplitude"});
            if (!b.contains("center") || !b.contains("radius")) throw ConfigError(ip, "center and radius are required");
            SurfaceBump s;
            s.center = number(b["center"], child(ip, "center"));
            s.radius = positive(b["radius"], child(ip, "radius"));
            if (const json* a = find(b, "amplitude")) s.amplitude = complex_from_json(*a, child(ip, "amplitude"));
            d.g2.push_back(s);
        }
    }
    return d;
}

const std::set<std::string> condition_names{"condition1", "condition2", "mazya", "lemma4", "uniqueness"};

ValidateSpec parse_validate(const json& j, const std::string& path)
{
    expect_keys(j, path, {"level", "R", "cutoff", "qform_samples", "thresholds"});
    ValidateSpec v;
    if (const json* l = find(j, "level")) v.level = int(integer(*l, child(path, "level"), 0));
    if (v.level > 3) throw ConfigError(child(path, "level"), "must be at most 3");
    if (const json* r = find(j, "R")) v.R = positive(*r, child(path, "R"));
    if (const json* c = find(j, "cutoff")) {
        const std::string name = string(*c, child(path, "cutoff"));
        if (name == "piecewise_quadratic") v.cutoff = CutoffKind::piecewise_quadratic;
        else if (name == "quintic") v.cutoff = CutoffKind::quintic;
        else throw ConfigError(child(path, "cutoff"), "must be piecewise_quadratic or quintic");
    }
    if (const json* q = find(j, "qform_samples")) v.qform_samples = std::size_t(integer(*q, child(path, "qform_samples"), 0));
    if (const json* t = find(j, "thresholds")) {
        const std::string tp = child(path, "thresholds");
        expect_keys(*t, tp, {"green", "energy", "intid"});
        if (const json* x = find(*t, "green")) v.green_tolerance = positive(*x, child(tp, "green"));
        if (const json* x = find(*t, "energy")) v.energy_tolerance = positive(*x, child(tp, "energy"));
        if (const json* x = find(*t, "intid")) v.intid_tolerance = positive(*x, child(tp, "intid"));
    }
    return v;
}

void parse_axis(const json& j, const std::string& path, double& lo, double& hi, int& count)
{
    expect_keys(j, path, {"min", "max", "count"});
    if (!j.contains("min") || !j.contains("max") || !j.contains("count"))
        throw ConfigError(path, "min, max and count are required");
    lo = number(j["min"], child(path, "min"));
    hi = number(j["max"], child(path, "max"));
    count = int(integer(j["count"], child(path, "count"), 1));
    if (hi < lo) throw ConfigError(path, "max must not be below min");
}

GreenDumpSpec parse_green(const json& j, const std::string& path)
{
    expect_keys(j, path, {"source", "x1", "x2", "method"});
    GreenDumpSpec g;
    if (const json* s = find(j, "source")) g.source = point(*s, child(path, "source"));
    if (!(g.source.x2 > 0.0)) throw ConfigError(child(path, "source"), "source must lie below the surface (x2 > 0)");
    if (const json* a = find(j, "x1")) parse_axis(*a, child(path, "x1"), g.x1_min, g.x1_max, g.x1_count);
    if (const json* a = find(j, "x2")) parse_axis(*a, child(path, "x2"), g.x2_min, g.x2_max, g.x2_count);
    if (g.x2_min < 0.0) throw ConfigError(child(path, "x2.min"), "grid must lie in x2 >= 0");
    if (const json* m = find(j, "method")) {
        const std::string name = string(*m, child(path, "method"));
        if (name == "closed_form") g.method = GreenMethod::closed_form;
        else if (name == "principal_value") g.method = GreenMethod::principal_value;
        else throw ConfigError(child(path, "method"), "must be closed_form or principal_value");
    }
    return g;
}

// Fixed-format number for CSV cells.
std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string describe(const ShapeSpec& s)
{
    std::ostringstream os;
    const std::string c = "c=(" + num(s.center.x1) + " " + num(s.center.x2) + ")";
    switch (s.kind) {
    case ShapeKind::circle: os << "circle " << c << " r=" << num(s.radius); break;
    case ShapeKind::ellipse: os << "ellipse " << c << " a=" << num(s.semi_a) << " b=" << num(s.semi_b); break;
    case ShapeKind::fourier: os << "fourier " << c << " r=" << num(s.radius) << " modes=" << s.coeffs.size(); break;
    }
    return os.str();
}

using wavebound::to_json;

json to_json(Vec2 p) { return json::array({p.x1, p.x2}); }
json to_json(const CVec2& v) { return json::array({to_json(v.x1), to_json(v.x2)}); }

json complex_array(const std::vector<cplx>& v)
{
    json a = json::array();
    for (const cplx& z : v) a.push_back(to_json(z));
    return a;
}

std::vector<ShapeSpec> bodies_of(const ScenarioConfig& cfg)
{
    return cfg.sweep_bodies ? *cfg.sweep_bodies : std::vector<ShapeSpec>{cfg.body};
}

std::vector<double> nus_of(const ScenarioConfig& cfg) { return cfg.sweep_nu ? *cfg.sweep_nu : std::vector<double>{cfg.nu}; }

bool requested(const ScenarioConfig& cfg, const std::string& name)
{
    return std::find(cfg.conditions.begin(), cfg.conditions.end(), name) != cfg.conditions.end();
}

// Exceptions stored per sweep point and rethrown in config order.
template <class Row, class F>
std::vector<Row> run_points(std::size_t n, F&& f)
{
    std::vector<Row> rows(n);
    std::vector<std::exception_ptr> errors(n);
    const Execution outer = n > 1 ? Execution::parallel : Execution::serial;
    const Execution inner = n > 1 ? Execution::serial : Execution::parallel;
    for_each_index(n, outer, [&](std::size_t i) {
        try {
            rows[i] = f(i, inner);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& path)
{
    if (j.is_number()) return number(j, path);
    if (j.is_array() && j.size() == 2) return {number(j[0], item(path, 0)), number(j[1], item(path, 1))};
    throw ConfigError(path, "expected a number or [re, im]");
}

ScenarioConfig parse_config(const json& doc)
{
    expect_keys(doc, "", {"$schema", "description", "body", "nu", "epsilon", "data", "panels", "probes", "conditions",
                          "sweep", "extraction_tolerance", "validate", "green", "output_dir", "seed"});
    ScenarioConfig cfg;
    if (const json* d = find(doc, "description")) string(*d, "description");
    if (const json* b = find(doc, "body")) cfg.body = parse_shape(*b, "body");
    const json* nu = find(doc, "nu");
    if (!nu) throw ConfigError("nu", "required");
    cfg.nu = positive(*nu, "nu");
    if (const json* e = find(doc, "epsilon")) {
        if (e->is_string()) {
            if (e->get<std::string>() != "max") throw ConfigError("epsilon", "expected a positive number or \"max\"");
        } else {
            cfg.epsilon = positive(*e, "epsilon");
        }
    }
    if (const json* d = find(doc, "data")) cfg.data = parse_data(*d, "data");
    if (const json* p = find(doc, "panels")) {
        cfg.panels = int(integer(*p, "panels", 16));
        if (cfg.panels % 2 != 0) throw ConfigError("panels", "must be even");
    }
    if (const json* p = find(doc, "probes"))
        for (std::size_t i = 0; i < array(*p, "probes").size(); ++i) cfg.probes.push_back(point((*p)[i], item("probes", i)));
    if (const json* c = find(doc, "conditions")) {
        cfg.conditions.clear();
        for (std::size_t i = 0; i < array(*c, "conditions").size(); ++i) {
            const std::string name = string((*c)[i], item("conditions", i));
            if (!condition_names.count(name)) throw ConfigError(item("conditions", i), "unknown condition " + name);
            cfg.conditions.push_back(name);
        }
    }
    if (const json* s = find(doc, "sweep")) {
        expect_keys(*s, "sweep", {"nu", "bodies"});
        if (const json* n = find(*s, "nu")) {
            std::vector<double> v;
            for (std::size_t i = 0; i < array(*n, "sweep.nu").size(); ++i) v.push_back(positive((*n)[i], item("sweep.nu", i)));
            cfg.sweep_nu = std::move(v);
        }
        if (const json* b = find(*s, "bodies")) {
            std::vector<ShapeSpec> v;
            for (std::size_t i = 0; i < array(*b, "sweep.bodies").size(); ++i)
                v.push_back(parse_shape((*b)[i], item("sweep.bodies", i)));
            cfg.sweep_bodies = std::move(v);
        }
    }
    if (const json* t = find(doc, "extraction_tolerance")) cfg.extraction_tolerance = positive(*t, "extraction_tolerance");
    if (const json* v = find(doc, "validate")) cfg.validate = parse_validate(*v, "validate");
    if (const json* g = find(doc, "green")) cfg.green = parse_green(*g, "green");
    if (const json* o = find(doc, "output_dir")) cfg.output_dir = string(*o, "output_dir");
    if (const json* s = find(doc, "seed")) cfg.seed = std::uint64_t(integer(*s, "seed", 0));
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

json to_json(const ShapeSpec& s)
{
    json j;
    j["center"] = to_json(s.center);
    switch (s.kind) {
    case ShapeKind::circle:
        j["kind"] = "circle";
        j["radius"] = s.radius;
        break;
    case ShapeKind::ellipse:
        j["kind"] = "ellipse";
        j["semiaxes"] = json::array({s.semi_a, s.semi_b});
        break;
    case ShapeKind::fourier: {
        j["kind"] = "fourier";
        j["radius"] = s.radius;
        json c = json::array();
        for (const auto& [a, b] : s.coeffs) c.push_back(json::array({a, b}));
        j["coeffs"] = c;
        break;
    }
    }
    j["samples"] = s.samples;
    return j;
}

json to_json(const GeometryBox& b)
{
    json j{{"L", b.L}, {"h", b.h}, {"H", b.H}, {"kappa", b.kappa}};
    j["epsilon"] = b.epsilon ? json(*b.epsilon) : json(nullptr);
    return j;
}

json to_json(const ConditionReport& r)
{
    json j{{"name", r.name},           {"holds", r.holds},     {"min_slack", r.min_slack},
           {"argmin", to_json(r.argmin)}, {"samples", r.samples}, {"tolerance", r.tolerance},
           {"convergence", r.convergence}};
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

json to_json(const ConstantLedger& l)
{
    json entries = json::array();
    for (const auto& e : l.entries()) entries.push_back({{"name", e.name}, {"value", e.value}, {"formula", e.formula}});
    return {{"caveat", "absolute constant c taken as 1"}, {"constants", entries}};
}

json to_json(const ScatteringResult& r)
{
    return {{"d_plus", to_json(r.d_plus)},
            {"d_minus", to_json(r.d_minus)},
            {"far_plus", to_json(r.far_plus)},
            {"far_minus", to_json(r.far_minus)},
            {"primary_method", r.primary_method},
            {"check_method", r.check_method},
            {"discrepancy", r.discrepancy},
            {"far_distance", r.far_distance}};
}

json to_json(const NormReport& n)
{
    return {{"norm_u", n.norm_u},   {"norm_F", n.norm_F}, {"norm_F1", n.norm_F1},
            {"norm_v", n.norm_v},   {"norm_v_u", n.norm_v_u}, {"vx1_sq", n.vx1_sq},
            {"s_wn", n.s_wn},       {"R", n.R},           {"tail_estimate", n.tail_estimate},
            {"level", n.level},     {"nodes", n.nodes}};
}

json to_json(const IdentityResiduals& r)
{
    json j = json::array();
    for (const auto& c : r.all()) j.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"residual", c.residual}});
    return j;
}

json to_json(const BoundReport& r)
{
    auto side = [](double l, double rr, bool ok) { return json{{"lhs", l}, {"rhs", rr}, {"holds", ok}}; };
    return {{"label", r.label},
            {"norm_u", r.norm_u},
            {"norm_F", r.norm_F},
            {"d_sum", r.d_sum},
            {"C", r.C},
            {"rho_u", r.rho_u},
            {"rho_d", r.rho_d},
            {"lemma1", side(r.lemma1_lhs, r.lemma1_rhs, r.lemma1)},
            {"lemma2", side(r.lemma2_lhs, r.lemma2_rhs, r.lemma2)},
            {"theorem4", side(r.theorem4_lhs, r.theorem4_rhs, r.theorem4)},
            {"n5", side(r.n5_lhs, r.n5_rhs, r.n5)}};
}

CommandOutput cmd_check_geometry(const ScenarioConfig& cfg)
{
    CommandOutput out;
    json cases = json::array();
    bool all_hold = true;
    for (const ShapeSpec& spec : bodies_of(cfg)) {
        const BodyCurve body = build_body(spec);
        const GeometryBox box = geometry_box(body, cfg.epsilon);
        const EpsilonSearch search = max_epsilon(body);
        json c;
        c["body"] = to_json(spec);
        c["box"] = to_json(box);
        json feasible = json::array();
        for (const auto& [a, b] : search.feasible) feasible.push_back(json::array({a, b}));
        c["epsilon_search"] = {{"epsilon", search.epsilon ? json(*search.epsilon) : json(nullptr)},
                               {"feasible", feasible}};
        // Without a feasible epsilon Condition 2 is reported at eps = h, where it fails.
        const double eps = box.epsilon.value_or(box.h);
        json reports = json::array();
        auto record = [&](const std::string& name, const ConditionReport& r) {
            reports.push_back(to_json(r));
            if (requested(cfg, name) && !r.holds) {
                all_hold = false;
                out.messages.push_back(describe(spec) + ": " + r.name + " fails, min slack " + num(r.min_slack));
            }
        };
        record("condition1", check_condition1(body));
        record("condition2", check_condition2(body, eps));
        record("mazya", check_mazya(body));
        if (requested(cfg, "lemma4")) record("lemma4", check_lemma4(body, eps));
        c["conditions"] = reports;

        json per_nu = json::array();
        for (double nu : nus_of(cfg)) {
            const UniquenessReport u = uniqueness_criterion(nu, box.L, box.h);
            json p{{"nu", nu}, {"uniqueness", {{"value", u.value}, {"holds", u.holds}}}};
            if (box.epsilon) p["ledger"] = to_json(ledger(nu, box));
            per_nu.push_back(p);
            if (requested(cfg, "uniqueness") && !u.holds) {
                all_hold = false;
                out.messages.push_back(describe(spec) + ": uniqueness criterion fails at nu=" + num(nu) + ", value " +
                                       num(u.value));
            }
        }
        c["frequencies"] = per_nu;
        cases.push_back(c);
    }
    out.report = {{"command", "check-geometry"}, {"requested", cfg.conditions}, {"all_hold", all_hold}, {"cases", cases}};
    out.exit_code = all_hold ? exit_ok : exit_condition_failed;
    out.files.push_back({"check-geometry.json", out.report.dump(2) + "\n"});
    return out;
}

CommandOutput cmd_solve(const ScenarioConfig& cfg)
{
    CommandOutput out;
    const BodyCurve body = build_body(cfg.body);
    SolveOptions so;
    const SolutionField sol = assemble_and_solve(body, cfg.nu, cfg.data, cfg.panels, so);
    ScatterOptions sco;
    sco.tolerance = std::numeric_limits<double>::infinity();
    const ScatteringResult sc = scattering_coefficients(sol, sco);

    json r;
    r["command"] = "solve";
    r["body"] = to_json(cfg.body);
    r["nu"] = cfg.nu;
    r["panels"] = sol.panels();
    r["condition"] = sol.condition();
    r["max_panel"] = sol.max_panel();
    r["warnings"] = sol.warnings();
    r["density"] = complex_array(sol.density());
    r["trace"] = complex_array(sol.trace());
    json s = to_json(sc);
    s["tolerance"] = cfg.extraction_tolerance;
    s["agrees"] = sc.discrepancy <= cfg.extraction_tolerance;
    r["scattering"] = s;

    const auto samples = evaluate_many(sol, cfg.probes);
    json probes = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i)
        probes.push_back({{"x", to_json(cfg.probes[i])},
                          {"value", to_json(samples[i].value)},
                          {"gradient", to_json(samples[i].gradient)}});
    r["probes"] = probes;

    // Pure source data has a known exact field.
    if (const auto* src = std::get_if<SourceField>(&cfg.data.g1); src && cfg.data.f.empty() && cfg.data.g2.empty()) {
        cplx dp = 0.0, dm = 0.0;
        for (const auto& p : src->sources) {
            const auto a = source_far_field(p.position, cfg.nu);
            dp += p.strength * a.plus;
            dm += p.strength * a.minus;
        }
        double probe_err = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            probe_err = std::max(probe_err, std::abs(samples[i].value - source_field(*src, cfg.nu, cfg.probes[i]).value));
        double trace_err = 0.0, trace_max = 0.0;
        for (int j = 0; j < sol.panels(); ++j) {
            const cplx exact = source_field(*src, cfg.nu, sol.nodes()[j].point).value;
            trace_err = std::max(trace_err, std::abs(sol.trace()[j] - exact));
            trace_max = std::max(trace_max, std::abs(exact));
        }
        r["oracle"] = {{"d_plus", to_json(dp)},
                       {"d_minus", to_json(dm)},
                       {"d_error", std::max(std::abs(dp - sc.d_plus), std::abs(dm - sc.d_minus))},
                       {"probe_max_error", probe_err},
                       {"trace_relative_error", trace_max > 0.0 ? trace_err / trace_max : trace_err}};
    }
    out.report = r;
    if (sc.discrepancy > cfg.extraction_tolerance) {
        out.exit_code = exit_extraction_disagreement;
        out.messages.push_back("scattering extraction disagreement: relative difference " + num(sc.discrepancy));
    }
    out.files.push_back({"solve.json", r.dump(2) + "\n"});
    return out;
}

namespace {

struct ValidateRow {
    ShapeSpec spec;
    double nu = 0.0;
    GeometryBox box;
    bool condition1 = false, condition2 = false;
    FieldAudit audit;
    std::optional<BoundReport> bound;
    std::optional<ConstantLedger> constants;
    std::vector<std::string> breaches;
    bool extraction_ok = true;
    std::vector<std::string> warnings;
};

const char* validate_columns =
    "case,body,nu,N,R,level,L,h,H,kappa,epsilon,condition1,condition2,norm_u,norm_F,norm_F1,norm_v,norm_v_u,"
    "d_plus_re,d_plus_im,d_minus_re,d_minus_im,d_sum,discrepancy,C,rho_u,rho_d,lemma1,lemma2,theorem4,n5,"
    "res_green,res_energy,res_intid_w,res_intid_v,tail,status";

ValidateRow validate_point(const ScenarioConfig& cfg, const ShapeSpec& spec, double nu, Execution exec)
{
    ValidateRow row;
    row.spec = spec;
    row.nu = nu;
    const BodyCurve body = build_body(spec);
    row.box = geometry_box(body, cfg.epsilon);
    row.condition1 = check_condition1(body).holds;
    row.condition2 = row.box.epsilon && check_condition2(body, *row.box.epsilon).holds;
    if (!row.condition1) row.warnings.push_back("condition 1 fails");
    if (!row.condition2) row.warnings.push_back("condition 2 fails");

    SolveOptions so;
    so.execution = exec;
    const SolutionField sol = assemble_and_solve(body, nu, cfg.data, cfg.panels, so);
    ScatterOptions sco;
    sco.tolerance = std::numeric_limits<double>::infinity();
    const ScatteringResult sc = scattering_coefficients(sol, sco);
    row.extraction_ok = sc.discrepancy <= cfg.extraction_tolerance;

    AuditOptions ao;
    ao.R = cfg.validate.R;
    ao.level = cfg.validate.level;
    ao.cutoff.kind = cfg.validate.cutoff;
    ao.execution = exec;
    row.audit = audit_field(sol, sc, ao);

    const auto& res = row.audit.residuals;
    if (!(res.green.residual <= cfg.validate.green_tolerance)) row.breaches.push_back("green");
    if (!(res.energy.residual <= cfg.validate.energy_tolerance)) row.breaches.push_back("energy");
    if (!(res.intid_w.residual <= cfg.validate.intid_tolerance)) row.breaches.push_back("intid_W");
    if (!(res.intid_v.residual <= cfg.validate.intid_tolerance)) row.breaches.push_back("intid_V");

    if (row.condition1 && row.condition2) {
        row.constants = ledger(nu, row.box);
        row.bound = bound_report(describe(spec) + " nu=" + num(nu), row.audit, *row.constants);
    }
    return row;
}

std::string csv_row(std::size_t index, const ValidateRow& r, int panels)
{
    const auto& n = r.audit.norms;
    const auto& sc = r.audit.scattering;
    const auto& res = r.audit.residuals;
    const std::string na = "not-applicable";
    auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
    std::vector<std::string> cells{std::to_string(index),
                                   describe(r.spec),
                                   num(r.nu),
                                   std::to_string(panels),
                                   num(n.R),
                                   std::to_string(n.level),
                                   num(r.box.L),
                                   num(r.box.h),
                                   num(r.box.H),
                                   num(r.box.kappa),
                                   r.box.epsilon ? num(*r.box.epsilon) : na,
                                   flag(r.condition1),
                                   flag(r.condition2),
                                   num(n.norm_u),
                                   num(n.norm_F),
                                   num(n.norm_F1),
                                   num(n.norm_v),
                                   num(n.norm_v_u),
                                   num(sc.d_plus.real()),
                                   num(sc.d_plus.imag()),
                                   num(sc.d_minus.real()),
                                   num(sc.d_minus.imag()),
                                   num(std::abs(sc.d_plus) + std::abs(sc.d_minus)),
                                   num(sc.discrepancy)};
    if (r.bound) {
        const auto& b = *r.bound;
        for (auto s : {num(b.C), num(b.rho_u), num(b.rho_d), flag(b.lemma1), flag(b.lemma2), flag(b.theorem4), flag(b.n5)})
            cells.push_back(s);
    } else {
        for (int k = 0; k < 7; ++k) cells.push_back(na);
    }
    for (const auto& c : res.all()) cells.push_back(num(c.residual));
    cells.push_back(num(n.tail_estimate));

    std::vector<std::string> status;
    for (const auto& w : r.warnings) status.push_back("warning: " + w);
    if (!r.extraction_ok) status.push_back("extraction-disagreement");
    for (const auto& b : r.breaches) status.push_back("breach: " + b);
    if (r.bound && !(r.bound->lemma1 && r.bound->lemma2 && r.bound->theorem4 && r.bound->n5))
        status.push_back("inequality-violation");
    std::string st = status.empty() ? "ok" : "";
    for (std::size_t k = 0; k < status.size(); ++k) st += (k ? "; " : "") + status[k];
    cells.push_back(st);

    std::string line;
    for (std::size_t k = 0; k < cells.size(); ++k) line += (k ? "," : "") + cells[k];
    return line;
}

}  // namespace

CommandOutput cmd_validate(const ScenarioConfig& cfg)
{
    CommandOutput out;
    const auto bodies = bodies_of(cfg);
    const auto nus = nus_of(cfg);
    const std::size_t n = bodies.size() * nus.size();
    const auto rows = run_points<ValidateRow>(n, [&](std::size_t i, Execution exec) {
        return validate_point(cfg, bodies[i / nus.size()], nus[i % nus.size()], exec);
    });

    std::string csv = std::string(csv_version_line) + "\n" + validate_columns + "\n";
    json cases = json::array();
    bool breach = false, disagreement = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        csv += csv_row(i, r, cfg.panels) + "\n";
        json c{{"case", i},
               {"body", to_json(r.spec)},
               {"nu", r.nu},
               {"box", to_json(r.box)},
               {"condition1", r.condition1},
               {"condition2", r.condition2},
               {"scattering", to_json(r.audit.scattering)},
               {"norms", to_json(r.audit.norms)},
               {"residuals", to_json(r.audit.residuals)},
               {"breaches", r.breaches},
               {"warnings", r.warnings}};
        c["bound"] = r.bound ? to_json(*r.bound) : json("not-applicable");
        if (r.constants) c["ledger"] = to_json(*r.constants);
        cases.push_back(c);
        for (const auto& b : r.breaches) {
            breach = true;
            out.messages.push_back("case " + std::to_string(i) + ": residual breach in " + b);
        }
        if (!r.extraction_ok) {
            disagreement = true;
            out.messages.push_back("case " + std::to_string(i) + ": scattering extraction disagreement");
        }
    }

    json qform = json::array();
    if (cfg.validate.qform_samples > 0) {
        for (ZField z : {ZField::W, ZField::V}) {
            const auto q = q_form_check(z, cfg.validate.qform_samples, cfg.seed);
            qform.push_back({{"field", z == ZField::W ? "W" : "V"},
                             {"samples", q.samples},
                             {"seed", cfg.seed},
                             {"max_normalized", q.max_normalized},
                             {"min_normalized", q.min_normalized},
                             {"fd_mismatch", q.fd_mismatch}});
        }
    }

    out.report = {{"command", "validate"}, {"columns_version", csv_version_line}, {"cases", cases}, {"qform", qform}};
    out.exit_code = breach ? exit_residual_breach : disagreement ? exit_extraction_disagreement : exit_ok;
    out.files.push_back({"validate.csv", csv});
    out.files.push_back({"validate.json", out.report.dump(2) + "\n"});

    // Ratio-versus-frequency plot data, one pair of files per body.
    if (cfg.sweep_nu && !cfg.sweep_nu->empty()) {
        for (std::size_t b = 0; b < bodies.size(); ++b) {
            std::string ru = "# nu rho_u\n", rd = "# nu rho_d\n";
            for (std::size_t k = 0; k < nus.size(); ++k) {
                const auto& r = rows[b * nus.size() + k];
                if (!r.bound) continue;
                ru += num(r.nu) + " " + num(r.bound->rho_u) + "\n";
                rd += num(r.nu) + " " + num(r.bound->rho_d) + "\n";
            }
            out.files.push_back({"rho_u_vs_nu_" + std::to_string(b) + ".dat", ru});
            out.files.push_back({"rho_d_vs_nu_" + std::to_string(b) + ".dat", rd});
        }
    }
    return out;
}

CommandOutput cmd_green_dump(const ScenarioConfig& cfg)
{
    const GreenDumpSpec& g = cfg.green;
    const SourcePotential sp(cfg.nu, g.method);
    auto axis = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
    std::vector<Vec2> pts;
    for (int i = 0; i < g.x2_count; ++i)
        for (int j = 0; j < g.x1_count; ++j) {
            const Vec2 x{axis(g.x1_min, g.x1_max, g.x1_count, j), axis(g.x2_min, g.x2_max, g.x2_count, i)};
            if (norm(x - g.source) > 1e-9) pts.push_back(x);
        }
    std::vector<GreenValue> vals(pts.size());
    for_each_index(pts.size(), Execution::parallel, [&](std::size_t k) { vals[k] = sp.value_and_gradient(pts[k], g.source); });

    std::string csv = std::string(csv_version_line) + "\n# source " + num(g.source.x1) + " " + num(g.source.x2) +
                      " nu " + num(cfg.nu) + "\nx1,x2,re,im,d1_re,d1_im,d2_re,d2_im\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& v = vals[k];
        csv += num(pts[k].x1) + "," + num(pts[k].x2) + "," + num(v.value.real()) + "," + num(v.value.imag()) + "," +
               num(v.gradient.x1.real()) + "," + num(v.gradient.x1.imag()) + "," + num(v.gradient.x2.real()) + "," +
               num(v.gradient.x2.imag()) + "\n";
    }
    CommandOutput out;
    out.report = {{"command", "green-dump"},
                  {"nu", cfg.nu},
                  {"source", to_json(g.source)},
                  {"points", pts.size()},
                  {"method", g.method == GreenMethod::closed_form ? "closed_form" : "principal_value"}};
    out.files.push_back({"green.csv", csv});
    return out;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ExtractionError*>(&e)) return exit_extraction_disagreement;
    if (dynamic_cast<const SolverError*>(&e) || dynamic_cast<const InconsistencyError*>(&e))
        return exit_condition_failed;
    return exit_usage;
}

}  // namespace wavebound
